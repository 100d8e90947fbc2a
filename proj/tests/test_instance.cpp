#include <doctest.h>

#include <random>

#include "condorcet/generators.hpp"
#include "condorcet/instance.hpp"

using namespace condorcet;

namespace {

const char* kSmallDoc = R"({
  "agents": ["a0", "a1", "a2"],
  "objects": ["o0", "o1", "o2"],
  "edges": [["a0","o0"],["a0","o1"],["a0","o2"],
            ["a1","o0"],["a1","o1"],["a1","o2"],
            ["a2","o0"],["a2","o1"],["a2","o2"]],
  "prefs": {"a0": [["o0","o2"]], "a1": [["o0","o2"]], "a2": [["o0","o2"]]},
  "matroid": null,
  "alternatives": "all"
})";

}  // namespace

TEST_CASE("parsing the 3x3 no-pareto document") {
    auto inst = parse_instance(kSmallDoc);
    CHECK(inst.num_agents() == 3);
    CHECK(inst.num_objects() == 3);
    CHECK(inst.num_edges() == 9);
    CHECK(inst.prefs[0].classify() == PreferenceClass::Partial);
    CHECK(inst == gen_no_pareto());
}

TEST_CASE("degenerate empty-agents document") {
    auto inst = parse_instance(R"({"agents":[],"objects":["o1"],"edges":[],"prefs":{}})");
    CHECK(inst.num_agents() == 0);
    CHECK(inst.num_objects() == 1);
}

TEST_CASE("unknown object in an edge is a validation error") {
    CHECK_THROWS_AS(
        parse_instance(R"({"agents":["a"],"objects":["o"],"edges":[["a","zzz"]],"prefs":{}})"),
        ValidationError);
}

TEST_CASE("unknown fields are rejected") {
    CHECK_THROWS_AS(
        parse_instance(R"({"agents":[],"objects":[],"edges":[],"prefs":{},"bogus":1})"),
        ParseError);
}

TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(parse_instance("{"), ParseError);
}

TEST_CASE("a_perfect instances must admit an assignment") {
    CHECK_THROWS_AS(parse_instance(R"({
        "agents":["a","b"],"objects":["o"],
        "edges":[["a","o"],["b","o"]],"prefs":{},"alternatives":"a_perfect"})"),
                    ValidationError);
}

TEST_CASE("round trip is the identity on generated instances") {
    std::mt19937_64 seeds(42);
    for (int trial = 0; trial < 60; ++trial) {
        auto model = trial % 3 == 0   ? PrefModel::Strict
                     : trial % 3 == 1 ? PrefModel::Weak
                                      : PrefModel::Partial;
        const char* kinds[] = {"none", "free", "uniform", "partition", "graphic"};
        auto inst = gen_random(1 + trial % 5, 1 + (trial * 7) % 6, 0.6, model, kinds[trial % 5],
                               seeds());
        auto text = serialize_instance(inst);
        auto back = parse_instance(text);
        CHECK(back == inst);
        CHECK(serialize_instance(back) == text);
    }
}

TEST_CASE("compare_matchings lifts object comparisons") {
    auto inst = parse_instance(kSmallDoc);
    Matching m{{0, 1, 2}};  // a0<-o0 a1<-o1 a2<-o2
    Matching n{{2, 1, 0}};
    CHECK(compare_matchings(inst, 0, m, n) == Comparison::Better);   // o0 over o2
    CHECK(compare_matchings(inst, 1, m, n) == Comparison::Indifferent);
    CHECK(compare_matchings(inst, 2, m, n) == Comparison::Worse);
    Matching partial{{0, kUnmatched, 2}};
    CHECK(compare_matchings(inst, 1, m, partial) == Comparison::Better);  // object over nothing
}

TEST_CASE("feasibility checks") {
    auto inst = parse_instance(kSmallDoc);
    CHECK(is_feasible(inst, Matching{{0, 1, 2}}));
    CHECK(is_feasible(inst, Matching{{kUnmatched, kUnmatched, kUnmatched}}));
    CHECK(!is_feasible(inst, Matching{{0, 0, 2}}));  // object used twice
}

TEST_CASE("k-matching decomposition of the 4-cycle") {
    KMatching km;
    km.k = 2;
    km.num_agents = 2;
    km.incidence = {{0, 1}, {0, 1}};
    auto parts = decompose_k_matching(km);
    REQUIRE(parts.size() == 2);
    // the two parts split the 4-cycle into the two perfect matchings
    CHECK(parts[0].assigned[0] != parts[1].assigned[0]);
    CHECK(parts[0].assigned[0] != parts[0].assigned[1]);
    CHECK(parts[1].assigned[0] != parts[1].assigned[1]);
}

TEST_CASE("k=1 decomposition returns the matching itself") {
    KMatching km;
    km.k = 1;
    km.num_agents = 2;
    km.incidence = {{3}, {1}};
    auto parts = decompose_k_matching(km);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == Matching{{3, 1}});
}

TEST_CASE("an edge shared by two full-degree nodes appears exactly once") {
    KMatching km;
    km.k = 2;
    km.num_agents = 2;
    km.incidence = {{0, 1}, {1, 2}};
    auto parts = decompose_k_matching(km);
    int shared_edge_count = 0;
    for (const auto& p : parts)
        if (p.assigned[0] == 1 || p.assigned[1] == 1) ++shared_edge_count;
    CHECK(shared_edge_count == 2);  // object 1 used once by each agent, in different parts
}

TEST_CASE("random k-matchings decompose into k valid parts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 1 + static_cast<int>(rng() % 4);
        int agents = 1 + static_cast<int>(rng() % 8);
        int objects = 1 + static_cast<int>(rng() % 8);
        KMatching km;
        km.k = k;
        km.num_agents = agents;
        km.incidence.assign(agents, {});
        std::vector<int> object_degree(objects, 0);
        for (int a = 0; a < agents; ++a) {
            int degree = static_cast<int>(rng() % (k + 1));
            for (int d = 0; d < degree; ++d) {
                int o = static_cast<int>(rng() % objects);
                if (object_degree[o] < k) {
                    ++object_degree[o];
                    km.incidence[a].push_back(o);
                }
            }
            std::sort(km.incidence[a].begin(), km.incidence[a].end());
        }
        auto parts = decompose_k_matching(km);
        REQUIRE(static_cast<int>(parts.size()) == k);
        // parts are matchings and their union restores the multiset
        std::vector<std::vector<int>> rebuilt(agents);
        for (const auto& p : parts) {
            std::vector<char> used(objects, 0);
            for (int a = 0; a < agents; ++a) {
                if (p.assigned[a] == kUnmatched) continue;
                CHECK(!used[p.assigned[a]]);
                used[p.assigned[a]] = 1;
                rebuilt[a].push_back(p.assigned[a]);
            }
        }
        for (int a = 0; a < agents; ++a) {
            std::sort(rebuilt[a].begin(), rebuilt[a].end());
            CHECK(rebuilt[a] == km.incidence[a]);
        }
    }
}

TEST_CASE("matching json round trip") {
    auto inst = parse_instance(kSmallDoc);
    Matching m{{0, kUnmatched, 2}};
    auto doc = matching_to_json(inst, m);
    CHECK(matching_from_json(inst, doc) == m);
    MatchingSet set{{m, Matching{{1, 0, kUnmatched}}}};
    auto set_doc = matching_set_to_json(inst, set);
    auto back = matching_set_from_json(inst, set_doc);
    CHECK(back.members == set.members);
}
