#include <doctest.h>

#include <cmath>
#include <set>
#include <random>

#include "condorcet/certificates.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/popularity.hpp"
#include "condorcet/solvers.hpp"

using namespace condorcet;

namespace {

bool popular_by_scan(const MatchingInstance& inst, const MatchingSet& set, int cap = 64) {
    for (const auto& n : enumerate_alternatives(inst, cap))
        if (tally(inst, set, n).margin < 0) return false;
    return true;
}

bool strongly_popular_by_scan(const MatchingInstance& inst, const MatchingSet& set, int cap = 64) {
    for (const auto& n : enumerate_alternatives(inst, cap)) {
        bool member = false;
        for (const auto& m : set.members)
            if (m == n) member = true;
        if (member) continue;
        if (tally(inst, set, n).margin <= 0) return false;
    }
    return true;
}

// No set of at most `size` matchings dominates `set`.
bool pareto_optimal_by_scan(const MatchingInstance& inst, const MatchingSet& set, int cap = 64) {
    auto alts = enumerate_alternatives(inst, cap);
    for (std::size_t i = 0; i < alts.size(); ++i) {
        if (dominates(inst, MatchingSet{{alts[i]}}, set)) return false;
        if (set.members.size() < 2) continue;
        for (std::size_t j = i; j < alts.size(); ++j)
            if (dominates(inst, MatchingSet{{alts[i], alts[j]}}, set)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("round robin with two agents sharing a chain") {
    auto inst = parse_instance(R"({
        "agents":["a1","a2"],"objects":["o1","o2"],
        "edges":[["a1","o1"],["a1","o2"],["a2","o1"],["a2","o2"]],
        "prefs":{"a1":[["o1","o2"]],"a2":[["o1","o2"]]}})");
    auto set = solve_strict_round_robin(inst);
    REQUIRE(set.members.size() == 2);
    // both agents get o1 in one member and o2 in the other
    std::set<Matching> members(set.members.begin(), set.members.end());
    CHECK(members.count(Matching{{0, 1}}) == 1);
    CHECK(members.count(Matching{{1, 0}}) == 1);
    CHECK(popular_by_scan(inst, set));
}

TEST_CASE("round robin with a single agent returns a singleton") {
    auto inst = parse_instance(R"({
        "agents":["a"],"objects":["x","y"],
        "edges":[["a","x"],["a","y"]],"prefs":{"a":[["y","x"]]}})");
    auto set = solve_strict_round_robin(inst);
    REQUIRE(set.members.size() == 1);
    CHECK(set.members[0] == Matching{{1}});
}

TEST_CASE("round robin rejects non-strict preferences") {
    auto inst = parse_instance(R"({
        "agents":["a"],"objects":["x","y"],
        "edges":[["a","x"],["a","y"]],"prefs":{}})");
    CHECK_THROWS_AS(solve_strict_round_robin(inst), NotStrictError);
}

TEST_CASE("round robin respects a custom order") {
    // three agents compete for two objects; late pickers lose the favorite
    auto inst = parse_instance(R"({
        "agents":["a1","a2","a3"],"objects":["o1","o2"],
        "edges":[["a1","o1"],["a1","o2"],["a2","o1"],["a2","o2"],["a3","o1"],["a3","o2"]],
        "prefs":{"a1":[["o1","o2"]],"a2":[["o1","o2"]],"a3":[["o1","o2"]]}})");
    auto holds_favorite = [&](const MatchingSet& set, int agent) {
        for (const auto& m : set.members)
            if (m.assigned[agent] == 0) return true;
        return false;
    };
    auto forward = solve_strict_round_robin(inst, {0, 1, 2});
    CHECK(holds_favorite(forward, 0));
    CHECK(holds_favorite(forward, 1));
    CHECK(!holds_favorite(forward, 2));
    auto backward = solve_strict_round_robin(inst, {2, 1, 0});
    CHECK(holds_favorite(backward, 2));
    CHECK(holds_favorite(backward, 1));
    CHECK(!holds_favorite(backward, 0));
    CHECK_THROWS_AS(solve_strict_round_robin(inst, {0, 0, 1}), ValidationError);
}

TEST_CASE("round robin outputs on random strict instances") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = gen_random(1 + rng() % 5, 1 + rng() % 5, 0.5 + 0.1 * (rng() % 5),
                               PrefModel::Strict, "none", rng());
        auto set = solve_strict_round_robin(inst);
        CHECK(set.members.size() <= 2);
        CHECK(verify_popular(inst, set).popular);
        CHECK(pareto_optimal_by_scan(inst, set));
        if (!find_top_choice_matching(inst)) CHECK(strongly_popular_by_scan(inst, set));
    }
}

TEST_CASE("weak matroid solver on the shared-top uniform instance") {
    auto inst = parse_instance(R"({
        "agents":["a1","a2"],"objects":["o","p"],
        "edges":[["a1","o"],["a1","p"],["a2","o"],["a2","p"]],
        "prefs":{"a1":[["o","p"]],"a2":[["o","p"]]},
        "matroid":{"type":"uniform","rank":1},
        "alternatives":"constrained"})");
    auto set = solve_weak_matroid(inst);
    REQUIRE(set.members.size() == 2);
    // the shared favorite rotates between the two agents
    std::set<int> holders;
    for (const auto& m : set.members)
        for (int a = 0; a < 2; ++a)
            if (m.assigned[a] == 0) holders.insert(a);
    CHECK(holders.size() == 2);
    CHECK(popular_by_scan(inst, set));
}

TEST_CASE("weak matroid solver with no agents returns an empty pair") {
    auto inst = parse_instance(R"({"agents":[],"objects":["o"],"edges":[],"prefs":{},
        "matroid":{"type":"free"},"alternatives":"constrained"})");
    auto set = solve_weak_matroid(inst);
    REQUIRE(set.members.size() == 2);
    CHECK(set.members[0].assigned.empty());
    CHECK(set.members[1].assigned.empty());
}

TEST_CASE("weak matroid solver rejects partial orders") {
    CHECK_THROWS_AS(solve_weak_matroid(gen_no_pareto()), NotWeakError);
}

TEST_CASE("weak matroid outputs are popular and pareto-optimal") {
    std::mt19937_64 rng(313);
    int strong_checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        PrefModel model = trial % 2 ? PrefModel::Weak : PrefModel::Strict;
        const char* kinds[] = {"free", "uniform", "partition", "graphic"};
        auto inst = gen_random(1 + rng() % 4, 1 + rng() % 5, 0.5 + 0.1 * (rng() % 5), model,
                               kinds[rng() % 4], rng());
        auto set = solve_weak_matroid(inst);
        CHECK(set.members.size() <= 2);
        CHECK(verify_popular(inst, set).popular);
        CHECK(pareto_optimal_by_scan(inst, set));
        if (model == PrefModel::Strict && !find_top_choice_matching(inst)) {
            CHECK(strongly_popular_by_scan(inst, set));
            ++strong_checked;
        }
    }
    CHECK(strong_checked > 5);
}

TEST_CASE("weak matroid solver matches round robin quality on symmetric chains") {
    // identical chains: both solvers produce brute-force Pareto pairs and give
    // every agent the same best outcome
    auto inst = parse_instance(R"({
        "agents":["a1","a2"],"objects":["o1","o2"],
        "edges":[["a1","o1"],["a1","o2"],["a2","o1"],["a2","o2"]],
        "prefs":{"a1":[["o1","o2"]],"a2":[["o1","o2"]]}})");
    auto rr = solve_strict_round_robin(inst);
    auto wm = solve_weak_matroid(inst);
    CHECK(pareto_optimal_by_scan(inst, rr));
    CHECK(pareto_optimal_by_scan(inst, wm));
    auto best_outcome = [&](const MatchingSet& set, int agent) {
        std::optional<int> best;
        for (const auto& m : set.members) {
            auto o = m.at(agent);
            if (inst.prefs[agent].compare(o, best) == Comparison::Better) best = o;
        }
        return best;
    };
    for (int a = 0; a < 2; ++a) CHECK(best_outcome(rr, a) == best_outcome(wm, a));
}

TEST_CASE("square-root solver on the k=1 lower bound family") {
    auto inst = gen_lower_bound_matching(1);
    auto [set, trace] = solve_partial_sqrt(inst);
    CHECK(trace.chosen_k == static_cast<int>(std::ceil(std::sqrt(6.0))));
    CHECK(static_cast<int>(set.members.size()) <= trace.chosen_k);
    CHECK(popular_by_scan(inst, set));
}

TEST_CASE("square-root solver under total indifference returns one covering matching") {
    auto inst = parse_instance(R"({
        "agents":["a1","a2"],"objects":["o1","o2","o3"],
        "edges":[["a1","o1"],["a1","o2"],["a1","o3"],["a2","o1"],["a2","o2"],["a2","o3"]],
        "prefs":{}})");
    auto [set, trace] = solve_partial_sqrt(inst);
    REQUIRE(trace.rounds.size() == 1);
    CHECK(trace.rounds[0].terminal);
    CHECK(set.members.size() == 1);
    for (int a = 0; a < 2; ++a) CHECK(set.members[0].assigned[a] != kUnmatched);
}

TEST_CASE("square-root solver accepts weak rankings") {
    auto inst = gen_random(4, 4, 0.8, PrefModel::Weak, "none", 5);
    auto [set, trace] = solve_partial_sqrt(inst);
    CHECK(static_cast<int>(set.members.size()) <= trace.chosen_k);
    CHECK(verify_popular(inst, set).popular);
}

TEST_CASE("square-root solver on random partial orders") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        auto inst = gen_random(n, 1 + rng() % 6, 0.3 + 0.1 * (rng() % 6), PrefModel::Partial,
                               "none", rng());
        auto [set, trace] = solve_partial_sqrt(inst);
        CHECK(static_cast<int>(set.members.size()) <=
              static_cast<int>(std::ceil(std::sqrt(2.0 * n))));
        CHECK(verify_popular(inst, set).popular);
        CHECK(popular_by_scan(inst, set));
        for (std::size_t r = 1; r < trace.rounds.size(); ++r)
            CHECK(trace.rounds[r].agents.size() < trace.rounds[r - 1].agents.size());
    }
}

TEST_CASE("square-root solver peels the k=2 lower bound family") {
    auto inst = gen_lower_bound_matching(2);
    auto [set, trace] = solve_partial_sqrt(inst);
    CHECK(static_cast<int>(set.members.size()) <= trace.chosen_k);
    CHECK(trace.chosen_k == 4);  // ceil(sqrt(14))
    CHECK(verify_popular(inst, set).popular);
}

TEST_CASE("weak matroid pairs certify against random competitors") {
    std::mt19937_64 rng(4096);
    int certified = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const char* kinds[] = {"uniform", "partition", "graphic"};
        auto inst = gen_random(1 + rng() % 4, 1 + rng() % 4, 0.7, PrefModel::Weak,
                               kinds[trial % 3], rng());
        auto set = solve_weak_matroid(inst);
        if (set.members.size() < 2 || set.members[0] == set.members[1]) continue;
        auto alts = enumerate_alternatives(inst, 64);
        auto aug = augment_with_nulls(inst);
        MatchingSet lifted;
        for (const auto& m : set.members) lifted.members.push_back(lift_to_augmented(aug, m));
        for (int c = 0; c < 5; ++c) {
            Matching competitor = lift_to_augmented(aug, alts[rng() % alts.size()]);
            auto outcome = build_branching_certificate(aug, lifted, competitor);
            REQUIRE(outcome.certificate.has_value());
            CHECK(verify_colored_branching(*outcome.certificate).valid);
            ++certified;
        }
    }
    CHECK(certified > 50);
}

TEST_CASE("square-root solver with zero agents") {
    auto inst = parse_instance(R"({"agents":[],"objects":["o"],"edges":[],"prefs":{}})");
    auto [set, trace] = solve_partial_sqrt(inst);
    CHECK(set.members.size() == 1);
    CHECK(trace.chosen_k == 0);
}

TEST_CASE("agents isolated by peeling stay unmatched") {
    // one object dominates everything for both agents; one agent loses its
    // whole neighborhood once the violator round removes the object
    auto inst = parse_instance(R"({
        "agents":["a1","a2","a3"],"objects":["x"],
        "edges":[["a1","x"],["a2","x"],["a3","x"]],
        "prefs":{}})");
    auto [set, trace] = solve_partial_sqrt(inst);
    CHECK(verify_popular(inst, set).popular);
}
