#include <doctest.h>

#include <set>

#include "condorcet/generators.hpp"
#include "condorcet/popularity.hpp"

using namespace condorcet;

TEST_CASE("matching lower bound family shapes") {
    for (int k = 1; k <= 3; ++k) {
        auto inst = gen_lower_bound_matching(k);
        CHECK(inst.num_agents() == k * k + k + 1);
        CHECK(inst.num_objects() == k * k + k + 1);
        CHECK(inst.num_edges() == inst.num_agents() * inst.num_objects());
        for (const auto& rel : inst.prefs) CHECK(rel.classify() == PreferenceClass::Partial);
    }
    CHECK_THROWS_AS(gen_lower_bound_matching(0), ValidationError);
}

TEST_CASE("matroid lower bound family shapes") {
    auto inst = gen_lower_bound_matroid(2);
    CHECK(inst.num_agents() == 3);
    CHECK(inst.num_objects() == 6 + 15);
    CHECK(inst.kind == AlternativeKind::Constrained);
    // two subset-objects are never independent together
    int s1 = inst.object_index("s_1_2");
    int s2 = inst.object_index("s_1_3");
    REQUIRE(s1 >= 0);
    REQUIRE(s2 >= 0);
    CHECK(!inst.matroid().is_independent(std::vector<int>{s1, s2}));
    CHECK(inst.matroid().is_independent(std::vector<int>{s1, inst.object_index("o1")}));
    CHECK_THROWS_AS(gen_lower_bound_matroid(1), ValidationError);
}

TEST_CASE("matroid lower bound admits the trivial undominated family") {
    auto inst = gen_lower_bound_matroid(2);
    // one matching per agent, each assigning a subset-object
    MatchingSet set;
    for (int a = 0; a < 3; ++a) {
        Matching m{std::vector<int>(3, kUnmatched)};
        m.assigned[a] = inst.object_index("s_1_2");
        set.members.push_back(m);
    }
    CHECK(verify_popular(inst, set).popular);
}

TEST_CASE("no-pareto instance shape") {
    auto inst = gen_no_pareto();
    CHECK(inst.num_agents() == 3);
    CHECK(inst.num_edges() == 9);
    for (const auto& rel : inst.prefs)
        CHECK(rel.strict_pairs() == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("vertex cover reduction on the two-edge path") {
    // path u - v - w with cover {v}: the reduced instance has a
    // Pareto-optimal matching
    SimpleGraph path;
    path.num_nodes = 3;
    path.edges = {{0, 1}, {1, 2}};
    auto inst = gen_vertex_cover_reduction(path, 1);
    CHECK(inst.num_agents() == 3 + 6 * 2);
    CHECK(inst.num_objects() == 3 + 5 * 2 + 2);
    auto search = pareto_matching_exists(inst);
    REQUIRE(search.completed);
    REQUIRE(search.witness.has_value());
    CHECK(verify_pareto_optimal(inst, *search.witness).pareto_optimal);
}

TEST_CASE("vertex cover reduction on the triangle with a unit budget") {
    SimpleGraph triangle;
    triangle.num_nodes = 3;
    triangle.edges = {{0, 1}, {1, 2}, {0, 2}};
    auto inst = gen_vertex_cover_reduction(triangle, 1);  // min cover is 2
    auto search = pareto_matching_exists(inst);
    REQUIRE(search.completed);
    CHECK(!search.witness.has_value());
}

TEST_CASE("vertex cover reduction with no edges") {
    SimpleGraph empty;
    empty.num_nodes = 2;
    auto inst = gen_vertex_cover_reduction(empty, 0);
    auto search = pareto_matching_exists(inst);
    REQUIRE(search.completed);
    CHECK(search.witness.has_value());
}

TEST_CASE("ldm reduction inventory") {
    ThreeDimensionalMatching input;
    input.k = 2;
    input.parts = {{"x"}, {"y"}, {"z"}};
    input.tuples = {{"x", "y", "z"}};
    auto inst = gen_ldm_reduction(input);
    const int m = 1, k = 2;
    int a0 = k * k * k * m + k * k * m + 1;
    CHECK(a0 == 13);
    // agents: one per last-part element, (k-1) per index, a0
    CHECK(inst.num_agents() == 1 + (k - 1) * m + a0);
    // objects: first-parts elements, no excluded tuples, bars, hats, tilde block, zero block
    CHECK(inst.object_index("o_x") >= 0);
    CHECK(inst.object_index("obar2") >= 0);
    CHECK(inst.object_index("otil4") >= 0);
    CHECK(inst.object_index("onot_x_y_z") == -1);  // the only tuple is included
    ThreeDimensionalMatching none = input;
    none.tuples.clear();
    auto inst2 = gen_ldm_reduction(none);
    CHECK(inst2.object_index("onot_x_y_z") >= 0);
}

TEST_CASE("ldm reduction validates its input") {
    ThreeDimensionalMatching bad;
    bad.k = 2;
    bad.parts = {{"x"}, {"y"}};
    CHECK_THROWS_AS(gen_ldm_reduction(bad), ValidationError);
    bad.parts = {{"x"}, {"y"}, {"z", "w"}};
    CHECK_THROWS_AS(gen_ldm_reduction(bad), ValidationError);
}

TEST_CASE("random generator is deterministic per seed") {
    auto a = gen_random(4, 5, 0.5, PrefModel::Partial, "partition", 77);
    auto b = gen_random(4, 5, 0.5, PrefModel::Partial, "partition", 77);
    CHECK(serialize_instance(a) == serialize_instance(b));
    auto c = gen_random(4, 5, 0.5, PrefModel::Partial, "partition", 78);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("random generator honors the preference model") {
    auto strict = gen_random(4, 4, 1.0, PrefModel::Strict, "none", 3);
    for (const auto& rel : strict.prefs) CHECK(rel.classify() == PreferenceClass::Strict);
    auto weak = gen_random(4, 4, 1.0, PrefModel::Weak, "none", 3);
    for (const auto& rel : weak.prefs) CHECK(rel.classify() != PreferenceClass::Partial);
    auto complete = gen_random(3, 5, 1.0, PrefModel::Partial, "none", 3);
    CHECK(complete.num_edges() == 15);
}

TEST_CASE("assignment counterexample search returns a certified triple") {
    auto result = find_assignment_counterexample(6);
    REQUIRE(result.found);
    const auto& inst = result.instance;
    CHECK(inst.kind == AlternativeKind::APerfect);
    for (const auto& rel : inst.prefs) CHECK(rel.classify() == PreferenceClass::Strict);
    REQUIRE(result.set.members.size() == 2);

    // negative margin, certified by the tally
    Tally t = tally(inst, result.set, result.competitor);
    CHECK(t.margin < 0);

    // Pareto-optimality, certified against every set of size at most two
    auto alts = enumerate_alternatives(inst, 64);
    for (std::size_t i = 0; i < alts.size(); ++i) {
        CHECK(!dominates(inst, MatchingSet{{alts[i]}}, result.set));
        for (std::size_t j = i + 1; j < alts.size(); ++j)
            CHECK(!dominates(inst, MatchingSet{{alts[i], alts[j]}}, result.set));
    }

    // exactly two agents receive their top choice in a unique assignment
    int unique_top_agents = 0;
    for (int a = 0; a < inst.num_agents(); ++a) {
        int top = inst.prefs[a].maximal_elements(inst.adjacency[a]).front();
        int holders = 0;
        for (const auto& alt : alts)
            if (alt.assigned[a] == top) ++holders;
        if (holders == 1) ++unique_top_agents;
    }
    CHECK(unique_top_agents == 2);
}

TEST_CASE("assignment counterexample reports not-found for tiny bounds") {
    CHECK(!find_assignment_counterexample(4).found);
}
