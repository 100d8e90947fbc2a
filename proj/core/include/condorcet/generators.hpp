#ifndef CONDORCET_GENERATORS_HPP
#define CONDORCET_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "condorcet/instance.hpp"

namespace condorcet {

/// Complete bipartite instance on k^2+k+1 agents whose identical partial
/// orders put one special object above a block of k^2 objects, leaving k
/// objects incomparable. Weak Condorcet dimension k+1.
MatchingInstance gen_lower_bound_matching(int k);

/// k+1 identical agents over k(k+1) base objects plus one object per k-subset
/// of the base, with a partition matroid admitting at most one subset-object.
/// Weak Condorcet dimension k+1 = number of agents.
MatchingInstance gen_lower_bound_matroid(int k);

/// The 3x3 complete instance with every agent preferring the first object to
/// the third: no Pareto-optimal matching exists.
MatchingInstance gen_no_pareto();

struct SimpleGraph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Matching instance with a Pareto-optimal matching iff `graph` has a vertex
/// cover of at most `cover_size` nodes.
MatchingInstance gen_vertex_cover_reduction(const SimpleGraph& graph, int cover_size);

struct ThreeDimensionalMatching {
    int k = 2;                                   // popular-set size probed; parts = k+1
    std::vector<std::vector<std::string>> parts; // k+1 parts of equal size
    std::vector<std::vector<std::string>> tuples;
};

/// Matching instance with a popular set of k matchings iff the (k+1)-partite
/// instance has a perfect tuple cover.
MatchingInstance gen_ldm_reduction(const ThreeDimensionalMatching& input);

enum class PrefModel { Strict, Weak, Partial };

MatchingInstance gen_random(int num_agents, int num_objects, double edge_density,
                            PrefModel pref_model, const std::string& matroid_kind,
                            std::uint64_t seed);

struct AssignmentCounterexample {
    bool found = false;
    MatchingInstance instance;
    MatchingSet set;         // Pareto-optimal pair of assignments
    Matching competitor;     // beats the pair in the pairwise tally
};

/// Searches assignment instances (strict rankings, A-perfect alternatives) for
/// a Pareto-optimal pair that loses a pairwise comparison. Deterministic:
/// structured families first, then seeded random instances.
AssignmentCounterexample find_assignment_counterexample(int max_agents,
                                                        long long attempt_budget = 2'000'000);

}  // namespace condorcet

#endif  // CONDORCET_GENERATORS_HPP
