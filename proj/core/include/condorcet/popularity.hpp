#ifndef CONDORCET_POPULARITY_HPP
#define CONDORCET_POPULARITY_HPP

#include <optional>
#include <vector>

#include "condorcet/instance.hpp"

namespace condorcet {

/// Default edge-count cap for brute-force enumeration; override per call or
/// through CONDORCET_CAP in the CLI.
constexpr int kDefaultEnumerationCap = 24;

/// Pairwise comparison of a set against one competitor. for_set counts agents
/// with some member they strictly prefer to the competitor; against_set counts
/// agents strictly preferring the competitor to every member.
struct Tally {
    int for_set = 0;
    int against_set = 0;
    int margin = 0;                      // for_set - against_set
    std::vector<int> prefers_set;        // agents behind for_set
    std::vector<int> prefers_competitor; // agents behind against_set
};

Tally tally(const MatchingInstance& instance, const MatchingSet& set, const Matching& competitor);

/// Max-weight best-response encoding: edge values +1 (beats every member),
/// -1 (some member beats it), 0 otherwise; staying unmatched is worth -1 for
/// agents matched somewhere in the set and 0 otherwise. The optimum over
/// feasible alternatives equals max over competitors of -margin.
struct BestResponseProblem {
    std::vector<std::vector<int>> edge_value;  // aligned with instance adjacency
    std::vector<int> dummy_value;              // per agent
};

BestResponseProblem build_best_response(const MatchingInstance& instance, const MatchingSet& set);

struct PopularityResult {
    bool popular = false;
    std::optional<Matching> counterexample;  // margin < 0 against the set
    int counterexample_margin = 0;
};

/// Polynomial popularity check via the best-response optimum: bipartite
/// matching when unconstrained, weighted matroid intersection over
/// null-augmented parallel copies when constrained, perfect matching for
/// a_perfect instances.
PopularityResult verify_popular(const MatchingInstance& instance, const MatchingSet& set);

struct ParetoResult {
    bool pareto_optimal = false;
    std::optional<Matching> dominator;
};

/// Single-matching Pareto test. Polynomial for unconstrained and a_perfect
/// instances (per-agent improvement search); falls back to the brute-force
/// enumeration for constrained instances, honoring `edge_cap`.
ParetoResult verify_pareto_optimal(const MatchingInstance& instance, const Matching& m,
                                   int edge_cap = kDefaultEnumerationCap);

/// Set-level Pareto dominance: candidate is no larger, gives every agent a
/// member at least as good as everything in incumbent, and some agent a member
/// strictly better than everything in incumbent.
bool dominates(const MatchingInstance& instance, const MatchingSet& candidate,
               const MatchingSet& incumbent);

/// Every feasible alternative exactly once, sorted by assignment vector.
/// Throws TooLargeError when the instance has more than edge_cap edges.
std::vector<Matching> enumerate_alternatives(const MatchingInstance& instance,
                                             int edge_cap = kDefaultEnumerationCap);

struct DimensionResult {
    int dimension = 0;
    MatchingSet witness;
};

/// Smallest k admitting a (strictly, when strict_mode) popular k-subset of
/// alternatives, with competitors ranging over alternatives whose assignment
/// differs from every member. Deterministic; the witness is the first hit of
/// a documented search order, not necessarily the lexicographic minimum.
DimensionResult brute_force_condorcet_dimension(const MatchingInstance& instance, bool strict_mode,
                                                int edge_cap = kDefaultEnumerationCap);

/// True when some popular set of at most `size` (<= 2) matchings exists.
/// Uses class-collapsed search when plain enumeration is too large.
bool popular_set_of_size_exists(const MatchingInstance& instance, int size,
                                int edge_cap = kDefaultEnumerationCap);

struct ParetoSetResult {
    bool exists = false;
    std::optional<MatchingSet> witness;
};

/// Searches all size-`size` sets of alternatives for one not Pareto-dominated
/// by any set of size at most `size`.
ParetoSetResult brute_force_pareto_sets(const MatchingInstance& instance, int size,
                                        int edge_cap = kDefaultEnumerationCap);

/// Collects up to `limit` Pareto-optimal sets of the given size (same search
/// as brute_force_pareto_sets, continued past the first hit).
std::vector<MatchingSet> collect_pareto_optimal_sets(const MatchingInstance& instance, int size,
                                                     int limit,
                                                     int edge_cap = kDefaultEnumerationCap);

struct ParetoMatchingSearch {
    bool completed = false;  // false when the node budget ran out
    std::optional<Matching> witness;
};

/// Decides whether any Pareto-optimal matching exists by scanning maximal
/// matchings up to agent/object interchangeability, pruning assignments that
/// are dominated no matter how they are extended. Exact when it completes.
ParetoMatchingSearch pareto_matching_exists(const MatchingInstance& instance,
                                            long long node_budget = 50'000'000);

/// Agents (objects) grouped so that swapping any two members of a group is an
/// instance automorphism. Used by the class-collapsed searches.
std::vector<std::vector<int>> agent_interchange_classes(const MatchingInstance& instance);
std::vector<std::vector<int>> object_interchange_classes(const MatchingInstance& instance);

/// True when the top-choice map (every agent to a most-preferred obtainable
/// object) can be realized as a feasible alternative.
std::optional<Matching> find_top_choice_matching(const MatchingInstance& instance);

}  // namespace condorcet

#endif  // CONDORCET_POPULARITY_HPP
