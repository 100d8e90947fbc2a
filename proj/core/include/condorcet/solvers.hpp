#ifndef CONDORCET_SOLVERS_HPP
#define CONDORCET_SOLVERS_HPP

#include <optional>
#include <vector>

#include "condorcet/instance.hpp"

namespace condorcet {

/// Record of the peeling rounds of the square-root solver.
struct SolverTrace {
    struct Round {
        std::vector<int> agents;    // still unassigned when the round starts
        std::vector<int> objects;   // still available
        std::vector<std::pair<int, int>> undominated_edges;
        std::vector<int> hall_violator;  // empty on the final round
        std::vector<int> saturated;      // the k agents handed all their undominated objects
        bool terminal = false;
    };
    int chosen_k = 0;
    std::vector<Round> rounds;
};

/// Two rounds of picks over duplicated objects under strict rankings; the
/// resulting 2-matching decomposes into a Pareto-optimal set of at most two
/// matchings. Requires strict preferences and no matroid.
MatchingSet solve_strict_round_robin(const MatchingInstance& instance,
                                     const std::vector<int>& order = {});

/// Weighted matroid intersection over parallel copies: rank weights on the
/// agent-partition side against the self-union of the constraint matroid.
/// Splitting the optimum yields a Pareto-optimal pair of constrained
/// matchings. Requires weak (or strict) rankings.
MatchingSet solve_weak_matroid(const MatchingInstance& instance);

/// Peeling algorithm for arbitrary partial orders without a matroid: repeated
/// undominated-edge rounds, Hall violators saturating k agents each, and a
/// final covering k-matching, decomposed into at most ceil(sqrt(2n)) matchings.
std::pair<MatchingSet, SolverTrace> solve_partial_sqrt(const MatchingInstance& instance);

}  // namespace condorcet

#endif  // CONDORCET_SOLVERS_HPP
