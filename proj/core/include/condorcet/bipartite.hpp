#ifndef CONDORCET_BIPARTITE_HPP
#define CONDORCET_BIPARTITE_HPP

#include <vector>

namespace condorcet {

/// Maximum-cardinality matching where each right node may hold up to
/// `right_capacity` left nodes. Returns match_left (right node per left, -1
/// when unmatched). Kuhn augmenting paths; fine at the sizes this project uses.
std::vector<int> max_bipartite_matching(int num_left, int num_right,
                                        const std::vector<std::vector<int>>& adj,
                                        int right_capacity = 1);

/// Left nodes reachable from unmatched left nodes by alternating paths under
/// the given (possibly capacitated) matching. When some left node is
/// unmatched, the result X violates Hall's condition: capacity*|N(X)| < |X|.
std::vector<int> deficiency_set(int num_left, int num_right,
                                const std::vector<std::vector<int>>& adj,
                                const std::vector<int>& match_left, int right_capacity = 1);

struct WeightedEdge {
    int left = 0;
    int right = 0;
    long long weight = 0;
};

struct WeightedMatchingResult {
    long long weight = 0;
    std::vector<int> match_left;  // right node per left, -1 when unmatched
};

/// Maximum-weight matching (agents may stay unmatched). Only positive-weight
/// edges can improve the objective, but zero/negative edges are accepted and
/// simply never used. Successive shortest augmenting paths.
WeightedMatchingResult max_weight_bipartite_matching(int num_left, int num_right,
                                                     const std::vector<WeightedEdge>& edges);

/// Maximum-weight matching covering every left node; requires such a matching
/// to exist. Used for best responses over A-perfect alternatives.
WeightedMatchingResult max_weight_left_perfect_matching(int num_left, int num_right,
                                                        const std::vector<WeightedEdge>& edges);

}  // namespace condorcet

#endif  // CONDORCET_BIPARTITE_HPP
