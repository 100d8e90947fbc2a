#include "condorcet/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace condorcet {

namespace {

bool try_augment(int left, const std::vector<std::vector<int>>& adj,
                 std::vector<std::vector<int>>& holders, std::vector<int>& match_left,
                 std::vector<char>& visited, int right_capacity) {
    for (int right : adj[left]) {
        if (visited[right]) continue;
        visited[right] = 1;
        if (static_cast<int>(holders[right].size()) < right_capacity) {
            holders[right].push_back(left);
            match_left[left] = right;
            return true;
        }
        for (std::size_t i = 0; i < holders[right].size(); ++i) {
            int other = holders[right][i];
            if (try_augment(other, adj, holders, match_left, visited, right_capacity)) {
                holders[right][i] = left;
                match_left[left] = right;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<int> max_bipartite_matching(int num_left, int num_right,
                                        const std::vector<std::vector<int>>& adj,
                                        int right_capacity) {
    std::vector<int> match_left(num_left, -1);
    std::vector<std::vector<int>> holders(num_right);
    for (int l = 0; l < num_left; ++l) {
        std::vector<char> visited(num_right, 0);
        try_augment(l, adj, holders, match_left, visited, right_capacity);
    }
    return match_left;
}

std::vector<int> deficiency_set(int num_left, int num_right,
                                const std::vector<std::vector<int>>& adj,
                                const std::vector<int>& match_left, int right_capacity) {
    (void)right_capacity;
    std::vector<std::vector<int>> holders(num_right);
    for (int l = 0; l < num_left; ++l)
        if (match_left[l] >= 0) holders[match_left[l]].push_back(l);

    std::vector<char> in_set(num_left, 0);
    std::vector<char> right_seen(num_right, 0);
    std::vector<int> queue;
    for (int l = 0; l < num_left; ++l)
        if (match_left[l] < 0) {
            in_set[l] = 1;
            queue.push_back(l);
        }
    while (!queue.empty()) {
        int l = queue.back();
        queue.pop_back();
        for (int r : adj[l]) {
            if (right_seen[r]) continue;
            right_seen[r] = 1;
            for (int other : holders[r])
                if (!in_set[other]) {
                    in_set[other] = 1;
                    queue.push_back(other);
                }
        }
    }
    std::vector<int> out;
    for (int l = 0; l < num_left; ++l)
        if (in_set[l]) out.push_back(l);
    return out;
}

namespace {

// Successive shortest augmenting paths. Nodes are left (0..L-1) and right
// (L..L+R-1) vertices; unmatched edges cost -w left->right, matched edges
// cost +w right->left. Starting from an extreme matching no negative cycle
// exists, so Bellman-Ford applies.
WeightedMatchingResult run_weighted(int num_left, int num_right,
                                    const std::vector<WeightedEdge>& edges, bool perfect) {
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    const int total_nodes = num_left + num_right;

    std::vector<int> match_left(num_left, -1);
    std::vector<int> match_right(num_right, -1);
    long long total = 0;

    for (int round = 0; round < num_left; ++round) {
        std::vector<long long> dist(total_nodes, kInf);
        // parent[v]: node we came from; for right nodes that is a left node.
        std::vector<int> parent(total_nodes, -1);
        for (int l = 0; l < num_left; ++l)
            if (match_left[l] < 0) dist[l] = 0;

        for (int pass = 0; pass < total_nodes; ++pass) {
            bool changed = false;
            for (const auto& e : edges) {
                int rnode = num_left + e.right;
                if (match_left[e.left] == e.right) {
                    if (dist[rnode] < kInf && dist[rnode] + e.weight < dist[e.left]) {
                        dist[e.left] = dist[rnode] + e.weight;
                        parent[e.left] = rnode;
                        changed = true;
                    }
                } else {
                    if (dist[e.left] < kInf && dist[e.left] - e.weight < dist[rnode]) {
                        dist[rnode] = dist[e.left] - e.weight;
                        parent[rnode] = e.left;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        int best_right = -1;
        long long best_cost = kInf;
        for (int r = 0; r < num_right; ++r) {
            if (match_right[r] >= 0) continue;
            if (dist[num_left + r] < best_cost) {
                best_cost = dist[num_left + r];
                best_right = r;
            }
        }
        if (best_right < 0 || (!perfect && best_cost >= 0)) {
            if (perfect && best_right < 0) throw std::runtime_error("no left-perfect matching exists");
            break;
        }

        int rnode = num_left + best_right;
        while (rnode >= 0) {
            int l = parent[rnode];
            int prev_right = match_left[l];
            match_left[l] = rnode - num_left;
            match_right[rnode - num_left] = l;
            rnode = prev_right < 0 ? -1 : num_left + prev_right;
        }
        total += -best_cost;
    }

    if (perfect) {
        for (int l = 0; l < num_left; ++l)
            if (match_left[l] < 0) throw std::runtime_error("no left-perfect matching exists");
    }
    return {total, match_left};
}

}  // namespace

WeightedMatchingResult max_weight_bipartite_matching(int num_left, int num_right,
                                                     const std::vector<WeightedEdge>& edges) {
    return run_weighted(num_left, num_right, edges, false);
}

WeightedMatchingResult max_weight_left_perfect_matching(int num_left, int num_right,
                                                        const std::vector<WeightedEdge>& edges) {
    return run_weighted(num_left, num_right, edges, true);
}

}  // namespace condorcet
