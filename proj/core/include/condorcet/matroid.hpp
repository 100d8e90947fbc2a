#ifndef CONDORCET_MATROID_HPP
#define CONDORCET_MATROID_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "condorcet/errors.hpp"

namespace condorcet {

struct MatchingInstance;

/// Independence oracle over the ground set {0, ..., ground_size-1}.
/// Queries are counted so callers can report oracle complexity.
class MatroidOracle {
public:
    explicit MatroidOracle(int ground_size) : ground_size_(ground_size) {}
    virtual ~MatroidOracle() = default;

    int ground_size() const { return ground_size_; }

    /// `set` holds distinct elements in any order.
    bool is_independent(std::span<const int> set) const;

    std::uint64_t call_count() const { return calls_.load(std::memory_order_relaxed); }
    void reset_call_count() const { calls_.store(0, std::memory_order_relaxed); }

private:
    // `set` arrives sorted and duplicate-free.
    virtual bool check(std::span<const int> set) const = 0;

    int ground_size_;
    mutable std::atomic<std::uint64_t> calls_{0};
};

using MatroidPtr = std::shared_ptr<const MatroidOracle>;

MatroidPtr make_free_matroid(int ground_size);
MatroidPtr make_uniform_matroid(int ground_size, int rank);
/// Parts must be disjoint; elements outside every part are unconstrained.
MatroidPtr make_partition_matroid(int ground_size, std::vector<std::vector<int>> parts,
                                  std::vector<int> capacities);
/// edge_map[element] = (u, v) over nodes 0..node_count-1; independent = acyclic.
MatroidPtr make_graphic_matroid(int node_count, std::vector<std::pair<int, int>> edge_map);
/// Children live on disjoint ground subsets given in `grounds` (global ids,
/// position i of grounds[c] maps to child-local id i). Uncovered elements are free.
MatroidPtr make_direct_sum_matroid(int ground_size, std::vector<MatroidPtr> children,
                                   std::vector<std::vector<int>> grounds);
MatroidPtr make_truncation_matroid(MatroidPtr inner, int bound);
/// Union of `inner` with itself: independent iff the set splits into two
/// inner-independent parts.
MatroidPtr make_self_union_matroid(MatroidPtr inner);
/// Ground of copies; copy_to_orig[c] names the inner element copy c duplicates.
/// Two copies of the same element are dependent; otherwise copies behave like
/// their originals.
MatroidPtr make_parallel_copy_matroid(MatroidPtr inner, std::vector<int> copy_to_orig);

struct Basis {
    std::vector<int> elements;  // sorted
    bool certified = false;
};

/// Checks independence and maximality; throws NotABasisError otherwise.
Basis certify_basis(const MatroidOracle& oracle, std::vector<int> elements);

/// C(basis, o) = elements x of the basis with basis - x + o independent.
/// Requires o outside the basis.
std::vector<int> fundamental_circuit(const MatroidOracle& oracle, const Basis& basis, int o);

/// Bijection f from `from` onto `to` with f(o) = o on the intersection and
/// to - f(o) + o a basis for every o outside `to`. Returned as sorted pairs
/// (o, f(o)). Throws NoBijectionError if none exists (non-matroid oracle).
std::vector<std::pair<int, int>> bijective_exchange(const MatroidOracle& oracle,
                                                    const Basis& from, const Basis& to);

/// Common independent set of maximum total weight; elements of nonpositive
/// weight are never required, so the empty set is acceptable when all weights
/// are <= 0. Exact for true matroid oracles.
std::vector<int> max_weight_common_independent(const MatroidOracle& first,
                                               const MatroidOracle& second,
                                               std::span<const long long> weights);

struct UnionSplit {
    bool independent = false;
    std::vector<int> part1;  // disjoint witness halves when independent
    std::vector<int> part2;
};

/// Decides whether `set` splits into two inner-independent sets and returns a
/// disjoint witness partition on success.
UnionSplit union_is_independent(const MatroidOracle& inner, std::span<const int> set);

/// Adds one private null object per agent (preferred below everything), an
/// edge to it, and replaces the matroid by the direct sum with the free
/// matroid on the nulls, truncated at the number of agents. In the result all
/// maximal constrained matchings match every agent and their object sets are
/// bases. The null object of agent a is placed at index (original objects + a).
MatchingInstance augment_with_nulls(const MatchingInstance& instance);

}  // namespace condorcet

#endif  // CONDORCET_MATROID_HPP
