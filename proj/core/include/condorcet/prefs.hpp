#ifndef CONDORCET_PREFS_HPP
#define CONDORCET_PREFS_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "condorcet/errors.hpp"

namespace condorcet {

enum class Comparison { Better, Worse, Indifferent };

enum class PreferenceClass { Strict, Weak, Partial };

/// A strict partial order over the objects adjacent to one agent, stored
/// transitively closed. Objects are identified by nonnegative integer ids;
/// std::nullopt in comparisons stands for being unmatched, which every
/// adjacent object beats.
class PreferenceRelation {
public:
    PreferenceRelation() = default;

    int agent() const { return agent_; }
    const std::vector<int>& adjacent() const { return adjacent_; }

    bool is_adjacent(int object) const { return local_index(object) >= 0; }

    /// All strict pairs (better, worse), transitively closed, in a stable order.
    std::vector<std::pair<int, int>> strict_pairs() const;

    bool strictly_prefers(int better, int worse) const;

    Comparison compare(std::optional<int> x, std::optional<int> y) const;

    PreferenceClass classify() const;

    /// Elements of `pool` that no other element of `pool` strictly beats.
    std::vector<int> maximal_elements(std::span<const int> pool) const;

    /// ground_size minus the number of objects strictly preferred to `object`.
    /// Only meaningful for weak rankings, where higher weight means better.
    int rank_weight(int object, int ground_size) const;

    /// Same relation restated over renamed objects; `rename[i]` replaces
    /// adjacent()[i]. Used when objects are duplicated or copied.
    PreferenceRelation renamed(std::span<const int> rename) const;

    friend PreferenceRelation build_relation(int agent, std::vector<int> adjacent,
                                             std::span<const std::pair<int, int>> pairs);

    bool operator==(const PreferenceRelation& other) const;

private:
    int local_index(int object) const;
    bool beats_local(int x, int y) const { return matrix_[static_cast<std::size_t>(x) * adjacent_.size() + y] != 0; }

    int agent_ = -1;
    std::vector<int> adjacent_;        // sorted object ids
    std::vector<unsigned char> matrix_;  // k*k, transitively closed strict relation
};

/// Builds the transitive closure of `pairs` over `adjacent`.
/// Throws UnknownObjectError if a pair mentions a non-adjacent object and
/// CycleError if the closure would relate an object to itself.
PreferenceRelation build_relation(int agent, std::vector<int> adjacent,
                                  std::span<const std::pair<int, int>> pairs);

}  // namespace condorcet

#endif  // CONDORCET_PREFS_HPP
