#ifndef CONDORCET_ARBORESCENCE_HPP
#define CONDORCET_ARBORESCENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "condorcet/prefs.hpp"

namespace condorcet {

/// Rooted digraph whose non-root nodes rank their incoming arcs (by arc index)
/// with partial orders.
struct ArborescenceInstance {
    std::vector<std::string> node_names;
    int root = 0;
    std::vector<std::pair<int, int>> arcs;  // (tail, head) node indices
    std::vector<PreferenceRelation> prefs;  // per node, over incoming arc indices

    int num_nodes() const { return static_cast<int>(node_names.size()); }
    int num_arcs() const { return static_cast<int>(arcs.size()); }
    std::vector<int> incoming(int node) const;
    int node_index(const std::string& name) const;
};

ArborescenceInstance parse_arborescence(const std::string& text);
std::string serialize_arborescence(const ArborescenceInstance& instance);

/// Arc sets with in-degree one at every non-root node and no cycle, reaching
/// every node from the root.
bool is_arborescence(const ArborescenceInstance& instance, const std::vector<int>& arc_set);

/// All r-arborescences as sorted arc-index sets; guarded by a product cap on
/// in-degree choices.
std::vector<std::vector<int>> enumerate_arborescences(const ArborescenceInstance& instance,
                                                      long long cap = 5'000'000);

/// For each agent, the arc it receives (index into instance.arcs).
std::vector<int> arborescence_outcome(const ArborescenceInstance& instance,
                                      const std::vector<int>& arc_set);

/// Margin of the member family against one competitor, comparing incoming arcs.
int arborescence_margin(const ArborescenceInstance& instance,
                        const std::vector<std::vector<int>>& members,
                        const std::vector<int>& competitor);

/// An arborescence whose every arc is maximal for its head, when one exists.
std::optional<std::vector<int>> find_top_choice_arborescence(const ArborescenceInstance& instance);

/// Two (possibly identical) r-arborescences whose union contains, for every
/// agent, an arc maximal in its preference order. Throws UnreachableError if
/// some node cannot be reached from the root.
std::pair<std::vector<int>, std::vector<int>> solve_arborescence(
    const ArborescenceInstance& instance);

}  // namespace condorcet

#endif  // CONDORCET_ARBORESCENCE_HPP
