#ifndef CONDORCET_CERTIFICATES_HPP
#define CONDORCET_CERTIFICATES_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "condorcet/instance.hpp"

namespace condorcet {

// All operations here work on a null-augmented instance (see
// augment_with_nulls): every agent is matched and matched-object sets of
// maximal constrained matchings are bases.

/// Matching of the augmented instance corresponding to `m`, with unmatched
/// agents placed on their private null objects.
Matching lift_to_augmented(const MatchingInstance& augmented, const Matching& m);
/// Inverse of lift_to_augmented.
Matching project_from_augmented(const MatchingInstance& augmented, const Matching& m);

/// Arc (a, b) when the object b holds under `into` lies on the fundamental
/// circuit closed by adding a's object under `from` to the basis into(A).
/// Agents whose `from` object already belongs to into(A) emit no arcs.
struct ExchangeGraph {
    std::vector<std::vector<int>> arcs;  // arcs[a] = sorted heads
    Matching into;                       // the basis being exchanged into
    Matching from;
};

ExchangeGraph build_exchange_graph(const MatchingInstance& augmented, const Matching& into,
                                   const Matching& from);

/// Functional digraph induced by a basis-exchange bijection f from from(A)
/// onto into(A): the arc of a points at the agent holding f(from(a)) in
/// `into`. Node-disjoint cycles (loops allowed) by construction.
struct BrualdiDigraph {
    std::vector<int> successor;              // one arc per agent
    std::vector<std::pair<int, int>> bijection;  // (object of from, object of into)
};

BrualdiDigraph build_brualdi_digraph(const MatchingInstance& augmented, const Matching& into,
                                     const Matching& from);

/// Reassigns a minimum-node subcycle through `pivot` (within the given cycle's
/// nodes) from `m` to `n`; the result is oracle-verified before returning.
Matching apply_cycle_exchange(const MatchingInstance& augmented, const Matching& m,
                              const Matching& n, const std::vector<int>& cycle, int pivot);

/// Upgrades a subset of the path (containing both ends) to its `n` objects,
/// demoting the final agent to its null object.
Matching apply_path_exchange(const MatchingInstance& augmented, const Matching& m,
                             const Matching& n, const std::vector<int>& path);

/// Sequential path exchanges over node-disjoint paths satisfying the
/// no-back-arc ordering condition.
Matching apply_multi_path_exchange(const MatchingInstance& augmented, const Matching& m,
                                   const Matching& n, const std::vector<std::vector<int>>& paths);

enum class AgentColor { Red, Blue, Grey };

struct BranchingCertificate {
    struct Arc {
        int from = 0;
        int to = 0;
        int member = 0;        // index into the certified set
        int source_agent = 0;  // start of the contributing path
    };
    std::vector<Arc> arcs;
    std::vector<AgentColor> colors;  // red = prefers competitor, blue = prefers set
};

struct CertificateOutcome {
    std::optional<BranchingCertificate> certificate;
    std::optional<MatchingSet> improvement;  // matchings of the augmented instance
};

/// Builds the branching union of first-blue paths in each member's exchange
/// cycles. When a structural violation arises (an all-nonblue cycle through a
/// red agent, a node on two paths, or a cycle in the union), executes the
/// corresponding exchange and returns a set dominating the input instead.
CertificateOutcome build_branching_certificate(const MatchingInstance& augmented,
                                               const MatchingSet& set, const Matching& competitor);

struct BranchingCheck {
    bool valid = false;
    std::string reason;  // empty when valid
    int red = 0;
    int blue = 0;
};

/// Validates branching axioms and color conditions (blue leaves in non-trivial
/// components, red out-degree at least two), re-deriving the blue-majority
/// count per component.
BranchingCheck verify_colored_branching(const BranchingCertificate& certificate);

nlohmann::json certificate_to_json(const MatchingInstance& augmented,
                                   const BranchingCertificate& certificate);

}  // namespace condorcet

#endif  // CONDORCET_CERTIFICATES_HPP
