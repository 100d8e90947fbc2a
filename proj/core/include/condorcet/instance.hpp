#ifndef CONDORCET_INSTANCE_HPP
#define CONDORCET_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "condorcet/matroid.hpp"
#include "condorcet/prefs.hpp"

namespace condorcet {

enum class AlternativeKind { AllMatchings, Constrained, APerfect };

constexpr int kUnmatched = -1;

/// Assignment of agents to objects; assigned[a] is an object id or kUnmatched.
struct Matching {
    std::vector<int> assigned;

    std::optional<int> at(int agent) const {
        int o = assigned[agent];
        if (o == kUnmatched) return std::nullopt;
        return o;
    }
    bool operator==(const Matching& other) const = default;
    bool operator<(const Matching& other) const { return assigned < other.assigned; }
};

struct MatchingSet {
    std::vector<Matching> members;  // duplicates allowed, compared per agent
};

/// Multiset of edges with every node incident to at most k of them.
struct KMatching {
    int k = 1;
    int num_agents = 0;
    std::vector<std::vector<int>> incidence;  // per agent, sorted objects with multiplicity
};

struct MatchingInstance {
    std::vector<std::string> agent_names;
    std::vector<std::string> object_names;
    std::vector<std::vector<int>> adjacency;  // per agent, sorted object ids
    std::vector<PreferenceRelation> prefs;    // per agent, over its adjacency
    nlohmann::json matroid_spec;              // null when absent
    AlternativeKind kind = AlternativeKind::AllMatchings;

    int num_agents() const { return static_cast<int>(agent_names.size()); }
    int num_objects() const { return static_cast<int>(object_names.size()); }
    int num_edges() const;
    bool has_edge(int agent, int object) const;
    bool has_matroid() const { return !matroid_spec.is_null(); }

    /// Oracle for the matroid spec (Free when absent); cached.
    const MatroidOracle& matroid() const;
    MatroidPtr matroid_ptr() const;

    int agent_index(const std::string& name) const;   // -1 if unknown
    int object_index(const std::string& name) const;  // -1 if unknown

    bool operator==(const MatchingInstance& other) const;

private:
    mutable MatroidPtr cached_matroid_;
};

/// Builds an oracle over the instance objects from a matroid spec document.
MatroidPtr make_matroid_from_spec(const nlohmann::json& spec, const MatchingInstance& instance);

/// Validates adjacency consistency, matroid ground, and (for a_perfect
/// instances) that an A-perfect matching exists. Throws ValidationError.
void validate_instance(const MatchingInstance& instance);

bool is_feasible(const MatchingInstance& instance, const Matching& m);
/// True once object uniqueness, edge membership, and the matroid hold; kind
/// a_perfect additionally requires every agent matched.
void require_feasible(const MatchingInstance& instance, const Matching& m);

Comparison compare_matchings(const MatchingInstance& instance, int agent, const Matching& m,
                             const Matching& n);

std::vector<Matching> decompose_k_matching(const KMatching& km);

MatchingInstance parse_instance(const std::string& text);
std::string serialize_instance(const MatchingInstance& instance);

nlohmann::json matching_to_json(const MatchingInstance& instance, const Matching& m);
Matching matching_from_json(const MatchingInstance& instance, const nlohmann::json& doc);
nlohmann::json matching_set_to_json(const MatchingInstance& instance, const MatchingSet& set);
MatchingSet matching_set_from_json(const MatchingInstance& instance, const nlohmann::json& doc);

}  // namespace condorcet

#endif  // CONDORCET_INSTANCE_HPP
