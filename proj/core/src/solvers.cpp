#include "condorcet/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "condorcet/bipartite.hpp"

namespace condorcet {

MatchingSet solve_strict_round_robin(const MatchingInstance& instance,
                                     const std::vector<int>& order) {
    if (instance.has_matroid())
        throw ValidationError("round robin does not support matroid constraints");
    for (int a = 0; a < instance.num_agents(); ++a)
        if (instance.prefs[a].classify() != PreferenceClass::Strict)
            throw NotStrictError("round robin requires strict rankings");

    std::vector<int> picking = order;
    if (picking.empty()) {
        picking.resize(instance.num_agents());
        std::iota(picking.begin(), picking.end(), 0);
    }
    {
        std::vector<int> sorted = picking;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expected(instance.num_agents());
        std::iota(expected.begin(), expected.end(), 0);
        if (sorted != expected) throw ValidationError("order must be a permutation of the agents");
    }

    std::vector<int> copies(instance.num_objects(), 2);
    KMatching km;
    km.k = 2;
    km.num_agents = instance.num_agents();
    km.incidence.resize(instance.num_agents());
    for (int round = 0; round < 2; ++round)
        for (int a : picking) {
            std::vector<int> pool;
            for (int o : instance.adjacency[a])
                if (copies[o] > 0) pool.push_back(o);
            if (pool.empty()) continue;
            auto favorites = instance.prefs[a].maximal_elements(pool);
            int pick = favorites.front();  // unique under strict rankings
            --copies[pick];
            km.incidence[a].push_back(pick);
        }
    for (auto& inc : km.incidence) std::sort(inc.begin(), inc.end());

    auto parts = decompose_k_matching(km);
    MatchingSet set;
    for (auto& m : parts)
        if (std::find(set.members.begin(), set.members.end(), m) == set.members.end())
            set.members.push_back(std::move(m));
    return set;
}

MatchingSet solve_weak_matroid(const MatchingInstance& instance) {
    for (int a = 0; a < instance.num_agents(); ++a)
        if (instance.prefs[a].classify() == PreferenceClass::Partial)
            throw NotWeakError("the weak-ranking solver requires weak rankings");

    const int n = instance.num_agents();

    // Disjointify: one private copy of each incident object per agent.
    std::vector<std::pair<int, int>> copies;  // (agent, original object)
    std::vector<int> copy_to_orig;
    std::vector<std::vector<int>> agent_parts(n);
    for (int a = 0; a < n; ++a)
        for (int o : instance.adjacency[a]) {
            agent_parts[a].push_back(static_cast<int>(copies.size()));
            copies.emplace_back(a, o);
            copy_to_orig.push_back(o);
        }
    const int ground = static_cast<int>(copies.size());

    auto agent_side = make_partition_matroid(ground, agent_parts, std::vector<int>(n, 1));
    MatroidPtr base = instance.has_matroid() ? instance.matroid_ptr()
                                             : make_free_matroid(instance.num_objects());
    auto copied = make_parallel_copy_matroid(base, copy_to_orig);
    auto object_side = make_self_union_matroid(copied);

    // Copies inherit the originals' preference position, so the rank weight of
    // a copy is computed on the owner's original relation.
    std::vector<long long> weights(ground);
    for (int c = 0; c < ground; ++c) {
        auto [a, o] = copies[c];
        weights[c] = instance.prefs[a].rank_weight(o, ground == 0 ? 1 : ground);
    }

    auto chosen = max_weight_common_independent(*agent_side, *object_side, weights);
    auto split = union_is_independent(*copied, chosen);
    if (!split.independent)
        throw Error("weighted intersection produced a set outside the matroid union");

    Matching first{std::vector<int>(n, kUnmatched)};
    Matching second{std::vector<int>(n, kUnmatched)};
    for (int c : split.part1) first.assigned[copies[c].first] = copies[c].second;
    for (int c : split.part2) second.assigned[copies[c].first] = copies[c].second;
    require_feasible(instance, first);
    require_feasible(instance, second);
    return MatchingSet{{first, second}};
}

namespace {

// Covering k-matching check: agents at capacity 1, objects at capacity k.
// Returns a per-agent assignment covering all given agents, or nullopt.
std::optional<std::vector<int>> covering_assignment(const std::vector<int>& agents,
                                                    const std::vector<std::vector<int>>& adj,
                                                    int num_objects, int k) {
    auto match = max_bipartite_matching(static_cast<int>(agents.size()), num_objects, adj, k);
    for (std::size_t i = 0; i < agents.size(); ++i)
        if (match[i] < 0) return std::nullopt;
    return match;
}

}  // namespace

std::pair<MatchingSet, SolverTrace> solve_partial_sqrt(const MatchingInstance& instance) {
    if (instance.has_matroid())
        throw ValidationError("the square-root solver does not support matroid constraints");

    const int n = instance.num_agents();
    SolverTrace trace;
    if (n == 0) {
        trace.chosen_k = 0;
        return {MatchingSet{{Matching{{}}}}, trace};
    }
    const int k = static_cast<int>(std::ceil(std::sqrt(2.0 * n)));
    trace.chosen_k = k;

    std::vector<char> in_agents(n, 1);
    std::vector<char> in_objects(instance.num_objects(), 1);

    KMatching accumulated;
    accumulated.k = k;
    accumulated.num_agents = n;
    accumulated.incidence.resize(n);

    while (true) {
        // Undominated edges within the surviving objects; agents whose
        // neighborhood is empty can never be covered and drop out unmatched.
        std::vector<int> agents;
        std::vector<std::vector<int>> undominated(n);
        for (int a = 0; a < n; ++a) {
            if (!in_agents[a]) continue;
            std::vector<int> pool;
            for (int o : instance.adjacency[a])
                if (in_objects[o]) pool.push_back(o);
            if (pool.empty()) {
                in_agents[a] = 0;
                continue;
            }
            undominated[a] = instance.prefs[a].maximal_elements(pool);
            agents.push_back(a);
        }

        SolverTrace::Round round;
        round.agents = agents;
        for (int o = 0; o < instance.num_objects(); ++o)
            if (in_objects[o]) round.objects.push_back(o);
        for (int a : agents)
            for (int o : undominated[a]) round.undominated_edges.emplace_back(a, o);

        std::vector<std::vector<int>> adj;
        for (int a : agents) adj.push_back(undominated[a]);
        auto cover = covering_assignment(agents, adj, instance.num_objects(), k);
        if (cover) {
            // prefer a plain covering matching when one exists
            auto plain = covering_assignment(agents, adj, instance.num_objects(), 1);
            if (plain) cover = plain;
            round.terminal = true;
            trace.rounds.push_back(round);
            for (std::size_t i = 0; i < agents.size(); ++i)
                accumulated.incidence[agents[i]].push_back((*cover)[i]);
            break;
        }

        // Hall violator: agents reachable from the deficiency by alternating
        // paths; the violation makes it larger than k, so saturating the k
        // lowest-indexed members with all their undominated objects is valid.
        auto partial = max_bipartite_matching(static_cast<int>(agents.size()),
                                              instance.num_objects(), adj, k);
        auto deficiency = deficiency_set(static_cast<int>(agents.size()), instance.num_objects(),
                                         adj, partial, k);
        std::vector<int> violator;
        for (int i : deficiency) violator.push_back(agents[i]);
        if (static_cast<int>(violator.size()) <= k)
            throw Error("Hall violator no larger than k; covering check is inconsistent");
        round.hall_violator = violator;
        std::vector<int> saturated(violator.begin(), violator.begin() + k);
        round.saturated = saturated;
        trace.rounds.push_back(round);

        std::set<int> removed_objects;
        for (int a : violator)
            for (int o : undominated[a]) removed_objects.insert(o);
        for (int a : saturated) {
            for (int o : undominated[a]) accumulated.incidence[a].push_back(o);
            in_agents[a] = 0;
        }
        for (int o : removed_objects) in_objects[o] = 0;
    }

    auto parts = decompose_k_matching(accumulated);
    MatchingSet set;
    for (auto& m : parts) {
        bool empty = std::all_of(m.assigned.begin(), m.assigned.end(),
                                 [](int o) { return o == kUnmatched; });
        if (empty) continue;
        if (std::find(set.members.begin(), set.members.end(), m) == set.members.end())
            set.members.push_back(std::move(m));
    }
    if (set.members.empty()) set.members.push_back(Matching{std::vector<int>(n, kUnmatched)});
    return {set, trace};
}

}  // namespace condorcet
