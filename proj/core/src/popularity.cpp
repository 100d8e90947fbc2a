#include "condorcet/popularity.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "condorcet/bipartite.hpp"

namespace condorcet {

Tally tally(const MatchingInstance& instance, const MatchingSet& set, const Matching& competitor) {
    Tally t;
    for (int a = 0; a < instance.num_agents(); ++a) {
        bool any_member_beats = false;
        bool competitor_beats_all = true;
        for (const auto& m : set.members) {
            Comparison c = compare_matchings(instance, a, m, competitor);
            if (c == Comparison::Better) any_member_beats = true;
            if (c != Comparison::Worse) competitor_beats_all = false;
        }
        if (any_member_beats) t.prefers_set.push_back(a);
        else if (competitor_beats_all && !set.members.empty()) t.prefers_competitor.push_back(a);
    }
    t.for_set = static_cast<int>(t.prefers_set.size());
    t.against_set = static_cast<int>(t.prefers_competitor.size());
    t.margin = t.for_set - t.against_set;
    return t;
}

BestResponseProblem build_best_response(const MatchingInstance& instance, const MatchingSet& set) {
    BestResponseProblem problem;
    problem.edge_value.resize(instance.num_agents());
    problem.dummy_value.assign(instance.num_agents(), 0);
    for (int a = 0; a < instance.num_agents(); ++a) {
        const auto& rel = instance.prefs[a];
        for (int o : instance.adjacency[a]) {
            bool beats_all = true;
            bool beaten = false;
            for (const auto& m : set.members) {
                Comparison c = rel.compare(o, m.at(a));
                if (c != Comparison::Better) beats_all = false;
                if (c == Comparison::Worse) beaten = true;
            }
            int value = 0;
            if (beats_all && !set.members.empty()) value = 1;
            else if (beaten) value = -1;
            problem.edge_value[a].push_back(value);
        }
        for (const auto& m : set.members)
            if (m.assigned[a] != kUnmatched) {
                problem.dummy_value[a] = -1;
                break;
            }
    }
    return problem;
}

namespace {

PopularityResult finish_verification(const MatchingInstance& instance, const MatchingSet& set,
                                     long long optimum, const Matching& best_response) {
    PopularityResult result;
    if (optimum <= 0) {
        result.popular = true;
        return result;
    }
    Tally t = tally(instance, set, best_response);
    if (t.margin != -static_cast<int>(optimum))
        throw Error("best-response optimum disagrees with the tally");
    result.popular = false;
    result.counterexample = best_response;
    result.counterexample_margin = t.margin;
    return result;
}

PopularityResult verify_popular_unconstrained(const MatchingInstance& instance,
                                              const MatchingSet& set,
                                              const BestResponseProblem& problem) {
    std::vector<WeightedEdge> edges;
    long long base = 0;
    for (int a = 0; a < instance.num_agents(); ++a) {
        base += problem.dummy_value[a];
        for (std::size_t i = 0; i < instance.adjacency[a].size(); ++i) {
            long long w = problem.edge_value[a][i] - problem.dummy_value[a];
            if (w > 0) edges.push_back({a, instance.adjacency[a][i], w});
        }
    }
    auto best = max_weight_bipartite_matching(instance.num_agents(), instance.num_objects(), edges);
    Matching n{std::vector<int>(best.match_left)};
    return finish_verification(instance, set, base + best.weight, n);
}

PopularityResult verify_popular_a_perfect(const MatchingInstance& instance, const MatchingSet& set,
                                          const BestResponseProblem& problem) {
    std::vector<WeightedEdge> edges;
    for (int a = 0; a < instance.num_agents(); ++a)
        for (std::size_t i = 0; i < instance.adjacency[a].size(); ++i)
            edges.push_back({a, instance.adjacency[a][i],
                             static_cast<long long>(problem.edge_value[a][i])});
    auto best = max_weight_left_perfect_matching(instance.num_agents(), instance.num_objects(), edges);
    Matching n{std::vector<int>(best.match_left)};
    return finish_verification(instance, set, best.weight, n);
}

PopularityResult verify_popular_constrained(const MatchingInstance& instance,
                                            const MatchingSet& set,
                                            const BestResponseProblem& problem) {
    MatchingInstance aug = augment_with_nulls(instance);

    // One parallel copy per (agent, real object) incidence; the agent-side
    // partition matroid meets the copied augmented matroid.
    std::vector<std::pair<int, int>> copies;  // (agent, object in aug ids)
    std::vector<int> copy_to_orig;
    std::vector<std::vector<int>> agent_parts(instance.num_agents());
    std::vector<long long> weights;
    long long base = 0;
    for (int a = 0; a < instance.num_agents(); ++a) {
        base += problem.dummy_value[a];
        for (std::size_t i = 0; i < instance.adjacency[a].size(); ++i) {
            int copy = static_cast<int>(copies.size());
            copies.emplace_back(a, instance.adjacency[a][i]);
            copy_to_orig.push_back(instance.adjacency[a][i]);
            agent_parts[a].push_back(copy);
            weights.push_back(problem.edge_value[a][i] - problem.dummy_value[a]);
        }
    }
    auto agent_side = make_partition_matroid(static_cast<int>(copies.size()), agent_parts,
                                             std::vector<int>(instance.num_agents(), 1));
    auto object_side = make_parallel_copy_matroid(aug.matroid_ptr(), copy_to_orig);

    auto chosen = max_weight_common_independent(*agent_side, *object_side, weights);
    long long optimum = base;
    Matching n{std::vector<int>(instance.num_agents(), kUnmatched)};
    for (int c : chosen) {
        optimum += weights[c];
        n.assigned[copies[c].first] = copies[c].second;
    }
    require_feasible(instance, n);
    return finish_verification(instance, set, optimum, n);
}

}  // namespace

PopularityResult verify_popular(const MatchingInstance& instance, const MatchingSet& set) {
    for (const auto& m : set.members) require_feasible(instance, m);
    BestResponseProblem problem = build_best_response(instance, set);
    switch (instance.kind) {
        case AlternativeKind::APerfect: return verify_popular_a_perfect(instance, set, problem);
        case AlternativeKind::Constrained: return verify_popular_constrained(instance, set, problem);
        case AlternativeKind::AllMatchings: return verify_popular_unconstrained(instance, set, problem);
    }
    throw Error("unreachable");
}

namespace {

ParetoResult verify_pareto_polynomial(const MatchingInstance& instance, const Matching& m) {
    const int n = instance.num_agents();
    for (int improver = 0; improver < n; ++improver) {
        std::vector<int> required;
        for (int a = 0; a < n; ++a) {
            bool needed = instance.kind == AlternativeKind::APerfect ||
                          m.assigned[a] != kUnmatched || a == improver;
            if (needed) required.push_back(a);
        }
        std::vector<std::vector<int>> adj(required.size());
        bool improver_has_option = false;
        for (std::size_t i = 0; i < required.size(); ++i) {
            int a = required[i];
            const auto& rel = instance.prefs[a];
            for (int o : instance.adjacency[a]) {
                if (a == improver) {
                    if (rel.compare(o, m.at(a)) == Comparison::Better) {
                        adj[i].push_back(o);
                        improver_has_option = true;
                    }
                } else if (rel.compare(m.at(a), o) != Comparison::Better) {
                    adj[i].push_back(o);
                }
            }
        }
        if (!improver_has_option) continue;
        auto match = max_bipartite_matching(static_cast<int>(required.size()),
                                            instance.num_objects(), adj);
        bool covered = true;
        for (std::size_t i = 0; i < required.size(); ++i)
            if (match[i] < 0) {
                covered = false;
                break;
            }
        if (!covered) continue;
        Matching witness{std::vector<int>(n, kUnmatched)};
        for (std::size_t i = 0; i < required.size(); ++i) witness.assigned[required[i]] = match[i];
        require_feasible(instance, witness);
        return {false, witness};
    }
    return {true, std::nullopt};
}

ParetoResult verify_pareto_brute(const MatchingInstance& instance, const Matching& m, int edge_cap) {
    for (const auto& alt : enumerate_alternatives(instance, edge_cap)) {
        bool someone_better = false;
        bool nobody_worse = true;
        for (int a = 0; a < instance.num_agents() && nobody_worse; ++a) {
            Comparison c = compare_matchings(instance, a, alt, m);
            if (c == Comparison::Better) someone_better = true;
            if (c == Comparison::Worse) nobody_worse = false;
        }
        if (someone_better && nobody_worse) return {false, alt};
    }
    return {true, std::nullopt};
}

}  // namespace

ParetoResult verify_pareto_optimal(const MatchingInstance& instance, const Matching& m,
                                   int edge_cap) {
    require_feasible(instance, m);
    if (instance.kind == AlternativeKind::Constrained)
        return verify_pareto_brute(instance, m, edge_cap);
    return verify_pareto_polynomial(instance, m);
}

bool dominates(const MatchingInstance& instance, const MatchingSet& candidate,
               const MatchingSet& incumbent) {
    if (candidate.members.size() > incumbent.members.size()) return false;
    bool someone_strict = false;
    for (int a = 0; a < instance.num_agents(); ++a) {
        bool has_not_worse = false;
        for (const auto& y : candidate.members) {
            bool not_worse_than_all = true;
            bool better_than_all = true;
            for (const auto& z : incumbent.members) {
                Comparison c = compare_matchings(instance, a, y, z);
                if (c == Comparison::Worse) not_worse_than_all = false;
                if (c != Comparison::Better) better_than_all = false;
            }
            if (not_worse_than_all) has_not_worse = true;
            if (better_than_all && !incumbent.members.empty()) someone_strict = true;
        }
        if (!has_not_worse) return false;
    }
    return someone_strict;
}

std::vector<Matching> enumerate_alternatives(const MatchingInstance& instance, int edge_cap) {
    if (instance.num_edges() > edge_cap)
        throw TooLargeError("instance has " + std::to_string(instance.num_edges()) +
                            " edges, above the enumeration cap of " + std::to_string(edge_cap));
    const int n = instance.num_agents();
    const bool constrained = instance.kind == AlternativeKind::Constrained;
    const bool perfect = instance.kind == AlternativeKind::APerfect;
    const MatroidOracle* oracle = constrained ? &instance.matroid() : nullptr;

    std::vector<Matching> out;
    Matching current{std::vector<int>(n, kUnmatched)};
    std::vector<char> used(instance.num_objects(), 0);
    std::vector<int> chosen_objects;

    std::function<void(int)> recurse = [&](int a) {
        if (a == n) {
            out.push_back(current);
            return;
        }
        if (!perfect) recurse(a + 1);  // leave agent a unmatched
        for (int o : instance.adjacency[a]) {
            if (used[o]) continue;
            if (constrained) {
                chosen_objects.push_back(o);
                if (!oracle->is_independent(chosen_objects)) {
                    chosen_objects.pop_back();
                    continue;
                }
            }
            used[o] = 1;
            current.assigned[a] = o;
            recurse(a + 1);
            current.assigned[a] = kUnmatched;
            used[o] = 0;
            if (constrained) chosen_objects.pop_back();
        }
    };
    recurse(0);
    return out;
}

namespace {

// Per-candidate Pareto check against all dominator sets of size <= |candidate|.
bool set_is_pareto_optimal(const MatchingInstance& instance,
                           const std::vector<Matching>& alternatives,
                           const MatchingSet& candidate) {
    const int k = static_cast<int>(candidate.members.size());
    std::vector<int> idx;
    std::function<bool(int, int)> scan = [&](int size, int start) -> bool {
        if (static_cast<int>(idx.size()) == size) {
            MatchingSet dominator;
            for (int i : idx) dominator.members.push_back(alternatives[i]);
            return dominates(instance, dominator, candidate);
        }
        for (int i = start; i < static_cast<int>(alternatives.size()); ++i) {
            idx.push_back(i);
            if (scan(size, i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    for (int size = 1; size <= k; ++size) {
        idx.clear();
        if (scan(size, 0)) return false;
    }
    return true;
}

std::vector<MatchingSet> pareto_set_search(const MatchingInstance& instance, int size, int limit,
                                           int edge_cap) {
    auto alternatives = enumerate_alternatives(instance, edge_cap);
    std::vector<MatchingSet> found;
    if (static_cast<int>(alternatives.size()) < size || size <= 0) return found;
    std::vector<int> idx;
    std::function<bool(int)> scan = [&](int start) -> bool {
        if (static_cast<int>(idx.size()) == size) {
            MatchingSet candidate;
            for (int i : idx) candidate.members.push_back(alternatives[i]);
            if (set_is_pareto_optimal(instance, alternatives, candidate)) {
                found.push_back(candidate);
                if (static_cast<int>(found.size()) >= limit) return true;
            }
            return false;
        }
        for (int i = start; i < static_cast<int>(alternatives.size()); ++i) {
            idx.push_back(i);
            if (scan(i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    scan(0);
    return found;
}

}  // namespace

ParetoSetResult brute_force_pareto_sets(const MatchingInstance& instance, int size, int edge_cap) {
    auto found = pareto_set_search(instance, size, 1, edge_cap);
    if (found.empty()) return {false, std::nullopt};
    return {true, found.front()};
}

std::vector<MatchingSet> collect_pareto_optimal_sets(const MatchingInstance& instance, int size,
                                                     int limit, int edge_cap) {
    return pareto_set_search(instance, size, limit, edge_cap);
}

std::optional<Matching> find_top_choice_matching(const MatchingInstance& instance) {
    const int n = instance.num_agents();
    const bool constrained = instance.kind == AlternativeKind::Constrained;
    const bool perfect = instance.kind == AlternativeKind::APerfect;

    // Obtainable objects per agent: receivable in at least one alternative.
    std::vector<std::vector<int>> obtainable(n);
    for (int a = 0; a < n; ++a) {
        for (int o : instance.adjacency[a]) {
            if (constrained) {
                std::vector<int> single{o};
                if (!instance.matroid().is_independent(single)) continue;
            } else if (perfect) {
                // o must appear in some A-perfect matching at agent a.
                std::vector<std::vector<int>> adj = instance.adjacency;
                adj[a] = {o};
                auto match = max_bipartite_matching(n, instance.num_objects(), adj);
                bool full = true;
                for (int x = 0; x < n; ++x)
                    if (match[x] < 0) full = false;
                if (!full) continue;
            }
            obtainable[a].push_back(o);
        }
    }

    // A top-choice alternative assigns every agent (with options) an object
    // undominated among its obtainable ones.
    std::vector<std::vector<int>> tops(n);
    for (int a = 0; a < n; ++a)
        if (!obtainable[a].empty()) tops[a] = instance.prefs[a].maximal_elements(obtainable[a]);

    if (!constrained) {
        std::vector<int> required;
        std::vector<std::vector<int>> adj;
        for (int a = 0; a < n; ++a)
            if (!tops[a].empty() || perfect) {
                required.push_back(a);
                adj.push_back(tops[a]);
            }
        auto match = max_bipartite_matching(static_cast<int>(required.size()),
                                            instance.num_objects(), adj);
        for (std::size_t i = 0; i < required.size(); ++i)
            if (match[i] < 0) return std::nullopt;
        Matching m{std::vector<int>(n, kUnmatched)};
        for (std::size_t i = 0; i < required.size(); ++i) m.assigned[required[i]] = match[i];
        return m;
    }

    // Constrained: a common independent set of the agent partition and the
    // matroid over copies of the undominated obtainable edges, covering every
    // agent with options.
    std::vector<std::pair<int, int>> copies;
    std::vector<int> copy_to_orig;
    std::vector<std::vector<int>> parts(n);
    int agents_with_options = 0;
    for (int a = 0; a < n; ++a) {
        if (tops[a].empty()) continue;
        ++agents_with_options;
        for (int o : tops[a]) {
            parts[a].push_back(static_cast<int>(copies.size()));
            copies.emplace_back(a, o);
            copy_to_orig.push_back(o);
        }
    }
    auto agent_side = make_partition_matroid(static_cast<int>(copies.size()), parts,
                                             std::vector<int>(n, 1));
    auto object_side = make_parallel_copy_matroid(instance.matroid_ptr(), copy_to_orig);
    std::vector<long long> weights(copies.size(), 1);
    auto chosen = max_weight_common_independent(*agent_side, *object_side, weights);
    if (static_cast<int>(chosen.size()) < agents_with_options) return std::nullopt;
    Matching m{std::vector<int>(n, kUnmatched)};
    for (int c : chosen) m.assigned[copies[c].first] = copies[c].second;
    require_feasible(instance, m);
    return m;
}

}  // namespace condorcet
