#include "condorcet/certificates.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "condorcet/popularity.hpp"

namespace condorcet {

namespace {

int null_object_of(const MatchingInstance& augmented, int agent) {
    return augmented.num_objects() - augmented.num_agents() + agent;
}

std::vector<int> matched_objects(const Matching& m) {
    std::vector<int> out;
    for (int o : m.assigned)
        if (o != kUnmatched) out.push_back(o);
    std::sort(out.begin(), out.end());
    return out;
}

void require_all_matched(const MatchingInstance& augmented, const Matching& m) {
    if (static_cast<int>(m.assigned.size()) != augmented.num_agents())
        throw NotBasesError("matching does not cover the augmented agents");
    for (int o : m.assigned)
        if (o == kUnmatched)
            throw NotBasesError("augmented matchings must match every agent");
}

// Real exchange arc: from's object of a closes a circuit in into(A) through
// the object b holds. Identity arc: a's from-object is exactly b's into-object.
struct MixedArcs {
    const MatchingInstance& aug;
    const Matching& into;
    const Matching& from;
    std::vector<char> in_basis;  // over objects: member of into(A)

    MixedArcs(const MatchingInstance& a, const Matching& m, const Matching& n)
        : aug(a), into(m), from(n), in_basis(a.num_objects(), 0) {
        for (int o : m.assigned)
            if (o != kUnmatched) in_basis[o] = 1;
    }

    bool identity(int a, int b) const { return from.assigned[a] == into.assigned[b]; }

    bool real(int a, int b) const {
        int o = from.assigned[a];
        if (in_basis[o]) return false;
        std::vector<int> probe;
        for (int x = 0; x < aug.num_agents(); ++x)
            if (x != b) probe.push_back(into.assigned[x]);
        probe.push_back(o);
        return aug.matroid().is_independent(probe);
    }

    bool mixed(int a, int b) const { return identity(a, b) || real(a, b); }
};

Matching verified_reassignment(const MatchingInstance& augmented, const Matching& m,
                               const Matching& n, const std::vector<int>& upgraded,
                               std::optional<int> demoted) {
    Matching out = m;
    for (int a : upgraded) out.assigned[a] = n.assigned[a];
    if (demoted) out.assigned[*demoted] = null_object_of(augmented, *demoted);
    std::vector<int> objects = matched_objects(out);
    if (std::adjacent_find(objects.begin(), objects.end()) != objects.end())
        throw Error("exchange produced a conflicting assignment");
    for (int a = 0; a < augmented.num_agents(); ++a)
        if (!augmented.has_edge(a, out.assigned[a]))
            throw Error("exchange produced a non-edge");
    if (!augmented.matroid().is_independent(objects))
        throw Error("exchange produced a dependent object set");
    return out;
}

}  // namespace

Matching lift_to_augmented(const MatchingInstance& augmented, const Matching& m) {
    Matching out = m;
    out.assigned.resize(augmented.num_agents());
    for (int a = 0; a < augmented.num_agents(); ++a)
        if (a >= static_cast<int>(m.assigned.size()) || m.assigned[a] == kUnmatched)
            out.assigned[a] = null_object_of(augmented, a);
    return out;
}

Matching project_from_augmented(const MatchingInstance& augmented, const Matching& m) {
    Matching out = m;
    const int originals = augmented.num_objects() - augmented.num_agents();
    for (int& o : out.assigned)
        if (o >= originals) o = kUnmatched;
    return out;
}

ExchangeGraph build_exchange_graph(const MatchingInstance& augmented, const Matching& into,
                                   const Matching& from) {
    require_all_matched(augmented, into);
    require_all_matched(augmented, from);
    const auto& oracle = augmented.matroid();
    Basis into_basis = [&] {
        try {
            return certify_basis(oracle, matched_objects(into));
        } catch (const NotABasisError&) {
            throw NotBasesError("the matching being exchanged into is not a basis");
        }
    }();
    try {
        certify_basis(oracle, matched_objects(from));
    } catch (const NotABasisError&) {
        throw NotBasesError("the competitor matching is not a basis");
    }

    ExchangeGraph g;
    g.into = into;
    g.from = from;
    g.arcs.assign(augmented.num_agents(), {});
    std::vector<int> holder(augmented.num_objects(), -1);
    for (int b = 0; b < augmented.num_agents(); ++b) holder[into.assigned[b]] = b;
    for (int a = 0; a < augmented.num_agents(); ++a) {
        int o = from.assigned[a];
        if (holder[o] >= 0) continue;  // o already in the basis: no exchange needed
        for (int x : fundamental_circuit(oracle, into_basis, o)) g.arcs[a].push_back(holder[x]);
        std::sort(g.arcs[a].begin(), g.arcs[a].end());
    }
    return g;
}

BrualdiDigraph build_brualdi_digraph(const MatchingInstance& augmented, const Matching& into,
                                     const Matching& from) {
    require_all_matched(augmented, into);
    require_all_matched(augmented, from);
    const auto& oracle = augmented.matroid();
    Basis into_basis, from_basis;
    try {
        into_basis = certify_basis(oracle, matched_objects(into));
        from_basis = certify_basis(oracle, matched_objects(from));
    } catch (const NotABasisError&) {
        throw NotBasesError("both matchings must induce bases");
    }

    BrualdiDigraph d;
    d.bijection = bijective_exchange(oracle, from_basis, into_basis);
    std::vector<int> image(augmented.num_objects(), -1);
    for (auto [o, fo] : d.bijection) image[o] = fo;
    std::vector<int> holder(augmented.num_objects(), -1);
    for (int b = 0; b < augmented.num_agents(); ++b) holder[into.assigned[b]] = b;
    d.successor.assign(augmented.num_agents(), -1);
    for (int a = 0; a < augmented.num_agents(); ++a) {
        int fo = image[from.assigned[a]];
        d.successor[a] = holder[fo];
    }
    // A bijection induces a permutation: one in-arc per agent.
    std::vector<int> indeg(augmented.num_agents(), 0);
    for (int b : d.successor) ++indeg[b];
    for (int deg : indeg)
        if (deg != 1) throw Error("exchange bijection did not induce disjoint cycles");
    return d;
}

namespace {

// Shortest closed walk through pivot (respectively shortest start-end path)
// inside the induced mixed-arc digraph; shortest keeps the exchange free of
// forward chords, which the basis-exchange argument requires.
std::vector<int> shortest_cycle_through(const MixedArcs& arcs, const std::vector<int>& nodes,
                                        int pivot) {
    std::vector<int> order = nodes;
    std::map<int, int> dist;
    std::map<int, int> parent;
    std::deque<int> queue;
    if (arcs.mixed(pivot, pivot)) return {pivot};
    for (int b : order)
        if (b != pivot && arcs.mixed(pivot, b)) {
            dist[b] = 1;
            parent[b] = pivot;
            queue.push_back(b);
        }
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (arcs.mixed(cur, pivot)) {
            std::vector<int> cycle{pivot};
            std::vector<int> back;
            for (int v = cur; v != pivot; v = parent[v]) back.push_back(v);
            std::reverse(back.begin(), back.end());
            cycle.insert(cycle.end(), back.begin(), back.end());
            return cycle;
        }
        for (int b : order) {
            if (b == pivot || dist.count(b)) continue;
            if (arcs.mixed(cur, b)) {
                dist[b] = dist[cur] + 1;
                parent[b] = cur;
                queue.push_back(b);
            }
        }
    }
    throw NotACycleError("no cycle through the pivot inside the given node set");
}

std::vector<int> shortest_path_within(const MixedArcs& arcs, const std::vector<int>& nodes,
                                      int start, int end) {
    if (start == end) return {start};
    std::map<int, int> parent;
    std::deque<int> queue{start};
    parent[start] = start;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int b : nodes) {
            if (parent.count(b)) continue;
            if (arcs.mixed(cur, b)) {
                parent[b] = cur;
                if (b == end) {
                    std::vector<int> path{end};
                    for (int v = end; v != start; v = parent[v]) path.push_back(parent[v]);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(b);
            }
        }
    }
    throw NotACycleError("path endpoints are not connected inside the given node set");
}

void validate_walk(const MixedArcs& arcs, const std::vector<int>& walk, bool closed) {
    std::set<int> seen(walk.begin(), walk.end());
    if (seen.size() != walk.size()) throw NotACycleError("walk revisits a node");
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        if (!arcs.mixed(walk[i], walk[i + 1])) throw NotACycleError("walk uses a missing arc");
    if (closed && !arcs.mixed(walk.back(), walk.front()))
        throw NotACycleError("cycle is not closed");
}

}  // namespace

Matching apply_cycle_exchange(const MatchingInstance& augmented, const Matching& m,
                              const Matching& n, const std::vector<int>& cycle, int pivot) {
    require_all_matched(augmented, m);
    require_all_matched(augmented, n);
    if (std::find(cycle.begin(), cycle.end(), pivot) == cycle.end())
        throw NotACycleError("pivot must lie on the cycle");
    MixedArcs arcs(augmented, m, n);
    validate_walk(arcs, cycle, true);
    std::vector<int> chosen = shortest_cycle_through(arcs, cycle, pivot);
    return verified_reassignment(augmented, m, n, chosen, std::nullopt);
}

Matching apply_path_exchange(const MatchingInstance& augmented, const Matching& m,
                             const Matching& n, const std::vector<int>& path) {
    require_all_matched(augmented, m);
    require_all_matched(augmented, n);
    if (path.empty()) throw NotACycleError("empty path");
    MixedArcs arcs(augmented, m, n);
    validate_walk(arcs, path, false);
    std::vector<int> chosen = shortest_path_within(arcs, path, path.front(), path.back());
    std::vector<int> upgraded(chosen.begin(), chosen.end() - 1);
    return verified_reassignment(augmented, m, n, upgraded, chosen.back());
}

Matching apply_multi_path_exchange(const MatchingInstance& augmented, const Matching& m,
                                   const Matching& n, const std::vector<std::vector<int>>& paths) {
    std::set<int> seen;
    for (const auto& p : paths)
        for (int a : p)
            if (!seen.insert(a).second) throw NotACycleError("paths must be node-disjoint");
    Matching current = m;
    for (const auto& p : paths) current = apply_path_exchange(augmented, current, n, p);
    return current;
}

namespace {

struct ColorInfo {
    std::vector<AgentColor> colors;
    std::vector<int> plus;   // red agents
};

ColorInfo color_agents(const MatchingInstance& augmented, const MatchingSet& set,
                       const Matching& competitor) {
    ColorInfo info;
    info.colors.assign(augmented.num_agents(), AgentColor::Grey);
    for (int a = 0; a < augmented.num_agents(); ++a) {
        bool beats_all = true;
        bool beaten = false;
        for (const auto& m : set.members) {
            Comparison c = augmented.prefs[a].compare(competitor.assigned[a], m.assigned[a]);
            if (c != Comparison::Better) beats_all = false;
            if (c == Comparison::Worse) beaten = true;
        }
        if (beats_all) {
            info.colors[a] = AgentColor::Red;
            info.plus.push_back(a);
        } else if (beaten) {
            info.colors[a] = AgentColor::Blue;
        }
    }
    return info;
}

std::vector<int> cycle_of(const std::vector<int>& successor, int start) {
    std::vector<int> cycle{start};
    for (int v = successor[start]; v != start; v = successor[v]) cycle.push_back(v);
    return cycle;
}

}  // namespace

CertificateOutcome build_branching_certificate(const MatchingInstance& augmented,
                                               const MatchingSet& set, const Matching& competitor) {
    if (set.members.size() < 2)
        throw ValidationError("branching certificates require sets of at least two matchings");
    require_all_matched(augmented, competitor);
    for (const auto& m : set.members) require_all_matched(augmented, m);

    ColorInfo info = color_agents(augmented, set, competitor);

    struct Path {
        int member;
        int source;
        std::vector<int> nodes;  // source ... first blue agent
    };
    std::vector<Path> paths;

    for (std::size_t mi = 0; mi < set.members.size(); ++mi) {
        const Matching& m = set.members[mi];
        BrualdiDigraph d = build_brualdi_digraph(augmented, m, competitor);
        std::vector<char> visited(augmented.num_agents(), 0);
        for (int a : info.plus) {
            if (visited[a]) continue;
            std::vector<int> cycle = cycle_of(d.successor, a);
            for (int v : cycle) visited[v] = 1;
            bool has_blue = false;
            for (int v : cycle)
                if (info.colors[v] == AgentColor::Blue) has_blue = true;
            if (!has_blue) {
                // A red agent on an all-nonblue cycle: moving the cycle onto
                // the competitor's objects improves the set.
                Matching improved = apply_cycle_exchange(augmented, m, competitor, cycle, a);
                MatchingSet better = set;
                better.members[mi] = improved;
                if (!dominates(augmented, better, set))
                    throw Error("cycle exchange did not dominate the input set");
                return {std::nullopt, better};
            }
            // Maximal red paths on this cycle: reds whose backward segment to
            // the previous blue agent contains no other red.
            const int len = static_cast<int>(cycle.size());
            for (int i = 0; i < len; ++i) {
                if (info.colors[cycle[i]] != AgentColor::Red) continue;
                bool maximal = true;
                for (int back = 1; back < len; ++back) {
                    int v = cycle[(i - back % len + len) % len];
                    if (info.colors[v] == AgentColor::Blue) break;
                    if (info.colors[v] == AgentColor::Red) {
                        maximal = false;
                        break;
                    }
                }
                if (!maximal) continue;
                Path p;
                p.member = static_cast<int>(mi);
                p.source = cycle[i];
                for (int step = 0; step < len; ++step) {
                    int v = cycle[(i + step) % len];
                    p.nodes.push_back(v);
                    if (step > 0 && info.colors[v] == AgentColor::Blue) break;
                }
                paths.push_back(std::move(p));
            }
        }
    }

    // In-degree clash: one agent entered by two paths forces a dominating
    // path exchange on the earlier member.
    std::map<int, std::pair<int, int>> entered_by;  // agent -> (path index, none)
    for (std::size_t pi = 0; pi < paths.size(); ++pi)
        for (std::size_t j = 1; j < paths[pi].nodes.size(); ++j) {
            int node = paths[pi].nodes[j];
            auto [it, fresh] = entered_by.try_emplace(node, static_cast<int>(pi), 0);
            if (fresh) continue;
            const Path& p1 = paths[it->second.first];
            const Path& p2 = paths[pi];
            if (p1.member == p2.member)
                throw Error("node-disjointness failed within one member's paths");
            // Demote the shared agent in whichever member it values no more
            // than the other.
            int shared = node;
            const Matching& m1 = set.members[p1.member];
            const Matching& m2 = set.members[p2.member];
            bool use_first = augmented.prefs[shared].compare(m2.assigned[shared],
                                                             m1.assigned[shared]) !=
                             Comparison::Worse;
            const Path& chosen = use_first ? p1 : p2;
            std::vector<int> prefix;
            for (int v : chosen.nodes) {
                prefix.push_back(v);
                if (v == shared) break;
            }
            Matching improved = apply_path_exchange(augmented, set.members[chosen.member],
                                                    competitor, prefix);
            MatchingSet better = set;
            better.members[chosen.member] = improved;
            if (!dominates(augmented, better, set))
                throw Error("path exchange did not dominate the input set");
            return {std::nullopt, better};
        }

    // Assemble the branching and look for a cycle.
    std::vector<BranchingCertificate::Arc> arcs;
    std::vector<std::vector<int>> succs(augmented.num_agents());
    for (std::size_t pi = 0; pi < paths.size(); ++pi)
        for (std::size_t j = 0; j + 1 < paths[pi].nodes.size(); ++j) {
            int from = paths[pi].nodes[j];
            int to = paths[pi].nodes[j + 1];
            arcs.push_back({from, to, paths[pi].member, paths[pi].source});
            succs[from].push_back(to);
        }

    // cycle detection over the union
    {
        std::vector<int> state(augmented.num_agents(), 0);
        std::vector<int> stack;
        std::vector<int> cycle_nodes;
        std::function<bool(int)> dfs = [&](int v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (int w : succs[v]) {
                if (state[w] == 1) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    cycle_nodes.assign(it, stack.end());
                    return true;
                }
                if (state[w] == 0 && dfs(w)) return true;
            }
            stack.pop_back();
            state[v] = 2;
            return false;
        };
        for (int v = 0; v < augmented.num_agents() && cycle_nodes.empty(); ++v)
            if (state[v] == 0) dfs(v);

        if (!cycle_nodes.empty()) {
            // Decompose the cycle into member segments and exchange each
            // member's segment family after shortening away back arcs.
            auto arc_info = [&](int from, int to) -> const BranchingCertificate::Arc& {
                for (const auto& arc : arcs)
                    if (arc.from == from && arc.to == to) return arc;
                throw Error("cycle uses an arc outside the branching");
            };
            // rotate so a segment boundary comes first
            const int len = static_cast<int>(cycle_nodes.size());
            int rotate_at = -1;
            for (int i = 0; i < len; ++i) {
                int prev_member = arc_info(cycle_nodes[(i + len - 1) % len], cycle_nodes[i]).member;
                int next_member = arc_info(cycle_nodes[i], cycle_nodes[(i + 1) % len]).member;
                if (prev_member != next_member) {
                    rotate_at = i;
                    break;
                }
            }
            if (rotate_at < 0) throw Error("single-member paths formed a cycle");
            std::rotate(cycle_nodes.begin(), cycle_nodes.begin() + rotate_at, cycle_nodes.end());

            struct Segment {
                int member;
                std::vector<int> nodes;
            };
            std::vector<Segment> segments;
            for (int i = 0; i < len; ++i) {
                int member = arc_info(cycle_nodes[i], cycle_nodes[(i + 1) % len]).member;
                if (segments.empty() || segments.back().member != member)
                    segments.push_back({member, {cycle_nodes[i]}});
                segments.back().nodes.push_back(cycle_nodes[(i + 1) % len]);
            }
            // the wrap may merge the last segment into the first
            if (segments.size() > 1 && segments.front().member == segments.back().member) {
                auto& first = segments.front();
                auto& last = segments.back();
                last.nodes.pop_back();
                first.nodes.insert(first.nodes.begin(), last.nodes.begin(), last.nodes.end());
                segments.pop_back();
            }

            // Shorten until no mixed back arc joins a later segment of a member
            // to an earlier one.
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t i = 0; i < segments.size() && !changed; ++i)
                    for (std::size_t j = 0; j < i && !changed; ++j) {
                        if (segments[i].member != segments[j].member) continue;
                        MixedArcs mixed(augmented, set.members[segments[i].member], competitor);
                        for (int a : segments[i].nodes) {
                            for (int b : segments[j].nodes) {
                                if (!mixed.mixed(a, b)) continue;
                                // reroute: keep segments j+1..i-1, bridge a->b
                                std::vector<Segment> next(segments.begin() + j + 1,
                                                          segments.begin() + i);
                                Segment bridge{segments[i].member, {}};
                                const auto& from_nodes = segments[i].nodes;
                                // prefix of segment i up to a
                                Segment head{segments[i].member, {}};
                                for (int v : from_nodes) {
                                    head.nodes.push_back(v);
                                    if (v == a) break;
                                }
                                head.nodes.push_back(b);
                                // suffix of segment j from b onward
                                const auto& to_nodes = segments[j].nodes;
                                auto bit = std::find(to_nodes.begin(), to_nodes.end(), b);
                                head.nodes.insert(head.nodes.end(), bit + 1, to_nodes.end());
                                next.push_back(head);
                                segments = next;
                                changed = true;
                                break;
                            }
                            if (changed) break;
                        }
                    }
            }

            MatchingSet better = set;
            std::set<int> touched;
            for (const auto& seg : segments) touched.insert(seg.member);
            for (int member : touched) {
                std::vector<std::vector<int>> member_paths;
                for (const auto& seg : segments)
                    if (seg.member == member) member_paths.push_back(seg.nodes);
                better.members[member] = apply_multi_path_exchange(
                    augmented, set.members[member], competitor, member_paths);
            }
            if (!dominates(augmented, better, set))
                throw Error("multi-path exchange did not dominate the input set");
            return {std::nullopt, better};
        }
    }

    BranchingCertificate cert;
    cert.arcs = arcs;
    cert.colors = info.colors;
    // every red agent must emit one arc per member
    std::vector<int> outdeg(augmented.num_agents(), 0);
    for (const auto& arc : cert.arcs) ++outdeg[arc.from];
    for (int a : info.plus)
        if (outdeg[a] != static_cast<int>(set.members.size()))
            throw Error("red agent out-degree disagrees with the set size");
    return {cert, std::nullopt};
}

BranchingCheck verify_colored_branching(const BranchingCertificate& certificate) {
    BranchingCheck check;
    const int n = static_cast<int>(certificate.colors.size());
    for (AgentColor c : certificate.colors) {
        if (c == AgentColor::Red) ++check.red;
        if (c == AgentColor::Blue) ++check.blue;
    }
    std::vector<std::vector<int>> succs(n);
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (const auto& arc : certificate.arcs) {
        if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n) {
            check.reason = "arc endpoint out of range";
            return check;
        }
        succs[arc.from].push_back(arc.to);
        ++outdeg[arc.from];
        ++indeg[arc.to];
    }
    for (int v = 0; v < n; ++v)
        if (indeg[v] > 1) {
            check.reason = "indegree";
            return check;
        }
    {
        std::vector<int> state(n, 0);
        std::function<bool(int)> dfs = [&](int v) -> bool {
            state[v] = 1;
            for (int w : succs[v]) {
                if (state[w] == 1) return true;
                if (state[w] == 0 && dfs(w)) return true;
            }
            state[v] = 2;
            return false;
        };
        for (int v = 0; v < n; ++v)
            if (state[v] == 0 && dfs(v)) {
                check.reason = "cycle";
                return check;
            }
    }
    // component analysis: union-find over arcs
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& arc : certificate.arcs) parent[find(arc.from)] = find(arc.to);
    std::vector<int> comp_size(n, 0);
    for (int v = 0; v < n; ++v) ++comp_size[find(v)];

    for (int v = 0; v < n; ++v) {
        bool singleton = comp_size[find(v)] == 1;
        if (!singleton && outdeg[v] == 0 && certificate.colors[v] != AgentColor::Blue) {
            check.reason = "leaf color";
            return check;
        }
        if (certificate.colors[v] == AgentColor::Red && outdeg[v] < 2) {
            check.reason = "red outdegree";
            return check;
        }
    }
    // blue majority per component, re-derived by counting
    std::map<int, std::pair<int, int>> counts;  // root -> (red, blue)
    for (int v = 0; v < n; ++v) {
        if (comp_size[find(v)] == 1) continue;
        auto& c = counts[find(v)];
        if (certificate.colors[v] == AgentColor::Red) ++c.first;
        if (certificate.colors[v] == AgentColor::Blue) ++c.second;
    }
    for (auto& [root, rb] : counts) {
        (void)root;
        if (rb.second < rb.first + 1) {
            check.reason = "blue majority";
            return check;
        }
    }
    check.valid = true;
    return check;
}

nlohmann::json certificate_to_json(const MatchingInstance& augmented,
                                   const BranchingCertificate& certificate) {
    nlohmann::json doc;
    nlohmann::json arcs = nlohmann::json::array();
    nlohmann::json provenance = nlohmann::json::object();
    for (std::size_t i = 0; i < certificate.arcs.size(); ++i) {
        const auto& arc = certificate.arcs[i];
        arcs.push_back({augmented.agent_names[arc.from], augmented.agent_names[arc.to]});
        provenance[std::to_string(i)] = {{"member", arc.member},
                                         {"source", augmented.agent_names[arc.source_agent]}};
    }
    doc["arcs"] = arcs;
    nlohmann::json colors = nlohmann::json::object();
    for (std::size_t a = 0; a < certificate.colors.size(); ++a) {
        const char* name = certificate.colors[a] == AgentColor::Red    ? "red"
                           : certificate.colors[a] == AgentColor::Blue ? "blue"
                                                                       : "grey";
        colors[augmented.agent_names[a]] = name;
    }
    doc["colors"] = colors;
    doc["provenance"] = provenance;
    return doc;
}

}  // namespace condorcet
