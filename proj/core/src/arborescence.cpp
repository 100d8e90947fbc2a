#include "condorcet/arborescence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet {

using nlohmann::json;

std::vector<int> ArborescenceInstance::incoming(int node) const {
    std::vector<int> out;
    for (int e = 0; e < num_arcs(); ++e)
        if (arcs[e].second == node) out.push_back(e);
    return out;
}

int ArborescenceInstance::node_index(const std::string& name) const {
    for (int i = 0; i < num_nodes(); ++i)
        if (node_names[i] == name) return i;
    return -1;
}

ArborescenceInstance parse_arborescence(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("arborescence document must be a JSON object");
    static const std::set<std::string> fields = {"nodes", "root", "arcs", "prefs"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!fields.count(key)) throw ParseError("unknown field " + key);
    }
    for (const char* field : {"nodes", "root", "arcs", "prefs"})
        if (!doc.contains(field)) throw ParseError(std::string("missing field ") + field);

    ArborescenceInstance inst;
    for (const auto& n : doc["nodes"]) inst.node_names.push_back(n.get<std::string>());
    {
        std::set<std::string> dedup(inst.node_names.begin(), inst.node_names.end());
        if (dedup.size() != inst.node_names.size()) throw ValidationError("duplicate node name");
    }
    inst.root = inst.node_index(doc["root"].get<std::string>());
    if (inst.root < 0) throw ValidationError("root is not a node");
    for (const auto& arc : doc["arcs"]) {
        if (!arc.is_array() || arc.size() != 2) throw ParseError("arcs must be [tail, head] pairs");
        int u = inst.node_index(arc[0].get<std::string>());
        int v = inst.node_index(arc[1].get<std::string>());
        if (u < 0 || v < 0) throw ValidationError("arc references unknown node");
        if (u == v) throw ValidationError("self-loop arc");
        inst.arcs.emplace_back(u, v);
    }

    std::vector<std::vector<std::pair<int, int>>> pair_lists(inst.num_nodes());
    for (const auto& [node_name, pairs] : doc["prefs"].items()) {
        int v = inst.node_index(node_name);
        if (v < 0) throw ValidationError("prefs reference unknown node " + node_name);
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
                !p[1].is_number_integer())
                throw ParseError("arborescence preference pairs must be [better_idx, worse_idx]");
            pair_lists[v].emplace_back(p[0].get<int>(), p[1].get<int>());
        }
    }
    for (int v = 0; v < inst.num_nodes(); ++v) {
        auto in = inst.incoming(v);
        for (auto [b, w] : pair_lists[v])
            if (b < 0 || b >= inst.num_arcs() || w < 0 || w >= inst.num_arcs())
                throw ValidationError("preference pair references unknown arc");
        inst.prefs.push_back(build_relation(v, in, pair_lists[v]));
    }
    return inst;
}

std::string serialize_arborescence(const ArborescenceInstance& instance) {
    json doc;
    doc["nodes"] = instance.node_names;
    doc["root"] = instance.node_names[instance.root];
    json arcs = json::array();
    for (auto [u, v] : instance.arcs)
        arcs.push_back({instance.node_names[u], instance.node_names[v]});
    doc["arcs"] = arcs;
    json prefs = json::object();
    for (int v = 0; v < instance.num_nodes(); ++v) {
        json pairs = json::array();
        for (auto [b, w] : instance.prefs[v].strict_pairs()) pairs.push_back({b, w});
        prefs[instance.node_names[v]] = pairs;
    }
    doc["prefs"] = prefs;
    return doc.dump(2) + "\n";
}

bool is_arborescence(const ArborescenceInstance& instance, const std::vector<int>& arc_set) {
    std::vector<int> in_arc(instance.num_nodes(), -1);
    for (int e : arc_set) {
        int head = instance.arcs[e].second;
        if (head == instance.root || in_arc[head] != -1) return false;
        in_arc[head] = e;
    }
    for (int v = 0; v < instance.num_nodes(); ++v)
        if (v != instance.root && in_arc[v] == -1) return false;
    // every node must reach the root by walking in-arcs backwards
    for (int v = 0; v < instance.num_nodes(); ++v) {
        int cur = v;
        int steps = 0;
        while (cur != instance.root && steps++ <= instance.num_nodes()) {
            cur = instance.arcs[in_arc[cur]].first;
        }
        if (cur != instance.root) return false;
    }
    return true;
}

std::vector<std::vector<int>> enumerate_arborescences(const ArborescenceInstance& instance,
                                                      long long cap) {
    std::vector<std::vector<int>> incoming(instance.num_nodes());
    long long combos = 1;
    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        incoming[v] = instance.incoming(v);
        if (incoming[v].empty()) return {};
        combos *= static_cast<long long>(incoming[v].size());
        if (combos > cap) throw TooLargeError("too many in-arc combinations to enumerate");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    std::function<void(int)> recurse = [&](int v) {
        if (v == instance.num_nodes()) {
            std::vector<int> arcs = chosen;
            std::sort(arcs.begin(), arcs.end());
            if (is_arborescence(instance, arcs)) out.push_back(arcs);
            return;
        }
        if (v == instance.root) {
            recurse(v + 1);
            return;
        }
        for (int e : incoming[v]) {
            chosen.push_back(e);
            recurse(v + 1);
            chosen.pop_back();
        }
    };
    recurse(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> arborescence_outcome(const ArborescenceInstance& instance,
                                      const std::vector<int>& arc_set) {
    std::vector<int> outcome(instance.num_nodes(), -1);
    for (int e : arc_set) outcome[instance.arcs[e].second] = e;
    return outcome;
}

int arborescence_margin(const ArborescenceInstance& instance,
                        const std::vector<std::vector<int>>& members,
                        const std::vector<int>& competitor) {
    std::vector<std::vector<int>> outcomes;
    for (const auto& m : members) outcomes.push_back(arborescence_outcome(instance, m));
    auto n_outcome = arborescence_outcome(instance, competitor);
    int margin = 0;
    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        bool any_beats = false;
        bool all_beaten = true;
        for (const auto& o : outcomes) {
            Comparison c = instance.prefs[v].compare(o[v], n_outcome[v]);
            if (c == Comparison::Better) any_beats = true;
            if (c != Comparison::Worse) all_beaten = false;
        }
        if (any_beats) ++margin;
        else if (all_beaten && !outcomes.empty()) --margin;
    }
    return margin;
}

namespace {

bool all_reachable(int num_nodes, int root, const std::vector<std::pair<int, int>>& arcs,
                   const std::vector<char>& arc_alive) {
    std::vector<char> seen(num_nodes, 0);
    seen[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < arcs.size(); ++e)
            if (arc_alive[e] && arcs[e].first == u && !seen[arcs[e].second]) {
                seen[arcs[e].second] = 1;
                queue.push_back(arcs[e].second);
            }
    }
    for (char s : seen)
        if (!s) return false;
    return true;
}

// Arcs lying on at least one r-arborescence: the tail must be reachable from
// the root while avoiding the head.
std::vector<char> arcs_on_some_arborescence(const ArborescenceInstance& instance) {
    std::vector<char> on_some(instance.num_arcs(), 0);
    for (int e = 0; e < instance.num_arcs(); ++e) {
        auto [u, v] = instance.arcs[e];
        if (v == instance.root) continue;
        std::vector<char> seen(instance.num_nodes(), 0);
        seen[instance.root] = 1;
        seen[v] = 1;  // blocked
        std::deque<int> queue{instance.root};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int f = 0; f < instance.num_arcs(); ++f) {
                auto [a, b] = instance.arcs[f];
                if (a == x && b != v && !seen[b]) {
                    seen[b] = 1;
                    queue.push_back(b);
                }
            }
        }
        if (u == instance.root || seen[u]) on_some[e] = 1;
    }
    return on_some;
}

}  // namespace

std::optional<std::vector<int>> find_top_choice_arborescence(const ArborescenceInstance& instance) {
    // An arborescence is a top choice when no alternative hands any agent a
    // better arc, so maximality is judged among arcs on some arborescence.
    // Keep only those maximal arcs; a top-choice arborescence exists iff the
    // remaining digraph still reaches every node.
    auto obtainable = arcs_on_some_arborescence(instance);
    std::vector<char> alive(instance.num_arcs(), 0);
    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        std::vector<int> in;
        for (int e : instance.incoming(v))
            if (obtainable[e]) in.push_back(e);
        if (in.empty()) return std::nullopt;
        for (int e : instance.prefs[v].maximal_elements(in)) alive[e] = 1;
    }
    if (!all_reachable(instance.num_nodes(), instance.root, instance.arcs, alive))
        return std::nullopt;
    // grow greedily inside the maximal-arc subgraph
    std::vector<int> tree;
    std::vector<char> covered(instance.num_nodes(), 0);
    covered[instance.root] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int e = 0; e < instance.num_arcs(); ++e) {
            if (!alive[e]) continue;
            auto [u, v] = instance.arcs[e];
            if (covered[u] && !covered[v]) {
                covered[v] = 1;
                tree.push_back(e);
                grew = true;
            }
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

namespace {

// Backtracking growth of the first arborescence: every prefix keeps the
// residual digraph root-connected, so the leftovers still carry a spanning
// arborescence. Complete: growing any half of a disjoint pair in BFS order
// satisfies the invariant, so a solution is always reachable.
struct DisjointArborescences {
    int num_nodes;
    int root;
    const std::vector<std::pair<int, int>>& arcs;
    long long budget = 2'000'000;

    std::optional<std::vector<int>> first;

    bool grow(std::vector<int>& tree, std::vector<char>& covered, std::vector<char>& alive,
              int covered_count) {
        if (--budget <= 0) throw Error("disjoint arborescence search exceeded its budget");
        if (covered_count == num_nodes) {
            first = tree;
            return true;
        }
        for (std::size_t e = 0; e < arcs.size(); ++e) {
            if (!alive[e]) continue;
            auto [u, v] = arcs[e];
            if (!covered[u] || covered[v]) continue;
            alive[e] = 0;
            if (all_reachable(num_nodes, root, arcs, alive)) {
                covered[v] = 1;
                tree.push_back(static_cast<int>(e));
                if (grow(tree, covered, alive, covered_count + 1)) return true;
                tree.pop_back();
                covered[v] = 0;
            }
            alive[e] = 1;
        }
        return false;
    }
};

}  // namespace

std::pair<std::vector<int>, std::vector<int>> solve_arborescence(
    const ArborescenceInstance& instance) {
    {
        std::vector<char> alive(instance.num_arcs(), 1);
        if (!all_reachable(instance.num_nodes(), instance.root, instance.arcs, alive))
            throw UnreachableError("some node cannot be reached from the root");
    }

    // Prune arcs lying on no arborescence.
    std::vector<char> on_some = arcs_on_some_arborescence(instance);

    // Fix a maximal surviving arc per agent.
    std::vector<int> best_arc(instance.num_nodes(), -1);
    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        std::vector<int> surviving;
        for (int e : instance.incoming(v))
            if (on_some[e]) surviving.push_back(e);
        if (surviving.empty())
            throw UnreachableError("a node retains no usable incoming arc after pruning");
        best_arc[v] = instance.prefs[v].maximal_elements(surviving).front();
    }

    // Auxiliary digraph: every agent keeps exactly two in-arcs, one of them its
    // maximal arc; extra in-arcs are funneled through a splitter node.
    struct AuxArc {
        int tail;
        int head;
        int original;  // original arc index, or -1 for splitter glue
    };
    std::vector<AuxArc> aux;
    int aux_nodes = instance.num_nodes();
    std::vector<int> splitter_of(instance.num_nodes(), -1);

    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        std::vector<int> surviving;
        for (int e : instance.incoming(v))
            if (on_some[e]) surviving.push_back(e);
        int chosen = best_arc[v];
        aux.push_back({instance.arcs[chosen].first, v, chosen});
        if (surviving.size() == 1) {
            aux.push_back({instance.arcs[chosen].first, v, chosen});  // parallel copy
        } else if (surviving.size() == 2) {
            int other = surviving[0] == chosen ? surviving[1] : surviving[0];
            aux.push_back({instance.arcs[other].first, v, other});
        } else {
            int splitter = aux_nodes++;
            splitter_of[v] = splitter;
            aux.push_back({splitter, v, -1});
            for (int e : surviving)
                if (e != chosen) aux.push_back({instance.arcs[e].first, splitter, e});
        }
    }

    std::vector<std::pair<int, int>> aux_pairs;
    for (const auto& a : aux) aux_pairs.emplace_back(a.tail, a.head);

    DisjointArborescences solver{aux_nodes, instance.root, aux_pairs, 2'000'000, std::nullopt};
    {
        std::vector<int> tree;
        std::vector<char> covered(aux_nodes, 0);
        std::vector<char> alive(aux.size(), 1);
        covered[instance.root] = 1;
        if (!solver.grow(tree, covered, alive, 1))
            throw Error("auxiliary digraph admits no disjoint arborescences");
    }
    std::vector<int> first_tree = *solver.first;

    // Second arborescence from the remaining arcs.
    std::vector<char> leftover(aux.size(), 1);
    for (int e : first_tree) leftover[e] = 0;
    std::vector<int> second_tree;
    {
        std::vector<char> covered(aux_nodes, 0);
        covered[instance.root] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t e = 0; e < aux.size(); ++e) {
                if (!leftover[e]) continue;
                auto [u, v] = aux_pairs[e];
                if (covered[u] && !covered[v]) {
                    covered[v] = 1;
                    second_tree.push_back(static_cast<int>(e));
                    grew = true;
                }
            }
        }
        for (char c : covered)
            if (!c) throw Error("residual digraph lost root connectivity");
    }

    // Map back: contract splitter paths, collapse the parallel copy.
    auto project = [&](const std::vector<int>& tree) {
        std::vector<int> in_arc(aux_nodes, -1);
        for (int e : tree) in_arc[aux[e].head] = e;
        std::vector<int> out;
        for (int v = 0; v < instance.num_nodes(); ++v) {
            if (v == instance.root) continue;
            int e = in_arc[v];
            if (e < 0) throw Error("auxiliary tree misses a node");
            int original = aux[e].original;
            if (original < 0) original = aux[in_arc[splitter_of[v]]].original;
            out.push_back(original);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<int> t1 = project(first_tree);
    std::vector<int> t2 = project(second_tree);
    if (!is_arborescence(instance, t1) || !is_arborescence(instance, t2))
        throw Error("projection did not yield arborescences");
    auto o1 = arborescence_outcome(instance, t1);
    auto o2 = arborescence_outcome(instance, t2);
    for (int v = 0; v < instance.num_nodes(); ++v) {
        if (v == instance.root) continue;
        if (o1[v] != best_arc[v] && o2[v] != best_arc[v])
            throw Error("maximal arc missing from both arborescences");
    }
    return {t1, t2};
}

}  // namespace condorcet
