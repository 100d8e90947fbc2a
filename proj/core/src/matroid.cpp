#include "condorcet/matroid.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "condorcet/bipartite.hpp"
#include "condorcet/instance.hpp"

namespace condorcet {

bool MatroidOracle::is_independent(std::span<const int> set) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    // Wrappers that forward their input unchanged (truncations) re-enter with
    // a span over this buffer; it is already normalized then. Any other
    // overlap goes through a temporary before reassigning the buffer.
    thread_local std::vector<int> buffer;
    bool same = set.data() == buffer.data() && set.size() == buffer.size();
    if (!same) {
        bool overlaps = !buffer.empty() && set.data() >= buffer.data() &&
                        set.data() < buffer.data() + buffer.size();
        if (overlaps) {
            std::vector<int> copy(set.begin(), set.end());
            buffer = std::move(copy);
        } else {
            buffer.assign(set.begin(), set.end());
        }
        std::sort(buffer.begin(), buffer.end());
        buffer.erase(std::unique(buffer.begin(), buffer.end()), buffer.end());
    }
    for (int e : buffer)
        if (e < 0 || e >= ground_size_)
            throw ValidationError("matroid query outside the ground set");
    return check(buffer);
}

namespace {

class FreeMatroid final : public MatroidOracle {
public:
    using MatroidOracle::MatroidOracle;

private:
    bool check(std::span<const int>) const override { return true; }
};

class UniformMatroid final : public MatroidOracle {
public:
    UniformMatroid(int n, int rank) : MatroidOracle(n), rank_(rank) {}

private:
    bool check(std::span<const int> set) const override {
        return static_cast<int>(set.size()) <= rank_;
    }
    int rank_;
};

class PartitionMatroid final : public MatroidOracle {
public:
    PartitionMatroid(int n, std::vector<std::vector<int>> parts, std::vector<int> capacities)
        : MatroidOracle(n), capacities_(std::move(capacities)), part_of_(n, -1) {
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (int e : parts[p]) {
                if (part_of_[e] != -1) throw ValidationError("partition parts overlap");
                part_of_[e] = static_cast<int>(p);
            }
    }

private:
    bool check(std::span<const int> set) const override {
        std::vector<int> used(capacities_.size(), 0);
        for (int e : set) {
            int p = part_of_[e];
            if (p >= 0 && ++used[p] > capacities_[p]) return false;
        }
        return true;
    }
    std::vector<int> capacities_;
    std::vector<int> part_of_;
};

class GraphicMatroid final : public MatroidOracle {
public:
    GraphicMatroid(int node_count, std::vector<std::pair<int, int>> edges)
        : MatroidOracle(static_cast<int>(edges.size())), node_count_(node_count),
          edges_(std::move(edges)) {}

private:
    bool check(std::span<const int> set) const override {
        std::vector<int> parent(node_count_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int e : set) {
            auto [u, v] = edges_[e];
            int ru = find(u), rv = find(v);
            if (ru == rv) return false;
            parent[ru] = rv;
        }
        return true;
    }
    int node_count_;
    std::vector<std::pair<int, int>> edges_;
};

class DirectSumMatroid final : public MatroidOracle {
public:
    DirectSumMatroid(int n, std::vector<MatroidPtr> children, std::vector<std::vector<int>> grounds)
        : MatroidOracle(n), children_(std::move(children)), locate_(n, {-1, -1}) {
        for (std::size_t c = 0; c < grounds.size(); ++c)
            for (std::size_t i = 0; i < grounds[c].size(); ++i) {
                int g = grounds[c][i];
                if (locate_[g].first != -1) throw ValidationError("direct sum grounds overlap");
                locate_[g] = {static_cast<int>(c), static_cast<int>(i)};
            }
    }

private:
    bool check(std::span<const int> set) const override {
        std::vector<std::vector<int>> locals(children_.size());
        for (int e : set) {
            auto [c, i] = locate_[e];
            if (c < 0) continue;  // uncovered elements are free
            locals[c].push_back(i);
        }
        for (std::size_t c = 0; c < children_.size(); ++c)
            if (!locals[c].empty() && !children_[c]->is_independent(locals[c])) return false;
        return true;
    }
    std::vector<MatroidPtr> children_;
    std::vector<std::pair<int, int>> locate_;
};

class TruncationMatroid final : public MatroidOracle {
public:
    TruncationMatroid(MatroidPtr inner, int bound)
        : MatroidOracle(inner->ground_size()), inner_(std::move(inner)), bound_(bound) {}

private:
    bool check(std::span<const int> set) const override {
        if (static_cast<int>(set.size()) > bound_) return false;
        return inner_->is_independent(set);
    }
    MatroidPtr inner_;
    int bound_;
};

class SelfUnionMatroid final : public MatroidOracle {
public:
    explicit SelfUnionMatroid(MatroidPtr inner)
        : MatroidOracle(inner->ground_size()), inner_(std::move(inner)) {}

private:
    bool check(std::span<const int> set) const override {
        return union_is_independent(*inner_, set).independent;
    }
    MatroidPtr inner_;
};

class ParallelCopyMatroid final : public MatroidOracle {
public:
    ParallelCopyMatroid(MatroidPtr inner, std::vector<int> copy_to_orig)
        : MatroidOracle(static_cast<int>(copy_to_orig.size())), inner_(std::move(inner)),
          copy_to_orig_(std::move(copy_to_orig)) {}

private:
    bool check(std::span<const int> set) const override {
        std::vector<int> originals;
        originals.reserve(set.size());
        for (int c : set) originals.push_back(copy_to_orig_[c]);
        std::sort(originals.begin(), originals.end());
        if (std::adjacent_find(originals.begin(), originals.end()) != originals.end())
            return false;  // two copies of one element
        return inner_->is_independent(originals);
    }
    MatroidPtr inner_;
    std::vector<int> copy_to_orig_;
};

}  // namespace

MatroidPtr make_free_matroid(int ground_size) {
    return std::make_shared<FreeMatroid>(ground_size);
}

MatroidPtr make_uniform_matroid(int ground_size, int rank) {
    return std::make_shared<UniformMatroid>(ground_size, rank);
}

MatroidPtr make_partition_matroid(int ground_size, std::vector<std::vector<int>> parts,
                                  std::vector<int> capacities) {
    return std::make_shared<PartitionMatroid>(ground_size, std::move(parts), std::move(capacities));
}

MatroidPtr make_graphic_matroid(int node_count, std::vector<std::pair<int, int>> edge_map) {
    return std::make_shared<GraphicMatroid>(node_count, std::move(edge_map));
}

MatroidPtr make_direct_sum_matroid(int ground_size, std::vector<MatroidPtr> children,
                                   std::vector<std::vector<int>> grounds) {
    return std::make_shared<DirectSumMatroid>(ground_size, std::move(children), std::move(grounds));
}

MatroidPtr make_truncation_matroid(MatroidPtr inner, int bound) {
    return std::make_shared<TruncationMatroid>(std::move(inner), bound);
}

MatroidPtr make_self_union_matroid(MatroidPtr inner) {
    return std::make_shared<SelfUnionMatroid>(std::move(inner));
}

MatroidPtr make_parallel_copy_matroid(MatroidPtr inner, std::vector<int> copy_to_orig) {
    return std::make_shared<ParallelCopyMatroid>(std::move(inner), std::move(copy_to_orig));
}

Basis certify_basis(const MatroidOracle& oracle, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!oracle.is_independent(elements))
        throw NotABasisError("set is not independent");
    std::vector<int> probe;
    for (int e = 0; e < oracle.ground_size(); ++e) {
        if (std::binary_search(elements.begin(), elements.end(), e)) continue;
        probe = elements;
        probe.push_back(e);
        if (oracle.is_independent(probe))
            throw NotABasisError("set is independent but not maximal");
    }
    return Basis{std::move(elements), true};
}

std::vector<int> fundamental_circuit(const MatroidOracle& oracle, const Basis& basis, int o) {
    const Basis& b = basis.certified ? basis : certify_basis(oracle, basis.elements);
    if (std::binary_search(b.elements.begin(), b.elements.end(), o))
        throw ValidationError("fundamental_circuit requires an element outside the basis");
    std::vector<int> circuit;
    std::vector<int> probe;
    for (int x : b.elements) {
        probe.clear();
        for (int e : b.elements)
            if (e != x) probe.push_back(e);
        probe.push_back(o);
        if (oracle.is_independent(probe)) circuit.push_back(x);
    }
    return circuit;
}

std::vector<std::pair<int, int>> bijective_exchange(const MatroidOracle& oracle,
                                                    const Basis& from, const Basis& to) {
    const Basis& f = from.certified ? from : certify_basis(oracle, from.elements);
    const Basis& t = to.certified ? to : certify_basis(oracle, to.elements);

    std::vector<int> only_from, only_to;
    std::set_difference(f.elements.begin(), f.elements.end(), t.elements.begin(), t.elements.end(),
                        std::back_inserter(only_from));
    std::set_difference(t.elements.begin(), t.elements.end(), f.elements.begin(), f.elements.end(),
                        std::back_inserter(only_to));

    // Compatibility graph: o may map to x when to - x + o stays a basis.
    std::vector<std::vector<int>> adj(only_from.size());
    for (std::size_t i = 0; i < only_from.size(); ++i) {
        auto circuit = fundamental_circuit(oracle, t, only_from[i]);
        for (std::size_t j = 0; j < only_to.size(); ++j)
            if (std::binary_search(circuit.begin(), circuit.end(), only_to[j]))
                adj[i].push_back(static_cast<int>(j));
    }
    auto match = max_bipartite_matching(static_cast<int>(only_from.size()),
                                        static_cast<int>(only_to.size()), adj);
    for (int m : match)
        if (m < 0) throw NoBijectionError("no valid basis-exchange bijection exists");

    std::vector<std::pair<int, int>> out;
    std::vector<int> shared;
    std::set_intersection(f.elements.begin(), f.elements.end(), t.elements.begin(),
                          t.elements.end(), std::back_inserter(shared));
    for (int s : shared) out.emplace_back(s, s);
    std::vector<int> probe;
    for (std::size_t i = 0; i < only_from.size(); ++i) {
        int target = only_to[match[i]];
        probe.clear();
        for (int e : t.elements)
            if (e != target) probe.push_back(e);
        probe.push_back(only_from[i]);
        if (!oracle.is_independent(probe))
            throw NoBijectionError("exchange bijection failed oracle validation");
        out.emplace_back(only_from[i], target);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct ExchangeDigraph {
    std::vector<char> in_set;
    std::vector<std::vector<int>> arcs;
    std::vector<char> source;  // S + y independent in the first matroid
    std::vector<char> sink;    // S + y independent in the second matroid
};

ExchangeDigraph build_exchange_digraph(const MatroidOracle& first, const MatroidOracle& second,
                                       const std::vector<int>& elements,
                                       const std::vector<char>& in_set) {
    const int n = static_cast<int>(in_set.size());
    ExchangeDigraph g;
    g.in_set = in_set;
    g.arcs.assign(n, {});
    g.source.assign(n, 0);
    g.sink.assign(n, 0);

    std::vector<int> s;
    for (int e : elements)
        if (in_set[e]) s.push_back(e);

    std::vector<int> probe;
    for (int y : elements) {
        if (in_set[y]) continue;
        probe = s;
        probe.push_back(y);
        if (first.is_independent(probe)) g.source[y] = 1;
        if (second.is_independent(probe)) g.sink[y] = 1;
        for (int x : s) {
            probe.clear();
            for (int e : s)
                if (e != x) probe.push_back(e);
            probe.push_back(y);
            if (g.source[y] == 0 && first.is_independent(probe)) g.arcs[x].push_back(y);
            if (g.sink[y] == 0 && second.is_independent(probe)) g.arcs[y].push_back(x);
        }
    }
    return g;
}

}  // namespace

std::vector<int> max_weight_common_independent(const MatroidOracle& first,
                                               const MatroidOracle& second,
                                               std::span<const long long> weights) {
    if (first.ground_size() != second.ground_size())
        throw ValidationError("matroid intersection requires a shared ground set");
    const int n = first.ground_size();
    if (static_cast<int>(weights.size()) != n)
        throw ValidationError("matroid intersection needs one weight per element");

    // Nonpositive elements never help a maximum-weight solution.
    std::vector<int> elements;
    for (int e = 0; e < n; ++e)
        if (weights[e] > 0) elements.push_back(e);

    std::vector<char> in_set(n, 0);
    std::vector<int> best;
    long long best_weight = 0;

    using Cost = std::pair<long long, int>;  // (weight cost, hops), lexicographic
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    while (true) {
        ExchangeDigraph g = build_exchange_digraph(first, second, elements, in_set);

        std::vector<Cost> dist(n, {kInf, 0});
        std::vector<int> parent(n, -1);
        auto node_cost = [&](int v) { return in_set[v] ? weights[v] : -weights[v]; };
        for (int y : elements)
            if (!in_set[y] && g.source[y]) dist[y] = {node_cost(y), 0};

        // Bellman-Ford with (cost, hop) keys; hop counts bound path length.
        for (int pass = 0; pass < n + 1; ++pass) {
            bool changed = false;
            for (int u : elements) {
                if (dist[u].first >= kInf) continue;
                for (int v : g.arcs[u]) {
                    Cost cand{dist[u].first + node_cost(v), dist[u].second + 1};
                    if (cand < dist[v] && cand.second <= n) {
                        dist[v] = cand;
                        parent[v] = u;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        int best_sink = -1;
        Cost best_cost{kInf, 0};
        for (int y : elements)
            if (!in_set[y] && g.sink[y] && dist[y] < best_cost) {
                best_cost = dist[y];
                best_sink = y;
            }
        if (best_sink < 0) break;

        for (int v = best_sink; v >= 0; v = parent[v]) in_set[v] ^= 1;

        std::vector<int> current;
        long long current_weight = 0;
        for (int e : elements)
            if (in_set[e]) {
                current.push_back(e);
                current_weight += weights[e];
            }
        if (!first.is_independent(current) || !second.is_independent(current))
            throw Error("matroid intersection produced a dependent set; oracle is not a matroid");
        if (current_weight > best_weight) {
            best_weight = current_weight;
            best = current;
        }
    }
    return best;
}

UnionSplit union_is_independent(const MatroidOracle& inner, std::span<const int> set) {
    std::vector<int> elements(set.begin(), set.end());
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

    std::vector<int> halves[2];
    std::vector<int> probe;

    auto independent_with = [&](int side, int enter, int leave) {
        probe.clear();
        for (int e : halves[side])
            if (e != leave) probe.push_back(e);
        if (enter >= 0) probe.push_back(enter);
        return inner.is_independent(probe);
    };

    for (int e : elements) {
        // BFS over displacement chains: a state is the element currently
        // without a home. Shortest chains keep both halves independent.
        struct State {
            int homeless;
            int side_from_parent;  // side the parent's element entered
            int parent;
        };
        std::vector<State> states{{e, -1, -1}};
        std::vector<char> seen(inner.ground_size(), 0);
        seen[e] = 1;
        std::deque<int> queue{0};
        int terminal_state = -1;
        int terminal_side = -1;

        while (!queue.empty() && terminal_state < 0) {
            int cur = queue.front();
            queue.pop_front();
            int h = states[cur].homeless;
            for (int side = 0; side < 2 && terminal_state < 0; ++side) {
                // an element only moves into a side it does not currently occupy
                if (std::find(halves[side].begin(), halves[side].end(), h) != halves[side].end())
                    continue;
                if (independent_with(side, h, -1)) {
                    terminal_state = cur;
                    terminal_side = side;
                    break;
                }
                for (int z : halves[side]) {
                    if (seen[z]) continue;
                    if (independent_with(side, h, z)) {
                        seen[z] = 1;
                        states.push_back({z, side, cur});
                        queue.push_back(static_cast<int>(states.size()) - 1);
                    }
                }
            }
        }
        if (terminal_state < 0) return {};

        struct Move {
            int entering;
            int side;
            int kicked;  // -1 for the terminal insertion
        };
        std::vector<Move> moves{{states[terminal_state].homeless, terminal_side, -1}};
        for (int i = terminal_state; i > 0; i = states[i].parent)
            moves.push_back({states[states[i].parent].homeless, states[i].side_from_parent,
                             states[i].homeless});
        for (const auto& mv : moves) {
            if (mv.kicked < 0) continue;
            auto& h = halves[mv.side];
            h.erase(std::find(h.begin(), h.end(), mv.kicked));
        }
        for (const auto& mv : moves) halves[mv.side].push_back(mv.entering);
        for (int side = 0; side < 2; ++side) {
            std::sort(halves[side].begin(), halves[side].end());
            if (!inner.is_independent(halves[side]))
                throw Error("matroid union augmentation failed; oracle is not a matroid");
        }
    }
    UnionSplit out;
    out.independent = true;
    out.part1 = halves[0];
    out.part2 = halves[1];
    return out;
}

MatchingInstance augment_with_nulls(const MatchingInstance& instance) {
    MatchingInstance out;
    out.agent_names = instance.agent_names;
    out.object_names = instance.object_names;
    out.kind = AlternativeKind::Constrained;

    const int n = instance.num_agents();
    const int m = instance.num_objects();
    std::vector<std::string> null_names;
    for (int a = 0; a < n; ++a) {
        std::string name = "-" + instance.agent_names[a];
        while (std::find(out.object_names.begin(), out.object_names.end(), name) !=
               out.object_names.end())
            name = "-" + name;
        null_names.push_back(name);
        out.object_names.push_back(name);
    }

    out.adjacency = instance.adjacency;
    for (int a = 0; a < n; ++a) {
        out.adjacency[a].push_back(m + a);  // null ids come after all objects, sorted
        std::vector<std::pair<int, int>> pairs;
        for (auto [b, w] : instance.prefs[a].strict_pairs()) pairs.emplace_back(b, w);
        for (int o : instance.adjacency[a]) pairs.emplace_back(o, m + a);
        out.prefs.push_back(build_relation(a, out.adjacency[a], pairs));
    }

    nlohmann::json original = instance.matroid_spec;
    if (original.is_null()) {
        original = {{"type", "free"}, {"ground", instance.object_names}};
    } else if ((original["type"] == "free" || original["type"] == "uniform") &&
               !original.contains("ground")) {
        original["ground"] = instance.object_names;
    }
    nlohmann::json spec;
    spec["type"] = "truncated_union";
    spec["bound"] = n;
    spec["parts"] = {original, {{"type", "free"}, {"ground", null_names}}};
    out.matroid_spec = spec;

    validate_instance(out);
    return out;
}

}  // namespace condorcet
