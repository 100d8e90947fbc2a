#include "condorcet/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "condorcet/bipartite.hpp"
#include "condorcet/popularity.hpp"

namespace condorcet {

namespace {

MatchingInstance assemble(std::vector<std::string> agents, std::vector<std::string> objects,
                          const std::vector<std::pair<std::string, std::string>>& edges,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& prefs,
                          nlohmann::json matroid, AlternativeKind kind) {
    MatchingInstance inst;
    inst.agent_names = std::move(agents);
    inst.object_names = std::move(objects);
    inst.adjacency.assign(inst.agent_names.size(), {});
    for (const auto& [a, o] : edges) {
        int ai = inst.agent_index(a);
        int oi = inst.object_index(o);
        if (ai < 0 || oi < 0) throw Error("generator produced a dangling edge");
        inst.adjacency[ai].push_back(oi);
    }
    for (auto& adj : inst.adjacency) std::sort(adj.begin(), adj.end());
    std::vector<std::vector<std::pair<int, int>>> pair_lists(inst.agent_names.size());
    for (const auto& [a, better, worse] : prefs) {
        int ai = inst.agent_index(a);
        pair_lists[ai].emplace_back(inst.object_index(better), inst.object_index(worse));
    }
    for (std::size_t a = 0; a < inst.agent_names.size(); ++a)
        inst.prefs.push_back(build_relation(static_cast<int>(a), inst.adjacency[a], pair_lists[a]));
    inst.matroid_spec = std::move(matroid);
    inst.kind = kind;
    validate_instance(inst);
    return inst;
}

}  // namespace

MatchingInstance gen_lower_bound_matching(int k) {
    if (k < 1) throw ValidationError("k must be at least 1");
    const int n = k * k + k + 1;
    std::vector<std::string> agents, objects;
    for (int i = 1; i <= n; ++i) agents.push_back("a" + std::to_string(i));
    objects.push_back("o*");
    for (int i = 1; i <= k; ++i) objects.push_back("b" + std::to_string(i));
    for (int i = 1; i <= k * k; ++i) objects.push_back("c" + std::to_string(i));

    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::tuple<std::string, std::string, std::string>> prefs;
    for (const auto& a : agents) {
        for (const auto& o : objects) edges.emplace_back(a, o);
        for (int i = 1; i <= k * k; ++i) prefs.emplace_back(a, "o*", "c" + std::to_string(i));
    }
    return assemble(std::move(agents), std::move(objects), edges, prefs, nullptr,
                    AlternativeKind::AllMatchings);
}

MatchingInstance gen_lower_bound_matroid(int k) {
    if (k < 2) throw ValidationError("k must be at least 2");
    const int m = k * (k + 1);
    std::vector<std::string> agents, objects;
    for (int i = 1; i <= k + 1; ++i) agents.push_back("a" + std::to_string(i));
    for (int i = 1; i <= m; ++i) objects.push_back("o" + std::to_string(i));

    // one object per k-subset of the base objects
    std::vector<std::vector<int>> subsets;
    std::vector<int> pick;
    std::function<void(int)> choose = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            subsets.push_back(pick);
            return;
        }
        for (int i = start; i <= m; ++i) {
            pick.push_back(i);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(1);
    std::vector<std::string> subset_names;
    for (const auto& s : subsets) {
        std::string name = "s";
        for (int i : s) name += "_" + std::to_string(i);
        subset_names.push_back(name);
        objects.push_back(name);
    }

    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::tuple<std::string, std::string, std::string>> prefs;
    for (const auto& a : agents) {
        for (const auto& o : objects) edges.emplace_back(a, o);
        for (std::size_t s = 0; s < subsets.size(); ++s)
            for (int i : subsets[s]) prefs.emplace_back(a, subset_names[s], "o" + std::to_string(i));
    }
    nlohmann::json matroid = {{"type", "partition"},
                              {"parts", {subset_names}},
                              {"capacities", {1}}};
    return assemble(std::move(agents), std::move(objects), edges, prefs, matroid,
                    AlternativeKind::Constrained);
}

MatchingInstance gen_no_pareto() {
    std::vector<std::string> agents{"a0", "a1", "a2"};
    std::vector<std::string> objects{"o0", "o1", "o2"};
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::tuple<std::string, std::string, std::string>> prefs;
    for (const auto& a : agents) {
        for (const auto& o : objects) edges.emplace_back(a, o);
        prefs.emplace_back(a, "o0", "o2");
    }
    return assemble(std::move(agents), std::move(objects), edges, prefs, nullptr,
                    AlternativeKind::AllMatchings);
}

MatchingInstance gen_vertex_cover_reduction(const SimpleGraph& graph, int cover_size) {
    if (cover_size < 0 || cover_size > graph.num_nodes)
        throw ValidationError("cover size out of range");
    for (auto [u, v] : graph.edges)
        if (u < 0 || v < 0 || u >= graph.num_nodes || v >= graph.num_nodes || u == v)
            throw ValidationError("bad edge in the cover instance");

    auto vn = [](int v) { return "v" + std::to_string(v); };
    std::vector<std::string> agents, objects;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::tuple<std::string, std::string, std::string>> prefs;

    for (int v = 0; v < graph.num_nodes; ++v) objects.push_back("o_" + vn(v));
    std::vector<std::string> bar;
    for (int i = 0; i < graph.num_nodes - cover_size; ++i) {
        bar.push_back("obar" + std::to_string(i + 1));
        objects.push_back(bar.back());
    }
    for (int v = 0; v < graph.num_nodes; ++v) {
        std::string a = "a_" + vn(v);
        agents.push_back(a);
        edges.emplace_back(a, "o_" + vn(v));
        for (const auto& ob : bar) {
            edges.emplace_back(a, ob);
            prefs.emplace_back(a, ob, "o_" + vn(v));
        }
    }

    for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
        auto [u, v] = graph.edges[ei];
        if (u > v) std::swap(u, v);
        std::string e = "e" + std::to_string(ei);
        std::string ov = "o" + e + "_" + vn(u);
        std::string ow = "o" + e + "_" + vn(v);
        std::string o1 = "o" + e + "_1";
        std::string o2 = "o" + e + "_2";
        std::string o3 = "o" + e + "_3";
        for (const auto& o : {ov, ow, o1, o2, o3}) objects.push_back(o);

        std::string ae = "a" + e;
        agents.push_back(ae);
        for (const auto& o : {ov, ow, "o_" + vn(u), "o_" + vn(v)}) edges.emplace_back(ae, o);
        prefs.emplace_back(ae, ov, "o_" + vn(u));
        prefs.emplace_back(ae, ow, "o_" + vn(v));

        std::string av = "a" + e + "_" + vn(u);
        agents.push_back(av);
        edges.emplace_back(av, ov);
        edges.emplace_back(av, o1);
        prefs.emplace_back(av, ov, o1);

        std::string aw = "a" + e + "_" + vn(v);
        agents.push_back(aw);
        edges.emplace_back(aw, ow);
        edges.emplace_back(aw, o1);
        prefs.emplace_back(aw, ow, o1);

        for (int i = 1; i <= 3; ++i) {
            std::string ai = "a" + e + "_" + std::to_string(i);
            agents.push_back(ai);
            for (const auto& o : {o1, o2, o3}) edges.emplace_back(ai, o);
            prefs.emplace_back(ai, o1, o2);
        }
    }
    return assemble(std::move(agents), std::move(objects), edges, prefs, nullptr,
                    AlternativeKind::AllMatchings);
}

MatchingInstance gen_ldm_reduction(const ThreeDimensionalMatching& input) {
    const int k = input.k;
    if (k < 2) throw ValidationError("popular-set size must be at least 2");
    const int parts = k + 1;
    if (static_cast<int>(input.parts.size()) != parts)
        throw ValidationError("the reduction needs exactly k+1 parts");
    const int m = input.parts.empty() ? 0 : static_cast<int>(input.parts[0].size());
    for (const auto& part : input.parts)
        if (static_cast<int>(part.size()) != m)
            throw ValidationError("all parts must have equal size");

    std::set<std::string> element_names;
    for (const auto& part : input.parts)
        for (const auto& x : part)
            if (!element_names.insert(x).second)
                throw ValidationError("duplicate element across parts");

    auto part_index = [&](const std::string& x, int j) {
        const auto& part = input.parts[j];
        return std::find(part.begin(), part.end(), x) != part.end();
    };
    std::set<std::vector<std::string>> tuple_set;
    for (const auto& t : input.tuples) {
        if (static_cast<int>(t.size()) != parts) throw ValidationError("tuple arity mismatch");
        for (int j = 0; j < parts; ++j)
            if (!part_index(t[j], j)) throw ValidationError("tuple element outside its part");
        tuple_set.insert(t);
    }

    // enumerate the complement of the tuple set
    std::vector<std::vector<std::string>> non_tuples;
    std::vector<std::string> current(parts);
    std::function<void(int)> walk = [&](int j) {
        if (j == parts) {
            if (!tuple_set.count(current)) non_tuples.push_back(current);
            return;
        }
        for (const auto& x : input.parts[j]) {
            current[j] = x;
            walk(j + 1);
        }
    };
    if (m > 0) walk(0);

    std::vector<std::string> agents, objects;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::tuple<std::string, std::string, std::string>> prefs;

    const int a0_count = k * k * k * m + k * k * m + 1;
    std::vector<std::string> last_part = input.parts[parts - 1];

    for (const auto& x : last_part) agents.push_back("a_" + x);
    for (int h = 1; h <= m; ++h)
        for (int t = 1; t <= k - 1; ++t)
            agents.push_back("ahat" + std::to_string(h) + "_" + std::to_string(t));
    for (int i = 1; i <= a0_count; ++i) agents.push_back("a0_" + std::to_string(i));

    std::vector<std::string> ys;
    for (int j = 0; j < parts - 1; ++j)
        for (const auto& y : input.parts[j]) {
            ys.push_back(y);
            objects.push_back("o_" + y);
        }
    auto nt_name = [&](const std::vector<std::string>& t) {
        std::string name = "onot";
        for (const auto& x : t) name += "_" + x;
        return name;
    };
    for (const auto& t : non_tuples) objects.push_back(nt_name(t));
    for (int i = 1; i <= parts - 1; ++i) objects.push_back("obar" + std::to_string(i));
    for (int j = 1; j <= parts - 1; ++j)
        for (int h = 1; h <= m; ++h)
            objects.push_back("ohat" + std::to_string(j) + "_" + std::to_string(h));
    const int tilde_count = k * k * m;
    for (int i = 1; i <= tilde_count; ++i) objects.push_back("otil" + std::to_string(i));
    for (int i = 1; i <= a0_count; ++i) objects.push_back("o0_" + std::to_string(i));

    for (const auto& x : last_part) {
        std::string a = "a_" + x;
        for (const auto& y : ys) edges.emplace_back(a, "o_" + y);
        for (int i = 1; i <= parts - 1; ++i) {
            std::string obar = "obar" + std::to_string(i);
            edges.emplace_back(a, obar);
            for (const auto& y : input.parts[i - 1]) prefs.emplace_back(a, "o_" + y, obar);
        }
        for (const auto& t : non_tuples) {
            if (t[parts - 1] != x) continue;
            std::string ot = nt_name(t);
            edges.emplace_back(a, ot);
            for (int i = 0; i < parts - 1; ++i)
                for (const auto& y : input.parts[i])
                    if (y != t[i]) prefs.emplace_back(a, "o_" + y, ot);
        }
    }
    for (int h = 1; h <= m; ++h)
        for (int t = 1; t <= k - 1; ++t) {
            std::string a = "ahat" + std::to_string(h) + "_" + std::to_string(t);
            for (int j = 1; j <= parts - 1; ++j) {
                std::string oy = "o_" + input.parts[j - 1][h - 1];
                std::string ohat = "ohat" + std::to_string(j) + "_" + std::to_string(h);
                edges.emplace_back(a, oy);
                edges.emplace_back(a, ohat);
                prefs.emplace_back(a, oy, ohat);
            }
        }
    for (int i = 1; i <= a0_count; ++i) {
        std::string a = "a0_" + std::to_string(i);
        for (const auto& y : ys) edges.emplace_back(a, "o_" + y);
        for (int j = 1; j <= tilde_count; ++j) edges.emplace_back(a, "otil" + std::to_string(j));
        for (int j = 1; j <= a0_count; ++j) {
            std::string o0 = "o0_" + std::to_string(j);
            edges.emplace_back(a, o0);
            for (const auto& y : ys) prefs.emplace_back(a, "o_" + y, o0);
        }
    }
    return assemble(std::move(agents), std::move(objects), edges, prefs, nullptr,
                    AlternativeKind::AllMatchings);
}

namespace {

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    // rejection sampling keeps results platform-independent
    std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= bound);
    return x % n;
}

double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

template <typename T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rand_below(rng, i)]);
}

}  // namespace

MatchingInstance gen_random(int num_agents, int num_objects, double edge_density,
                            PrefModel pref_model, const std::string& matroid_kind,
                            std::uint64_t seed) {
    if (num_agents < 0 || num_objects < 0) throw ValidationError("sizes must be nonnegative");
    std::mt19937_64 rng(seed);

    MatchingInstance inst;
    for (int i = 1; i <= num_agents; ++i) inst.agent_names.push_back("a" + std::to_string(i));
    for (int i = 1; i <= num_objects; ++i) inst.object_names.push_back("o" + std::to_string(i));
    inst.adjacency.assign(num_agents, {});
    for (int a = 0; a < num_agents; ++a)
        for (int o = 0; o < num_objects; ++o)
            if (rand_unit(rng) < edge_density) inst.adjacency[a].push_back(o);

    for (int a = 0; a < num_agents; ++a) {
        std::vector<int> order = inst.adjacency[a];
        shuffle_vec(rng, order);
        std::vector<std::pair<int, int>> pairs;
        switch (pref_model) {
            case PrefModel::Strict:
                for (std::size_t i = 0; i + 1 < order.size(); ++i)
                    pairs.emplace_back(order[i], order[i + 1]);
                break;
            case PrefModel::Weak: {
                if (!order.empty()) {
                    int levels = 1 + static_cast<int>(rand_below(rng, order.size()));
                    std::vector<int> level(order.size());
                    for (auto& l : level) l = static_cast<int>(rand_below(rng, levels));
                    for (std::size_t i = 0; i < order.size(); ++i)
                        for (std::size_t j = 0; j < order.size(); ++j)
                            if (level[i] < level[j]) pairs.emplace_back(order[i], order[j]);
                }
                break;
            }
            case PrefModel::Partial:
                for (std::size_t i = 0; i < order.size(); ++i)
                    for (std::size_t j = i + 1; j < order.size(); ++j)
                        if (rand_unit(rng) < 0.4) pairs.emplace_back(order[i], order[j]);
                break;
        }
        inst.prefs.push_back(build_relation(a, inst.adjacency[a], pairs));
    }

    if (matroid_kind == "none" || matroid_kind.empty()) {
        inst.matroid_spec = nullptr;
        inst.kind = AlternativeKind::AllMatchings;
    } else if (matroid_kind == "free") {
        inst.matroid_spec = {{"type", "free"}};
        inst.kind = AlternativeKind::Constrained;
    } else if (matroid_kind == "uniform") {
        int rank = num_objects == 0 ? 0 : static_cast<int>(rand_below(rng, num_objects + 1));
        inst.matroid_spec = {{"type", "uniform"}, {"rank", rank}};
        inst.kind = AlternativeKind::Constrained;
    } else if (matroid_kind == "partition") {
        int num_parts = 1 + static_cast<int>(rand_below(rng, 3));
        std::vector<std::vector<std::string>> parts(num_parts);
        for (const auto& name : inst.object_names)
            parts[rand_below(rng, num_parts)].push_back(name);
        nlohmann::json parts_doc = nlohmann::json::array();
        nlohmann::json caps = nlohmann::json::array();
        for (auto& p : parts) {
            if (p.empty()) continue;
            parts_doc.push_back(p);
            caps.push_back(1 + static_cast<int>(rand_below(rng, 2)));
        }
        inst.matroid_spec = {{"type", "partition"}, {"parts", parts_doc}, {"capacities", caps}};
        inst.kind = AlternativeKind::Constrained;
    } else if (matroid_kind == "graphic") {
        int nodes = 2 + static_cast<int>(rand_below(rng, std::max(1, num_objects)));
        nlohmann::json node_doc = nlohmann::json::array();
        for (int i = 0; i < nodes; ++i) node_doc.push_back("n" + std::to_string(i));
        nlohmann::json edge_map = nlohmann::json::object();
        for (const auto& name : inst.object_names) {
            int u = static_cast<int>(rand_below(rng, nodes));
            int v = static_cast<int>(rand_below(rng, nodes));
            while (v == u) v = static_cast<int>(rand_below(rng, nodes));
            edge_map[name] = {"n" + std::to_string(u), "n" + std::to_string(v)};
        }
        inst.matroid_spec = {{"type", "graphic"}, {"nodes", node_doc}, {"edge_map", edge_map}};
        inst.kind = AlternativeKind::Constrained;
    } else {
        throw ValidationError("unknown matroid kind " + matroid_kind);
    }
    validate_instance(inst);
    return inst;
}

namespace {

// Checks one strict a_perfect instance for the counterexample pattern: exactly
// two agents whose top choice is realized by a unique assignment each; the two
// assignments then form a Pareto-optimal pair, which some competitor beats.
std::optional<AssignmentCounterexample> probe_assignment_instance(MatchingInstance inst) {
    const int n = inst.num_agents();
    std::vector<Matching> alts;
    try {
        alts = enumerate_alternatives(inst, 64);
    } catch (const TooLargeError&) {
        return std::nullopt;
    }
    if (alts.size() < 3 || alts.size() > 4000) return std::nullopt;

    std::vector<int> top(n);
    for (int a = 0; a < n; ++a)
        top[a] = inst.prefs[a].maximal_elements(inst.adjacency[a]).front();

    std::vector<std::vector<int>> top_holders(n);
    for (std::size_t i = 0; i < alts.size(); ++i)
        for (int a = 0; a < n; ++a)
            if (alts[i].assigned[a] == top[a]) top_holders[a].push_back(static_cast<int>(i));

    std::vector<int> unique_agents;
    for (int a = 0; a < n; ++a)
        if (top_holders[a].size() == 1) unique_agents.push_back(a);
    if (unique_agents.size() != 2) return std::nullopt;
    int first = top_holders[unique_agents[0]][0];
    int second = top_holders[unique_agents[1]][0];
    if (first == second) return std::nullopt;

    MatchingSet set{{alts[first], alts[second]}};

    int best_margin = 0;
    int best = -1;
    for (std::size_t i = 0; i < alts.size(); ++i) {
        Tally t = tally(inst, set, alts[i]);
        if (t.margin < best_margin) {
            best_margin = t.margin;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) return std::nullopt;

    // certify Pareto-optimality against all sets of size at most two
    for (std::size_t i = 0; i < alts.size(); ++i) {
        if (dominates(inst, MatchingSet{{alts[i]}}, set)) return std::nullopt;
        for (std::size_t j = i + 1; j < alts.size(); ++j)
            if (dominates(inst, MatchingSet{{alts[i], alts[j]}}, set)) return std::nullopt;
    }

    AssignmentCounterexample out;
    out.found = true;
    out.instance = std::move(inst);
    out.set = set;
    out.competitor = alts[best];
    return out;
}

MatchingInstance build_assignment_instance(int n, const std::vector<std::vector<int>>& adjacency,
                                           const std::vector<std::vector<int>>& ranked) {
    MatchingInstance inst;
    for (int i = 1; i <= n; ++i) inst.agent_names.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) inst.object_names.push_back("o" + std::to_string(i));
    inst.adjacency = adjacency;
    for (auto& adj : inst.adjacency) std::sort(adj.begin(), adj.end());
    for (int a = 0; a < n; ++a) {
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i + 1 < ranked[a].size(); ++i)
            pairs.emplace_back(ranked[a][i], ranked[a][i + 1]);
        inst.prefs.push_back(build_relation(a, inst.adjacency[a], pairs));
    }
    inst.matroid_spec = nullptr;
    inst.kind = AlternativeKind::APerfect;
    return inst;
}

}  // namespace

AssignmentCounterexample find_assignment_counterexample(int max_agents, long long attempt_budget) {
    // Bounds below five agents cannot produce a losing Pareto pair; the search
    // simply reports not-found for them.
    if (max_agents < 5) return {};

    // Structured phase: a cycle with one extra chord per agent; preferences
    // rank the chord first or last. Deterministic sweep over chord offsets and
    // preference patterns.
    for (int n = 5; n <= max_agents; ++n) {
        for (int offset = 2; offset < n - 1; ++offset) {
            for (std::uint32_t mask = 0; mask < (1u << n) && attempt_budget > 0; ++mask) {
                --attempt_budget;
                std::vector<std::vector<int>> adjacency(n);
                std::vector<std::vector<int>> ranked(n);
                for (int a = 0; a < n; ++a) {
                    int own = a;
                    int next = (a + 1) % n;
                    int chord = (a + offset) % n;
                    adjacency[a] = {own, next, chord};
                    std::sort(adjacency[a].begin(), adjacency[a].end());
                    adjacency[a].erase(std::unique(adjacency[a].begin(), adjacency[a].end()),
                                       adjacency[a].end());
                    bool chord_top = (mask >> a) & 1;
                    ranked[a].clear();
                    if (chord_top) ranked[a] = {chord, own, next};
                    else ranked[a] = {own, next, chord};
                    std::vector<int> seen;
                    std::vector<int> dedup;
                    for (int o : ranked[a])
                        if (std::find(dedup.begin(), dedup.end(), o) == dedup.end())
                            dedup.push_back(o);
                    ranked[a] = dedup;
                }
                MatchingInstance inst = build_assignment_instance(n, adjacency, ranked);
                try {
                    validate_instance(inst);
                } catch (const ValidationError&) {
                    continue;
                }
                auto hit = probe_assignment_instance(std::move(inst));
                if (hit) return *hit;
            }
        }
    }

    // Random phase: sparse strict instances.
    std::mt19937_64 rng(0);
    for (long long attempt = 0; attempt < attempt_budget && max_agents >= 5; ++attempt) {
        int n = 5 + static_cast<int>(rand_below(rng, std::max(1, max_agents - 4)));
        std::vector<std::vector<int>> adjacency(n);
        std::vector<std::vector<int>> ranked(n);
        for (int a = 0; a < n; ++a) {
            std::set<int> adj{a, (a + 1) % n};
            int extras = 1 + static_cast<int>(rand_below(rng, 2));
            for (int i = 0; i < extras; ++i) adj.insert(static_cast<int>(rand_below(rng, n)));
            adjacency[a].assign(adj.begin(), adj.end());
            ranked[a] = adjacency[a];
            shuffle_vec(rng, ranked[a]);
        }
        MatchingInstance inst = build_assignment_instance(n, adjacency, ranked);
        try {
            validate_instance(inst);
        } catch (const ValidationError&) {
            continue;
        }
        auto hit = probe_assignment_instance(std::move(inst));
        if (hit) return *hit;
    }
    return {};
}

}  // namespace condorcet
