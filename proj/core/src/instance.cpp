#include "condorcet/instance.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "condorcet/bipartite.hpp"

namespace condorcet {

using nlohmann::json;

int MatchingInstance::num_edges() const {
    int total = 0;
    for (const auto& a : adjacency) total += static_cast<int>(a.size());
    return total;
}

bool MatchingInstance::has_edge(int agent, int object) const {
    const auto& a = adjacency[agent];
    return std::binary_search(a.begin(), a.end(), object);
}

namespace {
std::mutex g_matroid_cache_mutex;
}

const MatroidOracle& MatchingInstance::matroid() const {
    std::lock_guard<std::mutex> lock(g_matroid_cache_mutex);
    if (!cached_matroid_) cached_matroid_ = make_matroid_from_spec(matroid_spec, *this);
    return *cached_matroid_;
}

MatroidPtr MatchingInstance::matroid_ptr() const {
    matroid();
    return cached_matroid_;
}

int MatchingInstance::agent_index(const std::string& name) const {
    for (int i = 0; i < num_agents(); ++i)
        if (agent_names[i] == name) return i;
    return -1;
}

int MatchingInstance::object_index(const std::string& name) const {
    for (int i = 0; i < num_objects(); ++i)
        if (object_names[i] == name) return i;
    return -1;
}

bool MatchingInstance::operator==(const MatchingInstance& other) const {
    return agent_names == other.agent_names && object_names == other.object_names &&
           adjacency == other.adjacency && prefs == other.prefs &&
           matroid_spec == other.matroid_spec && kind == other.kind;
}

namespace {

std::vector<int> ground_from_names(const json& names, const MatchingInstance& instance,
                                   const char* what) {
    std::vector<int> out;
    if (!names.is_array()) throw ValidationError(std::string(what) + " must be an array of object names");
    for (const auto& n : names) {
        if (!n.is_string()) throw ValidationError(std::string(what) + " entries must be strings");
        int idx = instance.object_index(n.get<std::string>());
        if (idx < 0) throw ValidationError("matroid references unknown object " + n.get<std::string>());
        out.push_back(idx);
    }
    return out;
}

// A matroid over its own local ground; `ground` lists the global object ids
// behind local ids 0..size-1. Objects outside the ground are unconstrained.
struct SpecOracle {
    MatroidPtr oracle;
    std::vector<int> ground;
};

SpecOracle build_spec_oracle(const json& spec, const MatchingInstance& instance, bool top_level);

SpecOracle build_sum(const json& spec, const MatchingInstance& instance, int bound) {
    if (!spec.contains("parts") || !spec["parts"].is_array())
        throw ValidationError("matroid sum requires a parts array");
    std::vector<MatroidPtr> children;
    std::vector<std::vector<int>> child_grounds;
    std::vector<int> local_ground;
    for (const auto& part : spec["parts"]) {
        SpecOracle child = build_spec_oracle(part, instance, false);
        children.push_back(child.oracle);
        child_grounds.push_back(child.ground);
        for (int g : child.ground) local_ground.push_back(g);
    }
    std::set<int> dedup(local_ground.begin(), local_ground.end());
    if (dedup.size() != local_ground.size())
        throw ValidationError("matroid sum parts must have disjoint grounds");

    std::unordered_map<int, int> to_local;
    for (std::size_t i = 0; i < local_ground.size(); ++i)
        to_local[local_ground[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> local_child_grounds;
    for (const auto& cg : child_grounds) {
        std::vector<int> lg;
        for (int g : cg) lg.push_back(to_local.at(g));
        local_child_grounds.push_back(lg);
    }
    MatroidPtr sum = make_direct_sum_matroid(static_cast<int>(local_ground.size()), children,
                                             local_child_grounds);
    if (bound >= 0) sum = make_truncation_matroid(sum, bound);
    return {sum, local_ground};
}

SpecOracle build_spec_oracle(const json& spec, const MatchingInstance& instance, bool top_level) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw ValidationError("matroid spec must be an object with a type field");
    std::string type = spec["type"].get<std::string>();

    auto explicit_ground = [&]() -> std::vector<int> {
        if (spec.contains("ground")) {
            auto g = ground_from_names(spec["ground"], instance, "ground");
            std::set<int> dedup(g.begin(), g.end());
            if (dedup.size() != g.size()) throw ValidationError("duplicate object in matroid ground");
            return g;
        }
        if (top_level) {
            std::vector<int> g(instance.num_objects());
            for (int i = 0; i < instance.num_objects(); ++i) g[i] = i;
            return g;
        }
        throw ValidationError("nested matroid spec of type " + type + " requires a ground field");
    };

    if (type == "free") {
        auto g = explicit_ground();
        return {make_free_matroid(static_cast<int>(g.size())), g};
    }
    if (type == "uniform") {
        if (!spec.contains("rank") || !spec["rank"].is_number_integer())
            throw ValidationError("uniform matroid requires an integer rank");
        auto g = explicit_ground();
        int rank = spec["rank"].get<int>();
        if (rank < 0) throw ValidationError("uniform rank must be nonnegative");
        return {make_uniform_matroid(static_cast<int>(g.size()), rank), g};
    }
    if (type == "partition") {
        if (!spec.contains("parts") || !spec.contains("capacities"))
            throw ValidationError("partition matroid requires parts and capacities");
        std::vector<int> ground;
        std::vector<std::vector<int>> local_parts;
        for (const auto& p : spec["parts"]) {
            auto ids = ground_from_names(p, instance, "partition part");
            std::vector<int> local;
            for (int i : ids) {
                local.push_back(static_cast<int>(ground.size()));
                ground.push_back(i);
            }
            local_parts.push_back(local);
        }
        std::vector<int> caps;
        for (const auto& c : spec["capacities"]) {
            if (!c.is_number_integer()) throw ValidationError("capacities must be integers");
            caps.push_back(c.get<int>());
        }
        if (caps.size() != local_parts.size())
            throw ValidationError("partition matroid needs one capacity per part");
        std::set<int> dedup(ground.begin(), ground.end());
        if (dedup.size() != ground.size()) throw ValidationError("partition parts must be disjoint");
        return {make_partition_matroid(static_cast<int>(ground.size()), local_parts, caps), ground};
    }
    if (type == "graphic") {
        if (!spec.contains("nodes") || !spec.contains("edge_map"))
            throw ValidationError("graphic matroid requires nodes and edge_map");
        std::vector<std::string> nodes;
        for (const auto& n : spec["nodes"]) nodes.push_back(n.get<std::string>());
        auto node_idx = [&](const std::string& n) {
            auto it = std::find(nodes.begin(), nodes.end(), n);
            if (it == nodes.end()) throw ValidationError("graphic matroid edge uses unknown node " + n);
            return static_cast<int>(it - nodes.begin());
        };
        std::vector<int> ground;
        std::vector<std::pair<int, int>> edges;
        if (!spec["edge_map"].is_object()) throw ValidationError("edge_map must be an object");
        // nlohmann objects iterate in key order, so local ids are deterministic.
        for (const auto& [obj, uv] : spec["edge_map"].items()) {
            int o = instance.object_index(obj);
            if (o < 0) throw ValidationError("graphic matroid references unknown object " + obj);
            if (!uv.is_array() || uv.size() != 2)
                throw ValidationError("edge_map values must be node pairs");
            ground.push_back(o);
            edges.emplace_back(node_idx(uv[0].get<std::string>()), node_idx(uv[1].get<std::string>()));
        }
        std::set<int> dedup(ground.begin(), ground.end());
        if (dedup.size() != ground.size())
            throw ValidationError("graphic matroid maps an object twice");
        return {make_graphic_matroid(static_cast<int>(nodes.size()), edges), ground};
    }
    if (type == "direct_sum") return build_sum(spec, instance, -1);
    if (type == "truncated_union") {
        if (!spec.contains("bound") || !spec["bound"].is_number_integer())
            throw ValidationError("truncated_union requires an integer bound");
        return build_sum(spec, instance, spec["bound"].get<int>());
    }
    throw ValidationError("unknown matroid type " + type);
}

}  // namespace

MatroidPtr make_matroid_from_spec(const json& spec, const MatchingInstance& instance) {
    const int n = instance.num_objects();
    if (spec.is_null()) return make_free_matroid(n);
    SpecOracle built = build_spec_oracle(spec, instance, true);
    bool identity = static_cast<int>(built.ground.size()) == n;
    for (int i = 0; identity && i < n; ++i)
        if (built.ground[i] != i) identity = false;
    if (identity) return built.oracle;
    // Lift to the full object ground; objects outside the spec ground are free.
    return make_direct_sum_matroid(n, {built.oracle}, {built.ground});
}

void validate_instance(const MatchingInstance& instance) {
    const int n = instance.num_agents();
    const int m = instance.num_objects();
    {
        std::set<std::string> names(instance.agent_names.begin(), instance.agent_names.end());
        if (static_cast<int>(names.size()) != n) throw ValidationError("duplicate agent name");
    }
    {
        std::set<std::string> names(instance.object_names.begin(), instance.object_names.end());
        if (static_cast<int>(names.size()) != m) throw ValidationError("duplicate object name");
    }
    if (static_cast<int>(instance.adjacency.size()) != n ||
        static_cast<int>(instance.prefs.size()) != n)
        throw ValidationError("adjacency/prefs size mismatch");
    for (int a = 0; a < n; ++a) {
        for (int o : instance.adjacency[a])
            if (o < 0 || o >= m) throw ValidationError("edge references unknown object");
        if (!std::is_sorted(instance.adjacency[a].begin(), instance.adjacency[a].end()))
            throw ValidationError("adjacency must be sorted");
        if (instance.prefs[a].adjacent() != instance.adjacency[a])
            throw ValidationError("preference relation of agent " + instance.agent_names[a] +
                                  " does not match its adjacency");
    }
    if (instance.has_matroid()) make_matroid_from_spec(instance.matroid_spec, instance);
    if (instance.kind == AlternativeKind::APerfect) {
        auto match = max_bipartite_matching(n, m, instance.adjacency);
        for (int a = 0; a < n; ++a)
            if (match[a] < 0) throw ValidationError("a_perfect instance admits no A-perfect matching");
    }
}

bool is_feasible(const MatchingInstance& instance, const Matching& m) {
    try {
        require_feasible(instance, m);
    } catch (const ValidationError&) {
        return false;
    }
    return true;
}

void require_feasible(const MatchingInstance& instance, const Matching& m) {
    if (static_cast<int>(m.assigned.size()) != instance.num_agents())
        throw ValidationError("matching has wrong number of agents");
    std::set<int> used;
    std::vector<int> objects;
    for (int a = 0; a < instance.num_agents(); ++a) {
        int o = m.assigned[a];
        if (o == kUnmatched) {
            if (instance.kind == AlternativeKind::APerfect)
                throw ValidationError("a_perfect matching leaves an agent unmatched");
            continue;
        }
        if (!instance.has_edge(a, o))
            throw ValidationError("matching uses a non-edge");
        if (!used.insert(o).second) throw ValidationError("object assigned twice");
        objects.push_back(o);
    }
    if (instance.kind == AlternativeKind::Constrained) {
        if (!instance.matroid().is_independent(objects))
            throw ValidationError("matched objects are not independent");
    }
}

Comparison compare_matchings(const MatchingInstance& instance, int agent, const Matching& m,
                             const Matching& n) {
    return instance.prefs[agent].compare(m.at(agent), n.at(agent));
}

std::vector<Matching> decompose_k_matching(const KMatching& km) {
    struct Edge {
        int agent;
        int object;
        int color = -1;
    };
    std::vector<Edge> edges;
    int max_object = -1;
    for (int a = 0; a < km.num_agents; ++a) {
        if (static_cast<int>(km.incidence[a].size()) > km.k)
            throw ValidationError("agent degree exceeds k");
        for (int o : km.incidence[a]) {
            edges.push_back({a, o});
            max_object = std::max(max_object, o);
        }
    }
    const int num_objects = max_object + 1;
    std::vector<int> object_degree(num_objects, 0);
    for (const auto& e : edges) {
        if (++object_degree[e.object] > km.k) throw ValidationError("object degree exceeds k");
    }

    // slot[node][color] = edge index holding that color at the node, or -1.
    std::vector<std::vector<int>> agent_slot(km.num_agents, std::vector<int>(km.k, -1));
    std::vector<std::vector<int>> object_slot(num_objects, std::vector<int>(km.k, -1));

    auto free_color = [&](const std::vector<int>& slots) {
        for (int c = 0; c < static_cast<int>(slots.size()); ++c)
            if (slots[c] < 0) return c;
        return -1;
    };

    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        int u = edges[ei].agent;
        int v = edges[ei].object;
        int alpha = free_color(agent_slot[u]);
        int beta = free_color(object_slot[v]);
        if (alpha != beta) {
            // Swap colors alpha/beta along the maximal alternating path from v;
            // bipartiteness keeps the path away from u, freeing alpha at v.
            std::vector<int> path;
            bool at_object = true;
            int node = v;
            int want = alpha;
            while (true) {
                int e = at_object ? object_slot[node][want] : agent_slot[node][want];
                if (e < 0) break;
                path.push_back(e);
                node = at_object ? edges[e].agent : edges[e].object;
                at_object = !at_object;
                want = (want == alpha) ? beta : alpha;
            }
            for (int e : path) {
                int old_color = edges[e].color;
                int new_color = (old_color == alpha) ? beta : alpha;
                agent_slot[edges[e].agent][old_color] = -1;
                object_slot[edges[e].object][old_color] = -1;
                edges[e].color = new_color;
            }
            for (int e : path) {
                agent_slot[edges[e].agent][edges[e].color] = e;
                object_slot[edges[e].object][edges[e].color] = e;
            }
        }
        edges[ei].color = alpha;
        agent_slot[u][alpha] = ei;
        object_slot[v][alpha] = ei;
    }

    std::vector<Matching> out(km.k);
    for (auto& m : out) m.assigned.assign(km.num_agents, kUnmatched);
    for (const auto& e : edges) out[e.color].assigned[e.agent] = e.object;
    return out;
}

namespace {

const std::set<std::string> kInstanceFields = {"agents", "objects", "edges",
                                               "prefs",  "matroid", "alternatives"};

}  // namespace

MatchingInstance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!kInstanceFields.count(key)) throw ParseError("unknown field " + key);
    }
    for (const char* field : {"agents", "objects", "edges", "prefs"})
        if (!doc.contains(field)) throw ParseError(std::string("missing field ") + field);

    MatchingInstance inst;
    for (const auto& a : doc["agents"]) {
        if (!a.is_string()) throw ParseError("agents must be strings");
        inst.agent_names.push_back(a.get<std::string>());
    }
    for (const auto& o : doc["objects"]) {
        if (!o.is_string()) throw ParseError("objects must be strings");
        inst.object_names.push_back(o.get<std::string>());
    }
    {
        std::set<std::string> names(inst.agent_names.begin(), inst.agent_names.end());
        if (names.size() != inst.agent_names.size()) throw ValidationError("duplicate agent name");
    }
    {
        std::set<std::string> names(inst.object_names.begin(), inst.object_names.end());
        if (names.size() != inst.object_names.size()) throw ValidationError("duplicate object name");
    }

    inst.adjacency.assign(inst.agent_names.size(), {});
    if (!doc["edges"].is_array()) throw ParseError("edges must be an array");
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("edges must be [agent, object] pairs");
        int a = inst.agent_index(e[0].get<std::string>());
        int o = inst.object_index(e[1].get<std::string>());
        if (a < 0) throw ValidationError("edge references unknown agent " + e[0].get<std::string>());
        if (o < 0) throw ValidationError("edge references unknown object " + e[1].get<std::string>());
        inst.adjacency[a].push_back(o);
    }
    for (auto& adj : inst.adjacency) {
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw ValidationError("duplicate edge");
    }

    if (!doc["prefs"].is_object()) throw ParseError("prefs must be an object keyed by agent");
    std::vector<std::vector<std::pair<int, int>>> pair_lists(inst.agent_names.size());
    for (const auto& [agent_name, pair_doc] : doc["prefs"].items()) {
        int a = inst.agent_index(agent_name);
        if (a < 0) throw ValidationError("prefs reference unknown agent " + agent_name);
        if (!pair_doc.is_array()) throw ParseError("prefs entries must be arrays of pairs");
        for (const auto& p : pair_doc) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw ParseError("preference pairs must be [better, worse]");
            int better = inst.object_index(p[0].get<std::string>());
            int worse = inst.object_index(p[1].get<std::string>());
            if (better < 0 || worse < 0)
                throw ValidationError("preference pair references unknown object");
            pair_lists[a].emplace_back(better, worse);
        }
    }
    for (std::size_t a = 0; a < inst.agent_names.size(); ++a)
        inst.prefs.push_back(build_relation(static_cast<int>(a), inst.adjacency[a], pair_lists[a]));

    if (doc.contains("matroid")) inst.matroid_spec = doc["matroid"];
    else inst.matroid_spec = nullptr;

    if (doc.contains("alternatives")) {
        std::string kind = doc["alternatives"].get<std::string>();
        if (kind == "all") inst.kind = AlternativeKind::AllMatchings;
        else if (kind == "constrained") inst.kind = AlternativeKind::Constrained;
        else if (kind == "a_perfect") inst.kind = AlternativeKind::APerfect;
        else throw ParseError("unknown alternatives kind " + kind);
    } else {
        inst.kind = inst.has_matroid() ? AlternativeKind::Constrained : AlternativeKind::AllMatchings;
    }

    validate_instance(inst);
    return inst;
}

std::string serialize_instance(const MatchingInstance& instance) {
    json doc;
    doc["agents"] = instance.agent_names;
    doc["objects"] = instance.object_names;
    json edges = json::array();
    for (int a = 0; a < instance.num_agents(); ++a)
        for (int o : instance.adjacency[a])
            edges.push_back({instance.agent_names[a], instance.object_names[o]});
    doc["edges"] = edges;
    json prefs = json::object();
    for (int a = 0; a < instance.num_agents(); ++a) {
        json pairs = json::array();
        for (auto [better, worse] : instance.prefs[a].strict_pairs())
            pairs.push_back({instance.object_names[better], instance.object_names[worse]});
        prefs[instance.agent_names[a]] = pairs;
    }
    doc["prefs"] = prefs;
    doc["matroid"] = instance.matroid_spec;
    switch (instance.kind) {
        case AlternativeKind::AllMatchings: doc["alternatives"] = "all"; break;
        case AlternativeKind::Constrained: doc["alternatives"] = "constrained"; break;
        case AlternativeKind::APerfect: doc["alternatives"] = "a_perfect"; break;
    }
    return doc.dump(2) + "\n";
}

json matching_to_json(const MatchingInstance& instance, const Matching& m) {
    json doc = json::object();
    for (int a = 0; a < instance.num_agents(); ++a) {
        if (m.assigned[a] == kUnmatched) doc[instance.agent_names[a]] = nullptr;
        else doc[instance.agent_names[a]] = instance.object_names[m.assigned[a]];
    }
    return doc;
}

Matching matching_from_json(const MatchingInstance& instance, const json& doc) {
    if (!doc.is_object()) throw ParseError("a matching must be a JSON object keyed by agent");
    Matching m;
    m.assigned.assign(instance.num_agents(), kUnmatched);
    for (const auto& [agent_name, value] : doc.items()) {
        int a = instance.agent_index(agent_name);
        if (a < 0) throw ValidationError("matching references unknown agent " + agent_name);
        if (value.is_null()) continue;
        if (!value.is_string()) throw ParseError("matching values must be object names or null");
        int o = instance.object_index(value.get<std::string>());
        if (o < 0) throw ValidationError("matching references unknown object " + value.get<std::string>());
        m.assigned[a] = o;
    }
    require_feasible(instance, m);
    return m;
}

json matching_set_to_json(const MatchingInstance& instance, const MatchingSet& set) {
    json doc = json::array();
    for (const auto& m : set.members) doc.push_back(matching_to_json(instance, m));
    return doc;
}

MatchingSet matching_set_from_json(const MatchingInstance& instance, const json& doc) {
    if (!doc.is_array()) throw ParseError("a matching set must be a JSON array of matchings");
    MatchingSet set;
    for (const auto& entry : doc) set.members.push_back(matching_from_json(instance, entry));
    if (set.members.empty()) throw ValidationError("matching set must be nonempty");
    return set;
}

}  // namespace condorcet
