#include "condorcet/prefs.hpp"

#include <algorithm>
#include <string>

namespace condorcet {

namespace {

std::string object_name(int object) { return "object " + std::to_string(object); }

}  // namespace

int PreferenceRelation::local_index(int object) const {
    auto it = std::lower_bound(adjacent_.begin(), adjacent_.end(), object);
    if (it == adjacent_.end() || *it != object) return -1;
    return static_cast<int>(it - adjacent_.begin());
}

std::vector<std::pair<int, int>> PreferenceRelation::strict_pairs() const {
    std::vector<std::pair<int, int>> out;
    const int k = static_cast<int>(adjacent_.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (beats_local(i, j)) out.emplace_back(adjacent_[i], adjacent_[j]);
    return out;
}

bool PreferenceRelation::strictly_prefers(int better, int worse) const {
    int i = local_index(better);
    int j = local_index(worse);
    if (i < 0) throw UnknownObjectError(object_name(better) + " is not adjacent to agent " + std::to_string(agent_));
    if (j < 0) throw UnknownObjectError(object_name(worse) + " is not adjacent to agent " + std::to_string(agent_));
    return beats_local(i, j);
}

Comparison PreferenceRelation::compare(std::optional<int> x, std::optional<int> y) const {
    if (!x && !y) return Comparison::Indifferent;
    if (!y) {
        if (local_index(*x) < 0) throw UnknownObjectError(object_name(*x) + " is not adjacent to agent " + std::to_string(agent_));
        return Comparison::Better;
    }
    if (!x) {
        if (local_index(*y) < 0) throw UnknownObjectError(object_name(*y) + " is not adjacent to agent " + std::to_string(agent_));
        return Comparison::Worse;
    }
    if (strictly_prefers(*x, *y)) return Comparison::Better;
    if (strictly_prefers(*y, *x)) return Comparison::Worse;
    return Comparison::Indifferent;
}

PreferenceClass PreferenceRelation::classify() const {
    const int k = static_cast<int>(adjacent_.size());
    bool complete = true;
    for (int i = 0; i < k && complete; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!beats_local(i, j) && !beats_local(j, i)) {
                complete = false;
                break;
            }
    if (complete) return PreferenceClass::Strict;

    // Weak iff the indifference relation is transitive.
    auto indifferent = [&](int i, int j) { return !beats_local(i, j) && !beats_local(j, i); };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j || !indifferent(i, j)) continue;
            for (int l = 0; l < k; ++l) {
                if (l == i || l == j) continue;
                if (indifferent(j, l) && !indifferent(i, l)) return PreferenceClass::Partial;
            }
        }
    return PreferenceClass::Weak;
}

std::vector<int> PreferenceRelation::maximal_elements(std::span<const int> pool) const {
    std::vector<int> locals;
    locals.reserve(pool.size());
    for (int o : pool) {
        int i = local_index(o);
        if (i < 0) throw UnknownObjectError(object_name(o) + " is not adjacent to agent " + std::to_string(agent_));
        locals.push_back(i);
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < locals.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < locals.size() && !dominated; ++j)
            if (beats_local(locals[j], locals[i])) dominated = true;
        if (!dominated) out.push_back(pool[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int PreferenceRelation::rank_weight(int object, int ground_size) const {
    if (classify() == PreferenceClass::Partial)
        throw NotWeakRankingError("rank_weight is only defined for weak rankings");
    int i = local_index(object);
    if (i < 0) throw UnknownObjectError(object_name(object) + " is not adjacent to agent " + std::to_string(agent_));
    int dominators = 0;
    for (std::size_t j = 0; j < adjacent_.size(); ++j)
        if (beats_local(static_cast<int>(j), i)) ++dominators;
    return ground_size - dominators;
}

PreferenceRelation PreferenceRelation::renamed(std::span<const int> rename) const {
    if (rename.size() != adjacent_.size())
        throw ValidationError("renamed: size mismatch");
    std::vector<std::pair<int, int>> pairs;
    const int k = static_cast<int>(adjacent_.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (beats_local(i, j)) pairs.emplace_back(rename[i], rename[j]);
    std::vector<int> adj(rename.begin(), rename.end());
    return build_relation(agent_, std::move(adj), pairs);
}

bool PreferenceRelation::operator==(const PreferenceRelation& other) const {
    return agent_ == other.agent_ && adjacent_ == other.adjacent_ && matrix_ == other.matrix_;
}

PreferenceRelation build_relation(int agent, std::vector<int> adjacent,
                                  std::span<const std::pair<int, int>> pairs) {
    std::sort(adjacent.begin(), adjacent.end());
    if (std::adjacent_find(adjacent.begin(), adjacent.end()) != adjacent.end())
        throw ValidationError("duplicate object in adjacency of agent " + std::to_string(agent));

    PreferenceRelation rel;
    rel.agent_ = agent;
    rel.adjacent_ = std::move(adjacent);
    const int k = static_cast<int>(rel.adjacent_.size());
    rel.matrix_.assign(static_cast<std::size_t>(k) * k, 0);

    for (auto [better, worse] : pairs) {
        int i = rel.local_index(better);
        int j = rel.local_index(worse);
        if (i < 0) throw UnknownObjectError(object_name(better) + " is not adjacent to agent " + std::to_string(agent));
        if (j < 0) throw UnknownObjectError(object_name(worse) + " is not adjacent to agent " + std::to_string(agent));
        rel.matrix_[static_cast<std::size_t>(i) * k + j] = 1;
    }

    // Floyd-Warshall closure; a reflexive entry afterwards means the input had a cycle.
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i) {
            if (!rel.matrix_[static_cast<std::size_t>(i) * k + m]) continue;
            for (int j = 0; j < k; ++j)
                if (rel.matrix_[static_cast<std::size_t>(m) * k + j])
                    rel.matrix_[static_cast<std::size_t>(i) * k + j] = 1;
        }
    for (int i = 0; i < k; ++i)
        if (rel.matrix_[static_cast<std::size_t>(i) * k + i])
            throw CycleError("preference pairs of agent " + std::to_string(agent) + " contain a cycle");
    return rel;
}

}  // namespace condorcet
