#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>

#include "condorcet/popularity.hpp"

namespace condorcet {

namespace {

// Margin of `members` against competitor `n`, without building witness lists.
int quick_margin(const MatchingInstance& instance, const std::vector<Matching>& members,
                 const Matching& n) {
    int margin = 0;
    for (int a = 0; a < instance.num_agents(); ++a) {
        bool any_beats = false;
        bool all_beaten = true;
        auto na = n.at(a);
        for (const auto& m : members) {
            Comparison c = instance.prefs[a].compare(m.at(a), na);
            if (c == Comparison::Better) any_beats = true;
            if (c != Comparison::Worse) all_beaten = false;
        }
        if (any_beats) ++margin;
        else if (all_beaten && !members.empty()) --margin;
    }
    return margin;
}

// Most-recently-useful cache of counterexamples; refutes most candidates
// without running the full best-response machinery.
class KillerPool {
public:
    bool refutes(const MatchingInstance& instance, const std::vector<Matching>& members) {
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            if (quick_margin(instance, members, pool_[i]) < 0) {
                if (i > 0) std::rotate(pool_.begin(), pool_.begin() + i, pool_.begin() + i + 1);
                return true;
            }
        }
        return false;
    }
    void add(Matching m) {
        pool_.insert(pool_.begin(), std::move(m));
        if (pool_.size() > 64) pool_.pop_back();
    }

private:
    std::vector<Matching> pool_;
};

bool object_singleton_feasible(const MatchingInstance& instance, int o) {
    if (instance.kind != AlternativeKind::Constrained) return true;
    std::vector<int> single{o};
    return instance.matroid().is_independent(single);
}

bool is_maximal_alternative(const MatchingInstance& instance, const Matching& m) {
    if (instance.kind == AlternativeKind::APerfect) return true;
    std::vector<char> used(instance.num_objects(), 0);
    std::vector<int> objects;
    for (int o : m.assigned)
        if (o != kUnmatched) {
            used[o] = 1;
            objects.push_back(o);
        }
    for (int a = 0; a < instance.num_agents(); ++a) {
        if (m.assigned[a] != kUnmatched) continue;
        for (int o : instance.adjacency[a]) {
            if (used[o]) continue;
            if (instance.kind == AlternativeKind::Constrained) {
                objects.push_back(o);
                bool ok = instance.matroid().is_independent(objects);
                objects.pop_back();
                if (!ok) continue;
            }
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> agent_interchange_classes(const MatchingInstance& instance) {
    const int n = instance.num_agents();
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of(n, -1);
    for (int a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            int rep = classes[c][0];
            if (instance.adjacency[a] == instance.adjacency[rep] &&
                instance.prefs[a].strict_pairs() == instance.prefs[rep].strict_pairs()) {
                classes[c].push_back(a);
                class_of[a] = static_cast<int>(c);
                break;
            }
        }
        if (class_of[a] < 0) {
            class_of[a] = static_cast<int>(classes.size());
            classes.push_back({a});
        }
    }
    return classes;
}

namespace {

// Whether swapping objects x and y is an automorphism of the matroid spec.
// Conservative: may answer false for symmetries it cannot see.
bool spec_allows_swap(const nlohmann::json& spec, const MatchingInstance& instance, int x, int y) {
    if (spec.is_null()) return true;
    std::string type = spec["type"].get<std::string>();
    if (type == "free" || type == "uniform") return true;
    if (type == "partition") {
        auto part_of = [&](int o) {
            const auto& parts = spec["parts"];
            for (std::size_t p = 0; p < parts.size(); ++p)
                for (const auto& name : parts[p])
                    if (instance.object_index(name.get<std::string>()) == o)
                        return static_cast<int>(p);
            return -1;
        };
        return part_of(x) == part_of(y);
    }
    if (type == "graphic") {
        auto ends = [&](int o) -> std::optional<std::pair<std::string, std::string>> {
            for (const auto& [name, uv] : spec["edge_map"].items()) {
                if (instance.object_index(name) != o) continue;
                std::string u = uv[0].get<std::string>(), v = uv[1].get<std::string>();
                if (v < u) std::swap(u, v);
                return std::make_pair(u, v);
            }
            return std::nullopt;
        };
        return ends(x) == ends(y);
    }
    if (type == "direct_sum" || type == "truncated_union") {
        auto covering_part = [&](int o) -> int {
            const auto& parts = spec["parts"];
            for (std::size_t p = 0; p < parts.size(); ++p) {
                const auto& part = parts[p];
                std::string ptype = part["type"].get<std::string>();
                if (part.contains("ground")) {
                    for (const auto& name : part["ground"])
                        if (instance.object_index(name.get<std::string>()) == o)
                            return static_cast<int>(p);
                } else if (ptype == "partition") {
                    for (const auto& pp : part["parts"])
                        for (const auto& name : pp)
                            if (instance.object_index(name.get<std::string>()) == o)
                                return static_cast<int>(p);
                } else if (ptype == "graphic") {
                    for (const auto& [name, uv] : part["edge_map"].items()) {
                        (void)uv;
                        if (instance.object_index(name) == o) return static_cast<int>(p);
                    }
                }
            }
            return -1;
        };
        int px = covering_part(x);
        int py = covering_part(y);
        if (px != py) return false;
        if (px < 0) return true;  // both uncovered, hence free
        return spec_allows_swap(spec["parts"][px], instance, x, y);
    }
    return false;
}

}  // namespace

std::vector<std::vector<int>> object_interchange_classes(const MatchingInstance& instance) {
    const int n = instance.num_agents();
    const int m = instance.num_objects();
    std::vector<std::vector<int>> adjacent_agents(m);
    for (int a = 0; a < n; ++a)
        for (int o : instance.adjacency[a]) adjacent_agents[o].push_back(a);

    auto interchangeable = [&](int x, int y) {
        if (adjacent_agents[x] != adjacent_agents[y]) return false;
        for (int a : adjacent_agents[x]) {
            const auto& rel = instance.prefs[a];
            // The transposition (x y) must fix the relation.
            if (rel.strictly_prefers(x, y) || rel.strictly_prefers(y, x)) return false;
            for (int w : instance.adjacency[a]) {
                if (w == x || w == y) continue;
                if (rel.strictly_prefers(x, w) != rel.strictly_prefers(y, w)) return false;
                if (rel.strictly_prefers(w, x) != rel.strictly_prefers(w, y)) return false;
            }
        }
        if (instance.kind == AlternativeKind::Constrained &&
            !spec_allows_swap(instance.matroid_spec, instance, x, y))
            return false;
        return true;
    };

    std::vector<std::vector<int>> classes;
    std::vector<int> class_of(m, -1);
    for (int o = 0; o < m; ++o) {
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (interchangeable(classes[c][0], o)) {
                classes[c].push_back(o);
                class_of[o] = static_cast<int>(c);
                break;
            }
        if (class_of[o] < 0) {
            class_of[o] = static_cast<int>(classes.size());
            classes.push_back({o});
        }
    }
    return classes;
}

namespace {

// ---------------------------------------------------------------------------
// Class-collapsed search for a popular set of <= 2 matchings. Objects within
// an interchange class occupy identical preference positions, so popularity
// of a pair depends only on which (class, class) outcome each agent receives
// and on per-member injectivity, which the class margins encode. Sound and
// complete for unconstrained instances; members are restricted to maximal
// matchings, which preserves existence.
// ---------------------------------------------------------------------------
class TypedPairSearch {
public:
    TypedPairSearch(const MatchingInstance& instance, long long type_budget, bool diagonal_only)
        : inst_(instance), budget_(type_budget), diagonal_only_(diagonal_only) {
        agent_classes_ = agent_interchange_classes(instance);
        object_classes_ = object_interchange_classes(instance);
        class_of_object_.assign(instance.num_objects(), -1);
        for (std::size_t c = 0; c < object_classes_.size(); ++c)
            for (int o : object_classes_[c]) class_of_object_[o] = static_cast<int>(c);
        adjacent_classes_.resize(agent_classes_.size());
        for (std::size_t i = 0; i < agent_classes_.size(); ++i) {
            std::vector<char> seen(object_classes_.size(), 0);
            for (int o : inst_.adjacency[agent_classes_[i][0]])
                if (!seen[class_of_object_[o]]) {
                    seen[class_of_object_[o]] = 1;
                    adjacent_classes_[i].push_back(class_of_object_[o]);
                }
        }
        // A maximal member can only leave agents of class i unmatched if the
        // classes adjacent to i can be exhausted, which needs at least as many
        // competing agents as those classes hold objects.
        can_null_.assign(agent_classes_.size(), 0);
        for (std::size_t i = 0; i < agent_classes_.size(); ++i) {
            long long capacity = 0;
            std::vector<char> oc_mark(object_classes_.size(), 0);
            for (int oc : adjacent_classes_[i]) {
                capacity += static_cast<long long>(object_classes_[oc].size());
                oc_mark[oc] = 1;
            }
            long long demand = 0;
            for (std::size_t j = 0; j < agent_classes_.size(); ++j) {
                bool touches = false;
                for (int oc : adjacent_classes_[j])
                    if (oc_mark[oc]) touches = true;
                if (touches) demand += static_cast<long long>(agent_classes_[j].size());
            }
            can_null_[i] = demand >= capacity;
        }
    }

    std::optional<MatchingSet> run() {
        remaining_[0].clear();
        remaining_[1].clear();
        for (const auto& cls : object_classes_) {
            remaining_[0].push_back(static_cast<int>(cls.size()));
            remaining_[1].push_back(static_cast<int>(cls.size()));
        }
        counts_.assign(agent_classes_.size(), {});
        has_null_[0].assign(agent_classes_.size(), 0);
        has_null_[1].assign(agent_classes_.size(), 0);
        std::optional<MatchingSet> found;
        enumerate_class(0, found);
        return found;
    }

private:
    struct Cell {
        int c1;  // object class for the first member, -1 for unmatched
        int c2;
        int count;
    };

    void enumerate_class(std::size_t class_idx, std::optional<MatchingSet>& found) {
        if (found) return;
        if (class_idx == agent_classes_.size()) {
            if (maximality_holds()) try_leaf(found);
            return;
        }
        std::vector<Cell> cells;
        const auto& adj = adjacent_classes_[class_idx];
        for (int c1_pos = -1; c1_pos < static_cast<int>(adj.size()); ++c1_pos)
            for (int c2_pos = -1; c2_pos < static_cast<int>(adj.size()); ++c2_pos) {
                int c1 = c1_pos < 0 ? -1 : adj[c1_pos];
                int c2 = c2_pos < 0 ? -1 : adj[c2_pos];
                if ((c1 < 0 || c2 < 0) && !can_null_[class_idx]) continue;
                if (diagonal_only_ && c1 != c2) continue;
                cells.push_back({c1, c2, 0});
            }
        int agents = static_cast<int>(agent_classes_[class_idx].size());
        fill_cells(class_idx, cells, 0, agents, found);
    }

    void fill_cells(std::size_t class_idx, std::vector<Cell>& cells, std::size_t cell_idx,
                    int agents_left, std::optional<MatchingSet>& found) {
        if (found) return;
        if (--budget_ <= 0)
            throw TooLargeError("class-collapsed popular-pair search exceeded its budget");
        if (cell_idx == cells.size()) {
            if (agents_left > 0) return;
            counts_[class_idx] = cells;
            enumerate_class(class_idx + 1, found);
            return;
        }
        auto& cell = cells[cell_idx];
        int cap = agents_left;
        if (cell.c1 >= 0) cap = std::min(cap, remaining_[0][cell.c1]);
        if (cell.c2 >= 0) cap = std::min(cap, remaining_[1][cell.c2]);
        for (int take = 0; take <= cap; ++take) {
            cell.count = take;
            if (cell.c1 >= 0) remaining_[0][cell.c1] -= take;
            if (cell.c2 >= 0) remaining_[1][cell.c2] -= take;
            bool null1 = cell.c1 < 0 && take > 0;
            bool null2 = cell.c2 < 0 && take > 0;
            char old1 = has_null_[0][class_idx], old2 = has_null_[1][class_idx];
            if (null1) has_null_[0][class_idx] = 1;
            if (null2) has_null_[1][class_idx] = 1;
            fill_cells(class_idx, cells, cell_idx + 1, agents_left - take, found);
            has_null_[0][class_idx] = old1;
            has_null_[1][class_idx] = old2;
            if (cell.c1 >= 0) remaining_[0][cell.c1] += take;
            if (cell.c2 >= 0) remaining_[1][cell.c2] += take;
            if (found) {
                cell.count = 0;
                return;
            }
        }
        cell.count = 0;
    }

    // Members must be maximal: a class leaving agents unmatched in member j
    // requires every adjacent object class to be exhausted in member j.
    bool maximality_holds() const {
        for (std::size_t i = 0; i < agent_classes_.size(); ++i)
            for (int j = 0; j < 2; ++j)
                if (has_null_[j][i])
                    for (int oc : adjacent_classes_[i])
                        if (remaining_[j][oc] > 0) return false;
        return true;
    }

    void try_leaf(std::optional<MatchingSet>& found) {
        Matching m1{std::vector<int>(inst_.num_agents(), kUnmatched)};
        Matching m2{std::vector<int>(inst_.num_agents(), kUnmatched)};
        std::vector<std::size_t> next1(object_classes_.size(), 0), next2(object_classes_.size(), 0);
        for (std::size_t i = 0; i < agent_classes_.size(); ++i) {
            std::size_t agent_pos = 0;
            for (const auto& cell : counts_[i])
                for (int t = 0; t < cell.count; ++t) {
                    int a = agent_classes_[i][agent_pos++];
                    if (cell.c1 >= 0) m1.assigned[a] = object_classes_[cell.c1][next1[cell.c1]++];
                    if (cell.c2 >= 0) m2.assigned[a] = object_classes_[cell.c2][next2[cell.c2]++];
                }
        }
        std::vector<Matching> members{m1, m2};
        if (pool_.refutes(inst_, members)) return;
        MatchingSet set{members};
        PopularityResult result = verify_popular(inst_, set);
        if (result.popular) found = set;
        else pool_.add(*result.counterexample);
    }

    const MatchingInstance& inst_;
    long long budget_;
    bool diagonal_only_;
    std::vector<std::vector<int>> agent_classes_;
    std::vector<std::vector<int>> object_classes_;
    std::vector<int> class_of_object_;
    std::vector<std::vector<int>> adjacent_classes_;
    std::vector<std::vector<Cell>> counts_;
    std::vector<int> remaining_[2];
    std::vector<char> has_null_[2];
    std::vector<char> can_null_;
    KillerPool pool_;
};

// Greedy attempt at k maximal members that jointly give every agent an
// undominated obtainable object; such a set beats nobody's best option, so it
// is popular whenever it covers everyone.
std::optional<MatchingSet> build_undominated_cover(const MatchingInstance& instance, int k) {
    const int n = instance.num_agents();
    const bool constrained = instance.kind == AlternativeKind::Constrained;
    std::vector<std::vector<int>> pools(n);
    for (int a = 0; a < n; ++a) {
        std::vector<int> obtainable;
        for (int o : instance.adjacency[a])
            if (object_singleton_feasible(instance, o)) obtainable.push_back(o);
        if (!obtainable.empty()) pools[a] = instance.prefs[a].maximal_elements(obtainable);
    }
    std::vector<char> covered(n, 0);
    for (int a = 0; a < n; ++a)
        if (pools[a].empty()) covered[a] = 1;

    MatchingSet set;
    for (int round = 0; round < k; ++round) {
        Matching m{std::vector<int>(n, kUnmatched)};
        std::vector<char> used(instance.num_objects(), 0);
        std::vector<int> chosen;
        auto try_assign = [&](int a, const std::vector<int>& options) {
            for (int o : options) {
                if (used[o]) continue;
                if (constrained) {
                    chosen.push_back(o);
                    if (!instance.matroid().is_independent(chosen)) {
                        chosen.pop_back();
                        continue;
                    }
                }
                used[o] = 1;
                m.assigned[a] = o;
                return true;
            }
            return false;
        };
        for (int a = 0; a < n; ++a)
            if (!covered[a] && try_assign(a, pools[a])) covered[a] = 1;
        for (int a = 0; a < n; ++a)
            if (m.assigned[a] == kUnmatched) try_assign(a, instance.adjacency[a]);
        set.members.push_back(m);
    }
    for (int a = 0; a < n; ++a)
        if (!covered[a]) return std::nullopt;
    // Duplicates add nothing; keep distinct members only.
    std::vector<Matching> unique_members;
    for (const auto& m : set.members)
        if (std::find(unique_members.begin(), unique_members.end(), m) == unique_members.end())
            unique_members.push_back(m);
    set.members = unique_members;
    return set;
}

struct SubsetCheck {
    bool popular = false;
};

}  // namespace

namespace {

// Candidate check against a precomputed alternative list: killer pool first,
// then a full scan with early exit; violators feed the pool.
class EnumeratedChecker {
public:
    EnumeratedChecker(const MatchingInstance& instance, std::vector<Matching> alternatives)
        : inst_(instance), alternatives_(std::move(alternatives)) {}

    const std::vector<Matching>& alternatives() const { return alternatives_; }

    std::vector<int> maximal_indices() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < alternatives_.size(); ++i)
            if (is_maximal_alternative(inst_, alternatives_[i])) out.push_back(static_cast<int>(i));
        return out;
    }

    bool is_popular(const std::vector<Matching>& members) {
        if (pool_.refutes(inst_, members)) return false;
        for (const auto& n : alternatives_) {
            if (quick_margin(inst_, members, n) < 0) {
                pool_.add(n);
                return false;
            }
        }
        return true;
    }

private:
    const MatchingInstance& inst_;
    std::vector<Matching> alternatives_;
    KillerPool pool_;
};

}  // namespace

bool popular_set_of_size_exists(const MatchingInstance& instance, int size, int edge_cap) {
    if (size < 1 || size > 2)
        throw ValidationError("popular_set_of_size_exists supports sizes 1 and 2");
    std::vector<Matching> alternatives;
    bool enumerable = true;
    try {
        alternatives = enumerate_alternatives(instance, edge_cap);
    } catch (const TooLargeError&) {
        enumerable = false;
    }
    if (enumerable) {
        EnumeratedChecker checker(instance, std::move(alternatives));
        auto maximal = checker.maximal_indices();
        for (int i : maximal)
            if (checker.is_popular({checker.alternatives()[i]})) return true;
        if (size >= 2) {
            for (std::size_t x = 0; x < maximal.size(); ++x)
                for (std::size_t y = x + 1; y < maximal.size(); ++y)
                    if (checker.is_popular({checker.alternatives()[maximal[x]],
                                            checker.alternatives()[maximal[y]]}))
                        return true;
        }
        return false;
    }
    if (instance.kind == AlternativeKind::Constrained)
        throw TooLargeError("constrained instance is too large for the popular-pair search");
    TypedPairSearch search(instance, 50'000'000, size == 1);
    return search.run().has_value();
}

DimensionResult brute_force_condorcet_dimension(const MatchingInstance& instance, bool strict_mode,
                                                int edge_cap) {
    std::vector<Matching> alternatives;
    bool enumerable = true;
    try {
        alternatives = enumerate_alternatives(instance, edge_cap);
    } catch (const TooLargeError&) {
        enumerable = false;
    }

    if (strict_mode) {
        if (!enumerable) throw TooLargeError("strict dimension search requires an enumerable instance");
        const int count = static_cast<int>(alternatives.size());
        std::vector<int> idx;
        long long budget = 3'000'000;
        std::optional<MatchingSet> witness;
        std::function<bool(int, int)> scan = [&](int k, int start) -> bool {
            if (static_cast<int>(idx.size()) == k) {
                if (budget-- <= 0) throw TooLargeError("strict dimension search exceeded its budget");
                std::vector<Matching> members;
                for (int i : idx) members.push_back(alternatives[i]);
                for (const auto& n : alternatives) {
                    bool is_member = false;
                    for (const auto& m : members)
                        if (m == n) is_member = true;
                    if (is_member) continue;
                    if (quick_margin(instance, members, n) <= 0) return false;
                }
                witness = MatchingSet{members};
                return true;
            }
            for (int i = start; i < count; ++i) {
                idx.push_back(i);
                if (scan(k, i + 1)) return true;
                idx.pop_back();
            }
            return false;
        };
        for (int k = 1; k <= count; ++k) {
            idx.clear();
            if (scan(k, 0)) return {k, *witness};
        }
        throw Error("strict dimension search failed to terminate");
    }

    if (enumerable) {
        EnumeratedChecker checker(instance, std::move(alternatives));
        auto maximal = checker.maximal_indices();
        const int count = static_cast<int>(maximal.size());
        for (int k = 1; k <= count; ++k) {
            if (k >= 3) {
                auto cover = build_undominated_cover(instance, k);
                if (cover && static_cast<int>(cover->members.size()) == k &&
                    checker.is_popular(cover->members))
                    return {k, *cover};
            }
            // lexicographic k-subsets of the maximal alternatives
            std::vector<int> idx;
            long long budget = 40'000'000;
            std::optional<MatchingSet> witness;
            std::function<bool(int)> scan = [&](int start) -> bool {
                if (static_cast<int>(idx.size()) == k) {
                    if (budget-- <= 0)
                        throw TooLargeError("dimension search exceeded its subset budget");
                    std::vector<Matching> members;
                    for (int i : idx) members.push_back(checker.alternatives()[maximal[i]]);
                    if (checker.is_popular(members)) {
                        witness = MatchingSet{members};
                        return true;
                    }
                    return false;
                }
                for (int i = start; i < count; ++i) {
                    idx.push_back(i);
                    if (scan(i + 1)) return true;
                    idx.pop_back();
                }
                return false;
            };
            if (scan(0)) return {k, *witness};
        }
        throw Error("dimension search failed to terminate");
    }

    // Too large to enumerate: class-collapsed refutation for levels 1 and 2,
    // cover witnesses beyond.
    if (instance.kind == AlternativeKind::Constrained)
        throw TooLargeError("constrained instance is too large for the dimension search");
    {
        TypedPairSearch singles(instance, 50'000'000, true);
        auto found = singles.run();
        if (found) {
            MatchingSet single{{found->members.front()}};
            if (!verify_popular(instance, single).popular)
                throw Error("diagonal popular pair did not yield a popular singleton");
            return {1, single};
        }
    }
    {
        TypedPairSearch pairs(instance, 50'000'000, false);
        auto found = pairs.run();
        if (found) return {2, *found};
    }
    for (int k = 3; k <= instance.num_agents() + 1; ++k) {
        auto cover = build_undominated_cover(instance, k);
        if (cover && static_cast<int>(cover->members.size()) == k &&
            verify_popular(instance, *cover).popular)
            return {k, *cover};
    }
    throw TooLargeError("dimension exceeds the cover heuristic's reach on a non-enumerable instance");
}

// ---------------------------------------------------------------------------
// Pareto-matching existence via DFS over maximal matchings up to
// interchangeability, with domination pruning.
// ---------------------------------------------------------------------------

namespace {

class ParetoDfs {
public:
    ParetoDfs(const MatchingInstance& instance, long long budget)
        : inst_(instance), budget_(budget) {
        auto aclasses = agent_interchange_classes(instance);
        class_of_agent_.assign(instance.num_agents(), -1);
        for (std::size_t c = 0; c < aclasses.size(); ++c)
            for (int a : aclasses[c]) class_of_agent_[a] = static_cast<int>(c);
        for (const auto& cls : aclasses)
            for (int a : cls) order_.push_back(a);

        auto oclasses = object_interchange_classes(instance);
        class_of_object_.assign(instance.num_objects(), -1);
        object_classes_ = oclasses;
        for (std::size_t c = 0; c < oclasses.size(); ++c)
            for (int o : oclasses[c]) class_of_object_[o] = static_cast<int>(c);

        // position after which an object class has no adjacent agent left
        last_use_.assign(object_classes_.size(), -1);
        for (std::size_t pos = 0; pos < order_.size(); ++pos)
            for (int o : inst_.adjacency[order_[pos]])
                last_use_[class_of_object_[o]] = std::max(last_use_[class_of_object_[o]],
                                                          static_cast<int>(pos));
    }

    ParetoMatchingSearch run() {
        current_.assigned.assign(inst_.num_agents(), kUnmatched);
        used_.assign(inst_.num_objects(), 0);
        result_ = {};
        completed_ = true;
        dfs(0);
        ParetoMatchingSearch out;
        out.completed = completed_;
        out.witness = result_;
        return out;
    }

private:
    bool out_of_budget() {
        if (budget_-- > 0) return false;
        completed_ = false;
        return true;
    }

    // A decided agent that could strictly improve onto a dead object (free and
    // unusable by later agents) dominates every completion.
    bool dead_object_improvement(int upto_pos) const {
        for (std::size_t c = 0; c < object_classes_.size(); ++c) {
            if (last_use_[c] > upto_pos) continue;
            int dead = -1;
            for (int o : object_classes_[c])
                if (!used_[o]) {
                    dead = o;
                    break;
                }
            if (dead < 0) continue;
            for (int pos = 0; pos <= upto_pos; ++pos) {
                int a = order_[pos];
                if (!inst_.has_edge(a, dead)) continue;
                if (inst_.prefs[a].compare(dead, current_.at(a)) == Comparison::Better) return true;
            }
        }
        return false;
    }

    // Exchange among decided agents (optionally seeded by a dead object) that
    // leaves nobody worse and somebody strictly better; dominates every
    // completion because it only touches decided agents' objects.
    bool internal_exchange(int upto_pos) const {
        const int d = upto_pos + 1;
        // arcs receiver -> provider: receiver can take provider's object
        std::vector<std::vector<std::pair<int, bool>>> arcs(d);  // (provider, strict)
        for (int i = 0; i < d; ++i) {
            int receiver = order_[i];
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                int provider = order_[j];
                int obj = current_.assigned[provider];
                if (obj == kUnmatched || !inst_.has_edge(receiver, obj)) continue;
                Comparison c = inst_.prefs[receiver].compare(obj, current_.at(receiver));
                if (c == Comparison::Worse) continue;
                arcs[i].emplace_back(j, c == Comparison::Better);
            }
        }
        // chain seeds: receiver takes a dead free object
        std::vector<std::pair<int, bool>> seeds;  // (receiver, strict)
        for (std::size_t c = 0; c < object_classes_.size(); ++c) {
            if (last_use_[c] > upto_pos) continue;
            int dead = -1;
            for (int o : object_classes_[c])
                if (!used_[o]) {
                    dead = o;
                    break;
                }
            if (dead < 0) continue;
            for (int i = 0; i < d; ++i) {
                int receiver = order_[i];
                if (!inst_.has_edge(receiver, dead)) continue;
                Comparison cc = inst_.prefs[receiver].compare(dead, current_.at(receiver));
                if (cc == Comparison::Worse) continue;
                seeds.emplace_back(i, cc == Comparison::Better);
            }
        }
        // A dominating rearrangement is a cycle in `arcs` with a strict arc, or
        // a path of arcs ending in a seed with a strict step anywhere.
        // BFS over (node, strict_seen) from each seed along reversed arcs finds
        // paths; cycles are checked from each strict arc.
        for (int i = 0; i < d; ++i)
            for (auto [j, strict] : arcs[i]) {
                if (!strict) continue;
                // need path j ->* i to close the cycle
                std::vector<char> seen(d, 0);
                std::deque<int> queue{j};
                seen[j] = 1;
                while (!queue.empty()) {
                    int cur = queue.front();
                    queue.pop_front();
                    if (cur == i) return true;
                    for (auto [nxt, s] : arcs[cur]) {
                        (void)s;
                        if (!seen[nxt]) {
                            seen[nxt] = 1;
                            queue.push_back(nxt);
                        }
                    }
                }
            }
        if (!seeds.empty()) {
            // path x_k -> ... -> x_1 where x_1 takes the seed object; walking
            // backwards: from seed receivers along reversed arcs, track strictness.
            std::vector<std::vector<std::pair<int, bool>>> rev(d);
            for (int i = 0; i < d; ++i)
                for (auto [j, strict] : arcs[i]) rev[j].emplace_back(i, strict);
            std::vector<char> seen(2 * d, 0);
            std::deque<std::pair<int, bool>> queue;
            for (auto [i, strict] : seeds) {
                if (strict) return true;  // single-move improvement
                if (!seen[i]) {
                    seen[i] = 1;
                    queue.emplace_back(i, false);
                }
            }
            while (!queue.empty()) {
                auto [cur, strict] = queue.front();
                queue.pop_front();
                if (strict) return true;
                for (auto [nxt, s] : rev[cur]) {
                    bool ns = strict || s;
                    int key = nxt + (ns ? d : 0);
                    if (!seen[key]) {
                        seen[key] = 1;
                        queue.emplace_back(nxt, ns);
                    }
                }
            }
        }
        return false;
    }

    bool leaf_is_maximal() const {
        Matching m = current_;
        return is_maximal_alternative(inst_, m);
    }

    void dfs(std::size_t pos) {
        if (result_ || !completed_) return;
        if (out_of_budget()) return;
        if (pos == order_.size()) {
            if (!leaf_is_maximal()) return;
            if (internal_exchange(static_cast<int>(pos) - 1)) return;
            ParetoResult r = verify_pareto_optimal(inst_, current_);
            if (r.pareto_optimal) result_ = current_;
            return;
        }
        int a = order_[pos];
        bool boundary = pos + 1 == order_.size() ||
                        class_of_agent_[order_[pos + 1]] != class_of_agent_[a];

        // canonical order within a block of interchangeable agents
        int min_rank = 0;
        if (pos > 0 && class_of_agent_[order_[pos - 1]] == class_of_agent_[a])
            min_rank = prev_rank_;

        std::vector<char> tried(object_classes_.size(), 0);
        for (int o : inst_.adjacency[a]) {
            int oc = class_of_object_[o];
            if (tried[oc] || oc < min_rank) continue;
            // lowest free member of the class
            int pick = -1;
            for (int member : object_classes_[oc])
                if (!used_[member] && inst_.has_edge(a, member)) {
                    pick = member;
                    break;
                }
            tried[oc] = 1;
            if (pick < 0) continue;
            used_[pick] = 1;
            current_.assigned[a] = pick;
            int saved = prev_rank_;
            prev_rank_ = oc;
            if (!(boundary && internal_exchange(static_cast<int>(pos)))) dfs(pos + 1);
            prev_rank_ = saved;
            current_.assigned[a] = kUnmatched;
            used_[pick] = 0;
            if (result_ || !completed_) return;
        }
        // null: canonical order puts it last and it closes the block
        if (min_rank <= static_cast<int>(object_classes_.size())) {
            current_.assigned[a] = kUnmatched;
            int saved = prev_rank_;
            prev_rank_ = static_cast<int>(object_classes_.size());
            bool hopeless = false;
            // unusable free adjacent object means this null can never be maximal
            for (int o : inst_.adjacency[a])
                if (!used_[o] && last_use_[class_of_object_[o]] <= static_cast<int>(pos)) {
                    hopeless = true;
                    break;
                }
            if (!hopeless && !(boundary && internal_exchange(static_cast<int>(pos)))) dfs(pos + 1);
            prev_rank_ = saved;
        }
    }

    const MatchingInstance& inst_;
    long long budget_;
    std::vector<int> order_;
    std::vector<int> class_of_agent_;
    std::vector<int> class_of_object_;
    std::vector<std::vector<int>> object_classes_;
    std::vector<int> last_use_;
    Matching current_;
    std::vector<char> used_;
    int prev_rank_ = 0;
    std::optional<Matching> result_;
    bool completed_ = true;
};

}  // namespace

ParetoMatchingSearch pareto_matching_exists(const MatchingInstance& instance,
                                            long long node_budget) {
    if (instance.kind == AlternativeKind::Constrained)
        throw ValidationError("pareto_matching_exists supports unconstrained instances");
    ParetoDfs dfs(instance, node_budget);
    return dfs.run();
}

}  // namespace condorcet
