#include "condorcet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "condorcet/arborescence.hpp"
#include "condorcet/certificates.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/popularity.hpp"
#include "condorcet/solvers.hpp"

namespace condorcet::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int enumeration_cap() {
    if (const char* env = std::getenv("CONDORCET_CAP")) {
        int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return kDefaultEnumerationCap;
}

bool looks_like_arborescence(const std::string& text) {
    auto doc = json::parse(text, nullptr, false);
    return doc.is_object() && doc.contains("root");
}

Matching load_matching(const MatchingInstance& instance, const std::string& path) {
    json doc = json::parse(read_file(path));
    if (doc.is_array() && doc.size() == 1) return matching_from_json(instance, doc[0]);
    return matching_from_json(instance, doc);
}

void print_matching_set(const MatchingInstance& instance, const MatchingSet& set,
                        std::ostream& out) {
    for (std::size_t i = 0; i < set.members.size(); ++i) {
        out << "  matching " << i + 1 << ":";
        for (int a = 0; a < instance.num_agents(); ++a) {
            out << " " << instance.agent_names[a] << "->";
            if (set.members[i].assigned[a] == kUnmatched) out << "-";
            else out << instance.object_names[set.members[i].assigned[a]];
        }
        out << "\n";
    }
}

PreferenceClass instance_class(const MatchingInstance& instance) {
    PreferenceClass cls = PreferenceClass::Strict;
    for (const auto& rel : instance.prefs) {
        PreferenceClass c = rel.classify();
        if (c == PreferenceClass::Partial) return PreferenceClass::Partial;
        if (c == PreferenceClass::Weak) cls = PreferenceClass::Weak;
    }
    return cls;
}

MatchingSet undominated_member_per_agent(const MatchingInstance& instance) {
    MatchingSet set;
    for (int a = 0; a < instance.num_agents(); ++a) {
        std::vector<int> obtainable;
        for (int o : instance.adjacency[a]) {
            std::vector<int> single{o};
            if (instance.kind != AlternativeKind::Constrained ||
                instance.matroid().is_independent(single))
                obtainable.push_back(o);
        }
        Matching m{std::vector<int>(instance.num_agents(), kUnmatched)};
        if (!obtainable.empty())
            m.assigned[a] = instance.prefs[a].maximal_elements(obtainable).front();
        if (std::find(set.members.begin(), set.members.end(), m) == set.members.end())
            set.members.push_back(m);
    }
    if (set.members.empty())
        set.members.push_back(Matching{std::vector<int>(instance.num_agents(), kUnmatched)});
    return set;
}

int run_solve(const std::string& instance_path, const std::vector<std::string>& order_names,
              bool as_json, std::ostream& out) {
    std::string text = read_file(instance_path);
    if (looks_like_arborescence(text)) {
        ArborescenceInstance arb = parse_arborescence(text);
        auto [t1, t2] = solve_arborescence(arb);
        json doc;
        doc["solver"] = "arborescence";
        json trees = json::array();
        for (const auto& tree : {t1, t2}) {
            json arcs = json::array();
            for (int e : tree)
                arcs.push_back({arb.node_names[arb.arcs[e].first], arb.node_names[arb.arcs[e].second]});
            trees.push_back(arcs);
        }
        doc["arborescences"] = trees;
        if (as_json) {
            out << doc.dump(2) << "\n";
        } else {
            out << "solver: arborescence\n";
            for (const auto& tree : {t1, t2}) {
                out << "  arborescence:";
                for (int e : tree)
                    out << " " << arb.node_names[arb.arcs[e].first] << "->"
                        << arb.node_names[arb.arcs[e].second];
                out << "\n";
            }
        }
        return kExitOk;
    }

    MatchingInstance instance = parse_instance(text);
    if (instance.kind == AlternativeKind::APerfect)
        throw ValidationError(
            "no solver targets assignment instances; Pareto-optimal pairs need not be popular there");
    PreferenceClass cls = instance_class(instance);

    std::string solver;
    std::vector<std::string> warnings;
    MatchingSet set;
    if (cls == PreferenceClass::Strict && !instance.has_matroid() &&
        instance.kind != AlternativeKind::Constrained) {
        std::vector<int> order;
        for (const auto& name : order_names) {
            int a = instance.agent_index(name);
            if (a < 0) throw ValidationError("unknown agent in --order: " + name);
            order.push_back(a);
        }
        solver = "round_robin";
        set = solve_strict_round_robin(instance, order);
    } else if (cls != PreferenceClass::Partial) {
        solver = "weak_matroid";
        set = solve_weak_matroid(instance);
    } else if (!instance.has_matroid() && instance.kind != AlternativeKind::Constrained) {
        solver = "partial_sqrt";
        set = solve_partial_sqrt(instance).first;
    } else {
        solver = "undominated_family";
        set = undominated_member_per_agent(instance);
        warnings.push_back("partial orders with a matroid: emitting one matching per agent; "
                           "instances exist where no smaller popular set works");
    }

    json doc;
    doc["solver"] = solver;
    doc["matchings"] = matching_set_to_json(instance, set);
    doc["warnings"] = warnings;
    try {
        PopularityResult pop = verify_popular(instance, set);
        doc["popular"] = pop.popular;
    } catch (const Error&) {
        doc["popular"] = nullptr;
    }
    doc["pareto_optimal"] = nullptr;
    try {
        auto alternatives = enumerate_alternatives(instance, enumeration_cap());
        if (alternatives.size() <= 400) {
            bool optimal = true;
            for (std::size_t i = 0; i < alternatives.size() && optimal; ++i) {
                if (dominates(instance, MatchingSet{{alternatives[i]}}, set)) optimal = false;
                if (set.members.size() < 2) continue;
                for (std::size_t j = i + 1; j < alternatives.size() && optimal; ++j)
                    if (dominates(instance, MatchingSet{{alternatives[i], alternatives[j]}}, set))
                        optimal = false;
            }
            doc["pareto_optimal"] = optimal;
        }
    } catch (const TooLargeError&) {
    }
    if (as_json) {
        out << doc.dump(2) << "\n";
    } else {
        out << "solver: " << solver << "\n";
        print_matching_set(instance, set, out);
        if (doc["popular"].is_boolean())
            out << "popular: " << (doc["popular"].get<bool>() ? "yes" : "no") << "\n";
        if (doc["pareto_optimal"].is_boolean())
            out << "pareto-optimal: " << (doc["pareto_optimal"].get<bool>() ? "yes" : "no") << "\n";
        for (const auto& w : warnings) out << "warning: " << w << "\n";
    }
    return kExitOk;
}

int run_generate(const std::string& family, const std::vector<std::string>& params,
                 std::uint64_t seed, std::ostream& out) {
    auto param_int = [&](std::size_t i, int fallback) {
        return i < params.size() ? std::stoi(params[i]) : fallback;
    };
    if (family == "lower-bound-matching") {
        out << serialize_instance(gen_lower_bound_matching(param_int(0, 1)));
        return kExitOk;
    }
    if (family == "lower-bound-matroid") {
        out << serialize_instance(gen_lower_bound_matroid(param_int(0, 2)));
        return kExitOk;
    }
    if (family == "no-pareto") {
        out << serialize_instance(gen_no_pareto());
        return kExitOk;
    }
    if (family == "vertex-cover") {
        // params: nodes, cover size, then edges as u-v tokens
        SimpleGraph g;
        g.num_nodes = param_int(0, 3);
        int cover = param_int(1, 1);
        for (std::size_t i = 2; i < params.size(); ++i) {
            auto dash = params[i].find('-');
            if (dash == std::string::npos) throw ValidationError("edges look like 0-1");
            g.edges.emplace_back(std::stoi(params[i].substr(0, dash)),
                                 std::stoi(params[i].substr(dash + 1)));
        }
        out << serialize_instance(gen_vertex_cover_reduction(g, cover));
        return kExitOk;
    }
    if (family == "ldm") {
        // params: a JSON file holding {"k":2, "parts":[[..],..], "tuples":[[..],..]}
        if (params.empty()) throw ValidationError("ldm needs a parameter file");
        json doc = json::parse(read_file(params[0]));
        ThreeDimensionalMatching input;
        input.k = doc.value("k", 2);
        for (const auto& part : doc["parts"]) {
            std::vector<std::string> names;
            for (const auto& x : part) names.push_back(x.get<std::string>());
            input.parts.push_back(names);
        }
        for (const auto& tup : doc["tuples"]) {
            std::vector<std::string> names;
            for (const auto& x : tup) names.push_back(x.get<std::string>());
            input.tuples.push_back(names);
        }
        out << serialize_instance(gen_ldm_reduction(input));
        return kExitOk;
    }
    if (family == "random") {
        // params: agents, objects, density, prefs, matroid
        int n = param_int(0, 4);
        int m = param_int(1, 4);
        double density = params.size() > 2 ? std::stod(params[2]) : 0.7;
        std::string prefs = params.size() > 3 ? params[3] : "strict";
        std::string matroid = params.size() > 4 ? params[4] : "none";
        PrefModel model = prefs == "strict" ? PrefModel::Strict
                          : prefs == "weak" ? PrefModel::Weak
                                            : PrefModel::Partial;
        out << serialize_instance(gen_random(n, m, density, model, matroid, seed));
        return kExitOk;
    }
    if (family == "assignment-counterexample") {
        auto found = find_assignment_counterexample(param_int(0, 6));
        if (!found.found) {
            out << "not found within the search bound\n";
            return kExitNegative;
        }
        json doc;
        doc["instance"] = json::parse(serialize_instance(found.instance));
        doc["set"] = matching_set_to_json(found.instance, found.set);
        doc["competitor"] = matching_to_json(found.instance, found.competitor);
        out << doc.dump(2) << "\n";
        return kExitOk;
    }
    throw ValidationError("unknown family " + family);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Condorcet-winning sets of matchings and arborescences"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string instance_path, set_path, matching_path, competitor_path, family;
    std::vector<std::string> order_names, params;
    bool strict_mode = false;
    int cap_override = 0;
    int size = 1;
    std::uint64_t seed = 0;

    auto* solve = app.add_subcommand("solve", "solve an instance with the matching solver family");
    solve->add_option("instance", instance_path)->required();
    solve->add_option("--order", order_names, "agent picking order for round robin");

    auto* vpop = app.add_subcommand("verify-popular", "check a matching set for popularity");
    vpop->add_option("instance", instance_path)->required();
    vpop->add_option("set", set_path)->required();
    vpop->add_flag("--strict", strict_mode, "require strict popularity (brute force)");

    auto* vpar = app.add_subcommand("verify-pareto", "check a matching for Pareto-optimality");
    vpar->add_option("instance", instance_path)->required();
    vpar->add_option("matching", matching_path)->required();

    auto* cert = app.add_subcommand("certify", "branching certificate or improvement witness");
    cert->add_option("instance", instance_path)->required();
    cert->add_option("set", set_path)->required();
    cert->add_option("competitor", competitor_path)->required();

    auto* dim = app.add_subcommand("dimension", "brute-force (weak) Condorcet dimension");
    dim->add_option("instance", instance_path)->required();
    dim->add_flag("--strict", strict_mode);
    dim->add_option("--cap", cap_override, "enumeration cap override");

    auto* gen = app.add_subcommand("generate", "emit a generated instance document");
    gen->add_option("family", family)->required();
    gen->add_option("params", params);
    gen->add_option("--seed", seed);

    auto* oracle = app.add_subcommand("oracle", "brute-force oracles");
    auto* psets = oracle->add_subcommand("pareto-sets", "search Pareto-optimal sets of a size");
    psets->add_option("instance", instance_path)->required();
    psets->add_option("--size", size)->required();

    for (auto* sub : {solve, vpop, vpar, cert, dim, gen, psets})
        sub->add_flag("--json", as_json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitUsage;
    }

    int cap = cap_override > 0 ? cap_override : enumeration_cap();
    try {
        if (solve->parsed()) return run_solve(instance_path, order_names, as_json, out);

        if (vpop->parsed()) {
            MatchingInstance instance = parse_instance(read_file(instance_path));
            MatchingSet set = matching_set_from_json(instance, json::parse(read_file(set_path)));
            if (strict_mode) {
                auto alts = enumerate_alternatives(instance, cap);
                bool strongly = true;
                Matching witness;
                for (const auto& n : alts) {
                    bool member = false;
                    for (const auto& m : set.members)
                        if (m == n) member = true;
                    if (member) continue;
                    if (tally(instance, set, n).margin <= 0) {
                        strongly = false;
                        witness = n;
                        break;
                    }
                }
                json doc;
                doc["popular"] = strongly;
                doc["mode"] = "strict";
                if (!strongly) doc["counterexample"] = matching_to_json(instance, witness);
                if (as_json) out << doc.dump(2) << "\n";
                else out << (strongly ? "strongly popular\n" : "not strongly popular\n");
                return strongly ? kExitOk : kExitNegative;
            }
            PopularityResult result = verify_popular(instance, set);
            json doc;
            doc["popular"] = result.popular;
            if (!result.popular) {
                doc["counterexample"] = matching_to_json(instance, *result.counterexample);
                doc["margin"] = result.counterexample_margin;
            }
            if (as_json) out << doc.dump(2) << "\n";
            else if (result.popular) out << "popular\n";
            else out << "not popular (margin " << result.counterexample_margin << ")\n";
            return result.popular ? kExitOk : kExitNegative;
        }

        if (vpar->parsed()) {
            MatchingInstance instance = parse_instance(read_file(instance_path));
            Matching m = load_matching(instance, matching_path);
            ParetoResult result = verify_pareto_optimal(instance, m, cap);
            json doc;
            doc["pareto_optimal"] = result.pareto_optimal;
            if (!result.pareto_optimal)
                doc["dominator"] = matching_to_json(instance, *result.dominator);
            if (as_json) out << doc.dump(2) << "\n";
            else if (result.pareto_optimal) out << "pareto-optimal\n";
            else out << "dominated\n";
            return result.pareto_optimal ? kExitOk : kExitNegative;
        }

        if (cert->parsed()) {
            MatchingInstance instance = parse_instance(read_file(instance_path));
            MatchingSet set = matching_set_from_json(instance, json::parse(read_file(set_path)));
            Matching competitor = load_matching(instance, competitor_path);
            MatchingInstance augmented = augment_with_nulls(instance);
            MatchingSet lifted;
            for (const auto& m : set.members)
                lifted.members.push_back(lift_to_augmented(augmented, m));
            CertificateOutcome outcome = build_branching_certificate(
                augmented, lifted, lift_to_augmented(augmented, competitor));
            json doc;
            if (outcome.certificate) {
                doc["result"] = "certificate";
                doc["certificate"] = certificate_to_json(augmented, *outcome.certificate);
            } else {
                doc["result"] = "improvement";
                MatchingSet projected;
                for (const auto& m : outcome.improvement->members)
                    projected.members.push_back(project_from_augmented(augmented, m));
                doc["improvement"] = matching_set_to_json(instance, projected);
            }
            if (as_json) out << doc.dump(2) << "\n";
            else out << doc["result"].get<std::string>() << "\n";
            return outcome.certificate ? kExitOk : kExitNegative;
        }

        if (dim->parsed()) {
            MatchingInstance instance = parse_instance(read_file(instance_path));
            DimensionResult result = brute_force_condorcet_dimension(instance, strict_mode, cap);
            json doc;
            doc["dimension"] = result.dimension;
            doc["witness"] = matching_set_to_json(instance, result.witness);
            if (as_json) out << doc.dump(2) << "\n";
            else out << result.dimension << "\n";
            return kExitOk;
        }

        if (gen->parsed()) return run_generate(family, params, seed, out);

        if (psets->parsed()) {
            MatchingInstance instance = parse_instance(read_file(instance_path));
            ParetoSetResult result = brute_force_pareto_sets(instance, size, cap);
            json doc;
            doc["exists"] = result.exists;
            if (result.exists) doc["witness"] = matching_set_to_json(instance, *result.witness);
            if (as_json) out << doc.dump(2) << "\n";
            else out << (result.exists ? "exists\n" : "none\n");
            return result.exists ? kExitOk : kExitNegative;
        }
        err << "no subcommand\n";
        return kExitUsage;
    } catch (const TooLargeError& e) {
        err << "too large: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace condorcet::cli
