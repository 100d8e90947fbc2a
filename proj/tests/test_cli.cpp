#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condorcet/cli.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/instance.hpp"

using namespace condorcet;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "cli_test_tmp_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kStrictDoc = R"({
  "agents": ["a1", "a2"],
  "objects": ["o1", "o2"],
  "edges": [["a1","o1"],["a1","o2"],["a2","o1"],["a2","o2"]],
  "prefs": {"a1": [["o1","o2"]], "a2": [["o1","o2"]]}
})";

}  // namespace

TEST_CASE("solve picks the round robin solver for strict instances") {
    TempFile f(kStrictDoc);
    auto r = run_cli({"--json", "solve", f.path});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["solver"] == "round_robin");
    CHECK(doc["popular"] == true);
    CHECK(doc["matchings"].size() == 2);
}

TEST_CASE("solve dispatches by preference class and matroid") {
    TempFile weak(R"({
        "agents":["a"],"objects":["x","y"],
        "edges":[["a","x"],["a","y"]],"prefs":{},
        "matroid":{"type":"uniform","rank":1},"alternatives":"constrained"})");
    auto r = run_cli({"--json", "solve", weak.path});
    CHECK(json::parse(r.out)["solver"] == "weak_matroid");

    TempFile partial(serialize_instance(gen_no_pareto()));
    auto r2 = run_cli({"--json", "solve", partial.path});
    CHECK(json::parse(r2.out)["solver"] == "partial_sqrt");

    auto constrained_partial = gen_no_pareto();
    constrained_partial.matroid_spec = {{"type", "uniform"}, {"rank", 2}};
    constrained_partial.kind = AlternativeKind::Constrained;
    TempFile cp(serialize_instance(constrained_partial));
    auto r3 = run_cli({"--json", "solve", cp.path});
    CHECK(json::parse(r3.out)["solver"] == "undominated_family");
    CHECK(!json::parse(r3.out)["warnings"].empty());
}

TEST_CASE("solve handles arborescence documents") {
    TempFile f(R"({"nodes":["r","a"],"root":"r","arcs":[["r","a"]],"prefs":{}})");
    auto r = run_cli({"--json", "solve", f.path});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["solver"] == "arborescence");
    CHECK(doc["arborescences"].size() == 2);
}

TEST_CASE("verify-popular exit codes") {
    TempFile inst(kStrictDoc);
    TempFile good(R"([{"a1":"o1","a2":"o2"},{"a1":"o2","a2":"o1"}])");
    auto r = run_cli({"verify-popular", inst.path, good.path});
    CHECK(r.code == 0);

    TempFile bad(R"([{"a1":"o2","a2":null}])");
    auto r2 = run_cli({"--json", "verify-popular", inst.path, bad.path});
    CHECK(r2.code == 1);
    auto doc = json::parse(r2.out);
    CHECK(doc["popular"] == false);
    CHECK(doc.contains("counterexample"));
}

TEST_CASE("verify-popular strict mode") {
    TempFile inst(kStrictDoc);
    TempFile pair(R"([{"a1":"o1","a2":"o2"},{"a1":"o2","a2":"o1"}])");
    auto r = run_cli({"verify-popular", inst.path, pair.path, "--strict"});
    CHECK(r.code == 0);  // no top-choice matching exists, so the pair is strongly popular
}

TEST_CASE("verify-pareto on the rotation-dominated instance") {
    TempFile inst(serialize_instance(gen_no_pareto()));
    TempFile perfect(R"({"a0":"o0","a1":"o1","a2":"o2"})");
    auto r = run_cli({"--json", "verify-pareto", inst.path, perfect.path});
    CHECK(r.code == 1);
    auto doc = json::parse(r.out);
    CHECK(doc["pareto_optimal"] == false);
    CHECK(doc.contains("dominator"));
}

TEST_CASE("certify emits a certificate for a pareto pair") {
    TempFile inst(kStrictDoc);
    TempFile set(R"([{"a1":"o1","a2":"o2"},{"a1":"o2","a2":"o1"}])");
    TempFile competitor(R"({"a1":"o1","a2":"o2"})");
    auto r = run_cli({"--json", "certify", inst.path, set.path, competitor.path});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["result"] == "certificate");
    CHECK(doc["certificate"].contains("colors"));
}

TEST_CASE("certify reports improvements for dominated sets") {
    TempFile inst(kStrictDoc);
    // both members waste the favorite object
    TempFile set(R"([{"a1":"o2","a2":null},{"a1":null,"a2":"o2"}])");
    TempFile competitor(R"({"a1":"o1","a2":"o2"})");
    auto r = run_cli({"--json", "certify", inst.path, set.path, competitor.path});
    CHECK(r.code == 1);
    auto doc = json::parse(r.out);
    CHECK(doc["result"] == "improvement");
    CHECK(doc["improvement"].is_array());
}

TEST_CASE("dimension subcommand") {
    TempFile inst(serialize_instance(gen_lower_bound_matching(1)));
    auto r = run_cli({"--json", "dimension", inst.path, "--cap", "64"});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["dimension"] == 2);
    CHECK(doc["witness"].size() == 2);
}

TEST_CASE("generate families round-trip through the parser") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"generate", "lower-bound-matching", "1"},
             {"generate", "lower-bound-matroid", "2"},
             {"generate", "no-pareto"},
             {"generate", "vertex-cover", "3", "1", "0-1", "1-2"},
             {"generate", "random", "3", "3", "0.8", "weak", "partition"}}) {
        auto r = run_cli(args);
        REQUIRE(r.code == 0);
        auto inst = parse_instance(r.out);
        CHECK(serialize_instance(inst) == r.out);
    }
}

TEST_CASE("generate ldm from a parameter file") {
    TempFile params(R"({"k":2,"parts":[["x"],["y"],["z"]],"tuples":[["x","y","z"]]})");
    auto r = run_cli({"generate", "ldm", params.path});
    CHECK(r.code == 0);
    auto inst = parse_instance(r.out);
    CHECK(inst.num_agents() == 15);
}

TEST_CASE("generate output is byte-identical across runs") {
    auto a = run_cli({"generate", "random", "4", "4", "0.5", "partial", "graphic", "--seed", "9"});
    auto b = run_cli({"generate", "random", "4", "4", "0.5", "partial", "graphic", "--seed", "9"});
    CHECK(a.out == b.out);
}

TEST_CASE("oracle pareto-sets") {
    TempFile inst(serialize_instance(gen_no_pareto()));
    auto none = run_cli({"--json", "oracle", "pareto-sets", inst.path, "--size", "1"});
    CHECK(none.code == 1);
    CHECK(json::parse(none.out)["exists"] == false);
    auto pair = run_cli({"--json", "oracle", "pareto-sets", inst.path, "--size", "2"});
    CHECK(pair.code == 0);
    CHECK(json::parse(pair.out)["exists"] == true);
}

TEST_CASE("solve refuses assignment instances") {
    TempFile inst(R"({
        "agents":["a","b"],"objects":["x","y"],
        "edges":[["a","x"],["a","y"],["b","x"],["b","y"]],
        "prefs":{},"alternatives":"a_perfect"})");
    CHECK(run_cli({"solve", inst.path}).code == 2);
}

TEST_CASE("usage and io errors exit with code 2") {
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"solve", "does_not_exist.json"}).code == 2);
    TempFile malformed("{");
    CHECK(run_cli({"solve", malformed.path}).code == 2);
}

TEST_CASE("CONDORCET_CAP lifts the enumeration cap") {
    TempFile inst(serialize_instance(gen_lower_bound_matching(1)));  // 9 edges
    setenv("CONDORCET_CAP", "5", 1);
    auto blocked = run_cli({"oracle", "pareto-sets", inst.path, "--size", "1"});
    CHECK(blocked.code == 3);
    setenv("CONDORCET_CAP", "64", 1);
    auto allowed = run_cli({"oracle", "pareto-sets", inst.path, "--size", "1"});
    CHECK(allowed.code != 3);
    unsetenv("CONDORCET_CAP");
}

TEST_CASE("oversized brute force exits with code 3") {
    TempFile inst(serialize_instance(gen_lower_bound_matching(2)));
    auto r = run_cli({"dimension", inst.path, "--strict", "--cap", "24"});
    CHECK(r.code == 3);
}
