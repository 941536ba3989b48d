#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsa/cli.hpp"

using namespace bsa;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    json report;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    RunResult r{code, out.str(), err.str(), json()};
    if (!r.out.empty() && r.out[0] == '{') r.report = json::parse(r.out);
    return r;
}

std::string data_file(const std::string& name) {
    return std::string(BSA_SOURCE_DIR) + "/data/" + name + ".json";
}

std::string write_temp(const std::string& text) {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() /
                ("bsa_cli_input_" + std::to_string(counter++) + ".json");
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path.string();
}

} // namespace

TEST_CASE("corpus manifest and bundled files") {
    auto r = run({"corpus"});
    CHECK(r.code == 0);
    bool has_ii = false;
    for (const auto& e : r.report["result"]["entries"])
        if (e["name"] == "saito-4-12-ii" && e["d"] == 7) has_ii = true;
    CHECK(has_ii);

    // bundled files on disk match the embedded corpus byte for byte and
    // round-trip through the parser
    for (const auto& e : corpus_manifest()) {
        std::ifstream f(data_file(e.name), std::ios::binary);
        REQUIRE(f.good());
        std::ostringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str() == corpus_json(e.name));
        auto parsed = parse_arrangement_text(ss.str());
        CHECK(parsed.arr.d() == e.forms.size());
    }
}

TEST_CASE("reports are byte identical across runs") {
    auto a = run({"bfunction", data_file("saito-4-12-i")});
    auto b = run({"bfunction", data_file("saito-4-12-i")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes follow the certification outcome") {
    CHECK(run({"bfunction", data_file("saito-4-12-i")}).code == 0);
    CHECK(run({"bfunction", data_file("saito-4-12-iii")}).code == 10);
    CHECK(run({"bfunction", data_file("decomposable-xy")}).code == 2);
    CHECK(run({"certify", data_file("saito-4-12-iii"), "--root", "16/9"}).code == 10);
    CHECK(run({"certify", data_file("saito-4-12-iii"), "--root", "5/3"}).code == 0);
    CHECK(run({"euler", data_file("decomposable-xy")}).code == 0);
}

TEST_CASE("input diagnostics carry positions") {
    auto bad = run({"euler", write_temp("{\n  \"n\": 2,\n  \"forms\": [[\"1\" \"0\"]]\n}\n")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);

    auto flt = run({"euler", write_temp("{\"n\": 2, \"forms\": [[\"1\", \"0\"], [0.5, \"1\"]]}")});
    CHECK(flt.code == 2);
    CHECK(flt.report["error"]["message"].get<std::string>().find("rational string") != std::string::npos);

    auto unreduced = run({"euler", write_temp("{\"n\": 2, \"forms\": [[\"2/4\", \"0\"], [\"0\", \"1\"]]}")});
    CHECK(unreduced.code == 2);

    auto dup = run({"euler", write_temp("{\"n\": 2, \"forms\": [[\"1\", \"0\"], [\"2\", \"0\"]]}")});
    CHECK(dup.code == 2);
    CHECK(dup.report["error"]["code"] == "DUPLICATE_HYPERPLANE");

    CHECK(run({"euler", "no_such_file.json"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("query commands produce the expected payloads") {
    auto eu = run({"euler", data_file("saito-4-12-i")});
    CHECK(eu.report["result"]["chi"] == "2");
    CHECK(eu.report["result"]["indecomposable"] == true);

    auto xy = run({"euler", data_file("decomposable-xy")});
    CHECK(xy.report["result"]["chi"] == "0");
    CHECK(xy.err.find("decomposable") != std::string::npos);

    auto be = run({"betti", data_file("saito-4-12-iii")});
    CHECK(be.report["result"]["betti"] == json::array({"1", "8", "19"}));
    CHECK(be.report["result"]["closed_form_agrees"] == true);

    auto mu = run({"multiplicities", data_file("saito-4-12-ii")});
    CHECK(mu.report["result"]["nu"]["3"] == 6);
    CHECK(mu.report["result"]["nu_prime"]["3"] == 4);

    auto de = run({"dense-edges", data_file("saito-4-12-i"), "--lambda", "1/3"});
    CHECK(de.report["result"]["edges"].size() == 5);
    CHECK(de.report["result"]["m_lambda"] == 2);

    auto ca = run({"candidates", data_file("generic-3-6")});
    CHECK(ca.report["result"]["candidates"].size() == 8);

    auto ei = run({"eigenspace", data_file("saito-4-12-i"), "--k", "2"});
    CHECK(ei.code == 0);
    CHECK(ei.report["result"]["dims"] == json::array({0, 1, 3}));

    auto co = run({"cohomology", data_file("saito-4-12-i"), "--k", "6"});
    CHECK(co.report["result"]["dims"] == json::array({1, 5, 6}));

    auto vs = run({"vsubspace", data_file("saito-4-12-iii"), "--k", "6", "--I", "1,3,4,6,8"});
    CHECK(vs.report["result"]["dim_VIprime"] == 10);
    CHECK(vs.report["result"]["normal_crossing_choice"] == true);

    auto sp = run({"spectrum", data_file("saito-4-12-ii")});
    CHECK(sp.report["result"]["jumping"] == json::array({"3/7", "4/7"}));
}

TEST_CASE("every decided status carries evidence") {
    auto r = run({"bfunction", data_file("saito-4-12-ii")});
    REQUIRE(r.code == 0);
    for (const auto& c : r.report["result"]["certificates"]) {
        if (c["status"] == "UNKNOWN") continue;
        CHECK(!c["evidence"].empty());
        bool has_cite = false;
        for (const auto& e : c["evidence"])
            if (!e["cite"].get<std::string>().empty()) has_cite = true;
        CHECK(has_cite);
    }
}

TEST_CASE("the weight-one jump observation is reported, not assumed") {
    auto r = run({"bfunction", data_file("saito-4-12-i")});
    CHECK(r.report["result"]["weight_one_jump_always"] == true);
    // no multiple points, no observation to report
    auto g = run({"bfunction", data_file("generic-3-5")});
    CHECK(!g.report["result"].contains("weight_one_jump_always"));
}

TEST_CASE("a starved shift budget degrades to UNKNOWN") {
    auto r = run({"eigenspace", data_file("saito-4-12-i"), "--k", "2", "--shift-budget", "1"});
    CHECK(r.code == 10);
    CHECK(r.report["status"] == "incomplete");
}

TEST_CASE("pivot flag reindexes the chart") {
    auto a = run({"multiplicities", data_file("saito-4-12-i"), "--pivot", "5"});
    CHECK(a.code == 0);
    // with the pivot on x+y the two triple points at infinity move off it
    CHECK(a.report["result"]["nu"]["3"] == 4);
    auto b = run({"bfunction", data_file("saito-4-12-i"), "--pivot", "5"});
    CHECK(b.code == 0);
    auto c = run({"bfunction", data_file("saito-4-12-i")});
    CHECK(b.report["result"]["factorization"] == c.report["result"]["factorization"]);
}
