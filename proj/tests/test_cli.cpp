#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// run the installed binary through the shell and capture its output
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(KHO_CLI_PATH) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

}  // namespace

TEST_CASE("cli reports its version", "[cli]") {
    RunResult r = run_cli("--version");
    CHECK(r.status == 0);
    CHECK(r.out == "1.0.0\n");
}

TEST_CASE("cli compute renders a grid with a poincare footer", "[cli]") {
    RunResult r = run_cli("compute --format braid --input '2: 1 1 1' --no-cache");
    CHECK(r.status == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring(
                          "even homology over Z of 3-crossing diagram"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("j\\i"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("1\xE2\x82\x82"));  // the Z/2 cell
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring(
                          "poincare: q + q^3 + t^2 q^5 + t^3 q^9"));
}

TEST_CASE("cli compute honors ring and variant flags", "[cli]") {
    RunResult r = run_cli(
        "compute --format braid --input '2: 1 1 1' --variant odd --ring Fp:3 --no-cache");
    CHECK(r.status == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("odd homology over F3"));
}

TEST_CASE("cli jones prints the polynomial alone", "[cli]") {
    RunResult r = run_cli("jones --format braid --input '3: 1 -2 1 -2'");
    CHECK(r.status == 0);
    CHECK(r.out == "q^-5 + q^5\n");
}

TEST_CASE("cli invariants emits the full json report", "[cli]") {
    RunResult r = run_cli(
        "invariants --format pretzel --input 'P(3,3,-3)' --variant odd-reduced --no-cache");
    REQUIRE(r.status == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK(rep["variant"] == "odd-reduced");
    CHECK(rep["det"] == 3 * 3);
    CHECK(rep["s"] == 0);
    CHECK(rep["qa"]["verdict"] == "no");
    bool torsion_cell = false;
    for (const auto& cell : rep["table"])
        if (cell["i"] == 0 && cell["j"] == -2)
            torsion_cell = cell["torsion"] == nlohmann::json::array({3});
    CHECK(torsion_cell);
}

TEST_CASE("cli verify passes on a sound build", "[cli]") {
    RunResult r = run_cli("verify --format braid --input '2: 1 1 1'");
    CHECK(r.status == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("PASS  "));
    CHECK_THAT(r.out, !Catch::Matchers::ContainsSubstring("FAIL  "));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("pass"));
}

TEST_CASE("cli qa emits a verdict", "[cli]") {
    RunResult r = run_cli("qa --format braid --input '2: 1 1 1' --json");
    REQUIRE(r.status == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK(rep["verdict"] == "yes");
    CHECK(rep["reason"] == "resolution-tree certificate");
    CHECK(rep["nodes"].is_number());
}

TEST_CASE("cli dump-chain prints the complex itself", "[cli]") {
    RunResult r =
        run_cli("compute --format braid --input '2: 1 1 1' --dump-chain --no-cache");
    REQUIRE(r.status == 0);
    nlohmann::json c = nlohmann::json::parse(r.out);
    CHECK(c["i_min"] == 0);
    REQUIRE(c["levels"].size() == 4);
    CHECK(c["levels"][0]["dim"] == 4);
    CHECK(c["levels"][1]["dim"] == 6);
    REQUIRE(c["differentials"].size() == 3);
    CHECK(c["differentials"][0]["rows"] == c["levels"][1]["dim"]);
    CHECK(c["differentials"][0]["cols"] == c["levels"][0]["dim"]);
}

TEST_CASE("cli batch processes a file and reports bad lines", "[cli]") {
    namespace fs = std::filesystem;
    const std::string file = std::string(KHO_TEST_TMP) + "/batch_in.pd";
    {
        std::ofstream out(file);
        out << "# demo batch\n"
            << "unknot: X[1,1,2,2]\n"
            << "trefoil: X[1,2,3,4] X[2,5,6,3] X[5,1,4,6]\n"
            << "this line has no separator\n";
    }
    RunResult merged = run_cli("batch --input " + file + " --jobs 2 --no-cache", true);
    REQUIRE(merged.status == 0);
    CHECK_THAT(merged.out, Catch::Matchers::ContainsSubstring(file + ":4: missing ':'"));

    RunResult r = run_cli("batch --input " + file + " --jobs 2 --no-cache");
    REQUIRE(r.status == 0);
    nlohmann::json out = nlohmann::json::parse(r.out);
    REQUIRE(out["results"].size() == 2);
    CHECK(out["results"][0]["name"] == "unknot");
    CHECK(out["results"][0]["report"]["det"] == 1);
    CHECK(out["results"][1]["name"] == "trefoil");
    CHECK(out["results"][1]["report"]["s"] == 2);
    REQUIRE(out["ingest_errors"].size() == 1);
    CHECK(out["ingest_errors"][0]["line"] == 4);
}

TEST_CASE("cli caches computed tables on disk", "[cli]") {
    namespace fs = std::filesystem;
    const std::string dir = std::string(KHO_TEST_TMP) + "/clicache";
    fs::remove_all(dir);
    const std::string cmd =
        "compute --format braid --input '2: 1 1 1' --cache-dir " + dir;
    RunResult first = run_cli(cmd);
    REQUIRE(first.status == 0);
    CHECK(fs::exists(dir + "/store.jsonl"));
    RunResult second = run_cli(cmd);
    CHECK(second.status == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("cli rejects bad input with a clean error", "[cli]") {
    RunResult r = run_cli("compute --input 'X[1,2,3]' --no-cache", true);
    CHECK(r.status == 2);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("error: "));

    RunResult bad_flag = run_cli("compute --input 'X[1,1,2,2]' --format nosuch", true);
    CHECK(bad_flag.status != 0);
}
