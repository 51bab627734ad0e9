#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef FWC_BIN
#define FWC_BIN "fwc"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    std::string out_path = std::string(FWC_BIN) + ".test-out";
    std::string cmd = env + " " + std::string(FWC_BIN) + " " + args + " > '" + out_path +
                      "' 2>/dev/null";
    int raw = std::system(cmd.c_str());
    int code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    return {code, slurp(out_path)};
}

}  // namespace

TEST_CASE("build writes the matrix format with a JSON sidecar") {
    auto r = run("build --family F1 --q 2 -o /tmp/fwc_cli_f1.txt");
    REQUIRE(r.exit_code == 0);
    std::string matrix = slurp("/tmp/fwc_cli_f1.txt");
    REQUIRE(matrix.rfind("9 3 {", 0) == 0);
    auto sidecar = nlohmann::json::parse(slurp("/tmp/fwc_cli_f1.txt.json"));
    REQUIRE(sidecar.at("n") == 9);
    REQUIRE(sidecar.at("k") == 3);

    auto big = run("build --family F2 --q 3 --m 3 -o /tmp/fwc_cli_f2.txt");
    REQUIRE(big.exit_code == 0);
    REQUIRE(slurp("/tmp/fwc_cli_f2.txt").rfind("244 3 {", 0) == 0);
}

TEST_CASE("invalid specs exit with code 2") {
    REQUIRE(run("build --family F1 --q 2 --m 3").exit_code == 2);
    REQUIRE(run("build --family F9 --q 2").exit_code == 2);
    REQUIRE(run("analyze /nonexistent/matrix.txt").exit_code == 2);
    REQUIRE(run("bogus-subcommand").exit_code == 2);
}

TEST_CASE("analyze reports parameters, bounds and derived codes") {
    REQUIRE(run("build --family F2 --q 2 --m 3 -o /tmp/fwc_cli_f2m3.txt").exit_code == 0);
    auto r = run("analyze /tmp/fwc_cli_f2m3.txt --subfield --puncture 0 --dual-via-macwilliams");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("n") == 32);
    REQUIRE(j.at("k") == 6);
    REQUIRE(j.at("d") == 16);
    REQUIRE(j.at("dual").at("d") == 4);

    auto h = run("analyze /tmp/fwc_cli_f1.txt --hermitian");
    auto jh = nlohmann::json::parse(h.out);
    REQUIRE(jh.at("hermitian_self_orthogonal") == true);
    REQUIRE(jh.at("bounds")[0].at("meets_with_equality") == true);
}

TEST_CASE("analyze CSV projection") {
    run("build --family F1 --q 2 -o /tmp/fwc_cli_f1b.txt");
    auto r = run("analyze /tmp/fwc_cli_f1b.txt --csv /tmp/fwc_cli_f1.csv");
    REQUIRE(r.exit_code == 0);
    REQUIRE(slurp("/tmp/fwc_cli_f1.csv") == "weight,count\n0,1\n6,36\n8,27\n");
}

TEST_CASE("verify exits 0 on clean runs and writes the ledger") {
    auto r = run("verify --family F2 --q 2 --m 3 --json /tmp/fwc_cli_ledger.json");
    REQUIRE(r.exit_code == 0);
    auto led = nlohmann::json::parse(slurp("/tmp/fwc_cli_ledger.json"));
    REQUIRE(led.at("summary").at("fail") == 0);
    REQUIRE(led.at("entries").size() == 1);

    REQUIRE(run("lemmas --q-max 3 --m-max 2").exit_code == 0);
    REQUIRE(run("verify-lemmas --q-max 3 --m-max 2").exit_code == 0);
}

TEST_CASE("budget overrun exits 3 and FWC_BUDGET overrides") {
    run("build --family F2 --q 2 --m 4 -o /tmp/fwc_cli_f2m4.txt");
    // subfield code has 2^8 codewords; a budget of 100 is too small
    auto r = run("analyze /tmp/fwc_cli_f2m4.txt --subfield", "FWC_BUDGET=100");
    REQUIRE(r.exit_code == 3);
    auto ok = run("analyze /tmp/fwc_cli_f2m4.txt --subfield", "FWC_BUDGET=300");
    REQUIRE(ok.exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    run("build --family F2 --q 3 --m 2 -o /tmp/fwc_cli_det.txt");
    auto a = run("--threads 1 analyze /tmp/fwc_cli_det.txt --dual-via-macwilliams");
    auto b = run("--threads 4 analyze /tmp/fwc_cli_det.txt --dual-via-macwilliams");
    auto c = run("--threads 4 analyze /tmp/fwc_cli_det.txt --dual-via-macwilliams");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(b.out == c.out);

    run("verify --family F5 --q 2 --m 2 --json /tmp/fwc_cli_led1.json");
    run("--threads 3 verify --family F5 --q 2 --m 2 --json /tmp/fwc_cli_led2.json");
    REQUIRE(slurp("/tmp/fwc_cli_led1.json") == slurp("/tmp/fwc_cli_led2.json"));
}

TEST_CASE("TOML config supplies defaults; flags take precedence") {
    {
        std::ofstream cfg("/tmp/fwc_cli_cfg.toml");
        cfg << "threads=2\n\n[build]\nfamily=\"F1\"\nq=3\n";
    }
    auto from_cfg = run("--config /tmp/fwc_cli_cfg.toml build -o /tmp/fwc_cli_cfg_a.txt");
    REQUIRE(from_cfg.exit_code == 0);
    REQUIRE(slurp("/tmp/fwc_cli_cfg_a.txt").rfind("28 3 {", 0) == 0);

    auto overridden =
        run("--config /tmp/fwc_cli_cfg.toml build --q 2 -o /tmp/fwc_cli_cfg_b.txt");
    REQUIRE(overridden.exit_code == 0);
    REQUIRE(slurp("/tmp/fwc_cli_cfg_b.txt").rfind("9 3 {", 0) == 0);
}

TEST_CASE("matrix files round-trip through build and analyze") {
    run("build --family F3 --q 2 --m 3 --t 5 -o /tmp/fwc_cli_f3.txt");
    auto r = run("analyze /tmp/fwc_cli_f3.txt --subfield");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("n") == 33);
    REQUIRE(j.at("k") == 7);
}
