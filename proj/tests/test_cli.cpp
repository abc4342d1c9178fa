// End-to-end tests that drive the installed CLI binary (path injected by
// the build as LDPP_CLI_PATH).

#include "fixtures.hpp"
#include "ldpp/json_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using ldpp::Json;

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LDPP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "ldpp_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

fs::path write_matrix(const std::string& name, std::size_t n, const std::string& t,
                      const ldpp::Matrix& m) {
    return write_text(name, ldpp::matrix_file_to_json({n, ldpp::parse_rational(t), m}).dump(2));
}

}  // namespace

TEST_CASE("check: member, violator, and parse error exit codes") {
    const auto member = write_matrix("member.json", 3, "2", fixtures::loose_entry_3x3());
    auto res = run_cli("check --input " + member.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output == "InD\n");

    const auto violator = write_matrix("violator.json", 2, "2", ldpp::Matrix::identity(2));
    res = run_cli("check --input " + violator.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("DP(") != std::string::npos);

    const auto bad = write_text("bad.json",
                                R"({"schema":"ldpp-matrix/1","n":1,"t":"2","matrix":[["1/0"]]})");
    res = run_cli("check --input " + bad.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("1/0") != std::string::npos);

    res = run_cli("check --input " + write_text("trunc.json", "{\"schema\":").string());
    CHECK(res.exit_code == 2);

    res = run_cli("check --input /nonexistent/file.json");
    CHECK(res.exit_code == 2);
}

TEST_CASE("analyze: reports and exit codes") {
    const auto p5 = write_matrix("extreme5.json", 5, "2", fixtures::loose_extreme_5x5());
    auto res = run_cli("analyze --input " + p5.string());
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["familyTag"] == "OtherExtreme");
    CHECK(j["isExtreme"] == true);
    CHECK(j["rank"] == 4);
    CHECK(j["lambda"] == Json::array({Json::array({5, 3})}));

    const auto corner = write_matrix("corner.json", 3, "2", fixtures::corner(3, 0));
    res = run_cli("analyze --input " + corner.string());
    REQUIRE(res.exit_code == 0);
    CHECK(Json::parse(res.output)["familyTag"] == "DPrime");

    const auto uni = write_matrix("uniform.json", 3, "2", fixtures::uniform(3));
    res = run_cli("analyze --input " + uni.string());
    REQUIRE(res.exit_code == 0);
    CHECK(Json::parse(res.output)["isExtreme"] == false);

    const auto violator = write_matrix("violator2.json", 2, "2", ldpp::Matrix::identity(2));
    CHECK(run_cli("analyze --input " + violator.string()).exit_code == 1);
}

TEST_CASE("enumerate: generator and oracle agree at n = 2") {
    auto gen = run_cli("enumerate --n 2 --t 2 --mode generator");
    REQUIRE(gen.exit_code == 0);
    const Json jg = Json::parse(gen.output);
    CHECK(jg["count"] == 4);

    auto oracle = run_cli("enumerate --n 2 --t 2 --mode oracle");
    REQUIRE(oracle.exit_code == 0);
    const Json jo = Json::parse(oracle.output);
    CHECK(jo["count"] == 4);
    CHECK(jo["complete"] == true);

    auto matrices = [](const Json& j) {
        std::set<std::string> out;
        for (const auto& v : j["vertices"]) out.insert(v["matrix"].dump());
        return out;
    };
    CHECK(matrices(jg) == matrices(jo));
}

TEST_CASE("enumerate: canonical reduction and csv output") {
    auto res = run_cli("enumerate --n 2 --t 2 --canonical");
    REQUIRE(res.exit_code == 0);
    CHECK(Json::parse(res.output)["count"] == 2);  // one corner orbit, one mixing orbit

    res = run_cli("enumerate --n 2 --t 2 --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.substr(0, res.output.find('\n')) == "provenance,a11,a12,a21,a22");
    CHECK(std::count(res.output.begin(), res.output.end(), '\n') == 5);  // header + 4 vertices
}

TEST_CASE("enumerate: zero-eps short circuit via --eps-ln2-multiple 0") {
    auto res = run_cli("enumerate --n 3 --eps-ln2-multiple 0");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["t"] == "1");
    CHECK(j["count"] == 3);
}

TEST_CASE("enumerate: oracle needs a budget at n = 4 and reports exhaustion") {
    CHECK(run_cli("enumerate --n 4 --t 2 --mode oracle").exit_code == 2);

    auto res = run_cli("enumerate --n 4 --t 2 --mode oracle --budget 200");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["complete"] == false);
    CHECK(j["basesExamined"] == 200);
}

TEST_CASE("enumerate output is byte-identical across runs") {
    const std::string args = "enumerate --n 3 --t 2 --mode generator";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("every matrix the CLI emits re-parses and passes check") {
    auto res = run_cli("enumerate --n 3 --t 3/2 --mode generator");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    std::size_t i = 0;
    for (const auto& v : j["vertices"]) {
        const ldpp::Matrix m = ldpp::matrix_from_json(v["matrix"], 3);
        const auto p = write_matrix("emit" + std::to_string(i++) + ".json", 3, "3/2", m);
        CHECK(run_cli("check --input " + p.string()).exit_code == 0);
    }
    REQUIRE(i > 0);
}

TEST_CASE("verify: small cases pass, witness mode confirms strict containment") {
    auto res = run_cli("verify --n 2 --t 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("[FAIL]") == std::string::npos);
    CHECK(res.output.find("oracle-equals-generators") != std::string::npos);

    res = run_cli("verify --n 2 --t 1");
    CHECK(res.exit_code == 0);

    const auto p5 = write_matrix("witness5.json", 5, "2", fixtures::loose_extreme_5x5());
    res = run_cli("verify --n 5 --t 2 --input " + p5.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("witness-outside-families") != std::string::npos);

    CHECK(run_cli("verify --n 5 --t 2").exit_code == 2);  // witness required

    // a witness inside a family is a failed confirmation
    const auto corner5 = write_matrix("corner5.json", 5, "2", fixtures::corner(5, 0));
    CHECK(run_cli("verify --n 5 --t 2 --input " + corner5.string()).exit_code == 1);
}

TEST_CASE("optimize: simplex and scan modes") {
    const auto ident = write_text("utility_id.json",
                                  R"({"schema":"ldpp-utility/1","n":2,
                                      "matrix":[["1","0"],["0","1"]]})");
    auto res = run_cli("optimize --n 2 --t 2 --input " + ident.string());
    REQUIRE(res.exit_code == 0);
    CHECK(Json::parse(res.output)["value"] == "4/3");

    res = run_cli("optimize --n 2 --t 2 --mode scan --input " + ident.string());
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["value"] == "4/3");
    CHECK(j["method"] == "VertexScan");

    const auto u1 = write_text("utility_1.json",
                               R"({"schema":"ldpp-utility/1","n":1,"matrix":[["7/9"]]})");
    res = run_cli("optimize --n 1 --t 2 --input " + u1.string());
    REQUIRE(res.exit_code == 0);
    CHECK(Json::parse(res.output)["value"] == "7/9");
}

TEST_CASE("probe: clean run and bad input") {
    const auto out = (scratch_dir() / "probe_report.json").string();
    auto res = run_cli("probe --n 2 --t 2 --trials 20 --seed 5 --output " + out);
    REQUIRE(res.exit_code == 0);
    std::ifstream in(out);
    const Json j = Json::parse(in);
    CHECK(j["trialsRun"] == 20);
    CHECK(j["countersFound"].empty());

    CHECK(run_cli("probe --n 2 --t 1 --trials 5").exit_code == 2);
    CHECK(run_cli("probe --n 2 --trials 5").exit_code == 2);  // t missing
}
