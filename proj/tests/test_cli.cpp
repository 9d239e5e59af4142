#include "lvaci/dynamics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LV3_TOOL_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("cli exit codes are the documented contract") {
    CHECK(run_cli("analyze 1 -1 1").exit_code == 0);
    CHECK(run_cli("analyze 2 3 7").exit_code == 3);
    CHECK(run_cli("analyze 1 0 0").exit_code == 4);
    CHECK(run_cli("analyze 1 x 1").exit_code == 2);
    CHECK(run_cli("analyze 1 1").exit_code == 2);
    CHECK(run_cli("analyze 0 0 0").exit_code == 2);
}

TEST_CASE("cli analyze reports the offending exponent for (2,3,7)") {
    const CliResult res = run_cli("analyze 2 3 7");
    CHECK(res.output.find("6/7") != std::string::npos);
    CHECK(res.output.find("not algebraically completely integrable") != std::string::npos);
}

TEST_CASE("cli analyze json round-trips and is deterministic") {
    const CliResult a = run_cli("analyze 1 -1 1 --json");
    const CliResult b = run_cli("analyze 1 -1 1 --json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const nlohmann::json j = nlohmann::json::parse(a.output);
    CHECK(j.dump(2) + "\n" == a.output);  // parse -> serialize identity
    CHECK(j["aci"]["is_aci"] == true);
    CHECK(j["class"]["kind"] == "l3");
    CHECK(j["input"]["a"] == "1");
    CHECK(j["integrality"]["all_integer"] == true);
}

TEST_CASE("cli scan finds the named classes and stays deterministic") {
    const CliResult res = run_cli("scan --max 1 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    CHECK(j["all_agree"] == true);
    bool saw_l3 = false, saw_l2 = false;
    for (const auto& row : j["rows"]) {
        if (row["class"]["kind"] == "l3") saw_l3 = true;
        if (row["class"]["kind"] == "l2") saw_l2 = true;
    }
    CHECK(saw_l3);
    CHECK(saw_l2);

    const CliResult res2 = run_cli("scan --max 1 --json");
    CHECK(res.output == res2.output);

    const nlohmann::json hist = j["histogram"];
    CHECK(hist.contains("l2"));
    CHECK(hist.contains("l3"));
    CHECK(hist.contains("l_lambda"));
    CHECK(hist.contains("l0"));
}

TEST_CASE("cli scan --max 3 histogram covers all six classes") {
    const CliResult res = run_cli("scan --max 3 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    for (const char* cls : {"l2", "l3", "l4", "l6", "l_lambda", "l0"}) {
        INFO(cls);
        CHECK(j["histogram"].contains(cls));
        CHECK(j["histogram"][cls].get<int>() >= 1);
    }
    CHECK(j["histogram"]["not_aci"].get<int>() >= 1);
    CHECK(j["histogram"]["degenerate"].get<int>() >= 1);
}

TEST_CASE("cli verify passes for the periodic KM example") {
    const CliResult res = run_cli("verify -1 1 -1 --x0 1,2,3 --t 2 --h 0.001 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    CHECK(j["pass"] == true);
    CHECK(j["km_lax"]["residual_zero"] == true);
    CHECK(j["km_lax"]["h3_drift"].get<double>() < 1e-8);
    CHECK(j["drift"]["h_drift"].get<double>() < 1e-8);
}

TEST_CASE("cli verify reports blow-up with exit 5") {
    // seed on a Laurent orbit upstream of its pole and flow into it
    using namespace lvaci;
    const LVSystem s(1, -1, 1);
    const Balance bal = expand(s, indicial_locus(s)[1], 8);
    const std::vector<RatVec3> coeffs = instantiate(bal, {Rational(1), Rational(1)});
    const RealVec3 x0 = eval_series(coeffs, -0.01L);
    char arg[160];
    std::snprintf(arg, sizeof(arg), "verify 1 -1 1 --x0 %.15Lg,%.15Lg,%.15Lg --t 0.05 --h 0.00001 --json",
                  x0[0], x0[1], x0[2]);
    const CliResult res = run_cli(arg);
    CHECK(res.exit_code == 5);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    CHECK(j.contains("blow_up_time"));
    CHECK(j["blow_up_time"].get<double>() < 0.02);
}

TEST_CASE("cli verify cross-checks the closed form when b = a + c") {
    const CliResult res = run_cli("verify 1 3 2 --x0 1,2,3 --t 2 --h 0.001 --tol 1e-6 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    REQUIRE(j.contains("closed_form"));
    CHECK(j["closed_form"]["max_rel_error"].get<double>() < 1e-6);
}

TEST_CASE("cli lemmas") {
    const CliResult res = run_cli("lemmas --bound 200 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    CHECK(j["matches_closed_form"] == true);

    const CliResult small = run_cli("lemmas --bound 1 --json");
    const nlohmann::json js = nlohmann::json::parse(small.output);
    CHECK(js["lemma1"] == nlohmann::json::parse("[[1,1]]"));
    CHECK(js["lemma2"] == nlohmann::json::parse("[[1,1]]"));
}

TEST_CASE("cli normalize") {
    const CliResult res = run_cli("normalize 2 0 2 --json");
    REQUIRE(res.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(res.output);
    const CliResult res2 = run_cli("normalize 1 0 1 --json");
    const nlohmann::json j2 = nlohmann::json::parse(res2.output);
    CHECK(j["representative"] == j2["representative"]);
}

TEST_CASE("cli --out writes the report to a file") {
    const std::string path = "/tmp/lv3_test_out.json";
    std::remove(path.c_str());
    const CliResult res = run_cli("analyze 1 0 1 --json --out " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.empty());
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::array<char, 8192> buf{};
    const size_t n = fread(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    std::remove(path.c_str());
    const nlohmann::json j = nlohmann::json::parse(std::string(buf.data(), n));
    CHECK(j["class"]["kind"] == "l2");
    CHECK(std::string(buf.data(), n).back() == '\n');  // newline-terminated
}
