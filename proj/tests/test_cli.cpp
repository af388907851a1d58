#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

// end-to-end checks against the installed binary (path injected by the build)

namespace {

struct RunResult {
    int rc;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd =
        (env.empty() ? "" : env + " ") + std::string(QUASICOX_CLI_PATH) + " " + args +
        " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("pinned command outputs") {
    const auto cmp = run("hilbert --group A1 --mult 2 --method compare --max-degree 6");
    CHECK(cmp.rc == 0);
    CHECK(cmp.out == "1,0,1,0,1,1,1\n1,0,1,0,1,1,1\nMATCH\n");

    const auto basis = run("basis --group A1 --mult 1 --degree 3");
    CHECK(basis.rc == 0);
    CHECK(basis.out == "[\"x^3\"]\n");

    const auto formula = run("hilbert --group A1 --mult 0 --method formula --max-degree 3");
    CHECK(formula.rc == 0);
    CHECK(formula.out == "1,1,1,1\n");
}

TEST_CASE("usage errors exit 1 with empty stdout") {
    CHECK(run("basis --group Z9 --mult 1 --degree 2").rc == 1);
    CHECK(run("basis --group B2 --mult 1 --degree 2").rc == 1);  // orbit-count mismatch
    CHECK(run("berest --group A1 --mult 1 --q x").rc == 1);      // not quasi-invariant
    CHECK(run("berest --group A1 --mult 1 --q x^^").rc == 1);    // malformed polynomial
    CHECK(run("hilbert --group A1 --mult 1 --max-degree 70").rc == 1);
    CHECK(run("nonsense").rc == 1);
    CHECK(run("basis --group Z9 --mult 1 --degree 2").out.empty());
}

TEST_CASE("deterministic output for identical configuration") {
    const auto a = run("hilbert --group 'I2(3)' --mult 1 --method compare");
    const auto b = run("hilbert --group 'I2(3)' --mult 1 --method compare");
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);

    const auto d1 = run("dunkl-check --group B2 --seed 9 --format json");
    const auto d2 = run("dunkl-check --group B2 --seed 9 --format json");
    CHECK(d1.rc == 0);
    CHECK(d1.out == d2.out);
}

TEST_CASE("json output is schema-stable and newline-terminated") {
    const auto info = run("group-info --group B2 --format json");
    REQUIRE(info.rc == 0);
    REQUIRE(!info.out.empty());
    CHECK(info.out.back() == '\n');
    const auto j = nlohmann::json::parse(info.out);
    CHECK(j["group"] == "B2");
    CHECK(j["order"] == 8);
    CHECK(j["reflections"] == 4);
    CHECK(j["orbit_sizes"] == nlohmann::json({2, 2}));
    CHECK(j["degrees"] == nlohmann::json({2, 4}));

    const auto hil = run("hilbert --group A1 --mult 2 --method compare --max-degree 6 "
                         "--format json");
    REQUIRE(hil.rc == 0);
    const auto h = nlohmann::json::parse(hil.out);
    CHECK(h["direct"] == nlohmann::json({1, 0, 1, 0, 1, 1, 1}));
    CHECK(h["formula"] == h["direct"]);
    CHECK(h["match"] == true);

    const auto ba = run("ba --m 1");
    REQUIRE(ba.rc == 0);
    const auto b = nlohmann::json::parse(ba.out);
    CHECK(b["m"] == 1);
    CHECK(b["psi"] == "k*x - 1");
    CHECK(b["symmetry"] == true);
    for (const auto& e : b["eigen"]) CHECK(e["ok"] == true);
}

TEST_CASE("environment variable sets the default truncation") {
    const auto r = run("hilbert --group A1 --mult 0 --method formula", "QUASICOX_MAX_DEGREE=4");
    CHECK(r.rc == 0);
    CHECK(r.out == "1,1,1,1,1\n");
    CHECK(run("group-info", "QUASICOX_MAX_DEGREE=powder").rc == 1);
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "cli_out_capture.json";
    const auto direct = run("basis --group B2 --mult 1,1 --degree 4");
    const auto redirected = run("basis --group B2 --mult 1,1 --degree 4 --out " + path);
    CHECK(redirected.rc == 0);
    CHECK(redirected.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("report subcommands succeed on a nontrivial group") {
    CHECK(run("sl2-report --group B2 --coupling 1,2").rc == 0);
    const auto che = run("cherednik-check --group A1 --format json");
    REQUIRE(che.rc == 0);
    const auto j = nlohmann::json::parse(che.out);
    CHECK(j["formula_ok"] == true);
    CHECK(j["equivariance_ok"] == true);
    CHECK(j["pbw"]["independent"] == true);
    CHECK(j["reflection_coefficients"][0][0][0] == "-2");

    const auto sep = run("separate --group A1 --mult 1 --z 1 --y 2");
    CHECK(sep.rc == 0);
    CHECK(sep.out.find("p(y) = 0") != std::string::npos);
}
