#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef ANNPOLY_CLI_PATH
#error "ANNPOLY_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ANNPOLY_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cli: stirling values and formula switch") {
    for (const char* formula : {"rec", "alt", "comp"}) {
        RunResult r = run_cli("stirling --n 6 --k 3 --formula " + std::string(formula));
        CHECK(r.exit_code == 0);
        CHECK(r.output == "90\n");
    }
    RunResult j = run_cli("--format json stirling --n 4 --k 2");
    CHECK(j.exit_code == 0);
    nlohmann::json parsed = nlohmann::json::parse(j.output);
    CHECK(parsed.at("S") == "7");
}

TEST_CASE("cli: generator listings match the fixed tables") {
    struct Case {
        unsigned r;
        const char* expected;
    };
    const Case cases[] = {
            {1, "2X, X^2\n"},
            {2, "4X, 2X^2, X^4\n"},
            {3, "8X, 4X^2, X^4\n"},
            {4, "16X, 8X^2, 2X^4, X^6\n"},
            {5, "32X, 16X^2, 4X^4, 2X^6, X^8\n"},
            {6, "64X, 32X^2, 8X^4, 4X^6, X^8\n"},
    };
    for (const Case& c : cases) {
        RunResult r = run_cli("generators --ideal jprime-e --r " + std::to_string(c.r));
        CHECK(r.exit_code == 0);
        CHECK(r.output == c.expected);
    }
}

TEST_CASE("cli: membership exit codes") {
    CHECK(run_cli("member --ideal jprime-e --r 2 --poly \"4X + 2X^2\"").exit_code == 0);
    RunResult out = run_cli("member --ideal jprime-e --r 2 --poly 2X");
    CHECK(out.exit_code == 1);
    CHECK(out.output == "not a member\n");
}

TEST_CASE("cli: usage errors exit with 2") {
    CHECK(run_cli("").exit_code == 2);                                // no subcommand
    CHECK(run_cli("stirling --n 4").exit_code == 2);                  // missing --k
    CHECK(run_cli("generators --ideal bogus --r 2").exit_code == 2);  // unknown ideal
    CHECK(run_cli("member --ideal j-e --r 2 --poly \"X +\"").exit_code == 2);  // parse error
    CHECK(run_cli("k-of-r --r 0").exit_code == 2);                    // domain error
    CHECK(run_cli("--format yaml k-of-r --r 1").exit_code == 2);      // bad format
}

TEST_CASE("cli: expand modes") {
    RunResult plain = run_cli("expand --poly X^3 --n 2");
    CHECK(plain.exit_code == 0);
    CHECK(plain.output == "A_0 = 0\nA_1 = 4\nA_2 = 12\n");

    RunResult shifted = run_cli("--format json expand --poly X^2 --shift-dim 2");
    CHECK(shifted.exit_code == 0);
    nlohmann::json parsed = nlohmann::json::parse(shifted.output);
    CHECK(parsed.at("n") == 2);
    CHECK(parsed.at("A") == nlohmann::json::array({"4", "-2", "2"}));

    CHECK(run_cli("expand --poly X^2 --n 1 --shift-dim 1").exit_code == 2);  // exclusive
    CHECK(run_cli("expand --poly X^2").exit_code == 2);                      // neither
}

TEST_CASE("cli: symbolic checks") {
    CHECK(run_cli("lemma32-check --r 3").exit_code == 0);
    CHECK(run_cli("theorem-check --r 2 --trials 50 --seed 5").exit_code == 0);
    CHECK(run_cli("ql-check --l 2").exit_code == 0);
    CHECK(run_cli("annihilate-check --poly 2X --r 1").exit_code == 0);
    CHECK(run_cli("annihilate-check --poly X --r 1 --max-n 2").exit_code == 1);
}

TEST_CASE("cli: witt verification") {
    CHECK(run_cli("witt-verify --field f3 --family dim=2 --poly \"X^3 - 4X\"").exit_code == 0);
    CHECK(run_cli("witt-verify --field c --poly 2").exit_code == 0);
    RunResult fail = run_cli("witt-verify --field f3 --poly \"X - 1\"");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("counterexample") != std::string::npos);
}

TEST_CASE("cli: named polynomials") {
    CHECK(run_cli("lewis --n 3").output == "X^4 - 10X^2 + 9\n");
    CHECK(run_cli("ql --l 2").output == "X^2 - 2X\n");
    RunResult cw = run_cli("comax-witness --k 1");
    CHECK(cw.exit_code == 0);
    CHECK(cw.output == "u = -2X + 3\nv = 2X + 1\n");
}

TEST_CASE("cli: identical invocations give byte-identical output") {
    const std::string cmds[] = {
            "--format json theorem-check --r 3 --trials 40 --seed 11",
            "--format csv scan-bound --max-n 40",
            "--format json witt-verify --field f5 --family all --poly \"X^3 - 4X\"",
    };
    for (const std::string& cmd : cmds) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
        CHECK_FALSE(a.output.empty());
    }
}

TEST_CASE("cli: scan-bound json round-trips through the library schema") {
    RunResult r = run_cli("--format json scan-bound --max-n 10");
    CHECK(r.exit_code == 0);
    nlohmann::json parsed = nlohmann::json::parse(r.output);
    CHECK(parsed.at("all_nonnegative") == true);
    CHECK(parsed.at("rows").size() == 10 * 11 / 2);
}
