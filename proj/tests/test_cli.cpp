// End-to-end tests that spawn the installed binary; its path comes in via
// the SEMIABEL_CLI_PATH compile definition.
#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SEMIABEL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("exit code contract") {
    CHECK(run("invariants -m -4 -n -1").exit_code == 0);
    CHECK(run("invariants -m 0 -n 2").exit_code == 2);   // n even
    CHECK(run("invariants -m 1 -n 5").exit_code == 2);   // gcd(5, 5) = 5
    CHECK(run("quotient -m 0 -n 1").exit_code == 2);     // no witness
    CHECK(run("reduce -m 0 -n 1 -p 6").exit_code == 2);  // composite p
    CHECK(run("nonsense").exit_code == 1);
    CHECK(run("invariants -m 4").exit_code == 1);  // missing -n
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("invariants output") {
    RunResult r = run("invariants -m -4 -n -1");
    CHECK(r.out.find("289") != std::string::npos);
    CHECK(r.out.find("20346417/289") != std::string::npos);

    r = run("invariants -m 2 -n 1 --json");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "invariants");
    CHECK(j["result"]["j"]["num"] == "35937");
    CHECK(j["result"]["j"]["den"] == "17");
    CHECK(j["provenance"].is_array());
}

TEST_CASE("json round-trips byte-identically") {
    for (const char* args : {"invariants -m 2 -n 1 --json", "reduce -m 4 -n 1 --json",
                             "torsion -m -4 -n -1 --json", "quotient -m -4 -n -1 --json",
                             "enumerate --box 3 --json"}) {
        RunResult r = run(args);
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.dump(2) + "\n" == r.out);
    }
}

TEST_CASE("table and json carry the same payload") {
    RunResult table = run("reduce -m 4 -n 1");
    RunResult js = run("reduce -m 4 -n 1 --json");
    auto j = nlohmann::json::parse(js.out);
    REQUIRE(j["result"]["fibers"].size() == 2);
    for (const auto& f : j["result"]["fibers"]) {
        std::string line = "p = " + f["p"].get<std::string>() + "  " +
                           f["kodaira"]["symbol"].get<std::string>() + "  " +
                           f["twist"].get<std::string>();
        CHECK(table.out.find(line) != std::string::npos);
    }
    CHECK(j["result"]["fibers"][0]["kodaira"]["symbol"] == "I_2");
    CHECK(j["result"]["fibers"][1]["kodaira"]["symbol"] == "I_2");
}

TEST_CASE("reduce single prime and chain structure") {
    RunResult r = run("reduce -m -2 -n 1 -p 3 --json");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["result"]["fibers"].size() == 1);
    const auto& f = j["result"]["fibers"][0];
    CHECK(f["p"] == "3");
    CHECK(f["kodaira"]["v"] == 1);
    CHECK(f["chain"]["components"].size() == 1);
    CHECK(f["chain"]["components"][0]["kind"] == "pinched_line");

    // a good prime still reports, with v = 0 and no chain
    r = run("reduce -m -2 -n 1 -p 7 --json");
    j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["fibers"][0]["kodaira"]["v"] == 0);
    CHECK(j["result"]["fibers"][0]["twist"] == "good");
}

TEST_CASE("torsion and quotient payloads") {
    auto j = nlohmann::json::parse(run("torsion -m -4 -n -1 --json").out);
    CHECK(j["result"]["d"] == "1");
    CHECK(j["result"]["Q"]["x"]["num"] == "4");
    CHECK(j["result"]["Q"]["y"]["num"] == "-2");
    CHECK(j["result"]["P_plus_Q"]["x"]["num"] == "-1");
    CHECK(j["result"]["P_plus_Q"]["x"]["den"] == "4");
    CHECK(j["result"]["narrow_P"] == true);

    j = nlohmann::json::parse(run("quotient -m -4 -n -1 --json").out);
    CHECK(j["result"]["target"]["m"] == "2");
    CHECK(j["result"]["target"]["n"] == "1");

    j = nlohmann::json::parse(run("torsion -m 2 -n 1 --json").out);
    CHECK_FALSE(j["result"].contains("d"));
    CHECK(j["result"]["R"]["x"]["num"] == "-1");
}

TEST_CASE("enumerate payload") {
    auto j = nlohmann::json::parse(run("enumerate --box 2 --json").out);
    CHECK(j["result"]["count"] == 10);
    bool saw = false;
    for (const auto& row : j["result"]["curves"])
        if (row["m"] == "2" && row["n"] == "1") {
            saw = true;
            CHECK(row["disc"] == "17");
        }
    CHECK(saw);
}
