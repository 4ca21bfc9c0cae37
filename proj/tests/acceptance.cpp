// Acceptance gate: one line per numbered criterion, nonzero exit if any
// fails.  Criteria 1-9 run in-process through the shared harness; criterion
// 10 executes the installed binary end to end.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "semiabel/verify.hpp"

namespace {

bool run_cli_verify(std::string& detail) {
    std::string cmd = std::string(SEMIABEL_CLI_PATH) + " verify --box 100 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        detail = "could not spawn the binary";
        return false;
    }
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        detail = "nonzero exit from verify";
        return false;
    }
    for (int id = 1; id <= 9; ++id)
        if (out.find("[" + std::to_string(id) + "] pass") == std::string::npos) {
            detail = "scoreboard line " + std::to_string(id) + " missing or failed";
            return false;
        }
    detail = "verify --box 100 exits 0 with nine passing lines";
    return true;
}

}  // namespace

int main() {
    using namespace semiabel;
    VerifyOptions opt;
    opt.aux_box = 100;
    opt.jobs = 4;

    int failures = 0;
    auto report = [&](int id, const std::string& name, bool pass, const std::string& detail) {
        std::printf("criterion %2d %-4s %-38s %s\n", id, pass ? "pass" : "FAIL", name.c_str(),
                    detail.c_str());
        if (!pass) ++failures;
    };

    for (const CriterionResult& r : run_all_criteria(opt)) report(r.id, r.name, r.pass, r.detail);

    std::string detail;
    bool ok = run_cli_verify(detail);
    report(10, "end-to-end verify scoreboard", ok, detail);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
