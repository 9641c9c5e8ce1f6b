// Acceptance gate: runs the numerical certification checks A1..A10 and prints
// one PASS/FAIL line per criterion. Exit status 0 iff every selected check
// passed. Options: --only NAME (repeatable), --seed S, --quad-nodes K,
// --tolerance-scale X.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "djet/verify.hpp"

namespace {

[[noreturn]] void usage(const char* argv0) {
    std::fprintf(stderr,
                 "usage: %s [--only A1..A10]... [--seed S] [--quad-nodes K] "
                 "[--tolerance-scale X]\n",
                 argv0);
    std::exit(2);
}

}  // namespace

int main(int argc, char** argv) {
    djet::VerifyOptions opts;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) usage(argv[0]);
            return argv[++i];
        };
        try {
            if (a == "--only")
                opts.only.push_back(next());
            else if (a == "--seed")
                opts.seed = std::stoull(next());
            else if (a == "--quad-nodes")
                opts.quad_nodes = std::stoi(next());
            else if (a == "--tolerance-scale")
                opts.tolerance_scale = std::stod(next());
            else
                usage(argv[0]);
        } catch (const std::exception&) {
            usage(argv[0]);
        }
    }

    std::vector<djet::CheckResult> checks;
    try {
        checks = djet::run_acceptance(opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 2;
    }
    if (checks.empty()) {
        std::fprintf(stderr, "no checks selected\n");
        return 2;
    }
    for (const djet::CheckResult& c : checks) {
        std::printf("%s %s: %s measured=%.6g tolerance=%.6g detail=%s\n", c.name.c_str(),
                    c.title.c_str(), c.passed ? "PASS" : "FAIL", c.measured, c.tolerance,
                    c.detail.c_str());
    }
    return djet::all_passed(checks) ? 0 : 1;
}
