// Runs every acceptance criterion and prints one verdict line per check.
// Exit code 0 only when all of them pass.

#include <contsense/verify.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    contsense::VerifyOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc) {
            opt.threads = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--threads N]\n", argv[0]);
            return 2;
        }
    }
    opt.on_result = [](const contsense::CriterionResult& r) {
        std::printf("%s %02d %s: %s [%.1fs]\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.details.c_str(), r.seconds);
        std::fflush(stdout);
    };
    const contsense::VerifyReport report = contsense::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : report.criteria) {
        if (!r.passed) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(report.criteria.size()) - failed,
                report.criteria.size());
    return report.all_passed ? 0 : 1;
}
