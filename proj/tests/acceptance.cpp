// Acceptance suite: runs every verification check and prints one line per
// criterion. Exit status 0 iff all pass.
#include <chrono>
#include <cstdio>

#include "rcat/verification.hpp"

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    rcat::VerificationOptions opts;
    opts.work_dir = std::filesystem::temp_directory_path() / "rcatenoid-acceptance";
    const auto checks = rcat::run_verification_suite(opts);

    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        std::printf("[%s] criterion-%zu %-22s measured=%-13.6g tolerance=%-9.3g (%.2fs)\n",
                    c.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), c.measured,
                    c.tolerance, c.seconds);
        if (!c.pass) {
            std::printf("       %s\n", c.details.c_str());
            ++failed;
        }
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria passed in %.2fs\n", checks.size() - failed,
                checks.size(), total);
    return failed == 0 ? 0 : 1;
}
