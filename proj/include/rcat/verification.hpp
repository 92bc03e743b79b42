#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rcat {

/// Outcome of one verification check. `measured` is the worst observed
/// margin for the check's headline quantity; `reference` states the claim
/// being tested and is serialized under the report's paper_ref key.
struct CheckResult {
    std::string name;
    std::string reference;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string details;
};

struct VerificationOptions {
    std::filesystem::path work_dir;   // empty: a directory under the system temp
    unsigned threads = 0;             // 0: auto
    double conservation_tol = 1e-8;   // tightening it below the double-precision
                                      // floor produces a controlled failure
};

/// Run every check of the one-shot verification suite in order.
std::vector<CheckResult> run_verification_suite(const VerificationOptions& opts = {});

/// Render the report as the stable JSON schema:
/// { config, checks: [{name, paper_ref, pass, measured, tolerance, seconds}], summary }.
std::string verification_report_json(const std::vector<CheckResult>& checks,
                                     const VerificationOptions& opts);

}  // namespace rcat
