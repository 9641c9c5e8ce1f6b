#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace djet {

struct CheckResult {
    std::string name;     // "A1".."A10"
    std::string title;    // what the check certifies
    bool passed = false;
    double measured = 0.0;   // worst observed value in the check's units
    double tolerance = 0.0;  // bound after tolerance_scale; pass iff measured < tolerance
    std::string detail;      // per-clause numbers, refinement records, failure analysis
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int quad_nodes = 64;
    double tolerance_scale = 1.0;
    std::vector<std::string> only;   // names to run; empty = all
    double norm_ratio_perturb = 0.0; // detector-sanity hook: multiplies the
                                     // A4 ladder value by (1 + perturb)
};

// Runs the acceptance checks A1..A10 (or the selected subset). Deterministic
// for a fixed seed; a check's samples do not depend on which other checks run.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& checks);

// Machine-readable run report: options echo, per-check records in fixed field
// order, overall status.
nlohmann::ordered_json report_json(const std::vector<CheckResult>& checks,
                                   const VerifyOptions& opts);

}  // namespace djet
