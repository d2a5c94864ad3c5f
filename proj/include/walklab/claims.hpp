#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace walklab {

/// One executed check: both sides of a quantitative claim on a concrete
/// instance grid, with provenance for every number.
struct ClaimCheck {
    std::string claim_id;     // T1..T17
    std::string anchor;       // the inequality or identity being checked
    std::string instance;     // instance-grid descriptor
    double bound_value = 0;   // claim side (tolerance for identity checks)
    double measured_value = 0;
    double margin = 0;        // bound - measured, or measured - bound for lower bounds
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
    std::string provenance;   // exact | closed-form | sampled
    double runtime_sec = 0;   // reported separately, never in the payload
    nlohmann::json details;
};

struct SuiteConfig {
    std::vector<std::string> claims;  // empty = every registered claim
    std::uint64_t seed = 1;
    bool quick = false;               // trimmed instance grids for unit tests
};

SuiteConfig suite_config_from_json(const nlohmann::json& j);

struct VerificationReport {
    std::vector<ClaimCheck> checks;
    std::string config_digest;
    std::uint64_t seed = 0;
    int passed = 0, failed = 0, skipped = 0;

    bool all_pass() const { return failed == 0; }
};

const std::vector<std::string>& claim_ids();

/// Run one claim's default instance grid.
std::vector<ClaimCheck> run_check(const std::string& claim_id, const SuiteConfig& config);

/// Execute the selected claims and aggregate.
VerificationReport run_suite(const SuiteConfig& config);

/// Deterministic payload: identical configs and seeds give byte-identical
/// output. Runtimes live in report_metadata instead.
nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json report_metadata(const VerificationReport& report);
std::string report_table(const VerificationReport& report);

/// Bias/bound series over the expansion grid of complete powers
/// r = r_min..r_max; columns without a defined value stay empty.
std::string sweep_lambda_csv(const std::string& claim_id, const nlohmann::json& group_spec,
                             int r_min, int r_max, int n, std::uint64_t seed);

} // namespace walklab
