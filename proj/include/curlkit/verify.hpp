#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace curlkit {

/// One verified statement at one tolerance. Exact polynomial checks report a
/// violation count with tolerance zero.
struct CheckResult {
    std::string name;
    std::string theorem;
    unsigned long long seed = 0;
    int n_samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    nlohmann::ordered_json details = nlohmann::ordered_json::array();

    nlohmann::ordered_json to_json() const;
};

struct SuiteOptions {
    unsigned long long seed = 7;
    /// Per-check tolerance overrides keyed by check name.
    std::map<std::string, double> tolerances;
    /// Include per-point detail records in the report.
    bool with_details = false;
};

std::vector<std::string> suite_names();

/// Run one named suite (or "all"); deterministic given (name, seed, options).
std::vector<CheckResult> run_suite_checks(const std::string& name, const SuiteOptions& opts);

/// Aggregate report: {suite, seed, version, pass, reports: [...]}.
nlohmann::ordered_json suite_report(const std::string& name, const SuiteOptions& opts);

inline constexpr const char* kReportVersion = "1";

}  // namespace curlkit
