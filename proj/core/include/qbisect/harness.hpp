#pragma once

// Scenario runner, point-cloud sampling, certificates.
//
// Every suite trial k draws from SplitMix64(seed).split(suite index).split(k),
// so results do not depend on the number of worker threads. Reports contain
// no wall-clock data; timings go to the caller (see the CLI's --timing).

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qbisect {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportSchema = "qbisect-report/1";
inline constexpr const char* kScenarioSchema = "qbisect-scenario/1";
inline constexpr const char* kCertificateSchema = "qbisect-certificate/1";

enum class Backend { Exact, Float };

const char* to_string(Backend b);

/// Suite names in execution order.
const std::vector<std::string>& suite_names();

struct Scenario {
    int n = 2;
    Backend backend = Backend::Exact;
    std::uint64_t seed = 1;
    /// Per-suite trial counts; suites not listed use default_trials().
    std::map<std::string, std::uint64_t> trials;
    double tolerance = 1e-9;
    std::vector<std::string> suites = suite_names();
    /// Bisector used by sample and certify, as ball-coordinate quaternion
    /// texts; empty means ball(1/2, 0'), ball(-1/2, 0').
    std::vector<std::string> p1;
    std::vector<std::string> p2;
    /// Negative control: the mostow suite perturbs its fiber samples off the
    /// bisector and must then fail.
    bool negative_control = false;

    std::uint64_t trials_for(const std::string& suite) const;
};

std::uint64_t default_trials(const std::string& suite);

/// Throws ConfigError naming the offending field.
void validate(const Scenario& s);
Scenario parse_scenario(std::string_view json_text);
std::string to_json(const Scenario& s);

struct SuiteResult {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    double max_residual = 0;           // float backend only
    std::vector<std::string> violations;  // first few failing trials
    std::vector<std::string> warnings;
    std::map<std::string, std::uint64_t> counters;  // suite-specific tallies

    bool pass() const { return failed == 0; }
};

struct Report {
    Scenario scenario;
    std::vector<SuiteResult> suites;
    bool pass() const;
};

Report run(const Scenario& s);
std::string to_json(const Report& r);

/// 0 pass, 1 property failure.
int exit_code(const Report& r);

/// Point cloud of `count` points: what is bisector | spine | slice | blade.
std::string sample(const Scenario& s, std::string_view what, std::size_t count);

/// Exact transcript of the quaternion, mostow, fan and starlike suites;
/// refuses the float backend.
std::string certify(const Scenario& s);

struct CheckResult {
    bool ok = false;
    std::size_t entries = 0;
    std::vector<std::string> errors;
};

CheckResult check_certificate(std::string_view json_text);

/// `qbisect bisector`: emit is spine | slice | samples.
struct ToolOutput {
    std::string json;
    bool pass = true;
};

ToolOutput bisector_tool(std::string_view p1_json, std::string_view p2_json, std::string_view emit, Backend backend,
                         std::uint64_t seed, std::size_t count);

/// `qbisect fan --config`: fields n, seed, center, selectors, trials (and
/// optional p1, p2).
ToolOutput fan_tool(std::string_view config_json);

/// Worker count: hardware concurrency capped by QBISECT_THREADS.
unsigned thread_count();

}  // namespace qbisect
