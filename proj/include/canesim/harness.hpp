#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "canesim/executor.hpp"
#include "canesim/perception.hpp"
#include "canesim/scenario.hpp"
#include "canesim/social.hpp"

namespace canesim {

// Pass conditions checked by `canesim run --gate`.
struct SuiteGate {
    std::optional<double> min_rate;
    std::optional<double> max_rate;
    // Every failure must carry a misclassification or a verified NoPath.
    bool require_explained = false;
    // Every failure must be a retarget that found no seat in view, after the
    // remaining vacant seats were logged leaving the field of view.
    bool require_fov_attribution = false;

    friend bool operator==(const SuiteGate&, const SuiteGate&) = default;
};

struct SuiteSpec {
    std::string name;
    std::vector<SuiteTemplate> templates;  // trial i uses templates[i % size]
    int trials = 1;
    std::optional<SensorConfig> sensor;      // overrides RunConfig::sensor
    std::optional<ExecutorConfig> executor;  // overrides RunConfig::executor
    SuiteGate gate;
};

struct RunConfig {
    std::vector<SuiteSpec> suites;
    std::uint64_t master_seed = 1;
    ExecutorConfig executor;
    SensorConfig sensor;
    ConfusionMatrix matrix = ConfusionMatrix::calibrated();
    std::filesystem::path output_dir;  // empty: write nothing
    int parallelism = 1;

    void validate() const;

    // Relative paths inside the document resolve against base_dir.
    static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static RunConfig load(const std::filesystem::path& path);
};

// "static", "target_change", "target_change_fov70", "social".
SuiteSpec preset_suite(const std::string& name);
std::vector<std::string> preset_suite_names();

SensorConfig sensor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SensorConfig& s);

std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& suite, int index);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
    friend bool operator==(const WilsonInterval&, const WilsonInterval&) = default;
};

// 95 % score interval; n = 0 gives [0, 1].
WilsonInterval wilson_interval(int successes, int trials);

struct TrialSummary {
    std::string suite;
    int index = 0;
    std::uint64_t seed = 0;
    std::string scenario_template;
    bool success = false;
    bool reached = false;
    int collisions = 0;
    int etiquette_violations = 0;
    int steps = 0;
    int replans = 0;
    int retargets = 0;
    double simulated_time_s = 0.0;
    std::string failure;
    bool misclassified = false;
    bool unreachable_verified = false;
    bool fov_attributed = false;

    bool explained() const noexcept { return misclassified || unreachable_verified; }
    friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

TrialSummary summarize(const std::string& suite, int index, std::uint64_t seed, const SuiteTemplate& tmpl,
                       const TrialResult& r);

// True when a failed trial ended in retarget_failed and every vacant seat
// out of view at that point had a seat_left_fov record before it.
bool fov_attributed(const EventLog& log);

struct FailureBreakdown {
    int collision = 0;
    int etiquette = 0;
    int not_reached = 0;
    int timeout = 0;
    friend bool operator==(const FailureBreakdown&, const FailureBreakdown&) = default;
};

struct SuiteStats {
    std::string name;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    WilsonInterval ci;
    double mean_steps = 0.0;
    double mean_replans = 0.0;
    double mean_simulated_time_s = 0.0;
    FailureBreakdown failures;
    int misclassified_trials = 0;
    int unexplained_failures = 0;
    int unattributed_failures = 0;
    SuiteGate gate;

    friend bool operator==(const SuiteStats&, const SuiteStats&) = default;
};

struct ReferenceRow {
    std::string label;
    int successes = 0;
    int trials = 0;
    friend bool operator==(const ReferenceRow&, const ReferenceRow&) = default;
};

// Published field and simulation counts, shown next to our estimates.
std::vector<ReferenceRow> reference_rows();

struct SuiteReport {
    std::uint64_t master_seed = 0;
    std::vector<SuiteStats> suites;
    int pooled_trials = 0;
    int pooled_successes = 0;
    double pooled_rate = 0.0;
    WilsonInterval pooled_ci;
    std::vector<TrialSummary> trials;
    std::vector<ReferenceRow> references = reference_rows();

    // Header fields: excluded from the body.
    std::string generated_at;
    double wall_time_s = 0.0;
    int parallelism = 1;

    nlohmann::json body_json() const;
    nlohmann::json to_json() const;  // {"header": ..., "body": ...}
    static SuiteReport from_json(const nlohmann::json& j);

    // Body equality; header fields ignored.
    friend bool operator==(const SuiteReport& a, const SuiteReport& b) { return a.body_json() == b.body_json(); }
};

SuiteStats aggregate(const SuiteSpec& spec, const std::vector<TrialSummary>& trials);
SuiteReport assemble(std::uint64_t master_seed, const std::vector<SuiteSpec>& specs,
                     std::vector<TrialSummary> trials);

using ProgressFn = std::function<void(const std::string& suite, int done, int total)>;

// Runs every trial (parallel across `parallelism` threads, folded in trial
// order). When output_dir is set, each trial's event log is written to
// <output_dir>/trials/<suite>/<index>.ndjson.
SuiteReport run_suite(const RunConfig& config, const ProgressFn& progress = {});

struct GateFailure {
    std::string suite;
    std::string reason;
};
std::vector<GateFailure> evaluate_gates(const SuiteReport& report);

// report.json, summary.txt and, when csv is set, trials.csv.
void emit_report(const SuiteReport& report, const std::filesystem::path& dir, bool csv = false);
std::string summary_table(const SuiteReport& report);
std::string trials_csv(const SuiteReport& report);

} // namespace canesim
