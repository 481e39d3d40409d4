#include "canesim/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "canesim/rng.hpp"

namespace canesim {

using nlohmann::json;

namespace {

json read_json_file(const std::filesystem::path& path, const char* what)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open ") + what + " " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string(what) + " " + path.string() + ": " + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

} // namespace

// ---------------------------------------------------------------------------
// Configuration

json to_json(const SensorConfig& s)
{
    return {{"horizontal_fov_deg", s.horizontal_fov_deg},
            {"max_range_m", s.max_range_m},
            {"distance_noise_sigma", s.distance_noise_sigma},
            {"outlier_injection_prob", s.outlier_injection_prob},
            {"miss_prob", s.miss_prob},
            {"outlier_reference",
             s.outlier_reference == OutlierReference::IncludeCandidate ? "include_candidate" : "leave_one_out"}};
}

SensorConfig sensor_from_json(const json& j)
{
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "default") return SensorConfig{};
        if (name == "noiseless") return SensorConfig::noiseless();
        if (name == "full_coverage") return SensorConfig::full_coverage();
        throw std::invalid_argument("sensor config: unknown preset '" + name +
                                    "' (expected default, noiseless or full_coverage)");
    }
    if (!j.is_object()) throw std::invalid_argument("sensor config: expected an object or a preset name");
    SensorConfig s;
    for (const auto& [key, value] : j.items()) {
        if (key == "outlier_reference") {
            const auto v = value.is_string() ? value.get<std::string>() : std::string();
            if (v == "include_candidate") s.outlier_reference = OutlierReference::IncludeCandidate;
            else if (v == "leave_one_out") s.outlier_reference = OutlierReference::LeaveOneOut;
            else throw std::invalid_argument("sensor config: outlier_reference must be include_candidate or leave_one_out");
            continue;
        }
        if (!value.is_number()) throw std::invalid_argument("sensor config: " + key + " must be a number");
        const double v = value.get<double>();
        if (key == "horizontal_fov_deg") s.horizontal_fov_deg = v;
        else if (key == "max_range_m") s.max_range_m = v;
        else if (key == "distance_noise_sigma") s.distance_noise_sigma = v;
        else if (key == "outlier_injection_prob") s.outlier_injection_prob = v;
        else if (key == "miss_prob") s.miss_prob = v;
        else throw std::invalid_argument("sensor config: unknown key '" + key + "'");
    }
    s.validate();
    return s;
}

void RunConfig::validate() const
{
    if (parallelism < 1) throw std::invalid_argument("run config: parallelism must be >= 1");
    executor.validate();
    sensor.validate();
    matrix.validate();
    for (const SuiteSpec& s : suites) {
        if (s.name.empty()) throw std::invalid_argument("run config: suite without a name");
        if (s.trials < 1) throw std::invalid_argument("run config: suite '" + s.name + "' needs trials >= 1");
        if (s.templates.empty()) throw std::invalid_argument("run config: suite '" + s.name + "' has no templates");
        if (s.sensor) s.sensor->validate();
        if (s.executor) s.executor->validate();
    }
}

SuiteSpec preset_suite(const std::string& name)
{
    SuiteSpec s;
    s.name = name;
    if (name == "static") {
        s.templates = {SuiteTemplate::static_only()};
        s.trials = 50;
        s.sensor = SensorConfig::noiseless();
        s.gate.min_rate = 1.0;
    } else if (name == "target_change") {
        s.templates = {SuiteTemplate::target_change()};
        s.trials = 50;
        s.sensor = SensorConfig::full_coverage();
        s.gate.min_rate = 1.0;
    } else if (name == "target_change_fov70") {
        s.templates = {SuiteTemplate::target_change()};
        s.trials = 50;
        s.sensor = SensorConfig::noiseless();
        s.gate.require_fov_attribution = true;
    } else if (name == "social") {
        s.templates = {SuiteTemplate::social(ActivityClass::Walking), SuiteTemplate::social(ActivityClass::Talking),
                       SuiteTemplate::social(ActivityClass::Waiting)};
        s.trials = 500;
        s.gate.min_rate = 0.70;
        s.gate.max_rate = 0.90;
        s.gate.require_explained = true;
    } else {
        throw std::invalid_argument("unknown suite preset '" + name + "'");
    }
    return s;
}

std::vector<std::string> preset_suite_names() { return {"static", "target_change", "target_change_fov70", "social"}; }

namespace {

SuiteGate gate_from_json(const json& j)
{
    SuiteGate g;
    if (!j.is_object()) throw std::invalid_argument("gate: expected an object");
    for (const auto& [key, value] : j.items()) {
        if (key == "min_rate") g.min_rate = value.get<double>();
        else if (key == "max_rate") g.max_rate = value.get<double>();
        else if (key == "require_explained") g.require_explained = value.get<bool>();
        else if (key == "require_fov_attribution") g.require_fov_attribution = value.get<bool>();
        else throw std::invalid_argument("gate: unknown key '" + key + "'");
    }
    return g;
}

json gate_to_json(const SuiteGate& g)
{
    json j = json::object();
    if (g.min_rate) j["min_rate"] = *g.min_rate;
    if (g.max_rate) j["max_rate"] = *g.max_rate;
    j["require_explained"] = g.require_explained;
    j["require_fov_attribution"] = g.require_fov_attribution;
    return j;
}

ExecutorConfig executor_from(const json& j, const std::filesystem::path& base)
{
    if (j.is_string()) return ExecutorConfig::from_json(read_json_file(resolve(base, j.get<std::string>()), "executor config"));
    return ExecutorConfig::from_json(j);
}

SensorConfig sensor_from(const json& j, const std::filesystem::path& base)
{
    if (j.is_string()) {
        const auto v = j.get<std::string>();
        if (v == "default" || v == "noiseless" || v == "full_coverage") return sensor_from_json(j);
        return sensor_from_json(read_json_file(resolve(base, v), "sensor config"));
    }
    return sensor_from_json(j);
}

} // namespace

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir)
{
    if (!j.is_object()) throw std::invalid_argument("run config: expected a JSON object");
    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
            else if (key == "parallelism") c.parallelism = value.get<int>();
            else if (key == "output_dir") c.output_dir = resolve(base_dir, value.get<std::string>());
            else if (key == "executor_config") c.executor = executor_from(value, base_dir);
            else if (key == "sensor_config") c.sensor = sensor_from(value, base_dir);
            else if (key == "matrix") {
                const auto m = value.get<std::string>();
                if (m == "calibrated") c.matrix = ConfusionMatrix::calibrated();
                else if (m == "identity") c.matrix = ConfusionMatrix::identity();
                else if (m == "uniform") c.matrix = ConfusionMatrix::uniform();
                else c.matrix = ConfusionMatrix::load(resolve(base_dir, m));
            } else if (key == "suites") {
                for (const json& s : value) {
                    if (s.is_string()) {
                        c.suites.push_back(preset_suite(s.get<std::string>()));
                        continue;
                    }
                    SuiteSpec spec;
                    if (s.contains("preset")) spec = preset_suite(s.at("preset").get<std::string>());
                    for (const auto& [k, v] : s.items()) {
                        if (k == "preset") continue;
                        if (k == "name") spec.name = v.get<std::string>();
                        else if (k == "trials") spec.trials = v.get<int>();
                        else if (k == "templates") {
                            spec.templates.clear();
                            for (const json& t : v) spec.templates.push_back(template_from_string(t.get<std::string>()));
                        } else if (k == "sensor") spec.sensor = sensor_from(v, base_dir);
                        else if (k == "executor") spec.executor = executor_from(v, base_dir);
                        else if (k == "gate") spec.gate = gate_from_json(v);
                        else throw std::invalid_argument("suite: unknown key '" + k + "'");
                    }
                    c.suites.push_back(std::move(spec));
                }
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("run config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("run config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path)
{
    return from_json(read_json_file(path, "run config"), path.parent_path());
}

// ---------------------------------------------------------------------------
// Statistics

std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& suite, int index)
{
    return mix_seed(mix_seed(master_seed, fnv1a(suite)), static_cast<std::uint64_t>(index));
}

WilsonInterval wilson_interval(int successes, int trials)
{
    if (trials <= 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = trials;
    const double p = successes / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool fov_attributed(const EventLog& log)
{
    const auto& recs = log.records();
    std::size_t fail_at = recs.size();
    for (std::size_t i = 0; i < recs.size(); ++i)
        if (recs[i].event == "retarget_failed") fail_at = i;
    if (fail_at == recs.size()) return false;
    const json& missing = recs[fail_at].payload.at("vacant_out_of_view");
    if (missing.empty()) return false;
    for (const json& seat : missing) {
        std::string last;
        for (std::size_t i = 0; i < fail_at; ++i) {
            const auto& r = recs[i];
            if ((r.event == "seat_left_fov" || r.event == "seat_entered_fov") && r.payload.at("seat") == seat)
                last = r.event;
        }
        if (last != "seat_left_fov") return false;
    }
    return true;
}

TrialSummary summarize(const std::string& suite, int index, std::uint64_t seed, const SuiteTemplate& tmpl,
                       const TrialResult& r)
{
    TrialSummary s;
    s.suite = suite;
    s.index = index;
    s.seed = seed;
    s.scenario_template = to_string(tmpl);
    s.success = r.success();
    s.reached = r.reached;
    s.collisions = r.collisions;
    s.etiquette_violations = r.etiquette_violations;
    s.steps = r.steps_taken;
    s.replans = r.replans;
    s.retargets = r.retargets;
    s.simulated_time_s = r.simulated_time_s;
    s.failure = std::string(to_string(r.failure));
    s.misclassified = r.misclassified;
    s.unreachable_verified = r.unreachable_verified;
    s.fov_attributed = !r.success() && fov_attributed(r.event_log);
    return s;
}

std::vector<ReferenceRow> reference_rows()
{
    return {{"field: static obstacles", 3, 3},
            {"field: target change", 2, 3},
            {"field: social groups", 7, 9},
            {"simulation", 9, 10},
            {"field: activity recognition", 17, 20}};
}

SuiteStats aggregate(const SuiteSpec& spec, const std::vector<TrialSummary>& trials)
{
    SuiteStats st;
    st.name = spec.name;
    st.gate = spec.gate;
    double steps = 0, replans = 0, time = 0;
    for (const TrialSummary& t : trials) {
        if (t.suite != spec.name) continue;
        ++st.trials;
        steps += t.steps;
        replans += t.replans;
        time += t.simulated_time_s;
        if (t.misclassified) ++st.misclassified_trials;
        if (t.success) {
            ++st.successes;
            continue;
        }
        if (t.collisions > 0) ++st.failures.collision;
        if (t.etiquette_violations > 0) ++st.failures.etiquette;
        if (t.failure == "timeout") ++st.failures.timeout;
        else if (!t.reached) ++st.failures.not_reached;
        if (!t.explained()) ++st.unexplained_failures;
        if (!t.fov_attributed) ++st.unattributed_failures;
    }
    if (st.trials > 0) {
        st.success_rate = static_cast<double>(st.successes) / st.trials;
        st.mean_steps = steps / st.trials;
        st.mean_replans = replans / st.trials;
        st.mean_simulated_time_s = time / st.trials;
    }
    st.ci = wilson_interval(st.successes, st.trials);
    return st;
}

SuiteReport assemble(std::uint64_t master_seed, const std::vector<SuiteSpec>& specs, std::vector<TrialSummary> trials)
{
    SuiteReport r;
    r.master_seed = master_seed;
    for (const SuiteSpec& s : specs) {
        r.suites.push_back(aggregate(s, trials));
        r.pooled_trials += r.suites.back().trials;
        r.pooled_successes += r.suites.back().successes;
    }
    r.pooled_rate = r.pooled_trials > 0 ? static_cast<double>(r.pooled_successes) / r.pooled_trials : 0.0;
    r.pooled_ci = wilson_interval(r.pooled_successes, r.pooled_trials);
    r.trials = std::move(trials);
    return r;
}

// ---------------------------------------------------------------------------
// Running

SuiteReport run_suite(const RunConfig& config, const ProgressFn& progress)
{
    config.validate();
    const auto wall_start = std::chrono::steady_clock::now();

    struct Job {
        const SuiteSpec* spec;
        int index;
    };
    std::vector<Job> jobs;
    for (const SuiteSpec& s : config.suites)
        for (int i = 0; i < s.trials; ++i) jobs.push_back({&s, i});

    if (!config.output_dir.empty())
        for (const SuiteSpec& s : config.suites)
            std::filesystem::create_directories(config.output_dir / "trials" / s.name);

    std::vector<TrialSummary> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> done{0};
    std::mutex progress_mutex;
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const Job& job = jobs[k];
            try {
                const SuiteSpec& spec = *job.spec;
                const std::uint64_t seed = trial_seed(config.master_seed, spec.name, job.index);
                const SuiteTemplate& tmpl = spec.templates[static_cast<std::size_t>(job.index) % spec.templates.size()];
                const Scenario scenario = generate(tmpl, seed);
                const TrialResult r = run_trial(scenario, spec.executor.value_or(config.executor),
                                                spec.sensor.value_or(config.sensor), config.matrix, seed);
                results[k] = summarize(spec.name, job.index, seed, tmpl, r);
                if (!config.output_dir.empty())
                    write_file(config.output_dir / "trials" / spec.name / (std::to_string(job.index) + ".ndjson"),
                               r.event_log.to_ndjson());
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
            const int d = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(job.spec->name, d, static_cast<int>(jobs.size()));
            }
        }
    };

    const int threads = std::max(1, std::min<int>(config.parallelism, static_cast<int>(jobs.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    SuiteReport report = assemble(config.master_seed, config.suites, std::move(results));
    report.parallelism = config.parallelism;
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    report.generated_at = ts.str();
    return report;
}

std::vector<GateFailure> evaluate_gates(const SuiteReport& report)
{
    std::vector<GateFailure> out;
    for (const SuiteStats& s : report.suites) {
        std::ostringstream rate;
        rate << s.successes << "/" << s.trials;
        if (s.gate.min_rate && s.success_rate < *s.gate.min_rate)
            out.push_back({s.name, "success rate " + rate.str() + " below " + std::to_string(*s.gate.min_rate)});
        if (s.gate.max_rate && s.success_rate > *s.gate.max_rate)
            out.push_back({s.name, "success rate " + rate.str() + " above " + std::to_string(*s.gate.max_rate)});
        if (s.gate.require_explained && s.unexplained_failures > 0)
            out.push_back({s.name, std::to_string(s.unexplained_failures) + " unexplained failures"});
        if (s.gate.require_fov_attribution && s.unattributed_failures > 0)
            out.push_back({s.name, std::to_string(s.unattributed_failures) + " failures not attributed to the field of view"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json ci_json(const WilsonInterval& w) { return json::array({w.lo, w.hi}); }
WilsonInterval ci_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json trial_json(const TrialSummary& t)
{
    return {{"suite", t.suite},
            {"index", t.index},
            {"seed", t.seed},
            {"template", t.scenario_template},
            {"success", t.success},
            {"reached", t.reached},
            {"collisions", t.collisions},
            {"etiquette_violations", t.etiquette_violations},
            {"steps", t.steps},
            {"replans", t.replans},
            {"retargets", t.retargets},
            {"simulated_time_s", t.simulated_time_s},
            {"failure", t.failure},
            {"misclassified", t.misclassified},
            {"unreachable_verified", t.unreachable_verified},
            {"fov_attributed", t.fov_attributed}};
}

TrialSummary trial_from(const json& j)
{
    TrialSummary t;
    t.suite = j.at("suite").get<std::string>();
    t.index = j.at("index").get<int>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.scenario_template = j.at("template").get<std::string>();
    t.success = j.at("success").get<bool>();
    t.reached = j.at("reached").get<bool>();
    t.collisions = j.at("collisions").get<int>();
    t.etiquette_violations = j.at("etiquette_violations").get<int>();
    t.steps = j.at("steps").get<int>();
    t.replans = j.at("replans").get<int>();
    t.retargets = j.at("retargets").get<int>();
    t.simulated_time_s = j.at("simulated_time_s").get<double>();
    t.failure = j.at("failure").get<std::string>();
    t.misclassified = j.at("misclassified").get<bool>();
    t.unreachable_verified = j.at("unreachable_verified").get<bool>();
    t.fov_attributed = j.at("fov_attributed").get<bool>();
    return t;
}

json stats_json(const SuiteStats& s)
{
    return {{"name", s.name},
            {"trials", s.trials},
            {"successes", s.successes},
            {"success_rate", s.success_rate},
            {"ci95", ci_json(s.ci)},
            {"mean_steps", s.mean_steps},
            {"mean_replans", s.mean_replans},
            {"mean_simulated_time_s", s.mean_simulated_time_s},
            {"failures",
             {{"collision", s.failures.collision},
              {"etiquette", s.failures.etiquette},
              {"not_reached", s.failures.not_reached},
              {"timeout", s.failures.timeout}}},
            {"misclassified_trials", s.misclassified_trials},
            {"unexplained_failures", s.unexplained_failures},
            {"unattributed_failures", s.unattributed_failures},
            {"gate", gate_to_json(s.gate)}};
}

SuiteStats stats_from(const json& j)
{
    SuiteStats s;
    s.name = j.at("name").get<std::string>();
    s.trials = j.at("trials").get<int>();
    s.successes = j.at("successes").get<int>();
    s.success_rate = j.at("success_rate").get<double>();
    s.ci = ci_from(j.at("ci95"));
    s.mean_steps = j.at("mean_steps").get<double>();
    s.mean_replans = j.at("mean_replans").get<double>();
    s.mean_simulated_time_s = j.at("mean_simulated_time_s").get<double>();
    const json& f = j.at("failures");
    s.failures = {f.at("collision").get<int>(), f.at("etiquette").get<int>(), f.at("not_reached").get<int>(),
                  f.at("timeout").get<int>()};
    s.misclassified_trials = j.at("misclassified_trials").get<int>();
    s.unexplained_failures = j.at("unexplained_failures").get<int>();
    s.unattributed_failures = j.at("unattributed_failures").get<int>();
    s.gate = gate_from_json(j.at("gate"));
    return s;
}

} // namespace

json SuiteReport::body_json() const
{
    json suites_j = json::array();
    for (const SuiteStats& s : suites) suites_j.push_back(stats_json(s));
    json trials_j = json::array();
    for (const TrialSummary& t : trials) trials_j.push_back(trial_json(t));
    json refs = json::array();
    for (const ReferenceRow& r : references)
        refs.push_back({{"label", r.label}, {"successes", r.successes}, {"trials", r.trials}});
    return {{"master_seed", master_seed},
            {"suites", suites_j},
            {"pooled",
             {{"trials", pooled_trials},
              {"successes", pooled_successes},
              {"success_rate", pooled_rate},
              {"ci95", ci_json(pooled_ci)}}},
            {"published_reference", refs},
            {"trials", trials_j}};
}

json SuiteReport::to_json() const
{
    return {{"header", {{"generated_at", generated_at}, {"wall_time_s", wall_time_s}, {"parallelism", parallelism}}},
            {"body", body_json()}};
}

SuiteReport SuiteReport::from_json(const json& j)
{
    SuiteReport r;
    const json& h = j.at("header");
    r.generated_at = h.at("generated_at").get<std::string>();
    r.wall_time_s = h.at("wall_time_s").get<double>();
    r.parallelism = h.at("parallelism").get<int>();
    const json& b = j.at("body");
    r.master_seed = b.at("master_seed").get<std::uint64_t>();
    for (const json& s : b.at("suites")) r.suites.push_back(stats_from(s));
    const json& p = b.at("pooled");
    r.pooled_trials = p.at("trials").get<int>();
    r.pooled_successes = p.at("successes").get<int>();
    r.pooled_rate = p.at("success_rate").get<double>();
    r.pooled_ci = ci_from(p.at("ci95"));
    r.references.clear();
    for (const json& x : b.at("published_reference"))
        r.references.push_back({x.at("label").get<std::string>(), x.at("successes").get<int>(), x.at("trials").get<int>()});
    for (const json& t : b.at("trials")) r.trials.push_back(trial_from(t));
    return r;
}

std::string summary_table(const SuiteReport& report)
{
    std::ostringstream out;
    out << std::fixed;
    out << std::left << std::setw(22) << "suite" << std::right << std::setw(7) << "trials" << std::setw(7) << "succ"
        << std::setw(8) << "rate" << std::setw(18) << "95% CI" << std::setw(8) << "steps" << std::setw(8) << "replan"
        << std::setw(9) << "time_s" << std::setw(6) << "coll" << std::setw(6) << "etiq" << std::setw(7) << "unrch"
        << std::setw(6) << "tout" << std::setw(7) << "unexp" << '\n';
    auto ci = [](const WilsonInterval& w) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << "[" << w.lo << ", " << w.hi << "]";
        return s.str();
    };
    for (const SuiteStats& s : report.suites) {
        out << std::left << std::setw(22) << s.name << std::right << std::setw(7) << s.trials << std::setw(7)
            << s.successes << std::setw(8) << std::setprecision(3) << s.success_rate << std::setw(18) << ci(s.ci)
            << std::setw(8) << std::setprecision(1) << s.mean_steps << std::setw(8) << std::setprecision(2)
            << s.mean_replans << std::setw(9) << std::setprecision(1) << s.mean_simulated_time_s << std::setw(6)
            << s.failures.collision << std::setw(6) << s.failures.etiquette << std::setw(7) << s.failures.not_reached
            << std::setw(6) << s.failures.timeout << std::setw(7) << s.unexplained_failures << '\n';
    }
    out << std::left << std::setw(22) << "pooled" << std::right << std::setw(7) << report.pooled_trials << std::setw(7)
        << report.pooled_successes << std::setw(8) << std::setprecision(3) << report.pooled_rate << std::setw(18)
        << ci(report.pooled_ci) << '\n';
    out << "\npublished reference counts (not computed here):\n";
    for (const ReferenceRow& r : report.references)
        out << "  " << std::left << std::setw(30) << r.label << std::right << r.successes << "/" << r.trials << '\n';
    return out.str();
}

std::string trials_csv(const SuiteReport& report)
{
    std::ostringstream out;
    out << "suite,index,seed,template,success,reached,collisions,etiquette_violations,steps,replans,retargets,"
           "simulated_time_s,failure,misclassified,unreachable_verified,fov_attributed\n";
    for (const TrialSummary& t : report.trials)
        out << t.suite << ',' << t.index << ',' << t.seed << ',' << t.scenario_template << ',' << t.success << ','
            << t.reached << ',' << t.collisions << ',' << t.etiquette_violations << ',' << t.steps << ','
            << t.replans << ',' << t.retargets << ',' << t.simulated_time_s << ',' << t.failure << ','
            << t.misclassified << ',' << t.unreachable_verified << ',' << t.fov_attributed << '\n';
    return out.str();
}

void emit_report(const SuiteReport& report, const std::filesystem::path& dir, bool csv)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", report.to_json().dump(2) + "\n");
    write_file(dir / "summary.txt", summary_table(report));
    if (csv) write_file(dir / "trials.csv", trials_csv(report));
}

} // namespace canesim
