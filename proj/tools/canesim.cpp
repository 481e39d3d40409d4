#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "canesim/harness.hpp"
#include "canesim/interaction.hpp"

using namespace canesim;
using nlohmann::json;

namespace {

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return json::parse(read_text(path)); }

ConfusionMatrix matrix_named(const std::string& m)
{
    if (m == "calibrated") return ConfusionMatrix::calibrated();
    if (m == "identity") return ConfusionMatrix::identity();
    if (m == "uniform") return ConfusionMatrix::uniform();
    return ConfusionMatrix::load(m);
}

SensorConfig sensor_named(const std::string& s)
{
    if (s == "default" || s == "noiseless" || s == "full_coverage") return sensor_from_json(json(s));
    return sensor_from_json(read_json(s));
}

struct Common {
    std::string executor_config;
    std::string sensor_config;
    std::string matrix;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--executor-config", c.executor_config, "Executor config JSON");
    app->add_option("--sensor-config", c.sensor_config, "Sensor config JSON or default|noiseless|full_coverage");
    app->add_option("--matrix", c.matrix, "Confusion matrix file or calibrated|identity|uniform");
}

int cmd_run(const std::string& config_path, std::vector<std::string> suites, std::optional<std::uint64_t> seed,
            std::optional<int> trials, const Common& common, const std::string& out, std::optional<int> jobs,
            bool gate, bool csv, bool quiet)
{
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
    if (!suites.empty()) {
        cfg.suites.clear();
        for (const auto& s : suites) cfg.suites.push_back(preset_suite(s));
    }
    if (cfg.suites.empty())
        for (const auto& s : preset_suite_names()) cfg.suites.push_back(preset_suite(s));
    if (seed) cfg.master_seed = *seed;
    if (trials)
        for (auto& s : cfg.suites) s.trials = *trials;
    if (!common.executor_config.empty()) cfg.executor = ExecutorConfig::from_json(read_json(common.executor_config));
    if (!common.sensor_config.empty()) cfg.sensor = sensor_named(common.sensor_config);
    if (!common.matrix.empty()) cfg.matrix = matrix_named(common.matrix);
    if (!out.empty()) cfg.output_dir = out;
    if (jobs) cfg.parallelism = *jobs;
    cfg.validate();

    ProgressFn progress;
    if (!quiet) {
        progress = [](const std::string& suite, int done, int total) {
            if (done % 50 == 0 || done == total) std::cerr << "  " << done << "/" << total << " (" << suite << ")\n";
        };
    }
    const SuiteReport report = run_suite(cfg, progress);
    std::cout << summary_table(report);
    if (!cfg.output_dir.empty()) {
        emit_report(report, cfg.output_dir, csv);
        std::cout << "\nreport written to " << (cfg.output_dir / "report.json").string() << '\n';
    }
    const auto failures = evaluate_gates(report);
    for (const auto& f : failures) std::cout << "GATE FAIL " << f.suite << ": " << f.reason << '\n';
    if (gate && !failures.empty()) return 1;
    return 0;
}

int cmd_gen(const std::string& tmpl_name, std::uint64_t seed, int count, const std::string& out)
{
    const SuiteTemplate tmpl = template_from_string(tmpl_name);
    if (out.empty()) {
        if (count != 1) throw std::invalid_argument("gen: --count > 1 needs --out <dir>");
        std::cout << to_json(generate(tmpl, seed)).dump(2) << '\n';
        return 0;
    }
    if (count == 1 && std::filesystem::path(out).extension() == ".json") {
        save(generate(tmpl, seed), out);
        return 0;
    }
    std::filesystem::create_directories(out);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        std::string name = tmpl_name;
        std::replace(name.begin(), name.end(), ':', '_');
        const auto path = std::filesystem::path(out) / (name + "_" + std::to_string(s) + ".json");
        save(generate(tmpl, s), path);
        std::cout << path.string() << '\n';
    }
    return 0;
}

int cmd_replay(const std::string& scenario_path, std::optional<std::uint64_t> seed, const Common& common,
               const std::string& log_path, const std::string& expect_path)
{
    const Scenario sc = load(scenario_path);
    ExecutorConfig exec;
    SensorConfig sensor;
    ConfusionMatrix matrix = ConfusionMatrix::calibrated();
    if (!common.executor_config.empty()) exec = ExecutorConfig::from_json(read_json(common.executor_config));
    if (!common.sensor_config.empty()) sensor = sensor_named(common.sensor_config);
    if (!common.matrix.empty()) matrix = matrix_named(common.matrix);
    const std::uint64_t s = seed.value_or(sc.seed);

    const TrialResult r = run_trial(sc, exec, sensor, matrix, s);
    const std::string ndjson = r.event_log.to_ndjson();
    if (log_path.empty() || log_path == "-") std::cout << ndjson;
    else std::ofstream(log_path, std::ios::binary) << ndjson;

    std::cerr << "seed " << s << ": " << (r.success() ? "success" : "failure") << ", reached=" << r.reached
              << " collisions=" << r.collisions << " etiquette=" << r.etiquette_violations
              << " steps=" << r.steps_taken << " replans=" << r.replans << " failure=" << to_string(r.failure)
              << '\n';
    if (!expect_path.empty()) {
        if (read_text(expect_path) != ndjson) {
            std::cerr << "event log differs from " << expect_path << '\n';
            return 1;
        }
        std::cerr << "event log matches " << expect_path << '\n';
    }
    return r.success() ? 0 : 2;
}

int cmd_interact(const std::string& script, const std::string& log_path, bool direct)
{
    std::vector<std::string> lines;
    {
        std::istringstream in(script.empty() || script == "-" ? std::string() : read_text(script));
        std::istream& src = script.empty() || script == "-" ? std::cin : static_cast<std::istream&>(in);
        for (std::string line; std::getline(src, line);)
            if (!line.empty()) lines.push_back(line);
    }
    MockBackends mocks;
    TranscriptLog log;
    std::vector<InteractionResponse> responses;
    if (direct) {
        for (const auto& l : lines) responses.push_back(orchestrate(Utterance::make(l), mocks.set(), {}, &log));
    } else {
        responses = run_session(lines, mocks.set(), {}, &log);
    }
    for (const auto& r : responses) {
        std::cout << "[";
        for (std::size_t i = 0; i < r.mode_path.size(); ++i) std::cout << (i ? " > " : "") << r.mode_path[i];
        std::cout << "]\n" << r.text << "\n\n";
    }
    if (!log_path.empty()) std::ofstream(log_path, std::ios::binary) << log.to_ndjson();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"canesim: smart cane navigation and interaction simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run evaluation suites and report success statistics");
    std::string config_path, out;
    std::vector<std::string> suites;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials, jobs;
    bool gate = false, csv = false, quiet = false;
    Common run_common;
    run->add_option("-c,--config", config_path, "Run config JSON");
    run->add_option("-s,--suite", suites, "Preset suite (repeatable): static, target_change, target_change_fov70, social");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("-n,--trials", trials, "Trials per suite");
    run->add_option("-o,--out", out, "Output directory");
    run->add_option("-j,--parallelism", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--gate", gate, "Exit nonzero when a suite gate fails");
    run->add_flag("--csv", csv, "Also write trials.csv");
    run->add_flag("-q,--quiet", quiet, "No progress output");
    add_common(run, run_common);

    auto* gen = app.add_subcommand("gen", "Generate scenario files");
    std::string tmpl = "static", gen_out;
    std::uint64_t gen_seed = 1;
    int count = 1;
    gen->add_option("-t,--template", tmpl, "static, target_change or social:<walking|talking|queuing|waiting>");
    gen->add_option("--seed", gen_seed, "Seed of the first scenario");
    gen->add_option("-n,--count", count, "Number of scenarios")->check(CLI::PositiveNumber);
    gen->add_option("-o,--out", gen_out, "Output file (.json) or directory");

    auto* replay = app.add_subcommand("replay", "Run one scenario and print its event log");
    std::string scenario_path, log_path, expect_path;
    std::optional<std::uint64_t> replay_seed;
    Common replay_common;
    replay->add_option("scenario", scenario_path, "Scenario JSON")->required();
    replay->add_option("--seed", replay_seed, "Trial seed (default: the scenario's seed)");
    replay->add_option("--log", log_path, "Write the NDJSON event log here instead of stdout");
    replay->add_option("--expect", expect_path, "Compare against a recorded event log");
    add_common(replay, replay_common);

    auto* interact = app.add_subcommand("interact", "Run scripted utterances through the mock orchestrator");
    std::string script, transcript;
    bool direct = false;
    interact->add_option("script", script, "Text file with one input line per line (default stdin)");
    interact->add_option("--log", transcript, "Write the NDJSON stage transcript here");
    interact->add_flag("--no-wake", direct, "Handle every line without wake-word gating");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, suites, seed, trials, run_common, out, jobs, gate, csv, quiet);
        if (*gen) return cmd_gen(tmpl, gen_seed, count, gen_out);
        if (*replay) return cmd_replay(scenario_path, replay_seed, replay_common, log_path, expect_path);
        if (*interact) return cmd_interact(script, transcript, direct);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
