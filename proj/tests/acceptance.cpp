// Acceptance run: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "canesim/harness.hpp"
#include "canesim/interaction.hpp"
#include "canesim/jalali.hpp"
#include "canesim/perception.hpp"
#include "canesim/planner.hpp"
#include "canesim/social.hpp"
#include "fuzz.hpp"
#include "oracle/dijkstra.hpp"
#include "oracle/jalali_oracle.hpp"
#include "support.hpp"

using namespace canesim;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

constexpr std::uint64_t kMasterSeed = 1;

SuiteReport run_preset(const std::string& name, int parallelism = 8)
{
    RunConfig cfg;
    cfg.suites = {preset_suite(name)};
    cfg.master_seed = kMasterSeed;
    cfg.parallelism = parallelism;
    return run_suite(cfg);
}

Outcome planner_optimality()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240320);
    int matches = 0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        auto inst = testsupport::random_instance(rng);
        DStarLite p(inst.map, inst.start, inst.goal, GoalPolicy::AnyTraversable);
        p.compute_shortest_path(inst.map);
        if (p.g(inst.start) == oracle::dijkstra_cost(inst.map, inst.start, inst.goal)) ++matches;
    }
    const double dt = seconds_since(t0);
    return {matches == n && dt < 5.0, std::to_string(matches) + "/" + std::to_string(n) + " in " + fmt("%.2f s", dt)};
}

Outcome replan_equivalence()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(77);
    const int sequences = 100;
    int steps = 0, agree = 0;
    for (int s = 0; s < sequences; ++s) {
        auto inst = testsupport::random_instance(rng);
        GridMap map = inst.map;
        Cell start = inst.start;
        DStarLite p(map, start, inst.goal, GoalPolicy::AnyTraversable);
        p.compute_shortest_path(map);
        std::uniform_int_distribution<int> len(1, 10), coord(0, map.rows() - 1);
        const int toggles = len(rng);
        for (int k = 0; k < toggles; ++k) {
            if (p.start_reachable()) {
                const auto path = p.extract_path(map);
                if (path.size() > 1) start = path[1];
            }
            Cell victim{coord(rng), coord(rng)};
            while (victim == inst.goal) victim = {coord(rng), coord(rng)};
            const bool now_free = !map.is_traversable(victim);
            map.set_state(victim, now_free ? CellState::Free : CellState::StaticObstacle);
            const CostChange ch{victim, now_free};
            p.apply_changes(map, std::span(&ch, 1), start);
            p.compute_shortest_path(map);
            DStarLite fresh(map, start, inst.goal, GoalPolicy::AnyTraversable);
            fresh.compute_shortest_path(map);
            const double oracle_cost = oracle::dijkstra_cost(map, start, inst.goal);
            ++steps;
            if (p.g(start) == fresh.g(start) && p.g(start) == oracle_cost) ++agree;
        }
    }
    const double dt = seconds_since(t0);
    return {agree == steps && dt < 10.0,
            std::to_string(agree) + "/" + std::to_string(steps) + " steps over " + std::to_string(sequences) +
                " sequences in " + fmt("%.2f s", dt)};
}

Outcome outlier_filter()
{
    auto frames_from = [](const std::vector<double>& readings) {
        std::vector<DetectionFrame> out;
        for (double d : readings) {
            DetectionFrame f;
            f.observations.push_back({"o", ObjectClass::Other, false, d, {0, 0}, false});
            out.push_back(f);
        }
        return out;
    };
    auto single = [&](const std::vector<double>& r, double expected) {
        const auto out = filter_outliers(frames_from(r));
        return out.size() == 1 && std::abs(out[0].distance - expected) < 1e-12;
    };
    std::vector<double> a(9, 2.0);
    a.push_back(3.0);
    std::vector<double> c(5, 1.0);
    c.insert(c.end(), 5, 1.09);
    const bool fixtures = single(a, 2.0) && single(std::vector<double>(10, 1.5), 1.5) && single(c, 1.045);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.3, 6.0), scale(1.3, 2.0);
    std::uniform_int_distribution<int> pos(0, 9);
    int removed = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double d = dist(rng);
        std::vector<double> r(10, d);
        r[static_cast<std::size_t>(pos(rng))] = d * scale(rng);
        if (single(r, d)) ++removed;
    }
    return {fixtures && removed == n,
            std::string("fixtures ") + (fixtures ? "ok" : "FAILED") + ", outlier removed in " + std::to_string(removed) +
                "/" + std::to_string(n)};
}

Outcome static_suite()
{
    const auto t0 = Clock::now();
    const SuiteReport r = run_preset("static");
    const double dt = seconds_since(t0);
    const SuiteStats& s = r.suites.at(0);
    return {s.trials == 50 && s.success_rate == 1.0 && dt < 30.0,
            std::to_string(s.successes) + "/" + std::to_string(s.trials) + " in " + fmt("%.2f s", dt)};
}

Outcome target_change_suite()
{
    const SuiteReport full = run_preset("target_change");
    const SuiteReport narrow = run_preset("target_change_fov70");
    const SuiteStats& f = full.suites.at(0);
    const SuiteStats& n = narrow.suites.at(0);
    const int failures = n.trials - n.successes;
    return {f.trials == 50 && f.success_rate == 1.0 && n.unattributed_failures == 0,
            "full FOV " + std::to_string(f.successes) + "/" + std::to_string(f.trials) + "; 70 deg " +
                std::to_string(n.successes) + "/" + std::to_string(n.trials) + ", " +
                std::to_string(failures - n.unattributed_failures) + "/" + std::to_string(failures) +
                " failures attributed to the field of view"};
}

Outcome social_suite()
{
    const auto t0 = Clock::now();
    const SuiteReport r = run_preset("social");
    const double dt = seconds_since(t0);
    const SuiteStats& s = r.suites.at(0);
    const bool in_band = s.success_rate >= 0.70 && s.success_rate <= 0.90;
    return {s.trials == 500 && in_band && s.unexplained_failures == 0 && dt < 120.0,
            std::to_string(s.successes) + "/" + std::to_string(s.trials) + " = " + fmt("%.3f", s.success_rate) +
                " (95% CI " + fmt("%.3f", s.ci.lo) + "-" + fmt("%.3f", s.ci.hi) + "), " +
                std::to_string(s.misclassified_trials) + " trials with a misclassification, " +
                std::to_string(s.unexplained_failures) + " unexplained failures, " + fmt("%.2f s", dt)};
}

Outcome confusion_calibration()
{
    Rng rng(10);
    double worst = 0.0;
    for (const ConfusionMatrix& m : {ConfusionMatrix::calibrated(), ConfusionMatrix::uniform(), ConfusionMatrix::identity()}) {
        const ConfusionMatrix e = empirical_confusion(m, 10000, rng);
        for (ActivityClass t : kActivityClasses)
            for (ActivityClass p : kActivityClasses) worst = std::max(worst, std::abs(e.at(t, p) - m.at(t, p)));
    }
    const ConfusionMatrix file = ConfusionMatrix::load(std::filesystem::path(CANESIM_DATA_DIR) / "calibrated_confusion.txt");
    const ConfusionMatrix emp = empirical_confusion(file, 10000, rng);
    const double talking = emp.at(ActivityClass::Talking, ActivityClass::Talking);
    const double queuing = emp.at(ActivityClass::Queuing, ActivityClass::Queuing);
    return {worst <= 0.02 && talking == 1.0 && std::abs(queuing - 0.93) <= 0.01,
            "max deviation " + fmt("%.4f", worst) + ", talking " + fmt("%.3f", talking) + ", queuing " +
                fmt("%.4f", queuing)};
}

Outcome router_contracts()
{
    int ok = 0;
    auto mode_is = [&](const std::string& text, Mode expected) {
        if (parse_mode_decision(mock_mode_router(Utterance::make(text))).mode == expected) ++ok;
    };
    auto vision_is = [&](const std::string& text, VisionAction a, std::optional<std::string> target) {
        const Utterance u = Utterance::make(text);
        const VisionDecision d = parse_vision_decision(mock_vision_router(u));
        const bool routed = parse_mode_decision(mock_mode_router(u)).mode == Mode::Vision;
        if (routed && d.action == a && d.target == target) ++ok;
    };
    mode_is("بطری آب را پیدا کن.", Mode::Vision);
    mode_is("امروز چند شنبه است؟", Mode::Voice);
    vision_is("می تونی بگی که جلوی من چیه؟", VisionAction::Scene, std::nullopt);
    vision_is("صندلی رو برام پیدا کن.", VisionAction::Object, "chair");
    vision_is("Find the empty chair for me", VisionAction::Object, "chair");
    vision_is("Locate the water bottle on the table to my right", VisionAction::Object, "bottle");

    const auto fuzz = testsupport::fuzz_contracts(1000, 4242);
    std::string detail = std::to_string(ok) + "/6 examples; fuzz " + std::to_string(fuzz.cases) + " mutations, " +
                         std::to_string(fuzz.rejected) + " rejected, " + std::to_string(fuzz.silent_misparses) +
                         " silent misparses";
    for (const auto& e : fuzz.examples) detail += " [" + e + "]";
    return {ok == 6 && fuzz.silent_misparses == 0, detail};
}

Outcome detector_gating()
{
    const std::vector<std::string> script{
        "what time is it",       "tell me a joke",           "describe my surroundings",
        "find the chair",        "امروز چند شنبه است؟",        "می تونی بگی که جلوی من چیه؟",
        "locate the bottle",     "what is around me",        "صندلی رو برام پیدا کن.",
        "how are you today",     "are there people nearby",  "what objects are near me",
        "search for my phone",   "what day is it",           "look in front of me"};
    int voice_scene = 0, object = 0, violations = 0;
    for (int i = 0; i < 100; ++i) {
        MockBackends m;
        const auto r = orchestrate(Utterance::make(script[static_cast<std::size_t>(i) % script.size()]), m.set());
        const bool is_object = std::find(r.mode_path.begin(), r.mode_path.end(), "OBJECT") != r.mode_path.end();
        if (is_object) {
            ++object;
            if (m.detector.calls < 1) ++violations;
        } else {
            ++voice_scene;
            if (m.detector.calls != 0) ++violations;
        }
    }
    return {violations == 0 && object > 0 && voice_scene > 0,
            std::to_string(voice_scene) + " VOICE/SCENE, " + std::to_string(object) + " OBJECT, " +
                std::to_string(violations) + " gating violations"};
}

Outcome jalali_conversion()
{
    const std::vector<CivilDate> dates{
        {1900, 1, 1},  {1900, 3, 21}, {1925, 3, 21}, {1948, 3, 20}, {1957, 3, 20}, {1970, 1, 1},  {1979, 2, 11},
        {1999, 12, 31}, {2000, 2, 29}, {2016, 3, 20}, {2021, 3, 20}, {2021, 3, 21}, {2024, 3, 19}, {2024, 3, 20},
        {2025, 3, 20}, {2025, 3, 21}, {2050, 6, 15}, {2079, 3, 20}, {2099, 12, 31}, {2100, 12, 31}};
    int exact = 0;
    std::string misses;
    for (const CivilDate& g : dates) {
        const CivilDate got = gregorian_to_jalali(g.year, g.month, g.day);
        const CivilDate want = oracle::gregorian_to_jalali(g);
        if (got == want && oracle::jalali_to_gregorian(got) == g) ++exact;
        else misses += " " + std::to_string(g.year) + "-" + std::to_string(g.month) + "-" + std::to_string(g.day);
    }
    const bool nowruz = gregorian_to_jalali(2024, 3, 20) == CivilDate{1403, 1, 1};
    const bool leap_end = gregorian_to_jalali(2025, 3, 20) == CivilDate{1403, 12, 30};
    return {exact == static_cast<int>(dates.size()) && nowruz && leap_end,
            std::to_string(exact) + "/" + std::to_string(dates.size()) + " exact" + misses};
}

Outcome determinism()
{
    RunConfig cfg;
    for (const auto& name : preset_suite_names()) cfg.suites.push_back(preset_suite(name));
    cfg.master_seed = kMasterSeed;
    cfg.parallelism = 1;
    const std::string a = run_suite(cfg).body_json().dump();
    cfg.parallelism = 8;
    const std::string b = run_suite(cfg).body_json().dump();
    const std::string c = run_suite(cfg).body_json().dump();
    return {a == b && b == c, std::string("parallelism 1 vs 8 ") + (a == b ? "identical" : "DIFFER") +
                                  ", repeat at 8 " + (b == c ? "identical" : "DIFFER") + " (" +
                                  std::to_string(a.size()) + " bytes)"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 planner optimality", planner_optimality},
        {"2 replan equivalence", replan_equivalence},
        {"3 outlier filter", outlier_filter},
        {"4 static suite", static_suite},
        {"5 target-change suite", target_change_suite},
        {"6 social suite", social_suite},
        {"7 confusion calibration", confusion_calibration},
        {"8 router contracts", router_contracts},
        {"9 detector gating", detector_gating},
        {"10 jalali conversion", jalali_conversion},
        {"11 determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
