#include <doctest.h>

#include "canesim/executor.hpp"
#include "oracle/dijkstra.hpp"

using namespace canesim;

namespace {

Scenario room_with_seat(Cell seat)
{
    Scenario s;
    s.seats = {{seat, false}};
    s.start_pose = {{12, 4}, Heading::North};
    return s;
}

TrialResult run(const Scenario& s, std::uint64_t seed = 1, SensorConfig sensor = SensorConfig::noiseless())
{
    return run_trial(s, ExecutorConfig{}, sensor, ConfusionMatrix::identity(), seed);
}

} // namespace

TEST_CASE("straight run to a seat four cells ahead")
{
    const TrialResult r = run(room_with_seat({8, 4}));
    CHECK(r.reached);
    CHECK(r.success());
    CHECK(r.steps_taken == 4);
    CHECK(r.collisions == 0);
    CHECK(r.failure == FailureReason::None);
    CHECK(r.event_log.find("target_fixed") != nullptr);
    CHECK(r.event_log.count("reached") == 1);
    int forward = 0;
    for (const HapticCommand& h : r.haptics)
        if (h.motor == Motor::Forward && h.pulses == 1) ++forward;
    CHECK(forward == 4);
}

TEST_CASE("target taken mid-run retargets to the other seat")
{
    Scenario s = room_with_seat({2, 4});
    s.seats.push_back({{3, 2}, false});
    s.events = {{EventTrigger::at_step(3), SeatBecomesOccupied{1}}};
    const TrialResult r = run(s);
    REQUIRE(r.event_log.find("target_fixed") != nullptr);
    CHECK(r.event_log.find("target_fixed")->payload.at("seat") == "seat-1");
    CHECK(r.reached);
    CHECK(r.retargets >= 1);
    CHECK(r.replans >= 1);
    const EventRecord* last = nullptr;
    for (const auto& rec : r.event_log.records())
        if (rec.event == "retarget") last = &rec;
    REQUIRE(last != nullptr);
    CHECK(last->payload.at("seat") == "seat-0");
}

TEST_CASE("talking group sealing the room fails with no path")
{
    Scenario s = room_with_seat({1, 4});
    s.groups = {{"g1", {{6, 2}, {6, 5}}, ActivityClass::Talking}};
    REQUIRE_NOTHROW(s.validate());
    const TrialResult r = run(s);
    CHECK_FALSE(r.reached);
    CHECK(r.failure == FailureReason::NoPath);
    CHECK(r.etiquette_violations == 0);
    CHECK(r.collisions == 0);
    CHECK(r.unreachable_verified);

    // Same verdict from the oracle on the constrained map.
    GridMap constrained = s.ground_truth_map();
    for (int row = 4; row <= 8; ++row)
        for (int col = 0; col < constrained.cols(); ++col) constrained.set_state({row, col}, CellState::SocialBlocked);
    CHECK(std::isinf(oracle::dijkstra_cost(constrained, s.start_pose.cell, {1, 4})));
}

TEST_CASE("occupied target with nothing else in view fails with no target")
{
    Scenario s = room_with_seat({2, 4});
    s.seats.push_back({{11, 0}, false});
    s.events = {{EventTrigger::at_step(2), SeatBecomesOccupied{0}}};
    const TrialResult r = run(s);
    CHECK_FALSE(r.reached);
    CHECK(r.failure == FailureReason::NoTarget);
    const EventRecord* failed = r.event_log.find("retarget_failed");
    REQUIRE(failed != nullptr);
    CHECK(failed->payload.at("vacant_out_of_view").size() == 1);
}

TEST_CASE("no vacant seat at all fails immediately")
{
    Scenario s = room_with_seat({2, 4});
    s.seats[0].initially_occupied = true;
    const TrialResult r = run(s);
    CHECK(r.failure == FailureReason::NoTarget);
    CHECK(r.steps_taken == 0);
}

TEST_CASE("fixed target ignores better seats")
{
    FixedTarget t({"seat-0", ObjectClass::Seat, false, 3.0, {2, 2}, false});
    CHECK_FALSE(t.offer({"seat-1", ObjectClass::Seat, false, 1.0, {10, 2}, false}));
    CHECK(t.cell() == Cell{2, 2});
    t.on_occupied({"seat-1", ObjectClass::Seat, false, 1.0, {10, 2}, false});
    CHECK(t.current().object_id == "seat-1");
}

TEST_CASE("guide cues")
{
    const Pose p{{5, 5}, Heading::North};
    std::vector<Cell> ahead{{5, 5}, {4, 5}};
    GuideCue c = guide_step(p, ahead);
    CHECK(c.command == HapticCommand{Motor::Forward, 1, 1.0});
    CHECK(c.advance);

    std::vector<Cell> right{{5, 5}, {5, 6}};
    c = guide_step(p, right);
    CHECK(c.command.motor == Motor::Right);
    CHECK(c.new_heading == Heading::East);

    std::vector<Cell> behind{{5, 5}, {6, 5}};
    c = guide_step(p, behind);
    CHECK(c.command.motor == Motor::Left);
    CHECK_FALSE(c.advance);
    CHECK(c.double_turn);
    const GuideCue second = guide_step({{5, 5}, c.new_heading}, behind);
    CHECK(second.command.motor == Motor::Left);
    CHECK(second.advance);

    std::vector<Cell> far{{5, 5}, {3, 5}};
    CHECK_THROWS_AS(guide_step(p, far), std::invalid_argument);
    std::vector<Cell> alone{{5, 5}};
    CHECK_THROWS_AS(guide_step(p, alone), std::invalid_argument);
}

TEST_CASE("verification threshold")
{
    const ExecutorConfig cfg;
    CHECK(verify_and_advance({1, 1.0, 0.0}, cfg) == VerifyOutcome::Advance);
    CHECK(verify_and_advance({1, 0.58, 0.42}, cfg) == VerifyOutcome::Retry);
    CHECK(verify_and_advance({1, 0.9, 0.10}, cfg) == VerifyOutcome::Retry);
    CHECK(verify_and_advance({1, 0.95, 0.05}, cfg) == VerifyOutcome::Advance);
}

TEST_CASE("drift correction interval")
{
    const ExecutorConfig cfg;
    const Pose truth{{5, 5}, Heading::North};
    const Pose off{{6, 5}, Heading::North};
    DriftResult d = drift_correct(truth, truth, 3, cfg);
    CHECK_FALSE(d.corrected);
    CHECK(d.pose == truth);
    d = drift_correct(off, truth, 3, cfg);
    CHECK(d.checked);
    CHECK(d.corrected);
    CHECK(d.pose == truth);
    d = drift_correct(off, truth, 2, cfg);
    CHECK_FALSE(d.checked);
    CHECK(d.pose == off);
    CHECK(drift_correct(off, truth, 2, cfg, true).corrected);
}

TEST_CASE("waiting for a walking group")
{
    Scenario s = room_with_seat({1, 4});
    s.groups = {{"g1", {{6, 4}}, ActivityClass::Walking}};
    const GridMap map = s.ground_truth_map();
    const HumanGroup& g = s.groups[0];
    const std::vector<ActivityReport> reports{{"g1", ActivityClass::Walking, {}}};
    const SocialConstraint c = compile_constraints(s.groups, reports, map, s.start_pose.cell);
    const std::map<std::string, std::set<Cell>> fp{{"g1", expand_group(g, map)}};

    SUBCASE("group leaves")
    {
        s.events = {{EventTrigger::at_time(15.0), GroupVacates{"g1"}}};
        WorldState w(s);
        std::vector<HapticCommand> haptics;
        double clock = 10.0;
        CHECK(wait_for_group(c, fp, w, haptics, clock, 0, 10.0) == WaitOutcome::Cleared);
        CHECK(clock == 20.0);
        REQUIRE(haptics.size() == 1);
        CHECK(haptics[0] == kWalkingWaitSignal);
    }
    SUBCASE("group stays")
    {
        WorldState w(s);
        std::vector<HapticCommand> haptics;
        double clock = 10.0;
        CHECK(wait_for_group(c, fp, w, haptics, clock, 0, 10.0) == WaitOutcome::Persisted);
    }
    SUBCASE("no walking group")
    {
        WorldState w(s);
        std::vector<HapticCommand> haptics;
        double clock = 0.0;
        CHECK_THROWS_AS(wait_for_group(SocialConstraint{}, fp, w, haptics, clock, 0, 10.0), std::invalid_argument);
    }
}

TEST_CASE("persisting walking group becomes an obstacle")
{
    Scenario s = room_with_seat({1, 4});
    s.groups = {{"g1", {{6, 3}, {6, 4}}, ActivityClass::Walking}};
    const TrialResult r = run(s);
    const EventRecord* waited = r.event_log.find("wait_finished");
    REQUIRE(waited != nullptr);
    CHECK(waited->payload.at("outcome") == "persisted");
    CHECK(r.reached);
    CHECK(r.success());
    CHECK(r.simulated_time_s >= 20.0);
}

TEST_CASE("trials are deterministic in the seed")
{
    const Scenario s = generate(SuiteTemplate::social(ActivityClass::Walking), 4);
    const TrialResult a = run_trial(s, ExecutorConfig{}, SensorConfig{}, ConfusionMatrix::calibrated(), 99);
    const TrialResult b = run_trial(s, ExecutorConfig{}, SensorConfig{}, ConfusionMatrix::calibrated(), 99);
    CHECK(a.event_log.to_ndjson() == b.event_log.to_ndjson());
    CHECK(a.haptics == b.haptics);
    CHECK(a.steps_taken == b.steps_taken);
}

TEST_CASE("timeout")
{
    ExecutorConfig cfg;
    cfg.max_steps = 2;
    const TrialResult r = run_trial(room_with_seat({2, 4}), cfg, SensorConfig::noiseless(), ConfusionMatrix::identity(), 1);
    CHECK(r.failure == FailureReason::Timeout);
    CHECK_FALSE(r.reached);
}

TEST_CASE("sidestepping user still arrives")
{
    ExecutorConfig cfg;
    cfg.user_error_prob = 0.3;
    int reached = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        if (run_trial(room_with_seat({2, 4}), cfg, SensorConfig::noiseless(), ConfusionMatrix::identity(), seed).reached)
            ++reached;
    CHECK(reached >= 18);
}

TEST_CASE("event log round trip")
{
    const TrialResult r = run(generate(SuiteTemplate::target_change(), 3));
    const std::string text = r.event_log.to_ndjson();
    CHECK(EventLog::from_ndjson(text) == r.event_log);
    CHECK(EventLog::from_ndjson(text).to_ndjson() == text);
}

TEST_CASE("executor config json")
{
    ExecutorConfig cfg;
    cfg.max_steps = 77;
    cfg.user_error_prob = 0.1;
    const ExecutorConfig back = ExecutorConfig::from_json(cfg.to_json());
    CHECK(back.max_steps == 77);
    CHECK(back.user_error_prob == 0.1);
    CHECK_THROWS_AS(ExecutorConfig::from_json({{"max_stpes", 3}}), std::invalid_argument);
    CHECK_THROWS_AS(ExecutorConfig::from_json({{"max_steps", "3"}}), std::invalid_argument);
    CHECK_THROWS_AS(ExecutorConfig::from_json({{"max_steps", 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(ExecutorConfig::from_json({{"user_error_prob", 2.0}}), std::invalid_argument);
}

TEST_CASE("names")
{
    CHECK(to_string(FailureReason::NoPath) == "no_path");
    CHECK(to_string(ExecutorPhase::Acquire) == "acquire");
    CHECK(to_string(Motor::Left) == "left");
}
