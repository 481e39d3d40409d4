#include "canesim/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "canesim/planner.hpp"
#include "canesim/rng.hpp"

namespace canesim {

using nlohmann::json;

std::string_view to_string(Motor m) noexcept
{
    switch (m) {
    case Motor::Left: return "left";
    case Motor::Right: return "right";
    case Motor::Forward: return "forward";
    }
    return "?";
}

std::string_view to_string(ExecutorPhase p) noexcept
{
    switch (p) {
    case ExecutorPhase::InitDelay: return "init_delay";
    case ExecutorPhase::Acquire: return "acquire";
    case ExecutorPhase::Classify: return "classify";
    case ExecutorPhase::Adapt: return "adapt";
    case ExecutorPhase::Plan: return "plan";
    case ExecutorPhase::Guide: return "guide";
    case ExecutorPhase::VerifyMove: return "verify_move";
    case ExecutorPhase::RecheckTarget: return "recheck_target";
    case ExecutorPhase::DriftCorrect: return "drift_correct";
    case ExecutorPhase::WaitForGroup: return "wait_for_group";
    case ExecutorPhase::Reached: return "reached";
    case ExecutorPhase::Failed: return "failed";
    }
    return "?";
}

std::string_view to_string(FailureReason r) noexcept
{
    switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::Timeout: return "timeout";
    case FailureReason::NoTarget: return "no_target";
    case FailureReason::NoPath: return "no_path";
    }
    return "?";
}

void ExecutorConfig::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("executor config: ") + name + " must be positive");
    };
    positive(init_delay_s, "init_delay_s");
    positive(frames_per_observation, "frames_per_observation");
    positive(verify_threshold, "verify_threshold");
    positive(drift_check_interval, "drift_check_interval");
    positive(walking_wait_s, "walking_wait_s");
    positive(cell_step_m, "cell_step_m");
    positive(max_steps, "max_steps");
    positive(step_time_s, "step_time_s");
    positive(max_retries, "max_retries");
    positive(talking_buffer, "talking_buffer");
    if (!(user_error_prob >= 0.0 && user_error_prob <= 1.0))
        throw std::invalid_argument("executor config: user_error_prob must lie in [0, 1]");
    if (!(odometry_sigma >= 0.0))
        throw std::invalid_argument("executor config: odometry_sigma must be non-negative");
}

json ExecutorConfig::to_json() const
{
    return {{"init_delay_s", init_delay_s},
            {"frames_per_observation", frames_per_observation},
            {"verify_threshold", verify_threshold},
            {"drift_check_interval", drift_check_interval},
            {"walking_wait_s", walking_wait_s},
            {"cell_step_m", cell_step_m},
            {"max_steps", max_steps},
            {"step_time_s", step_time_s},
            {"max_retries", max_retries},
            {"user_error_prob", user_error_prob},
            {"odometry_sigma", odometry_sigma},
            {"talking_buffer", talking_buffer}};
}

ExecutorConfig ExecutorConfig::from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("executor config: expected a JSON object");
    ExecutorConfig c;
    for (const auto& [key, value] : j.items()) {
        auto num = [&]() {
            if (!value.is_number()) throw std::invalid_argument("executor config: " + key + " must be a number");
            return value.get<double>();
        };
        auto integer = [&]() {
            if (!value.is_number_integer())
                throw std::invalid_argument("executor config: " + key + " must be an integer");
            return value.get<int>();
        };
        if (key == "init_delay_s") c.init_delay_s = num();
        else if (key == "frames_per_observation") c.frames_per_observation = integer();
        else if (key == "verify_threshold") c.verify_threshold = num();
        else if (key == "drift_check_interval") c.drift_check_interval = integer();
        else if (key == "walking_wait_s") c.walking_wait_s = num();
        else if (key == "cell_step_m") c.cell_step_m = num();
        else if (key == "max_steps") c.max_steps = integer();
        else if (key == "step_time_s") c.step_time_s = num();
        else if (key == "max_retries") c.max_retries = integer();
        else if (key == "user_error_prob") c.user_error_prob = num();
        else if (key == "odometry_sigma") c.odometry_sigma = num();
        else if (key == "talking_buffer") c.talking_buffer = integer();
        else throw std::invalid_argument("executor config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

GuideCue guide_step(const Pose& pose, std::span<const Cell> path)
{
    if (path.size() < 2 || path[0] != pose.cell)
        throw std::invalid_argument("guide_step: path must start at the pose and have a next cell");
    const Cell next = path[1];
    const RelativeMove m = relative_direction(pose, next);
    switch (m) {
    case RelativeMove::Forward: return {{Motor::Forward, 1, 1.0}, pose.heading, true, false};
    case RelativeMove::Left: return {{Motor::Left, 1, 1.0}, turn_left(pose.heading), true, false};
    case RelativeMove::Right: return {{Motor::Right, 1, 1.0}, turn_right(pose.heading), true, false};
    case RelativeMove::NotReachableInOneMove: break;
    }
    if (step(pose.cell, turn_around(pose.heading)) != next)
        throw std::invalid_argument("guide_step: next path cell is not adjacent");
    return {{Motor::Left, 1, 1.0}, turn_left(pose.heading), false, true};
}

VerifyOutcome verify_and_advance(const DisplacementEstimate& estimate, const ExecutorConfig& config)
{
    return estimate.relative_deviation < config.verify_threshold ? VerifyOutcome::Advance : VerifyOutcome::Retry;
}

DriftResult drift_correct(const Pose& believed, const Pose& truth, int step_count, const ExecutorConfig& config,
                          bool force)
{
    DriftResult r{believed, false, false};
    r.checked = force || (step_count > 0 && step_count % config.drift_check_interval == 0);
    if (r.checked && manhattan(believed.cell, truth.cell) >= 1) {
        r.pose = truth;
        r.corrected = true;
    }
    return r;
}

WaitOutcome wait_for_group(const SocialConstraint& constraint,
                           const std::map<std::string, std::set<Cell>>& footprints, WorldState& world,
                           std::vector<HapticCommand>& haptics, double& clock_s, int steps_taken, double wait_s)
{
    if (!constraint.wait_directive) throw std::invalid_argument("wait_for_group: no wait directive");
    haptics.push_back(kWalkingWaitSignal);
    const double start = clock_s;
    // Whole-second ticks so scripted motion is replayed in order.
    for (int k = 1; k < wait_s; ++k) world.advance(start + k, steps_taken);
    clock_s = start + wait_s;
    world.advance(clock_s, steps_taken);

    for (const std::string& id : constraint.pending_walking_groups) {
        const HumanGroup* g = world.group(id);
        const auto fp = footprints.find(id);
        if (!g || fp == footprints.end()) continue;
        for (Cell c : g->member_cells)
            if (fp->second.count(c)) return WaitOutcome::Persisted;
    }
    return WaitOutcome::Cleared;
}

namespace {

json cell_json(Cell c) { return json::array({c.row, c.col}); }

std::string group_of(const std::string& person_id)
{
    const auto pos = person_id.rfind("-m");
    return pos == std::string::npos ? person_id : person_id.substr(0, pos);
}

CellState belief_state(const ObjectObservation& o)
{
    switch (o.object_class) {
    case ObjectClass::Seat: return o.occupied ? CellState::SeatOccupied : CellState::SeatVacant;
    case ObjectClass::Person: return CellState::Human;
    case ObjectClass::Table:
    case ObjectClass::Other: return CellState::StaticObstacle;
    }
    return CellState::StaticObstacle;
}

constexpr int kMaxLooksPerStep = 4;

class Trial {
public:
    Trial(const Scenario& scenario, const ExecutorConfig& config, const SensorConfig& sensor,
          const ConfusionMatrix& matrix, std::uint64_t seed)
        : scenario_(scenario), config_(config), sensor_(sensor), matrix_(matrix), world_(scenario),
          belief_(scenario.map.make_grid()), plan_map_(belief_), true_(scenario.start_pose),
          believed_(scenario.start_pose), rng_sense_(substream(seed, "sense")),
          rng_classify_(substream(seed, "classify")), rng_user_(substream(seed, "user")),
          rng_odometry_(substream(seed, "odometry"))
    {
    }

    TrialResult run()
    {
        const auto wall_start = std::chrono::steady_clock::now();
        execute();
        result_.simulated_time_s = clock_;
        result_.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
        return std::move(result_);
    }

private:
    void log(const std::string& event, json payload = json::object())
    {
        result_.event_log.push(clock_, std::string(to_string(phase_)), event, std::move(payload));
    }

    void enter(ExecutorPhase p)
    {
        if (entered_ && p == phase_) return;
        const json payload = entered_ ? json{{"from", std::string(to_string(phase_))}} : json::object();
        phase_ = p;
        entered_ = true;
        log("phase", payload);
    }

    void emit(const HapticCommand& cmd, bool double_turn = false)
    {
        result_.haptics.push_back(cmd);
        json payload{{"motor", std::string(to_string(cmd.motor))}, {"pulses", cmd.pulses},
                     {"duration_s", cmd.pulse_duration_s}};
        if (double_turn) payload["double_turn"] = true;
        log("haptic", payload);
    }

    void fail(FailureReason reason, json payload = json::object())
    {
        enter(ExecutorPhase::Failed);
        result_.failure = reason;
        payload["reason"] = std::string(to_string(reason));
        log("failed", payload);
    }

    void fail_no_path()
    {
        const bool unreachable = !bfs_distance(plan_map_, believed_.cell, target_->cell());
        result_.unreachable_verified = unreachable;
        fail(FailureReason::NoPath, {{"oracle_unreachable", unreachable}, {"from", cell_json(believed_.cell)},
                                     {"target", cell_json(target_->cell())}});
    }

    void log_fired(const std::vector<std::size_t>& fired)
    {
        for (std::size_t i : fired) {
            if (events_json_.is_null()) events_json_ = to_json(scenario_).at("events");
            log("world_event", {{"index", i}, {"action", events_json_.at(i).at("action")}});
        }
    }

    // Belief map plus social blocks, as handed to the planner.
    GridMap compose_plan_map() const
    {
        GridMap m = belief_;
        auto block = [&](Cell c) {
            if (m.is_traversable(c)) m.set_state(c, CellState::SocialBlocked);
        };
        for (Cell c : active_blocked_) block(c);
        const std::vector<Cell> loose(unclassified_people_.begin(), unclassified_people_.end());
        for (Cell c : dilate(loose, 1, m)) block(c);
        return m;
    }

    void update_fov(const DetectionFrame& frame)
    {
        std::set<std::string> now;
        for (const ObjectObservation& o : frame.observations)
            if (o.object_class == ObjectClass::Seat) now.insert(o.object_id);
        for (const std::string& id : seats_in_view_)
            if (!now.count(id)) log("seat_left_fov", {{"seat", id}});
        for (const std::string& id : now)
            if (!seats_in_view_.count(id)) log("seat_entered_fov", {{"seat", id}});
        seats_in_view_ = std::move(now);
    }

    // Writes what is seen from `pose` into the belief map. Returns true if
    // anything the planner cares about changed.
    bool absorb(const Pose& pose, std::span<const ObjectObservation> observations)
    {
        bool changed = false;
        std::map<Cell, CellState> seen;
        for (Cell c : visible_cells(pose, sensor_, belief_)) seen[c] = CellState::Free;
        for (const ObjectObservation& o : observations) {
            if (o.cell == pose.cell) continue;
            seen[o.cell] = belief_state(o);
        }
        for (const auto& [cell, state] : seen) {
            if (belief_.state(cell) != state) {
                belief_.set_state(cell, state);
                changed = true;
            }
            if (unclassified_people_.erase(cell)) changed = true;
        }
        for (const ObjectObservation& o : observations) {
            if (o.object_class != ObjectClass::Person || o.cell == pose.cell) continue;
            if (!classified_groups_.count(group_of(o.object_id)) && unclassified_people_.insert(o.cell).second) {
                changed = true;
                log("unclassified_person", {{"id", o.object_id}, {"cell", cell_json(o.cell)}});
            }
        }
        return changed;
    }

    DetectionFrame look(const Pose& pose)
    {
        const auto objects = world_.objects();
        DetectionFrame frame = observe(objects, pose, sensor_, belief_.resolution(), rng_sense_, frame_counter_++);
        update_fov(frame);
        return frame;
    }

    // Pushes belief changes and the believed start into the planner.
    void sync_planner(bool corrected)
    {
        GridMap next = compose_plan_map();
        std::vector<CostChange> changes;
        for (std::size_t i = 0; i < next.cell_count(); ++i) {
            const Cell c = next.cell_at(i);
            const bool was = plan_map_.is_traversable(c);
            const bool now = next.is_traversable(c);
            if (was != now) changes.push_back({c, now});
        }
        plan_map_ = std::move(next);
        if (changes.empty() && planner_->start() == believed_.cell && !corrected) return;
        planner_->apply_changes(plan_map_, changes, believed_.cell);
        planner_->compute_shortest_path(plan_map_);
        if (!changes.empty() || corrected) {
            ++result_.replans;
            log("replan", {{"changes", changes.size()}, {"start", cell_json(believed_.cell)},
                           {"cost", planner_->start_reachable() ? json(planner_->g(believed_.cell)) : json(nullptr)}});
        }
    }

    // Fresh search towards the current target. False on failure.
    bool rebuild_planner()
    {
        plan_map_ = compose_plan_map();
        if (!plan_map_.goal_eligible(target_->cell())) {
            fail_no_path();
            return false;
        }
        planner_ = std::make_unique<DStarLite>(plan_map_, believed_.cell, target_->cell());
        planner_->compute_shortest_path(plan_map_);
        return true;
    }

    bool retarget(const DetectionFrame& frame)
    {
        enter(ExecutorPhase::RecheckTarget);
        log("target_occupied", {{"seat", target_->current().object_id}});
        std::vector<ObjectObservation> vacant;
        std::vector<std::string> in_view;
        for (const ObjectObservation& o : frame.observations) {
            if (o.object_class != ObjectClass::Seat) continue;
            in_view.push_back(o.object_id);
            if (!o.occupied) vacant.push_back(o);
        }
        try {
            const ObjectObservation next = select_target(vacant, believed_.cell);
            target_->on_occupied(next);
        } catch (const NoVacantSeat&) {
            std::vector<std::string> out_of_view;
            for (std::size_t i = 0; i < scenario_.seats.size(); ++i) {
                const std::string id = "seat-" + std::to_string(i);
                if (!world_.seat_occupied(i) && std::find(in_view.begin(), in_view.end(), id) == in_view.end())
                    out_of_view.push_back(id);
            }
            log("retarget_failed", {{"seats_in_view", in_view}, {"vacant_out_of_view", out_of_view}});
            fail(FailureReason::NoTarget);
            return false;
        }
        ++result_.retargets;
        ++result_.replans;
        log("retarget", {{"seat", target_->current().object_id}, {"cell", cell_json(target_->cell())}});
        enter(ExecutorPhase::Plan);
        return rebuild_planner();
    }

    void account_position()
    {
        const GridMap truth = world_.truth_map();
        if (!truth.is_traversable(true_.cell)) {
            ++result_.collisions;
            log("collision", {{"cell", cell_json(true_.cell)}, {"with", std::string(to_string(truth.state(true_.cell)))}});
        }
        if (active_blocked_.count(true_.cell)) {
            ++result_.etiquette_violations;
            log("etiquette_violation", {{"cell", cell_json(true_.cell)}});
        }
    }

    void move_user(Heading heading)
    {
        Heading dir = heading;
        if (config_.user_error_prob > 0.0 &&
            std::uniform_real_distribution<double>(0.0, 1.0)(rng_user_) < config_.user_error_prob) {
            dir = std::uniform_int_distribution<int>(0, 1)(rng_user_) == 0 ? turn_left(heading) : turn_right(heading);
            log("user_error", {{"moved", std::string(to_string(dir))}});
        }
        const Cell next = step(true_.cell, dir);
        if (!belief_.in_bounds(next)) {
            ++result_.collisions;
            log("collision", {{"cell", cell_json(next)}, {"with", "wall"}});
            return;
        }
        true_.cell = next;
    }

    void execute();

    const Scenario& scenario_;
    const ExecutorConfig& config_;
    const SensorConfig& sensor_;
    const ConfusionMatrix& matrix_;
    WorldState world_;
    GridMap belief_;
    GridMap plan_map_;
    Pose true_;
    Pose believed_;
    Rng rng_sense_;
    Rng rng_classify_;
    Rng rng_user_;
    Rng rng_odometry_;

    TrialResult result_;
    ExecutorPhase phase_ = ExecutorPhase::InitDelay;
    bool entered_ = false;
    double clock_ = 0.0;
    int frame_counter_ = 0;
    std::set<std::string> seats_in_view_;
    std::set<std::string> classified_groups_;
    std::set<Cell> unclassified_people_;
    std::set<Cell> active_blocked_;
    std::optional<FixedTarget> target_;
    std::unique_ptr<DStarLite> planner_;
    json events_json_;
};

void Trial::execute()
{
    config_.validate();
    sensor_.validate();
    matrix_.validate();

    enter(ExecutorPhase::InitDelay);
    clock_ += config_.init_delay_s;
    log_fired(world_.advance(clock_, 0));

    enter(ExecutorPhase::Acquire);
    std::vector<DetectionFrame> frames;
    for (int i = 0; i < config_.frames_per_observation; ++i) frames.push_back(look(true_));
    const auto filtered = filter_outliers(frames, sensor_.outlier_reference,
                                          static_cast<std::size_t>(config_.frames_per_observation));
    log("observed", {{"frames", frames.size()}, {"objects", filtered.size()}});

    try {
        target_.emplace(select_target(filtered, true_.cell));
    } catch (const NoVacantSeat&) {
        fail(FailureReason::NoTarget);
        return;
    }
    log("target_fixed", {{"seat", target_->current().object_id}, {"cell", cell_json(target_->cell())}});

    enter(ExecutorPhase::Classify);
    std::map<std::string, std::vector<Cell>> seen_members;
    for (const ObjectObservation& o : filtered)
        if (o.object_class == ObjectClass::Person) seen_members[group_of(o.object_id)].push_back(o.cell);
    std::vector<HumanGroup> groups;
    std::vector<ActivityReport> reports;
    for (auto& [id, cells] : seen_members) {
        const HumanGroup* truth = world_.group(id);
        if (!truth) continue;
        std::sort(cells.begin(), cells.end());
        HumanGroup seen{id, cells, truth->true_activity};
        ActivityReport report = classify(seen, matrix_, rng_classify_);
        const bool wrong = report.predicted != truth->true_activity;
        result_.misclassified = result_.misclassified || wrong;
        log("activity_classified", {{"group", id}, {"predicted", std::string(to_string(report.predicted))},
                                    {"true", std::string(to_string(truth->true_activity))},
                                    {"misclassified", wrong}});
        classified_groups_.insert(id);
        groups.push_back(std::move(seen));
        reports.push_back(std::move(report));
    }
    absorb(true_, filtered);

    enter(ExecutorPhase::Adapt);
    SocialConfig social;
    social.talking_buffer = config_.talking_buffer;
    social.walking_wait = {config_.walking_wait_s, 3};
    const SocialConstraint constraint = compile_constraints(groups, reports, belief_, true_.cell, social);
    active_blocked_ = constraint.blocked_cells;
    result_.degenerate = constraint.degenerate;
    log("constraints", {{"blocked", active_blocked_.size()}, {"wait", constraint.wait_directive.has_value()},
                        {"degenerate", constraint.degenerate}});

    if (constraint.wait_directive) {
        enter(ExecutorPhase::WaitForGroup);
        std::map<std::string, std::set<Cell>> footprints;
        for (const HumanGroup& g : groups)
            if (std::find(constraint.pending_walking_groups.begin(), constraint.pending_walking_groups.end(),
                          g.group_id) != constraint.pending_walking_groups.end())
                footprints[g.group_id] = expand_group(g, belief_);
        log("haptic", {{"motor", "forward"}, {"pulses", kWalkingWaitSignal.pulses},
                       {"duration_s", kWalkingWaitSignal.pulse_duration_s}, {"wait_s", config_.walking_wait_s}});
        const WaitOutcome outcome = wait_for_group(constraint, footprints, world_, result_.haptics, clock_,
                                                   result_.steps_taken, config_.walking_wait_s);
        const DetectionFrame after = look(true_);
        absorb(true_, after.observations);
        if (outcome == WaitOutcome::Persisted) {
            for (const auto& [id, fp] : footprints) active_blocked_.insert(fp.begin(), fp.end());
            if (active_blocked_.erase(true_.cell)) result_.degenerate = true;
        }
        log("wait_finished", {{"outcome", outcome == WaitOutcome::Cleared ? "cleared" : "persisted"},
                              {"blocked", active_blocked_.size()}});
    }

    enter(ExecutorPhase::Plan);
    if (!rebuild_planner()) return;
    log("planned", {{"cost", planner_->start_reachable() ? json(planner_->g(believed_.cell)) : json(nullptr)}});

    int looks = 0;
    while (true) {
        if (result_.steps_taken >= config_.max_steps) {
            fail(FailureReason::Timeout, {{"steps", result_.steps_taken}});
            return;
        }
        if (!planner_->start_reachable()) {
            fail_no_path();
            return;
        }
        const std::vector<Cell> path = planner_->extract_path(plan_map_);
        if (path.size() < 2) {
            // Believed arrival without the true pose agreeing; re-anchor.
            enter(ExecutorPhase::DriftCorrect);
            believed_ = true_;
            log("drift_check", {{"corrected", true}, {"forced", true}});
            if (true_.cell == target_->cell()) break;
            sync_planner(true);
            continue;
        }
        const GuideCue cue = guide_step(believed_, path);

        const Pose look_pose{true_.cell, cue.new_heading};
        const DetectionFrame frame = look(look_pose);
        const bool changed = absorb(look_pose, frame.observations);
        if (belief_.state(target_->cell()) == CellState::SeatOccupied) {
            if (!retarget(frame)) return;
            looks = 0;
            continue;
        }
        if (changed && looks < kMaxLooksPerStep) {
            ++looks;
            enter(ExecutorPhase::Plan);
            sync_planner(false);
            continue;
        }
        looks = 0;

        enter(ExecutorPhase::Guide);
        emit(cue.command, cue.double_turn);
        const Pose pre = true_;
        true_.heading = cue.new_heading;
        if (cue.advance) move_user(cue.new_heading);
        ++result_.steps_taken;
        clock_ += config_.step_time_s;
        log_fired(world_.advance(clock_, result_.steps_taken));
        account_position();

        enter(ExecutorPhase::VerifyMove);
        const int predicted = cue.advance ? 1 : 0;
        DisplacementEstimate est =
            measure_displacement(pre, true_, predicted, rng_odometry_, config_.odometry_sigma);
        int retries = 0;
        while (verify_and_advance(est, config_) == VerifyOutcome::Retry && retries < config_.max_retries) {
            ++retries;
            log("verify_retry", {{"deviation", est.relative_deviation}, {"attempt", retries}});
            emit(cue.command);
            est = measure_displacement(pre, true_, predicted, rng_odometry_, config_.odometry_sigma);
        }
        const bool verified = verify_and_advance(est, config_) == VerifyOutcome::Advance;
        believed_.heading = cue.new_heading;
        if (verified && cue.advance) believed_.cell = step(believed_.cell, cue.new_heading);
        log("verified", {{"ok", verified}, {"deviation", est.relative_deviation}});

        const bool at_target = believed_.cell == target_->cell() || true_.cell == target_->cell();
        const DriftResult drift = drift_correct(believed_, true_, result_.steps_taken, config_, !verified || at_target);
        if (drift.checked) {
            enter(ExecutorPhase::DriftCorrect);
            log("drift_check", {{"corrected", drift.corrected}, {"forced", !verified || at_target}});
            believed_ = drift.pose;
        }
        if (true_.cell == target_->cell() && believed_.cell == target_->cell()) break;

        enter(ExecutorPhase::Plan);
        sync_planner(drift.corrected);
    }

    enter(ExecutorPhase::Reached);
    result_.reached = true;
    log("reached", {{"cell", cell_json(true_.cell)}, {"steps", result_.steps_taken}});
}

} // namespace

TrialResult run_trial(const Scenario& scenario, const ExecutorConfig& config, const SensorConfig& sensor,
                      const ConfusionMatrix& matrix, std::uint64_t seed)
{
    scenario.validate();
    Trial trial(scenario, config, sensor, matrix, seed);
    return trial.run();
}

} // namespace canesim
