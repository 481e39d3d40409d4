#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "canesim/event_log.hpp"
#include "canesim/grid.hpp"
#include "canesim/perception.hpp"
#include "canesim/scenario.hpp"
#include "canesim/social.hpp"
#include "canesim/world.hpp"

namespace canesim {

enum class Motor { Left, Right, Forward };
std::string_view to_string(Motor m) noexcept;

struct HapticCommand {
    Motor motor = Motor::Forward;
    int pulses = 1;
    double pulse_duration_s = 1.0;

    friend bool operator==(const HapticCommand&, const HapticCommand&) = default;
};

// Three short forward pulses: hold still while a walking group passes.
inline constexpr HapticCommand kWalkingWaitSignal{Motor::Forward, 3, 1.0};

enum class ExecutorPhase {
    InitDelay,
    Acquire,
    Classify,
    Adapt,
    Plan,
    Guide,
    VerifyMove,
    RecheckTarget,
    DriftCorrect,
    WaitForGroup,
    Reached,
    Failed,
};
std::string_view to_string(ExecutorPhase p) noexcept;

enum class FailureReason { None, Timeout, NoTarget, NoPath };
std::string_view to_string(FailureReason r) noexcept;

struct ExecutorConfig {
    double init_delay_s = 10.0;
    int frames_per_observation = 10;
    double verify_threshold = 0.10;
    int drift_check_interval = 3;
    double walking_wait_s = 10.0;
    double cell_step_m = 0.40;
    int max_steps = 200;
    double step_time_s = 1.0;
    int max_retries = 3;
    // Probability that the simulated user sidesteps instead of following a cue.
    double user_error_prob = 0.0;
    double odometry_sigma = 0.0;
    // Talking buffer radius used when compiling social constraints.
    int talking_buffer = 2;

    void validate() const;
    nlohmann::json to_json() const;
    // Missing keys keep their defaults; unknown keys are rejected.
    static ExecutorConfig from_json(const nlohmann::json& j);
};

struct TrialResult {
    bool reached = false;
    int collisions = 0;
    int etiquette_violations = 0;
    int steps_taken = 0;
    int replans = 0;
    int retargets = 0;
    double simulated_time_s = 0.0;
    double wall_time_s = 0.0;  // never part of a report body
    FailureReason failure = FailureReason::None;
    // Some group was assigned a class other than its true one.
    bool misclassified = false;
    // A NoPath failure was confirmed by breadth-first search on the
    // constrained map.
    bool unreachable_verified = false;
    bool degenerate = false;
    std::vector<HapticCommand> haptics;
    EventLog event_log;

    bool success() const noexcept { return reached && collisions == 0 && etiquette_violations == 0; }
};

// Seat chosen by the first selection. Only an occupied report replaces it.
class FixedTarget {
public:
    explicit FixedTarget(ObjectObservation first) : current_(std::move(first)) {}

    const ObjectObservation& current() const noexcept { return current_; }
    Cell cell() const noexcept { return current_.cell; }

    // A better seat showing up later changes nothing.
    bool offer(const ObjectObservation&) const noexcept { return false; }
    // The seat was seen taken: switch to the replacement.
    void on_occupied(ObjectObservation replacement) { current_ = std::move(replacement); }

private:
    ObjectObservation current_;
};

struct GuideCue {
    HapticCommand command;
    Heading new_heading = Heading::North;
    bool advance = true;      // false for a turn-only cue
    bool double_turn = false; // first half of a turn-around
};

// Cue for moving from pose.cell to path[1]. A cell behind the user yields a
// Left turn without translation. Requires path.size() >= 2 and
// path[0] == pose.cell.
GuideCue guide_step(const Pose& pose, std::span<const Cell> path);

enum class VerifyOutcome { Advance, Retry };
VerifyOutcome verify_and_advance(const DisplacementEstimate& estimate, const ExecutorConfig& config);

struct DriftResult {
    Pose pose;
    bool checked = false;
    bool corrected = false;
};

// Runs on every drift_check_interval-th step (or when forced) and snaps the
// believed pose to the true one if they differ by at least one cell.
DriftResult drift_correct(const Pose& believed, const Pose& truth, int step_count,
                          const ExecutorConfig& config, bool force = false);

enum class WaitOutcome { Cleared, Persisted };

// Emits the wait signal, lets `wait_s` of world time pass and checks whether
// any member of the pending groups is still inside its original footprint.
WaitOutcome wait_for_group(const SocialConstraint& constraint,
                           const std::map<std::string, std::set<Cell>>& footprints, WorldState& world,
                           std::vector<HapticCommand>& haptics, double& clock_s, int steps_taken,
                           double wait_s);

TrialResult run_trial(const Scenario& scenario, const ExecutorConfig& config, const SensorConfig& sensor,
                      const ConfusionMatrix& matrix, std::uint64_t seed);

} // namespace canesim
