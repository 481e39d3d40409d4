#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "canesim/grid.hpp"
#include "canesim/social.hpp"

namespace canesim {

inline constexpr int kScenarioFormatVersion = 1;
inline constexpr int kMaxGroups = 2;
inline constexpr int kMaxPeople = 13;

struct MapSpec {
    double width_m = 3.0;
    double length_m = 5.0;
    double resolution_m = kDefaultResolution;

    GridMap make_grid() const { return GridMap::from_dimensions(width_m, length_m, resolution_m); }
    friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

struct Seat {
    Cell cell;
    bool initially_occupied = false;
    friend bool operator==(const Seat&, const Seat&) = default;
};

struct EventTrigger {
    enum class Kind { Time, Step };
    Kind kind = Kind::Step;
    double time_s = 0.0;  // Kind::Time
    int step = 0;         // Kind::Step: fires once this many steps have been taken

    static EventTrigger at_time(double t) { return {Kind::Time, t, 0}; }
    static EventTrigger at_step(int s) { return {Kind::Step, 0.0, s}; }
    friend bool operator==(const EventTrigger&, const EventTrigger&) = default;
};

struct SeatBecomesOccupied {
    int seat_index = 0;
    friend bool operator==(const SeatBecomesOccupied&, const SeatBecomesOccupied&) = default;
};
struct GroupVacates {
    std::string group_id;
    friend bool operator==(const GroupVacates&, const GroupVacates&) = default;
};
struct GroupMoves {
    std::string group_id;
    int drow = 0;
    int dcol = 0;
    friend bool operator==(const GroupMoves&, const GroupMoves&) = default;
};

using EventAction = std::variant<SeatBecomesOccupied, GroupVacates, GroupMoves>;

struct TimedEvent {
    EventTrigger trigger;
    EventAction action;
    friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

// Time-triggered events precede step-triggered ones; each kind ascends.
bool trigger_before(const EventTrigger& a, const EventTrigger& b) noexcept;

struct Scenario {
    MapSpec map;
    std::vector<Cell> static_obstacles;
    std::vector<Seat> seats;
    std::vector<HumanGroup> groups;
    std::vector<TimedEvent> events;
    Pose start_pose;
    std::uint64_t seed = 0;

    // Throws ScenarioValidationError naming the first violated invariant.
    void validate() const;

    // Initial ground truth: obstacles, seats and group members placed.
    GridMap ground_truth_map() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Malformed input: bad JSON, missing or mistyped fields. The message carries
// the JSON path (and line/column for syntax errors).
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScenarioValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Unsatisfiable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario parse_scenario(const std::string& text);

void save(const Scenario& s, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

struct SuiteTemplate {
    enum class Kind { StaticOnly, TargetChange, Social };
    Kind kind = Kind::StaticOnly;
    ActivityClass activity = ActivityClass::Waiting;  // Social only

    static SuiteTemplate static_only() { return {Kind::StaticOnly, ActivityClass::Waiting}; }
    static SuiteTemplate target_change() { return {Kind::TargetChange, ActivityClass::Waiting}; }
    static SuiteTemplate social(ActivityClass a) { return {Kind::Social, a}; }

    friend bool operator==(const SuiteTemplate&, const SuiteTemplate&) = default;
};

// "static", "target_change", "social:<activity>".
std::string to_string(const SuiteTemplate& t);
SuiteTemplate template_from_string(const std::string& s);

inline constexpr int kGenerationAttempts = 100;
inline constexpr double kScriptedWalkStart = 10.0;  // walking groups start moving after this

// Deterministic in (template, seed). The room is 3 m x 5 m; the user starts
// on the back row facing north with every seat (and every group member) in
// the default 70 degree / 5 m camera view. The result is solvable on the
// initial ground-truth map.
Scenario generate(const SuiteTemplate& tmpl, std::uint64_t seed);

} // namespace canesim
