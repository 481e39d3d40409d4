#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "canesim/grid.hpp"
#include "canesim/perception.hpp"
#include "canesim/scenario.hpp"

namespace canesim {

// Mutable ground truth for one trial: seat occupancy, where people stand,
// and which scripted events have fired.
class WorldState {
public:
    explicit WorldState(const Scenario& scenario);

    // Fires every not-yet-fired event whose trigger is due, in scenario
    // order. Returns the indices of the events that fired.
    std::vector<std::size_t> advance(double time_s, int steps_taken);

    void apply(const EventAction& action);

    GridMap truth_map() const;
    // Seats as "seat-<i>", people as "<group>-m<k>", obstacles as
    // "obstacle-<row>-<col>".
    std::vector<WorldObject> objects() const;

    const std::vector<HumanGroup>& groups() const noexcept { return groups_; }
    const HumanGroup* group(const std::string& id) const;
    bool seat_occupied(std::size_t i) const { return seat_occupied_.at(i); }
    std::size_t seat_index(Cell c) const;  // npos when no seat is there
    const Scenario& scenario() const noexcept { return *scenario_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    const Scenario* scenario_;
    GridMap bounds_;
    std::vector<bool> seat_occupied_;
    std::vector<HumanGroup> groups_;
    std::vector<bool> fired_;
};

} // namespace canesim
