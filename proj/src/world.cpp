#include "canesim/world.hpp"

#include <algorithm>

namespace canesim {

WorldState::WorldState(const Scenario& scenario)
    : scenario_(&scenario), bounds_(scenario.map.make_grid()), groups_(scenario.groups),
      fired_(scenario.events.size(), false)
{
    for (const Seat& s : scenario.seats) seat_occupied_.push_back(s.initially_occupied);
}

std::vector<std::size_t> WorldState::advance(double time_s, int steps_taken)
{
    std::vector<std::size_t> fired;
    const auto& events = scenario_->events;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (fired_[i]) continue;
        const EventTrigger& t = events[i].trigger;
        const bool due = t.kind == EventTrigger::Kind::Time ? time_s >= t.time_s : steps_taken >= t.step;
        if (!due) continue;
        fired_[i] = true;
        apply(events[i].action);
        fired.push_back(i);
    }
    return fired;
}

void WorldState::apply(const EventAction& action)
{
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SeatBecomesOccupied>) {
                seat_occupied_.at(static_cast<std::size_t>(a.seat_index)) = true;
            } else {
                auto it = std::find_if(groups_.begin(), groups_.end(),
                                       [&](const HumanGroup& g) { return g.group_id == a.group_id; });
                if (it == groups_.end()) return;
                if constexpr (std::is_same_v<T, GroupVacates>) {
                    it->member_cells.clear();
                } else {
                    std::vector<Cell> moved;
                    for (Cell c : it->member_cells) {
                        const Cell n{c.row + a.drow, c.col + a.dcol};
                        if (bounds_.in_bounds(n)) moved.push_back(n);
                    }
                    it->member_cells = std::move(moved);
                }
            }
        },
        action);
}

GridMap WorldState::truth_map() const
{
    GridMap grid = bounds_;
    for (Cell c : scenario_->static_obstacles) grid.set_state(c, CellState::StaticObstacle);
    for (std::size_t i = 0; i < scenario_->seats.size(); ++i)
        grid.set_state(scenario_->seats[i].cell,
                       seat_occupied_[i] ? CellState::SeatOccupied : CellState::SeatVacant);
    for (const HumanGroup& g : groups_)
        for (Cell c : g.member_cells) grid.set_state(c, CellState::Human);
    return grid;
}

std::vector<WorldObject> WorldState::objects() const
{
    std::vector<WorldObject> out;
    for (std::size_t i = 0; i < scenario_->seats.size(); ++i)
        out.push_back({"seat-" + std::to_string(i), ObjectClass::Seat, scenario_->seats[i].cell, seat_occupied_[i]});
    for (const HumanGroup& g : groups_)
        for (std::size_t k = 0; k < g.member_cells.size(); ++k)
            out.push_back({g.group_id + "-m" + std::to_string(k), ObjectClass::Person, g.member_cells[k], false});
    for (Cell c : scenario_->static_obstacles)
        out.push_back({"obstacle-" + std::to_string(c.row) + "-" + std::to_string(c.col), ObjectClass::Other, c, false});
    return out;
}

const HumanGroup* WorldState::group(const std::string& id) const
{
    for (const HumanGroup& g : groups_)
        if (g.group_id == id) return &g;
    return nullptr;
}

std::size_t WorldState::seat_index(Cell c) const
{
    for (std::size_t i = 0; i < scenario_->seats.size(); ++i)
        if (scenario_->seats[i].cell == c) return i;
    return npos;
}

} // namespace canesim
