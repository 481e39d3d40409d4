#include "canesim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace canesim {

std::string_view to_string(CellState s) noexcept
{
    switch (s) {
    case CellState::Free: return "free";
    case CellState::StaticObstacle: return "static_obstacle";
    case CellState::SocialBlocked: return "social_blocked";
    case CellState::SeatVacant: return "seat_vacant";
    case CellState::SeatOccupied: return "seat_occupied";
    case CellState::Human: return "human";
    }
    return "?";
}

std::string_view to_string(Heading h) noexcept
{
    switch (h) {
    case Heading::North: return "north";
    case Heading::East: return "east";
    case Heading::South: return "south";
    case Heading::West: return "west";
    }
    return "?";
}

std::optional<Heading> heading_from_string(std::string_view s) noexcept
{
    if (s == "north") return Heading::North;
    if (s == "east") return Heading::East;
    if (s == "south") return Heading::South;
    if (s == "west") return Heading::West;
    return std::nullopt;
}

std::string_view to_string(RelativeMove m) noexcept
{
    switch (m) {
    case RelativeMove::Forward: return "forward";
    case RelativeMove::Left: return "left";
    case RelativeMove::Right: return "right";
    case RelativeMove::NotReachableInOneMove: return "not_reachable";
    }
    return "?";
}

RelativeMove relative_direction(const Pose& from, Cell to) noexcept
{
    if (manhattan(from.cell, to) != 1) return RelativeMove::NotReachableInOneMove;
    if (step(from.cell, from.heading) == to) return RelativeMove::Forward;
    if (step(from.cell, turn_left(from.heading)) == to) return RelativeMove::Left;
    if (step(from.cell, turn_right(from.heading)) == to) return RelativeMove::Right;
    return RelativeMove::NotReachableInOneMove;
}

Heading heading_after(Heading h, RelativeMove m) noexcept
{
    switch (m) {
    case RelativeMove::Left: return turn_left(h);
    case RelativeMove::Right: return turn_right(h);
    default: return h;
    }
}

GridMap::GridMap(int rows, int cols, double resolution)
    : rows_(rows), cols_(cols), resolution_(resolution)
{
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid dimensions must be positive");
    if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
    cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), CellState::Free);
}

GridMap GridMap::from_dimensions(double width_m, double length_m, double resolution)
{
    if (!(width_m > 0.0) || !(length_m > 0.0))
        throw std::invalid_argument("room dimensions must be positive");
    if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
    // Quotients like 0.4/0.4 or 4.0/0.4 land a few ulps off an integer; do
    // not let that round a cell count up.
    auto cells_for = [resolution](double extent) {
        const double q = extent / resolution;
        const double nearest = std::round(q);
        if (std::abs(q - nearest) < 1e-9 * std::max(1.0, nearest)) return static_cast<int>(nearest);
        return static_cast<int>(std::ceil(q));
    };
    return GridMap(cells_for(length_m), cells_for(width_m), resolution);
}

CellState GridMap::state(Cell c) const
{
    if (!in_bounds(c))
        throw std::out_of_range("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                ") outside grid");
    return cells_[index(c)];
}

void GridMap::set_state(Cell c, CellState s)
{
    if (!in_bounds(c))
        throw std::out_of_range("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                ") outside grid");
    cells_[index(c)] = s;
}

std::vector<Cell> GridMap::neighbors4(Cell c) const
{
    std::vector<Cell> out;
    out.reserve(4);
    for (Heading h : {Heading::North, Heading::East, Heading::South, Heading::West}) {
        const Cell n = step(c, h);
        if (in_bounds(n)) out.push_back(n);
    }
    return out;
}

std::vector<bool> reachable_set(const GridMap& map, Cell from)
{
    std::vector<bool> seen(map.cell_count(), false);
    if (!map.in_bounds(from)) return seen;
    std::deque<Cell> frontier{from};
    seen[map.index(from)] = true;
    while (!frontier.empty()) {
        const Cell u = frontier.front();
        frontier.pop_front();
        for (Cell v : map.neighbors4(u)) {
            if (seen[map.index(v)] || !map.is_traversable(v)) continue;
            seen[map.index(v)] = true;
            frontier.push_back(v);
        }
    }
    return seen;
}

std::optional<int> bfs_distance(const GridMap& map, Cell from, Cell to)
{
    if (!map.in_bounds(from) || !map.in_bounds(to)) return std::nullopt;
    if (from == to) return 0;
    std::vector<int> dist(map.cell_count(), -1);
    std::deque<Cell> frontier{from};
    dist[map.index(from)] = 0;
    while (!frontier.empty()) {
        const Cell u = frontier.front();
        frontier.pop_front();
        for (Cell v : map.neighbors4(u)) {
            if (dist[map.index(v)] >= 0 || !map.is_traversable(v)) continue;
            dist[map.index(v)] = dist[map.index(u)] + 1;
            if (v == to) return dist[map.index(v)];
            frontier.push_back(v);
        }
    }
    return std::nullopt;
}

} // namespace canesim
