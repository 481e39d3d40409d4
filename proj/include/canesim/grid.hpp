#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace canesim {

// Row grows southward, column grows eastward.
struct Cell {
    int row = 0;
    int col = 0;

    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

inline constexpr int manhattan(Cell a, Cell b) noexcept
{
    const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
    const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
    return dr + dc;
}

inline constexpr int chebyshev(Cell a, Cell b) noexcept
{
    const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
    const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
    return dr > dc ? dr : dc;
}

enum class CellState : std::uint8_t {
    Free,
    StaticObstacle,
    SocialBlocked,
    SeatVacant,
    SeatOccupied,
    Human,
};

constexpr bool is_traversable(CellState s) noexcept
{
    return s == CellState::Free || s == CellState::SeatVacant;
}

constexpr bool is_goal_eligible(CellState s) noexcept { return s == CellState::SeatVacant; }

std::string_view to_string(CellState s) noexcept;

enum class Heading : std::uint8_t { North, East, South, West };

constexpr Heading turn_left(Heading h) noexcept
{
    return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}

constexpr Heading turn_right(Heading h) noexcept
{
    return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

constexpr Heading turn_around(Heading h) noexcept
{
    return static_cast<Heading>((static_cast<int>(h) + 2) % 4);
}

// Unit displacement (drow, dcol) for a heading.
constexpr std::array<int, 2> heading_delta(Heading h) noexcept
{
    switch (h) {
    case Heading::North: return {-1, 0};
    case Heading::East: return {0, 1};
    case Heading::South: return {1, 0};
    case Heading::West: return {0, -1};
    }
    return {0, 0};
}

constexpr Cell step(Cell c, Heading h) noexcept
{
    const auto d = heading_delta(h);
    return {c.row + d[0], c.col + d[1]};
}

std::string_view to_string(Heading h) noexcept;
std::optional<Heading> heading_from_string(std::string_view s) noexcept;

struct Pose {
    Cell cell;
    Heading heading = Heading::North;

    friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

enum class RelativeMove : std::uint8_t { Forward, Left, Right, NotReachableInOneMove };

std::string_view to_string(RelativeMove m) noexcept;

// Maps the displacement pose.cell -> target onto the three-cue vocabulary.
// Anything other than a single orthogonal move that is not backward yields
// NotReachableInOneMove.
RelativeMove relative_direction(const Pose& from, Cell to) noexcept;

// Heading after executing a Forward/Left/Right cue.
Heading heading_after(Heading h, RelativeMove m) noexcept;

inline constexpr double kDefaultResolution = 0.40;

// Dense row-major occupancy grid.
class GridMap {
public:
    GridMap(int rows, int cols, double resolution = kDefaultResolution);

    // rows = ceil(length_m / resolution), cols = ceil(width_m / resolution).
    static GridMap from_dimensions(double width_m, double length_m,
                                   double resolution = kDefaultResolution);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double resolution() const noexcept { return resolution_; }
    std::size_t cell_count() const noexcept { return cells_.size(); }

    bool in_bounds(Cell c) const noexcept
    {
        return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
    }

    CellState state(Cell c) const;
    void set_state(Cell c, CellState s);

    bool is_traversable(Cell c) const { return canesim::is_traversable(state(c)); }
    bool goal_eligible(Cell c) const { return canesim::is_goal_eligible(state(c)); }

    // In-bounds orthogonal neighbours in N, E, S, W order.
    std::vector<Cell> neighbors4(Cell c) const;

    std::size_t index(Cell c) const noexcept
    {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c.col);
    }
    Cell cell_at(std::size_t idx) const noexcept
    {
        return {static_cast<int>(idx / static_cast<std::size_t>(cols_)),
                static_cast<int>(idx % static_cast<std::size_t>(cols_))};
    }

    // World coordinates (metres) of a cell centre: x east, y south.
    std::array<double, 2> center(Cell c) const noexcept
    {
        return {(c.col + 0.5) * resolution_, (c.row + 0.5) * resolution_};
    }

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    int rows_;
    int cols_;
    double resolution_;
    std::vector<CellState> cells_;
};

// Breadth-first unit-cost distance from `from` to `to` moving only into
// traversable cells (the destination may be any traversable cell). Used for
// solvability checks; returns nullopt when unreachable.
std::optional<int> bfs_distance(const GridMap& map, Cell from, Cell to);

// All cells reachable from `from` under the same movement rule.
std::vector<bool> reachable_set(const GridMap& map, Cell from);

} // namespace canesim
