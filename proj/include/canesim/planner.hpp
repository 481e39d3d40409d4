#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "canesim/grid.hpp"

namespace canesim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Two-component D* Lite priority, ordered lexicographically.
struct PlannerKey {
    double k1 = kInfinity;
    double k2 = kInfinity;

    friend constexpr auto operator<=>(const PlannerKey&, const PlannerKey&) = default;
};

// A cell whose traversability flipped since the last plan.
struct CostChange {
    Cell cell;
    bool new_traversable = true;
};

enum class GoalPolicy {
    RequireSeat,     // goal must be SeatVacant
    AnyTraversable,  // unit tests and non-seat goals
};

class Unreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchStats {
    std::size_t expansions = 0;
    std::size_t stale_pops = 0;
    bool keys_monotone = true;
};

// Incremental shortest paths on a 4-connected unit-cost grid, searching
// backwards from the goal. Moving into a cell costs 1 if it is traversable
// (or is the goal while goal-eligible) and infinity otherwise; leaving a cell
// is always allowed, so a start cell that became blocked still plans.
//
// The map is owned by the caller and passed to every call; after mutating
// it the caller reports the flipped cells through apply_changes.
class DStarLite {
public:
    DStarLite(const GridMap& map, Cell start, Cell goal,
              GoalPolicy policy = GoalPolicy::RequireSeat);

    SearchStats compute_shortest_path(const GridMap& map);

    // Moves the start (accumulating the key modifier) and repairs every
    // vertex whose outgoing edge costs changed.
    void apply_changes(const GridMap& map, std::span<const CostChange> changes, Cell new_start);

    // Greedy descent on c + g from start; ties broken N, E, S, W.
    // Throws Unreachable when g(start) is infinite.
    std::vector<Cell> extract_path(const GridMap& map) const;

    double g(Cell c) const { return g_[index(c)]; }
    double rhs(Cell c) const { return rhs_[index(c)]; }
    double key_modifier() const noexcept { return key_modifier_; }
    Cell start() const noexcept { return start_; }
    Cell goal() const noexcept { return goal_; }
    bool start_reachable() const { return g(start_) < kInfinity; }
    // False once the goal cell itself has become non-traversable.
    bool goal_feasible(const GridMap& map) const;

    // Number of live (non-stale) queue entries.
    std::size_t queue_size() const noexcept { return live_entries_; }
    bool locally_consistent(Cell c) const { return g(c) == rhs(c); }

private:
    struct Entry {
        PlannerKey key;
        std::size_t cell;
        // min-heap on key, then cell index for determinism
        bool operator>(const Entry& o) const
        {
            if (key != o.key) return key > o.key;
            return cell > o.cell;
        }
    };

    std::size_t index(Cell c) const;
    double heuristic(Cell a, Cell b) const noexcept { return static_cast<double>(manhattan(a, b)); }
    double edge_cost(const GridMap& map, Cell into) const;
    PlannerKey calculate_key(Cell c) const;
    void update_vertex(const GridMap& map, Cell u);
    void push(Cell u);
    void drop(Cell u);
    bool is_stale(const Entry& e) const;

    int rows_;
    int cols_;
    Cell start_;
    Cell goal_;
    Cell last_start_;
    GoalPolicy policy_;
    double key_modifier_ = 0.0;
    std::vector<double> g_;
    std::vector<double> rhs_;
    // Key currently associated with each queued cell; lazy deletion skips any
    // heap entry whose key differs or whose cell is no longer queued.
    std::vector<PlannerKey> queued_key_;
    std::vector<bool> in_queue_;
    std::size_t live_entries_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
};

} // namespace canesim
