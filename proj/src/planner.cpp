#include "canesim/planner.hpp"

#include <algorithm>
#include <string>

namespace canesim {

DStarLite::DStarLite(const GridMap& map, Cell start, Cell goal, GoalPolicy policy)
    : rows_(map.rows()), cols_(map.cols()), start_(start), goal_(goal), last_start_(start),
      policy_(policy)
{
    if (!map.in_bounds(start)) throw std::invalid_argument("planner start outside grid");
    if (!map.in_bounds(goal)) throw std::invalid_argument("planner goal outside grid");
    const CellState gs = map.state(goal);
    if (policy_ == GoalPolicy::RequireSeat && !is_goal_eligible(gs))
        throw std::invalid_argument("planner goal is not a vacant seat (state " +
                                    std::string(to_string(gs)) + ")");
    if (!is_traversable(gs))
        throw std::invalid_argument("planner goal is not traversable (state " +
                                    std::string(to_string(gs)) + ")");

    const std::size_t n = map.cell_count();
    g_.assign(n, kInfinity);
    rhs_.assign(n, kInfinity);
    queued_key_.assign(n, PlannerKey{});
    in_queue_.assign(n, false);
    rhs_[index(goal_)] = 0.0;
    push(goal_);
}

std::size_t DStarLite::index(Cell c) const
{
    if (c.row < 0 || c.col < 0 || c.row >= rows_ || c.col >= cols_)
        throw std::out_of_range("planner query outside grid");
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c.col);
}

bool DStarLite::goal_feasible(const GridMap& map) const
{
    const CellState s = map.state(goal_);
    return policy_ == GoalPolicy::RequireSeat ? is_goal_eligible(s) : is_traversable(s);
}

double DStarLite::edge_cost(const GridMap& map, Cell into) const
{
    if (into == goal_) return goal_feasible(map) ? 1.0 : kInfinity;
    return map.is_traversable(into) ? 1.0 : kInfinity;
}

PlannerKey DStarLite::calculate_key(Cell c) const
{
    const std::size_t i = index(c);
    const double m = std::min(g_[i], rhs_[i]);
    return {m + heuristic(start_, c) + key_modifier_, m};
}

void DStarLite::push(Cell u)
{
    const std::size_t i = index(u);
    const PlannerKey k = calculate_key(u);
    if (!in_queue_[i]) ++live_entries_;
    in_queue_[i] = true;
    queued_key_[i] = k;
    queue_.push({k, i});
}

void DStarLite::drop(Cell u)
{
    const std::size_t i = index(u);
    if (in_queue_[i]) {
        in_queue_[i] = false;
        --live_entries_;
    }
}

bool DStarLite::is_stale(const Entry& e) const
{
    return !in_queue_[e.cell] || queued_key_[e.cell] != e.key;
}

void DStarLite::update_vertex(const GridMap& map, Cell u)
{
    const std::size_t i = index(u);
    if (u != goal_) {
        double best = kInfinity;
        for (Cell s : map.neighbors4(u)) best = std::min(best, edge_cost(map, s) + g_[index(s)]);
        rhs_[i] = best;
    }
    drop(u);
    if (g_[i] != rhs_[i]) push(u);
}

SearchStats DStarLite::compute_shortest_path(const GridMap& map)
{
    SearchStats stats;
    PlannerKey last_popped{-kInfinity, -kInfinity};
    auto discard_stale = [&] {
        while (!queue_.empty() && is_stale(queue_.top())) {
            queue_.pop();
            ++stats.stale_pops;
        }
    };

    for (;;) {
        discard_stale();
        const std::size_t si = index(start_);
        const PlannerKey top = queue_.empty() ? PlannerKey{} : queue_.top().key;
        if (!(top < calculate_key(start_)) && rhs_[si] == g_[si]) break;
        if (queue_.empty()) break;

        const Entry e = queue_.top();
        queue_.pop();
        const Cell u = map.cell_at(e.cell);
        if (e.key < last_popped) stats.keys_monotone = false;
        last_popped = e.key;

        const PlannerKey k_new = calculate_key(u);
        if (e.key < k_new) {
            push(u);
            continue;
        }
        ++stats.expansions;
        drop(u);
        const std::size_t ui = e.cell;
        if (g_[ui] > rhs_[ui]) {
            g_[ui] = rhs_[ui];
            for (Cell s : map.neighbors4(u)) update_vertex(map, s);
        } else {
            g_[ui] = kInfinity;
            update_vertex(map, u);
            for (Cell s : map.neighbors4(u)) update_vertex(map, s);
        }
    }
    return stats;
}

void DStarLite::apply_changes(const GridMap& map, std::span<const CostChange> changes,
                              Cell new_start)
{
    if (!map.in_bounds(new_start)) throw std::invalid_argument("planner start outside grid");
    start_ = new_start;
    key_modifier_ += heuristic(last_start_, start_);
    last_start_ = start_;
    for (const CostChange& ch : changes) {
        if (!map.in_bounds(ch.cell)) throw std::invalid_argument("cost change outside grid");
        // Only edges entering ch.cell changed, so its predecessors need repair.
        for (Cell s : map.neighbors4(ch.cell)) update_vertex(map, s);
    }
}

std::vector<Cell> DStarLite::extract_path(const GridMap& map) const
{
    if (!(g(start_) < kInfinity)) throw Unreachable("no path from start to goal");
    std::vector<Cell> path{start_};
    const std::size_t limit = map.cell_count();
    Cell u = start_;
    while (u != goal_) {
        double best = kInfinity;
        Cell next = u;
        for (Cell s : map.neighbors4(u)) {
            const double c = edge_cost(map, s) + g(s);
            if (c < best) {
                best = c;
                next = s;
            }
        }
        if (!(best < kInfinity) || path.size() >= limit)
            throw Unreachable("path extraction failed to reach goal");
        u = next;
        path.push_back(u);
    }
    return path;
}

} // namespace canesim
