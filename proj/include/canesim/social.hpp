#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canesim/grid.hpp"
#include "canesim/rng.hpp"

namespace canesim {

// Crossing is folded into Walking. Enumeration order doubles as the row and
// column order of every confusion matrix.
enum class ActivityClass { Walking, Talking, Queuing, Waiting };

inline constexpr std::array<ActivityClass, 4> kActivityClasses{
    ActivityClass::Walking, ActivityClass::Talking, ActivityClass::Queuing, ActivityClass::Waiting};

std::string_view to_string(ActivityClass a) noexcept;
std::optional<ActivityClass> activity_from_string(std::string_view s) noexcept;

struct HumanGroup {
    std::string group_id;
    std::vector<Cell> member_cells;
    ActivityClass true_activity = ActivityClass::Waiting;

    friend bool operator==(const HumanGroup&, const HumanGroup&) = default;
};

// Row-stochastic 4x4 matrix: rows are the true class, columns the prediction.
class ConfusionMatrix {
public:
    using Row = std::array<double, 4>;

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(const std::array<Row, 4>& rows);

    static ConfusionMatrix identity();
    static ConfusionMatrix uniform();
    // Defaults fitted to the published per-class figures; see
    // data/calibrated_confusion.txt for the shipped table.
    static ConfusionMatrix calibrated();

    // Whitespace-separated 4x4 table, rows Walking, Talking, Queuing, Waiting.
    // Blank lines and lines starting with '#' are ignored.
    static ConfusionMatrix parse(std::string_view text);
    static ConfusionMatrix load(const std::filesystem::path& path);
    std::string to_text() const;

    double at(ActivityClass truth, ActivityClass predicted) const noexcept;
    const Row& row(ActivityClass truth) const noexcept;
    // Mean diagonal: top-1 accuracy on a class-balanced set.
    double balanced_accuracy() const noexcept;

    // Throws std::invalid_argument unless every entry is in [0,1] and every
    // row sums to 1 within 1e-9.
    void validate() const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::array<Row, 4> rows_{};
};

struct ActivityReport {
    std::string group_id;
    ActivityClass predicted = ActivityClass::Walking;
    std::array<ActivityClass, 3> ranked_alternatives{};
};

// Samples a prediction from the true class's row.
ActivityReport classify(const HumanGroup& group, const ConfusionMatrix& matrix, Rng& rng);

// Monte Carlo estimate of classify's behaviour.
ConfusionMatrix empirical_confusion(const ConfusionMatrix& matrix, int samples_per_class, Rng& rng);

// Members plus their in-bounds Chebyshev ring of the given radius.
std::set<Cell> dilate(std::span<const Cell> cells, int radius, const GridMap& map);

inline std::set<Cell> expand_group(const HumanGroup& group, const GridMap& map)
{
    return dilate(group.member_cells, 1, map);
}

struct WaitDirective {
    double duration_s = 10.0;
    int forward_pulses = 3;

    friend bool operator==(const WaitDirective&, const WaitDirective&) = default;
};

struct SocialConfig {
    int talking_buffer = 2;  // Chebyshev radius around talking members
    WaitDirective walking_wait{};
};

struct SocialConstraint {
    std::set<Cell> blocked_cells;
    std::optional<WaitDirective> wait_directive;
    // Groups predicted Walking, held back until the wait resolves.
    std::vector<std::string> pending_walking_groups;
    // Set when the compiled blocks would have covered the user's own cell;
    // that cell is left out of blocked_cells.
    bool degenerate = false;

    bool empty() const noexcept { return blocked_cells.empty() && !wait_directive; }
};

// Queuing/Waiting near-side row: the row adjacent to the expansion footprint
// on the side facing `user_cell`, spanning the footprint's columns +-1.
std::set<Cell> near_side_band(const std::set<Cell>& footprint, Cell user_cell, const GridMap& map);

SocialConstraint compile_constraints(std::span<const HumanGroup> groups,
                                     std::span<const ActivityReport> reports, const GridMap& map,
                                     Cell user_cell, const SocialConfig& config = {});

} // namespace canesim
