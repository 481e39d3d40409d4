#include "canesim/social.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace canesim {

namespace {

std::size_t idx(ActivityClass a) { return static_cast<std::size_t>(a); }

} // namespace

std::string_view to_string(ActivityClass a) noexcept
{
    switch (a) {
    case ActivityClass::Walking: return "walking";
    case ActivityClass::Talking: return "talking";
    case ActivityClass::Queuing: return "queuing";
    case ActivityClass::Waiting: return "waiting";
    }
    return "?";
}

std::optional<ActivityClass> activity_from_string(std::string_view s) noexcept
{
    for (ActivityClass a : kActivityClasses)
        if (to_string(a) == s) return a;
    return std::nullopt;
}

ConfusionMatrix::ConfusionMatrix(const std::array<Row, 4>& rows) : rows_(rows) { validate(); }

ConfusionMatrix ConfusionMatrix::identity()
{
    return ConfusionMatrix({Row{1, 0, 0, 0}, Row{0, 1, 0, 0}, Row{0, 0, 1, 0}, Row{0, 0, 0, 1}});
}

ConfusionMatrix ConfusionMatrix::uniform()
{
    const Row r{0.25, 0.25, 0.25, 0.25};
    return ConfusionMatrix({r, r, r, r});
}

ConfusionMatrix ConfusionMatrix::calibrated()
{
    // Talking and Queuing diagonals are fixed figures; the Walking/Waiting
    // split is fitted so the balanced top-1 accuracy comes out at 0.957.
    return ConfusionMatrix({
        Row{0.948, 0.0, 0.0, 0.052},
        Row{0.0, 1.0, 0.0, 0.0},
        Row{0.0, 0.0, 0.93, 0.07},
        Row{0.05, 0.0, 0.0, 0.95},
    });
}

ConfusionMatrix ConfusionMatrix::parse(std::string_view text)
{
    std::array<Row, 4> rows{};
    std::istringstream in{std::string(text)};
    std::string line;
    int row = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (row >= 4)
            throw std::invalid_argument("confusion matrix line " + std::to_string(line_no) +
                                        ": more than 4 rows");
        std::istringstream fields(line);
        std::string tok;
        int col = 0;
        while (fields >> tok) {
            if (col >= 4)
                throw std::invalid_argument("confusion matrix line " + std::to_string(line_no) +
                                            ": more than 4 columns");
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw std::invalid_argument("confusion matrix line " + std::to_string(line_no) +
                                            ": '" + tok + "' is not a number");
            rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col++)] = v;
        }
        if (col != 4)
            throw std::invalid_argument("confusion matrix line " + std::to_string(line_no) +
                                        ": expected 4 columns, got " + std::to_string(col));
        ++row;
    }
    if (row != 4)
        throw std::invalid_argument("confusion matrix: expected 4 rows, got " + std::to_string(row));
    return ConfusionMatrix(rows);
}

ConfusionMatrix ConfusionMatrix::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open confusion matrix file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConfusionMatrix::to_text() const
{
    std::ostringstream out;
    out << "# rows: true walking, talking, queuing, waiting; columns: predicted, same order\n";
    out << std::setprecision(17);
    for (const Row& r : rows_) out << r[0] << ' ' << r[1] << ' ' << r[2] << ' ' << r[3] << '\n';
    return out.str();
}

double ConfusionMatrix::at(ActivityClass truth, ActivityClass predicted) const noexcept
{
    return rows_[idx(truth)][idx(predicted)];
}

const ConfusionMatrix::Row& ConfusionMatrix::row(ActivityClass truth) const noexcept
{
    return rows_[idx(truth)];
}

double ConfusionMatrix::balanced_accuracy() const noexcept
{
    double s = 0.0;
    for (ActivityClass a : kActivityClasses) s += at(a, a);
    return s / 4.0;
}

void ConfusionMatrix::validate() const
{
    for (ActivityClass a : kActivityClasses) {
        double sum = 0.0;
        for (double v : row(a)) {
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("confusion matrix entry outside [0,1] in row " +
                                            std::string(to_string(a)));
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("confusion matrix row " + std::string(to_string(a)) +
                                        " does not sum to 1");
    }
}

ActivityReport classify(const HumanGroup& group, const ConfusionMatrix& matrix, Rng& rng)
{
    matrix.validate();
    const auto& r = matrix.row(group.true_activity);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);

    ActivityClass predicted = group.true_activity;
    double acc = 0.0;
    bool chosen = false;
    for (ActivityClass a : kActivityClasses) {
        acc += r[idx(a)];
        if (u < acc && r[idx(a)] > 0.0) {
            predicted = a;
            chosen = true;
            break;
        }
    }
    if (!chosen) {
        // u landed in the rounding slack above the cumulative sum; take the
        // last class with mass.
        for (ActivityClass a : kActivityClasses)
            if (r[idx(a)] > 0.0) predicted = a;
    }

    ActivityReport report{group.group_id, predicted, {}};
    std::vector<ActivityClass> rest;
    for (ActivityClass a : kActivityClasses)
        if (a != predicted) rest.push_back(a);
    std::stable_sort(rest.begin(), rest.end(),
                     [&](ActivityClass x, ActivityClass y) { return r[idx(x)] > r[idx(y)]; });
    std::copy(rest.begin(), rest.end(), report.ranked_alternatives.begin());
    return report;
}

ConfusionMatrix empirical_confusion(const ConfusionMatrix& matrix, int samples_per_class, Rng& rng)
{
    if (samples_per_class < 1) throw std::invalid_argument("samples_per_class must be >= 1");
    std::array<ConfusionMatrix::Row, 4> rows{};
    for (ActivityClass truth : kActivityClasses) {
        const HumanGroup probe{"probe", {{0, 0}}, truth};
        std::array<int, 4> counts{};
        for (int i = 0; i < samples_per_class; ++i) ++counts[idx(classify(probe, matrix, rng).predicted)];
        for (std::size_t j = 0; j < 4; ++j)
            rows[idx(truth)][j] = static_cast<double>(counts[j]) / samples_per_class;
    }
    return ConfusionMatrix(rows);
}

std::set<Cell> dilate(std::span<const Cell> cells, int radius, const GridMap& map)
{
    std::set<Cell> out;
    for (Cell m : cells) {
        for (int dr = -radius; dr <= radius; ++dr)
            for (int dc = -radius; dc <= radius; ++dc) {
                const Cell c{m.row + dr, m.col + dc};
                if (map.in_bounds(c)) out.insert(c);
            }
    }
    return out;
}

std::set<Cell> near_side_band(const std::set<Cell>& footprint, Cell user_cell, const GridMap& map)
{
    std::set<Cell> band;
    if (footprint.empty()) return band;
    int rmin = footprint.begin()->row, rmax = rmin;
    int cmin = footprint.begin()->col, cmax = cmin;
    for (Cell c : footprint) {
        rmin = std::min(rmin, c.row);
        rmax = std::max(rmax, c.row);
        cmin = std::min(cmin, c.col);
        cmax = std::max(cmax, c.col);
    }
    auto add = [&](Cell c) {
        if (map.in_bounds(c)) band.insert(c);
    };
    if (user_cell.row > rmax || user_cell.row < rmin) {
        const int row = user_cell.row > rmax ? rmax + 1 : rmin - 1;
        for (int c = cmin - 1; c <= cmax + 1; ++c) add({row, c});
    } else if (user_cell.col > cmax || user_cell.col < cmin) {
        const int col = user_cell.col > cmax ? cmax + 1 : cmin - 1;
        for (int r = rmin - 1; r <= rmax + 1; ++r) add({r, col});
    }
    return band;
}

SocialConstraint compile_constraints(std::span<const HumanGroup> groups,
                                     std::span<const ActivityReport> reports, const GridMap& map,
                                     Cell user_cell, const SocialConfig& config)
{
    if (groups.size() != reports.size())
        throw std::invalid_argument("compile_constraints: " + std::to_string(groups.size()) +
                                    " groups but " + std::to_string(reports.size()) + " reports");
    std::map<std::string, const ActivityReport*> by_id;
    for (const ActivityReport& r : reports) by_id[r.group_id] = &r;

    SocialConstraint out;
    for (const HumanGroup& g : groups) {
        const auto it = by_id.find(g.group_id);
        if (it == by_id.end())
            throw std::invalid_argument("compile_constraints: no report for group " + g.group_id);
        const std::set<Cell> footprint = expand_group(g, map);
        switch (it->second->predicted) {
        case ActivityClass::Walking:
            out.wait_directive = config.walking_wait;
            out.pending_walking_groups.push_back(g.group_id);
            break;
        case ActivityClass::Talking: {
            const auto buffered = dilate(g.member_cells, config.talking_buffer, map);
            out.blocked_cells.insert(buffered.begin(), buffered.end());
            break;
        }
        case ActivityClass::Queuing:
        case ActivityClass::Waiting: {
            out.blocked_cells.insert(footprint.begin(), footprint.end());
            const auto band = near_side_band(footprint, user_cell, map);
            out.blocked_cells.insert(band.begin(), band.end());
            break;
        }
        }
    }
    if (out.blocked_cells.erase(user_cell) > 0) out.degenerate = true;
    return out;
}

} // namespace canesim
