#include "canesim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace canesim {

std::string_view to_string(ObjectClass c) noexcept
{
    switch (c) {
    case ObjectClass::Seat: return "seat";
    case ObjectClass::Table: return "table";
    case ObjectClass::Person: return "person";
    case ObjectClass::Other: return "other";
    }
    return "?";
}

void SensorConfig::validate() const
{
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    };
    if (!(horizontal_fov_deg > 0.0)) throw std::invalid_argument("horizontal_fov must be positive");
    if (!(max_range_m > 0.0)) throw std::invalid_argument("max_range must be positive");
    if (!(distance_noise_sigma >= 0.0))
        throw std::invalid_argument("distance_noise_sigma must be non-negative");
    prob(outlier_injection_prob, "outlier_injection_prob");
    prob(miss_prob, "miss_prob");
}

SensorConfig SensorConfig::noiseless()
{
    SensorConfig c;
    c.distance_noise_sigma = 0.0;
    c.outlier_injection_prob = 0.0;
    c.miss_prob = 0.0;
    return c;
}

SensorConfig SensorConfig::full_coverage()
{
    SensorConfig c = noiseless();
    c.horizontal_fov_deg = 360.0;
    c.max_range_m = 1.0e6;
    return c;
}

Sighting sight(const Pose& pose, Cell target, double resolution) noexcept
{
    const double dx = (target.col - pose.cell.col) * resolution;
    const double dy = (target.row - pose.cell.row) * resolution;
    const auto h = heading_delta(pose.heading);
    const double hx = h[1];
    const double hy = h[0];
    const double dot = dx * hx + dy * hy;
    // x east, y south: positive cross means the target is clockwise (right).
    const double cross = hx * dy - hy * dx;
    return {std::hypot(dx, dy), std::atan2(cross, dot) * 180.0 / std::numbers::pi};
}

bool in_view(const Pose& pose, Cell target, const SensorConfig& config, double resolution) noexcept
{
    if (target == pose.cell) return false;
    const Sighting s = sight(pose, target, resolution);
    if (s.distance_m > config.max_range_m + 1e-9) return false;
    if (config.omnidirectional()) return true;
    return std::abs(s.bearing_deg) <= config.horizontal_fov_deg / 2.0 + 1e-9;
}

std::vector<Cell> visible_cells(const Pose& pose, const SensorConfig& config, const GridMap& map)
{
    std::vector<Cell> out;
    for (int r = 0; r < map.rows(); ++r)
        for (int c = 0; c < map.cols(); ++c)
            if (in_view(pose, {r, c}, config, map.resolution())) out.push_back({r, c});
    return out;
}

DetectionFrame observe(std::span<const WorldObject> world, const Pose& pose,
                       const SensorConfig& config, double resolution, Rng& rng, int frame_index)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> outlier_scale(1.3, 2.0);

    DetectionFrame frame;
    frame.frame_index = frame_index;
    for (const WorldObject& obj : world) {
        if (!in_view(pose, obj.cell, config, resolution)) continue;
        if (config.miss_prob > 0.0 && unit(rng) < config.miss_prob) continue;

        const double truth = sight(pose, obj.cell, resolution).distance_m;
        double d = truth;
        if (config.distance_noise_sigma > 0.0) d *= 1.0 + config.distance_noise_sigma * gauss(rng);
        bool outlier = false;
        if (config.outlier_injection_prob > 0.0 && unit(rng) < config.outlier_injection_prob) {
            d *= outlier_scale(rng);
            outlier = true;
        }
        frame.observations.push_back({obj.id, obj.object_class,
                                      obj.object_class == ObjectClass::Seat && obj.occupied,
                                      std::max(d, 0.0), obj.cell, outlier});
    }
    return frame;
}

std::vector<ObjectObservation> filter_outliers(std::span<const DetectionFrame> frames,
                                               OutlierReference reference,
                                               std::size_t expected_frames)
{
    if (frames.size() != expected_frames)
        throw std::invalid_argument("outlier filter needs exactly " +
                                    std::to_string(expected_frames) + " frames, got " +
                                    std::to_string(frames.size()));

    std::map<std::string, std::vector<const ObjectObservation*>> readings;
    for (const DetectionFrame& f : frames)
        for (const ObjectObservation& o : f.observations) readings[o.object_id].push_back(&o);

    std::vector<ObjectObservation> out;
    for (const auto& [id, obs] : readings) {
        double sum = 0.0;
        for (const auto* o : obs) sum += o->distance;
        const double n = static_cast<double>(obs.size());

        double kept_sum = 0.0;
        std::size_t kept = 0;
        const ObjectObservation* last = nullptr;
        for (const auto* o : obs) {
            double ref = sum / n;
            if (reference == OutlierReference::LeaveOneOut && obs.size() > 1)
                ref = (sum - o->distance) / (n - 1.0);
            const bool keep = ref <= 0.0 || std::abs(o->distance - ref) / ref <= kOutlierThreshold;
            if (!keep) continue;
            kept_sum += o->distance;
            ++kept;
            last = o;
        }
        if (kept == 0) continue;
        ObjectObservation merged = *last;
        merged.distance = kept_sum / static_cast<double>(kept);
        merged.injected_outlier = false;
        out.push_back(std::move(merged));
    }
    return out;
}

ObjectObservation select_target(std::span<const ObjectObservation> observations, Cell user_cell)
{
    const ObjectObservation* best = nullptr;
    long best_d2 = 0;
    for (const ObjectObservation& o : observations) {
        if (o.object_class != ObjectClass::Seat || o.occupied) continue;
        const long dr = o.cell.row - user_cell.row;
        const long dc = o.cell.col - user_cell.col;
        const long d2 = dr * dr + dc * dc;
        if (!best || d2 < best_d2 || (d2 == best_d2 && o.cell < best->cell)) {
            best = &o;
            best_d2 = d2;
        }
    }
    if (!best) throw NoVacantSeat();
    return *best;
}

DisplacementEstimate measure_displacement(const Pose& pre_pose, const Pose& post_pose,
                                          int predicted_cells, Rng& rng, double odometry_sigma)
{
    if (predicted_cells < 0) throw std::invalid_argument("predicted_cells must be non-negative");
    const double dr = post_pose.cell.row - pre_pose.cell.row;
    const double dc = post_pose.cell.col - pre_pose.cell.col;
    double measured = std::hypot(dr, dc);
    if (odometry_sigma > 0.0) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        measured *= 1.0 + odometry_sigma * gauss(rng);
    }
    measured = std::max(measured, 0.0);
    const double denom = std::max(predicted_cells, 1);
    return {predicted_cells, measured, std::abs(measured - predicted_cells) / denom};
}

} // namespace canesim
