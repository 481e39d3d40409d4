#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "canesim/grid.hpp"
#include "canesim/rng.hpp"

namespace canesim {

enum class ObjectClass { Seat, Table, Person, Other };

std::string_view to_string(ObjectClass c) noexcept;

// Ground-truth object as the simulator knows it.
struct WorldObject {
    std::string id;
    ObjectClass object_class = ObjectClass::Other;
    Cell cell;
    bool occupied = false;  // seats only
};

struct ObjectObservation {
    std::string object_id;
    ObjectClass object_class = ObjectClass::Other;
    bool occupied = false;
    double distance = 0.0;  // metres
    Cell cell;              // ground-truth cell, handed to the planner as-is
    bool injected_outlier = false;  // simulator bookkeeping, not visible to the filter

    friend bool operator==(const ObjectObservation&, const ObjectObservation&) = default;
};

struct DetectionFrame {
    int frame_index = 0;
    std::vector<ObjectObservation> observations;
};

// Which mean the 10 % outlier rule compares a reading against.
enum class OutlierReference {
    IncludeCandidate,  // mean of all readings, the suspect included
    LeaveOneOut,       // mean of the other readings
};

struct SensorConfig {
    double horizontal_fov_deg = 70.0;  // >= 360 means omnidirectional
    double max_range_m = 5.0;
    double distance_noise_sigma = 0.02;  // relative
    double outlier_injection_prob = 0.05;
    double miss_prob = 0.0;
    OutlierReference outlier_reference = OutlierReference::IncludeCandidate;

    void validate() const;
    bool omnidirectional() const noexcept { return horizontal_fov_deg >= 360.0; }

    static SensorConfig noiseless();
    // Omnidirectional, effectively unlimited range, noiseless.
    static SensorConfig full_coverage();
};

// Range and bearing of a cell centre seen from a pose.
struct Sighting {
    double distance_m = 0.0;
    double bearing_deg = 0.0;  // signed, positive to the right of the heading
};

Sighting sight(const Pose& pose, Cell target, double resolution) noexcept;

// True when `target` lies inside the FOV cone and range. The pose's own cell
// is never in view.
bool in_view(const Pose& pose, Cell target, const SensorConfig& config, double resolution) noexcept;

// All in-bounds cells currently in view, in row-major order.
std::vector<Cell> visible_cells(const Pose& pose, const SensorConfig& config, const GridMap& map);

// One noisy frame of every object in view. Distances get multiplicative
// Gaussian noise; with outlier_injection_prob a reading is further scaled by
// U[1.3, 2.0]; with miss_prob an object is dropped.
DetectionFrame observe(std::span<const WorldObject> world, const Pose& pose,
                       const SensorConfig& config, double resolution, Rng& rng, int frame_index = 0);

inline constexpr double kOutlierThreshold = 0.10;
inline constexpr std::size_t kFramesPerObservation = 10;

// Per object: drop readings deviating more than 10 % from the reference mean,
// re-average survivors. Objects left without readings are dropped. Output is
// sorted by object id; non-distance fields come from the object's last
// surviving reading.
std::vector<ObjectObservation> filter_outliers(
    std::span<const DetectionFrame> frames,
    OutlierReference reference = OutlierReference::IncludeCandidate,
    std::size_t expected_frames = kFramesPerObservation);

class NoVacantSeat : public std::runtime_error {
public:
    NoVacantSeat() : std::runtime_error("no vacant seat observed") {}
};

// Nearest vacant seat by Euclidean distance between cell centres; exact ties
// go to the lexicographically smaller (row, col).
ObjectObservation select_target(std::span<const ObjectObservation> observations, Cell user_cell);

struct DisplacementEstimate {
    int predicted_cells = 0;
    double measured_cells = 0.0;
    double relative_deviation = 0.0;
};

// Noisy odometry stand-in for the frame-to-frame displacement check.
DisplacementEstimate measure_displacement(const Pose& pre_pose, const Pose& post_pose,
                                          int predicted_cells, Rng& rng, double odometry_sigma);

} // namespace canesim
