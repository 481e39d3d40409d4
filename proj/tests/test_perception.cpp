#include <doctest.h>

#include <vector>

#include "canesim/perception.hpp"

using namespace canesim;

namespace {

DetectionFrame frame_of(const std::string& id, double d, ObjectClass cls = ObjectClass::Seat)
{
    DetectionFrame f;
    f.observations.push_back({id, cls, false, d, {0, 0}, false});
    return f;
}

std::vector<DetectionFrame> frames_from(const std::vector<double>& readings)
{
    std::vector<DetectionFrame> out;
    for (double d : readings) out.push_back(frame_of("obj", d));
    return out;
}

ObjectObservation seat_at(Cell c, bool occupied = false)
{
    return {"seat-" + std::to_string(c.row) + "-" + std::to_string(c.col), ObjectClass::Seat, occupied, 0.0, c, false};
}

} // namespace

TEST_CASE("noiseless observation geometry")
{
    const std::vector<WorldObject> world{{"ahead", ObjectClass::Seat, {5, 5}, false},
                                         {"side", ObjectClass::Table, {10, 8}, false}};
    const Pose pose{{10, 5}, Heading::North};
    Rng rng(1);
    const DetectionFrame f = observe(world, pose, SensorConfig::noiseless(), 0.4, rng);
    REQUIRE(f.observations.size() == 1);
    CHECK(f.observations[0].object_id == "ahead");
    CHECK(f.observations[0].distance == doctest::Approx(2.0).epsilon(1e-12));

    const DetectionFrame all = observe(world, pose, SensorConfig::full_coverage(), 0.4, rng);
    CHECK(all.observations.size() == 2);
}

TEST_CASE("sight bearing sign")
{
    const Pose pose{{5, 5}, Heading::North};
    CHECK(sight(pose, {5, 7}, 0.4).bearing_deg == doctest::Approx(90.0));
    CHECK(sight(pose, {5, 3}, 0.4).bearing_deg == doctest::Approx(-90.0));
    CHECK(sight(pose, {3, 5}, 0.4).bearing_deg == doctest::Approx(0.0));
    CHECK_FALSE(in_view(pose, {5, 5}, SensorConfig::full_coverage(), 0.4));
    SensorConfig narrow;
    CHECK(in_view(pose, {1, 5}, narrow, 0.4));
    CHECK_FALSE(in_view(pose, {5, 6}, narrow, 0.4));
}

TEST_CASE("noise stays within ten percent")
{
    SensorConfig cfg;
    cfg.outlier_injection_prob = 0.0;
    const std::vector<WorldObject> world{{"o", ObjectClass::Other, {2, 5}, false}};
    const Pose pose{{10, 5}, Heading::North};
    Rng rng(2024);
    int within = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto f = observe(world, pose, cfg, 0.4, rng);
        if (std::abs(f.observations[0].distance - 3.2) / 3.2 <= 0.10) ++within;
    }
    CHECK(static_cast<double>(within) / n > 0.999);
}

TEST_CASE("miss probability one drops everything")
{
    SensorConfig cfg = SensorConfig::noiseless();
    cfg.miss_prob = 1.0;
    const std::vector<WorldObject> world{{"o", ObjectClass::Other, {2, 5}, false}};
    Rng rng(1);
    CHECK(observe(world, {{10, 5}, Heading::North}, cfg, 0.4, rng).observations.empty());
}

TEST_CASE("outlier filter fixtures")
{
    std::vector<double> r(9, 2.0);
    r.push_back(3.0);
    auto out = filter_outliers(frames_from(r));
    REQUIRE(out.size() == 1);
    CHECK(out[0].distance == doctest::Approx(2.0).epsilon(1e-12));

    out = filter_outliers(frames_from(std::vector<double>(10, 1.5)));
    REQUIRE(out.size() == 1);
    CHECK(out[0].distance == doctest::Approx(1.5).epsilon(1e-12));

    std::vector<double> mixed(5, 1.0);
    mixed.insert(mixed.end(), 5, 1.09);
    out = filter_outliers(frames_from(mixed));
    REQUIRE(out.size() == 1);
    CHECK(out[0].distance == doctest::Approx(1.045).epsilon(1e-12));
}

TEST_CASE("outlier filter reference variants")
{
    std::vector<double> r(8, 2.0);
    r.push_back(4.0);
    r.push_back(4.0);
    // Two large outliers drag the inclusive mean far enough to reject every reading.
    CHECK(filter_outliers(frames_from(r), OutlierReference::IncludeCandidate).empty());
    const auto loo = filter_outliers(frames_from(r), OutlierReference::LeaveOneOut);
    CHECK(loo.empty());

    std::vector<double> one(9, 2.0);
    one.push_back(2.7);
    const auto a = filter_outliers(frames_from(one), OutlierReference::LeaveOneOut);
    REQUIRE(a.size() == 1);
    CHECK(a[0].distance == doctest::Approx(2.0));
}

TEST_CASE("outlier filter contract")
{
    CHECK_THROWS_AS(filter_outliers(frames_from({1.0, 1.0})), std::invalid_argument);

    // Objects seen in only some frames; output sorted by id; never invents objects.
    std::vector<DetectionFrame> frames(10);
    for (int i = 0; i < 10; ++i) {
        frames[i].observations.push_back({"b", ObjectClass::Other, false, 1.0, {1, 1}, false});
        if (i % 2 == 0) frames[i].observations.push_back({"a", ObjectClass::Seat, false, 3.0, {2, 2}, false});
    }
    const auto out = filter_outliers(frames);
    REQUIRE(out.size() == 2);
    CHECK(out[0].object_id == "a");
    CHECK(out[1].object_id == "b");
    CHECK(out[0].distance == doctest::Approx(3.0));

    // Noiseless frames: identity on the mean distance.
    const std::vector<WorldObject> world{{"x", ObjectClass::Seat, {3, 2}, false}, {"y", ObjectClass::Other, {4, 6}, false}};
    Rng rng(9);
    std::vector<DetectionFrame> clean;
    for (int i = 0; i < 10; ++i) clean.push_back(observe(world, {{10, 4}, Heading::North}, SensorConfig::noiseless(), 0.4, rng, i));
    const auto same = filter_outliers(clean);
    REQUIRE(same.size() == clean[0].observations.size());
    for (std::size_t k = 0; k < same.size(); ++k) CHECK(same[k].distance == doctest::Approx(clean[0].observations[k].distance));
}

TEST_CASE("target selection")
{
    const Cell user{10, 5};
    std::vector<ObjectObservation> obs{seat_at({5, 5}), seat_at({2, 5})};
    CHECK(select_target(obs, user).cell == Cell{5, 5});

    std::vector<ObjectObservation> occupied{seat_at({5, 5}, true), seat_at({2, 5}, true)};
    CHECK_THROWS_AS(select_target(occupied, user), NoVacantSeat);

    std::vector<ObjectObservation> tie{seat_at({2, 5}), seat_at({2, 3})};
    CHECK(select_target(tie, {6, 4}).cell == Cell{2, 3});

    std::vector<ObjectObservation> mixed{{"p", ObjectClass::Person, false, 0.1, {9, 5}, false}, seat_at({1, 1})};
    CHECK(select_target(mixed, user).cell == Cell{1, 1});
}

TEST_CASE("displacement measurement")
{
    Rng rng(5);
    const Pose a{{5, 5}, Heading::North};
    const Pose b{{4, 5}, Heading::North};
    CHECK(measure_displacement(a, b, 1, rng, 0.0).relative_deviation == 0.0);
    CHECK(measure_displacement(a, a, 1, rng, 0.0).relative_deviation == 1.0);

    int failures = 0;
    for (int i = 0; i < 10000; ++i)
        if (measure_displacement(a, b, 1, rng, 0.03).relative_deviation > 0.10) ++failures;
    CHECK(failures < 100);
}

TEST_CASE("sensor config validation")
{
    SensorConfig bad;
    bad.horizontal_fov_deg = 0.0;
    CHECK_THROWS(bad.validate());
    bad = SensorConfig{};
    bad.outlier_injection_prob = 1.5;
    CHECK_THROWS(bad.validate());
    CHECK(SensorConfig::full_coverage().omnidirectional());
    CHECK_FALSE(SensorConfig{}.omnidirectional());
}
