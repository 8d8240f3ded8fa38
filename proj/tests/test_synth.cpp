#include <catch2/catch.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "oracles.hpp"
#include "ridecomfort/alignment.hpp"
#include "ridecomfort/synth.hpp"

using namespace ridecomfort;

TEST_CASE("a still zero-noise scenario renders exact gravity") {
  Scenario sc;
  sc.segments = {{5.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  const GeneratedRide ride = generate_ride(sc);
  REQUIRE(ride.device.size() == 250);
  for (const ImuSample& s : ride.device.samples) {
    CHECK(s.accel.x == 0.0);
    CHECK(s.accel.y == 0.0);
    CHECK(s.accel.z == kStandardGravity);
    CHECK(s.gyro.x == 0.0);
    CHECK(s.gyro.y == 0.0);
    CHECK(s.gyro.z == 0.0);
  }
  CHECK(ride.truth.true_events.empty());
}

TEST_CASE("a 6 m/s^2 segment lands in the ground truth as FastAcceleration") {
  Scenario sc;
  sc.segments = {{3.0, 0.0, 0.0, 0.0}, {2.0, 6.0, 0.0, 0.0}, {3.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  const GeneratedRide ride = generate_ride(sc);
  REQUIRE(ride.truth.true_events.size() == 1);
  const ComfortEvent& e = ride.truth.true_events[0];
  CHECK(e.kind == EventKind::FastAcceleration);
  CHECK(e.peak == Approx(6.0));
  CHECK(e.t_start == Approx(3.0));
  CHECK(e.t_end == Approx(5.0));
  CHECK(e.threshold == Approx(5.0));

  // 4 m/s^2 stays under the default threshold.
  sc.segments[1].longitudinal_accel = 4.0;
  CHECK(generate_ride(sc).truth.true_events.empty());
}

TEST_CASE("cornering ground truth follows speed times yaw rate") {
  Scenario sc;
  sc.segments = {{2.0, 0.0, 0.0, 0.0},
                 {5.0, 2.0, 0.0, 0.0},    // reach 10 m/s
                 {4.0, 0.0, 0.3, 0.0},    // lateral 3 m/s^2
                 {2.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  const GeneratedRide ride = generate_ride(sc);
  REQUIRE(ride.truth.true_events.size() == 1);
  const ComfortEvent& e = ride.truth.true_events[0];
  CHECK(e.kind == EventKind::AggressiveCornering);
  CHECK(e.peak == Approx(3.0));
  CHECK(e.t_start == Approx(7.0));
  CHECK(e.t_end == Approx(11.0));
}

TEST_CASE("a cornering episode that ramps through the threshold starts mid-segment") {
  Scenario sc;
  // Accelerating while turning: lateral grows linearly from 0, crossing
  // 0.75 m/s^2 at t = 2 + 0.75/(1.0 * 0.5) = 3.5 s.
  sc.segments = {{2.0, 0.0, 0.0, 0.0}, {6.0, 1.0, 0.5, 0.0}, {2.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  const GeneratedRide ride = generate_ride(sc);
  REQUIRE(!ride.truth.true_events.empty());
  const ComfortEvent& e = ride.truth.true_events[0];
  CHECK(e.kind == EventKind::AggressiveCornering);
  CHECK(e.t_start == Approx(3.5).epsilon(1e-12));
  CHECK(e.t_end == Approx(8.0).epsilon(1e-12));
  CHECK(e.peak == Approx(6.0 * 0.5).epsilon(1e-12));  // v = 6 m/s at segment end
}

TEST_CASE("generation is deterministic for a fixed seed") {
  Scenario sc;
  sc.segments = {{5.0, 1.0, 0.2, 0.3}};
  sc.sample_rate = 100.0;
  sc.accel_noise_sigma = 0.05;
  sc.gyro_noise_sigma = 0.01;
  sc.seed = 424242;

  const GeneratedRide a = generate_ride(sc);
  const GeneratedRide b = generate_ride(sc);
  REQUIRE(a.device.size() == b.device.size());
  bool identical = true;
  for (std::size_t i = 0; i < a.device.size(); ++i) {
    const ImuSample &sa = a.device.samples[i], &sb = b.device.samples[i];
    // Bit-level equality, not approximate.
    identical = identical && std::memcmp(&sa.t, &sb.t, sizeof(double)) == 0 &&
                std::memcmp(&sa.accel, &sb.accel, sizeof(Vec3)) == 0 &&
                std::memcmp(&sa.gyro, &sb.gyro, sizeof(Vec3)) == 0;
  }
  CHECK(identical);

  sc.seed = 424243;
  const GeneratedRide c = generate_ride(sc);
  bool any_different = false;
  for (std::size_t i = 0; i < a.device.size(); ++i)
    if (a.device.samples[i].accel.x != c.device.samples[i].accel.x) any_different = true;
  CHECK(any_different);
}

TEST_CASE("lateral ideal acceleration equals trapezoid-integrated speed times yaw") {
  Scenario sc;
  sc.segments = {{3.0, 0.0, 0.0, 0.0},
                 {4.0, 1.5, 0.1, 0.0},
                 {5.0, -0.5, 0.25, 0.0},
                 {3.0, 0.0, 0.4, 0.0}};
  sc.sample_rate = 40.0;
  const GeneratedRide ride = generate_ride(sc);

  std::vector<double> times;
  for (const ImuSample& s : ride.truth.ideal_vehicle.samples) times.push_back(s.t);
  const std::vector<double> speeds = oracles::trapezoid_speeds(sc.segments, times);

  std::size_t seg = 0;
  std::vector<double> bounds{0.0};
  for (const Segment& s : sc.segments) bounds.push_back(bounds.back() + s.duration);
  for (std::size_t i = 0; i < times.size(); ++i) {
    while (seg + 1 < sc.segments.size() && times[i] >= bounds[seg + 1]) ++seg;
    const double expected = speeds[i] * sc.segments[seg].yaw_rate;
    CHECK(ride.truth.ideal_vehicle.samples[i].accel.y == Approx(expected).margin(1e-9));
  }
}

TEST_CASE("device samples are the mounted vehicle signals plus bias") {
  const Rotation mounting =
      Rotation::about_z(0.4) * Rotation::about_y(-0.2) * Rotation::about_x(0.1);
  Scenario sc;
  sc.segments = {{4.0, 1.0, 0.2, 0.0}};
  sc.sample_rate = 50.0;
  sc.mounting = mounting;
  sc.gyro_bias = {0.01, -0.02, 0.005};
  const GeneratedRide ride = generate_ride(sc);

  const Rotation to_device = mounting.transposed();
  for (std::size_t i = 0; i < ride.device.size(); i += 37) {
    const ImuSample& ideal = ride.truth.ideal_vehicle.samples[i];
    const ImuSample& dev = ride.device.samples[i];
    const Vec3 expected_accel = to_device.apply(ideal.accel);
    const Vec3 expected_gyro = to_device.apply(ideal.gyro) + sc.gyro_bias;
    CHECK((dev.accel - expected_accel).norm() < 1e-12);
    CHECK((dev.gyro - expected_gyro).norm() < 1e-12);
  }

  // Rotating device samples back with the mounting recovers vehicle signals.
  const SampleSeries back = apply_rotation(mounting, ride.device);
  for (std::size_t i = 0; i < back.size(); i += 53) {
    const Vec3 back_accel = back.samples[i].accel;
    CHECK((back_accel - ride.truth.ideal_vehicle.samples[i].accel).norm() < 1e-9);
  }
}

TEST_CASE("adjacent exceeding segments coalesce into one ground-truth event") {
  Scenario sc;
  sc.segments = {{2.0, 0.0, 0.0, 0.0},
                 {1.0, 5.5, 0.0, 0.0},
                 {1.0, 7.0, 0.0, 0.0},
                 {2.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  const GeneratedRide ride = generate_ride(sc);
  REQUIRE(ride.truth.true_events.size() == 1);
  CHECK(ride.truth.true_events[0].t_start == Approx(2.0));
  CHECK(ride.truth.true_events[0].t_end == Approx(4.0));
  CHECK(ride.truth.true_events[0].peak == Approx(7.0));
}

TEST_CASE("invalid scenarios are rejected") {
  Scenario sc;
  CHECK(oracles::error_code_of([&] { generate_ride(sc); }) == Errc::InvalidScenario);

  sc.segments = {{-1.0, 0.0, 0.0, 0.0}};
  CHECK(oracles::error_code_of([&] { generate_ride(sc); }) == Errc::InvalidScenario);

  sc.segments = {{1.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 0.0;
  CHECK(oracles::error_code_of([&] { generate_ride(sc); }) == Errc::InvalidScenario);

  sc.sample_rate = 50.0;
  sc.accel_noise_sigma = -0.1;
  CHECK(oracles::error_code_of([&] { generate_ride(sc); }) == Errc::InvalidScenario);
}

TEST_CASE("round-trip: generated mounting is recoverable") {
  const Rotation mounting =
      Rotation::about_z(1.1) * Rotation::about_y(0.3) * Rotation::about_x(-0.6);
  Scenario sc;
  sc.segments = {{3.0, 0.0, 0.0, 0.0},
                 {5.0, 2.0, 0.0, 0.0},
                 {2.0, 0.0, 0.0, 0.0},
                 {10.0, 0.0, 0.3, 0.0},
                 {2.0, 0.0, 0.0, 0.0}};
  sc.sample_rate = 50.0;
  sc.mounting = mounting;
  sc.accel_noise_sigma = 0.05;
  sc.gyro_noise_sigma = 0.005;
  sc.seed = 99;
  const GeneratedRide ride = generate_ride(sc);
  const AlignmentEstimate est = estimate_alignment(ride.device, GyroBias{});
  CHECK(angular_distance(est.rotation, mounting) < 2.0 * kPi / 180.0);
}
