#include <catch2/catch.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ridecomfort/detect.hpp"

using namespace ridecomfort;

namespace {

// Vehicle-frame trace with a rectangular bump on one channel.
SampleSeries bump_trace(double rate, double total, double bump_start, double bump_len,
                        double level, int channel) {
  SampleSeries s;
  s.frame = Frame::Vehicle;
  const double dt = 1.0 / rate;
  for (double t = 0.0; t < total; t += dt) {
    Vec3 accel;
    const bool in_bump = t >= bump_start && t < bump_start + bump_len;
    if (in_bump) {
      if (channel == 0) accel.x = level;
      if (channel == 1) accel.y = level;
      if (channel == 2) accel.z = level;
    }
    s.samples.push_back({t, accel, {}, Frame::Vehicle});
  }
  return s;
}

}  // namespace

TEST_CASE("a sustained forward surge becomes one FastAcceleration event") {
  const SampleSeries trace = bump_trace(50, 10, 3.0, 1.0, 6.0, 0);
  const std::vector<ComfortEvent> events = detect_events(trace);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::FastAcceleration);
  CHECK(events[0].peak == Approx(6.0));
  CHECK(events[0].threshold == Approx(5.0));
  CHECK(events[0].t_start == Approx(3.0).margin(0.03));
  CHECK(events[0].t_end == Approx(4.0).margin(0.03));
}

TEST_CASE("sub-threshold cornering produces nothing") {
  SampleSeries trace = bump_trace(50, 10, 2.0, 5.0, 0.74, 1);
  CHECK(detect_events(trace).empty());

  // Just past the threshold it fires.
  const SampleSeries over = bump_trace(50, 10, 2.0, 5.0, 0.76, 1);
  const std::vector<ComfortEvent> events = detect_events(over);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::AggressiveCornering);
}

TEST_CASE("episodes shorter than min_duration are dropped") {
  const SampleSeries trace = bump_trace(100, 10, 3.0, 0.1, 6.0, 0);
  CHECK(detect_events(trace).empty());
}

TEST_CASE("nearby same-kind episodes merge into one event") {
  SampleSeries trace;
  trace.frame = Frame::Vehicle;
  const double dt = 0.02;
  for (double t = 0.0; t < 10.0; t += dt) {
    const bool first = t >= 3.0 && t < 3.5;
    const bool second = t >= 3.8 && t < 4.3;  // 0.3 s gap < merge_gap 0.5
    trace.samples.push_back({t, {first || second ? 6.0 : 0.0, 0, 0}, {}, Frame::Vehicle});
  }
  const std::vector<ComfortEvent> events = detect_events(trace);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::FastAcceleration);
  CHECK(events[0].t_start == Approx(3.0).margin(0.03));
  CHECK(events[0].t_end == Approx(4.3).margin(0.03));

  const auto ref = oracles::naive_episodes(
      trace, [](const ImuSample& s) { return s.accel.x > 5.0; },
      [](const ImuSample& s) { return s.accel.x; }, 0.2, 0.5);
  REQUIRE(ref.size() == 1);
  CHECK(events[0].t_start == ref[0].t_start);
  CHECK(events[0].t_end == ref[0].t_end);
  CHECK(events[0].peak == ref[0].peak);
}

TEST_CASE("braking and potholes report signed peaks") {
  const SampleSeries braking = bump_trace(50, 10, 4.0, 1.0, -7.5, 0);
  const std::vector<ComfortEvent> brake_events = detect_events(braking);
  REQUIRE(brake_events.size() == 1);
  CHECK(brake_events[0].kind == EventKind::HardBraking);
  CHECK(brake_events[0].peak == Approx(-7.5));
  CHECK(std::abs(brake_events[0].peak) >= brake_events[0].threshold);

  const SampleSeries pothole = bump_trace(50, 10, 5.0, 0.5, -4.0, 2);
  const std::vector<ComfortEvent> hole_events = detect_events(pothole);
  REQUIRE(hole_events.size() == 1);
  CHECK(hole_events[0].kind == EventKind::Pothole);
  CHECK(hole_events[0].peak == Approx(-4.0));
}

TEST_CASE("detection requires the vehicle frame") {
  SampleSeries device = bump_trace(50, 5, 1.0, 1.0, 6.0, 0);
  device.frame = Frame::Device;
  for (ImuSample& s : device.samples) s.frame = Frame::Device;
  CHECK(oracles::error_code_of([&] { detect_events(device); }) == Errc::WrongFrame);
}

TEST_CASE("random traces match the naive reference detector") {
  std::mt19937 rng(1234);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    SampleSeries trace;
    trace.frame = Frame::Vehicle;
    double level = 0.0;
    for (int i = 0; i < 600; ++i) {
      if (i % 25 == 0) level = n(rng);  // blocky random signal
      trace.samples.push_back({i * 0.02, {level, n(rng) * 0.3, 0}, {}, Frame::Vehicle});
    }
    const Thresholds th{};
    const std::vector<ComfortEvent> events = detect_events(trace, th);

    const auto expect_fast = oracles::naive_episodes(
        trace, [&](const ImuSample& s) { return s.accel.x > th.accel_x; },
        [](const ImuSample& s) { return s.accel.x; }, th.min_duration, th.merge_gap);
    const auto expect_brake = oracles::naive_episodes(
        trace, [&](const ImuSample& s) { return s.accel.x < -th.brake_x; },
        [](const ImuSample& s) { return s.accel.x; }, th.min_duration, th.merge_gap);
    const auto expect_corner = oracles::naive_episodes(
        trace, [&](const ImuSample& s) { return std::abs(s.accel.y) > th.lateral_y; },
        [](const ImuSample& s) { return s.accel.y; }, th.min_duration, th.merge_gap);

    std::vector<ComfortEvent> fast, brake, corner;
    for (const ComfortEvent& e : events) {
      if (e.kind == EventKind::FastAcceleration) fast.push_back(e);
      if (e.kind == EventKind::HardBraking) brake.push_back(e);
      if (e.kind == EventKind::AggressiveCornering) corner.push_back(e);
    }
    REQUIRE(fast.size() == expect_fast.size());
    REQUIRE(brake.size() == expect_brake.size());
    REQUIRE(corner.size() == expect_corner.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].t_start == expect_fast[i].t_start);
      CHECK(fast[i].t_end == expect_fast[i].t_end);
      CHECK(fast[i].peak == expect_fast[i].peak);
    }
    for (std::size_t i = 0; i < corner.size(); ++i) {
      CHECK(corner[i].t_start == expect_corner[i].t_start);
      CHECK(corner[i].peak == expect_corner[i].peak);
    }

    // Same-kind events never overlap after merging, and the list is ordered.
    for (std::size_t i = 1; i < events.size(); ++i)
      CHECK(events[i - 1].t_start <= events[i].t_start);
    for (std::size_t i = 1; i < fast.size(); ++i)
      CHECK(fast[i].t_start - fast[i - 1].t_end >= th.merge_gap);
  }
}

TEST_CASE("raising a threshold never adds events of that kind") {
  std::mt19937 rng(77);
  std::normal_distribution<double> n(0.0, 4.0);
  SampleSeries trace;
  trace.frame = Frame::Vehicle;
  double level = 0.0;
  for (int i = 0; i < 2000; ++i) {
    if (i % 30 == 0) level = n(rng);
    trace.samples.push_back({i * 0.02, {level, 0, 0}, {}, Frame::Vehicle});
  }
  std::size_t prev = SIZE_MAX;
  for (double threshold : {2.0, 3.0, 4.0, 5.0, 6.0, 8.0}) {
    Thresholds th;
    th.accel_x = threshold;
    std::size_t count = 0;
    for (const ComfortEvent& e : detect_events(trace, th))
      if (e.kind == EventKind::FastAcceleration) ++count;
    CHECK(count <= prev);
    prev = count;
  }
}

TEST_CASE("detection is deterministic") {
  const SampleSeries trace = bump_trace(50, 20, 3.0, 1.0, 6.0, 0);
  const std::vector<ComfortEvent> a = detect_events(trace);
  const std::vector<ComfortEvent> b = detect_events(trace);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].t_start == b[i].t_start);
    CHECK(a[i].t_end == b[i].t_end);
    CHECK(a[i].peak == b[i].peak);
  }
}

TEST_CASE("every sample past a threshold falls inside some raw episode") {
  // With the duration and merge gates disabled, reported episodes must cover
  // exactly the crossing samples.
  std::mt19937 rng(98);
  std::normal_distribution<double> n(0.0, 4.0);
  SampleSeries trace;
  trace.frame = Frame::Vehicle;
  for (int i = 0; i < 1000; ++i)
    trace.samples.push_back({i * 0.02, {n(rng), 0, 0}, {}, Frame::Vehicle});
  Thresholds th;
  th.min_duration = 0.0;
  th.merge_gap = 0.0;
  const std::vector<ComfortEvent> events = detect_events(trace, th);
  for (const ImuSample& s : trace.samples) {
    if (s.accel.x > th.accel_x) {
      bool covered = false;
      for (const ComfortEvent& e : events)
        if (e.kind == EventKind::FastAcceleration && s.t >= e.t_start && s.t <= e.t_end)
          covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("score_ride arithmetic") {
  CHECK(score_ride({}, 120.0).score == 100.0);

  std::vector<ComfortEvent> two{{EventKind::FastAcceleration, 1, 2, 6, 5},
                                {EventKind::AggressiveCornering, 4, 5, 1, 0.75}};
  const RideReport r = score_ride(std::move(two), 120.0);
  CHECK(r.score == Approx(92.0));
  CHECK(r.count(EventKind::FastAcceleration) == 1);
  CHECK(r.count(EventKind::AggressiveCornering) == 1);
  CHECK(r.duration == 120.0);

  std::vector<ComfortEvent> many(30, ComfortEvent{EventKind::HardBraking, 0, 1, -6, 5});
  CHECK(score_ride(std::move(many), 600.0).score == 0.0);

  CHECK(oracles::error_code_of([] { score_ride({}, 0.0); }) == Errc::InvalidDuration);
}

TEST_CASE("score never increases when events are added") {
  std::vector<ComfortEvent> events;
  double prev = 101.0;
  for (int i = 0; i < 40; ++i) {
    events.push_back({kAllEventKinds[i % 4], i * 1.0, i + 0.5, 6.0, 5.0});
    const double s = score_ride(events, 300.0).score;
    CHECK(s <= prev);
    prev = s;
  }
}
