/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ridecomfort/core.hpp"
#include "ridecomfort/detect.hpp"
#include "ridecomfort/error.hpp"

namespace ridecomfort {

/// One stretch of ride with constant controls. Longitudinal acceleration
/// integrates into speed; lateral acceleration follows as speed * yaw rate.
struct Segment {
  double duration = 1.0;            // seconds
  double longitudinal_accel = 0.0;  // m/s^2
  double yaw_rate = 0.0;            // rad/s
  double roughness_sigma = 0.0;     // m/s^2, white vertical road texture
};

/// A full synthetic ride specification. `mounting` is the device-to-vehicle
/// rotation the alignment stage is expected to recover; generated device
/// samples are the vehicle-frame signals carried through its transpose.
struct Scenario {
  std::vector<Segment> segments;
  double sample_rate = 50.0;  // Hz
  Rotation mounting;
  double accel_noise_sigma = 0.0;  // m/s^2 per axis
  double gyro_noise_sigma = 0.0;   // rad/s per axis
  Vec3 gyro_bias;                  // rad/s
  std::uint64_t seed = 0;

  void validate() const {
    if (segments.empty()) fail(Errc::InvalidScenario, "scenario needs at least one segment");
    for (const Segment& s : segments) {
      if (!(s.duration > 0.0) || !std::isfinite(s.duration))
        fail(Errc::InvalidScenario, "segment duration must be positive and finite");
      if (!std::isfinite(s.longitudinal_accel) || !std::isfinite(s.yaw_rate))
        fail(Errc::InvalidScenario, "segment dynamics must be finite");
      if (!(s.roughness_sigma >= 0.0) || !std::isfinite(s.roughness_sigma))
        fail(Errc::InvalidScenario, "roughness sigma must be non-negative");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
      fail(Errc::InvalidScenario, "sample rate must be positive");
    if (!(accel_noise_sigma >= 0.0) || !(gyro_noise_sigma >= 0.0) ||
        !std::isfinite(accel_noise_sigma) || !std::isfinite(gyro_noise_sigma))
      fail(Errc::InvalidScenario, "noise sigmas must be non-negative and finite");
    if (!gyro_bias.is_finite()) fail(Errc::InvalidScenario, "gyro bias must be finite");
    mounting.validate();
  }

  double total_duration() const {
    double total = 0.0;
    for (const Segment& s : segments) total += s.duration;
    return total;
  }
};

/// Everything the scenario implies exactly: the mounting, the noise-free
/// vehicle-frame signals (road roughness excluded) and the events the
/// default thresholds must produce.
struct GroundTruth {
  Rotation mounting;
  std::vector<ComfortEvent> true_events;
  SampleSeries ideal_vehicle;
};

struct GeneratedRide {
  SampleSeries device;
  GroundTruth truth;
};

namespace detail {

// splitmix64 (Steele, Lea, Flood 2014; public-domain constants) feeding a
// Box-Muller transform. Self-contained so generated rides depend on nothing
// but the seed.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : state_(seed) {}

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct ExceedInterval {
  double start = 0.0;
  double end = 0.0;
  double peak = 0.0;  // signed
};

// Intervals of a segment where the linear function f(t) = f0 + slope * (t -
// t0) satisfies f > level or f < -level, clipped to [t0, t1].
inline void linear_exceedances(double t0, double t1, double f0, double slope, double level,
                               std::vector<ExceedInterval>& out) {
  const auto clip_halfline = [&](bool above) {
    // Solve f(t) > level (above) or f(t) < -level.
    const double target = above ? level : -level;
    double lo = t0, hi = t1;
    const double f_t0 = f0;
    const double f_t1 = f0 + slope * (t1 - t0);
    const bool sat0 = above ? f_t0 > target : f_t0 < target;
    const bool sat1 = above ? f_t1 > target : f_t1 < target;
    if (!sat0 && !sat1) return;
    if (sat0 != sat1) {
      const double tc = t0 + (target - f0) / slope;
      if (sat0)
        hi = tc;
      else
        lo = tc;
    }
    if (hi <= lo) return;
    const double fl = f0 + slope * (lo - t0);
    const double fh = f0 + slope * (hi - t0);
    out.push_back({lo, hi, std::abs(fl) >= std::abs(fh) ? fl : fh});
  };
  clip_halfline(true);
  clip_halfline(false);
}

inline std::vector<ComfortEvent> coalesce_intervals(std::vector<ExceedInterval> intervals,
                                                    EventKind kind, double threshold,
                                                    double min_duration, double merge_gap) {
  std::sort(intervals.begin(), intervals.end(),
            [](const ExceedInterval& a, const ExceedInterval& b) { return a.start < b.start; });

  // Touching intervals are one connected exceedance region; join them before
  // any gating so segment boundaries inside a maneuver are invisible.
  std::vector<ExceedInterval> connected;
  for (const ExceedInterval& iv : intervals) {
    if (!connected.empty() && iv.start - connected.back().end < 1e-9) {
      connected.back().end = std::max(connected.back().end, iv.end);
      if (std::abs(iv.peak) > std::abs(connected.back().peak)) connected.back().peak = iv.peak;
    } else {
      connected.push_back(iv);
    }
  }

  std::erase_if(connected,
                [&](const ExceedInterval& iv) { return iv.end - iv.start < min_duration; });

  std::vector<ExceedInterval> merged;
  for (const ExceedInterval& iv : connected) {
    if (!merged.empty() && iv.start - merged.back().end < merge_gap) {
      merged.back().end = iv.end;
      if (std::abs(iv.peak) > std::abs(merged.back().peak)) merged.back().peak = iv.peak;
    } else {
      merged.push_back(iv);
    }
  }

  std::vector<ComfortEvent> events;
  for (const ExceedInterval& iv : merged)
    events.push_back({kind, iv.start, iv.end, iv.peak, threshold});
  return events;
}

}  // namespace detail

/// Renders a scenario into a device-frame sample stream plus its exact ground
/// truth. Deterministic for a fixed seed.
inline GeneratedRide generate_ride(const Scenario& sc) {
  sc.validate();
  const Thresholds th{};  // ground truth is defined against the defaults

  // Segment boundaries and entry speeds.
  const std::size_t n_seg = sc.segments.size();
  std::vector<double> begin_t(n_seg + 1, 0.0);
  std::vector<double> begin_v(n_seg + 1, 0.0);
  for (std::size_t j = 0; j < n_seg; ++j) {
    begin_t[j + 1] = begin_t[j] + sc.segments[j].duration;
    begin_v[j + 1] = begin_v[j] + sc.segments[j].longitudinal_accel * sc.segments[j].duration;
  }
  const double total = begin_t[n_seg];

  detail::GaussianRng rng(sc.seed);
  const Rotation to_device = sc.mounting.transposed();
  const double dt = 1.0 / sc.sample_rate;
  const auto n_samples = static_cast<std::size_t>(std::llround(total * sc.sample_rate));

  GeneratedRide ride;
  ride.device.frame = Frame::Device;
  ride.device.samples.reserve(n_samples);
  ride.truth.mounting = sc.mounting;
  ride.truth.ideal_vehicle.frame = Frame::Vehicle;
  ride.truth.ideal_vehicle.samples.reserve(n_samples);

  std::size_t seg = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) * dt;
    while (seg + 1 < n_seg && t >= begin_t[seg + 1]) ++seg;
    const Segment& s = sc.segments[seg];
    const double v = begin_v[seg] + s.longitudinal_accel * (t - begin_t[seg]);

    const Vec3 ideal_accel{s.longitudinal_accel, v * s.yaw_rate, kStandardGravity};
    const Vec3 ideal_gyro{0.0, 0.0, s.yaw_rate};
    ride.truth.ideal_vehicle.samples.push_back({t, ideal_accel, ideal_gyro, Frame::Vehicle});

    const double roughness = s.roughness_sigma * rng.gaussian();
    const Vec3 measured_accel{ideal_accel.x, ideal_accel.y, ideal_accel.z + roughness};
    const Vec3 accel_noise{sc.accel_noise_sigma * rng.gaussian(),
                           sc.accel_noise_sigma * rng.gaussian(),
                           sc.accel_noise_sigma * rng.gaussian()};
    const Vec3 gyro_noise{sc.gyro_noise_sigma * rng.gaussian(),
                          sc.gyro_noise_sigma * rng.gaussian(),
                          sc.gyro_noise_sigma * rng.gaussian()};

    ride.device.samples.push_back({t, to_device.apply(measured_accel) + accel_noise,
                                   to_device.apply(ideal_gyro) + gyro_noise + sc.gyro_bias,
                                   Frame::Device});
  }

  // True events from the ideal channels, per kind.
  std::vector<detail::ExceedInterval> fast, brake, corner;
  for (std::size_t j = 0; j < n_seg; ++j) {
    const Segment& s = sc.segments[j];
    const double t0 = begin_t[j], t1 = begin_t[j + 1];
    if (s.longitudinal_accel > th.accel_x)
      fast.push_back({t0, t1, s.longitudinal_accel});
    if (s.longitudinal_accel < -th.brake_x)
      brake.push_back({t0, t1, s.longitudinal_accel});
    if (s.yaw_rate != 0.0) {
      const double f0 = begin_v[j] * s.yaw_rate;
      const double slope = s.longitudinal_accel * s.yaw_rate;
      if (slope == 0.0) {
        if (std::abs(f0) > th.lateral_y) corner.push_back({t0, t1, f0});
      } else {
        detail::linear_exceedances(t0, t1, f0, slope, th.lateral_y, corner);
      }
    }
    // The ideal vertical channel is exactly gravity, so potholes never enter
    // the ground truth; roughness is noise by construction.
  }

  auto& events = ride.truth.true_events;
  for (auto& ev : detail::coalesce_intervals(std::move(fast), EventKind::FastAcceleration,
                                             th.accel_x, th.min_duration, th.merge_gap))
    events.push_back(ev);
  for (auto& ev : detail::coalesce_intervals(std::move(brake), EventKind::HardBraking, th.brake_x,
                                             th.min_duration, th.merge_gap))
    events.push_back(ev);
  for (auto& ev : detail::coalesce_intervals(std::move(corner), EventKind::AggressiveCornering,
                                             th.lateral_y, th.min_duration, th.merge_gap))
    events.push_back(ev);
  std::stable_sort(events.begin(), events.end(), [](const ComfortEvent& a, const ComfortEvent& b) {
    if (a.t_start != b.t_start) return a.t_start < b.t_start;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });

  return ride;
}

}  // namespace ridecomfort
