/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "ridecomfort/core.hpp"
#include "ridecomfort/error.hpp"

namespace ridecomfort {

/// How the smoothing factor is oriented.
///
/// TrackInput is the formulation this library defaults to: alpha = t/(t+dT),
/// which approaches 1 as the sample interval shrinks, so the output follows
/// the input closely at high rates. SmoothInput is the usual RC
/// discretization alpha = dT/(t+dT), which smooths harder at high rates.
enum class AlphaMode { TrackInput, SmoothInput };

struct FilterParams {
  double time_constant = 0.5;  // seconds
  AlphaMode alpha_mode = AlphaMode::TrackInput;
};

/// Carries the previous output between lowpass_step calls. A fresh state is
/// seeded by the first input it sees.
struct FilterState {
  Vec3 prev_out;
  bool initialized = false;
};

/// Smoothing factor t/(t+dT), strictly inside (0, 1).
inline double alpha(double time_constant, double dt) {
  if (!(time_constant > 0.0) || !std::isfinite(time_constant))
    fail(Errc::InvalidArgument, "time constant must be positive and finite");
  if (!(dt > 0.0) || !std::isfinite(dt))
    fail(Errc::InvalidArgument, "sample interval must be positive and finite");
  return time_constant / (time_constant + dt);
}

inline double alpha(double time_constant, double dt, AlphaMode mode) {
  const double a = alpha(time_constant, dt);
  return mode == AlphaMode::TrackInput ? a : 1.0 - a;
}

struct LowpassStep {
  Vec3 out;
  FilterState state;
};

/// One update of out = prev + a * (input - prev), per component. An
/// uninitialized state passes the input through and latches it.
inline LowpassStep lowpass_step(const FilterState& state, const Vec3& input, double a) {
  if (!(a > 0.0) || !(a < 1.0))
    fail(Errc::InvalidArgument, "smoothing factor must lie strictly in (0, 1)");
  if (!input.is_finite()) fail(Errc::InvalidArgument, "filter input must be finite");
  if (!state.initialized) return {input, {input, true}};
  const Vec3 out = state.prev_out + a * (input - state.prev_out);
  return {out, {out, true}};
}

/// Filters acceleration and angular velocity of a whole series. The factor is
/// recomputed per step from the actual timestamp gap, so irregular sampling
/// is handled; the first output equals the first input.
inline SampleSeries lowpass_series(const SampleSeries& series, const FilterParams& params = {}) {
  if (series.empty()) fail(Errc::EmptySeries, "cannot filter an empty series");
  series.validate();
  if (!(params.time_constant > 0.0) || !std::isfinite(params.time_constant))
    fail(Errc::InvalidArgument, "time constant must be positive and finite");

  SampleSeries out;
  out.frame = series.frame;
  out.samples.reserve(series.samples.size());

  FilterState accel_state;
  FilterState gyro_state;
  double prev_t = 0.0;
  for (const ImuSample& s : series.samples) {
    if (!accel_state.initialized) {
      accel_state = {s.accel, true};
      gyro_state = {s.gyro, true};
      out.samples.push_back({s.t, s.accel, s.gyro, series.frame});
    } else {
      const double a = alpha(params.time_constant, s.t - prev_t, params.alpha_mode);
      const LowpassStep fa = lowpass_step(accel_state, s.accel, a);
      const LowpassStep fg = lowpass_step(gyro_state, s.gyro, a);
      accel_state = fa.state;
      gyro_state = fg.state;
      out.samples.push_back({s.t, fa.out, fg.out, series.frame});
    }
    prev_t = s.t;
  }
  return out;
}

/// Constant angular-velocity offset estimated from a stationary window.
struct GyroBias {
  Vec3 bias;  // rad/s
};

inline constexpr std::size_t kMinCalibrationSamples = 50;

/// Per-axis mean of the gyro readings over a window the caller knows to be
/// stationary. Subtracting the result zeroes the window mean per axis.
inline GyroBias calibrate_gyro_bias(const SampleSeries& still_window) {
  if (still_window.size() < kMinCalibrationSamples)
    fail(Errc::InsufficientSamples,
         "gyro calibration needs at least " + std::to_string(kMinCalibrationSamples) +
             " samples, got " + std::to_string(still_window.size()));
  still_window.validate();
  Vec3 sum;
  for (const ImuSample& s : still_window.samples) sum += s.gyro;
  return {sum / static_cast<double>(still_window.size())};
}

inline SampleSeries subtract_gyro_bias(const SampleSeries& series, const GyroBias& bias) {
  if (!bias.bias.is_finite()) fail(Errc::InvalidArgument, "gyro bias must be finite");
  SampleSeries out = series;
  for (ImuSample& s : out.samples) s.gyro -= bias.bias;
  return out;
}

/// Removes standard gravity from the vertical channel. Only meaningful once
/// the series is in the vehicle frame, where gravity sits on +z alone.
inline SampleSeries remove_gravity(const SampleSeries& series, double gravity = kStandardGravity) {
  if (series.frame != Frame::Vehicle)
    fail(Errc::WrongFrame, "gravity removal requires a vehicle-frame series");
  if (!(gravity > 0.0) || !std::isfinite(gravity))
    fail(Errc::InvalidArgument, "gravity must be positive and finite");
  SampleSeries out = series;
  for (ImuSample& s : out.samples) s.accel.z -= gravity;
  return out;
}

}  // namespace ridecomfort
