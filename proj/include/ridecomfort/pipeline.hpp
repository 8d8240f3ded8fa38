/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ridecomfort/alignment.hpp"
#include "ridecomfort/core.hpp"
#include "ridecomfort/detect.hpp"
#include "ridecomfort/error.hpp"
#include "ridecomfort/filter.hpp"

namespace ridecomfort {

/// Everything the processing pipeline can be tuned with. `gravity` overrides
/// the constant used both by the motion classifier and by gravity removal.
struct Config {
  FilterParams filter;
  Thresholds thresholds;
  AlignmentParams alignment;
  ScoreWeights weights;
  double gravity = kStandardGravity;
  double calibration_window_seconds = 2.0;
  // Largest mean rate the calibration will accept as a bias; anything above
  // is real rotation, not sensor offset.
  double calibration_max_bias = 0.2;  // rad/s

  void validate() const {
    if (!(filter.time_constant > 0.0) || !std::isfinite(filter.time_constant))
      fail(Errc::InvalidConfig, "time_constant must be positive and finite");
    if (!(gravity > 0.0) || !std::isfinite(gravity))
      fail(Errc::InvalidConfig, "gravity must be positive and finite");
    if (!(calibration_window_seconds >= 0.0))
      fail(Errc::InvalidConfig, "calibration window must be non-negative");
    try {
      thresholds.validate();
      weights.validate();
    } catch (const Error& e) {
      fail(Errc::InvalidConfig, e.what());
    }
    if (!(alignment.window_seconds > 0.0) || !(alignment.hop_seconds > 0.0))
      fail(Errc::InvalidConfig, "alignment windows must be positive");
    if (!(alignment.turn_rate_threshold > 0.0) || !(alignment.still_rate_threshold > 0.0) ||
        !(alignment.quasi_static_tolerance > 0.0) || !(alignment.accel_rate_ceiling > 0.0))
      fail(Errc::InvalidConfig, "classifier thresholds must be positive");
    if (alignment.min_window_samples < 2)
      fail(Errc::InvalidConfig, "alignment windows need at least 2 samples");
  }
};

struct PipelineResult {
  RideReport report;
  SampleSeries aligned;  // vehicle frame, filtered, gravity removed
  AlignmentEstimate alignment;
  GyroBias gyro_bias;
  bool bias_calibrated = false;
};

namespace detail {

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(stage) + ": " + e.what());
  }
}

}  // namespace detail

/// Full processing chain: calibrate from a still prefix when one exists, then
/// low-pass filter, estimate the mounting, re-express in the vehicle frame,
/// compensate gravity, detect events and score. Stage names are prefixed onto
/// propagated errors.
inline PipelineResult run_pipeline(const SampleSeries& series, const Config& cfg,
                                   std::vector<std::string>* warnings = nullptr) {
  cfg.validate();
  const auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  PipelineResult result;

  detail::run_stage("input", [&] {
    if (series.frame != Frame::Device)
      fail(Errc::WrongFrame, "pipeline input must be a device-frame series");
    series.validate();
    return 0;
  });

  // Gravity must flow into the classifier thresholds as well.
  AlignmentParams align_params = cfg.alignment;
  align_params.gravity = cfg.gravity;

  detail::run_stage("calibrate", [&] {
    SampleSeries prefix;
    prefix.frame = series.frame;
    const double cutoff = series.samples.front().t + cfg.calibration_window_seconds;
    for (const ImuSample& s : series.samples) {
      if (s.t > cutoff) break;
      prefix.samples.push_back(s);
    }
    // The stillness check must not be fooled by the very bias it is trying to
    // estimate, so the prefix is classified with its own mean rate subtracted.
    // A mean rate beyond any plausible sensor offset is real rotation.
    if (prefix.size() >=
        std::max<std::size_t>(align_params.min_window_samples, kMinCalibrationSamples)) {
      const GyroBias candidate = calibrate_gyro_bias(prefix);
      if (candidate.bias.norm() <= cfg.calibration_max_bias &&
          classify_motion(prefix, candidate, align_params) == MotionMode::Still) {
        result.gyro_bias = candidate;
        result.bias_calibrated = true;
      }
    }
    if (!result.bias_calibrated)
      warn("no still calibration prefix found; gyro bias assumed zero");
    return 0;
  });

  const SampleSeries filtered = detail::run_stage(
      "filter", [&] { return lowpass_series(series, cfg.filter); });

  result.alignment = detail::run_stage(
      "alignment", [&] { return estimate_alignment(filtered, result.gyro_bias, align_params); });

  SampleSeries vehicle = detail::run_stage("transform", [&] {
    return apply_rotation(result.alignment.rotation,
                          subtract_gyro_bias(filtered, result.gyro_bias));
  });

  result.aligned = detail::run_stage(
      "gravity", [&] { return remove_gravity(vehicle, cfg.gravity); });

  std::vector<ComfortEvent> events = detail::run_stage(
      "detect", [&] { return detect_events(result.aligned, cfg.thresholds); });

  result.report = detail::run_stage("score", [&] {
    return score_ride(std::move(events), result.aligned.duration(), cfg.weights);
  });

  return result;
}

}  // namespace ridecomfort
