/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ridecomfort/core.hpp"
#include "ridecomfort/error.hpp"

namespace ridecomfort {

enum class EventKind { FastAcceleration, HardBraking, AggressiveCornering, Pothole };

inline constexpr std::array<EventKind, 4> kAllEventKinds{
    EventKind::FastAcceleration, EventKind::HardBraking, EventKind::AggressiveCornering,
    EventKind::Pothole};

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::FastAcceleration: return "fast_acceleration";
    case EventKind::HardBraking: return "hard_braking";
    case EventKind::AggressiveCornering: return "aggressive_cornering";
    case EventKind::Pothole: return "pothole";
  }
  return "unknown";
}

/// Trigger levels on the vehicle-frame, filtered, gravity-compensated
/// channels. The pothole channel is experimental; see the README.
struct Thresholds {
  double accel_x = 5.0;     // m/s^2, forward acceleration
  double brake_x = 5.0;     // m/s^2, applied to -a_x
  double lateral_y = 0.75;  // m/s^2, either turn direction
  double pothole_z = 3.0;   // m/s^2, vertical after gravity removal
  double min_duration = 0.2;  // s, shorter episodes are discarded
  double merge_gap = 0.5;     // s, same-kind episodes closer than this merge

  void validate() const {
    if (!(accel_x > 0.0) || !(brake_x > 0.0) || !(lateral_y > 0.0) || !(pothole_z > 0.0))
      fail(Errc::InvalidArgument, "thresholds must be positive");
    if (!(min_duration >= 0.0) || !(merge_gap >= 0.0))
      fail(Errc::InvalidArgument, "durations must be non-negative");
  }
};

/// One detected threshold-crossing episode.
struct ComfortEvent {
  EventKind kind = EventKind::FastAcceleration;
  double t_start = 0.0;
  double t_end = 0.0;
  double peak = 0.0;       // signed extremal value of the triggering channel
  double threshold = 0.0;  // threshold in force when detected
};

struct ScoreWeights {
  double fast_acceleration = 5.0;
  double hard_braking = 5.0;
  double aggressive_cornering = 3.0;
  double pothole = 2.0;

  double of(EventKind k) const {
    switch (k) {
      case EventKind::FastAcceleration: return fast_acceleration;
      case EventKind::HardBraking: return hard_braking;
      case EventKind::AggressiveCornering: return aggressive_cornering;
      case EventKind::Pothole: return pothole;
    }
    return 0.0;
  }

  void validate() const {
    for (EventKind k : kAllEventKinds)
      if (!(of(k) >= 0.0) || !std::isfinite(of(k)))
        fail(Errc::InvalidArgument, "score weights must be non-negative and finite");
  }
};

/// Per-ride aggregate.
struct RideReport {
  double duration = 0.0;  // seconds
  std::array<std::size_t, 4> counts{};  // indexed by EventKind order
  std::vector<ComfortEvent> events;
  double score = 100.0;  // in [0, 100]

  std::size_t count(EventKind k) const { return counts[static_cast<std::size_t>(k)]; }
};

namespace detail {

struct Episode {
  std::size_t first = 0;  // sample index range [first, last]
  std::size_t last = 0;
};

template <typename Pred>
std::vector<Episode> scan_episodes(const std::vector<ImuSample>& samples, Pred crossed) {
  std::vector<Episode> episodes;
  bool open = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (crossed(samples[i])) {
      if (!open) {
        episodes.push_back({i, i});
        open = true;
      } else {
        episodes.back().last = i;
      }
    } else {
      open = false;
    }
  }
  return episodes;
}

}  // namespace detail

/// Scans each channel for threshold crossings. An episode opens at the first
/// sample past the threshold and closes when the channel recrosses; episodes
/// shorter than min_duration are discarded, then same-kind episodes closer
/// than merge_gap are merged. Output is sorted by start time.
inline std::vector<ComfortEvent> detect_events(const SampleSeries& series,
                                               const Thresholds& th = {}) {
  if (series.frame != Frame::Vehicle)
    fail(Errc::WrongFrame, "event detection requires a vehicle-frame series");
  th.validate();
  series.validate();
  const auto& samples = series.samples;

  std::vector<ComfortEvent> events;
  const auto emit = [&](EventKind kind, double threshold, auto crossed, auto channel) {
    std::vector<detail::Episode> eps = detail::scan_episodes(samples, crossed);

    std::erase_if(eps, [&](const detail::Episode& e) {
      return samples[e.last].t - samples[e.first].t < th.min_duration;
    });

    std::vector<detail::Episode> merged;
    for (const detail::Episode& e : eps) {
      if (!merged.empty() &&
          samples[e.first].t - samples[merged.back().last].t < th.merge_gap) {
        merged.back().last = e.last;
      } else {
        merged.push_back(e);
      }
    }

    for (const detail::Episode& e : merged) {
      double peak = channel(samples[e.first]);
      for (std::size_t i = e.first + 1; i <= e.last; ++i) {
        const double v = channel(samples[i]);
        if (std::abs(v) > std::abs(peak)) peak = v;
      }
      events.push_back({kind, samples[e.first].t, samples[e.last].t, peak, threshold});
    }
  };

  emit(EventKind::FastAcceleration, th.accel_x,
       [&](const ImuSample& s) { return s.accel.x > th.accel_x; },
       [](const ImuSample& s) { return s.accel.x; });
  emit(EventKind::HardBraking, th.brake_x,
       [&](const ImuSample& s) { return s.accel.x < -th.brake_x; },
       [](const ImuSample& s) { return s.accel.x; });
  emit(EventKind::AggressiveCornering, th.lateral_y,
       [&](const ImuSample& s) { return std::abs(s.accel.y) > th.lateral_y; },
       [](const ImuSample& s) { return s.accel.y; });
  emit(EventKind::Pothole, th.pothole_z,
       [&](const ImuSample& s) { return std::abs(s.accel.z) > th.pothole_z; },
       [](const ImuSample& s) { return s.accel.z; });

  std::stable_sort(events.begin(), events.end(), [](const ComfortEvent& a, const ComfortEvent& b) {
    if (a.t_start != b.t_start) return a.t_start < b.t_start;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return events;
}

/// Deterministic comfort score: 100 minus a fixed penalty per event, clamped
/// at zero.
inline RideReport score_ride(std::vector<ComfortEvent> events, double duration,
                             const ScoreWeights& weights = {}) {
  if (!(duration > 0.0) || !std::isfinite(duration))
    fail(Errc::InvalidDuration, "ride duration must be positive and finite");
  weights.validate();
  RideReport report;
  report.duration = duration;
  double penalty = 0.0;
  for (const ComfortEvent& e : events) {
    penalty += weights.of(e.kind);
    ++report.counts[static_cast<std::size_t>(e.kind)];
  }
  report.score = std::clamp(100.0 - penalty, 0.0, 100.0);
  report.events = std::move(events);
  return report;
}

}  // namespace ridecomfort
