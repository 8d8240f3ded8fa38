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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ridecomfort/core.hpp"
#include "ridecomfort/error.hpp"
#include "ridecomfort/filter.hpp"

namespace ridecomfort {

/// Coarse motion regime of a short window, decided from windowed statistics
/// of total angular velocity and total acceleration.
enum class MotionMode { Still, StraightConstantSpeed, Accelerating, Turning, Unknown };

inline const char* motion_mode_name(MotionMode m) {
  switch (m) {
    case MotionMode::Still: return "still";
    case MotionMode::StraightConstantSpeed: return "straight_constant_speed";
    case MotionMode::Accelerating: return "accelerating";
    case MotionMode::Turning: return "turning";
    case MotionMode::Unknown: return "unknown";
  }
  return "unknown";
}

struct AlignmentParams {
  double window_seconds = 2.0;
  double hop_seconds = 1.0;

  // Motion classifier thresholds.
  double turn_rate_threshold = 0.1;      // rad/s, mean total angular velocity
  double still_rate_threshold = 0.02;    // rad/s
  double quasi_static_tolerance = 0.15;  // m/s^2, mean | |a| - g |
  double accel_rate_ceiling = 0.05;      // rad/s, rotation allowed while "accelerating"

  double gravity = kStandardGravity;
  std::size_t min_window_samples = 20;

  // Coverage requirements for a full-ride estimate.
  double min_duration_seconds = 10.0;
  double min_sample_rate_hz = 20.0;

  // Outlier rejection when fusing per-window vertical axes: windows deviating
  // from the preliminary mean by more than max(floor, factor * median
  // deviation) are dropped before the final average.
  double vertical_trim_floor_rad = 0.026;  // ~1.5 degrees
  double vertical_trim_median_factor = 4.0;

  // The heading eigenvector is only trusted when the top horizontal
  // eigenvalue dominates the other by this factor; an isotropic spectrum
  // means the pooled data carries no direction.
  double heading_min_anisotropy = 3.0;
};

/// Symmetric 3x3 matrix of pairwise sample covariances.
struct CovarianceMatrix {
  std::array<std::array<double, 3>, 3> c{};

  static CovarianceMatrix from_entries(const std::array<std::array<double, 3>, 3>& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(m[i][j] - m[j][i]) > 1e-12)
          fail(Errc::InvalidArgument, "covariance matrix must be symmetric");
    return {m};
  }

  double at(int row, int col) const { return c[row][col]; }
  double trace() const { return c[0][0] + c[1][1] + c[2][2]; }
};

/// Result of the full mounting estimation.
struct AlignmentEstimate {
  Vec3 vertical_axis;        // vehicle "up" expressed in device axes, unit
  double heading_phi = 0.0;  // radians in (-pi, pi]
  Rotation rotation;         // device -> vehicle
  MotionMode mode_used = MotionMode::Unknown;  // vertical-method source
  std::size_t sample_count = 0;
  double residual = 0.0;     // mean angular spread of per-window vertical axes
};

inline double total_angular_velocity(const Vec3& w) {
  if (!w.is_finite()) fail(Errc::InvalidArgument, "angular velocity must be finite");
  return w.norm();
}

inline double total_acceleration(const Vec3& a) {
  if (!a.is_finite()) fail(Errc::InvalidArgument, "acceleration must be finite");
  return a.norm();
}

inline double combined_horizontal_accel(double ax, double ay) {
  if (!std::isfinite(ax) || !std::isfinite(ay))
    fail(Errc::InvalidArgument, "inputs must be finite");
  return std::hypot(ax, ay);
}

namespace detail {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct WindowStats {
  double mean_rate = 0.0;        // mean |gyro|
  double mean_accel_dev = 0.0;   // mean | |accel| - g |
};

inline WindowStats window_stats(std::span<const ImuSample> window, const Vec3& bias, double gravity) {
  CompensatedSum rate, dev;
  for (const ImuSample& s : window) {
    rate.add((s.gyro - bias).norm());
    dev.add(std::abs(s.accel.norm() - gravity));
  }
  const double n = static_cast<double>(window.size());
  return {rate.value() / n, dev.value() / n};
}

}  // namespace detail

/// Decides which alignment method a window supports. The cascade favors
/// turning (rotation dominates), then the quasi-static regimes where the
/// accelerometer sees gravity alone, then longitudinal maneuvers.
inline MotionMode classify_motion(std::span<const ImuSample> window, const GyroBias& bias,
                                  const AlignmentParams& p = {}) {
  if (window.size() < p.min_window_samples)
    fail(Errc::InsufficientSamples, "classification window needs at least " +
                                        std::to_string(p.min_window_samples) + " samples");
  const detail::WindowStats st = detail::window_stats(window, bias.bias, p.gravity);
  if (st.mean_rate > p.turn_rate_threshold) return MotionMode::Turning;
  if (st.mean_accel_dev < p.quasi_static_tolerance) {
    if (st.mean_rate < p.still_rate_threshold) return MotionMode::Still;
    return MotionMode::StraightConstantSpeed;
  }
  if (st.mean_rate < p.accel_rate_ceiling) return MotionMode::Accelerating;
  return MotionMode::Unknown;
}

inline MotionMode classify_motion(const SampleSeries& window, const GyroBias& bias,
                                  const AlignmentParams& p = {}) {
  if (window.frame != Frame::Device)
    fail(Errc::WrongFrame, "motion classification expects a device-frame window");
  return classify_motion(std::span<const ImuSample>(window.samples), bias, p);
}

/// Vertical axis from a turning window: the normalized per-axis mean angular
/// velocity. During a turn, rotation happens about the vehicle's vertical, so
/// the mean rate vector points along it (sign follows the turn direction and
/// is resolved by the caller against a gravity reference).
inline Vec3 vertical_axis_from_gyro(const SampleSeries& window, const AlignmentParams& p = {}) {
  if (window.frame != Frame::Device)
    fail(Errc::WrongFrame, "vertical-axis estimation expects a device-frame window");
  if (window.size() < p.min_window_samples)
    fail(Errc::InsufficientSamples, "vertical-axis window needs at least " +
                                        std::to_string(p.min_window_samples) + " samples");
  detail::CompensatedSum sx, sy, sz, rate;
  for (const ImuSample& s : window.samples) {
    sx.add(s.gyro.x);
    sy.add(s.gyro.y);
    sz.add(s.gyro.z);
    rate.add(s.gyro.norm());
  }
  const double n = static_cast<double>(window.size());
  if (rate.value() / n <= p.turn_rate_threshold)
    fail(Errc::NotTurning, "mean total angular velocity below the turn threshold");
  const Vec3 mean{sx.value() / n, sy.value() / n, sz.value() / n};
  if (mean.norm() < 1e-6)
    fail(Errc::DegenerateInput, "mean angular velocity too small to define an axis");
  return mean.normalized();
}

/// Vertical axis from a quasi-static window: the normalized per-axis mean
/// acceleration. Valid only while gravity is the dominant force, which the
/// magnitude gate enforces.
inline Vec3 vertical_axis_from_gravity(const SampleSeries& window, const AlignmentParams& p = {}) {
  if (window.frame != Frame::Device)
    fail(Errc::WrongFrame, "vertical-axis estimation expects a device-frame window");
  if (window.size() < p.min_window_samples)
    fail(Errc::InsufficientSamples, "vertical-axis window needs at least " +
                                        std::to_string(p.min_window_samples) + " samples");
  detail::CompensatedSum sx, sy, sz;
  for (const ImuSample& s : window.samples) {
    sx.add(s.accel.x);
    sy.add(s.accel.y);
    sz.add(s.accel.z);
  }
  const double n = static_cast<double>(window.size());
  const Vec3 mean{sx.value() / n, sy.value() / n, sz.value() / n};
  const double magnitude = mean.norm();
  if (magnitude < 0.7 * p.gravity || magnitude > 1.3 * p.gravity)
    fail(Errc::NotQuasiStatic, "mean acceleration magnitude " + std::to_string(magnitude) +
                                   " m/s^2 is incompatible with gravity alone");
  return mean / magnitude;
}

/// Sample covariance with the n-1 denominator, two-pass with compensated
/// accumulation.
inline double covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    fail(Errc::LengthMismatch, "series lengths differ: " + std::to_string(xs.size()) + " vs " +
                                   std::to_string(ys.size()));
  const std::size_t n = xs.size();
  if (n < 2) fail(Errc::InsufficientSamples, "covariance needs at least 2 samples");
  detail::CompensatedSum mx, my;
  for (std::size_t i = 0; i < n; ++i) {
    mx.add(xs[i]);
    my.add(ys[i]);
  }
  const double xbar = mx.value() / static_cast<double>(n);
  const double ybar = my.value() / static_cast<double>(n);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add((xs[i] - xbar) * (ys[i] - ybar));
  return acc.value() / static_cast<double>(n - 1);
}

inline CovarianceMatrix covariance_matrix(std::span<const double> xs, std::span<const double> ys,
                                          std::span<const double> zs) {
  if (xs.size() != ys.size() || ys.size() != zs.size())
    fail(Errc::LengthMismatch, "covariance matrix needs equally long series");
  CovarianceMatrix m;
  const std::array<std::span<const double>, 3> s{xs, ys, zs};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double c = covariance(s[i], s[j]);
      m.c[i][j] = c;
      m.c[j][i] = c;
    }
  }
  return m;
}

struct PrincipalComponent {
  Vec3 direction;     // unit eigenvector of the largest eigenvalue
  double eigenvalue;  // the largest eigenvalue
};

namespace detail {

// Cyclic Jacobi diagonalization for a symmetric 3x3 matrix. Eigenvalues land
// in eig[], matching eigenvectors in the columns of vec[][].
inline void jacobi_eigen3(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& eig,
                          std::array<std::array<double, 3>, 3>& vec) {
  vec = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-300) break;
    for (int pp = 0; pp < 3; ++pp) {
      for (int q = pp + 1; q < 3; ++q) {
        if (a[pp][q] == 0.0) continue;
        const double theta = 0.5 * (a[q][q] - a[pp][pp]) / a[pp][q];
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * a[pp][q];
        a[pp][pp] -= h;
        a[q][q] += h;
        a[pp][q] = 0.0;
        a[q][pp] = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (k != pp && k != q) {
            const double akp = a[k][pp], akq = a[k][q];
            a[k][pp] = akp - s * (akq + tau * akp);
            a[pp][k] = a[k][pp];
            a[k][q] = akq + s * (akp - tau * akq);
            a[q][k] = a[k][q];
          }
          const double vkp = vec[k][pp], vkq = vec[k][q];
          vec[k][pp] = vkp - s * (vkq + tau * vkp);
          vec[k][q] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  eig = {a[0][0], a[1][1], a[2][2]};
}

}  // namespace detail

/// Unit eigenvector of the largest eigenvalue, plus that eigenvalue. The sign
/// is canonicalized so the first component of meaningful magnitude is
/// positive. Rejects spectra whose top two eigenvalues coincide, since the
/// direction is then arbitrary.
inline PrincipalComponent principal_eigenvector(const CovarianceMatrix& c) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(c.c[i][j])) fail(Errc::InvalidArgument, "covariance entries must be finite");
  std::array<double, 3> eig;
  std::array<std::array<double, 3>, 3> vec;
  detail::jacobi_eigen3(c.c, eig, vec);

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return eig[a] > eig[b]; });
  const double l1 = eig[order[0]];
  const double l2 = eig[order[1]];
  if (l1 - l2 <= 1e-9 * std::max(c.trace(), 0.0))
    fail(Errc::DegenerateSpectrum, "top two eigenvalues coincide; direction undefined");

  Vec3 m{vec[0][order[0]], vec[1][order[0]], vec[2][order[0]]};
  m = m.normalized();
  const double lead = std::abs(m.x) > 1e-9 ? m.x : (std::abs(m.y) > 1e-9 ? m.y : m.z);
  if (lead < 0.0) m = -m;
  return {m, l1};
}

/// Heading of the dominant horizontal direction, atan2(m2, m1) in (-pi, pi].
inline double heading_angle(const Vec3& m) {
  if (!m.is_finite()) fail(Errc::InvalidArgument, "eigenvector must be finite");
  if (std::hypot(m.x, m.y) <= 1e-6)
    fail(Errc::DegenerateHorizontal,
         "horizontal projection too small; upstream alignment produced a vertical direction");
  double phi = std::atan2(m.y, m.x);
  if (phi <= -kPi) phi = kPi;
  return phi;
}

namespace detail {

inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

struct Window {
  std::size_t begin = 0;  // sample index range [begin, end)
  std::size_t end = 0;
  MotionMode mode = MotionMode::Unknown;
};

inline std::vector<Window> classify_windows(const SampleSeries& series, const AlignmentParams& p) {
  std::vector<Window> windows;
  const auto& samples = series.samples;
  const double t0 = samples.front().t;
  const double t_end = samples.back().t;
  std::size_t begin = 0;
  for (double start = t0; start + p.window_seconds <= t_end + 1e-9; start += p.hop_seconds) {
    while (begin < samples.size() && samples[begin].t < start) ++begin;
    std::size_t end = begin;
    const double stop = start + p.window_seconds;
    while (end < samples.size() && samples[end].t < stop) ++end;
    if (end - begin >= p.min_window_samples) {
      Window w{begin, end, MotionMode::Unknown};
      w.mode = classify_motion(std::span<const ImuSample>(&samples[begin], end - begin),
                               GyroBias{}, p);
      windows.push_back(w);
    }
    if (end == samples.size()) break;
  }
  return windows;
}

inline SampleSeries slice(const SampleSeries& series, const Window& w) {
  SampleSeries out;
  out.frame = series.frame;
  out.samples.assign(series.samples.begin() + static_cast<std::ptrdiff_t>(w.begin),
                     series.samples.begin() + static_cast<std::ptrdiff_t>(w.end));
  return out;
}

inline Vec3 normalized_mean_direction(const std::vector<Vec3>& axes) {
  Vec3 sum;
  for (const Vec3& a : axes) sum += a;
  if (sum.norm() < 1e-12)
    fail(Errc::InsufficientCoverage, "per-window vertical estimates cancel out");
  return sum.normalized();
}

}  // namespace detail

/// Estimates the full device-to-vehicle mounting rotation from one ride.
///
/// Vertical step: windows are classified and each turning or quasi-static
/// window yields a candidate up-axis (rate method or gravity method). Axes
/// from turning windows are sign-flipped to agree with the gravity direction.
/// Candidates are fused by a trimmed normalized mean; windows straddling a
/// maneuver onset can slip through the classifier with a tilted gravity
/// estimate, and the trim pass drops them.
///
/// Horizontal step: samples from maneuver windows are rotated by the vertical
/// alignment, and the principal direction of their horizontal covariance
/// gives the heading. Acceleration windows are preferred (the eigenvector is
/// the forward axis, sign fixed by requiring positive mean projection);
/// otherwise turning windows are used (the eigenvector is the lateral axis,
/// sign fixed by correlation with the yaw rate, then shifted a quarter turn).
inline AlignmentEstimate estimate_alignment(const SampleSeries& series, const GyroBias& bias,
                                            const AlignmentParams& p = {}) {
  if (series.frame != Frame::Device)
    fail(Errc::WrongFrame, "alignment expects a device-frame series");
  series.validate();
  if (!bias.bias.is_finite()) fail(Errc::InvalidArgument, "gyro bias must be finite");

  const double duration = series.duration();
  if (duration < p.min_duration_seconds)
    fail(Errc::InsufficientCoverage,
         "ride too short: " + std::to_string(duration) + " s of data, need " +
             std::to_string(p.min_duration_seconds));
  const double rate = duration > 0.0 ? static_cast<double>(series.size() - 1) / duration : 0.0;
  if (rate < p.min_sample_rate_hz)
    fail(Errc::InsufficientCoverage, "sample rate " + std::to_string(rate) + " Hz below minimum " +
                                         std::to_string(p.min_sample_rate_hz));

  const SampleSeries corrected = subtract_gyro_bias(series, bias);
  const std::vector<detail::Window> windows = detail::classify_windows(corrected, p);

  // Gravity reference for resolving the turn-axis sign: the ride-long mean
  // acceleration is dominated by gravity and always points toward vehicle up.
  Vec3 accel_mean;
  for (const ImuSample& s : corrected.samples) accel_mean += s.accel;
  accel_mean = accel_mean / static_cast<double>(corrected.size());

  std::vector<Vec3> axes;
  std::vector<MotionMode> axis_modes;
  std::vector<const detail::Window*> axis_windows;
  for (const detail::Window& w : windows) {
    try {
      if (w.mode == MotionMode::Turning) {
        Vec3 axis = vertical_axis_from_gyro(detail::slice(corrected, w), p);
        if (accel_mean.norm() > 1e-9 && dot(axis, accel_mean) < 0.0) axis = -axis;
        axes.push_back(axis);
      } else if (w.mode == MotionMode::Still || w.mode == MotionMode::StraightConstantSpeed) {
        axes.push_back(vertical_axis_from_gravity(detail::slice(corrected, w), p));
      } else {
        continue;
      }
      axis_modes.push_back(w.mode);
      axis_windows.push_back(&w);
    } catch (const Error&) {
      // A window that fails its method's validity gate simply contributes
      // nothing; coverage is checked on what remains.
    }
  }
  if (axes.empty())
    fail(Errc::InsufficientCoverage, "no window supports vertical alignment");

  const Vec3 preliminary = detail::normalized_mean_direction(axes);
  std::vector<double> deviations(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i)
    deviations[i] = angle_between(axes[i], preliminary);
  std::vector<double> sorted = deviations;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                   sorted.end());
  const double median_dev = sorted[sorted.size() / 2];
  const double cut =
      std::max(p.vertical_trim_floor_rad, p.vertical_trim_median_factor * median_dev);

  std::vector<Vec3> kept;
  std::size_t kept_turning = 0, kept_still = 0, kept_straight = 0;
  std::size_t vertical_samples = 0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (deviations[i] > cut) continue;
    kept.push_back(axes[i]);
    vertical_samples += axis_windows[i]->end - axis_windows[i]->begin;
    if (axis_modes[i] == MotionMode::Turning) ++kept_turning;
    else if (axis_modes[i] == MotionMode::Still) ++kept_still;
    else ++kept_straight;
  }
  const Vec3 vertical_axis = detail::normalized_mean_direction(kept);
  double residual = 0.0;
  for (const Vec3& a : kept) residual += angle_between(a, vertical_axis);
  residual /= static_cast<double>(kept.size());

  const Rotation vertical_rotation = rotation_aligning_to_z(vertical_axis);

  // Horizontal step. The covariance only carries a heading when the pooled
  // data contrasts maneuver stretches against quiet ones: samples taken
  // solely inside a constant maneuver differ by nothing but sensor noise, and
  // their covariance is isotropic. So the maneuver windows that define the
  // route are pooled together with the quasi-static windows, while turning
  // windows stay out of the acceleration route (their lateral variance would
  // tilt the eigenvector).
  const auto pool_samples = [&](std::initializer_list<MotionMode> wanted) {
    std::vector<char> mask(corrected.size(), 0);
    for (const detail::Window& w : windows)
      for (MotionMode m : wanted)
        if (w.mode == m)
          for (std::size_t i = w.begin; i < w.end; ++i) mask[i] = 1;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) idx.push_back(i);
    return idx;
  };

  const auto heading_from = [&](MotionMode source, double& phi_out) {
    const std::vector<std::size_t> sign_idx = pool_samples({source});
    if (sign_idx.size() < p.min_window_samples) return false;
    const std::vector<std::size_t> idx =
        pool_samples({source, MotionMode::Still, MotionMode::StraightConstantSpeed});

    std::vector<double> hx(idx.size()), hy(idx.size()), hz(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const Vec3 h = vertical_rotation.apply(corrected.samples[idx[k]].accel);
      hx[k] = h.x;
      hy[k] = h.y;
      hz[k] = h.z;
    }
    CovarianceMatrix full = covariance_matrix(hx, hy, hz);
    CovarianceMatrix horizontal{};
    horizontal.c[0][0] = full.c[0][0];
    horizontal.c[0][1] = full.c[0][1];
    horizontal.c[1][0] = full.c[1][0];
    horizontal.c[1][1] = full.c[1][1];
    const PrincipalComponent pc = principal_eigenvector(horizontal);
    const double second = horizontal.trace() - pc.eigenvalue;
    if (pc.eigenvalue < p.heading_min_anisotropy * second) return false;
    Vec3 m = pc.direction;

    if (source == MotionMode::Accelerating) {
      double proj = 0.0;
      for (std::size_t i : sign_idx) {
        const Vec3 h = vertical_rotation.apply(corrected.samples[i].accel);
        proj += h.x * m.x + h.y * m.y;
      }
      if (proj < 0.0) m = -m;
      phi_out = heading_angle(m);
    } else {
      double corr = 0.0;
      for (std::size_t i : sign_idx) {
        const Vec3 h = vertical_rotation.apply(corrected.samples[i].accel);
        const Vec3 w = vertical_rotation.apply(corrected.samples[i].gyro);
        corr += (h.x * m.x + h.y * m.y) * w.z;
      }
      if (corr < 0.0) m = -m;
      // m is the lateral (left) axis; forward sits a quarter turn clockwise.
      phi_out = detail::wrap_angle(heading_angle(m) - kPi / 2.0);
    }
    return true;
  };

  double phi = 0.0;
  bool have_heading = false;
  std::string heading_failure;
  for (const MotionMode source : {MotionMode::Accelerating, MotionMode::Turning}) {
    try {
      if (heading_from(source, phi)) {
        have_heading = true;
        break;
      }
    } catch (const Error& e) {
      heading_failure = std::string(" (") + motion_mode_name(source) + " windows: " + e.what() + ")";
    }
  }
  if (!have_heading)
    fail(Errc::InsufficientCoverage, "no window supports horizontal alignment" + heading_failure);

  AlignmentEstimate est;
  est.vertical_axis = vertical_axis;
  est.heading_phi = phi;
  est.rotation = compose_heading(vertical_rotation, phi);
  est.residual = residual;
  est.sample_count = vertical_samples;
  if (kept_turning >= kept_still + kept_straight)
    est.mode_used = MotionMode::Turning;
  else if (kept_still >= kept_straight)
    est.mode_used = MotionMode::Still;
  else
    est.mode_used = MotionMode::StraightConstantSpeed;
  return est;
}

}  // namespace ridecomfort
