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

#include "ridecomfort/error.hpp"

namespace ridecomfort {

inline constexpr double kStandardGravity = 9.80665;  // m/s^2
inline constexpr double kPi = 3.14159265358979323846;

/// 3-component vector. Units depend on context: m/s^2 for specific force,
/// rad/s for angular velocity.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_squared()); }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  Vec3 normalized() const {
    const double n = norm();
    if (n < 1e-300) fail(Errc::DegenerateInput, "cannot normalize a zero vector");
    return {x / n, y / n, z / n};
  }

  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(Vec3 v, double s) { return v *= s; }
inline Vec3 operator*(double s, Vec3 v) { return v *= s; }
inline Vec3 operator/(Vec3 v, double s) { return v *= (1.0 / s); }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
  const double d = dot(a, b) / (a.norm() * b.norm());
  return std::acos(std::clamp(d, -1.0, 1.0));
}

/// Coordinate frame a sample is expressed in. Device axes are fixed to the
/// phone body; vehicle axes are x forward, y left, z up.
enum class Frame { Device, Vehicle };

inline const char* frame_name(Frame f) {
  return f == Frame::Device ? "device" : "vehicle";
}

/// One timestamped 6-axis IMU reading.
struct ImuSample {
  double t = 0.0;      // seconds
  Vec3 accel;          // m/s^2 (specific force, gravity included)
  Vec3 gyro;           // rad/s
  Frame frame = Frame::Device;
};

/// A time-ordered run of samples sharing one frame.
struct SampleSeries {
  Frame frame = Frame::Device;
  std::vector<ImuSample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  double duration() const {
    return samples.size() < 2 ? 0.0 : samples.back().t - samples.front().t;
  }

  /// Throws unless timestamps are strictly increasing, every field is finite
  /// and every sample carries the series frame.
  void validate() const {
    if (samples.empty()) fail(Errc::EmptySeries, "series has no samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const ImuSample& s = samples[i];
      if (!std::isfinite(s.t) || !s.accel.is_finite() || !s.gyro.is_finite())
        fail(Errc::InvalidArgument, "non-finite sample at index " + std::to_string(i));
      if (s.frame != frame)
        fail(Errc::InvalidArgument, "sample frame differs from series frame at index " + std::to_string(i));
      if (i > 0 && !(s.t > samples[i - 1].t))
        fail(Errc::NonMonotoneTimestamps,
             "timestamp not strictly increasing at index " + std::to_string(i));
    }
  }
};

/// Proper rotation carried as an orthonormal 3x3 matrix with determinant +1.
class Rotation {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  Rotation() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

  static Rotation identity() { return Rotation(); }

  /// Builds from an explicit matrix; rejects anything that is not a proper
  /// rotation within 1e-9 per entry.
  static Rotation from_matrix(const Matrix& m) {
    Rotation r(m);
    r.validate();
    return r;
  }

  static Rotation about_x(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Rotation({{{1, 0, 0}, {0, c, -s}, {0, s, c}}});
  }

  static Rotation about_y(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Rotation({{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}});
  }

  static Rotation about_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Rotation({{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}});
  }

  /// Rodrigues construction. The axis need not be normalized but must be
  /// nonzero.
  static Rotation from_axis_angle(const Vec3& axis, double angle) {
    if (!axis.is_finite() || !std::isfinite(angle))
      fail(Errc::InvalidArgument, "axis-angle inputs must be finite");
    const double n = axis.norm();
    if (n < 1e-12) fail(Errc::InvalidArgument, "rotation axis is zero");
    const Vec3 u = axis / n;
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    return Rotation({{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
                      {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
                      {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}});
  }

  Vec3 apply(const Vec3& v) const {
    return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
            m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
            m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
  }

  Rotation transposed() const {
    Matrix t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i][j] = m_[j][i];
    return Rotation(t);
  }

  friend Rotation operator*(const Rotation& a, const Rotation& b) {
    Matrix p{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        p[i][j] = a.m_[i][0] * b.m_[0][j] + a.m_[i][1] * b.m_[1][j] + a.m_[i][2] * b.m_[2][j];
    return Rotation(p);
  }

  double at(int row, int col) const { return m_[row][col]; }
  const Matrix& matrix() const { return m_; }

  double determinant() const {
    return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
           m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
           m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
  }

  double max_orthonormality_error() const {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double g = m_[0][i] * m_[0][j] + m_[1][i] * m_[1][j] + m_[2][i] * m_[2][j];
        if (i == j) g -= 1.0;
        worst = std::max(worst, std::abs(g));
      }
    }
    return worst;
  }

  bool is_valid(double tolerance = 1e-9) const {
    return max_orthonormality_error() <= tolerance &&
           std::abs(determinant() - 1.0) <= tolerance;
  }

  void validate(double tolerance = 1e-9) const {
    if (max_orthonormality_error() > tolerance)
      fail(Errc::InvalidRotation, "matrix is not orthonormal");
    if (std::abs(determinant() - 1.0) > tolerance)
      fail(Errc::InvalidRotation, "matrix determinant is not +1");
  }

 private:
  explicit Rotation(const Matrix& m) : m_(m) {}
  Matrix m_;
};

/// Rotation angle of r, in [0, pi].
inline double rotation_angle(const Rotation& r) {
  const double trace = r.at(0, 0) + r.at(1, 1) + r.at(2, 2);
  return std::acos(std::clamp((trace - 1.0) * 0.5, -1.0, 1.0));
}

/// Angle of the relative rotation a * b^T; 0 iff a == b.
inline double angular_distance(const Rotation& a, const Rotation& b) {
  return rotation_angle(a * b.transposed());
}

/// Re-expresses a device-frame sample in the vehicle frame: both the
/// acceleration and angular-velocity vectors are rotated, timestamp kept.
inline ImuSample apply_rotation(const Rotation& r, const ImuSample& s) {
  r.validate();
  if (s.frame != Frame::Device)
    fail(Errc::WrongFrame, "apply_rotation expects a device-frame sample");
  return {s.t, r.apply(s.accel), r.apply(s.gyro), Frame::Vehicle};
}

inline SampleSeries apply_rotation(const Rotation& r, const SampleSeries& series) {
  r.validate();
  if (series.frame != Frame::Device)
    fail(Errc::WrongFrame, "apply_rotation expects a device-frame series");
  SampleSeries out;
  out.frame = Frame::Vehicle;
  out.samples.reserve(series.samples.size());
  for (const ImuSample& s : series.samples)
    out.samples.push_back({s.t, r.apply(s.accel), r.apply(s.gyro), Frame::Vehicle});
  return out;
}

/// Minimal rotation taking unit vector v onto +z: axis v x z, angle
/// acos(v . z). v = +z yields the identity; the antipodal v = -z has no
/// minimal axis and gets a fixed 180-degree rotation about x.
inline Rotation rotation_aligning_to_z(const Vec3& v) {
  if (!v.is_finite()) fail(Errc::DegenerateInput, "vector must be finite");
  if (std::abs(v.norm() - 1.0) > 1e-6)
    fail(Errc::DegenerateInput, "vector must have unit length within 1e-6");
  const double s = std::hypot(v.x, v.y);  // |v x z|
  if (s < 1e-12) {
    if (v.z > 0.0) return Rotation::identity();
    return Rotation::about_x(kPi);
  }
  const Vec3 axis{v.y / s, -v.x / s, 0.0};
  return Rotation::from_axis_angle(axis, std::atan2(s, v.z));
}

/// Full mounting rotation: heading correction about z applied after the
/// vertical alignment, i.e. Rz(-phi) * vertical.
inline Rotation compose_heading(const Rotation& vertical, double phi) {
  vertical.validate();
  if (!std::isfinite(phi)) fail(Errc::InvalidArgument, "heading angle must be finite");
  return Rotation::about_z(-phi) * vertical;
}

}  // namespace ridecomfort
