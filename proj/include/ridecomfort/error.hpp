/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ridecomfort {

// Every failure the library reports, as a stable machine-readable code.
enum class Errc {
  InvalidArgument,
  InvalidRotation,
  WrongFrame,
  DegenerateInput,
  EmptySeries,
  NonMonotoneTimestamps,
  InsufficientSamples,
  NotTurning,
  NotQuasiStatic,
  LengthMismatch,
  DegenerateSpectrum,
  DegenerateHorizontal,
  InsufficientCoverage,
  InvalidDuration,
  InvalidScenario,
  InvalidConfig,
  MissingHeader,
  MalformedRow,
  EmptyInput,
  IoError,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::InvalidRotation: return "invalid-rotation";
    case Errc::WrongFrame: return "wrong-frame";
    case Errc::DegenerateInput: return "degenerate-input";
    case Errc::EmptySeries: return "empty-series";
    case Errc::NonMonotoneTimestamps: return "non-monotone-timestamp";
    case Errc::InsufficientSamples: return "insufficient-samples";
    case Errc::NotTurning: return "not-turning";
    case Errc::NotQuasiStatic: return "not-quasi-static";
    case Errc::LengthMismatch: return "length-mismatch";
    case Errc::DegenerateSpectrum: return "degenerate-spectrum";
    case Errc::DegenerateHorizontal: return "degenerate-horizontal";
    case Errc::InsufficientCoverage: return "insufficient-coverage";
    case Errc::InvalidDuration: return "invalid-duration";
    case Errc::InvalidScenario: return "invalid-scenario";
    case Errc::InvalidConfig: return "invalid-config";
    case Errc::MissingHeader: return "missing-header";
    case Errc::MalformedRow: return "malformed-row";
    case Errc::EmptyInput: return "empty-input";
    case Errc::IoError: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// "<errc-name>: <message>", for user-facing output.
  std::string describe() const { return std::string(errc_name(code_)) + ": " + what(); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ridecomfort
