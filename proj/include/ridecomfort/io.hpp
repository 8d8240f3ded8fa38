/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ridecomfort/alignment.hpp"
#include "ridecomfort/core.hpp"
#include "ridecomfort/detect.hpp"
#include "ridecomfort/error.hpp"
#include "ridecomfort/pipeline.hpp"
#include "ridecomfort/synth.hpp"

namespace ridecomfort {

inline constexpr std::string_view kInputHeader = "t_s,ax,ay,az,gx,gy,gz";
inline constexpr std::string_view kPlotHeader = "t_s,ax,ay,az";

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool parse_double(std::string_view field, double& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Shortest text that reparses to the identical double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Reads the CSV log format: a fixed header then one row per sample, SI
/// units, strictly increasing timestamps. Rows are reported with their line
/// number on failure.
inline SampleSeries parse_input(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(Errc::EmptyInput, "input contains no data");
  if (detail::strip_cr(line) != kInputHeader)
    fail(Errc::MissingHeader, "first line must be exactly '" + std::string(kInputHeader) + "'");

  SampleSeries series;
  series.frame = Frame::Device;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = detail::strip_cr(line);
    if (row.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
      fail(Errc::MalformedRow, "empty row at line " + std::to_string(line_no));
    }

    double fields[7];
    std::string_view rest = row;
    for (int f = 0; f < 7; ++f) {
      const std::size_t comma = rest.find(',');
      const std::string_view cell = f < 6 ? rest.substr(0, comma) : rest;
      if ((f < 6 && comma == std::string_view::npos) || (f == 6 && comma != std::string_view::npos) ||
          !detail::parse_double(cell, fields[f]))
        fail(Errc::MalformedRow, "expected 7 numeric fields at line " + std::to_string(line_no));
      if (f < 6) rest.remove_prefix(comma + 1);
    }

    if (!series.samples.empty() && !(fields[0] > series.samples.back().t))
      fail(Errc::NonMonotoneTimestamps,
           "timestamp does not increase at line " + std::to_string(line_no));
    series.samples.push_back({fields[0],
                              {fields[1], fields[2], fields[3]},
                              {fields[4], fields[5], fields[6]},
                              Frame::Device});
  }
  if (series.samples.empty()) fail(Errc::EmptyInput, "input contains no data rows");
  return series;
}

inline SampleSeries parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open input file: " + path);
  return parse_input(in);
}

inline void write_series_csv(std::ostream& out, const SampleSeries& series) {
  out << kInputHeader << '\n';
  for (const ImuSample& s : series.samples) {
    out << detail::format_double(s.t) << ',' << detail::format_double(s.accel.x) << ','
        << detail::format_double(s.accel.y) << ',' << detail::format_double(s.accel.z) << ','
        << detail::format_double(s.gyro.x) << ',' << detail::format_double(s.gyro.y) << ','
        << detail::format_double(s.gyro.z) << '\n';
  }
}

/// Plot-ready vehicle-frame acceleration (post gravity removal).
inline void write_plot_csv(std::ostream& out, const SampleSeries& series) {
  out << kPlotHeader << '\n';
  for (const ImuSample& s : series.samples) {
    out << detail::format_double(s.t) << ',' << detail::format_double(s.accel.x) << ','
        << detail::format_double(s.accel.y) << ',' << detail::format_double(s.accel.z) << '\n';
  }
}

inline nlohmann::ordered_json event_to_json(const ComfortEvent& e) {
  return nlohmann::ordered_json{{"kind", event_kind_name(e.kind)},
                                {"t_start", e.t_start},
                                {"t_end", e.t_end},
                                {"peak", e.peak},
                                {"threshold", e.threshold}};
}

/// Report document. Key order is part of the format so byte-level regression
/// tests stay meaningful.
inline nlohmann::ordered_json report_to_json(const RideReport& report,
                                             const AlignmentEstimate& alignment) {
  nlohmann::ordered_json counts;
  for (EventKind k : kAllEventKinds) counts[event_kind_name(k)] = report.count(k);

  nlohmann::ordered_json doc;
  doc["duration_s"] = report.duration;
  doc["score"] = report.score;
  doc["counts"] = counts;
  doc["alignment"] = nlohmann::ordered_json{
      {"vertical_axis",
       {alignment.vertical_axis.x, alignment.vertical_axis.y, alignment.vertical_axis.z}},
      {"heading_rad", alignment.heading_phi},
      {"residual_rad", alignment.residual},
      {"mode_used", motion_mode_name(alignment.mode_used)}};
  doc["events"] = nlohmann::ordered_json::array();
  for (const ComfortEvent& e : report.events) doc["events"].push_back(event_to_json(e));
  return doc;
}

inline std::string report_json_text(const RideReport& report, const AlignmentEstimate& alignment) {
  return report_to_json(report, alignment).dump(2) + "\n";
}

/// One event object per line.
inline void write_events_jsonl(std::ostream& out, const std::vector<ComfortEvent>& events) {
  for (const ComfortEvent& e : events) out << event_to_json(e).dump() << '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open for writing: " + path);
  out << text;
  if (!out) fail(Errc::IoError, "write failed: " + path);
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> known,
                                Errc code, const char* what) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (const char* k : known)
      if (key == k) found = true;
    if (!found) fail(code, std::string(what) + ": unknown key '" + key + "'");
  }
}

inline double json_number(const nlohmann::json& v, Errc code, const char* context) {
  if (!v.is_number()) fail(code, std::string(context) + " must be a number");
  return v.get<double>();
}

inline Vec3 json_vec3(const nlohmann::json& v, Errc code, const char* context) {
  if (!v.is_array() || v.size() != 3)
    fail(code, std::string(context) + " must be an array of 3 numbers");
  return {json_number(v[0], code, context), json_number(v[1], code, context),
          json_number(v[2], code, context)};
}

inline Rotation json_rotation(const nlohmann::json& v, Errc code, const char* context) {
  if (!v.is_array() || v.size() != 3)
    fail(code, std::string(context) + " must be a 3x3 matrix (array of 3 rows)");
  Rotation::Matrix m;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_array() || v[i].size() != 3)
      fail(code, std::string(context) + " rows must hold 3 numbers");
    for (int j = 0; j < 3; ++j) m[i][j] = json_number(v[i][j], code, context);
  }
  try {
    return Rotation::from_matrix(m);
  } catch (const Error& e) {
    fail(code, std::string(context) + ": " + e.what());
  }
}

inline nlohmann::json parse_json_document(const std::string& text, Errc code, const char* what) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(code, std::string(what) + " is not valid JSON");
  if (!doc.is_object()) fail(code, std::string(what) + " must be a JSON object");
  return doc;
}

}  // namespace detail

/// Scenario document: sample_rate, seed, noise sigmas, gyro_bias, segments,
/// and the mounting either as a 3x3 matrix ("mounting") or as roll/pitch/yaw
/// degrees ("mounting_euler_deg"). Unknown keys are rejected.
inline Scenario parse_scenario_json(const std::string& text) {
  constexpr Errc code = Errc::InvalidScenario;
  const nlohmann::json doc = detail::parse_json_document(text, code, "scenario");
  detail::reject_unknown_keys(doc,
                              {"sample_rate", "seed", "accel_noise_sigma", "gyro_noise_sigma",
                               "gyro_bias", "mounting", "mounting_euler_deg", "segments"},
                              code, "scenario");

  Scenario sc;
  if (doc.contains("sample_rate"))
    sc.sample_rate = detail::json_number(doc["sample_rate"], code, "sample_rate");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail(code, "seed must be a non-negative integer");
    sc.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("accel_noise_sigma"))
    sc.accel_noise_sigma = detail::json_number(doc["accel_noise_sigma"], code, "accel_noise_sigma");
  if (doc.contains("gyro_noise_sigma"))
    sc.gyro_noise_sigma = detail::json_number(doc["gyro_noise_sigma"], code, "gyro_noise_sigma");
  if (doc.contains("gyro_bias")) sc.gyro_bias = detail::json_vec3(doc["gyro_bias"], code, "gyro_bias");

  if (doc.contains("mounting") && doc.contains("mounting_euler_deg"))
    fail(code, "give either 'mounting' or 'mounting_euler_deg', not both");
  if (doc.contains("mounting"))
    sc.mounting = detail::json_rotation(doc["mounting"], code, "mounting");
  if (doc.contains("mounting_euler_deg")) {
    const Vec3 rpy = detail::json_vec3(doc["mounting_euler_deg"], code, "mounting_euler_deg");
    const double d2r = kPi / 180.0;
    sc.mounting = Rotation::about_z(rpy.z * d2r) * Rotation::about_y(rpy.y * d2r) *
                  Rotation::about_x(rpy.x * d2r);
  }

  if (!doc.contains("segments") || !doc["segments"].is_array())
    fail(code, "scenario requires a 'segments' array");
  for (const auto& js : doc["segments"]) {
    if (!js.is_object()) fail(code, "each segment must be an object");
    detail::reject_unknown_keys(
        js, {"duration", "longitudinal_accel", "yaw_rate", "roughness_sigma"}, code, "segment");
    Segment seg;
    if (!js.contains("duration")) fail(code, "each segment requires a duration");
    seg.duration = detail::json_number(js["duration"], code, "segment duration");
    if (js.contains("longitudinal_accel"))
      seg.longitudinal_accel = detail::json_number(js["longitudinal_accel"], code, "longitudinal_accel");
    if (js.contains("yaw_rate")) seg.yaw_rate = detail::json_number(js["yaw_rate"], code, "yaw_rate");
    if (js.contains("roughness_sigma"))
      seg.roughness_sigma = detail::json_number(js["roughness_sigma"], code, "roughness_sigma");
    sc.segments.push_back(seg);
  }

  sc.validate();
  return sc;
}

/// Config document; every key optional, unknown keys rejected. See the README
/// for the full key list.
inline Config parse_config_json(const std::string& text) {
  constexpr Errc code = Errc::InvalidConfig;
  const nlohmann::json doc = detail::parse_json_document(text, code, "config");
  detail::reject_unknown_keys(
      doc, {"time_constant", "alpha_mode", "gravity", "calibration_window_seconds", "thresholds",
            "alignment", "weights"},
      code, "config");

  Config cfg;
  if (doc.contains("time_constant"))
    cfg.filter.time_constant = detail::json_number(doc["time_constant"], code, "time_constant");
  if (doc.contains("alpha_mode")) {
    const std::string mode = doc["alpha_mode"].is_string() ? doc["alpha_mode"].get<std::string>() : "";
    if (mode == "track_input")
      cfg.filter.alpha_mode = AlphaMode::TrackInput;
    else if (mode == "smooth_input")
      cfg.filter.alpha_mode = AlphaMode::SmoothInput;
    else
      fail(code, "alpha_mode must be 'track_input' or 'smooth_input'");
  }
  if (doc.contains("gravity")) cfg.gravity = detail::json_number(doc["gravity"], code, "gravity");
  if (doc.contains("calibration_window_seconds"))
    cfg.calibration_window_seconds =
        detail::json_number(doc["calibration_window_seconds"], code, "calibration_window_seconds");

  if (doc.contains("thresholds")) {
    const auto& jt = doc["thresholds"];
    if (!jt.is_object()) fail(code, "thresholds must be an object");
    detail::reject_unknown_keys(
        jt, {"accel_x", "brake_x", "lateral_y", "pothole_z", "min_duration", "merge_gap"}, code,
        "thresholds");
    auto& th = cfg.thresholds;
    if (jt.contains("accel_x")) th.accel_x = detail::json_number(jt["accel_x"], code, "accel_x");
    if (jt.contains("brake_x")) th.brake_x = detail::json_number(jt["brake_x"], code, "brake_x");
    if (jt.contains("lateral_y")) th.lateral_y = detail::json_number(jt["lateral_y"], code, "lateral_y");
    if (jt.contains("pothole_z")) th.pothole_z = detail::json_number(jt["pothole_z"], code, "pothole_z");
    if (jt.contains("min_duration"))
      th.min_duration = detail::json_number(jt["min_duration"], code, "min_duration");
    if (jt.contains("merge_gap")) th.merge_gap = detail::json_number(jt["merge_gap"], code, "merge_gap");
  }

  if (doc.contains("alignment")) {
    const auto& ja = doc["alignment"];
    if (!ja.is_object()) fail(code, "alignment must be an object");
    detail::reject_unknown_keys(
        ja,
        {"window_seconds", "hop_seconds", "turn_rate_threshold", "still_rate_threshold",
         "quasi_static_tolerance", "accel_rate_ceiling", "min_window_samples",
         "min_duration_seconds", "min_sample_rate_hz"},
        code, "alignment");
    auto& al = cfg.alignment;
    if (ja.contains("window_seconds"))
      al.window_seconds = detail::json_number(ja["window_seconds"], code, "window_seconds");
    if (ja.contains("hop_seconds"))
      al.hop_seconds = detail::json_number(ja["hop_seconds"], code, "hop_seconds");
    if (ja.contains("turn_rate_threshold"))
      al.turn_rate_threshold = detail::json_number(ja["turn_rate_threshold"], code, "turn_rate_threshold");
    if (ja.contains("still_rate_threshold"))
      al.still_rate_threshold =
          detail::json_number(ja["still_rate_threshold"], code, "still_rate_threshold");
    if (ja.contains("quasi_static_tolerance"))
      al.quasi_static_tolerance =
          detail::json_number(ja["quasi_static_tolerance"], code, "quasi_static_tolerance");
    if (ja.contains("accel_rate_ceiling"))
      al.accel_rate_ceiling = detail::json_number(ja["accel_rate_ceiling"], code, "accel_rate_ceiling");
    if (ja.contains("min_window_samples")) {
      if (!ja["min_window_samples"].is_number_unsigned())
        fail(code, "min_window_samples must be a non-negative integer");
      al.min_window_samples = ja["min_window_samples"].get<std::size_t>();
    }
    if (ja.contains("min_duration_seconds"))
      al.min_duration_seconds =
          detail::json_number(ja["min_duration_seconds"], code, "min_duration_seconds");
    if (ja.contains("min_sample_rate_hz"))
      al.min_sample_rate_hz = detail::json_number(ja["min_sample_rate_hz"], code, "min_sample_rate_hz");
  }

  if (doc.contains("weights")) {
    const auto& jw = doc["weights"];
    if (!jw.is_object()) fail(code, "weights must be an object");
    detail::reject_unknown_keys(
        jw, {"fast_acceleration", "hard_braking", "aggressive_cornering", "pothole"}, code,
        "weights");
    auto& w = cfg.weights;
    if (jw.contains("fast_acceleration"))
      w.fast_acceleration = detail::json_number(jw["fast_acceleration"], code, "fast_acceleration");
    if (jw.contains("hard_braking"))
      w.hard_braking = detail::json_number(jw["hard_braking"], code, "hard_braking");
    if (jw.contains("aggressive_cornering"))
      w.aggressive_cornering = detail::json_number(jw["aggressive_cornering"], code, "aggressive_cornering");
    if (jw.contains("pothole")) w.pothole = detail::json_number(jw["pothole"], code, "pothole");
  }

  cfg.validate();
  return cfg;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

}  // namespace ridecomfort
