/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ridecomfort/io.hpp"
#include "ridecomfort/pipeline.hpp"
#include "ridecomfort/synth.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 input/parse, 3 pipeline, 4 output io.
constexpr int kExitParse = 2;
constexpr int kExitPipeline = 3;
constexpr int kExitIo = 4;

bool is_input_error(ridecomfort::Errc code) {
  using ridecomfort::Errc;
  switch (code) {
    case Errc::MissingHeader:
    case Errc::MalformedRow:
    case Errc::EmptyInput:
    case Errc::NonMonotoneTimestamps:
    case Errc::InvalidScenario:
    case Errc::InvalidConfig:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ridecomfort;

  CLI::App app{"Turns raw smartphone IMU logs into vehicle-frame signals, comfort events and a "
               "per-ride report"};

  std::string input_path, synth_path, config_path;
  std::string report_path, events_path, plot_path, emit_ride_path;
  std::optional<double> time_constant, accel_th, brake_th, lateral_th, pothole_th;

  auto* input_opt = app.add_option("--input", input_path, "Ride CSV (t_s,ax,ay,az,gx,gy,gz)");
  auto* synth_opt =
      app.add_option("--synth", synth_path, "Scenario JSON: generate a synthetic ride instead");
  input_opt->excludes(synth_opt);
  synth_opt->excludes(input_opt);
  app.add_option("--config", config_path, "Config JSON (defaults apply when omitted)");
  app.add_option("--time-constant", time_constant, "Low-pass filter time constant, seconds");
  app.add_option("--accel-threshold", accel_th, "Fast-acceleration threshold, m/s^2");
  app.add_option("--brake-threshold", brake_th, "Hard-braking threshold, m/s^2");
  app.add_option("--lateral-threshold", lateral_th, "Cornering threshold, m/s^2");
  app.add_option("--pothole-threshold", pothole_th, "Pothole threshold, m/s^2");
  app.add_option("--report", report_path, "Write the report JSON here (default: stdout)");
  app.add_option("--events", events_path, "Write events as JSON Lines here");
  app.add_option("--emit-plot-data", plot_path, "Write vehicle-frame accel CSV here");
  app.add_option("--emit-ride", emit_ride_path,
                 "With --synth: also write the generated device-frame CSV here");

  CLI11_PARSE(app, argc, argv);

  if (input_path.empty() && synth_path.empty()) {
    std::cerr << "error: one of --input or --synth is required\n";
    return 1;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = parse_config_json(read_text_file(config_path));
    if (time_constant) cfg.filter.time_constant = *time_constant;
    if (accel_th) cfg.thresholds.accel_x = *accel_th;
    if (brake_th) cfg.thresholds.brake_x = *brake_th;
    if (lateral_th) cfg.thresholds.lateral_y = *lateral_th;
    if (pothole_th) cfg.thresholds.pothole_z = *pothole_th;
    cfg.validate();

    SampleSeries series;
    if (!synth_path.empty()) {
      const Scenario scenario = parse_scenario_json(read_text_file(synth_path));
      series = generate_ride(scenario).device;
      if (!emit_ride_path.empty()) {
        std::ostringstream csv;
        write_series_csv(csv, series);
        write_text_file(emit_ride_path, csv.str());
      }
    } else {
      series = parse_input_file(input_path);
    }

    std::vector<std::string> warnings;
    PipelineResult result;
    try {
      result = run_pipeline(series, cfg, &warnings);
    } catch (const Error& e) {
      std::cerr << "error: " << e.describe() << '\n';
      return kExitPipeline;
    }
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';

    const std::string report_text = report_json_text(result.report, result.alignment);
    if (report_path.empty())
      std::cout << report_text;
    else
      write_text_file(report_path, report_text);

    if (!events_path.empty()) {
      std::ostringstream jsonl;
      write_events_jsonl(jsonl, result.report.events);
      write_text_file(events_path, jsonl.str());
    }
    if (!plot_path.empty()) {
      std::ostringstream plot;
      write_plot_csv(plot, result.aligned);
      write_text_file(plot_path, plot.str());
    }

    std::fprintf(stderr,
                 "score %.1f | events %zu (accel %zu, brake %zu, corner %zu, pothole %zu) | "
                 "alignment residual %.2f deg\n",
                 result.report.score, result.report.events.size(),
                 result.report.count(EventKind::FastAcceleration),
                 result.report.count(EventKind::HardBraking),
                 result.report.count(EventKind::AggressiveCornering),
                 result.report.count(EventKind::Pothole),
                 result.alignment.residual * 180.0 / kPi);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.describe() << '\n';
    if (e.code() == Errc::IoError) return kExitIo;
    return is_input_error(e.code()) ? kExitParse : kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
}
