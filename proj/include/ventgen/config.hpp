#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ventgen/comfort.hpp"
#include "ventgen/control.hpp"
#include "ventgen/layout.hpp"
#include "ventgen/metrics.hpp"
#include "ventgen/occupancy.hpp"
#include "ventgen/zone.hpp"

namespace ventgen {

struct WfcConfig {
  int grid_width = 40;
  int grid_height = 40;
  int solution_count = 300;
  double weight_min = 0.1;
  double weight_max = 10.0;
  int restart_cap = 100;
  bool border_empty = false;
  std::string tileset_path;  // tile example JSON
};

struct ClimateEntry {
  std::string label;
  std::string epw_path;
};

struct OccupancySelection {
  std::string csv_path;
  Period period = Period::PostCovid;
  Income income = Income::Middle;
};

// Whole experiment configuration. Every value has the documented default;
// the JSON file overrides individual keys (unknown keys are rejected).
// Relative paths are resolved against the config file's directory.
struct RunConfig {
  std::uint64_t seed = 20230 * 1000 + 1;
  WfcConfig wfc;
  CatalogFilter catalog;
  GeometryConfig geometry;
  EnvelopeConfig envelope;
  HvacConfig hvac;
  GainParameters gains;
  ControlThresholds control;
  ComfortConfig comfort;
  OccupancySelection occupancy;
  std::vector<ClimateEntry> climates;
  int jan1_weekday = 0;  // 0 = Monday
  int substeps_per_hour = 6;
  bool pnt_occupied_only = true;

  // Throws ValidationError when constraints are violated or referenced paths
  // do not exist.
  void validate() const;
};

RunConfig parse_config(const std::string& json_text,
                       const std::string& base_dir = "");
RunConfig load_config_file(const std::string& path);

}  // namespace ventgen
