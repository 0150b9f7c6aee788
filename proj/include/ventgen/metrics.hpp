#pragma once

#include <map>
#include <string>
#include <vector>

#include "ventgen/zone.hpp"

namespace ventgen {

struct HvacConfig {
  double cooling_cop = 3.0;
  double heating_cop = 1.0;  // electric resistance
};

// Annual site electricity (HVAC loads divided by COP, plus lighting and
// equipment) per gross floor area, kWh/m2/yr. Hourly energies are per
// simulated floor and are scaled by the floor count; the ratio is invariant.
double compute_eui(const HourlyResults& results, double gross_floor_area_m2,
                   const HvacConfig& hvac);

// Percentage of neutral (occupied) zone-hours under the selected model.
// An hour counts as occupied when the occupancy fraction is > 0; with
// occupied_only off every hour counts. Throws NumericError when no hour
// qualifies.
double compute_pnt(const HourlyResults& results, ComfortModel model,
                   bool occupied_only = true);

struct SimulationSummary {
  int layout_id = 0;
  double orientation_deg = 0.0;
  std::string climate;
  ControlMode strategy = ControlMode::AC;
  double eui_kwh_m2yr = 0.0;
  double pnt_adaptive_pct = 0.0;
  double pnt_pmv_pct = 0.0;
  // whole-building annual electricity, kWh
  double cooling_kwh = 0.0;
  double heating_kwh = 0.0;
  double lights_equip_kwh = 0.0;
};

SimulationSummary summarize(const HourlyResults& results, int layout_id,
                            double orientation_deg, const std::string& climate,
                            ControlMode strategy, const HvacConfig& hvac,
                            bool pnt_occupied_only = true);

struct SweepSpec {
  std::vector<int> layout_ids;
  std::vector<double> orientations{0,   30,  60,  90,  120, 150,
                                   180, 210, 240, 270, 300, 330};
  std::vector<std::string> climates;
  std::vector<ControlMode> strategies;

  void validate() const;
  std::size_t case_count() const {
    return layout_ids.size() * orientations.size() * climates.size() *
           strategies.size();
  }
};

struct CaseError {
  int layout_id = 0;
  double orientation_deg = 0.0;
  std::string climate;
  ControlMode strategy = ControlMode::AC;
  std::string message;
};

struct SweepOutcome {
  std::vector<SimulationSummary> summaries;  // deterministic case order
  std::vector<CaseError> errors;
};

// Everything a sweep case needs, shared read-only across workers.
struct SweepContext {
  const std::vector<CatalogEntry>* catalog = nullptr;
  const TileSet* tileset = nullptr;
  const std::map<std::string, WeatherYear>* weather = nullptr;  // by label
  const ProfileSet* profiles = nullptr;
  Period period = Period::PostCovid;
  Income income = Income::Middle;
  const GainParameters* gains = nullptr;
  const ControlThresholds* thresholds = nullptr;
  const ComfortConfig* comfort = nullptr;
  EnvelopeConfig envelope;
  GeometryConfig geometry;
  HvacConfig hvac;
  int jan1_weekday = 0;
  int substeps_per_hour = 6;
  bool pnt_occupied_only = true;
};

// Cartesian product of the spec dimensions, one independent simulation per
// case. Case order is (layout_id, orientation, climate, strategy), each
// ascending; per-case failures are collected without aborting the sweep, and
// |summaries| + |errors| equals the product size.
//
// The OpenMP variant stores per-case results by index, so its output is
// byte-identical to the serial reference for any worker count.
SweepOutcome run_sweep(const SweepSpec& spec, const SweepContext& ctx, int jobs);
SweepOutcome run_sweep_serial(const SweepSpec& spec, const SweepContext& ctx);

// Results CSV, normative column order.
std::string results_csv(const SweepOutcome& outcome);

// Per-(climate, strategy) mean EUI / PNT table, for terminal output.
std::string aggregate_table(const SweepOutcome& outcome);

}  // namespace ventgen
