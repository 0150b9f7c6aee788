#pragma once

#include <cstdint>
#include <vector>

#include "ventgen/comfort.hpp"
#include "ventgen/control.hpp"
#include "ventgen/layout.hpp"
#include "ventgen/occupancy.hpp"
#include "ventgen/weather.hpp"

namespace ventgen {

// One exposed tile edge of a zone.
struct ZoneFacade {
  double azimuth_deg = 0.0;    // outward normal, 0 = north, clockwise
  double wall_area_m2 = 0.0;   // gross (opaque + glazing)
  double window_area_m2 = 0.0;
};

struct ZoneParams {
  double floor_area_m2 = 0.0;
  double volume_m3 = 0.0;
  double ua_envelope_w_k = 0.0;          // conduction through walls + windows
  double thermal_capacitance_j_k = 0.0;
  double solar_heat_gain_coeff = 0.4;
  double infiltration_ach = 0.5;         // background leakage, always active
  double window_height_m = 1.5;
  double openable_fraction = 0.5;
  std::vector<ZoneFacade> facades;

  double window_area_total_m2() const;
  void validate() const;
};

struct BuildingModel {
  std::vector<ZoneParams> zones;  // one per apartment tile, one floor
  double orientation_deg = 0.0;
  int floors = 5;
  double floor_height_m = 3.0;
  double gross_floor_area_m2 = 0.0;  // all floors
  double floor_area_m2 = 0.0;        // simulated floor
};

struct EnvelopeConfig {
  double wall_u_w_m2k = 0.7;
  double window_u_w_m2k = 2.8;
  double window_to_wall = 0.25;
  double shgc = 0.4;
  double capacitance_j_per_m2 = 180e3;
  double infiltration_ach = 0.5;
  double window_height_m = 1.5;
  double openable_fraction = 0.5;
};

struct GeometryConfig {
  double tile_edge_m = 8.0;
  double floor_height_m = 3.0;
  int floors = 5;
};

// Turns a catalog layout into thermal zones: every apartment tile becomes one
// zone; edges facing empty space, corridors or the outside become facades
// (corridors are open-air). Facade azimuth = edge normal + building
// orientation. Throws InvalidInputError for layouts without apartment tiles.
BuildingModel build_model(const BuildingLayout& layout, const TileSet& tileset,
                          double orientation_deg, const EnvelopeConfig& env,
                          const GeometryConfig& geo);

struct ZoneDrivers {
  double outdoor_c = 0.0;
  double solar_w = 0.0;         // on glazing, before SHGC
  double internal_w = 0.0;      // sensible gains
  double vent_mass_kg_s = 0.0;  // window airflow; infiltration is added inside
};

// Integrated heat flows over one step, J, positive into the zone air.
// heating/cooling are ideal-load magnitudes.
struct StepResult {
  double t_end_c = 0.0;
  double heating_j = 0.0;
  double cooling_j = 0.0;
  double envelope_j = 0.0;
  double ventilation_j = 0.0;
  double solar_j = 0.0;
  double internal_j = 0.0;
};

// Single-node balance C dT/dt = K (Teq - T) with
// K = UA + m_dot cp and Teq folding in solar and internal gains, integrated
// exactly over dt (exponential approach to equilibrium).
StepResult free_float_step(double t_start_c, const ZoneParams& zone,
                           const ZoneDrivers& drivers, double dt_s);

// Free float, but the trajectory is clamped at whichever setpoint the
// free-float end temperature violates; the charged energy is exactly what the
// clamped trajectory requires (uncapped ideal loads). Heating and cooling are
// never both nonzero in one step.
StepResult ideal_load_to_setpoint(double t_start_c, const ZoneParams& zone,
                                  const ZoneDrivers& drivers, double dt_s,
                                  double heat_setpoint_c, double cool_setpoint_c);

// Window airflow from wind and buoyancy: 0 when closed, otherwise
// sqrt(Q_wind^2 + Q_stack^2) * 1.2 kg/m3 with
//   Q_wind  = 0.55 * A_open * wind_speed * max(0.25, |cos(wind - facade)|)
//   Q_stack = 0.60 * A_open * sqrt(2 g dH |Tin - Tout| / T_mean_K).
// The facade whose azimuth is closest to the wind direction is used.
double ventilation_flow(const ZoneParams& zone, bool window_open,
                        double wind_speed_m_s, double wind_direction_deg,
                        double tin_c, double tout_c);

struct HourlyResults {
  int zone_count = 0;
  int floors = 1;
  double floor_area_m2 = 0.0;        // simulated floor
  double gross_floor_area_m2 = 0.0;  // all floors

  // per (hour, zone), hour-major; energies are per simulated-floor zone
  std::vector<double> indoor_temp_c;
  std::vector<double> heating_j;      // thermal
  std::vector<double> cooling_j;      // thermal
  std::vector<double> lights_equip_j; // electric
  std::vector<double> pmv;
  std::vector<std::uint8_t> window_open;
  std::vector<std::uint8_t> adaptive_neutral_flag;
  std::vector<std::uint8_t> pmv_neutral_flag;

  // per hour
  std::vector<double> occupancy_fraction;
  std::vector<double> outdoor_c;

  // worst per-(hour, zone) relative closure error of the energy balance
  double max_balance_residual_rel = 0.0;

  int idx(int hour, int zone) const { return hour * zone_count + zone; }
};

struct SimulationInputs {
  const WeatherYear* weather = nullptr;
  const ProfileSet* profiles = nullptr;
  Period period = Period::PostCovid;
  Income income = Income::Middle;
  const GainParameters* gains = nullptr;
  ControlMode mode = ControlMode::AC;
  const ControlThresholds* thresholds = nullptr;
  const ComfortConfig* comfort = nullptr;
  int jan1_weekday = 0;
  int substeps_per_hour = 6;
};

// Hourly loop over the weather year: occupancy -> gains, solar per facade,
// control decision against the start-of-hour temperature, then sub-stepped
// zone updates. One representative floor is simulated; callers scale annual
// energies by the floor count. Deterministic.
HourlyResults simulate_year(const BuildingModel& model,
                            const SimulationInputs& in);

// Hourly per-zone CSV export (fixed column order).
std::string hourly_csv(const HourlyResults& results);

}  // namespace ventgen
