#include "ventgen/zone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

namespace {

constexpr double kAirDensity = 1.2;     // kg/m3
constexpr double kAirCp = 1005.0;       // J/kgK
constexpr double kGravity = 9.81;       // m/s2
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

double infiltration_mass_flow(const ZoneParams& zone) {
  return zone.infiltration_ach * zone.volume_m3 * kAirDensity / 3600.0;
}

}  // namespace

double ZoneParams::window_area_total_m2() const {
  double a = 0.0;
  for (const ZoneFacade& f : facades) a += f.window_area_m2;
  return a;
}

void ZoneParams::validate() const {
  if (!(floor_area_m2 > 0.0) || !(volume_m3 > 0.0) ||
      !(ua_envelope_w_k > 0.0) || !(thermal_capacitance_j_k > 0.0))
    throw InvalidInputError("zone: areas, volume, UA and capacitance must be positive");
  if (solar_heat_gain_coeff < 0.0 || solar_heat_gain_coeff > 1.0)
    throw InvalidInputError("zone: SHGC outside [0, 1]");
  if (infiltration_ach < 0.0) throw InvalidInputError("zone: negative infiltration");
  for (const ZoneFacade& f : facades)
    if (f.window_area_m2 > f.wall_area_m2 + 1e-9)
      throw InvalidInputError("zone: window larger than its wall");
}

BuildingModel build_model(const BuildingLayout& layout, const TileSet& tileset,
                          double orientation_deg, const EnvelopeConfig& env,
                          const GeometryConfig& geo) {
  BuildingModel model;
  model.orientation_deg = std::fmod(std::fmod(orientation_deg, 360.0) + 360.0, 360.0);
  model.floors = geo.floors;
  model.floor_height_m = geo.floor_height_m;

  // cells open to outdoor air: empty, corridor (open-air) or outside the layout
  const auto occupied = layout.occupancy_grid();
  auto outdoor_side = [&](int r, int c, Dir d) {
    const int nr = r + row_step(d), nc = c + col_step(d);
    if (nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width) return true;
    if (!occupied[nr * layout.width + nc]) return true;
    return false;
  };
  // corridor cells are also open-air, but need the tile id, so collect a map
  std::vector<TileId> tile_at(occupied.size(), 0);
  for (const LayoutCell& c : layout.cells)
    tile_at[c.row * layout.width + c.col] = c.tile;
  auto facade_side = [&](int r, int c, Dir d) {
    if (outdoor_side(r, c, d)) return true;
    const int nr = r + row_step(d), nc = c + col_step(d);
    return tileset.role(tile_at[nr * layout.width + nc]) == TileRole::Corridor;
  };

  const double wall_area = geo.tile_edge_m * geo.floor_height_m;
  const double window_area = env.window_to_wall * wall_area;
  const double opaque_area = wall_area - window_area;
  // edge normal azimuths in grid frame: north edge faces 0, east 90, ...
  constexpr double kNormal[4] = {0.0, 90.0, 180.0, 270.0};

  for (const LayoutCell& cell : layout.cells) {
    if (tileset.role(cell.tile) != TileRole::Apartment) continue;
    ZoneParams zone;
    zone.floor_area_m2 = geo.tile_edge_m * geo.tile_edge_m;
    zone.volume_m3 = zone.floor_area_m2 * geo.floor_height_m;
    zone.thermal_capacitance_j_k = env.capacitance_j_per_m2 * zone.floor_area_m2;
    zone.solar_heat_gain_coeff = env.shgc;
    zone.infiltration_ach = env.infiltration_ach;
    zone.window_height_m = env.window_height_m;
    zone.openable_fraction = env.openable_fraction;
    double ua = 0.0;
    for (Dir d : kDirs) {
      if (!facade_side(cell.row, cell.col, d)) continue;
      ZoneFacade f;
      f.azimuth_deg = std::fmod(kNormal[static_cast<int>(d)] + model.orientation_deg, 360.0);
      f.wall_area_m2 = wall_area;
      f.window_area_m2 = window_area;
      ua += env.wall_u_w_m2k * opaque_area + env.window_u_w_m2k * f.window_area_m2;
      zone.facades.push_back(f);
    }
    if (zone.facades.empty()) {
      // fully interior apartment: keep a minimal conductive path so the node
      // is not isolated (party surfaces are otherwise adiabatic)
      ua = env.wall_u_w_m2k * 1.0;
    }
    zone.ua_envelope_w_k = ua;
    zone.validate();
    model.zones.push_back(std::move(zone));
  }
  if (model.zones.empty())
    throw InvalidInputError("build_model: layout has no apartment tiles");

  for (const ZoneParams& z : model.zones) model.floor_area_m2 += z.floor_area_m2;
  model.gross_floor_area_m2 = model.floor_area_m2 * model.floors;
  return model;
}

namespace {

struct Segment {
  double env_j = 0, vent_j = 0, solar_j = 0, internal_j = 0;
  double t_end = 0.0;
};

// Exact integral of the linear node over a span with constant drivers.
Segment integrate_free(double t_start, double span_s, double teq, double tau_s,
                       double ua, double mcp, double q_solar, double q_internal,
                       double tout) {
  Segment seg;
  if (span_s <= 0.0) {
    seg.t_end = t_start;
    return seg;
  }
  const double x = span_s / tau_s;
  const double decay = std::exp(-x);
  seg.t_end = teq + (t_start - teq) * decay;
  // mean temperature over the span; -expm1(-x)/x -> 1 as x -> 0
  const double mean_t = teq + (t_start - teq) * (-std::expm1(-x) / x);
  seg.env_j = ua * (tout - mean_t) * span_s;
  seg.vent_j = mcp * (tout - mean_t) * span_s;
  seg.solar_j = q_solar * span_s;
  seg.internal_j = q_internal * span_s;
  return seg;
}

void add_segment(StepResult& out, const Segment& seg) {
  out.envelope_j += seg.env_j;
  out.ventilation_j += seg.vent_j;
  out.solar_j += seg.solar_j;
  out.internal_j += seg.internal_j;
  out.t_end_c = seg.t_end;
}

// Flows integrated while the node is pinned at a setpoint.
void add_hold(StepResult& out, double span_s, double tsp, double ua, double mcp,
              double q_solar, double q_internal, double tout) {
  out.envelope_j += ua * (tout - tsp) * span_s;
  out.ventilation_j += mcp * (tout - tsp) * span_s;
  out.solar_j += q_solar * span_s;
  out.internal_j += q_internal * span_s;
  out.t_end_c = tsp;
}

struct NodeCoefficients {
  double ua, mcp, k, teq, tau, q_solar, q_internal;
};

NodeCoefficients coefficients(const ZoneParams& zone, const ZoneDrivers& d) {
  NodeCoefficients c;
  c.ua = zone.ua_envelope_w_k;
  c.mcp = (d.vent_mass_kg_s + infiltration_mass_flow(zone)) * kAirCp;
  c.k = c.ua + c.mcp;
  c.q_solar = d.solar_w * zone.solar_heat_gain_coeff;
  c.q_internal = d.internal_w;
  c.teq = (c.k * d.outdoor_c + c.q_solar + c.q_internal) / c.k;
  c.tau = zone.thermal_capacitance_j_k / c.k;
  return c;
}

}  // namespace

StepResult free_float_step(double t_start_c, const ZoneParams& zone,
                           const ZoneDrivers& drivers, double dt_s) {
  if (!(dt_s > 0.0)) throw InvalidInputError("step: dt must be positive");
  const NodeCoefficients c = coefficients(zone, drivers);
  StepResult out;
  add_segment(out, integrate_free(t_start_c, dt_s, c.teq, c.tau, c.ua, c.mcp,
                                  c.q_solar, c.q_internal, drivers.outdoor_c));
  return out;
}

StepResult ideal_load_to_setpoint(double t_start_c, const ZoneParams& zone,
                                  const ZoneDrivers& drivers, double dt_s,
                                  double heat_setpoint_c, double cool_setpoint_c) {
  if (!(heat_setpoint_c < cool_setpoint_c))
    throw InvalidInputError("ideal loads: heat setpoint must be below cool setpoint");
  StepResult free = free_float_step(t_start_c, zone, drivers, dt_s);
  if (free.t_end_c >= heat_setpoint_c && free.t_end_c <= cool_setpoint_c)
    return free;  // inside the band, no HVAC energy

  const bool cooling = free.t_end_c > cool_setpoint_c;
  const double tsp = cooling ? cool_setpoint_c : heat_setpoint_c;
  const NodeCoefficients c = coefficients(zone, drivers);
  const double capacity = zone.thermal_capacitance_j_k;

  StepResult out;
  double hvac_j = 0.0;  // positive = injected heat
  const bool start_beyond = cooling ? t_start_c > tsp : t_start_c < tsp;
  if (start_beyond) {
    // instantaneous pull to the setpoint
    hvac_j += capacity * (tsp - t_start_c);
    const bool pushes_out = cooling ? c.teq > tsp : c.teq < tsp;
    if (pushes_out) {
      add_hold(out, dt_s, tsp, c.ua, c.mcp, c.q_solar, c.q_internal,
               drivers.outdoor_c);
      hvac_j += c.k * (tsp - c.teq) * dt_s;
    } else {
      // equilibrium is back inside: float from the setpoint
      add_segment(out, integrate_free(tsp, dt_s, c.teq, c.tau, c.ua, c.mcp,
                                      c.q_solar, c.q_internal, drivers.outdoor_c));
    }
  } else {
    // monotone free trajectory crosses the setpoint at t*
    const double t_cross =
        c.tau * std::log((t_start_c - c.teq) / (tsp - c.teq));
    const double cross = std::clamp(t_cross, 0.0, dt_s);
    add_segment(out, integrate_free(t_start_c, cross, c.teq, c.tau, c.ua,
                                    c.mcp, c.q_solar, c.q_internal,
                                    drivers.outdoor_c));
    if (cross > 0.0) {
      // land exactly on the setpoint (kills log/exp round-off)
      out.t_end_c = tsp;
    }
    add_hold(out, dt_s - cross, tsp, c.ua, c.mcp, c.q_solar, c.q_internal,
             drivers.outdoor_c);
    hvac_j += c.k * (tsp - c.teq) * (dt_s - cross);
  }

  if (hvac_j >= 0.0)
    out.heating_j = hvac_j;
  else
    out.cooling_j = -hvac_j;
  return out;
}

double ventilation_flow(const ZoneParams& zone, bool window_open,
                        double wind_speed_m_s, double wind_direction_deg,
                        double tin_c, double tout_c) {
  if (!window_open) return 0.0;
  const double a_open = zone.openable_fraction * zone.window_area_total_m2();
  if (a_open <= 0.0) return 0.0;

  double best_alignment = 0.0;
  for (const ZoneFacade& f : zone.facades) {
    const double alignment =
        std::abs(std::cos((wind_direction_deg - f.azimuth_deg) * kDegToRad));
    best_alignment = std::max(best_alignment, alignment);
  }
  const double q_wind =
      0.55 * a_open * wind_speed_m_s * std::max(0.25, best_alignment);

  const double dh = 0.5 * zone.window_height_m;
  const double t_mean_k = 0.5 * (tin_c + tout_c) + 273.15;
  const double q_stack =
      0.6 * a_open *
      std::sqrt(2.0 * kGravity * dh * std::abs(tin_c - tout_c) / t_mean_k);

  return kAirDensity * std::sqrt(q_wind * q_wind + q_stack * q_stack);
}

HourlyResults simulate_year(const BuildingModel& model,
                            const SimulationInputs& in) {
  const WeatherYear& weather = *in.weather;
  const ProfileSet& profiles = *in.profiles;
  const GainParameters& gains = *in.gains;
  const ControlThresholds& thresholds = *in.thresholds;
  const ComfortConfig& comfort = *in.comfort;
  thresholds.validate();
  profiles.require_complete(in.period, in.income);
  if (weather.records.size() != kHoursPerYear)
    throw InvalidInputError("simulate_year: weather year must hold 8760 records");
  if (in.substeps_per_hour < 1)
    throw InvalidInputError("simulate_year: need at least one sub-step");

  const int zones = static_cast<int>(model.zones.size());
  HourlyResults res;
  res.zone_count = zones;
  res.floors = model.floors;
  res.floor_area_m2 = model.floor_area_m2;
  res.gross_floor_area_m2 = model.gross_floor_area_m2;
  const std::size_t n = static_cast<std::size_t>(kHoursPerYear) * zones;
  res.indoor_temp_c.resize(n);
  res.heating_j.resize(n);
  res.cooling_j.resize(n);
  res.lights_equip_j.resize(n);
  res.pmv.resize(n);
  res.window_open.resize(n);
  res.adaptive_neutral_flag.resize(n);
  res.pmv_neutral_flag.resize(n);
  res.occupancy_fraction.resize(kHoursPerYear);
  res.outdoor_c.resize(kHoursPerYear);

  // start every zone at the first hour's outdoor temperature, windows closed
  std::vector<double> temp(zones, weather.records.front().dry_bulb);
  std::vector<ControlDecision> prev(zones);

  // distinct facade azimuths across the building, for per-hour solar reuse
  std::vector<double> azimuths;
  for (const ZoneParams& z : model.zones)
    for (const ZoneFacade& f : z.facades) {
      bool known = false;
      for (double a : azimuths)
        if (std::abs(a - f.azimuth_deg) < 1e-9) known = true;
      if (!known) azimuths.push_back(f.azimuth_deg);
    }
  std::vector<double> incident(azimuths.size());

  const double dt = 3600.0 / in.substeps_per_hour;

  for (int hour = 0; hour < kHoursPerYear; ++hour) {
    const WeatherRecord& rec = weather.records[hour];
    const SunPosition& sun = weather.sun(hour);
    const int hour_of_day = rec.hour - 1;
    const int doy = day_of_year(rec.month, rec.day);
    const double t_pma = weather.prevailing_mean(doy);
    const double frac = profiles.fraction_at(in.period, in.income, rec.month,
                                             rec.day, hour_of_day, in.jan1_weekday);
    res.occupancy_fraction[hour] = frac;
    res.outdoor_c[hour] = rec.dry_bulb;

    for (std::size_t a = 0; a < azimuths.size(); ++a)
      incident[a] = incident_on_facade(rec, sun, azimuths[a]);
    auto incident_for = [&](double azimuth) {
      for (std::size_t a = 0; a < azimuths.size(); ++a)
        if (std::abs(azimuths[a] - azimuth) < 1e-9) return incident[a];
      return 0.0;
    };

    for (int z = 0; z < zones; ++z) {
      const ZoneParams& zone = model.zones[z];
      const ZoneGains zg =
          internal_gains(zone.floor_area_m2, frac, gains, hour_of_day);
      double solar_w = 0.0;
      for (const ZoneFacade& f : zone.facades)
        solar_w += incident_for(f.azimuth_deg) * f.window_area_m2;

      // controller sees the start-of-hour temperature
      const ControlDecision decision =
          decide(in.mode, thresholds, temp[z], rec.dry_bulb, prev[z]);
      prev[z] = decision;

      double heating = 0.0, cooling = 0.0;
      double flows = 0.0;
      const double t_hour_start = temp[z];
      for (int s = 0; s < in.substeps_per_hour; ++s) {
        ZoneDrivers drivers;
        drivers.outdoor_c = rec.dry_bulb;
        drivers.solar_w = solar_w;
        drivers.internal_w = zg.sensible_w;
        drivers.vent_mass_kg_s =
            ventilation_flow(zone, decision.window_open, rec.wind_speed,
                             rec.wind_direction, temp[z], rec.dry_bulb);
        StepResult step =
            decision.hvac_enabled
                ? ideal_load_to_setpoint(temp[z], zone, drivers, dt,
                                         decision.heat_setpoint_c,
                                         decision.cool_setpoint_c)
                : free_float_step(temp[z], zone, drivers, dt);
        temp[z] = step.t_end_c;
        heating += step.heating_j;
        cooling += step.cooling_j;
        flows += step.envelope_j + step.ventilation_j + step.solar_j +
                 step.internal_j + step.heating_j - step.cooling_j;
      }

      const double delta_u =
          zone.thermal_capacitance_j_k * (temp[z] - t_hour_start);
      const double scale = std::max({std::abs(delta_u), std::abs(flows), 1.0});
      res.max_balance_residual_rel = std::max(
          res.max_balance_residual_rel, std::abs(delta_u - flows) / scale);

      const int i = res.idx(hour, z);
      res.indoor_temp_c[i] = temp[z];
      res.heating_j[i] = heating;
      res.cooling_j[i] = cooling;
      res.lights_equip_j[i] = zg.electric_w * 3600.0;
      res.window_open[i] = decision.window_open ? 1 : 0;

      res.adaptive_neutral_flag[i] =
          adaptive_neutral(temp[z], t_pma, comfort.band) ? 1 : 0;
      PmvInputs pin;
      pin.air_temp_c = temp[z];
      pin.mean_radiant_c = temp[z];  // single-node model: MRT = air
      pin.air_velocity_m_s = decision.window_open ? comfort.air_speed_open_m_s
                                                  : comfort.air_speed_closed_m_s;
      pin.rel_humidity_pct = std::clamp(rec.rel_humidity, 0.0, 100.0);
      pin.metabolic_rate_met = comfort.metabolic_rate_met;
      pin.clothing_clo = comfort.clo_for_month(rec.month);
      const PmvResult pr = pmv_ppd(pin);
      res.pmv[i] = pr.pmv;
      res.pmv_neutral_flag[i] =
          pmv_neutral(pr.pmv, comfort.pmv_threshold) ? 1 : 0;
    }
  }
  return res;
}

std::string hourly_csv(const HourlyResults& r) {
  std::ostringstream os;
  os << "hour,zone,indoor_temp_c,heating_j,cooling_j,lights_equip_j,"
        "window_open,adaptive_neutral,pmv,pmv_neutral,occupancy_fraction,"
        "outdoor_c\n";
  char buf[256];
  for (int h = 0; h < kHoursPerYear; ++h)
    for (int z = 0; z < r.zone_count; ++z) {
      const int i = r.idx(h, z);
      std::snprintf(buf, sizeof buf,
                    "%d,%d,%.4f,%.1f,%.1f,%.1f,%d,%d,%.4f,%d,%.3f,%.2f\n", h, z,
                    r.indoor_temp_c[i], r.heating_j[i], r.cooling_j[i],
                    r.lights_equip_j[i], int(r.window_open[i]),
                    int(r.adaptive_neutral_flag[i]), r.pmv[i],
                    int(r.pmv_neutral_flag[i]), r.occupancy_fraction[h],
                    r.outdoor_c[h]);
      os << buf;
    }
  return os.str();
}

}  // namespace ventgen
