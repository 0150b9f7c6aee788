#include "ventgen/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw ValidationError("config: unknown key '" + key + "' in " + where);
}

std::array<double, 24> schedule_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 24)
    throw ValidationError("config: " + where + " must be an array of 24 numbers");
  std::array<double, 24> out{};
  for (int i = 0; i < 24; ++i) out[i] = j[i].get<double>();
  return out;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute())
    return path;
  return (fs::path(base_dir) / path).string();
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }

  RunConfig cfg;
  reject_unknown(j,
                 {"seed", "wfc", "catalog", "geometry", "envelope", "hvac",
                  "gains", "control", "comfort", "occupancy", "climates",
                  "calendar", "simulation"},
                 "the config root");

  cfg.seed = j.value("seed", cfg.seed);

  if (j.contains("wfc")) {
    const json& w = j["wfc"];
    reject_unknown(w,
                   {"grid_width", "grid_height", "solution_count", "weight_range",
                    "restart_cap", "border_empty", "tileset"},
                   "wfc");
    cfg.wfc.grid_width = w.value("grid_width", cfg.wfc.grid_width);
    cfg.wfc.grid_height = w.value("grid_height", cfg.wfc.grid_height);
    cfg.wfc.solution_count = w.value("solution_count", cfg.wfc.solution_count);
    if (w.contains("weight_range")) {
      const json& r = w["weight_range"];
      if (!r.is_array() || r.size() != 2)
        throw ValidationError("config: wfc.weight_range must be [lo, hi]");
      cfg.wfc.weight_min = r[0].get<double>();
      cfg.wfc.weight_max = r[1].get<double>();
    }
    cfg.wfc.restart_cap = w.value("restart_cap", cfg.wfc.restart_cap);
    cfg.wfc.border_empty = w.value("border_empty", cfg.wfc.border_empty);
    cfg.wfc.tileset_path = resolve(w.value("tileset", ""), base_dir);
  }

  if (j.contains("catalog")) {
    const json& c = j["catalog"];
    reject_unknown(c,
                   {"min_apartments", "max_apartments", "exclude_enclosed_voids",
                    "require_core", "dedup_reflections", "apartment_rule"},
                   "catalog");
    cfg.catalog.min_apartments = c.value("min_apartments", cfg.catalog.min_apartments);
    cfg.catalog.max_apartments = c.value("max_apartments", cfg.catalog.max_apartments);
    cfg.catalog.exclude_enclosed_voids =
        c.value("exclude_enclosed_voids", cfg.catalog.exclude_enclosed_voids);
    cfg.catalog.require_core = c.value("require_core", cfg.catalog.require_core);
    cfg.catalog.dedup_reflections =
        c.value("dedup_reflections", cfg.catalog.dedup_reflections);
    if (c.contains("apartment_rule")) {
      const std::string rule = c["apartment_rule"].get<std::string>();
      if (rule == "tile")
        cfg.catalog.apartment_rule = ApartmentRule::TilePerApartment;
      else if (rule == "contiguous")
        cfg.catalog.apartment_rule = ApartmentRule::ContiguousGroups;
      else
        throw ValidationError("config: apartment_rule must be 'tile' or 'contiguous'");
    }
  }

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    reject_unknown(g, {"tile_edge_m", "floor_height_m", "floors"}, "geometry");
    cfg.geometry.tile_edge_m = g.value("tile_edge_m", cfg.geometry.tile_edge_m);
    cfg.geometry.floor_height_m = g.value("floor_height_m", cfg.geometry.floor_height_m);
    cfg.geometry.floors = g.value("floors", cfg.geometry.floors);
  }

  if (j.contains("envelope")) {
    const json& e = j["envelope"];
    reject_unknown(e,
                   {"wall_u", "window_u", "window_to_wall", "shgc",
                    "capacitance_per_m2", "infiltration_ach", "window_height_m",
                    "openable_fraction"},
                   "envelope");
    cfg.envelope.wall_u_w_m2k = e.value("wall_u", cfg.envelope.wall_u_w_m2k);
    cfg.envelope.window_u_w_m2k = e.value("window_u", cfg.envelope.window_u_w_m2k);
    cfg.envelope.window_to_wall = e.value("window_to_wall", cfg.envelope.window_to_wall);
    cfg.envelope.shgc = e.value("shgc", cfg.envelope.shgc);
    cfg.envelope.capacitance_j_per_m2 =
        e.value("capacitance_per_m2", cfg.envelope.capacitance_j_per_m2);
    cfg.envelope.infiltration_ach =
        e.value("infiltration_ach", cfg.envelope.infiltration_ach);
    cfg.envelope.window_height_m =
        e.value("window_height_m", cfg.envelope.window_height_m);
    cfg.envelope.openable_fraction =
        e.value("openable_fraction", cfg.envelope.openable_fraction);
  }

  if (j.contains("hvac")) {
    const json& h = j["hvac"];
    reject_unknown(h, {"cooling_cop", "heating_cop"}, "hvac");
    cfg.hvac.cooling_cop = h.value("cooling_cop", cfg.hvac.cooling_cop);
    cfg.hvac.heating_cop = h.value("heating_cop", cfg.hvac.heating_cop);
  }

  if (j.contains("gains")) {
    const json& g = j["gains"];
    reject_unknown(g,
                   {"people_density", "sensible_per_person", "latent_per_person",
                    "lighting_w_m2", "equipment_w_m2", "lighting_schedule",
                    "equipment_schedule", "lighting_follows_occupancy"},
                   "gains");
    cfg.gains.people_density = g.value("people_density", cfg.gains.people_density);
    cfg.gains.sensible_per_person =
        g.value("sensible_per_person", cfg.gains.sensible_per_person);
    cfg.gains.latent_per_person =
        g.value("latent_per_person", cfg.gains.latent_per_person);
    cfg.gains.lighting_power = g.value("lighting_w_m2", cfg.gains.lighting_power);
    cfg.gains.equipment_power = g.value("equipment_w_m2", cfg.gains.equipment_power);
    if (g.contains("lighting_schedule"))
      cfg.gains.lighting_schedule =
          schedule_from(g["lighting_schedule"], "gains.lighting_schedule");
    if (g.contains("equipment_schedule"))
      cfg.gains.equipment_schedule =
          schedule_from(g["equipment_schedule"], "gains.equipment_schedule");
    cfg.gains.lighting_follows_occupancy =
        g.value("lighting_follows_occupancy", cfg.gains.lighting_follows_occupancy);
  }

  if (j.contains("control")) {
    const json& c = j["control"];
    reject_unknown(c,
                   {"ac_heat_setpoint", "ac_cool_setpoint", "nv_indoor_low",
                    "nv_indoor_high", "nv_open_trigger", "nv_outdoor_low",
                    "nv_outdoor_high", "nv_delta_min", "mm_hvac_low",
                    "mm_hvac_high", "mm_window_closed_while_hvac"},
                   "control");
    cfg.control.ac_heat_setpoint = c.value("ac_heat_setpoint", cfg.control.ac_heat_setpoint);
    cfg.control.ac_cool_setpoint = c.value("ac_cool_setpoint", cfg.control.ac_cool_setpoint);
    cfg.control.nv_indoor_low = c.value("nv_indoor_low", cfg.control.nv_indoor_low);
    cfg.control.nv_indoor_high = c.value("nv_indoor_high", cfg.control.nv_indoor_high);
    cfg.control.nv_open_trigger = c.value("nv_open_trigger", cfg.control.nv_open_trigger);
    cfg.control.nv_outdoor_low = c.value("nv_outdoor_low", cfg.control.nv_outdoor_low);
    cfg.control.nv_outdoor_high = c.value("nv_outdoor_high", cfg.control.nv_outdoor_high);
    cfg.control.nv_delta_min = c.value("nv_delta_min", cfg.control.nv_delta_min);
    cfg.control.mm_hvac_low = c.value("mm_hvac_low", cfg.control.mm_hvac_low);
    cfg.control.mm_hvac_high = c.value("mm_hvac_high", cfg.control.mm_hvac_high);
    cfg.control.mm_window_closed_while_hvac =
        c.value("mm_window_closed_while_hvac", cfg.control.mm_window_closed_while_hvac);
  }

  if (j.contains("comfort")) {
    const json& c = j["comfort"];
    reject_unknown(c,
                   {"model", "band", "pmv_threshold", "met", "clo_cooling",
                    "clo_heating", "air_speed_closed", "air_speed_open",
                    "heating_months"},
                   "comfort");
    if (c.contains("model"))
      cfg.comfort.model = parse_comfort_model(c["model"].get<std::string>());
    if (c.contains("band")) cfg.comfort.band = parse_band(c["band"].get<std::string>());
    cfg.comfort.pmv_threshold = c.value("pmv_threshold", cfg.comfort.pmv_threshold);
    cfg.comfort.metabolic_rate_met = c.value("met", cfg.comfort.metabolic_rate_met);
    cfg.comfort.clo_cooling_season = c.value("clo_cooling", cfg.comfort.clo_cooling_season);
    cfg.comfort.clo_heating_season = c.value("clo_heating", cfg.comfort.clo_heating_season);
    cfg.comfort.air_speed_closed_m_s =
        c.value("air_speed_closed", cfg.comfort.air_speed_closed_m_s);
    cfg.comfort.air_speed_open_m_s =
        c.value("air_speed_open", cfg.comfort.air_speed_open_m_s);
    if (c.contains("heating_months")) {
      const json& months = c["heating_months"];
      cfg.comfort.heating_months.fill(false);
      for (const auto& m : months) {
        const int mi = m.get<int>();
        if (mi < 1 || mi > 12)
          throw ValidationError("config: heating_months entries must be 1..12");
        cfg.comfort.heating_months[mi - 1] = true;
      }
    }
  }

  if (j.contains("occupancy")) {
    const json& o = j["occupancy"];
    reject_unknown(o, {"csv_path", "period", "income"}, "occupancy");
    cfg.occupancy.csv_path = resolve(o.value("csv_path", ""), base_dir);
    if (o.contains("period"))
      cfg.occupancy.period = parse_period(o["period"].get<std::string>());
    if (o.contains("income"))
      cfg.occupancy.income = parse_income(o["income"].get<std::string>());
  }

  if (j.contains("climates")) {
    for (const auto& c : j["climates"]) {
      reject_unknown(c, {"label", "epw_path"}, "climates[]");
      ClimateEntry entry;
      entry.label = c.at("label").get<std::string>();
      entry.epw_path = resolve(c.at("epw_path").get<std::string>(), base_dir);
      cfg.climates.push_back(std::move(entry));
    }
  }

  if (j.contains("calendar")) {
    const json& c = j["calendar"];
    reject_unknown(c, {"jan1_weekday"}, "calendar");
    if (c.contains("jan1_weekday")) {
      static const std::array<std::string, 7> kNames{
          "monday", "tuesday", "wednesday", "thursday",
          "friday", "saturday", "sunday"};
      const std::string name = c["jan1_weekday"].get<std::string>();
      auto it = std::find(kNames.begin(), kNames.end(), name);
      if (it == kNames.end())
        throw ValidationError("config: unknown weekday '" + name + "'");
      cfg.jan1_weekday = static_cast<int>(it - kNames.begin());
    }
  }

  if (j.contains("simulation")) {
    const json& s = j["simulation"];
    reject_unknown(s, {"substeps_per_hour", "pnt_occupied_only"}, "simulation");
    cfg.substeps_per_hour = s.value("substeps_per_hour", cfg.substeps_per_hour);
    cfg.pnt_occupied_only = s.value("pnt_occupied_only", cfg.pnt_occupied_only);
  }

  return cfg;
}

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ValidationError("config: " + msg);
  };
  need(wfc.grid_width >= 1 && wfc.grid_height >= 1, "wfc grid must be >= 1x1");
  need(wfc.solution_count >= 0, "wfc.solution_count must be >= 0");
  need(wfc.weight_min > 0.0 && wfc.weight_max >= wfc.weight_min,
       "wfc.weight_range must satisfy 0 < lo <= hi");
  need(wfc.restart_cap >= 1, "wfc.restart_cap must be >= 1");
  need(catalog.min_apartments <= catalog.max_apartments,
       "catalog range must satisfy min <= max");
  need(geometry.tile_edge_m > 0.0 && geometry.floor_height_m > 0.0,
       "geometry lengths must be positive");
  need(geometry.floors >= 1, "geometry.floors must be >= 1");
  need(envelope.wall_u_w_m2k > 0.0 && envelope.window_u_w_m2k > 0.0,
       "envelope U-values must be positive");
  need(envelope.window_to_wall >= 0.0 && envelope.window_to_wall <= 1.0,
       "window_to_wall must lie in [0, 1]");
  need(envelope.shgc >= 0.0 && envelope.shgc <= 1.0, "shgc must lie in [0, 1]");
  need(envelope.capacitance_j_per_m2 > 0.0, "capacitance must be positive");
  need(envelope.infiltration_ach >= 0.0, "infiltration must be >= 0");
  need(envelope.openable_fraction >= 0.0 && envelope.openable_fraction <= 1.0,
       "openable_fraction must lie in [0, 1]");
  need(hvac.cooling_cop > 0.0 && hvac.heating_cop > 0.0, "COPs must be positive");
  need(gains.people_density >= 0.0 && gains.sensible_per_person >= 0.0 &&
           gains.latent_per_person >= 0.0 && gains.lighting_power >= 0.0 &&
           gains.equipment_power >= 0.0,
       "gain parameters must be non-negative");
  control.validate();
  need(comfort.pmv_threshold > 0.0, "pmv_threshold must be positive");
  need(substeps_per_hour >= 1, "substeps_per_hour must be >= 1");
  need(jan1_weekday >= 0 && jan1_weekday <= 6, "jan1_weekday must be 0..6");

  namespace fs = std::filesystem;
  if (!wfc.tileset_path.empty())
    need(fs::exists(wfc.tileset_path), "tileset file not found: " + wfc.tileset_path);
  if (!occupancy.csv_path.empty())
    need(fs::exists(occupancy.csv_path),
         "occupancy csv not found: " + occupancy.csv_path);
  for (const ClimateEntry& c : climates) {
    need(!c.label.empty(), "climate entries need a label");
    need(fs::exists(c.epw_path), "EPW file not found: " + c.epw_path);
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  RunConfig cfg = parse_config(ss.str(), base_dir);
  cfg.validate();
  return cfg;
}

}  // namespace ventgen
