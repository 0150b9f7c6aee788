#include "ventgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

namespace {
constexpr double kJoulePerKwh = 3.6e6;
}

double compute_eui(const HourlyResults& r, double gross_floor_area_m2,
                   const HvacConfig& hvac) {
  if (!(gross_floor_area_m2 > 0.0))
    throw InvalidInputError("compute_eui: area must be positive");
  double electric_j = 0.0;
  for (std::size_t i = 0; i < r.heating_j.size(); ++i)
    electric_j += r.heating_j[i] / hvac.heating_cop +
                  r.cooling_j[i] / hvac.cooling_cop + r.lights_equip_j[i];
  electric_j *= r.floors;  // one representative floor was simulated
  return electric_j / kJoulePerKwh / gross_floor_area_m2;
}

double compute_pnt(const HourlyResults& r, ComfortModel model,
                   bool occupied_only) {
  const auto& flags = model == ComfortModel::Adaptive ? r.adaptive_neutral_flag
                                                      : r.pmv_neutral_flag;
  long counted = 0, neutral = 0;
  for (int h = 0; h < kHoursPerYear; ++h) {
    if (occupied_only && !(r.occupancy_fraction[h] > 0.0)) continue;
    for (int z = 0; z < r.zone_count; ++z) {
      ++counted;
      neutral += flags[r.idx(h, z)];
    }
  }
  if (counted == 0)
    throw NumericError("compute_pnt: no occupied zone-hours, metric undefined");
  return 100.0 * double(neutral) / double(counted);
}

SimulationSummary summarize(const HourlyResults& r, int layout_id,
                            double orientation_deg, const std::string& climate,
                            ControlMode strategy, const HvacConfig& hvac,
                            bool pnt_occupied_only) {
  SimulationSummary s;
  s.layout_id = layout_id;
  s.orientation_deg = orientation_deg;
  s.climate = climate;
  s.strategy = strategy;
  s.eui_kwh_m2yr = compute_eui(r, r.gross_floor_area_m2, hvac);
  s.pnt_adaptive_pct = compute_pnt(r, ComfortModel::Adaptive, pnt_occupied_only);
  s.pnt_pmv_pct = compute_pnt(r, ComfortModel::Pmv, pnt_occupied_only);
  double heat_j = 0.0, cool_j = 0.0, le_j = 0.0;
  for (std::size_t i = 0; i < r.heating_j.size(); ++i) {
    heat_j += r.heating_j[i];
    cool_j += r.cooling_j[i];
    le_j += r.lights_equip_j[i];
  }
  s.heating_kwh = heat_j / hvac.heating_cop * r.floors / kJoulePerKwh;
  s.cooling_kwh = cool_j / hvac.cooling_cop * r.floors / kJoulePerKwh;
  s.lights_equip_kwh = le_j * r.floors / kJoulePerKwh;
  return s;
}

void SweepSpec::validate() const {
  if (layout_ids.empty() || orientations.empty() || climates.empty() ||
      strategies.empty())
    throw ValidationError("sweep: every dimension needs at least one entry");
  for (double o : orientations)
    if (o < 0.0 || o >= 360.0)
      throw ValidationError("sweep: orientations must lie in [0, 360)");
}

namespace {

struct Case {
  int layout_id;
  double orientation;
  const std::string* climate;
  ControlMode strategy;
};

// Case order is the deterministic output order: ascending layout id, then
// orientation, climate label and strategy name.
std::vector<Case> enumerate_cases(const SweepSpec& spec) {
  auto layout_ids = spec.layout_ids;
  std::sort(layout_ids.begin(), layout_ids.end());
  auto orientations = spec.orientations;
  std::sort(orientations.begin(), orientations.end());
  std::vector<const std::string*> climates;
  for (const std::string& c : spec.climates) climates.push_back(&c);
  std::sort(climates.begin(), climates.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  auto strategies = spec.strategies;
  std::sort(strategies.begin(), strategies.end(),
            [](ControlMode a, ControlMode b) {
              return to_string(a) < to_string(b);
            });

  std::vector<Case> cases;
  cases.reserve(spec.case_count());
  for (int id : layout_ids)
    for (double o : orientations)
      for (const std::string* c : climates)
        for (ControlMode s : strategies) cases.push_back({id, o, c, s});
  return cases;
}

struct CaseResult {
  bool ok = false;
  SimulationSummary summary;
  std::string error;
};

CaseResult run_case(const Case& cs, const SweepContext& ctx) {
  CaseResult out;
  try {
    const CatalogEntry* entry = nullptr;
    for (const CatalogEntry& e : *ctx.catalog)
      if (e.id == cs.layout_id) entry = &e;
    if (!entry)
      throw LookupError("unknown layout id " + std::to_string(cs.layout_id));
    auto wit = ctx.weather->find(*cs.climate);
    if (wit == ctx.weather->end())
      throw LookupError("unknown climate label '" + *cs.climate + "'");

    const BuildingModel model = build_model(entry->layout, *ctx.tileset,
                                            cs.orientation, ctx.envelope,
                                            ctx.geometry);
    SimulationInputs in;
    in.weather = &wit->second;
    in.profiles = ctx.profiles;
    in.period = ctx.period;
    in.income = ctx.income;
    in.gains = ctx.gains;
    in.mode = cs.strategy;
    in.thresholds = ctx.thresholds;
    in.comfort = ctx.comfort;
    in.jan1_weekday = ctx.jan1_weekday;
    in.substeps_per_hour = ctx.substeps_per_hour;
    const HourlyResults hourly = simulate_year(model, in);
    out.summary = summarize(hourly, cs.layout_id, cs.orientation, *cs.climate,
                            cs.strategy, ctx.hvac, ctx.pnt_occupied_only);
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

SweepOutcome collect(const std::vector<Case>& cases,
                     const std::vector<CaseResult>& results) {
  SweepOutcome out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (results[i].ok) {
      out.summaries.push_back(results[i].summary);
    } else {
      out.errors.push_back({cases[i].layout_id, cases[i].orientation,
                            *cases[i].climate, cases[i].strategy,
                            results[i].error});
    }
  }
  return out;
}

}  // namespace

SweepOutcome run_sweep_serial(const SweepSpec& spec, const SweepContext& ctx) {
  spec.validate();
  const std::vector<Case> cases = enumerate_cases(spec);
  std::vector<CaseResult> results(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i)
    results[i] = run_case(cases[i], ctx);
  return collect(cases, results);
}

SweepOutcome run_sweep(const SweepSpec& spec, const SweepContext& ctx,
                       int jobs) {
  if (jobs <= 1) return run_sweep_serial(spec, ctx);
  spec.validate();
  const std::vector<Case> cases = enumerate_cases(spec);
  std::vector<CaseResult> results(cases.size());
  const int n = static_cast<int>(cases.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int i = 0; i < n; ++i) results[i] = run_case(cases[i], ctx);
  return collect(cases, results);
}

std::string results_csv(const SweepOutcome& outcome) {
  std::ostringstream os;
  os << "layout_id,orientation_deg,climate,strategy,eui_kwh_m2yr,"
        "pnt_adaptive_pct,pnt_pmv_pct,cooling_kwh,heating_kwh,lights_equip_kwh\n";
  char buf[256];
  for (const SimulationSummary& s : outcome.summaries) {
    std::snprintf(buf, sizeof buf, "%d,%.1f,%s,%s,%.4f,%.4f,%.4f,%.3f,%.3f,%.3f\n",
                  s.layout_id, s.orientation_deg, s.climate.c_str(),
                  to_string(s.strategy).c_str(), s.eui_kwh_m2yr,
                  s.pnt_adaptive_pct, s.pnt_pmv_pct, s.cooling_kwh,
                  s.heating_kwh, s.lights_equip_kwh);
    os << buf;
  }
  return os.str();
}

std::string aggregate_table(const SweepOutcome& outcome) {
  struct Bucket {
    double eui = 0, pnt_a = 0, pnt_p = 0;
    int n = 0;
  };
  std::map<std::pair<std::string, std::string>, Bucket> buckets;
  for (const SimulationSummary& s : outcome.summaries) {
    Bucket& b = buckets[{s.climate, to_string(s.strategy)}];
    b.eui += s.eui_kwh_m2yr;
    b.pnt_a += s.pnt_adaptive_pct;
    b.pnt_p += s.pnt_pmv_pct;
    ++b.n;
  }
  std::ostringstream os;
  os << "climate              strategy  cases  mean_eui  mean_pnt_acm  mean_pnt_pmv\n";
  char buf[256];
  for (const auto& [key, b] : buckets) {
    std::snprintf(buf, sizeof buf, "%-20s %-8s %6d %9.2f %13.2f %13.2f\n",
                  key.first.c_str(), key.second.c_str(), b.n, b.eui / b.n,
                  b.pnt_a / b.n, b.pnt_p / b.n);
    os << buf;
  }
  if (!outcome.errors.empty())
    os << outcome.errors.size() << " case(s) failed\n";
  return os.str();
}

}  // namespace ventgen
