#include "ventgen/occupancy.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

Period parse_period(std::string_view s) {
  if (s == "pre_covid") return Period::PreCovid;
  if (s == "during_covid") return Period::DuringCovid;
  if (s == "post_covid") return Period::PostCovid;
  throw ValidationError("unknown occupancy period: '" + std::string(s) + "'");
}

Income parse_income(std::string_view s) {
  if (s == "low") return Income::Low;
  if (s == "middle") return Income::Middle;
  if (s == "high") return Income::High;
  throw ValidationError("unknown income tier: '" + std::string(s) + "'");
}

std::string to_string(Period p) {
  switch (p) {
    case Period::PreCovid: return "pre_covid";
    case Period::DuringCovid: return "during_covid";
    case Period::PostCovid: return "post_covid";
  }
  return "?";
}

std::string to_string(DayType d) {
  return d == DayType::Weekday ? "weekday" : "weekend";
}

std::string to_string(Income i) {
  switch (i) {
    case Income::Low: return "low";
    case Income::Middle: return "middle";
    case Income::High: return "high";
  }
  return "?";
}

namespace {

DayType parse_day_type(std::string_view s) {
  if (s == "weekday") return DayType::Weekday;
  if (s == "weekend") return DayType::Weekend;
  throw ValidationError("unknown day type: '" + std::string(s) + "'");
}

std::tuple<int, int, int> key_of(Period p, DayType d, Income i) {
  return {static_cast<int>(p), static_cast<int>(d), static_cast<int>(i)};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

ProfileSet ProfileSet::from_csv(std::istream& in) {
  ProfileSet set;
  std::string line;
  int row = 0;
  if (!std::getline(in, line))
    throw FormatError("occupancy csv: empty input");
  ++row;
  {
    auto header = split_csv(line);
    if (header.size() != 27 || header[0] != "period" || header[1] != "day_type" ||
        header[2] != "income" || header[3] != "h0" || header[26] != "h23")
      throw FormatError("occupancy csv: expected header period,day_type,income,h0,...,h23");
  }
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv(line);
    if (fields.size() != 27)
      throw FormatError("occupancy csv row " + std::to_string(row) + ": expected 27 fields, got " +
                        std::to_string(fields.size()));
    OccupancyProfile p;
    try {
      p.period = parse_period(fields[0]);
      p.day_type = parse_day_type(fields[1]);
      p.income = parse_income(fields[2]);
    } catch (const ValidationError& e) {
      throw ValidationError("occupancy csv row " + std::to_string(row) + ": " + e.what());
    }
    for (int h = 0; h < 24; ++h) {
      double v = 0.0;
      try {
        v = std::stod(fields[3 + h]);
      } catch (const std::exception&) {
        throw FormatError("occupancy csv row " + std::to_string(row) +
                          ": hour " + std::to_string(h) + " is not a number");
      }
      if (v < 0.0 || v > 1.0)
        throw ValidationError("occupancy csv row " + std::to_string(row) +
                              ": fraction " + fields[3 + h] + " outside [0, 1]");
      p.fractions[h] = v;
    }
    const auto key = key_of(p.period, p.day_type, p.income);
    if (!set.profiles_.emplace(key, p).second)
      throw ValidationError("occupancy csv row " + std::to_string(row) +
                            ": duplicate profile for (" + to_string(p.period) + ", " +
                            to_string(p.day_type) + ", " + to_string(p.income) + ")");
  }
  if (!set.has(Period::PostCovid, DayType::Weekday, Income::Middle))
    throw ValidationError(
        "occupancy csv: missing (post_covid, weekday, middle), required by the default experiment");
  return set;
}

ProfileSet ProfileSet::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open occupancy csv: " + path);
  return from_csv(in);
}

bool ProfileSet::has(Period p, DayType d, Income i) const {
  return profiles_.count(key_of(p, d, i)) != 0;
}

const OccupancyProfile& ProfileSet::get(Period p, DayType d, Income i) const {
  auto it = profiles_.find(key_of(p, d, i));
  if (it == profiles_.end())
    throw LookupError("no occupancy profile for (" + to_string(p) + ", " +
                      to_string(d) + ", " + to_string(i) + ")");
  return it->second;
}

void ProfileSet::require_complete(Period p, Income i) const {
  get(p, DayType::Weekday, i);
  get(p, DayType::Weekend, i);
}

double ProfileSet::fraction_at(Period p, Income i, int month, int day, int hour,
                               int jan1_weekday) const {
  const DayType dt =
      is_weekend(month, day, jan1_weekday) ? DayType::Weekend : DayType::Weekday;
  return get(p, dt, i).fractions[hour];
}

GainParameters::GainParameters() {
  lighting_schedule.fill(1.0);
  // Modest diurnal plug-load curve: low overnight, evening peak.
  constexpr std::array<double, 24> kEquip{
      0.40, 0.40, 0.40, 0.40, 0.40, 0.45, 0.50, 0.55, 0.50, 0.45, 0.45, 0.45,
      0.45, 0.45, 0.45, 0.50, 0.60, 0.70, 0.80, 0.80, 0.75, 0.65, 0.55, 0.45};
  equipment_schedule = kEquip;
}

ZoneGains internal_gains(double zone_area_m2, double occupancy_fraction,
                         const GainParameters& params, int hour) {
  if (!(zone_area_m2 > 0.0))
    throw InvalidInputError("internal_gains: zone area must be positive");
  ZoneGains g;
  const double people =
      params.people_density * zone_area_m2 * occupancy_fraction;
  const double people_sensible = people * params.sensible_per_person;
  g.latent_w = people * params.latent_per_person;
  const double light_mult =
      params.lighting_schedule[hour] *
      (params.lighting_follows_occupancy ? occupancy_fraction : 1.0);
  const double lighting = params.lighting_power * zone_area_m2 * light_mult;
  const double equipment =
      params.equipment_power * zone_area_m2 * params.equipment_schedule[hour];
  g.electric_w = lighting + equipment;
  g.sensible_w = people_sensible + g.electric_w;
  return g;
}

}  // namespace ventgen
