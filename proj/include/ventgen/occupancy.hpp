#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

namespace ventgen {

enum class Period { PreCovid, DuringCovid, PostCovid };
enum class DayType { Weekday, Weekend };
enum class Income { Low, Middle, High };

Period parse_period(std::string_view s);
Income parse_income(std::string_view s);
std::string to_string(Period p);
std::string to_string(DayType d);
std::string to_string(Income i);

// 24 hourly at-home fractions for one (period, day type, income) bucket.
// 0 means nobody home, 1 means everyone present.
struct OccupancyProfile {
  Period period = Period::PostCovid;
  DayType day_type = DayType::Weekday;
  Income income = Income::Middle;
  std::array<double, 24> fractions{};
};

class ProfileSet {
 public:
  // CSV schema: period,day_type,income,h0,...,h23. Rejects duplicate keys,
  // fractions outside [0, 1] (with the row number) and input that lacks the
  // (post_covid, weekday, middle) profile the default experiment runs on.
  static ProfileSet from_csv(std::istream& in);
  static ProfileSet from_csv_file(const std::string& path);

  bool has(Period p, DayType d, Income i) const;
  const OccupancyProfile& get(Period p, DayType d, Income i) const;
  // Throws LookupError unless both day types exist for (p, i).
  void require_complete(Period p, Income i) const;

  // Step-function lookup: weekday/weekend picked from the calendar
  // (Saturday and Sunday are weekend), hour is 0..23.
  double fraction_at(Period p, Income i, int month, int day, int hour,
                     int jan1_weekday = 0) const;

  std::size_t size() const { return profiles_.size(); }

 private:
  std::map<std::tuple<int, int, int>, OccupancyProfile> profiles_;
};

// Internal heat gain model parameters. Defaults follow a mid-rise apartment
// reference building; all overridable through the config file and verified
// only as configuration, not as ground truth.
struct GainParameters {
  double people_density = 0.028;      // persons/m2
  double sensible_per_person = 70.0;  // W
  double latent_per_person = 45.0;    // W
  double lighting_power = 3.9;        // W/m2 installed
  double equipment_power = 5.4;       // W/m2 installed
  std::array<double, 24> lighting_schedule;   // multiplier per hour
  std::array<double, 24> equipment_schedule;  // multiplier per hour
  // Lighting additionally scales with the occupancy fraction.
  bool lighting_follows_occupancy = true;

  GainParameters();
};

struct ZoneGains {
  double sensible_w = 0.0;  // people sensible + lighting + equipment
  double latent_w = 0.0;    // people latent, reported but not in the dry air balance
  double electric_w = 0.0;  // lighting + equipment draw
};

ZoneGains internal_gains(double zone_area_m2, double occupancy_fraction,
                         const GainParameters& params, int hour);

}  // namespace ventgen
