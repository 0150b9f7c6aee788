#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ventgen {

struct SiteLocation {
  double latitude = 0.0;         // degrees, north positive
  double longitude = 0.0;        // degrees, east positive
  double timezone_offset = 0.0;  // hours from UTC
  double elevation = 0.0;        // m
};

struct WeatherRecord {
  int month = 1;
  int day = 1;
  int hour = 1;  // 1..24, hour ending
  double dry_bulb = 0.0;            // degC
  double dew_point = 0.0;           // degC
  double rel_humidity = 0.0;        // %
  double pressure = 101325.0;       // Pa
  double global_horizontal = 0.0;   // W/m2
  double direct_normal = 0.0;       // W/m2
  double diffuse_horizontal = 0.0;  // W/m2
  double wind_direction = 0.0;      // degrees from north
  double wind_speed = 0.0;          // m/s
};

struct SunPosition {
  double altitude_deg = 0.0;  // [-90, 90]
  double azimuth_deg = 0.0;   // [0, 360), clockwise from north
};

class WeatherYear {
 public:
  SiteLocation location;
  std::vector<WeatherRecord> records;  // exactly 8760, chronological

  // Precomputes per-hour sun positions (at the half-hour mark of each record)
  // and the per-day prevailing mean. Must be called once after the records
  // are in place; the object is immutable afterwards and safe to share across
  // threads.
  void finalize(int prevailing_window_days = 7);

  const SunPosition& sun(int hour_index) const { return sun_[hour_index]; }
  double prevailing_mean(int day_of_year) const {
    return prevailing_[day_of_year - 1];
  }

 private:
  std::vector<SunPosition> sun_;
  std::vector<double> prevailing_;
};

// EPW ingestion. The stream must begin with a LOCATION header line; the seven
// other standard header lines are skipped. Data rows are 1-based
// comma-separated fields: 2/3/4 month/day/hour, 7 dry bulb, 8 dew point,
// 9 relative humidity, 10 pressure, 14 global horizontal, 15 direct normal,
// 16 diffuse horizontal, 21 wind direction, 22 wind speed. Missing-value
// sentinels are replaced with the previous hour's value. Leap-day rows are
// dropped; anything other than 8760 rows after that is an error.
WeatherYear parse_epw(std::istream& in);
WeatherYear load_epw_file(const std::string& path);

// Writes the retained fields back into EPW field positions (other fields are
// zeroed), so parse(to_epw(parse(x))) == parse(x).
std::string to_epw(const WeatherYear& weather);

// Solar geometry from day-angle Fourier series for declination and the
// equation of time; hour_local is local standard clock time in hours.
SunPosition solar_position(const SiteLocation& loc, int month, int day,
                           double hour_local);

// Total shortwave on a vertical facade: direct beam (cosine of incidence,
// clamped), isotropic sky diffuse (view factor 0.5) and ground-reflected
// (0.5 * albedo * global horizontal).
double incident_on_facade(const WeatherRecord& rec, const SunPosition& sun,
                          double facade_azimuth_deg, double albedo = 0.2);

// Mean dry bulb over the `window_days` calendar days preceding day_of_year,
// wrapping cyclically across the year boundary.
double prevailing_mean_outdoor(const WeatherYear& weather, int day_of_year,
                               int window_days = 7);

}  // namespace ventgen
