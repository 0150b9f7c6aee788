#include "ventgen/weather.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

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

double parse_number(const std::string& s, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("epw line " + std::to_string(line_no) + ": field '" + s +
                      "' is not a valid " + what);
  }
}

bool is_known_header(const std::string& first_field) {
  static const char* kHeaders[] = {
      "DESIGN CONDITIONS", "TYPICAL/EXTREME PERIODS", "GROUND TEMPERATURES",
      "HOLIDAYS/DAYLIGHT SAVINGS", "COMMENTS 1", "COMMENTS 2", "DATA PERIODS"};
  for (const char* h : kHeaders)
    if (first_field == h) return true;
  return false;
}

// EPW missing-value sentinels per retained field.
struct Sentinel {
  double value;
  double tolerance;
};

bool is_missing(double v, const Sentinel& s) {
  return std::abs(v - s.value) <= s.tolerance;
}

constexpr Sentinel kMissingTemp{99.9, 1e-9};
constexpr Sentinel kMissingRh{999.0, 1e-9};
constexpr Sentinel kMissingPressure{999999.0, 1e-3};
constexpr Sentinel kMissingIrradiance{9999.0, 1e-9};
constexpr Sentinel kMissingWindDir{999.0, 1e-9};
constexpr Sentinel kMissingWindSpeed{999.0, 1e-9};

void carry_forward(double& value, const Sentinel& sentinel, bool have_prev,
                   double prev, int line_no, const char* what) {
  if (!is_missing(value, sentinel)) return;
  if (!have_prev)
    throw FormatError("epw line " + std::to_string(line_no) + ": " + what +
                      " missing in the first record");
  value = prev;
}

void validate_record(const WeatherRecord& r, int line_no) {
  auto fail = [&](const std::string& msg) {
    throw FormatError("epw line " + std::to_string(line_no) + ": " + msg);
  };
  if (r.month < 1 || r.month > 12) fail("month out of range");
  if (r.day < 1 || r.day > days_in_month(r.month)) fail("day out of range");
  if (r.hour < 1 || r.hour > 24) fail("hour out of range");
  if (r.rel_humidity < 0.0 || r.rel_humidity > 110.0)
    fail("relative humidity outside [0, 110]");
  if (r.global_horizontal < 0.0 || r.direct_normal < 0.0 ||
      r.diffuse_horizontal < 0.0)
    fail("negative irradiance");
  if (r.wind_speed < 0.0) fail("negative wind speed");
}

}  // namespace

WeatherYear parse_epw(std::istream& in) {
  WeatherYear wy;
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line))
    throw FormatError("epw line 1: empty input, expected LOCATION header");
  ++line_no;
  auto fields = split_csv(line);
  if (fields.empty() || fields[0] != "LOCATION")
    throw FormatError("epw line 1: expected LOCATION header, got '" +
                      (fields.empty() ? std::string() : fields[0]) + "'");
  if (fields.size() < 10)
    throw FormatError("epw line 1: LOCATION header has fewer than 10 fields");
  wy.location.latitude = parse_number(fields[6], 1, "latitude");
  wy.location.longitude = parse_number(fields[7], 1, "longitude");
  wy.location.timezone_offset = parse_number(fields[8], 1, "timezone");
  wy.location.elevation = parse_number(fields[9], 1, "elevation");
  if (wy.location.latitude < -90.0 || wy.location.latitude > 90.0)
    throw FormatError("epw line 1: latitude outside [-90, 90]");
  if (wy.location.longitude < -180.0 || wy.location.longitude > 180.0)
    throw FormatError("epw line 1: longitude outside [-180, 180]");

  bool seen_data = false;
  const WeatherRecord* prev = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    fields = split_csv(line);
    if (!seen_data && is_known_header(fields[0])) continue;
    seen_data = true;
    if (fields.size() < 22)
      throw FormatError("epw line " + std::to_string(line_no) + ": data row has " +
                        std::to_string(fields.size()) + " fields, expected >= 22");

    WeatherRecord r;
    r.month = static_cast<int>(parse_number(fields[1], line_no, "month"));
    r.day = static_cast<int>(parse_number(fields[2], line_no, "day"));
    r.hour = static_cast<int>(parse_number(fields[3], line_no, "hour"));
    if (r.month == 2 && r.day == 29) continue;  // normalize leap years
    r.dry_bulb = parse_number(fields[6], line_no, "dry bulb");
    r.dew_point = parse_number(fields[7], line_no, "dew point");
    r.rel_humidity = parse_number(fields[8], line_no, "relative humidity");
    r.pressure = parse_number(fields[9], line_no, "pressure");
    r.global_horizontal = parse_number(fields[13], line_no, "global horizontal");
    r.direct_normal = parse_number(fields[14], line_no, "direct normal");
    r.diffuse_horizontal = parse_number(fields[15], line_no, "diffuse horizontal");
    r.wind_direction = parse_number(fields[20], line_no, "wind direction");
    r.wind_speed = parse_number(fields[21], line_no, "wind speed");

    const bool have_prev = prev != nullptr;
    carry_forward(r.dry_bulb, kMissingTemp, have_prev,
                  have_prev ? prev->dry_bulb : 0, line_no, "dry bulb");
    carry_forward(r.dew_point, kMissingTemp, have_prev,
                  have_prev ? prev->dew_point : 0, line_no, "dew point");
    carry_forward(r.rel_humidity, kMissingRh, have_prev,
                  have_prev ? prev->rel_humidity : 0, line_no, "relative humidity");
    carry_forward(r.pressure, kMissingPressure, have_prev,
                  have_prev ? prev->pressure : 0, line_no, "pressure");
    carry_forward(r.global_horizontal, kMissingIrradiance, have_prev,
                  have_prev ? prev->global_horizontal : 0, line_no,
                  "global horizontal");
    carry_forward(r.direct_normal, kMissingIrradiance, have_prev,
                  have_prev ? prev->direct_normal : 0, line_no, "direct normal");
    carry_forward(r.diffuse_horizontal, kMissingIrradiance, have_prev,
                  have_prev ? prev->diffuse_horizontal : 0, line_no,
                  "diffuse horizontal");
    carry_forward(r.wind_direction, kMissingWindDir, have_prev,
                  have_prev ? prev->wind_direction : 0, line_no, "wind direction");
    carry_forward(r.wind_speed, kMissingWindSpeed, have_prev,
                  have_prev ? prev->wind_speed : 0, line_no, "wind speed");
    validate_record(r, line_no);

    if (prev != nullptr) {
      const auto key = [](const WeatherRecord& x) {
        return (x.month * 100 + x.day) * 100 + x.hour;
      };
      if (key(r) <= key(*prev))
        throw FormatError("epw line " + std::to_string(line_no) +
                          ": timestamps not strictly increasing");
    }
    wy.records.push_back(r);
    prev = &wy.records.back();
  }

  if (wy.records.size() != kHoursPerYear)
    throw FormatError("epw: expected 8760 data rows, got " +
                      std::to_string(wy.records.size()));
  return wy;
}

WeatherYear load_epw_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open EPW file: " + path);
  WeatherYear wy = parse_epw(in);
  wy.finalize();
  return wy;
}

std::string to_epw(const WeatherYear& weather) {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "LOCATION,site,-,-,synthetic,000000,%.4f,%.4f,%.1f,%.1f\n",
                weather.location.latitude, weather.location.longitude,
                weather.location.timezone_offset, weather.location.elevation);
  os << buf;
  os << "DATA PERIODS,1,1,Data,Sunday,1/1,12/31\n";
  for (const WeatherRecord& r : weather.records) {
    std::snprintf(buf, sizeof buf,
                  "2017,%d,%d,%d,0,-,%.4f,%.4f,%.2f,%.1f,0,0,0,%.2f,%.2f,%.2f,0,0,"
                  "0,0,%.2f,%.4f",
                  r.month, r.day, r.hour, r.dry_bulb, r.dew_point, r.rel_humidity,
                  r.pressure, r.global_horizontal, r.direct_normal,
                  r.diffuse_horizontal, r.wind_direction, r.wind_speed);
    os << buf << '\n';
  }
  return os.str();
}

SunPosition solar_position(const SiteLocation& loc, int month, int day,
                           double hour_local) {
  const int doy = day_of_year(month, day);
  // the +1.25 d phase aligns the mean-year series with current equinox timing
  const double gamma =
      2.0 * kPi * (doy + 0.25 + (hour_local - 12.0) / 24.0) / 365.0;

  // Spencer day-angle series: declination (rad) and equation of time (min).
  const double decl = 0.006918 - 0.399912 * std::cos(gamma) +
                      0.070257 * std::sin(gamma) - 0.006758 * std::cos(2 * gamma) +
                      0.000907 * std::sin(2 * gamma) -
                      0.002697 * std::cos(3 * gamma) + 0.00148 * std::sin(3 * gamma);
  const double eot_min =
      229.18 * (0.000075 + 0.001868 * std::cos(gamma) - 0.032077 * std::sin(gamma) -
                0.014615 * std::cos(2 * gamma) - 0.04089 * std::sin(2 * gamma));

  const double solar_time =
      hour_local + eot_min / 60.0 +
      (loc.longitude - 15.0 * loc.timezone_offset) / 15.0;
  // wrap to [-180, 180) so the morning/afternoon test below stays valid
  double hour_angle_deg = std::fmod((solar_time - 12.0) * 15.0, 360.0);
  if (hour_angle_deg < -180.0) hour_angle_deg += 360.0;
  if (hour_angle_deg >= 180.0) hour_angle_deg -= 360.0;
  const double hour_angle = hour_angle_deg * kDegToRad;

  const double lat = loc.latitude * kDegToRad;
  const double sin_alt = std::sin(lat) * std::sin(decl) +
                         std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
  const double altitude = std::asin(std::clamp(sin_alt, -1.0, 1.0));

  const double cos_alt = std::cos(altitude);
  double azimuth;
  if (cos_alt < 1e-9) {
    azimuth = 0.0;  // sun at zenith/nadir: azimuth is arbitrary
  } else {
    double cos_az = (std::sin(decl) - sin_alt * std::sin(lat)) /
                    (cos_alt * std::cos(lat));
    cos_az = std::clamp(cos_az, -1.0, 1.0);
    azimuth = std::acos(cos_az) / kDegToRad;  // 0..180, from north
    if (hour_angle > 0.0) azimuth = 360.0 - azimuth;
  }
  return SunPosition{altitude / kDegToRad,
                     azimuth >= 360.0 ? azimuth - 360.0 : azimuth};
}

double incident_on_facade(const WeatherRecord& rec, const SunPosition& sun,
                          double facade_azimuth_deg, double albedo) {
  double direct = 0.0;
  if (sun.altitude_deg > 0.0) {
    const double cos_incidence =
        std::cos(sun.altitude_deg * kDegToRad) *
        std::cos((sun.azimuth_deg - facade_azimuth_deg) * kDegToRad);
    direct = rec.direct_normal * std::max(0.0, cos_incidence);
  }
  const double diffuse = 0.5 * rec.diffuse_horizontal;
  const double ground = 0.5 * albedo * rec.global_horizontal;
  return direct + diffuse + ground;
}

double prevailing_mean_outdoor(const WeatherYear& weather, int day_of_year,
                               int window_days) {
  if (day_of_year < 1 || day_of_year > 365)
    throw InvalidInputError("prevailing mean: day_of_year outside [1, 365]");
  if (window_days < 1)
    throw InvalidInputError("prevailing mean: window must be >= 1 day");
  double sum = 0.0;
  int count = 0;
  for (int back = 1; back <= window_days; ++back) {
    int d = day_of_year - back;
    while (d < 1) d += 365;
    const int start_hour = (d - 1) * 24;
    for (int h = 0; h < 24; ++h) {
      sum += weather.records[start_hour + h].dry_bulb;
      ++count;
    }
  }
  return sum / count;
}

void WeatherYear::finalize(int prevailing_window_days) {
  if (records.size() != kHoursPerYear)
    throw InvalidInputError("weather year must hold exactly 8760 records");
  sun_.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const WeatherRecord& r = records[i];
    // hour field is hour-ending; evaluate the sun at the interval midpoint
    sun_[i] = solar_position(location, r.month, r.day, r.hour - 0.5);
  }
  prevailing_.resize(365);
  for (int d = 1; d <= 365; ++d)
    prevailing_[d - 1] = prevailing_mean_outdoor(*this, d, prevailing_window_days);
}

}  // namespace ventgen
