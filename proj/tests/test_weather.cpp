#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"
#include "ventgen/rng.hpp"
#include "ventgen/weather.hpp"

namespace {

using namespace ventgen;

constexpr double kPi = 3.14159265358979323846;
double rad(double deg) { return deg * kPi / 180.0; }

// Independent solar oracle following the NOAA calculator equations (Meeus):
// Julian century, mean longitude/anomaly, equation of center, apparent
// longitude, corrected obliquity, declination and equation of time. No
// atmospheric refraction, matching the implementation under test.
SunPosition noaa_sun(double lat, double lon, double tz, int year, int month,
                     int day, double hour_local) {
  const int a = (14 - month) / 12;
  const int y = year + 4800 - a;
  const int m = month + 12 * a - 3;
  const long jdn = day + (153 * m + 2) / 5 + 365L * y + y / 4 - y / 100 +
                   y / 400 - 32045;
  const double jd = jdn + (hour_local - tz - 12.0) / 24.0;
  const double jc = (jd - 2451545.0) / 36525.0;

  const double gmls =
      std::fmod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0);
  const double gmas = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
  const double ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
  const double eqctr =
      std::sin(rad(gmas)) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
      std::sin(rad(2 * gmas)) * (0.019993 - 0.000101 * jc) +
      std::sin(rad(3 * gmas)) * 0.000289;
  const double true_long = gmls + eqctr;
  const double app_long =
      true_long - 0.00569 - 0.00478 * std::sin(rad(125.04 - 1934.136 * jc));
  const double mean_obliq =
      23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
  const double obliq = mean_obliq + 0.00256 * std::cos(rad(125.04 - 1934.136 * jc));
  const double decl = std::asin(std::sin(rad(obliq)) * std::sin(rad(app_long)));

  const double vary = std::tan(rad(obliq / 2.0)) * std::tan(rad(obliq / 2.0));
  // minutes; the bracket is in radians, NOAA converts it to degrees and
  // multiplies by 4 min/deg
  const double eqtime =
      4.0 * (180.0 / kPi) *
      (vary * std::sin(2.0 * rad(gmls)) - 2.0 * ecc * std::sin(rad(gmas)) +
       4.0 * ecc * vary * std::sin(rad(gmas)) * std::cos(2.0 * rad(gmls)) -
       0.5 * vary * vary * std::sin(4.0 * rad(gmls)) -
       1.25 * ecc * ecc * std::sin(2.0 * rad(gmas)));

  double tst = std::fmod(hour_local * 60.0 + eqtime + 4.0 * lon - 60.0 * tz, 1440.0);
  if (tst < 0) tst += 1440.0;
  double ha = tst / 4.0 - 180.0;
  if (ha < -180.0) ha += 360.0;

  const double cos_zen = std::sin(rad(lat)) * std::sin(decl) +
                         std::cos(rad(lat)) * std::cos(decl) * std::cos(rad(ha));
  const double zen = std::acos(std::clamp(cos_zen, -1.0, 1.0));

  double az;
  const double denom = std::cos(rad(lat)) * std::sin(zen);
  if (std::abs(denom) < 1e-9) {
    az = 0.0;
  } else {
    double arg = (std::sin(rad(lat)) * std::cos(zen) - std::sin(decl)) / denom;
    arg = std::clamp(arg, -1.0, 1.0);
    const double acos_deg = std::acos(arg) * 180.0 / kPi;
    az = ha > 0.0 ? std::fmod(acos_deg + 180.0, 360.0)
                  : std::fmod(540.0 - acos_deg, 360.0);
  }
  SunPosition out;
  out.altitude_deg = 90.0 - zen * 180.0 / kPi;
  out.azimuth_deg = az;
  return out;
}

double angular_separation_deg(const SunPosition& a, const SunPosition& b) {
  auto unit = [](const SunPosition& s) {
    const double altr = rad(s.altitude_deg), azr = rad(s.azimuth_deg);
    return std::array<double, 3>{std::cos(altr) * std::sin(azr),
                                 std::cos(altr) * std::cos(azr),
                                 std::sin(altr)};
  };
  const auto ua = unit(a), ub = unit(b);
  const double dot =
      std::clamp(ua[0] * ub[0] + ua[1] * ub[1] + ua[2] * ub[2], -1.0, 1.0);
  return std::acos(dot) * 180.0 / kPi;
}

std::string epw_row(int month, int day, int hour, const std::string& fields7to22) {
  return "2017," + std::to_string(month) + "," + std::to_string(day) + "," +
         std::to_string(hour) + ",0,-," + fields7to22;
}

// minimal synthetic EPW with a single header and n data rows
std::string small_epw(int hours, double dry_bulb = 20.0) {
  std::ostringstream os;
  os << "LOCATION,Test,-,US,syn,0,33.4,-112.0,-7.0,300.0\n";
  os << "DATA PERIODS,1,1,Data,Sunday,1/1,12/31\n";
  int written = 0;
  for (int m = 1; m <= 12 && written < hours; ++m)
    for (int d = 1; d <= days_in_month(m) && written < hours; ++d)
      for (int h = 1; h <= 24 && written < hours; ++h) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.1f,10.0,50.0,97000,0,0,0,0,0,0,0,0,0,0,180,3.0",
                      dry_bulb);
        os << epw_row(m, d, h, buf) << "\n";
        ++written;
      }
  return os.str();
}

WeatherYear year_with_drybulb(const std::vector<double>& hourly) {
  WeatherYear wy;
  wy.location = {33.4, -112.0, -7.0, 300.0};
  int i = 0;
  for (int m = 1; m <= 12; ++m)
    for (int d = 1; d <= days_in_month(m); ++d)
      for (int h = 1; h <= 24; ++h) {
        WeatherRecord r;
        r.month = m;
        r.day = d;
        r.hour = h;
        r.dry_bulb = hourly[i++];
        r.rel_humidity = 50.0;
        wy.records.push_back(r);
      }
  return wy;
}

}  // namespace

TEST_CASE("parse_epw maps 1-based fields to the record") {
  std::ostringstream os;
  os << "LOCATION,X,-,US,syn,0,40.0,-75.0,-5.0,100.0\n";
  os << epw_row(1, 1, 1, "7.2,3.3,55,98000,0,0,0,120,600,80,0,0,0,0,270,4.5") << "\n";
  // pad to 8760 rows
  std::string text = os.str();
  std::ostringstream rest;
  int written = 1;
  for (int m = 1; m <= 12; ++m)
    for (int d = 1; d <= days_in_month(m); ++d)
      for (int h = 1; h <= 24; ++h) {
        if (m == 1 && d == 1 && h == 1) continue;
        rest << epw_row(m, d, h, "5.0,1.0,60,98000,0,0,0,0,0,0,0,0,0,0,90,2.0") << "\n";
        ++written;
      }
  text += rest.str();
  REQUIRE(written == 8760);

  std::istringstream in(text);
  const WeatherYear wy = parse_epw(in);
  CHECK(wy.location.latitude == doctest::Approx(40.0));
  CHECK(wy.location.longitude == doctest::Approx(-75.0));
  CHECK(wy.location.timezone_offset == doctest::Approx(-5.0));
  CHECK(wy.location.elevation == doctest::Approx(100.0));
  const WeatherRecord& r = wy.records.front();
  CHECK(r.dry_bulb == doctest::Approx(7.2));
  CHECK(r.dew_point == doctest::Approx(3.3));
  CHECK(r.rel_humidity == doctest::Approx(55.0));
  CHECK(r.pressure == doctest::Approx(98000.0));
  CHECK(r.global_horizontal == doctest::Approx(120.0));
  CHECK(r.direct_normal == doctest::Approx(600.0));
  CHECK(r.diffuse_horizontal == doctest::Approx(80.0));
  CHECK(r.wind_direction == doctest::Approx(270.0));
  CHECK(r.wind_speed == doctest::Approx(4.5));
}

TEST_CASE("parse_epw errors carry line numbers") {
  {
    std::istringstream in("NOTLOCATION,1,2\n");
    CHECK_THROWS_WITH_AS(parse_epw(in), doctest::Contains("line 1"), FormatError);
  }
  {
    // a short data row (10 fields)
    std::istringstream in(
        "LOCATION,X,-,US,syn,0,40.0,-75.0,-5.0,100.0\n"
        "2017,1,1,1,0,-,7.2,3.3,55,98000\n");
    CHECK_THROWS_WITH_AS(parse_epw(in), doctest::Contains("line 2"), FormatError);
  }
  {
    // a non-numeric required field
    std::istringstream in(
        "LOCATION,X,-,US,syn,0,40.0,-75.0,-5.0,100.0\n" +
        epw_row(1, 1, 1, "abc,3.3,55,98000,0,0,0,0,0,0,0,0,0,0,270,4.5") + "\n");
    CHECK_THROWS_WITH_AS(parse_epw(in), doctest::Contains("dry bulb"), FormatError);
  }
  {
    // wrong row count
    std::istringstream in(small_epw(100));
    CHECK_THROWS_WITH_AS(parse_epw(in), doctest::Contains("8760"), FormatError);
  }
}

TEST_CASE("parse_epw carries missing sentinels forward") {
  std::string text = "LOCATION,X,-,US,syn,0,40.0,-75.0,-5.0,100.0\n";
  int written = 0;
  for (int m = 1; m <= 12; ++m)
    for (int d = 1; d <= days_in_month(m); ++d)
      for (int h = 1; h <= 24; ++h) {
        ++written;
        if (written == 2)
          text += epw_row(m, d, h, "99.9,1.0,999,98000,0,0,0,0,0,0,0,0,0,0,90,2.0") + "\n";
        else
          text += epw_row(m, d, h, "5.5,1.0,60,98000,0,0,0,0,0,0,0,0,0,0,90,2.0") + "\n";
      }
  std::istringstream in(text);
  const WeatherYear wy = parse_epw(in);
  CHECK(wy.records[1].dry_bulb == doctest::Approx(5.5));
  CHECK(wy.records[1].rel_humidity == doctest::Approx(60.0));

  // missing in the very first record is an error
  std::string bad = text;
  bad.replace(bad.find("5.5"), 3, "99.9");
  std::istringstream in2(bad);
  CHECK_THROWS_AS(parse_epw(in2), FormatError);
}

TEST_CASE("bundled desert-class EPW: seasons point the right way") {
  const WeatherYear wy = load_epw_file("data/climates/phoenix_2b.epw");
  REQUIRE(wy.records.size() == 8760);
  // independent column extraction: mean of field 7 over January vs July rows
  double jan = 0, jul = 0;
  int njan = 0, njul = 0;
  for (const WeatherRecord& r : wy.records) {
    if (r.month == 1) {
      jan += r.dry_bulb;
      ++njan;
    } else if (r.month == 7) {
      jul += r.dry_bulb;
      ++njul;
    }
  }
  CHECK(njan == 744);
  CHECK(njul == 744);
  CHECK(jan / njan < jul / njul);
}

TEST_CASE("epw round trip is identity on retained fields") {
  const WeatherYear wy = load_epw_file("data/climates/san_francisco_3c.epw");
  std::istringstream in(to_epw(wy));
  const WeatherYear back = parse_epw(in);
  REQUIRE(back.records.size() == wy.records.size());
  CHECK(back.location.latitude == wy.location.latitude);
  CHECK(back.location.longitude == wy.location.longitude);
  for (std::size_t i = 0; i < wy.records.size(); i += 97) {
    const WeatherRecord& a = wy.records[i];
    const WeatherRecord& b = back.records[i];
    CHECK(a.dry_bulb == b.dry_bulb);
    CHECK(a.dew_point == b.dew_point);
    CHECK(a.rel_humidity == b.rel_humidity);
    CHECK(a.global_horizontal == b.global_horizontal);
    CHECK(a.direct_normal == b.direct_normal);
    CHECK(a.diffuse_horizontal == b.diffuse_horizontal);
    CHECK(a.wind_direction == b.wind_direction);
    CHECK(a.wind_speed == b.wind_speed);
  }
}

TEST_CASE("solar position: analytic limits") {
  // equator at equinox, solar noon: sun nearly overhead
  SiteLocation equator{0.0, 0.0, 0.0, 0.0};
  const SunPosition zenith = solar_position(equator, 3, 21, 12.0);
  CHECK(zenith.altitude_deg > 89.0 - 1.0);

  // 40N at winter solstice, solar noon: altitude ~ 90 - 40 - 23.45
  SiteLocation mid{40.0, 0.0, 0.0, 0.0};
  const SunPosition winter = solar_position(mid, 12, 21, 12.0);
  CHECK(winter.altitude_deg == doctest::Approx(26.55).epsilon(0.05));
  // around solar noon the sun sits due south
  CHECK(winter.azimuth_deg == doctest::Approx(180.0).epsilon(0.05));
}

TEST_CASE("solar position agrees with the NOAA oracle within half a degree") {
  Rng rng(7);
  int cases = 0;
  while (cases < 20) {
    const double lat = rng.uniform(-55.0, 55.0);
    const double lon = rng.uniform(-150.0, 150.0);
    const double tz = std::round(lon / 15.0) + std::floor(rng.uniform(0.0, 3.0)) - 1.0;
    const int month = 1 + int(rng.uniform() * 12.0);
    const int day = 1 + int(rng.uniform() * (days_in_month(month) - 1));
    const double hour = rng.uniform(0.0, 24.0);

    SiteLocation loc{lat, lon, tz, 0.0};
    const SunPosition mine = solar_position(loc, month, day, hour);
    const SunPosition ref = noaa_sun(lat, lon, tz, 2017, month, day, hour);
    CHECK(angular_separation_deg(mine, ref) < 0.5);
    ++cases;
  }
}

TEST_CASE("incident_on_facade clamps and composes terms") {
  WeatherRecord rec;
  rec.direct_normal = 800.0;
  rec.diffuse_horizontal = 100.0;
  rec.global_horizontal = 200.0;

  // sun below horizon: only diffuse and ground terms
  SunPosition night{-5.0, 90.0};
  CHECK(incident_on_facade(rec, night, 90.0) ==
        doctest::Approx(0.5 * 100.0 + 0.5 * 0.2 * 200.0));

  // sun opposite the facade normal: direct term clamps to zero
  SunPosition opposite{10.0, 270.0};
  CHECK(incident_on_facade(rec, opposite, 90.0) ==
        doctest::Approx(0.5 * 100.0 + 0.5 * 0.2 * 200.0));

  // grazing sun dead-on the facade: the direct term approaches the full DNI
  SunPosition grazing{0.001, 90.0};
  CHECK(incident_on_facade(rec, grazing, 90.0) ==
        doctest::Approx(800.0 + 0.5 * 100.0 + 0.5 * 0.2 * 200.0).epsilon(1e-6));

  // at or below the horizon the direct term is exactly zero
  SunPosition horizon{0.0, 90.0};
  CHECK(incident_on_facade(rec, horizon, 90.0) ==
        doctest::Approx(0.5 * 100.0 + 0.5 * 0.2 * 200.0));
}

TEST_CASE("prevailing mean outdoor temperature") {
  // constant year
  std::vector<double> flat(8760, 20.0);
  WeatherYear wy = year_with_drybulb(flat);
  for (int d : {1, 50, 180, 365})
    CHECK(prevailing_mean_outdoor(wy, d) == doctest::Approx(20.0));

  // ramp: day d has constant temperature d / 10
  std::vector<double> ramp(8760);
  for (int d = 0; d < 365; ++d)
    for (int h = 0; h < 24; ++h) ramp[d * 24 + h] = (d + 1) / 10.0;
  wy = year_with_drybulb(ramp);
  // brute-force window average oracle
  for (int d : {9, 100, 300}) {
    double expect = 0.0;
    for (int back = 1; back <= 7; ++back) {
      int prev = d - back;
      if (prev < 1) prev += 365;
      expect += prev / 10.0;
    }
    expect /= 7.0;
    CHECK(prevailing_mean_outdoor(wy, d) == doctest::Approx(expect));
  }

  // day 1 wraps to days 359..365
  double expect = 0.0;
  for (int prev = 359; prev <= 365; ++prev) expect += prev / 10.0;
  expect /= 7.0;
  CHECK(prevailing_mean_outdoor(wy, 1) == doctest::Approx(expect));

  // cyclic: shifting the year by a full period changes nothing
  wy.finalize();
  CHECK(wy.prevailing_mean(1) == doctest::Approx(expect));
}
