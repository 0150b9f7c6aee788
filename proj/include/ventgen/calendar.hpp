#pragma once

#include <array>

namespace ventgen {

// Non-leap calendar used throughout the annual simulation.
inline constexpr std::array<int, 12> kDaysInMonth{31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
inline constexpr int kHoursPerYear = 8760;

constexpr int days_in_month(int month) { return kDaysInMonth[month - 1]; }

constexpr int day_of_year(int month, int day) {
  int doy = day;
  for (int m = 1; m < month; ++m) doy += kDaysInMonth[m - 1];
  return doy;
}

// 0 = Monday ... 6 = Sunday, for the day `day_of_year` given what Jan 1 falls on.
constexpr int weekday_of(int doy, int jan1_weekday) {
  return (jan1_weekday + doy - 1) % 7;
}

constexpr bool is_weekend(int month, int day, int jan1_weekday) {
  return weekday_of(day_of_year(month, day), jan1_weekday) >= 5;
}

}  // namespace ventgen
