#include "ventgen/svg_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ventgen/calendar.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

namespace {

constexpr double kEnergyScaleWhM2 = 30.0;  // full red at this hourly intensity
constexpr int kCell = 14;                  // px
constexpr int kLeft = 50, kTop = 40, kGap = 60;

struct Rgb {
  int r, g, b;
};

Rgb energy_color(double wh_m2) {
  const double t = std::clamp(wh_m2 / kEnergyScaleWhM2, 0.0, 1.0);
  return {255, int(std::lround(255 * (1.0 - t))), int(std::lround(255 * (1.0 - t)))};
}

Rgb neutral_color(double share) {
  const double t = std::clamp(share, 0.0, 1.0);
  return {int(std::lround(220 * (1.0 - t) + 40 * t)),
          int(std::lround(60 * (1.0 - t) + 180 * t)), 60};
}

void panel(std::ostringstream& os, int origin_y, const char* title, int days,
           const std::vector<std::vector<Rgb>>& colors) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"13\">%s</text>\n",
                kLeft, origin_y - 10, title);
  os << buf;
  for (int d = 0; d < days; ++d)
    for (int h = 0; h < 24; ++h) {
      const Rgb c = colors[d][h];
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                    "fill=\"rgb(%d,%d,%d)\"/>\n",
                    kLeft + d * kCell, origin_y + h * kCell, kCell - 1,
                    kCell - 1, c.r, c.g, c.b);
      os << buf;
    }
  for (int h = 0; h < 24; h += 6) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"monospace\" "
                  "font-size=\"10\">%02d</text>\n",
                  kLeft - 24, origin_y + h * kCell + 10, h);
    os << buf;
  }
}

}  // namespace

std::string render_hourly_svg(const HourlyResults& r, int month,
                              const HvacConfig& hvac) {
  if (month < 1 || month > 12)
    throw InvalidInputError("svg: month must be in [1, 12]");
  const int days = days_in_month(month);
  int start_doy = 1;
  for (int m = 1; m < month; ++m) start_doy += days_in_month(m);

  std::vector<std::vector<Rgb>> energy(days, std::vector<Rgb>(24));
  std::vector<std::vector<Rgb>> neutral(days, std::vector<Rgb>(24));
  for (int d = 0; d < days; ++d)
    for (int h = 0; h < 24; ++h) {
      const int hour = (start_doy - 1 + d) * 24 + h;
      double electric_j = 0.0;
      int neutral_zones = 0;
      for (int z = 0; z < r.zone_count; ++z) {
        const int i = r.idx(hour, z);
        electric_j += r.heating_j[i] / hvac.heating_cop +
                      r.cooling_j[i] / hvac.cooling_cop + r.lights_equip_j[i];
        neutral_zones += r.adaptive_neutral_flag[i];
      }
      const double wh_m2 = electric_j / 3600.0 / r.floor_area_m2;
      energy[d][h] = energy_color(wh_m2);
      neutral[d][h] = neutral_color(double(neutral_zones) / r.zone_count);
    }

  const int panel_h = 24 * kCell;
  const int width = kLeft + days * kCell + 20;
  const int height = kTop + panel_h + kGap + panel_h + 30;

  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                width, height, width, height);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" << buf;
  std::snprintf(buf, sizeof buf,
                "<desc>month=%d days=%d hours=24; top panel: hourly site "
                "electricity per floor area, scale 0..%.0f Wh/m2 "
                "(white=0, red=max, clamped); bottom panel: share of zones "
                "neutral under the adaptive model, scale 0..1 "
                "(red=0, green=1)</desc>\n",
                month, days, kEnergyScaleWhM2);
  os << buf;
  panel(os, kTop, "hourly electricity (Wh/m2)", days, energy);
  panel(os, kTop + panel_h + kGap, "neutral share (adaptive)", days, neutral);
  os << "</svg>\n";
  return os.str();
}

}  // namespace ventgen
