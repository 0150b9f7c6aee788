#pragma once

#include <array>
#include <string_view>

namespace ventgen {

struct PmvInputs {
  double air_temp_c = 20.0;
  double mean_radiant_c = 20.0;
  double air_velocity_m_s = 0.1;
  double rel_humidity_pct = 50.0;
  double metabolic_rate_met = 1.1;
  double clothing_clo = 0.5;
};

struct PmvResult {
  double pmv = 0.0;
  double ppd = 0.0;  // %
};

// Heat-balance comfort index. The clothing surface temperature is solved by
// bisection to 1e-4 degC; throws NumericError (reporting the inputs) if the
// solve has not converged after 150 iterations.
PmvResult pmv_ppd(const PmvInputs& in);

struct AdaptiveResult {
  double comfort_temp_c = 0.0;
  // Set when the prevailing mean fell outside the model's applicability
  // domain [10, 33.5] degC and was clamped to it.
  bool clamped = false;
};

// Neutral operative temperature as a linear function of the prevailing mean
// outdoor temperature: 0.31 * t_pma + 17.8.
AdaptiveResult adaptive_comfort_temp(double t_pma_c);

enum class Band { Pct80, Pct90 };  // +-3.5 degC / +-2.5 degC acceptability

double band_half_width(Band band);

// Inclusive band membership around the adaptive comfort temperature.
bool adaptive_neutral(double operative_temp_c, double t_pma_c, Band band);

// |pmv| <= threshold, inclusive.
bool pmv_neutral(double pmv, double threshold = 0.5);

enum class ComfortModel { Adaptive, Pmv };

// Occupant assumptions used when evaluating comfort inside the simulation.
struct ComfortConfig {
  ComfortModel model = ComfortModel::Adaptive;
  Band band = Band::Pct80;
  double pmv_threshold = 0.5;
  double metabolic_rate_met = 1.1;
  double clo_cooling_season = 0.5;
  double clo_heating_season = 1.0;
  double air_speed_closed_m_s = 0.1;
  double air_speed_open_m_s = 0.8;
  // Months that count as heating season for clothing selection (1..12).
  std::array<bool, 12> heating_months{true, true, true,  false, false, false,
                                      false, false, false, false, true, true};

  double clo_for_month(int month) const {
    return heating_months[month - 1] ? clo_heating_season : clo_cooling_season;
  }
};

ComfortModel parse_comfort_model(std::string_view s);
Band parse_band(std::string_view s);

}  // namespace ventgen
