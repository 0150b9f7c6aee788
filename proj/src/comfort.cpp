#include "ventgen/comfort.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ventgen/errors.hpp"

namespace ventgen {

namespace {

// Saturation vapour pressure over water, Pa.
double saturation_vapor_pressure(double t_c) {
  return std::exp(16.6536 - 4030.183 / (t_c + 235.0)) * 1000.0;
}

void check_inputs(const PmvInputs& in) {
  std::ostringstream why;
  if (in.air_velocity_m_s < 0.0) why << "air velocity < 0; ";
  if (in.rel_humidity_pct < 0.0 || in.rel_humidity_pct > 100.0)
    why << "relative humidity outside [0, 100]; ";
  if (!(in.metabolic_rate_met > 0.0)) why << "metabolic rate <= 0; ";
  if (in.clothing_clo < 0.0) why << "clothing < 0; ";
  const std::string msg = why.str();
  if (!msg.empty()) throw InvalidInputError("pmv inputs: " + msg);
}

std::string describe(const PmvInputs& in) {
  std::ostringstream os;
  os << "ta=" << in.air_temp_c << " tr=" << in.mean_radiant_c
     << " vel=" << in.air_velocity_m_s << " rh=" << in.rel_humidity_pct
     << " met=" << in.metabolic_rate_met << " clo=" << in.clothing_clo;
  return os.str();
}

}  // namespace

PmvResult pmv_ppd(const PmvInputs& in) {
  check_inputs(in);

  const double pa =
      in.rel_humidity_pct / 100.0 * saturation_vapor_pressure(in.air_temp_c);
  const double icl = 0.155 * in.clothing_clo;  // m2K/W
  const double m = in.metabolic_rate_met * 58.15;  // W/m2, no external work
  const double fcl = icl <= 0.078 ? 1.0 + 1.29 * icl : 1.05 + 0.645 * icl;
  const double hc_forced = 12.1 * std::sqrt(in.air_velocity_m_s);
  const double tr_k = in.mean_radiant_c + 273.0;

  // Surface balance residual; strictly decreasing in tcl, so bisection on a
  // wide bracket is safe.
  auto residual = [&](double tcl) {
    const double dt = tcl - in.air_temp_c;
    const double hc_natural = 2.38 * std::sqrt(std::sqrt(std::abs(dt)));
    const double hc = std::max(hc_forced, hc_natural);
    const double tcl_k = tcl + 273.0;
    const double radiative =
        3.96e-8 * fcl * (tcl_k * tcl_k * tcl_k * tcl_k - tr_k * tr_k * tr_k * tr_k);
    const double convective = fcl * hc * dt;
    return 35.7 - 0.028 * m - icl * (radiative + convective) - tcl;
  };

  double lo = std::min({in.air_temp_c, in.mean_radiant_c, 35.7 - 0.028 * m}) - 40.0;
  double hi = std::max({in.air_temp_c, in.mean_radiant_c, 35.7 - 0.028 * m}) + 40.0;
  if (residual(lo) < 0.0 || residual(hi) > 0.0)
    throw NumericError("pmv: clothing-surface bracket failed (" + describe(in) + ")");

  constexpr double kTol = 1e-4;
  constexpr int kMaxIter = 150;
  double tcl = 0.5 * (lo + hi);
  bool converged = false;
  for (int i = 0; i < kMaxIter; ++i) {
    tcl = 0.5 * (lo + hi);
    if (hi - lo <= kTol) {
      converged = true;
      break;
    }
    (residual(tcl) > 0.0 ? lo : hi) = tcl;
  }
  if (!converged)
    throw NumericError("pmv: no convergence after 150 iterations (" + describe(in) + ")");

  const double dt = tcl - in.air_temp_c;
  const double hc = std::max(hc_forced, 2.38 * std::sqrt(std::sqrt(std::abs(dt))));
  const double tcl_k = tcl + 273.0;

  const double skin_diffusion = 3.05e-3 * (5733.0 - 6.99 * m - pa);
  const double sweating = m > 58.15 ? 0.42 * (m - 58.15) : 0.0;
  const double latent_respiration = 1.7e-5 * m * (5867.0 - pa);
  const double dry_respiration = 0.0014 * m * (34.0 - in.air_temp_c);
  const double radiative =
      3.96e-8 * fcl * (tcl_k * tcl_k * tcl_k * tcl_k - tr_k * tr_k * tr_k * tr_k);
  const double convective = fcl * hc * dt;

  const double sensitivity = 0.303 * std::exp(-0.036 * m) + 0.028;
  PmvResult out;
  out.pmv = sensitivity * (m - skin_diffusion - sweating - latent_respiration -
                           dry_respiration - radiative - convective);
  out.ppd = 100.0 - 95.0 * std::exp(-0.03353 * std::pow(out.pmv, 4.0) -
                                    0.2179 * out.pmv * out.pmv);
  return out;
}

AdaptiveResult adaptive_comfort_temp(double t_pma_c) {
  constexpr double kDomainLow = 10.0, kDomainHigh = 33.5;
  AdaptiveResult out;
  const double t = std::clamp(t_pma_c, kDomainLow, kDomainHigh);
  out.clamped = t != t_pma_c;
  out.comfort_temp_c = 0.31 * t + 17.8;
  return out;
}

double band_half_width(Band band) { return band == Band::Pct80 ? 3.5 : 2.5; }

bool adaptive_neutral(double operative_temp_c, double t_pma_c, Band band) {
  const double comfort = adaptive_comfort_temp(t_pma_c).comfort_temp_c;
  return std::abs(operative_temp_c - comfort) <= band_half_width(band);
}

bool pmv_neutral(double pmv, double threshold) {
  if (!(threshold > 0.0)) throw InvalidInputError("pmv_neutral: threshold must be > 0");
  return std::abs(pmv) <= threshold;
}

ComfortModel parse_comfort_model(std::string_view s) {
  if (s == "adaptive") return ComfortModel::Adaptive;
  if (s == "pmv") return ComfortModel::Pmv;
  throw ValidationError("unknown comfort model: '" + std::string(s) + "'");
}

Band parse_band(std::string_view s) {
  if (s == "pct80") return Band::Pct80;
  if (s == "pct90") return Band::Pct90;
  throw ValidationError("unknown comfort band: '" + std::string(s) + "'");
}

}  // namespace ventgen
