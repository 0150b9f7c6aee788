#include "ventgen/control.hpp"

#include "ventgen/errors.hpp"

namespace ventgen {

ControlMode parse_control_mode(std::string_view s) {
  if (s == "ac" || s == "AC") return ControlMode::AC;
  if (s == "nv" || s == "NV") return ControlMode::NV;
  if (s == "mm" || s == "MM") return ControlMode::MM;
  throw ValidationError("unknown cooling strategy: '" + std::string(s) +
                        "' (expected ac, nv or mm)");
}

std::string to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::AC: return "ac";
    case ControlMode::NV: return "nv";
    case ControlMode::MM: return "mm";
  }
  return "?";
}

void ControlThresholds::validate() const {
  if (!(ac_heat_setpoint < ac_cool_setpoint))
    throw ValidationError("control: AC heat setpoint must be below the cool setpoint");
  if (!(nv_indoor_low < nv_indoor_high))
    throw ValidationError("control: nv_indoor_low must be below nv_indoor_high");
  if (!(nv_outdoor_low <= nv_outdoor_high))
    throw ValidationError("control: outdoor window band is inverted");
  if (!(mm_hvac_low < mm_hvac_high))
    throw ValidationError("control: mm_hvac_low must be below mm_hvac_high");
  if (nv_open_trigger < nv_indoor_low)
    throw ValidationError("control: open trigger below the close threshold removes the dead band");
}

namespace {

bool window_next(const ControlThresholds& t, double indoor_c, double outdoor_c,
                 bool prev_open) {
  const bool eligible = outdoor_c <= indoor_c - t.nv_delta_min &&
                        outdoor_c >= t.nv_outdoor_low &&
                        outdoor_c <= t.nv_outdoor_high;
  if (eligible && indoor_c >= t.nv_open_trigger) return true;
  if (!eligible || indoor_c <= t.nv_indoor_low) return false;
  return prev_open;  // hysteresis dead band
}

}  // namespace

ControlDecision decide(ControlMode mode, const ControlThresholds& thresholds,
                       double indoor_c, double outdoor_c,
                       const ControlDecision& prev) {
  ControlDecision d;
  switch (mode) {
    case ControlMode::AC:
      d.window_open = false;
      d.hvac_enabled = true;
      d.heat_setpoint_c = thresholds.ac_heat_setpoint;
      d.cool_setpoint_c = thresholds.ac_cool_setpoint;
      return d;

    case ControlMode::NV:
      d.window_open = window_next(thresholds, indoor_c, outdoor_c, prev.window_open);
      d.hvac_enabled = false;
      return d;

    case ControlMode::MM: {
      const bool hvac = indoor_c < thresholds.mm_hvac_low ||
                        indoor_c > thresholds.mm_hvac_high;
      const bool window =
          window_next(thresholds, indoor_c, outdoor_c, prev.window_open);
      d.hvac_enabled = hvac;
      if (hvac) {
        d.window_open = thresholds.mm_window_closed_while_hvac ? false : window;
        d.heat_setpoint_c = thresholds.mm_hvac_low;
        d.cool_setpoint_c = thresholds.mm_hvac_high;
      } else {
        d.window_open = window;
      }
      return d;
    }
  }
  return d;
}

}  // namespace ventgen
