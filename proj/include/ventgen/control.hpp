#pragma once

#include <string>
#include <string_view>

namespace ventgen {

enum class ControlMode { AC, NV, MM };

ControlMode parse_control_mode(std::string_view s);
std::string to_string(ControlMode mode);

// Temperature thresholds of the three cooling strategies, degC. The defaults
// keep the 1-degree buffer between the window band (21..28) and the MM
// fallback band (20..29) that prevents mode flapping.
struct ControlThresholds {
  double ac_heat_setpoint = 21.7;
  double ac_cool_setpoint = 24.4;
  double nv_indoor_low = 21.0;    // window close threshold
  double nv_indoor_high = 28.0;   // upper edge of the target band
  double nv_open_trigger = 23.0;  // window open threshold (cooling purpose)
  double nv_outdoor_low = 18.0;
  double nv_outdoor_high = 25.0;
  double nv_delta_min = 3.0;      // outdoor must be this much colder than indoor
  double mm_hvac_low = 20.0;
  double mm_hvac_high = 29.0;
  bool mm_window_closed_while_hvac = true;

  void validate() const;
};

struct ControlDecision {
  bool window_open = false;
  bool hvac_enabled = false;
  // Valid only while hvac_enabled.
  double heat_setpoint_c = 0.0;
  double cool_setpoint_c = 0.0;
};

// Pure per-step controller. `prev` carries the window hysteresis state.
//
//   AC: windows closed, HVAC holds [21.7, 24.4].
//   NV: HVAC off. Window eligibility requires the outdoor air to be at least
//       nv_delta_min colder than indoors and within [18, 25]; an eligible
//       window opens once indoors reaches 23 and closes when eligibility is
//       lost or indoors drops to 21, otherwise it holds its previous state.
//   MM: window logic as NV; HVAC engages outside (20, 29) with those bounds
//       as setpoints, forcing the window closed while it runs.
ControlDecision decide(ControlMode mode, const ControlThresholds& thresholds,
                       double indoor_c, double outdoor_c,
                       const ControlDecision& prev);

}  // namespace ventgen
