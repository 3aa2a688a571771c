#pragma once

#include <optional>

#include "oxcal/errors.hpp"

namespace oxcal {

enum class CellState { Pristine, Lrs, Hrs };

enum class MemOp { Form, Set, Reset, Read };

const char* to_string(CellState s);
const char* to_string(MemOp op);
CellState cell_state_from_string(const std::string& name);
MemOp mem_op_from_string(const std::string& name);

// Gate rail used when a pulse asks for a fully-on selector.
inline constexpr double kGateRail = 4.8;

// Integrator output rail; outputs above it are clamped and flagged.
inline constexpr double kIntegratorRail = 5.0;

// Binary OxRAM memristor with a one-time forming step. Formed cells switch
// between a low and a high resistance state; resistances are fixed per state
// (ohmic model).
struct OxRamCell {
  CellState state = CellState::Pristine;
  double r_lrs = 13.7e3;   // ohms
  double r_hrs = 845.9e3;  // ohms

  static OxRamCell make(double r_lrs, double r_hrs,
                        CellState state = CellState::Pristine);
  double resistance() const;  // formed cells only
  bool operator==(const OxRamCell&) const = default;
};
void validate(const OxRamCell& cell);

// Series selector MOSFET: on-resistance at nominal read gate bias, plus the
// off-state leakage conductance that drives sneak-path currents.
struct SelectorModel {
  double r_on = 36.3e3;  // ohms; sized so the LRS read path totals 50 kOhm
  double g_off = 1e-9;   // siemens
  bool operator==(const SelectorModel&) const = default;
};
// Warns when g_off is not small against the weakest on-path conductance.
void validate(const SelectorModel& sel, double r_hrs);

// One programming/read pulse. v_ts > 0 drives top-to-source; v_ts < 0 is the
// source-to-top polarity used by RESET. The compliance limit is carried for
// reporting; the behavioral transition rules do not consume it.
struct PulseSpec {
  double v_ts = 0.0;
  double v_gate = 0.0;
  double width = 100e-9;  // seconds
  std::optional<double> compliance;  // amperes

  static PulseSpec form();   // +4.0 V, 10 us, gate 1.0 V, 1 uA compliance
  static PulseSpec set();    // +2.4 V, 100 ns, gate 1.5 V
  static PulseSpec reset();  // -3.0 V, 100 ns, gate at the rail
  static PulseSpec read(double v_read = 0.3);  // 100 ns, gate 3.8 V
};
void validate(const PulseSpec& pulse);
PulseSpec pulse_for(MemOp op);

enum class PulseKind { None, Form, Set, Reset };

// Threshold windows: FORM needs v_ts in [4.0, 5.0] V and width >= 10 us;
// SET needs v_ts in [2.4, 3.0] V with gate in [1.3, 1.8] V; RESET needs
// v_ts <= -3.0 V with gate >= 3.0 V. Anything else is sub-threshold and
// leaves the cell untouched, which makes the state machine total.
PulseKind classify_pulse(const PulseSpec& pulse);

// State machine: PRISTINE -FORM-> LRS (one-shot), HRS -SET-> LRS,
// LRS -RESET-> HRS. FORM on a formed cell and SET/RESET on a pristine cell
// are rejected with DeviceError. SET on LRS and RESET on HRS are no-ops.
OxRamCell apply_pulse(const OxRamCell& cell, const PulseSpec& pulse);

// Conductance of the 1T1R path. Gate on: 1/(r_state + r_on), with a pristine
// device treated as an open circuit so only the leakage floor remains.
// Gate off: g_off.
double cell_path_conductance(const OxRamCell& cell, const SelectorModel& sel,
                             bool gate_on);

// Ohmic read with the gate on. Valid for |v_read| <= 1 V; beyond that the
// fixed-resistance model no longer tracks the device and a DeviceError is
// raised.
double read_current(const OxRamCell& cell, const SelectorModel& sel,
                    double v_read);

// Linearized body effect of the buffer's differential pair: moving the
// calibration-side bulk from v_calibref by dv shifts the input-referred
// offset by eta*dv. eta is the body-transconductance ratio.
struct BodyBiasModel {
  double eta = 0.25;
  double v_calibref = 4.5;
  bool operator==(const BodyBiasModel&) const = default;
};
void validate(const BodyBiasModel& model);

// Input-referred offset shift for a calibration voltage v_cal. Linearization
// holds within +/-0.5 V of v_calibref; outside that a warning is emitted and
// the extrapolated value is still returned.
double offset_correction(const BodyBiasModel& model, double v_cal);

}  // namespace oxcal
