#include "oxcal/devices.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace oxcal {

namespace {

void default_warning_handler(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

WarningHandler g_warning_handler = nullptr;

}  // namespace

void set_warning_handler(WarningHandler handler) { g_warning_handler = handler; }

void warn(const std::string& message) {
  if (g_warning_handler != nullptr) {
    g_warning_handler(message);
  } else {
    default_warning_handler(message);
  }
}

const char* to_string(CellState s) {
  switch (s) {
    case CellState::Pristine: return "PRISTINE";
    case CellState::Lrs: return "LRS";
    case CellState::Hrs: return "HRS";
  }
  return "?";
}

const char* to_string(MemOp op) {
  switch (op) {
    case MemOp::Form: return "FORM";
    case MemOp::Set: return "SET";
    case MemOp::Reset: return "RESET";
    case MemOp::Read: return "READ";
  }
  return "?";
}

CellState cell_state_from_string(const std::string& name) {
  if (name == "PRISTINE") return CellState::Pristine;
  if (name == "LRS") return CellState::Lrs;
  if (name == "HRS") return CellState::Hrs;
  throw ConfigError("unknown cell state '" + name + "'");
}

MemOp mem_op_from_string(const std::string& name) {
  if (name == "FORM") return MemOp::Form;
  if (name == "SET") return MemOp::Set;
  if (name == "RESET") return MemOp::Reset;
  if (name == "READ") return MemOp::Read;
  throw ConfigError("unknown operation '" + name + "'");
}

OxRamCell OxRamCell::make(double r_lrs, double r_hrs, CellState state) {
  OxRamCell cell{state, r_lrs, r_hrs};
  validate(cell);
  return cell;
}

double OxRamCell::resistance() const {
  switch (state) {
    case CellState::Lrs: return r_lrs;
    case CellState::Hrs: return r_hrs;
    case CellState::Pristine: break;
  }
  throw DeviceError("pristine cell has no defined resistance state");
}

void validate(const OxRamCell& cell) {
  if (!(cell.r_lrs > 0.0)) throw ConfigError("r_lrs must be positive");
  if (!(cell.r_hrs > cell.r_lrs)) throw ConfigError("r_hrs must exceed r_lrs");
}

void validate(const SelectorModel& sel, double r_hrs) {
  if (!(sel.r_on >= 0.0)) throw ConfigError("selector r_on must be non-negative");
  if (!(sel.g_off >= 0.0)) throw ConfigError("selector g_off must be non-negative");
  const double g_on_weakest = 1.0 / (r_hrs + sel.r_on);
  if (sel.g_off > 0.1 * g_on_weakest) {
    std::ostringstream msg;
    msg << "selector off-leakage " << sel.g_off
        << " S is not small against the HRS on-path conductance "
        << g_on_weakest << " S";
    warn(msg.str());
  }
}

PulseSpec PulseSpec::form() { return {4.0, 1.0, 10e-6, 1e-6}; }
PulseSpec PulseSpec::set() { return {2.4, 1.5, 100e-9, std::nullopt}; }
PulseSpec PulseSpec::reset() { return {-3.0, kGateRail, 100e-9, std::nullopt}; }
PulseSpec PulseSpec::read(double v_read) {
  return {v_read, 3.8, 100e-9, std::nullopt};
}

void validate(const PulseSpec& pulse) {
  if (!(pulse.width > 0.0)) throw ConfigError("pulse width must be positive");
  if (!(pulse.v_gate >= 0.0)) throw ConfigError("gate bias must be non-negative");
  if (pulse.compliance && !(*pulse.compliance >= 0.0)) {
    throw ConfigError("compliance current must be non-negative");
  }
}

PulseSpec pulse_for(MemOp op) {
  switch (op) {
    case MemOp::Form: return PulseSpec::form();
    case MemOp::Set: return PulseSpec::set();
    case MemOp::Reset: return PulseSpec::reset();
    case MemOp::Read: return PulseSpec::read();
  }
  throw ConfigError("unknown operation");
}

PulseKind classify_pulse(const PulseSpec& pulse) {
  if (pulse.v_ts >= 4.0 && pulse.v_ts <= 5.0 && pulse.width >= 10e-6) {
    return PulseKind::Form;
  }
  if (pulse.v_ts >= 2.4 && pulse.v_ts <= 3.0 && pulse.v_gate >= 1.3 &&
      pulse.v_gate <= 1.8) {
    return PulseKind::Set;
  }
  if (pulse.v_ts <= -3.0 && pulse.v_gate >= 3.0) {
    return PulseKind::Reset;
  }
  return PulseKind::None;
}

OxRamCell apply_pulse(const OxRamCell& cell, const PulseSpec& pulse) {
  validate(pulse);
  OxRamCell out = cell;
  switch (classify_pulse(pulse)) {
    case PulseKind::Form:
      if (cell.state != CellState::Pristine) {
        throw DeviceError("FORM rejected: cell is already formed");
      }
      out.state = CellState::Lrs;
      break;
    case PulseKind::Set:
      if (cell.state == CellState::Pristine) {
        throw DeviceError("SET rejected: cell has not been formed");
      }
      out.state = CellState::Lrs;
      break;
    case PulseKind::Reset:
      if (cell.state == CellState::Pristine) {
        throw DeviceError("RESET rejected: cell has not been formed");
      }
      out.state = CellState::Hrs;
      break;
    case PulseKind::None:
      break;
  }
  return out;
}

double cell_path_conductance(const OxRamCell& cell, const SelectorModel& sel,
                             bool gate_on) {
  if (!gate_on) return sel.g_off;
  if (cell.state == CellState::Pristine) return sel.g_off;
  return 1.0 / (cell.resistance() + sel.r_on);
}

double read_current(const OxRamCell& cell, const SelectorModel& sel,
                    double v_read) {
  if (std::abs(v_read) > 1.0) {
    throw DeviceError("read voltage outside the +/-1 V model validity range");
  }
  return v_read * cell_path_conductance(cell, sel, true);
}

void validate(const BodyBiasModel& model) {
  if (!(std::abs(model.eta) < 1.0)) {
    throw ConfigError("body-transconductance ratio eta must satisfy |eta| < 1");
  }
  if (model.eta == 0.0) {
    warn("eta = 0 leaves the calibration port dead");
  }
}

double offset_correction(const BodyBiasModel& model, double v_cal) {
  const double dv = v_cal - model.v_calibref;
  if (std::abs(dv) > 0.5) {
    std::ostringstream msg;
    msg << "calibration voltage " << v_cal
        << " V is outside the +/-0.5 V linearization range around "
        << model.v_calibref << " V";
    warn(msg.str());
  }
  return model.eta * dv;
}

}  // namespace oxcal
