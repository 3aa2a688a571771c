#include "oxcal/caldac.hpp"

namespace oxcal {

namespace {

void check_field(int value, const char* name) {
  if (value < 0 || value > 15) {
    throw ConfigError(std::string("calibration field '") + name +
                      "' must be in [0, 15]");
  }
}

}  // namespace

CalCode CalCode::from_packed(int packed) {
  if (packed < 0 || packed >= kCalCodeCount) {
    throw ConfigError("packed calibration code must be in [0, 4095]");
  }
  return {(packed >> 8) & 0xF, (packed >> 4) & 0xF, packed & 0xF};
}

void validate(const CalCode& code) {
  check_field(code.coarse, "coarse");
  check_field(code.fine, "fine");
  check_field(code.finer, "finer");
}

void validate(const LadderSpec& spec) {
  if (!(spec.v_d >= 0.0)) {
    throw ConfigError("ladder differential voltage v_d must be non-negative");
  }
}

StepSizes dac_step_sizes(const LadderSpec& spec) {
  validate(spec);
  const double span = 2.0 * spec.v_d;
  return {span / 16.0, span / 256.0, span / 4096.0};
}

double dac_output(const CalCode& code, const LadderSpec& spec) {
  validate(code);
  validate(spec);
  const double step_finer = 2.0 * spec.v_d / 4096.0;
  return (spec.v_ref - spec.v_d) +
         static_cast<double>(code.packed()) * step_finer;
}

}  // namespace oxcal
