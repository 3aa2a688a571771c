#pragma once

#include <compare>

#include "oxcal/errors.hpp"

namespace oxcal {

inline constexpr int kCalCodeCount = 4096;

// 12-bit calibration word, split 4/4/4 across the coarse/fine/finer ladder
// stages. Packs as coarse<<8 | fine<<4 | finer.
struct CalCode {
  int coarse = 0;
  int fine = 0;
  int finer = 0;

  static CalCode from_packed(int packed);
  int packed() const { return (coarse << 8) | (fine << 4) | finer; }
  auto operator<=>(const CalCode&) const = default;
};
void validate(const CalCode& code);

// Three-stage cascaded resistor ladder spanning [v_ref - v_d, v_ref + v_d).
// Each stage subdivides one segment of the previous stage into 16 taps; the
// ladder is ideal (unloaded, zero switch resistance).
struct LadderSpec {
  double v_ref = 4.5;
  double v_d = 15e-3;
  static constexpr int taps_per_stage = 16;
  bool operator==(const LadderSpec&) const = default;
};
void validate(const LadderSpec& spec);

struct StepSizes {
  double coarse;  // 2*v_d/16
  double fine;    // 2*v_d/256
  double finer;   // 2*v_d/4096
};
StepSizes dac_step_sizes(const LadderSpec& spec);

// Tap voltage for a code: (v_ref - v_d) + coarse*D1 + fine*D2 + finer*D3.
// Computed as base + packed*D3, which is the same sum and keeps adjacent
// codes exactly one finer step apart across the whole range.
double dac_output(const CalCode& code, const LadderSpec& spec);

}  // namespace oxcal
