#pragma once

#include <optional>
#include <vector>

#include "oxcal/crossbar.hpp"

namespace oxcal {

struct SweepPoint {
  int code = 0;  // swept field value, 0..15
  MeasurementResult meas;
  bool operator==(const SweepPoint&) const = default;
};

// One 16-point sweep of a single calibration stage. fixed holds the code
// template with the swept field zeroed; unswept lower-stage fields are
// parked at 8 (segment midpoint) and higher fields come from the caller.
struct SweepRecord {
  int stage = 1;  // 1 coarse, 2 fine, 3 finer
  CalCode fixed;
  std::vector<SweepPoint> points;
  bool operator==(const SweepRecord&) const = default;
};

// Adjacent pair of sweep indices whose means straddle zero; lo == hi marks a
// point that measured exactly zero.
struct Bracket {
  int lo = 0;
  int hi = 0;
  bool operator==(const Bracket&) const = default;
};

// First adjacent pair with strictly opposite signs, scanning left to right;
// an exact zero wins as a degenerate bracket. nullopt when every mean shares
// one sign.
std::optional<Bracket> find_zero_crossing(const SweepRecord& record);

SweepRecord sweep_stage(Crossbar& xbar, int row, int stage,
                        const CalCode& fixed_prefix, long long n_samples,
                        double noise_sigma, std::uint64_t seed,
                        bool exact_sampling = false);

struct CalResult {
  CalCode best_code;
  double residual = 0.0;  // measured mean at best_code, volts
  bool bracketed = false;
  // The three stage sweeps in order, plus any boundary-retry sweeps that ran.
  std::vector<SweepRecord> sweeps;
  bool operator==(const CalResult&) const = default;
};

// Three-stage zero-crossing search. Stage 1 brackets the crossing over the
// coarse codes; stage 2 refines within that segment (retrying the next
// segment once when the crossing falls in its top sliver); stage 3 picks the
// finer code with the smallest |mean|, extending once into the adjacent
// segment when the minimum lands on a sweep edge. When stage 1 never changes
// sign the offset is out of range: the row is parked at the nearest extreme
// code with bracketed = false. The row's calibration code is left at
// best_code.
CalResult calibrate_row(Crossbar& xbar, int row, long long n_samples,
                        double noise_sigma, std::uint64_t seed,
                        bool exact_sampling = false);

}  // namespace oxcal
