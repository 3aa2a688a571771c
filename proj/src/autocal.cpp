#include "oxcal/autocal.hpp"

#include <cmath>
#include <cstdlib>

#include "oxcal/rng.hpp"

namespace oxcal {

namespace {

// Index of the point with the smallest |mean|; ties go to the lower code.
int argmin_abs_mean(const SweepRecord& record) {
  int best = 0;
  double best_abs = std::abs(record.points[0].meas.mean);
  for (std::size_t k = 1; k < record.points.size(); ++k) {
    const double a = std::abs(record.points[k].meas.mean);
    if (a < best_abs) {
      best_abs = a;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace

std::optional<Bracket> find_zero_crossing(const SweepRecord& record) {
  const auto& pts = record.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double mean = pts[k].meas.mean;
    if (mean == 0.0) return Bracket{static_cast<int>(k), static_cast<int>(k)};
    if (k + 1 < pts.size()) {
      const double next = pts[k + 1].meas.mean;
      if (next == 0.0) continue;  // picked up as a degenerate bracket at k+1
      if ((mean < 0.0) != (next < 0.0)) {
        return Bracket{static_cast<int>(k), static_cast<int>(k) + 1};
      }
    }
  }
  return std::nullopt;
}

SweepRecord sweep_stage(Crossbar& xbar, int row, int stage,
                        const CalCode& fixed_prefix, long long n_samples,
                        double noise_sigma, std::uint64_t seed,
                        bool exact_sampling) {
  if (stage < 1 || stage > 3) {
    throw ConfigError("calibration stage must be 1, 2 or 3");
  }
  SweepRecord record;
  record.stage = stage;
  // Higher-stage fields come from the prefix; unswept lower-stage fields are
  // parked at the segment midpoint.
  switch (stage) {
    case 1: record.fixed = CalCode{0, 8, 8}; break;
    case 2: record.fixed = CalCode{fixed_prefix.coarse, 0, 8}; break;
    case 3: record.fixed = CalCode{fixed_prefix.coarse, fixed_prefix.fine, 0}; break;
  }
  validate(record.fixed);

  const CalCode saved = xbar.driver(row).cal_code;
  record.points.reserve(LadderSpec::taps_per_stage);
  for (int k = 0; k < LadderSpec::taps_per_stage; ++k) {
    CalCode code = record.fixed;
    switch (stage) {
      case 1: code.coarse = k; break;
      case 2: code.fine = k; break;
      case 3: code.finer = k; break;
    }
    xbar.set_cal_code(row, code);
    const MeasurementResult meas = xbar.measure_row_offset(
        row, n_samples, noise_sigma, derive_seed(seed, static_cast<std::uint64_t>(k)),
        exact_sampling);
    record.points.push_back({k, meas});
  }
  xbar.set_cal_code(row, saved);
  return record;
}

CalResult calibrate_row(Crossbar& xbar, int row, long long n_samples,
                        double noise_sigma, std::uint64_t seed,
                        bool exact_sampling) {
  CalResult result;
  std::uint64_t stream = 0;
  const auto next_seed = [&] { return derive_seed(seed, stream++); };
  const auto sweep = [&](int stage, const CalCode& prefix) {
    return sweep_stage(xbar, row, stage, prefix, n_samples, noise_sigma,
                       next_seed(), exact_sampling);
  };

  // Stage 1: bracket the crossing over the coarse codes.
  const SweepRecord s1 = sweep(1, CalCode{});
  result.sweeps.push_back(s1);
  const auto b1 = find_zero_crossing(s1);
  if (!b1) {
    // Offset is beyond the calibration range: park at the extreme nearer to
    // zero and report the clamped residual.
    const bool low_end = std::abs(s1.points.front().meas.mean) <=
                         std::abs(s1.points.back().meas.mean);
    const CalCode extreme = CalCode::from_packed(low_end ? 0 : kCalCodeCount - 1);
    xbar.set_cal_code(row, extreme);
    const MeasurementResult meas =
        xbar.measure_row_offset(row, n_samples, noise_sigma, next_seed(),
                                exact_sampling);
    result.best_code = extreme;
    result.residual = meas.mean;
    result.bracketed = false;
    return result;
  }
  result.bracketed = true;
  int coarse = b1->lo;

  // Stage 2: refine within segment `coarse`. A crossing just above the
  // segment's top fine tap lands in the next segment; retry it once.
  SweepRecord s2 = sweep(2, CalCode{coarse, 0, 0});
  result.sweeps.push_back(s2);
  auto b2 = find_zero_crossing(s2);
  int fine = 0;
  if (!b2 && coarse + 1 < LadderSpec::taps_per_stage) {
    const SweepRecord s2b = sweep(2, CalCode{coarse + 1, 0, 0});
    result.sweeps.push_back(s2b);
    const auto b2b = find_zero_crossing(s2b);
    if (b2b) {
      coarse += 1;
      s2 = s2b;
      b2 = b2b;
    } else {
      // No sign change in either segment (crossing sits in the gap between
      // their tap grids): fall back to the measured point nearest zero.
      const int ka = argmin_abs_mean(s2);
      const int kb = argmin_abs_mean(s2b);
      const double ma = std::abs(s2.points[ka].meas.mean);
      const double mb = std::abs(s2b.points[kb].meas.mean);
      if (mb < ma) {
        coarse += 1;
        fine = kb;
      } else {
        fine = ka;  // ties resolve to the lower code
      }
    }
  } else if (!b2) {
    fine = argmin_abs_mean(s2);
  }
  if (b2) fine = b2->lo;

  // Stage 3: smallest |mean| over the finer taps of segment (coarse, fine).
  const SweepRecord s3 = sweep(3, CalCode{coarse, fine, 0});
  result.sweeps.push_back(s3);
  int best = argmin_abs_mean(s3);
  CalCode best_code{coarse, fine, best};
  double best_abs = std::abs(s3.points[best].meas.mean);
  result.residual = s3.points[best].meas.mean;

  // A minimum on a sweep edge can hide a smaller value just across the
  // segment boundary; extend the search into the adjacent segment once.
  if (best == 0 || best == LadderSpec::taps_per_stage - 1) {
    const int segment_base = best_code.packed() & ~0xF;
    const int adjacent_base = best == 0 ? segment_base - LadderSpec::taps_per_stage
                                        : segment_base + LadderSpec::taps_per_stage;
    if (adjacent_base >= 0 && adjacent_base < kCalCodeCount) {
      const CalCode adjacent = CalCode::from_packed(adjacent_base);
      const SweepRecord s3b = sweep(3, adjacent);
      result.sweeps.push_back(s3b);
      const int kb = argmin_abs_mean(s3b);
      const double ab = std::abs(s3b.points[kb].meas.mean);
      CalCode code_b{adjacent.coarse, adjacent.fine, kb};
      if (ab < best_abs ||
          (ab == best_abs && code_b.packed() < best_code.packed())) {
        best_code = code_b;
        best_abs = ab;
        result.residual = s3b.points[kb].meas.mean;
      }
    }
  }

  result.best_code = best_code;
  xbar.set_cal_code(row, best_code);
  return result;
}

}  // namespace oxcal
