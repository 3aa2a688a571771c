#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "oxcal/caldac.hpp"
#include "oxcal/devices.hpp"

namespace oxcal {

// Per-row pre-synaptic driver: the buffer's sampled random offset, its
// body-bias calibration port, and the live digital codes.
struct RowDriverState {
  double v_os_random = 0.0;  // volts, sampled once at construction
  BodyBiasModel body;
  CalCode cal_code;   // starts at midscale (packed 2048)
  int ipot_code = 0;  // 14-bit bias word; carried and validated, ideal bias
  bool operator==(const RowDriverState&) const = default;
};

// Averaged offset reading. sigma_per_sample is the model noise level, so a
// noiseless measurement reports zero spread.
struct MeasurementResult {
  double mean = 0.0;              // volts
  double sigma_per_sample = 0.0;  // volts
  long long n_samples = 1;
  std::uint64_t seed = 0;

  double standard_error() const;
  bool operator==(const MeasurementResult&) const = default;
};

struct CrossbarParams {
  int rows = 4;
  int cols = 4;
  double r_lrs = 13.7e3;
  double r_hrs = 845.9e3;
  SelectorModel selector;
  LadderSpec ladder;
  double eta = 0.25;
  double v_calibref = 4.5;
  double sigma_os = 1e-3;  // row offset spread, volts
  // Absolute clamp on sampled row offsets (rejection sampling); infinity
  // leaves the Gaussian untruncated.
  double sigma_os_truncate = std::numeric_limits<double>::infinity();
  double integ_cap = 1e-12;      // farads
  double comp_threshold = 1.0;   // volts
};
void validate(const CrossbarParams& params);

struct CellRef {
  int row = 0;
  int col = 0;
};

struct IntegrationResult {
  double v_int = 0.0;
  bool bit = false;
  bool clamped = false;
};

// Per-sample noise loops are mandatory up to this count; above it the
// statistically exact N(0, sigma^2/n) shortcut is allowed.
inline constexpr long long kPerSampleLimit = 10000;

// N x n 1T1R array with one offset-afflicted read buffer per row. All
// randomness flows from the construction seed plus explicit per-measurement
// seeds; a given instance is deterministic and single-threaded, distinct
// instances are independent.
class Crossbar {
 public:
  Crossbar(const CrossbarParams& params, std::uint64_t seed);

  int rows() const { return params_.rows; }
  int cols() const { return params_.cols; }
  std::uint64_t seed() const { return seed_; }
  const CrossbarParams& params() const { return params_; }

  const OxRamCell& cell(int row, int col) const;
  const RowDriverState& driver(int row) const;
  void set_cal_code(int row, const CalCode& code);
  void set_ipot_code(int row, int ipot_code);
  void set_row_offset(int row, double v_os);  // overrides the sampled offset
  void set_cell_state(int row, int col, CellState state);

  // Effective input-referred offset: sampled offset plus the body-bias
  // correction at the row's current calibration code.
  double v_os_eff(int row) const;

  // Applies the canonical pulse for op to exactly cell (row, col), its gate
  // on and every other gate off. READ returns the column current.
  std::optional<double> target_cell_op(int row, int col, MemOp op);

  // I_col = sum over rows of v_row * g_path. Selected rows drive
  // v_read + v_os_eff through the on-path; unselected rows sit at their own
  // offset and leak through g_off.
  double column_current(int col, double v_read,
                        const std::vector<int>& selected_rows) const;

  // Ideal integrator (v = I*T/C, clamped and flagged above the 5 V rail)
  // followed by a strict comparator.
  IntegrationResult integrate_and_compare(int col, double current,
                                          double pulse_width) const;

  // Averaged offset measurement: v_os_eff plus the mean of n_samples white
  // Gaussian noise draws. Loops per sample up to kPerSampleLimit (or when
  // forced); above that it draws the mean directly from N(0, sigma^2/n).
  MeasurementResult measure_row_offset(int row, long long n_samples,
                                       double noise_sigma, std::uint64_t seed,
                                       bool force_per_sample = false) const;

  // Static read power at nominal v_read (offsets ignored): sum of
  // v_read^2 * g_path over the selected cells, gates on.
  double read_power(const std::vector<CellRef>& cells, double v_read) const;

 private:
  void check_row(int row) const;
  void check_col(int col) const;

  CrossbarParams params_;
  std::uint64_t seed_ = 0;
  std::vector<OxRamCell> cells_;  // row-major
  std::vector<RowDriverState> drivers_;
};

}  // namespace oxcal
