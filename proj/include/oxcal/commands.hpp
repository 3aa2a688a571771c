#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oxcal/autocal.hpp"
#include "oxcal/config.hpp"
#include "oxcal/protocol.hpp"

namespace oxcal {

struct OutputOptions {
  bool exact_sampling = false;  // force per-sample noise loops
  bool with_timestamp = true;   // JSON reports carry a generated_at field
};

// 16-row CSV of one calibration sweep:
// stage,code,v_cal_volts,mean_offset_volts,stderr_volts,n_samples,seed
void cmd_sweep(const ExperimentConfig& config, int row, int stage,
               const CalCode& fixed_prefix, std::ostream& out,
               const OutputOptions& opts = {});

// JSON report of a full three-stage calibration of one row.
void cmd_autocal(const ExperimentConfig& config, int row, std::ostream& out,
                 const OutputOptions& opts = {});

// Residual magnitudes of a Monte Carlo calibration campaign over independent
// seeded states. truncate_frac clamps sampled offsets to that fraction of
// the correctable range |eta|*v_d (<= 0 disables truncation). threads <= 0
// picks the hardware concurrency.
std::vector<double> run_montecarlo(const ExperimentConfig& config, int trials,
                                   int row, double truncate_frac, int threads,
                                   const OutputOptions& opts = {});

void cmd_montecarlo(const ExperimentConfig& config, int trials, int row,
                    double truncate_frac, int threads, std::ostream& out,
                    const OutputOptions& opts = {});

// Selection grammar: "all", or semicolon-separated "row,col[:STATE]" items
// with STATE in {LRS, HRS, PRISTINE} (default LRS). Cells are brought to the
// requested state through the normal pulse path before measuring.
void cmd_power(const ExperimentConfig& config, double v_read_mv,
               const std::string& selection, std::ostream& out,
               const OutputOptions& opts = {});

// Single-cell FORM/SET/RESET/READ. preset_state prepares the target cell
// (through pulses) before the operation.
void cmd_pulse(const ExperimentConfig& config, MemOp op, int row, int col,
               CellState preset_state, std::ostream& out,
               const OutputOptions& opts = {});

// Frame JSON <-> bitstring files. The bitstring is one line of '0'/'1'
// characters, leftmost bit shifted first; whitespace is ignored on input.
void cmd_frame_encode(std::istream& in, std::ostream& out);
void cmd_frame_decode(std::istream& in, std::optional<int> n_rows,
                      std::ostream& out);

}  // namespace oxcal
