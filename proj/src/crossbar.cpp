#include "oxcal/crossbar.hpp"

#include <cmath>
#include <string>

#include "oxcal/rng.hpp"

namespace oxcal {

namespace {

// Stream tag separating offset sampling from measurement noise streams.
constexpr std::uint64_t kOffsetStream = 0xA110C8ED0FF5E75ULL;

}  // namespace

double MeasurementResult::standard_error() const {
  return sigma_per_sample / std::sqrt(static_cast<double>(n_samples));
}

void validate(const CrossbarParams& params) {
  if (params.rows < 1 || params.cols < 1) {
    throw ConfigError("crossbar dimensions must be at least 1x1");
  }
  validate(OxRamCell{CellState::Pristine, params.r_lrs, params.r_hrs});
  validate(params.selector, params.r_hrs);
  validate(params.ladder);
  validate(BodyBiasModel{params.eta, params.v_calibref});
  if (!(params.sigma_os >= 0.0)) {
    throw ConfigError("sigma_os must be non-negative");
  }
  if (!(params.sigma_os_truncate > 0.0)) {
    throw ConfigError("sigma_os_truncate must be positive");
  }
  if (!(params.integ_cap > 0.0)) {
    throw ConfigError("integrator capacitance must be positive");
  }
}

Crossbar::Crossbar(const CrossbarParams& params, std::uint64_t seed)
    : params_(params), seed_(seed) {
  validate(params_);
  cells_.assign(static_cast<std::size_t>(params_.rows) * params_.cols,
                OxRamCell::make(params_.r_lrs, params_.r_hrs));
  drivers_.resize(params_.rows);
  Rng rng(derive_seed(seed, kOffsetStream));
  for (auto& driver : drivers_) {
    if (params_.sigma_os > 0.0) {
      driver.v_os_random =
          std::isfinite(params_.sigma_os_truncate)
              ? rng.normal_truncated(params_.sigma_os, params_.sigma_os_truncate)
              : rng.normal(params_.sigma_os);
    }
    driver.body = BodyBiasModel{params_.eta, params_.v_calibref};
    driver.cal_code = CalCode::from_packed(kCalCodeCount / 2);
    driver.ipot_code = 0;
  }
}

void Crossbar::check_row(int row) const {
  if (row < 0 || row >= params_.rows) {
    throw ConfigError("row index " + std::to_string(row) + " out of range");
  }
}

void Crossbar::check_col(int col) const {
  if (col < 0 || col >= params_.cols) {
    throw ConfigError("column index " + std::to_string(col) + " out of range");
  }
}

const OxRamCell& Crossbar::cell(int row, int col) const {
  check_row(row);
  check_col(col);
  return cells_[static_cast<std::size_t>(row) * params_.cols + col];
}

const RowDriverState& Crossbar::driver(int row) const {
  check_row(row);
  return drivers_[row];
}

void Crossbar::set_cal_code(int row, const CalCode& code) {
  check_row(row);
  validate(code);
  drivers_[row].cal_code = code;
}

void Crossbar::set_ipot_code(int row, int ipot_code) {
  check_row(row);
  if (ipot_code < 0 || ipot_code > 0x3FFF) {
    throw ConfigError("I-pot code must fit in 14 bits");
  }
  drivers_[row].ipot_code = ipot_code;
}

void Crossbar::set_row_offset(int row, double v_os) {
  check_row(row);
  drivers_[row].v_os_random = v_os;
}

void Crossbar::set_cell_state(int row, int col, CellState state) {
  check_row(row);
  check_col(col);
  cells_[static_cast<std::size_t>(row) * params_.cols + col].state = state;
}

double Crossbar::v_os_eff(int row) const {
  check_row(row);
  const RowDriverState& d = drivers_[row];
  return d.v_os_random +
         offset_correction(d.body, dac_output(d.cal_code, params_.ladder));
}

std::optional<double> Crossbar::target_cell_op(int row, int col, MemOp op) {
  check_row(row);
  check_col(col);
  OxRamCell& cell = cells_[static_cast<std::size_t>(row) * params_.cols + col];
  const PulseSpec pulse = pulse_for(op);
  cell = apply_pulse(cell, pulse);
  if (op == MemOp::Read) {
    return column_current(col, pulse.v_ts, {row});
  }
  return std::nullopt;
}

double Crossbar::column_current(int col, double v_read,
                                const std::vector<int>& selected_rows) const {
  check_col(col);
  std::vector<char> selected(params_.rows, 0);
  for (int row : selected_rows) {
    check_row(row);
    selected[row] = 1;
  }
  double current = 0.0;
  for (int row = 0; row < params_.rows; ++row) {
    const OxRamCell& cell =
        cells_[static_cast<std::size_t>(row) * params_.cols + col];
    const bool gate_on = selected[row] != 0;
    const double g = cell_path_conductance(cell, params_.selector, gate_on);
    const double v = gate_on ? v_read + v_os_eff(row) : v_os_eff(row);
    current += v * g;
  }
  return current;
}

IntegrationResult Crossbar::integrate_and_compare(int col, double current,
                                                  double pulse_width) const {
  check_col(col);
  if (!(pulse_width > 0.0)) {
    throw ConfigError("integration pulse width must be positive");
  }
  IntegrationResult result;
  result.v_int = current * pulse_width / params_.integ_cap;
  if (result.v_int > kIntegratorRail) {
    result.v_int = kIntegratorRail;
    result.clamped = true;
  }
  result.bit = result.v_int > params_.comp_threshold;
  return result;
}

MeasurementResult Crossbar::measure_row_offset(int row, long long n_samples,
                                               double noise_sigma,
                                               std::uint64_t seed,
                                               bool force_per_sample) const {
  check_row(row);
  if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise sigma must be non-negative");

  const double truth = v_os_eff(row);
  double noise_mean = 0.0;
  if (noise_sigma > 0.0) {
    Rng rng(seed);
    if (n_samples <= kPerSampleLimit || force_per_sample) {
      double acc = 0.0;
      for (long long i = 0; i < n_samples; ++i) acc += rng.normal(noise_sigma);
      noise_mean = acc / static_cast<double>(n_samples);
    } else {
      // Mean of n i.i.d. Gaussians is itself Gaussian; drawing it directly
      // is statistically exact.
      noise_mean = rng.normal(noise_sigma / std::sqrt(static_cast<double>(n_samples)));
    }
  }
  return {truth + noise_mean, noise_sigma, n_samples, seed};
}

double Crossbar::read_power(const std::vector<CellRef>& cells,
                            double v_read) const {
  double power = 0.0;
  for (const CellRef& ref : cells) {
    const OxRamCell& c = cell(ref.row, ref.col);
    if (c.state == CellState::Pristine) {
      throw DeviceError("read power requested on unformed cell (" +
                        std::to_string(ref.row) + "," + std::to_string(ref.col) +
                        ")");
    }
    power += v_read * v_read * cell_path_conductance(c, params_.selector, true);
  }
  return power;
}

}  // namespace oxcal
