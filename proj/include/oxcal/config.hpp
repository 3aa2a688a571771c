#pragma once

#include <cstdint>
#include <string>

#include "oxcal/crossbar.hpp"

namespace oxcal {

// Global experiment configuration. Defaults reproduce the reference
// operating point: 4x4 array, V_ref = 4.5 V, V_d = 15 mV, Calibref = 4.5 V,
// a 50 kOhm LRS read path, 200 uV read noise and 1e6-sample averaging.
struct ExperimentConfig {
  int rows = 4;
  int cols = 4;
  double r_lrs = 13.7e3;
  double r_hrs = 845.9e3;
  double r_on = 36.3e3;
  double g_off = 1e-9;
  double v_ref = 4.5;
  double v_d = 15e-3;
  double v_calibref = 4.5;
  double eta = 0.25;
  double sigma_os = 1e-3;
  double noise_sigma = 200e-6;
  long long n_samples = 1000000;
  std::uint64_t seed = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

void validate(const ExperimentConfig& config);

// Strict JSON loader: every key must be one of the ExperimentConfig fields,
// unknown keys are rejected.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string config_json_text(const ExperimentConfig& config);

CrossbarParams make_params(const ExperimentConfig& config);

}  // namespace oxcal
