// oxcal command-line front end: sweep/autocal/montecarlo experiment runner,
// read-power estimation, single-cell pulses and the control-frame codec.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oxcal/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitDevice = 4;

struct GlobalArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  oxcal::OutputOptions opts;
};

oxcal::ExperimentConfig resolve_config(const GlobalArgs& args) {
  oxcal::ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = oxcal::load_config_file(args.config_path);
  }
  if (args.seed) config.seed = *args.seed;
  oxcal::validate(config);
  return config;
}

// Runs fn against --out (or stdout) and maps failures to the documented exit
// codes.
template <typename Fn>
int run_with_output(const GlobalArgs& args, Fn&& fn) {
  try {
    if (args.out_path.empty()) {
      fn(std::cout);
    } else {
      std::ofstream out(args.out_path);
      if (!out) {
        throw oxcal::ConfigError("cannot open output file '" + args.out_path + "'");
      }
      fn(out);
    }
    return kExitOk;
  } catch (const oxcal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oxcal::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const oxcal::DeviceError& e) {
    std::cerr << "device error: " << e.what() << "\n";
    return kExitDevice;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral simulator of an OxRAM 1T1R crossbar with "
               "three-stage row offset calibration"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs args;
  app.add_option("--config", args.config_path, "JSON experiment config");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the config seed");
  app.add_option("--out", args.out_path, "Output file (default: stdout)");
  app.add_flag("--exact-sampling", args.opts.exact_sampling,
               "Force per-sample noise loops instead of the averaged draw");
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp,
               "Omit the generated_at field from JSON reports");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "One 16-point calibration sweep as CSV");
  sweep->fallthrough();
  int sweep_row = 0, sweep_stage = 1, sweep_coarse = -1, sweep_fine = -1;
  sweep->add_option("--row", sweep_row, "Row to sweep")->capture_default_str();
  sweep->add_option("--stage", sweep_stage, "Calibration stage (1, 2 or 3)")
      ->check(CLI::Range(1, 3))->capture_default_str();
  sweep->add_option("--coarse", sweep_coarse, "Coarse prefix (stages 2 and 3)")
      ->check(CLI::Range(0, 15));
  sweep->add_option("--fine", sweep_fine, "Fine prefix (stage 3)")
      ->check(CLI::Range(0, 15));

  // autocal
  auto* autocal = app.add_subcommand("autocal", "Three-stage calibration of one row (JSON)");
  autocal->fallthrough();
  int autocal_row = 0;
  autocal->add_option("--row", autocal_row, "Row to calibrate")->capture_default_str();

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo", "Residual statistics over seeded trials (JSON)");
  mc->fallthrough();
  int mc_trials = 500, mc_row = 0, mc_threads = 0;
  double mc_truncate = 0.9;
  mc->add_option("--trials", mc_trials, "Number of trials")->capture_default_str();
  mc->add_option("--row", mc_row, "Row to calibrate per trial")->capture_default_str();
  mc->add_option("--truncate", mc_truncate,
                 "Clamp sampled offsets to this fraction of the correctable "
                 "range |eta|*v_d (<= 0 disables)")->capture_default_str();
  mc->add_option("--threads", mc_threads, "Worker threads (0 = auto)")->capture_default_str();

  // power
  auto* power = app.add_subcommand("power", "Static read power of selected cells (JSON)");
  power->fallthrough();
  double power_mv = 50.0;
  std::string power_selection = "all";
  power->add_option("--v-read-mv", power_mv, "Read voltage in millivolts")->capture_default_str();
  power->add_option("--selection", power_selection,
                    "'all' or 'row,col[:STATE];...' with STATE in LRS/HRS/PRISTINE")
      ->capture_default_str();

  // pulse
  auto* pulse = app.add_subcommand("pulse", "Single-cell FORM/SET/RESET/READ (JSON)");
  pulse->fallthrough();
  std::string pulse_op = "READ", pulse_state;
  int pulse_row = 0, pulse_col = 0;
  pulse->add_option("--op", pulse_op, "FORM, SET, RESET or READ")->required();
  pulse->add_option("--row", pulse_row, "Target row")->capture_default_str();
  pulse->add_option("--col", pulse_col, "Target column")->capture_default_str();
  pulse->add_option("--state", pulse_state,
                    "Preset state of the target cell before the operation "
                    "(default: PRISTINE for FORM, LRS otherwise)");

  // frame encode/decode
  auto* frame = app.add_subcommand("frame", "Control-frame codec");
  frame->require_subcommand(1);
  frame->fallthrough();
  auto* fenc = frame->add_subcommand("encode", "Frame JSON -> bitstring");
  fenc->fallthrough();
  auto* fdec = frame->add_subcommand("decode", "Bitstring -> frame JSON");
  fdec->fallthrough();
  std::string frame_in;
  int frame_rows = 0;
  fenc->add_option("--in", frame_in, "Input file (default: stdin)");
  fdec->add_option("--in", frame_in, "Input file (default: stdin)");
  auto* rows_opt = fdec->add_option("--rows", frame_rows, "Row count (default: inferred)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  if (seed_opt->count() > 0) args.seed = seed_value;
  args.opts.with_timestamp = !no_timestamp;

  const auto with_input = [&](auto&& fn, std::ostream& out) {
    if (frame_in.empty()) {
      fn(std::cin, out);
    } else {
      std::ifstream in(frame_in);
      if (!in) {
        throw oxcal::ConfigError("cannot open input file '" + frame_in + "'");
      }
      fn(in, out);
    }
  };

  if (sweep->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      const auto config = resolve_config(args);
      oxcal::CalCode prefix{0, 0, 0};
      if (sweep_stage >= 2) {
        if (sweep_coarse < 0) {
          throw oxcal::ConfigError("--coarse is required for stages 2 and 3");
        }
        prefix.coarse = sweep_coarse;
      }
      if (sweep_stage == 3) {
        if (sweep_fine < 0) {
          throw oxcal::ConfigError("--fine is required for stage 3");
        }
        prefix.fine = sweep_fine;
      }
      oxcal::cmd_sweep(config, sweep_row, sweep_stage, prefix, out, args.opts);
    });
  }
  if (autocal->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      oxcal::cmd_autocal(resolve_config(args), autocal_row, out, args.opts);
    });
  }
  if (mc->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      oxcal::cmd_montecarlo(resolve_config(args), mc_trials, mc_row,
                            mc_truncate, mc_threads, out, args.opts);
    });
  }
  if (power->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      oxcal::cmd_power(resolve_config(args), power_mv, power_selection, out,
                       args.opts);
    });
  }
  if (pulse->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      const auto config = resolve_config(args);
      const oxcal::MemOp op = oxcal::mem_op_from_string(pulse_op);
      const oxcal::CellState preset =
          pulse_state.empty()
              ? (op == oxcal::MemOp::Form ? oxcal::CellState::Pristine
                                          : oxcal::CellState::Lrs)
              : oxcal::cell_state_from_string(pulse_state);
      oxcal::cmd_pulse(config, op, pulse_row, pulse_col, preset, out, args.opts);
    });
  }
  if (frame->parsed()) {
    return run_with_output(args, [&](std::ostream& out) {
      if (fenc->parsed()) {
        with_input([&](std::istream& in, std::ostream& o) {
          oxcal::cmd_frame_encode(in, o);
        }, out);
      } else {
        std::optional<int> rows;
        if (rows_opt->count() > 0) rows = frame_rows;
        with_input([&](std::istream& in, std::ostream& o) {
          oxcal::cmd_frame_decode(in, rows, o);
        }, out);
      }
    });
  }
  return kExitOther;
}
