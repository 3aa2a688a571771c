#include "oxcal/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "oxcal/rng.hpp"

namespace oxcal {

namespace {

using nlohmann::json;

// Stream tags decorrelating the different per-command RNG uses.
constexpr std::uint64_t kSweepStream = 0x53574545ULL;
constexpr std::uint64_t kAutocalStream = 0x4175746FULL;
constexpr std::uint64_t kTrialStateStream = 0x4D435354ULL;
constexpr std::uint64_t kTrialCalStream = 0x4D43434CULL;

std::string fmt_volts(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CalCode point_code(const SweepRecord& record, int k) {
  CalCode code = record.fixed;
  switch (record.stage) {
    case 1: code.coarse = k; break;
    case 2: code.fine = k; break;
    case 3: code.finer = k; break;
  }
  return code;
}

json sweep_to_json(const SweepRecord& record, const LadderSpec& ladder) {
  json points = json::array();
  for (const SweepPoint& p : record.points) {
    points.push_back({{"code", p.code},
                      {"v_cal_volts", dac_output(point_code(record, p.code), ladder)},
                      {"mean_volts", p.meas.mean},
                      {"stderr_volts", p.meas.standard_error()},
                      {"n_samples", p.meas.n_samples},
                      {"seed", p.meas.seed}});
  }
  return {{"stage", record.stage},
          {"fixed", {{"coarse", record.fixed.coarse},
                     {"fine", record.fixed.fine},
                     {"finer", record.fixed.finer}}},
          {"points", points}};
}

json code_to_json(const CalCode& code) {
  return {{"coarse", code.coarse},
          {"fine", code.fine},
          {"finer", code.finer},
          {"packed", code.packed()}};
}

double percentile_nearest_rank(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return values[rank - 1];
}

struct SelectionItem {
  CellRef ref;
  CellState state = CellState::Lrs;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<SelectionItem> parse_selection(const std::string& selection,
                                           int rows, int cols) {
  std::vector<SelectionItem> items;
  const std::string text = trim(selection);
  if (text == "all") {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) items.push_back({{r, c}, CellState::Lrs});
    }
    return items;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string::npos) stop = text.size();
    const std::string item = trim(text.substr(start, stop - start));
    start = stop + 1;
    if (item.empty()) {
      if (start > text.size()) break;
      throw ConfigError("empty item in selection '" + selection + "'");
    }
    SelectionItem out;
    std::string coords = item;
    const std::size_t colon = item.find(':');
    if (colon != std::string::npos) {
      coords = trim(item.substr(0, colon));
      out.state = cell_state_from_string(trim(item.substr(colon + 1)));
    }
    const std::size_t comma = coords.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("selection item '" + item + "' is not 'row,col[:STATE]'");
    }
    try {
      std::size_t used = 0;
      const std::string r_text = trim(coords.substr(0, comma));
      const std::string c_text = trim(coords.substr(comma + 1));
      out.ref.row = std::stoi(r_text, &used);
      if (used != r_text.size()) throw std::invalid_argument(r_text);
      out.ref.col = std::stoi(c_text, &used);
      if (used != c_text.size()) throw std::invalid_argument(c_text);
    } catch (const std::exception&) {
      throw ConfigError("selection item '" + item + "' is not 'row,col[:STATE]'");
    }
    items.push_back(out);
  }
  if (items.empty() && text != "") {
    throw ConfigError("selection '" + selection + "' is empty");
  }
  return items;
}

// Brings a pristine cell to the requested state through the normal pulse
// path.
void prepare_cell(Crossbar& xbar, int row, int col, CellState state) {
  switch (state) {
    case CellState::Pristine:
      break;
    case CellState::Lrs:
      xbar.target_cell_op(row, col, MemOp::Form);
      break;
    case CellState::Hrs:
      xbar.target_cell_op(row, col, MemOp::Form);
      xbar.target_cell_op(row, col, MemOp::Reset);
      break;
  }
}

void emit_json(const json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

}  // namespace

void cmd_sweep(const ExperimentConfig& config, int row, int stage,
               const CalCode& fixed_prefix, std::ostream& out,
               const OutputOptions& opts) {
  validate(config);
  Crossbar xbar(make_params(config), config.seed);
  const SweepRecord record =
      sweep_stage(xbar, row, stage, fixed_prefix, config.n_samples,
                  config.noise_sigma, derive_seed(config.seed, kSweepStream),
                  opts.exact_sampling);
  out << "stage,code,v_cal_volts,mean_offset_volts,stderr_volts,n_samples,seed\n";
  for (const SweepPoint& p : record.points) {
    const double v_cal = dac_output(point_code(record, p.code), xbar.params().ladder);
    out << record.stage << ',' << p.code << ',' << fmt_volts(v_cal) << ','
        << fmt_volts(p.meas.mean) << ',' << fmt_volts(p.meas.standard_error())
        << ',' << p.meas.n_samples << ',' << p.meas.seed << "\n";
  }
}

void cmd_autocal(const ExperimentConfig& config, int row, std::ostream& out,
                 const OutputOptions& opts) {
  validate(config);
  Crossbar xbar(make_params(config), config.seed);
  const CalResult result =
      calibrate_row(xbar, row, config.n_samples, config.noise_sigma,
                    derive_seed(config.seed, kAutocalStream),
                    opts.exact_sampling);
  json j;
  if (opts.with_timestamp) j["generated_at"] = utc_timestamp();
  j["row"] = row;
  j["seed"] = config.seed;
  j["n_samples"] = config.n_samples;
  j["noise_sigma_volts"] = config.noise_sigma;
  j["best_code"] = code_to_json(result.best_code);
  j["best_v_cal_volts"] = dac_output(result.best_code, xbar.params().ladder);
  j["residual_volts"] = result.residual;
  j["bracketed"] = result.bracketed;
  json sweeps = json::array();
  for (const SweepRecord& s : result.sweeps) {
    sweeps.push_back(sweep_to_json(s, xbar.params().ladder));
  }
  j["sweeps"] = sweeps;
  emit_json(j, out);
}

std::vector<double> run_montecarlo(const ExperimentConfig& config, int trials,
                                   int row, double truncate_frac, int threads,
                                   const OutputOptions& opts) {
  validate(config);
  if (trials < 1) throw ConfigError("trials must be at least 1");
  CrossbarParams params = make_params(config);
  if (truncate_frac > 0.0) {
    params.sigma_os_truncate = truncate_frac * std::abs(config.eta) * config.v_d;
  }
  if (row < 0 || row >= config.rows) {
    throw ConfigError("row index " + std::to_string(row) + " out of range");
  }

  std::vector<double> residuals(trials, 0.0);
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      Crossbar xbar(params,
                    derive_seed(config.seed, kTrialStateStream + 2ULL * t));
      const CalResult r = calibrate_row(
          xbar, row, config.n_samples, config.noise_sigma,
          derive_seed(config.seed, kTrialCalStream + 2ULL * t + 1),
          opts.exact_sampling);
      residuals[t] = std::abs(r.residual);
    }
  };

  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, trials);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return residuals;
}

void cmd_montecarlo(const ExperimentConfig& config, int trials, int row,
                    double truncate_frac, int threads, std::ostream& out,
                    const OutputOptions& opts) {
  const std::vector<double> residuals =
      run_montecarlo(config, trials, row, truncate_frac, threads, opts);

  int below = 0;
  for (double r : residuals) {
    if (r < 100e-6) ++below;
  }
  json j;
  if (opts.with_timestamp) j["generated_at"] = utc_timestamp();
  j["trials"] = trials;
  j["row"] = row;
  j["seed"] = config.seed;
  j["n_samples"] = config.n_samples;
  j["noise_sigma_volts"] = config.noise_sigma;
  j["sigma_os_volts"] = config.sigma_os;
  if (truncate_frac > 0.0) {
    j["truncate_volts"] = truncate_frac * std::abs(config.eta) * config.v_d;
  } else {
    j["truncate_volts"] = nullptr;
  }
  j["abs_residuals_volts"] = residuals;
  j["summary"] = {
      {"p50_volts", percentile_nearest_rank(residuals, 0.50)},
      {"p99_volts", percentile_nearest_rank(residuals, 0.99)},
      {"max_volts", *std::max_element(residuals.begin(), residuals.end())},
      {"fraction_below_100uv",
       static_cast<double>(below) / static_cast<double>(trials)}};
  emit_json(j, out);
}

void cmd_power(const ExperimentConfig& config, double v_read_mv,
               const std::string& selection, std::ostream& out,
               const OutputOptions& opts) {
  validate(config);
  const std::vector<SelectionItem> items =
      parse_selection(selection, config.rows, config.cols);
  Crossbar xbar(make_params(config), config.seed);
  std::vector<CellRef> refs;
  refs.reserve(items.size());
  for (const SelectionItem& item : items) {
    prepare_cell(xbar, item.ref.row, item.ref.col, item.state);
    refs.push_back(item.ref);
  }
  const double v_read = v_read_mv * 1e-3;
  const double total = xbar.read_power(refs, v_read);

  json cells = json::array();
  for (const CellRef& ref : refs) {
    const OxRamCell& cell = xbar.cell(ref.row, ref.col);
    cells.push_back(
        {{"row", ref.row},
         {"col", ref.col},
         {"state", to_string(cell.state)},
         {"power_watts",
          v_read * v_read *
              cell_path_conductance(cell, xbar.params().selector, true)}});
  }
  json j;
  if (opts.with_timestamp) j["generated_at"] = utc_timestamp();
  j["v_read_volts"] = v_read;
  j["total_power_watts"] = total;
  j["cells"] = cells;
  emit_json(j, out);
}

void cmd_pulse(const ExperimentConfig& config, MemOp op, int row, int col,
               CellState preset_state, std::ostream& out,
               const OutputOptions& opts) {
  validate(config);
  Crossbar xbar(make_params(config), config.seed);
  prepare_cell(xbar, row, col, preset_state);
  const CellState before = xbar.cell(row, col).state;
  const std::optional<double> current = xbar.target_cell_op(row, col, op);
  json j;
  if (opts.with_timestamp) j["generated_at"] = utc_timestamp();
  j["op"] = to_string(op);
  j["row"] = row;
  j["col"] = col;
  j["state_before"] = to_string(before);
  j["state_after"] = to_string(xbar.cell(row, col).state);
  if (current) j["current_amps"] = *current;
  emit_json(j, out);
}

void cmd_frame_encode(std::istream& in, std::ostream& out) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("frame file is not valid JSON: ") + e.what());
  }
  ControlFrame frame;
  try {
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.empty()) {
      throw ProtocolError("frame 'rows' must be a non-empty array");
    }
    for (const auto& r : rows) {
      RowControlWord word;
      word.ipot_code = r.at("ipot").get<int>();
      const auto& cal = r.at("cal");
      word.cal = CalCode{cal.at("coarse").get<int>(), cal.at("fine").get<int>(),
                         cal.at("finer").get<int>()};
      frame.rows.push_back(word);
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed frame JSON: ") + e.what());
  }
  out << encode_frame(frame) << "\n";
}

void cmd_frame_decode(std::istream& in, std::optional<int> n_rows,
                      std::ostream& out) {
  std::string bits;
  char c;
  while (in.get(c)) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    bits.push_back(c);
  }
  int rows = 0;
  if (n_rows) {
    rows = *n_rows;
  } else {
    if (bits.empty() || bits.size() % kRowBits != 0) {
      throw ProtocolError("bitstring length " + std::to_string(bits.size()) +
                          " is not a multiple of 26; pass the row count explicitly");
    }
    rows = static_cast<int>(bits.size() / kRowBits);
  }
  const ControlFrame frame = decode_frame(bits, rows);
  json rows_json = json::array();
  for (const RowControlWord& word : frame.rows) {
    rows_json.push_back({{"ipot", word.ipot_code},
                         {"cal", {{"coarse", word.cal.coarse},
                                  {"fine", word.cal.fine},
                                  {"finer", word.cal.finer}}}});
  }
  emit_json(json{{"rows", rows_json}}, out);
}

}  // namespace oxcal
