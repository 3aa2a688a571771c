#include "oxcal/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace oxcal {

namespace {

using nlohmann::json;

const std::set<std::string> kConfigKeys = {
    "rows",       "cols",        "r_lrs",    "r_hrs",       "r_on",
    "g_off",      "v_ref",       "v_d",      "v_calibref",  "eta",
    "sigma_os",   "noise_sigma", "n_samples", "seed"};

long long get_integer(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return v.get<long long>();
}

double get_number(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.rows < 1 || c.cols < 1) {
    throw ConfigError("rows and cols must be at least 1");
  }
  validate(OxRamCell{CellState::Pristine, c.r_lrs, c.r_hrs});
  validate(SelectorModel{c.r_on, c.g_off}, c.r_hrs);
  if (!(c.v_d > 0.0)) throw ConfigError("v_d must be positive");
  validate(BodyBiasModel{c.eta, c.v_calibref});
  if (!(c.sigma_os >= 0.0)) throw ConfigError("sigma_os must be non-negative");
  if (!(c.noise_sigma >= 0.0)) {
    throw ConfigError("noise_sigma must be non-negative");
  }
  if (c.n_samples < 1) throw ConfigError("n_samples must be at least 1");
}

ExperimentConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (kConfigKeys.find(item.key()) == kConfigKeys.end()) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
  ExperimentConfig c;
  if (j.contains("rows")) c.rows = static_cast<int>(get_integer(j, "rows"));
  if (j.contains("cols")) c.cols = static_cast<int>(get_integer(j, "cols"));
  if (j.contains("r_lrs")) c.r_lrs = get_number(j, "r_lrs");
  if (j.contains("r_hrs")) c.r_hrs = get_number(j, "r_hrs");
  if (j.contains("r_on")) c.r_on = get_number(j, "r_on");
  if (j.contains("g_off")) c.g_off = get_number(j, "g_off");
  if (j.contains("v_ref")) c.v_ref = get_number(j, "v_ref");
  if (j.contains("v_d")) c.v_d = get_number(j, "v_d");
  if (j.contains("v_calibref")) c.v_calibref = get_number(j, "v_calibref");
  if (j.contains("eta")) c.eta = get_number(j, "eta");
  if (j.contains("sigma_os")) c.sigma_os = get_number(j, "sigma_os");
  if (j.contains("noise_sigma")) c.noise_sigma = get_number(j, "noise_sigma");
  if (j.contains("n_samples")) c.n_samples = get_integer(j, "n_samples");
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      throw ConfigError("config key 'seed' must be an integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  validate(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_json(text);
}

std::string config_json_text(const ExperimentConfig& c) {
  json j;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["r_lrs"] = c.r_lrs;
  j["r_hrs"] = c.r_hrs;
  j["r_on"] = c.r_on;
  j["g_off"] = c.g_off;
  j["v_ref"] = c.v_ref;
  j["v_d"] = c.v_d;
  j["v_calibref"] = c.v_calibref;
  j["eta"] = c.eta;
  j["sigma_os"] = c.sigma_os;
  j["noise_sigma"] = c.noise_sigma;
  j["n_samples"] = c.n_samples;
  j["seed"] = c.seed;
  return j.dump(2);
}

CrossbarParams make_params(const ExperimentConfig& c) {
  validate(c);
  CrossbarParams p;
  p.rows = c.rows;
  p.cols = c.cols;
  p.r_lrs = c.r_lrs;
  p.r_hrs = c.r_hrs;
  p.selector = SelectorModel{c.r_on, c.g_off};
  p.ladder = LadderSpec{c.v_ref, c.v_d};
  p.eta = c.eta;
  p.v_calibref = c.v_calibref;
  p.sigma_os = c.sigma_os;
  return p;
}

}  // namespace oxcal
