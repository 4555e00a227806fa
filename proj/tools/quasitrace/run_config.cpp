#include "run_config.hpp"

#include <cmath>
#include <random>
#include <set>

#include "json.hpp"

namespace quasitrace::cli {

namespace {

using nlohmann::ordered_json;

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

std::vector<double> EnergyGrid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  }
  return out;
}

EnergyGrid parse_energy_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  require(a != std::string::npos && b != std::string::npos && text.find(':', b + 1) == std::string::npos,
          "--energies: expected lo:hi:count, got '" + text + "'");
  EnergyGrid g;
  g.lo = parse_number(text.substr(0, a), "--energies");
  g.hi = parse_number(text.substr(a + 1, b - a - 1), "--energies");
  require(g.lo <= g.hi, "--energies: need lo <= hi");
  const double count = parse_number(text.substr(b + 1), "--energies");
  require(count >= 1 && count <= 1e6 && std::floor(count) == count, "--energies: count must be an integer in [1, 1e6]");
  g.count = static_cast<int>(count);
  return g;
}

void RunConfig::validate() const {
  require(!lambdas.empty(), "lambda: at least one value required");
  for (double l : lambdas) require(std::isfinite(l) && l >= 0.0, "lambda: values must be finite and >= 0");
  require(random_thetas >= 0 && random_thetas <= 100000, "random-thetas: must lie in [0, 100000]");
  require(k_max >= 0 && k_max <= 25, "k-max: must lie in [0, 25]");
  if (energies_set) {
    require(std::isfinite(energies.lo) && std::isfinite(energies.hi) && energies.lo <= energies.hi,
            "energies: need finite lo <= hi");
    require(energies.count >= 1, "energies: count must be >= 1");
  }
  for (const auto* grid : {&T_grid, &trend_T_grid}) {
    require(!grid->empty(), "T-grid: at least one value required");
    for (double T : *grid) require(std::isfinite(T) && T > 0.0, "T-grid: values must be finite and > 0");
  }
  require(N >= 0 && N <= 20000, "N: must lie in [0, 20000] (0 = automatic)");
  require(N_limit >= 1 && N_limit <= 20000, "N-limit: must lie in [1, 20000]");
  require(std::isfinite(C1) && C1 > 0.0, "C1: must be finite and > 0");
  if (p_set) require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "p: must lie in [0, 1]");
  require(growth_k_min >= 0 && growth_k_min < growth_k_max && growth_k_max <= 22,
          "growth levels: need 0 <= k_min < k_max <= 22");
  require(jobs >= 1 && jobs <= 256, "jobs: must lie in [1, 256]");
  require(precision_bits >= 96 && precision_bits <= 128, "precision bits: must lie in [96, 128]");
  require(!out.empty(), "out: directory required");
  for (const auto& t : thetas) {
    try {
      (void)words::PhasePoint::parse(t);
    } catch (const std::exception& e) {
      throw ConfigError("theta: " + std::string(e.what()));
    }
  }
}

std::vector<double> RunConfig::energy_points(double lambda) const {
  if (energies_set) return energies.points();
  return EnergyGrid{-3.0, lambda + 3.0, 64}.points();
}

std::vector<words::PhasePoint> RunConfig::phases(const std::vector<std::string>& defaults) const {
  std::vector<words::PhasePoint> out;
  const auto& texts = thetas.empty() && random_thetas == 0 ? defaults : thetas;
  for (const auto& t : texts) {
    try {
      out.push_back(words::PhasePoint::parse(t).truncated(precision_bits));
    } catch (const std::exception& e) {
      throw ConfigError("theta: " + std::string(e.what()));
    }
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_thetas; ++i) {
    const auto hi = static_cast<words::u128>(rng());
    const auto lo = static_cast<words::u128>(rng());
    out.push_back(words::PhasePoint::from_raw((hi << 64) | lo).truncated(precision_bits));
  }
  return out;
}

std::string to_json(const RunConfig& c) {
  ordered_json j;
  j["lambda"] = c.lambdas;
  j["theta"] = c.thetas;
  j["random_thetas"] = c.random_thetas;
  j["k_max"] = c.k_max;
  if (c.energies_set) {
    j["energies"] = {{"lo", c.energies.lo}, {"hi", c.energies.hi}, {"count", c.energies.count}};
  } else {
    j["energies"] = nullptr;
  }
  j["T_grid"] = c.T_grid;
  j["trend_T_grid"] = c.trend_T_grid;
  j["trend"] = c.trend;
  j["N"] = c.N;
  j["N_limit"] = c.N_limit;
  j["C1"] = c.C1;
  j["p"] = c.p_set ? ordered_json(c.p) : ordered_json(nullptr);
  j["growth_k_min"] = c.growth_k_min;
  j["growth_k_max"] = c.growth_k_max;
  j["jobs"] = c.jobs;
  j["seed"] = c.seed;
  j["precision_bits"] = c.precision_bits;
  j["out"] = c.out;
  return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  static const std::set<std::string> known{
      "lambda", "theta", "random_thetas", "k_max", "energies", "T_grid", "trend_T_grid", "trend",
      "N", "N_limit", "C1", "p", "growth_k_min", "growth_k_max", "jobs", "seed", "precision_bits", "out"};
  RunConfig c;
  try {
    const auto j = ordered_json::parse(text);
    require(j.is_object(), "config: top level must be an object");
    for (const auto& [key, value] : j.items()) {
      require(known.count(key) == 1, "config: unknown key '" + key + "'");
    }
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("lambda", c.lambdas);
    get("theta", c.thetas);
    get("random_thetas", c.random_thetas);
    get("k_max", c.k_max);
    if (j.contains("energies") && !j.at("energies").is_null()) {
      const auto& e = j.at("energies");
      c.energies_set = true;
      c.energies = {e.at("lo").get<double>(), e.at("hi").get<double>(), e.at("count").get<int>()};
    }
    get("T_grid", c.T_grid);
    get("trend_T_grid", c.trend_T_grid);
    get("trend", c.trend);
    get("N", c.N);
    get("N_limit", c.N_limit);
    get("C1", c.C1);
    if (j.contains("p") && !j.at("p").is_null()) {
      c.p_set = true;
      c.p = j.at("p").get<double>();
    }
    get("growth_k_min", c.growth_k_min);
    get("growth_k_max", c.growth_k_max);
    get("jobs", c.jobs);
    get("seed", c.seed);
    get("precision_bits", c.precision_bits);
    get("out", c.out);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace quasitrace::cli
