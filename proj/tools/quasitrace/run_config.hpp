#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasitrace/words/phase.hpp"

namespace quasitrace::cli {

/// Invalid user input; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnergyGrid {
  double lo = -3.0;
  double hi = 13.0;
  int count = 64;

  std::vector<double> points() const;
  friend bool operator==(const EnergyGrid&, const EnergyGrid&) = default;
};

/// Parses "lo:hi:count". Throws ConfigError.
EnergyGrid parse_energy_grid(const std::string& text);

struct RunConfig {
  std::vector<double> lambdas{10.0};
  std::vector<std::string> thetas;  // empty: command default
  int random_thetas = 0;            // extra phases drawn from `seed`
  int k_max = 14;
  bool energies_set = false;        // false: [-3, lambda + 3] with 64 points
  EnergyGrid energies;
  std::vector<double> T_grid{10, 30, 100, 300, 1000};
  std::vector<double> trend_T_grid{10, 30, 100, 300, 1000, 3000, 10000, 30000, 100000};
  bool trend = false;
  int N = 0;  // 0: automatic
  int N_limit = 3000;
  double C1 = 1.0;
  bool p_set = false;  // false: calibrate from the exponent trend
  double p = 0.0;
  int growth_k_min = 6;
  int growth_k_max = 18;
  int jobs = 1;
  std::uint64_t seed = 1;
  int precision_bits = 128;
  std::string out = "out";

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Energies for one coupling.
  std::vector<double> energy_points(double lambda) const;

  /// Parsed explicit phases followed by `random_thetas` seeded draws, all
  /// truncated to `precision_bits`. Falls back to `defaults` when no phase is
  /// configured. Throws ConfigError on a malformed phase.
  std::vector<words::PhasePoint> phases(const std::vector<std::string>& defaults) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_json(const RunConfig& config);

/// Throws ConfigError on malformed JSON or unknown keys.
RunConfig config_from_json(const std::string& text);

}  // namespace quasitrace::cli
