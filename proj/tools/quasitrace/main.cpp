#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace quasitrace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct RawFlags {
  std::vector<double> lambdas;
  std::string theta;
  std::vector<std::string> theta_list;
  std::string energies;
  std::vector<double> T_grid;
  std::string config_path;
};

void add_common(CLI::App& app, cli::RunConfig& c, RawFlags& raw) {
  app.add_option("--config", raw.config_path, "Load a RunConfig JSON file; explicit flags override it");
  app.add_option("--lambda", raw.lambdas, "Coupling(s)")->delimiter(',');
  app.add_option("--theta", raw.theta, "Single phase: decimal, p/q or a*omega/b");
  app.add_option("--theta-list", raw.theta_list, "Comma-separated phases")->delimiter(',');
  app.add_option("--random-thetas", c.random_thetas, "Additional phases drawn from --seed");
  app.add_option("--k-max", c.k_max, "Largest level k");
  app.add_option("--energies", raw.energies, "Energy grid lo:hi:count");
  app.add_option("--T-grid", raw.T_grid, "Abel timescales")->delimiter(',');
  app.add_option("--N", c.N, "Truncation half-width (0 = automatic)");
  app.add_option("--C1", c.C1, "Window prefactor");
  app.add_option("--p", c.p, "Window exponent (default: calibrated)");
  app.add_option("--jobs", c.jobs, "Worker threads");
  app.add_option("--seed", c.seed, "Seed for random phases");
  app.add_option("--out", c.out, "Output directory");
}

cli::RunConfig resolve(const CLI::App& sub, cli::RunConfig flags, const RawFlags& raw) {
  cli::RunConfig c = flags;
  if (!raw.config_path.empty()) {
    std::ifstream f(raw.config_path, std::ios::binary);
    if (!f) throw cli::ConfigError("--config: cannot read " + raw.config_path);
    std::ostringstream text;
    text << f.rdbuf();
    c = cli::config_from_json(text.str());
    // Explicit flags win over the file.
    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (given("--random-thetas")) c.random_thetas = flags.random_thetas;
    if (given("--k-max")) c.k_max = flags.k_max;
    if (given("--N")) c.N = flags.N;
    if (given("--C1")) c.C1 = flags.C1;
    if (given("--p")) c.p = flags.p;
    if (given("--jobs")) c.jobs = flags.jobs;
    if (given("--seed")) c.seed = flags.seed;
    if (given("--out")) c.out = flags.out;
  }
  if (sub.count("--p") > 0) c.p_set = true;
  if (!raw.lambdas.empty()) c.lambdas = raw.lambdas;
  if (!raw.theta.empty() || !raw.theta_list.empty()) {
    c.thetas.clear();
    if (!raw.theta.empty()) c.thetas.push_back(raw.theta);
    c.thetas.insert(c.thetas.end(), raw.theta_list.begin(), raw.theta_list.end());
  }
  if (!raw.energies.empty()) {
    c.energies = cli::parse_energy_grid(raw.energies);
    c.energies_set = true;
  }
  if (!raw.T_grid.empty()) c.T_grid = raw.T_grid;
  c.precision_bits = words::precision_bits_from_env();
  c.validate();
  return c;
}

void print_summary(const io::Summary& s) {
  for (const auto& c : s.checks) {
    std::printf("%s  %-28s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  }
  std::printf("%s: %s\n", s.command.c_str(), s.passed() ? "all checks passed" : "check failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasitrace: Fibonacci Hamiltonian words, traces, bands and dynamics"};
  app.require_subcommand(1);

  cli::RunConfig flags;
  RawFlags raw;
  struct Entry {
    CLI::App* app;
    io::Summary (*run)(const cli::RunConfig&);
  };
  std::vector<Entry> entries;
  auto add = [&](const char* name, const char* help, io::Summary (*run)(const cli::RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(*sub, flags, raw);
    entries.push_back({sub, run});
    return sub;
  };
  add("words", "Complexity, census, identities and phase conjugacy of Fibonacci words", cli::cmd_words);
  add("traces", "Phase invariance of traces, Fricke invariant, norm-derivative inequality", cli::cmd_traces);
  add("spectrum", "Band edges, derivative growth and norm growth", cli::cmd_spectrum);
  CLI::App* dyn = add("dynamics", "Abel-averaged windowed mass across phases", cli::cmd_dynamics);
  dyn->add_flag("--trend", flags.trend, "Also fit the exponent trend over the lambda list");
  dyn->add_option("--N-limit", flags.N_limit, "Largest truncation used by automatic sizing");
  add("report", "Aggregate summary_*.json from --out into report.json", cli::cmd_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& entry : entries) {
      if (!entry.app->parsed()) continue;
      cli::RunConfig config = resolve(*entry.app, flags, raw);
      if (entry.app == dyn && dyn->count("--N-limit") > 0) config.N_limit = flags.N_limit;
      if (entry.app == dyn && dyn->count("--trend") > 0) config.trend = true;
      const auto summary = entry.run(config);
      print_summary(summary);
      return summary.passed() ? kExitOk : kExitCheckFailed;
    }
  } catch (const cli::ConfigError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return kExitCheckFailed;
  }
  return kExitUsage;
}
