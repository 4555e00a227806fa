#pragma once

#include "quasitrace/io/report_json.hpp"
#include "run_config.hpp"

namespace quasitrace::cli {

// Each command validates the config, writes its data files plus
// summary_<command>.json and config_<command>.json into config.out, and
// returns the summary. ConfigError signals a usage problem.

io::Summary cmd_words(const RunConfig& config);
io::Summary cmd_traces(const RunConfig& config);
io::Summary cmd_spectrum(const RunConfig& config);
io::Summary cmd_dynamics(const RunConfig& config);

/// Aggregates the summaries found in config.out into report.json.
io::Summary cmd_report(const RunConfig& config);

}  // namespace quasitrace::cli
