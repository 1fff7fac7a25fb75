#pragma once

#include <string>

#include "report_io.hpp"

namespace nlw {

struct RunOutcome {
  json summary;
  int exit_code = 0;  // 0 pass or informational, 1 experiment failure
};

// subcommand names accepted by run_subcommand / the CLI / the C API
const std::vector<std::string>& subcommand_names();

json default_config(const std::string& cmd);

// merges `user` over the subcommand defaults, echoes the effective config to
// <outdir>/config-echo.json, runs, writes report.json / summary.csv / *.svg
// beside it, and returns the summary. Empty outdir skips all file output.
RunOutcome run_subcommand(const std::string& cmd, const json& user, const std::string& outdir);

}  // namespace nlw
