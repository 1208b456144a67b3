#pragma once

#include <string>
#include <vector>

#include "kinklab/config.hpp"

namespace kinklab {

struct RunResult {
    int exit_code = 0;
    std::string summary; // one line: outcome,omega_peak,turning_time,E_final (or mode-specific)
    std::vector<std::string> files;
};

/// Execute a parsed config: dispatches on mode, writes CSVs and manifest.txt
/// under config.out_dir.
RunResult run(const RunConfig& config, const std::string& config_origin = "<config>");

RunResult run_file(const std::string& config_path, const std::string& out_override = "",
                   int workers_override = -1);

} // namespace kinklab
