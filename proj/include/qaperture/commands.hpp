#pragma once

#include <ostream>
#include <string>

#include "qaperture/config.hpp"

namespace qaperture {

inline constexpr const char* kVersion = QAPERTURE_VERSION;

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNumerical = 1, kExitConfig = 2 };

/// Runs one of focal-map, angular-scan, coupling, check and writes its files
/// into config.out. Progress and a short summary go to `log`. Returns the exit
/// code; numerical failures propagate as exceptions.
int run_command(const std::string& command, const RunConfig& config, std::ostream& log);

}  // namespace qaperture
