#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "kpgm/cli/config.hpp"
#include "kpgm/cli/format.hpp"

namespace kpgm::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitFailure = 2 };

struct CommandResult {
    Table table;
    bool ok = true;  ///< false when a hard validation check failed
};

CommandResult cmd_energies(const RunConfig& config, unsigned threads = 1);
CommandResult cmd_wavefunction(const RunConfig& config, unsigned threads = 1);
CommandResult cmd_thermo(const RunConfig& config, unsigned threads = 1);
CommandResult cmd_validate(const RunConfig& config, unsigned threads = 1);

struct Invocation {
    std::string command;        ///< energies | wavefunction | thermo | validate
    std::string config_text;
    std::optional<std::string> out;
    std::optional<OutputFormat> format;
    bool dry_run = false;
    unsigned threads = 1;
};

/// Parses, runs and writes one command. Output goes to --out, else the config's
/// `output`, else `stdout`. Returns the process exit code; messages go to `err`.
int run(const Invocation& inv, std::ostream& stdout_stream, std::ostream& err);

/// Worker count: hardware concurrency capped by KPGM_THREADS when set.
/// Throws ValidationError on a malformed value.
unsigned thread_budget(const char* env_value);

}  // namespace kpgm::cli
