#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "crdtlab/sim.hpp"

namespace crdtlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

enum class Command { run, suite, space, enumerate };
enum class Format { text, csv };

struct CliConfig {
  Command command = Command::run;
  std::string scenario_path;
  std::optional<sim::Design> design;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  Format format = Format::text;
  std::size_t ops_bound = 3;
  std::optional<std::size_t> replicas;
  std::size_t cycles = 1000;
  std::optional<std::size_t> elements;  // space: 1, suite/enumerate: 2
  bool list = false;  // enumerate: print every scenario as a JSON line
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;  // goes to --out or stdout
  std::string error;   // goes to stderr
};

CommandResult cmd_run(const CliConfig& cfg);
CommandResult cmd_suite(const CliConfig& cfg);
CommandResult cmd_space(const CliConfig& cfg);
CommandResult cmd_enumerate(const CliConfig& cfg);

// Dispatches on cfg.command and maps exceptions to exit codes.
CommandResult execute(const CliConfig& cfg);

int main_entry(int argc, char** argv);

}  // namespace crdtlab::cli
