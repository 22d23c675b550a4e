#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace wpcn::cli {

struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;  // "-" or unset without run.output: stdout
  int grid = 512;
  bool zoom = false;               // verify: second p0 pass around the coarse argmax
  int samples = 200;
  double corrupt_tau0 = 0.0;       // verify negative control
};

/// Each command returns a process exit status and reports problems on `err`.
int cmd_solve(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace wpcn::cli
