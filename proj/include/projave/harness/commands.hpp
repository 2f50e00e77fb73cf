#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "projave/harness/report.hpp"
#include "projave/quadrature/quadrature.hpp"

namespace projave::harness {

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

/// Builds a QuadratureSpec from a "quadrature" object (missing keys keep
/// their defaults) and validates it.
quadrature::QuadratureSpec spec_from_json(const nlohmann::json& j, std::uint64_t seed);

/// Runs one command over the cases of `config`.
///
/// The seed is `seed_override` if given, else config["seed"]; having
/// neither is a ConfigError. Relative fixture paths resolve against
/// `base_dir`. Failures inside a case become failing rows and never stop
/// the remaining cases. Throws ConfigError for an unknown command or a
/// config without the required top-level structure.
Report run_command(const std::string& command, const nlohmann::json& config,
                   std::optional<std::uint64_t> seed_override,
                   const std::filesystem::path& base_dir);

/// Reads a config file and runs it; base_dir is the file's directory.
Report run_config_file(const std::string& command, const std::filesystem::path& config_path,
                       std::optional<std::uint64_t> seed_override);

struct ReplayResult {
  bool identical = false;
  std::vector<std::string> differences;
  Report rerun;
};

/// Re-runs a report from its header and compares every row bitwise
/// (through its CSV rendering). The wall-clock stamp is ignored.
ReplayResult replay(const Report& original);

}  // namespace projave::harness
