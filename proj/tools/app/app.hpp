// app.hpp - config-driven experiment execution behind the hardylab CLI.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "app/common.hpp"

namespace hardylab::app {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  bool write_files = true;
  unsigned threads = 1;
  bool strict_tails = false;
  std::optional<std::uint64_t> seed_override;
};

struct RunResult {
  json summary;
  bool passed = false;
};

// Reads and parses a JSON config. Throws ConfigError (or IoError for an
// unreadable file).
json load_config(const std::filesystem::path& path);

// Validates the whole config, then runs it and writes summary.json plus the
// CSV/plot files. Config problems throw before any experiment starts.
RunResult run_config(const json& config, const RunOptions& options);

}  // namespace hardylab::app
