#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "simfs/dataset_io.hpp"
#include "simfs/evaluation.hpp"
#include "simfs/preprocessing.hpp"
#include "simfs/selection.hpp"

namespace simfs {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // a computation failed (select / distances)
  kExitBadConfig = 2,   // bad arguments or configuration
  kExitIo = 3,          // unreadable or malformed input, unwritable output
  kExitBenchmarkEmpty = 4,
};

/// Raised while reading a run configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path input_csv;
  std::vector<std::string> targets;  // or a single keyword: "all" / "paper20"
  YearRange year_range;
  std::vector<std::string> roster;   // or a single keyword: "paper23" / "all"
  std::size_t k = 10;
  PreprocessConfig preprocess;
  CvConfig cv;
  DistanceParams distance;
  WrapperParams wrapper;
  std::filesystem::path output_dir;
  std::set<std::string> formats = {"json", "csv", "md"};
  std::size_t jobs = 1;
};

/// Relative paths in the config resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Expands roster keywords and validates names (ConfigError on unknown names).
std::vector<MethodKind> resolve_roster(const std::vector<std::string>& names);
std::vector<std::string> resolve_targets(const std::vector<std::string>& names, const IndicatorPanel& panel);

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simfs
