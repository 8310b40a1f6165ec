#include "simfs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "simfs/benchmark.hpp"
#include "simfs/error.hpp"
#include "simfs/fixtures.hpp"
#include "simfs/report.hpp"
#include "simfs/rng.hpp"

namespace simfs {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string roster_listing() {
  std::string s;
  for (const auto kind : full_roster()) {
    if (!s.empty()) s += ", ";
    s += method_name(kind);
  }
  return s;
}

std::string method_error(const std::string& name) {
  std::string msg = "unknown method '" + name + "'";
  if (name == "sparse" || name == "Sparse") msg = "method 'Sparse' is excluded: it has no definition to implement";
  return msg + "; available: " + roster_listing();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + where + key + "' has the wrong type");
  }
}

std::vector<std::string> string_or_list(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return {fallback};
  const auto& v = j[key];
  if (v.is_string()) return {v.get<std::string>()};
  if (v.is_array()) {
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError(std::string("key '") + key + "' must hold strings");
      out.push_back(e.get<std::string>());
    }
    if (out.empty()) throw ConfigError(std::string("key '") + key + "' must not be empty");
    return out;
  }
  throw ConfigError(std::string("key '") + key + "' must be a string or a list of strings");
}

// Writes every file to a temporary sibling first and renames only when all writes succeeded.
void write_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".tmp";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
      temps.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    for (std::size_t i = 0; i < files.size(); ++i) fs::rename(temps[i], files[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
    throw;
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Shared options of the single-dataset commands.
struct DatasetOptions {
  std::string input;
  std::string target;
  int year_start = 1990;
  int year_end = 2022;
  double max_missing = 0.8;
  std::size_t knn_k = 5;
  bool raw = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "WDI-format CSV file")->required();
    cmd->add_option("--target", target, "target indicator name")->required();
    cmd->add_option("--year-start", year_start, "first year of the analysis window");
    cmd->add_option("--year-end", year_end, "last year of the analysis window");
    cmd->add_option("--max-missing", max_missing, "drop features missing more than this fraction");
    cmd->add_option("--knn-k", knn_k, "neighbours used by the KNN imputer");
    cmd->add_flag("--raw", raw, "compute distances on raw instead of z-normalized series");
  }

  Dataset load() const {
    const auto panel = read_wdi_csv(input);
    PreprocessConfig pre;
    pre.max_missing_fraction = max_missing;
    pre.knn_k = knn_k;
    return preprocess(build_dataset(panel, target, {year_start, year_end}), pre);
  }
};

struct DistanceOptions {
  DistanceParams params;
  std::optional<std::size_t> delta;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lcss-epsilon", params.lcss_epsilon);
    cmd->add_option("--lcss-delta", delta);
    cmd->add_option("--edr-epsilon", params.edr_epsilon);
    cmd->add_option("--erp-gap", params.erp_gap);
    cmd->add_option("--twed-nu", params.twed_nu);
    cmd->add_option("--twed-lambda", params.twed_lambda);
  }

  DistanceParams resolve() const {
    DistanceParams p = params;
    p.lcss_delta = delta;
    p.validate();
    return p;
  }
};

int cmd_run(const std::string& config_path, bool deterministic, std::optional<std::size_t> jobs,
            std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::vector<MethodKind> roster;
  try {
    config = load_run_config(config_path);
    if (jobs) config.jobs = *jobs;
    if (seed) config.cv.base_seed = *seed;
    roster = resolve_roster(config.roster);
  } catch (const std::exception& e) {
    err << "error: bad config: " << e.what() << "\n";
    return kExitBadConfig;
  }

  IndicatorPanel panel;
  try {
    panel = read_wdi_csv(config.input_csv);
  } catch (const std::exception& e) {
    err << "error: cannot load input: " << e.what() << "\n";
    return kExitIo;
  }

  std::vector<std::string> targets;
  try {
    targets = resolve_targets(config.targets, panel);
  } catch (const std::exception& e) {
    err << "error: bad config: " << e.what() << "\n";
    return kExitBadConfig;
  }

  std::vector<MethodSpec> specs;
  for (const auto kind : roster) {
    MethodSpec spec;
    spec.kind = kind;
    spec.k = config.k;
    spec.distance = config.distance;
    spec.normalize = config.preprocess.normalize;
    spec.wrapper = config.wrapper;
    spec.wrapper.ridge_jitter = config.cv.ridge_jitter;
    specs.push_back(spec);
  }

  BenchmarkReport report;
  try {
    report = run_benchmark(panel, targets, specs, config.preprocess, config.cv,
                           {config.year_range, config.jobs});
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BenchmarkEmpty ? kExitBenchmarkEmpty : kExitBadConfig;
  }

  const auto mae = rank_methods(report, RankMetric::Mae);
  const auto rmse = rank_methods(report, RankMetric::Rmse);

  std::vector<std::pair<fs::path, std::string>> files;
  if (config.formats.count("json")) {
    const auto stamp = deterministic ? std::nullopt : std::optional<std::string>(utc_timestamp());
    files.emplace_back(config.output_dir / "report.json", report_to_json(report, mae, rmse, stamp).dump(2) + "\n");
  }
  if (config.formats.count("csv")) files.emplace_back(config.output_dir / "report.csv", report_to_csv(report));
  if (config.formats.count("md")) {
    files.emplace_back(config.output_dir / "report.md", report_to_markdown(report, mae, rmse));
  }
  try {
    fs::create_directories(config.output_dir);
    write_atomically(files);
  } catch (const std::exception& e) {
    err << "error: cannot write reports: " << e.what() << "\n";
    return kExitIo;
  }

  std::vector<std::size_t> order(mae.methods.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mae.method_avg_rank[a] < mae.method_avg_rank[b]; });
  const auto failed = std::count_if(report.cells.begin(), report.cells.end(), [](const CellResult& c) { return !c.ok; });
  out << "grid: " << report.targets.size() << " targets x " << report.methods.size() << " methods ("
      << failed << " failed cells)\n";
  out << "top methods by average MAE rank:\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(5, order.size()); ++i) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %zu. %-20s %-11s %.4f\n", i + 1,
                  std::string(method_name(mae.methods[order[i]])).c_str(),
                  std::string(category_name(category_of(mae.methods[order[i]]))).c_str(),
                  mae.method_avg_rank[order[i]]);
    out << line;
  }
  return kExitOk;
}

int cmd_select(const DatasetOptions& data, const DistanceOptions& dist, const std::string& method, std::size_t k,
               std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const auto kind = parse_method(method);
  if (!kind) {
    err << "error: " << method_error(method) << "\n";
    return kExitBadConfig;
  }
  if (k < 1) {
    err << "error: --k must be at least 1\n";
    return kExitBadConfig;
  }
  Dataset ds;
  try {
    ds = data.load();
  } catch (const std::exception& e) {
    err << "error: cannot load input: " << e.what() << "\n";
    return kExitIo;
  }
  if (k > ds.feature_count()) {
    err << "warning: k = " << k << " exceeds the " << ds.feature_count() << " available features; listing all\n";
  }
  try {
    MethodSpec spec;
    spec.kind = *kind;
    spec.k = k;
    spec.seed = derive_seed(seed, ds.target_name, method_name(*kind));
    spec.distance = dist.resolve();
    spec.normalize = !data.raw;
    const auto result = select_features(ds, spec);
    json j;
    j["target"] = ds.target_name;
    j["method"] = method_name(*kind);
    j["category"] = category_name(category_of(*kind));
    j["k"] = k;
    j["selected"] = result.selected;
    j["scores"] = json::array();
    for (const auto& s : result.scores) j["scores"].push_back({{"feature", s.feature}, {"score", s.score}});
    if (!result.diagnostics.empty()) j["diagnostics"] = result.diagnostics;
    out << j.dump(2) << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_distances(const DatasetOptions& data, const DistanceOptions& dist, const std::string& measure_name_arg,
                  bool debug_bounds, std::ostream& out, std::ostream& err) {
  const auto measure = parse_measure(measure_name_arg);
  if (!measure) {
    std::string names;
    for (const auto m : kAllMeasures) names += (names.empty() ? "" : ", ") + std::string(measure_name(m));
    err << "error: unknown measure '" << measure_name_arg << "'; available: " << names << "\n";
    return kExitBadConfig;
  }
  Dataset ds;
  try {
    ds = data.load();
  } catch (const std::exception& e) {
    err << "error: cannot load input: " << e.what() << "\n";
    return kExitIo;
  }
  try {
    const auto params = dist.resolve();
    const auto target = data.raw ? ds.target : znormalize(ds.target);
    struct Row {
      std::size_t index;
      double distance;
      double l1;
    };
    std::vector<Row> rows;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
      const auto feature = data.raw ? ds.features[j] : znormalize(ds.features[j]);
      double l1 = 0.0;
      for (std::size_t i = 0; i < feature.size(); ++i) l1 += std::abs(feature[i] - target[i]);
      rows.push_back({j, distance(*measure, feature, target, params), l1});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.distance < b.distance; });
    out << (debug_bounds ? "feature,distance,l1_bound,within_bound\n" : "feature,distance\n");
    for (const auto& r : rows) {
      out << csv_field(ds.feature_names[r.index]) << "," << fmt17(r.distance);
      if (debug_bounds) {
        out << "," << fmt17(r.l1) << ",";
        if (*measure == Measure::Dtw) out << (r.distance <= r.l1 + 1e-9 ? "true" : "false");
        else out << "n/a";
      }
      out << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_fixtures(const std::string& out_path, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  try {
    const fs::path path(out_path);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_atomically({{path, write_wdi_csv(make_benchmark_panel(seed))}});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  out << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

RunConfig parse_run_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  if (!j.contains("input_csv")) throw ConfigError("missing required key 'input_csv'");
  if (!j.contains("output_dir")) throw ConfigError("missing required key 'output_dir'");
  const auto input = get_or<std::string>(j, "input_csv", "", "");
  const auto output = get_or<std::string>(j, "output_dir", "", "");
  if (input.empty()) throw ConfigError("key 'input_csv' must not be empty");
  if (output.empty()) throw ConfigError("key 'output_dir' must not be empty");
  c.input_csv = fs::path(input).is_absolute() ? fs::path(input) : base_dir / input;
  c.output_dir = fs::path(output).is_absolute() ? fs::path(output) : base_dir / output;

  c.targets = string_or_list(j, "targets", "paper20");
  c.roster = string_or_list(j, "roster", "paper23");

  if (j.contains("year_range")) {
    const auto& yr = j["year_range"];
    if (!yr.is_array() || yr.size() != 2 || !yr[0].is_number_integer() || !yr[1].is_number_integer()) {
      throw ConfigError("key 'year_range' must be [start, end]");
    }
    c.year_range = {yr[0].get<int>(), yr[1].get<int>()};
    if (c.year_range.start > c.year_range.end) throw ConfigError("key 'year_range' has start after end");
  }

  c.k = get_or<std::size_t>(j, "k", c.k, "");
  if (c.k < 1) throw ConfigError("key 'k' must be at least 1");
  c.jobs = get_or<std::size_t>(j, "jobs", c.jobs, "");

  if (j.contains("preprocess")) {
    const auto& p = j["preprocess"];
    c.preprocess.max_missing_fraction =
        get_or<double>(p, "max_missing_fraction", c.preprocess.max_missing_fraction, "preprocess.");
    c.preprocess.knn_k = get_or<std::size_t>(p, "knn_k", c.preprocess.knn_k, "preprocess.");
    c.preprocess.normalize = get_or<bool>(p, "normalize", c.preprocess.normalize, "preprocess.");
    try {
      c.preprocess.validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("preprocess: ") + e.what());
    }
  }
  if (j.contains("cv")) {
    const auto& v = j["cv"];
    c.cv.folds = get_or<std::size_t>(v, "folds", c.cv.folds, "cv.");
    c.cv.iterations = get_or<std::size_t>(v, "iterations", c.cv.iterations, "cv.");
    c.cv.base_seed = get_or<std::uint64_t>(v, "base_seed", c.cv.base_seed, "cv.");
    c.cv.ridge_jitter = get_or<double>(v, "ridge_jitter", c.cv.ridge_jitter, "cv.");
    const auto pooling = get_or<std::string>(v, "pooling", "pooled", "cv.");
    if (pooling == "pooled") c.cv.pooling = Pooling::Pooled;
    else if (pooling == "per_fold") c.cv.pooling = Pooling::PerFold;
    else throw ConfigError("key 'cv.pooling' must be 'pooled' or 'per_fold'");
    if (c.cv.folds < 2) throw ConfigError("key 'cv.folds' must be at least 2");
    if (c.cv.iterations < 1) throw ConfigError("key 'cv.iterations' must be at least 1");
    if (c.cv.ridge_jitter < 0.0) throw ConfigError("key 'cv.ridge_jitter' must be non-negative");
  }
  if (j.contains("distance")) {
    try {
      c.distance = distance_params_from_json(j["distance"]);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("distance: ") + e.what());
    }
  }
  if (j.contains("wrapper")) {
    const auto& w = j["wrapper"];
    c.wrapper.budget = get_or<std::size_t>(w, "budget", c.wrapper.budget, "wrapper.");
    c.wrapper.anneal_t0 = get_or<double>(w, "anneal_t0", c.wrapper.anneal_t0, "wrapper.");
    c.wrapper.anneal_ratio = get_or<double>(w, "anneal_ratio", c.wrapper.anneal_ratio, "wrapper.");
    c.wrapper.anneal_iterations = get_or<std::size_t>(w, "anneal_iterations", c.wrapper.anneal_iterations, "wrapper.");
  }
  if (j.contains("formats")) {
    c.formats.clear();
    for (const auto& f : string_or_list(j, "formats", "")) {
      if (f != "json" && f != "csv" && f != "md") throw ConfigError("key 'formats' has unknown format '" + f + "'");
      c.formats.insert(f);
    }
  }
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(j, path.parent_path());
}

std::vector<MethodKind> resolve_roster(const std::vector<std::string>& names) {
  if (names.size() == 1 && names.front() == "paper23") return paper23_roster();
  if (names.size() == 1 && names.front() == "all") return full_roster();
  std::vector<MethodKind> out;
  for (const auto& n : names) {
    const auto kind = parse_method(n);
    if (!kind) throw ConfigError("roster: " + method_error(n));
    out.push_back(*kind);
  }
  return out;
}

std::vector<std::string> resolve_targets(const std::vector<std::string>& names, const IndicatorPanel& panel) {
  if (names.size() == 1 && names.front() == "paper20") return benchmark_target_names();
  if (names.size() == 1 && names.front() == "all") {
    std::vector<std::string> out;
    for (const auto& ind : panel.indicators) out.push_back(ind.name);
    return out;
  }
  if (names.empty()) throw ConfigError("key 'targets' must not be empty");
  return names;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-series similarity feature selection benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  bool deterministic = false;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run the benchmark described by a JSON config");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_flag("--deterministic", deterministic, "omit the timestamp so reruns are byte-identical");
  run->add_option("--jobs", jobs, "worker threads (output does not depend on it)");
  run->add_option("--seed", seed, "override cv.base_seed");
  run->footer(
      "Roster keywords: \"paper23\" = euc dtw lcss edr epr hausdorff frechet sspd, corrolation var MI_Score\n"
      "inf chi fisher data_dispersion, forward backward stepwise recursive simulated_annealing, lasso\n"
      "Tree-based rfecv (Sparse is excluded); \"all\" adds twed. Target keywords: \"paper20\", \"all\".");

  DatasetOptions select_data;
  DistanceOptions select_dist;
  std::string method;
  std::size_t k = 10;
  std::uint64_t select_seed = 42;
  auto* select = app.add_subcommand("select", "select features for one target with one method");
  select_data.attach(select);
  select_dist.attach(select);
  select->add_option("--method", method, "method name, one of: " + roster_listing())->required();
  select->add_option("--k", k, "subset size");
  select->add_option("--seed", select_seed, "base seed");

  DatasetOptions dist_data;
  DistanceOptions dist_params;
  std::string measure;
  bool debug_bounds = false;
  auto* distances = app.add_subcommand("distances", "per-feature distance to the target, ascending");
  dist_data.attach(distances);
  dist_params.attach(distances);
  distances->add_option("--measure", measure, "euc, dtw, lcss, edr, epr, twed, hausdorff, frechet or sspd")->required();
  distances->add_flag("--debug-bounds", debug_bounds, "add the L1 (diagonal path) column; checked against dtw only");

  std::string fixture_out;
  std::uint64_t fixture_seed = 7;
  auto* fixtures = app.add_subcommand("fixtures", "synthetic data");
  fixtures->require_subcommand(1);
  auto* generate = fixtures->add_subcommand("generate", "write the synthetic 20-target WDI panel");
  generate->add_option("--out", fixture_out, "output CSV path")->required();
  generate->add_option("--seed", fixture_seed, "generator seed");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("simfs");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadConfig;
  }

  if (*run) return cmd_run(config_path, deterministic, jobs, seed, out, err);
  if (*select) return cmd_select(select_data, select_dist, method, k, select_seed, out, err);
  if (*distances) return cmd_distances(dist_data, dist_params, measure, debug_bounds, out, err);
  if (*generate) return cmd_fixtures(fixture_out, fixture_seed, out, err);
  return kExitBadConfig;
}

}  // namespace simfs
