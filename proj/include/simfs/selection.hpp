#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simfs/dataset_io.hpp"
#include "simfs/similarity.hpp"

namespace simfs {

enum class Category { Similarity, Filter, Wrapper, Embedded };

enum class MethodKind {
  // similarity
  Euc, Dtw, Lcss, Edr, Epr, Twed, Hausdorff, Frechet, Sspd,
  // filter
  Correlation, Variance, MiScore, InfoGain, Chi, Fisher, DataDispersion,
  // wrapper
  Forward, Backward, Stepwise, Recursive, SimulatedAnnealing,
  // embedded
  Lasso, TreeBased, Rfecv,
};

Category category_of(MethodKind kind) noexcept;
std::string_view category_name(Category c) noexcept;

/// Table-4 spelling: "euc", "epr", "corrolation", "MI_Score", "Tree-based", ...
std::string_view method_name(MethodKind kind) noexcept;

/// Accepts the roster spellings plus a few aliases ("erp", "correlation", "rfe").
std::optional<MethodKind> parse_method(std::string_view name) noexcept;

/// Table 4 minus the undefined "Sparse" row, plus rfecv: 23 methods.
std::vector<MethodKind> paper23_roster();
/// paper23 plus twed.
std::vector<MethodKind> full_roster();

std::optional<Measure> measure_of(MethodKind kind) noexcept;

struct WrapperParams {
  std::size_t budget = 20000;  // distinct subset evaluations
  std::size_t inner_folds = 5;
  double ridge_jitter = 1e-8;
  double anneal_t0 = 1.0;
  double anneal_ratio = 0.95;
  std::size_t anneal_iterations = 500;
};

struct LassoParams {
  std::size_t grid_points = 20;
  double min_ratio = 1e-4;
  std::optional<double> fixed_lambda;  // skips the CV search when set
  std::size_t max_sweeps = 10000;
  double tolerance = 1e-10;
};

struct ForestParams {
  std::size_t trees = 50;
  std::size_t max_depth = 6;
  std::size_t min_samples_split = 2;
};

struct MethodSpec {
  MethodKind kind = MethodKind::Euc;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  DistanceParams distance;
  bool normalize = true;  // z-normalize before distances
  WrapperParams wrapper;
  LassoParams lasso;
  ForestParams forest;
  std::size_t rfecv_max_size = 0;  // 0 = up to p

  Category category() const noexcept { return category_of(kind); }
};

struct FeatureScore {
  std::string feature;
  double score = 0.0;

  bool operator==(const FeatureScore&) const = default;
};

/// Score semantics: distance for similarity (lower is better); relevance for
/// filters and embedded methods (higher is better); for wrappers the change
/// in inner-CV MAE attributable to each feature relative to the final subset
/// (higher is better).
struct SelectionResult {
  MethodSpec method;
  std::vector<std::string> selected;
  std::vector<FeatureScore> scores;  // dataset feature order
  std::map<std::string, double> diagnostics;
};

SelectionResult similarity_select(const Dataset& ds, const MethodSpec& spec);
SelectionResult filter_select(const Dataset& ds, const MethodSpec& spec);
SelectionResult wrapper_select(const Dataset& ds, const MethodSpec& spec);
SelectionResult embedded_select(const Dataset& ds, const MethodSpec& spec);

/// Dispatches on the method's category.
SelectionResult select_features(const Dataset& ds, const MethodSpec& spec);

/// Indices of the k best entries (lowest first when `ascending`), ties to the
/// lower index.
std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k, bool ascending);

}  // namespace simfs
