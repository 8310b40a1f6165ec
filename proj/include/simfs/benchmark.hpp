#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simfs/dataset_io.hpp"
#include "simfs/evaluation.hpp"
#include "simfs/preprocessing.hpp"
#include "simfs/selection.hpp"

namespace simfs {

struct CellResult {
  std::string target;
  MethodKind method = MethodKind::Euc;
  std::uint64_t selection_seed = 0;
  bool ok = false;
  std::string error;  // set when !ok
  std::vector<std::string> selected;
  AggregateMetrics metrics;
};

struct BenchmarkOptions {
  YearRange years;
  std::size_t jobs = 1;
};

/// Everything needed to rerun the grid.
struct Provenance {
  PreprocessConfig preprocess;
  CvConfig cv;
  YearRange years;
  std::vector<MethodSpec> roster;
};

struct BenchmarkReport {
  std::vector<std::string> targets;
  std::vector<MethodKind> methods;
  std::vector<CellResult> cells;  // row-major: cells[t * methods.size() + m]
  Provenance provenance;

  const CellResult& cell(std::size_t target, std::size_t method) const {
    return cells[target * methods.size() + method];
  }
};

/// For every target: build_dataset -> drop_sparse_features -> knn_impute, then
/// every roster method selects and is scored with repeated K-fold OLS. A
/// failing cell is recorded, not thrown. Selection seeds derive from
/// (cv.base_seed, target, method); evaluation folds are shared by all methods
/// of a target. The result does not depend on `jobs`.
BenchmarkReport run_benchmark(const IndicatorPanel& panel, const std::vector<std::string>& targets,
                              const std::vector<MethodSpec>& roster, const PreprocessConfig& preprocess,
                              const CvConfig& cv, const BenchmarkOptions& options = {});

enum class RankMetric { Mae, Rmse };

struct RankTable {
  RankMetric metric = RankMetric::Mae;
  std::vector<std::string> targets;
  std::vector<MethodKind> methods;
  std::vector<std::vector<double>> ranks;  // [target][method], 1 = lowest error
  std::vector<double> method_avg_rank;
  std::vector<double> method_avg_metric;   // mean over successful cells, NaN if none
  std::vector<std::pair<Category, double>> category_avg_rank;
};

/// Average ranks with ties sharing the mean position; failed cells tie for last.
std::vector<double> average_ranks(const std::vector<double>& values, const std::vector<bool>& ok);

RankTable rank_methods(const BenchmarkReport& report, RankMetric metric = RankMetric::Mae);

}  // namespace simfs
