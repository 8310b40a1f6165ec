#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simfs/dataset_io.hpp"
#include "simfs/linear_model.hpp"

namespace simfs {

enum class Pooling {
  Pooled,   // one RMSE/MAE over all held-out predictions of an iteration
  PerFold,  // mean of per-fold RMSE/MAE
};

struct CvConfig {
  std::size_t folds = 10;
  std::size_t iterations = 10;
  std::uint64_t base_seed = 42;
  double ridge_jitter = 1e-8;
  Pooling pooling = Pooling::Pooled;

  void validate(std::size_t n) const;
};

struct ErrorPair {
  double rmse = 0.0;
  double mae = 0.0;

  bool operator==(const ErrorPair&) const = default;
};

struct AggregateMetrics {
  double mean_rmse = 0.0;
  double mean_mae = 0.0;
  std::vector<ErrorPair> per_iteration;

  bool operator==(const AggregateMetrics&) const = default;
};

using Folds = std::vector<std::vector<std::size_t>>;

/// Seeded shuffle of 0..n-1 dealt into `folds` contiguous blocks; the first
/// n % folds blocks get one extra index. Indices within a fold are sorted.
Folds kfold_split(std::size_t n, std::size_t folds, std::uint64_t seed);

ErrorPair metrics(std::span<const double> predicted, std::span<const double> actual);

/// Standardizer and OLS model learned from `train_rows` only.
struct FoldModel {
  Standardizer standardizer;
  OlsModel ols;

  Eigen::VectorXd predict(const Eigen::MatrixXd& raw_x) const;
};

FoldModel fit_fold(const Dataset& ds, std::span<const std::size_t> columns,
                   std::span<const std::size_t> train_rows, double ridge_jitter);

/// Repeated K-fold CV of an OLS model on the given feature columns. Iteration
/// i uses folds from kfold_split(n, folds, base_seed + i).
AggregateMetrics evaluate_columns(const Dataset& ds, std::span<const std::size_t> columns,
                                  const CvConfig& cv);

/// evaluate_columns with features named instead of indexed.
AggregateMetrics evaluate_subset(const Dataset& ds, std::span<const std::string> subset,
                                 const CvConfig& cv);

/// Same protocol with the training-fold target mean as the prediction.
AggregateMetrics evaluate_mean_predictor(const Dataset& ds, const CvConfig& cv);

}  // namespace simfs
