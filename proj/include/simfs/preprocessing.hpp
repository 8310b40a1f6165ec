#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simfs/dataset_io.hpp"

namespace simfs {

struct PreprocessConfig {
  double max_missing_fraction = 0.8;
  std::size_t knn_k = 5;
  bool normalize = true;

  void validate() const;
};

/// Keeps feature columns whose missing fraction is at most `max_missing_fraction`.
/// Throws TargetTooSparse when the target itself exceeds the threshold.
Dataset drop_sparse_features(const Dataset& ds, double max_missing_fraction);

/// Fills missing cells from the k nearest years (rows). Row distance is the
/// nan-Euclidean distance over co-observed columns, rescaled by
/// sqrt(total_columns / co_observed_columns). The target participates as an
/// ordinary column. Observed cells are never modified.
Dataset knn_impute(const Dataset& ds, std::size_t k);

/// drop_sparse_features followed by knn_impute.
Dataset preprocess(const Dataset& ds, const PreprocessConfig& config);

/// Zero mean, unit population standard deviation. Constant series map to zeros.
std::vector<double> znormalize(std::span<const double> series);

}  // namespace simfs
