#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "simfs/dataset_io.hpp"

namespace simfs {

struct OlsModel {
  Eigen::VectorXd coef;
  double intercept = 0.0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

/// Least squares with an intercept. A jitter of ridge_jitter * trace(Xc'Xc) / q
/// is added to the diagonal of the centered normal equations; the solve is
/// then refined against the unregularized system so well-posed problems are
/// recovered to rounding while rank-deficient ones stay finite. The dual
/// (n x n) system is used when q exceeds the row count.
OlsModel ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double ridge_jitter = 1e-8);

/// Column standardization learned on one matrix (population standard
/// deviation) and applied to others. Constant columns get scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

/// Rows `rows` of the feature columns `columns`.
Eigen::MatrixXd design_matrix(const Dataset& ds, std::span<const std::size_t> columns,
                              std::span<const std::size_t> rows);
Eigen::VectorXd target_vector(const Dataset& ds, std::span<const std::size_t> rows);

std::vector<std::size_t> all_rows(const Dataset& ds);

}  // namespace simfs
