#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "simfs/dataset_io.hpp"
#include "simfs/selection.hpp"

namespace simfs {

/// Coordinate descent for (1/2n)||y - Xb||^2 + lambda ||b||_1 on a matrix
/// whose columns are already centered (y centered too). `warm` seeds the
/// iterate; the result is the converged coefficient vector.
Eigen::VectorXd lasso_coordinate_descent(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                                         const Eigen::VectorXd& warm, std::size_t max_sweeps,
                                         double tolerance);

/// max_j |x_j' y| / n for centered inputs.
double lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Log-spaced grid from lambda_max down to min_ratio * lambda_max.
std::vector<double> lasso_grid(double lambda_max, std::size_t points, double min_ratio);

struct LassoFit {
  Eigen::VectorXd coef;  // on standardized features
  double lambda = 0.0;
  double lambda_max = 0.0;
  std::vector<double> cv_mae;  // per grid point, empty when lambda was fixed
};

/// Standardizes the full dataset, picks lambda by inner K-fold CV MAE (ties
/// to the larger lambda) unless params.fixed_lambda is set, and refits.
LassoFit lasso_fit(const Dataset& ds, const LassoParams& params, std::size_t inner_folds, std::uint64_t seed);

struct RfecvFit {
  std::vector<std::size_t> importance_order;  // most important first
  std::size_t best_size = 0;
  std::vector<double> cv_mae;  // index s-1 holds the MAE for size s
};

RfecvFit rfecv_fit(const Dataset& ds, std::size_t max_size, std::size_t inner_folds, double ridge_jitter,
                   std::uint64_t seed);

}  // namespace simfs
