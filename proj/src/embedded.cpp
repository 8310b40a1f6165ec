#include "simfs/embedded.hpp"

#include <algorithm>
#include <cmath>

#include "simfs/error.hpp"
#include "simfs/evaluation.hpp"
#include "simfs/linear_model.hpp"
#include "simfs/rng.hpp"
#include "simfs/wrappers.hpp"

namespace simfs {
namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

std::vector<std::size_t> every_column(const Dataset& ds) {
  std::vector<std::size_t> cols(ds.feature_count());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return cols;
}

std::uint64_t inner_seed(std::uint64_t seed) { return mix64(seed ^ 0x243f6a8885a308d3ULL); }

}  // namespace

Eigen::VectorXd lasso_coordinate_descent(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                                         const Eigen::VectorXd& warm, std::size_t max_sweeps,
                                         double tolerance) {
  const auto n = static_cast<double>(x.rows());
  const Eigen::Index p = x.cols();
  Eigen::VectorXd beta = warm.size() == p ? warm : Eigen::VectorXd::Zero(p);
  const Eigen::VectorXd col_sq = x.colwise().squaredNorm().transpose() / n;
  Eigen::VectorXd residual = y - x * beta;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_sq(j) <= 0.0) {
        beta(j) = 0.0;
        continue;
      }
      const double old = beta(j);
      const double rho = x.col(j).dot(residual) / n + col_sq(j) * old;
      const double updated = soft_threshold(rho, lambda) / col_sq(j);
      if (updated != old) {
        residual -= x.col(j) * (updated - old);
        beta(j) = updated;
        max_change = std::max(max_change, std::abs(updated - old) * std::sqrt(col_sq(j)));
      }
    }
    if (max_change <= tolerance * scale) break;
  }
  return beta;
}

double lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.cols() == 0) return 0.0;
  return (x.transpose() * y).cwiseAbs().maxCoeff() / static_cast<double>(x.rows());
}

std::vector<double> lasso_grid(double lambda_max, std::size_t points, double min_ratio) {
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) return {lambda_max};
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(lambda_max * std::pow(min_ratio, t));
  }
  return grid;
}

LassoFit lasso_fit(const Dataset& ds, const LassoParams& params, std::size_t inner_folds, std::uint64_t seed) {
  const auto rows = all_rows(ds);
  const auto cols = every_column(ds);
  const Eigen::MatrixXd raw = design_matrix(ds, cols, rows);
  const Eigen::MatrixXd x = Standardizer::fit(raw).apply(raw);
  const Eigen::VectorXd y_raw = target_vector(ds, rows);
  const Eigen::VectorXd y = y_raw.array() - y_raw.mean();

  LassoFit fit;
  fit.lambda_max = lasso_lambda_max(x, y);
  const auto grid = lasso_grid(fit.lambda_max, params.grid_points, params.min_ratio);

  auto path_to = [&](const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys, double lambda) {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(xs.cols());
    for (const double l : grid) {
      if (l < lambda) break;
      beta = lasso_coordinate_descent(xs, ys, l, beta, params.max_sweeps, params.tolerance);
    }
    return lasso_coordinate_descent(xs, ys, lambda, beta, params.max_sweeps, params.tolerance);
  };

  if (params.fixed_lambda) {
    fit.lambda = *params.fixed_lambda;
  } else {
    CvConfig cv;
    cv.folds = std::min(inner_folds, ds.rows());
    cv.iterations = 1;
    cv.validate(ds.rows());
    const auto folds = kfold_split(ds.rows(), cv.folds, inner_seed(seed));
    std::vector<double> abs_error(grid.size(), 0.0);
    for (const auto& test : folds) {
      std::vector<bool> held(ds.rows(), false);
      for (const auto r : test) held[r] = true;
      std::vector<std::size_t> train;
      for (const auto r : rows) {
        if (!held[r]) train.push_back(r);
      }
      const Eigen::MatrixXd train_raw = design_matrix(ds, cols, train);
      const auto standardizer = Standardizer::fit(train_raw);
      const Eigen::MatrixXd xt = standardizer.apply(train_raw);
      const Eigen::MatrixXd xv = standardizer.apply(design_matrix(ds, cols, test));
      const Eigen::VectorXd yt_raw = target_vector(ds, train);
      const double intercept = yt_raw.mean();
      const Eigen::VectorXd yt = yt_raw.array() - intercept;
      const Eigen::VectorXd yv = target_vector(ds, test);

      Eigen::VectorXd beta = Eigen::VectorXd::Zero(xt.cols());
      for (std::size_t g = 0; g < grid.size(); ++g) {
        beta = lasso_coordinate_descent(xt, yt, grid[g], beta, params.max_sweeps, params.tolerance);
        const Eigen::VectorXd pred = (xv * beta).array() + intercept;
        abs_error[g] += (pred - yv).cwiseAbs().sum();
      }
    }
    for (auto& e : abs_error) e /= static_cast<double>(ds.rows());
    fit.cv_mae = abs_error;
    std::size_t best = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
      if (abs_error[g] < abs_error[best]) best = g;
    }
    fit.lambda = grid.empty() ? fit.lambda_max : grid[best];
  }
  fit.coef = path_to(x, y, fit.lambda);
  return fit;
}

RfecvFit rfecv_fit(const Dataset& ds, std::size_t max_size, std::size_t inner_folds, double ridge_jitter,
                   std::uint64_t seed) {
  const std::size_t p = ds.feature_count();
  if (p == 0) fail(ErrorCode::InvalidArgument, "rfecv needs at least one feature");
  auto order = rfe_order(ds, 1, ridge_jitter);
  std::reverse(order.begin(), order.end());

  RfecvFit fit;
  fit.importance_order = order;
  const std::size_t limit = max_size == 0 ? p : std::min(max_size, p);
  SubsetObjective objective(ds, seed, inner_folds, ridge_jitter, limit);
  for (std::size_t s = 1; s <= limit; ++s) {
    fit.cv_mae.push_back(objective.unbounded(std::vector<std::size_t>(order.begin(),
                                                                      order.begin() + static_cast<std::ptrdiff_t>(s))));
  }
  fit.best_size = 1;
  for (std::size_t s = 2; s <= limit; ++s) {
    if (fit.cv_mae[s - 1] < fit.cv_mae[fit.best_size - 1]) fit.best_size = s;
  }
  return fit;
}

}  // namespace simfs
