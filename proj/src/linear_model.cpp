#include "simfs/linear_model.hpp"

#include <cmath>
#include <numeric>

#include "simfs/error.hpp"

namespace simfs {
namespace {

constexpr int kRefinementSteps = 4;

// Solves (A + lambda I) z = b, then refines toward A z = b. Components of b in
// directions where A is tiny relative to lambda stay damped.
Eigen::VectorXd regularized_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double lambda) {
  Eigen::MatrixXd shifted = a;
  shifted.diagonal().array() += lambda;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
  Eigen::VectorXd z = ldlt.solve(b);
  if (lambda <= 0.0) return z;
  for (int step = 0; step < kRefinementSteps; ++step) {
    z += ldlt.solve(b - a * z);
  }
  return z;
}

}  // namespace

Eigen::VectorXd OlsModel::predict(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd out = x * coef;
  out.array() += intercept;
  return out;
}

OlsModel ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double ridge_jitter) {
  if (x.rows() != y.size() || x.rows() < 1) {
    fail(ErrorCode::InvalidArgument, "ols_fit needs matching, non-empty X and y");
  }
  if (!x.allFinite() || !y.allFinite()) fail(ErrorCode::NonFiniteInput, "ols_fit input has NaN or inf");
  if (ridge_jitter < 0.0) fail(ErrorCode::InvalidArgument, "ridge_jitter must be non-negative");

  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  const auto q = xc.cols();

  OlsModel model;
  model.coef = Eigen::VectorXd::Zero(q);
  const double trace = xc.squaredNorm();
  if (q > 0 && trace > 0.0) {
    if (ridge_jitter == 0.0) {
      model.coef = xc.completeOrthogonalDecomposition().solve(yc);
    } else {
      const double lambda = ridge_jitter * trace / static_cast<double>(q);
      if (q <= xc.rows()) {
        model.coef = regularized_solve(xc.transpose() * xc, xc.transpose() * yc, lambda);
      } else {
        model.coef = xc.transpose() * regularized_solve(xc * xc.transpose(), yc, lambda);
      }
    }
  }
  model.intercept = y_mean - x_mean.dot(model.coef);
  return model;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  Standardizer s;
  s.mean = x.colwise().mean();
  s.scale.resize(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var = (x.col(c).array() - s.mean(c)).square().mean();
    const double sd = std::sqrt(var);
    s.scale(c) = sd > 1e-12 * std::max(1.0, x.col(c).cwiseAbs().maxCoeff()) ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

Eigen::MatrixXd design_matrix(const Dataset& ds, std::span<const std::size_t> columns,
                              std::span<const std::size_t> rows) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& col = ds.features[columns[c]];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[rows[r]];
    }
  }
  return x;
}

Eigen::VectorXd target_vector(const Dataset& ds, std::span<const std::size_t> rows) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) y(static_cast<Eigen::Index>(r)) = ds.target[rows[r]];
  return y;
}

std::vector<std::size_t> all_rows(const Dataset& ds) {
  std::vector<std::size_t> rows(ds.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

}  // namespace simfs
