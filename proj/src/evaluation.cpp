#include "simfs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simfs/error.hpp"
#include "simfs/rng.hpp"

namespace simfs {
namespace {

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> held_out) {
  std::vector<bool> mask(n, false);
  for (const auto r : held_out) mask[r] = true;
  std::vector<std::size_t> rest;
  rest.reserve(n - held_out.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (!mask[r]) rest.push_back(r);
  }
  return rest;
}

template <typename Predict>
AggregateMetrics cross_validate(const Dataset& ds, const CvConfig& cv, Predict&& predict_fold) {
  const std::size_t n = ds.rows();
  cv.validate(n);
  AggregateMetrics out;
  out.per_iteration.reserve(cv.iterations);
  std::vector<double> predicted(n), actual(n);
  for (std::size_t it = 0; it < cv.iterations; ++it) {
    const auto folds = kfold_split(n, cv.folds, cv.base_seed + it);
    ErrorPair fold_sum;
    std::size_t cursor = 0;
    for (const auto& test : folds) {
      const auto train = complement(n, test);
      const Eigen::VectorXd pred = predict_fold(train, test);
      const std::size_t start = cursor;
      for (std::size_t i = 0; i < test.size(); ++i, ++cursor) {
        predicted[cursor] = pred(static_cast<Eigen::Index>(i));
        actual[cursor] = ds.target[test[i]];
      }
      if (cv.pooling == Pooling::PerFold) {
        const auto e = metrics(std::span(predicted).subspan(start, test.size()),
                               std::span(actual).subspan(start, test.size()));
        fold_sum.rmse += e.rmse;
        fold_sum.mae += e.mae;
      }
    }
    if (cv.pooling == Pooling::Pooled) {
      out.per_iteration.push_back(metrics(predicted, actual));
    } else {
      const auto k = static_cast<double>(folds.size());
      out.per_iteration.push_back({fold_sum.rmse / k, fold_sum.mae / k});
    }
  }
  for (const auto& e : out.per_iteration) {
    out.mean_rmse += e.rmse;
    out.mean_mae += e.mae;
  }
  out.mean_rmse /= static_cast<double>(out.per_iteration.size());
  out.mean_mae /= static_cast<double>(out.per_iteration.size());
  return out;
}

}  // namespace

void CvConfig::validate(std::size_t n) const {
  if (folds < 2) fail(ErrorCode::InvalidArgument, "folds must be at least 2");
  if (folds > n) {
    fail(ErrorCode::TooManyFolds, std::to_string(folds) + " folds for " + std::to_string(n) + " rows");
  }
  if (iterations < 1) fail(ErrorCode::InvalidArgument, "iterations must be at least 1");
  if (!(ridge_jitter >= 0.0)) fail(ErrorCode::InvalidArgument, "ridge_jitter must be non-negative");
}

Folds kfold_split(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) fail(ErrorCode::InvalidArgument, "folds must be at least 2");
  if (folds > n) {
    fail(ErrorCode::TooManyFolds, std::to_string(folds) + " folds for " + std::to_string(n) + " rows");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  rng.shuffle(std::span(order));

  Folds out(folds);
  const std::size_t base = n / folds;
  const std::size_t extra = n % folds;
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                  order.begin() + static_cast<std::ptrdiff_t>(cursor + size));
    std::sort(out[f].begin(), out[f].end());
    cursor += size;
  }
  return out;
}

ErrorPair metrics(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    fail(ErrorCode::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                        std::to_string(actual.size()) + " actuals");
  }
  if (predicted.empty()) fail(ErrorCode::InvalidArgument, "metrics need at least one value");
  double sq = 0.0;
  double abs = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - actual[i];
    sq += e * e;
    abs += std::abs(e);
  }
  const auto n = static_cast<double>(predicted.size());
  return {std::sqrt(sq / n), abs / n};
}

Eigen::VectorXd FoldModel::predict(const Eigen::MatrixXd& raw_x) const {
  return ols.predict(standardizer.apply(raw_x));
}

FoldModel fit_fold(const Dataset& ds, std::span<const std::size_t> columns,
                   std::span<const std::size_t> train_rows, double ridge_jitter) {
  const Eigen::MatrixXd x = design_matrix(ds, columns, train_rows);
  FoldModel model;
  model.standardizer = Standardizer::fit(x);
  model.ols = ols_fit(model.standardizer.apply(x), target_vector(ds, train_rows), ridge_jitter);
  return model;
}

AggregateMetrics evaluate_columns(const Dataset& ds, std::span<const std::size_t> columns,
                                  const CvConfig& cv) {
  if (columns.empty()) fail(ErrorCode::InvalidArgument, "subset must not be empty");
  return cross_validate(ds, cv, [&](const std::vector<std::size_t>& train,
                                    const std::vector<std::size_t>& test) {
    const auto model = fit_fold(ds, columns, train, cv.ridge_jitter);
    return model.predict(design_matrix(ds, columns, test));
  });
}

AggregateMetrics evaluate_subset(const Dataset& ds, std::span<const std::string> subset,
                                 const CvConfig& cv) {
  std::vector<std::size_t> columns;
  columns.reserve(subset.size());
  for (const auto& name : subset) {
    const auto idx = ds.feature_index(name);
    if (!idx) fail(ErrorCode::InvalidArgument, "'" + name + "' is not a feature of this dataset");
    columns.push_back(*idx);
  }
  return evaluate_columns(ds, columns, cv);
}

AggregateMetrics evaluate_mean_predictor(const Dataset& ds, const CvConfig& cv) {
  return cross_validate(ds, cv, [&](const std::vector<std::size_t>& train,
                                    const std::vector<std::size_t>& test) {
    double mean = 0.0;
    for (const auto r : train) mean += ds.target[r];
    mean /= static_cast<double>(train.size());
    return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(test.size()), mean).eval();
  });
}

}  // namespace simfs
