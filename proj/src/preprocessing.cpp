#include "simfs/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "simfs/error.hpp"

namespace simfs {
namespace {

std::size_t count_missing(std::span<const double> col) {
  return static_cast<std::size_t>(std::count_if(col.begin(), col.end(), is_missing));
}

bool too_sparse(std::size_t missing, std::size_t n, double max_fraction) {
  // Integer-exact form of missing / n > max_fraction; the slack absorbs the
  // rounding of max_fraction * n (e.g. 0.8 * 10).
  return static_cast<double>(missing) > max_fraction * static_cast<double>(n) + 1e-9;
}

}  // namespace

void PreprocessConfig::validate() const {
  if (!(max_missing_fraction >= 0.0 && max_missing_fraction <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "max_missing_fraction must lie in [0, 1]");
  }
  if (knn_k < 1) fail(ErrorCode::InvalidArgument, "knn_k must be at least 1");
}

Dataset drop_sparse_features(const Dataset& ds, double max_missing_fraction) {
  const std::size_t n = ds.rows();
  if (too_sparse(count_missing(ds.target), n, max_missing_fraction)) {
    fail(ErrorCode::TargetTooSparse, "'" + ds.target_name + "' has " +
                                         std::to_string(count_missing(ds.target)) + " of " +
                                         std::to_string(n) + " cells missing");
  }
  Dataset out;
  out.target_name = ds.target_name;
  out.target = ds.target;
  out.years = ds.years;
  for (std::size_t j = 0; j < ds.feature_count(); ++j) {
    if (too_sparse(count_missing(ds.features[j]), n, max_missing_fraction)) continue;
    out.feature_names.push_back(ds.feature_names[j]);
    out.features.push_back(ds.features[j]);
  }
  return out;
}

Dataset knn_impute(const Dataset& ds, std::size_t k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "knn k must be at least 1");
  const std::size_t n = ds.rows();

  // Column 0 is the target, columns 1..p the features.
  std::vector<std::span<const double>> cols;
  cols.emplace_back(ds.target);
  for (const auto& f : ds.features) cols.emplace_back(f);
  const std::size_t total = cols.size();

  for (std::size_t c = 0; c < total; ++c) {
    if (count_missing(cols[c]) == n) {
      fail(ErrorCode::UnimputableColumn,
           "'" + (c == 0 ? ds.target_name : ds.feature_names[c - 1]) + "' has no observed cell");
    }
  }

  // Pairwise row distances on the original (unimputed) data; NaN = no co-observed column.
  std::vector<double> dist(n * n, kMissing);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double sum = 0.0;
      std::size_t co = 0;
      for (const auto& col : cols) {
        if (is_missing(col[a]) || is_missing(col[b])) continue;
        const double d = col[a] - col[b];
        sum += d * d;
        ++co;
      }
      if (co > 0) {
        const double d = std::sqrt(sum * static_cast<double>(total) / static_cast<double>(co));
        dist[a * n + b] = d;
        dist[b * n + a] = d;
      }
    }
  }

  auto impute_column = [&](std::span<const double> col) {
    std::vector<double> out(col.begin(), col.end());
    double col_sum = 0.0;
    std::size_t col_obs = 0;
    for (const double v : col) {
      if (!is_missing(v)) {
        col_sum += v;
        ++col_obs;
      }
    }
    const double col_mean = col_sum / static_cast<double>(col_obs);

    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t r = 0; r < n; ++r) {
      if (!is_missing(col[r])) continue;
      candidates.clear();
      for (std::size_t other = 0; other < n; ++other) {
        if (other == r || is_missing(col[other])) continue;
        const double d = dist[r * n + other];
        if (!is_missing(d)) candidates.emplace_back(d, other);
      }
      if (candidates.empty()) {
        out[r] = col_mean;
        continue;
      }
      const std::size_t take = std::min(k, candidates.size());
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                        candidates.end());
      double acc = 0.0;
      for (std::size_t i = 0; i < take; ++i) acc += col[candidates[i].second];
      out[r] = acc / static_cast<double>(take);
    }
    return out;
  };

  Dataset out;
  out.target_name = ds.target_name;
  out.feature_names = ds.feature_names;
  out.years = ds.years;
  out.target = impute_column(cols[0]);
  out.features.reserve(ds.feature_count());
  for (std::size_t c = 1; c < total; ++c) out.features.push_back(impute_column(cols[c]));
  return out;
}

Dataset preprocess(const Dataset& ds, const PreprocessConfig& config) {
  config.validate();
  return knn_impute(drop_sparse_features(ds, config.max_missing_fraction), config.knn_k);
}

std::vector<double> znormalize(std::span<const double> series) {
  if (std::any_of(series.begin(), series.end(), is_missing)) {
    fail(ErrorCode::NotImputed, "series contains missing cells");
  }
  const auto n = static_cast<double>(series.size());
  std::vector<double> out(series.size(), 0.0);
  if (series.empty()) return out;

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  double ss = 0.0;
  double scale = 0.0;
  for (const double v : series) {
    ss += (v - mean) * (v - mean);
    scale = std::max(scale, std::abs(v));
  }
  const double sd = std::sqrt(ss / n);
  // Rounding in the mean leaves ~1e-17 relative residue on constant input.
  if (sd <= 1e-12 * std::max(1.0, scale)) return out;
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - mean) / sd;
  return out;
}

}  // namespace simfs
