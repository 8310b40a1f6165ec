#include "simfs/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simfs/error.hpp"

namespace simfs {
namespace {

constexpr std::size_t kTargetClasses = 3;

std::size_t label_count(std::span<const std::size_t> labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::size_t distinct_labels(std::span<const std::size_t> labels) {
  std::vector<std::size_t> copy(labels.begin(), labels.end());
  std::sort(copy.begin(), copy.end());
  return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

std::vector<std::size_t> target_classes(const Dataset& ds) {
  auto classes = equal_frequency_bins(ds.target, kTargetClasses);
  if (distinct_labels(classes) < 2) {
    fail(ErrorCode::DegenerateTarget, "'" + ds.target_name + "' cannot be split into classes");
  }
  return classes;
}

}  // namespace

std::size_t default_bin_count(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

std::vector<std::size_t> equal_frequency_bins(std::span<const double> values, std::size_t bins) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> out(n);
  std::size_t tie_rank = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0 && values[order[r]] != values[order[r - 1]]) tie_rank = r;
    out[order[r]] = tie_rank * bins / n;
  }
  return out;
}

double mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "labelings differ in length");
  if (a.empty()) return 0.0;
  const std::size_t ka = label_count(a);
  const std::size_t kb = label_count(b);
  std::vector<double> joint(ka * kb, 0.0), pa(ka, 0.0), pb(kb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[a[i] * kb + b[i]] += 1.0;
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
  }
  const auto n = static_cast<double>(a.size());
  double mi = 0.0;
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      const double c = joint[i * kb + j];
      if (c == 0.0) continue;
      mi += (c / n) * std::log(c * n / (pa[i] * pb[j]));
    }
  }
  return std::max(0.0, mi);
}

double chi_square(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "labelings differ in length");
  const std::size_t ka = label_count(a);
  const std::size_t kb = label_count(b);
  std::vector<double> table(ka * kb, 0.0), rows(ka, 0.0), cols(kb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[a[i] * kb + b[i]] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  const auto n = static_cast<double>(a.size());
  double chi = 0.0;
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      const double expected = rows[i] * cols[j] / n;
      if (expected <= 0.0) continue;
      const double d = table[i * kb + j] - expected;
      chi += d * d / expected;
    }
  }
  return chi;
}

double fisher_score(std::span<const double> feature, std::span<const std::size_t> labels) {
  if (feature.size() != labels.size()) fail(ErrorCode::LengthMismatch, "feature and labels differ in length");
  const std::size_t k = label_count(labels);
  std::vector<double> count(k, 0.0), sum(k, 0.0), sumsq(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < feature.size(); ++i) {
    count[labels[i]] += 1.0;
    sum[labels[i]] += feature[i];
    total += feature[i];
  }
  const double mu = total / static_cast<double>(feature.size());
  std::vector<double> mean(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) mean[c] = count[c] > 0 ? sum[c] / count[c] : 0.0;
  for (std::size_t i = 0; i < feature.size(); ++i) {
    const double d = feature[i] - mean[labels[i]];
    sumsq[labels[i]] += d * d;
  }
  double between = 0.0;
  double within = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (count[c] == 0.0) continue;
    between += count[c] * (mean[c] - mu) * (mean[c] - mu);
    within += sumsq[c];  // n_c * sigma_c^2 with population variance
  }
  if (within <= 0.0) return between > 0.0 ? std::numeric_limits<double>::max() : 0.0;
  return between / within;
}

double dispersion_ratio(std::span<const double> feature) {
  if (feature.empty()) return 1.0;
  const auto [lo_it, hi_it] = std::minmax_element(feature.begin(), feature.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  double arith = 0.0;
  double log_sum = 0.0;
  for (const double v : feature) {
    const double shifted = (range > 0.0 ? (v - lo) / range : 0.0) + 1.0;
    const double w = std::abs(shifted) + 1e-12;
    arith += w;
    log_sum += std::log(w);
  }
  const auto n = static_cast<double>(feature.size());
  return (arith / n) / std::exp(log_sum / n);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "series differ in length");
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return ss / (n - 1.0);
}

std::vector<double> filter_scores(const Dataset& ds, MethodKind kind) {
  if (ds.missing_count() > 0) fail(ErrorCode::NotImputed, "filter selection needs an imputed dataset");
  const std::size_t p = ds.feature_count();
  const std::size_t bins = default_bin_count(ds.rows());
  std::vector<double> scores(p, 0.0);

  switch (kind) {
    case MethodKind::Correlation:
      for (std::size_t j = 0; j < p; ++j) scores[j] = std::abs(pearson(ds.features[j], ds.target));
      break;
    case MethodKind::Variance:
      for (std::size_t j = 0; j < p; ++j) scores[j] = sample_variance(ds.features[j]);
      break;
    case MethodKind::MiScore: {
      const auto target_bins = equal_frequency_bins(ds.target, bins);
      for (std::size_t j = 0; j < p; ++j) {
        scores[j] = mutual_information(equal_frequency_bins(ds.features[j], bins), target_bins);
      }
      break;
    }
    case MethodKind::InfoGain: {
      const auto classes = target_classes(ds);
      for (std::size_t j = 0; j < p; ++j) {
        scores[j] = mutual_information(equal_frequency_bins(ds.features[j], bins), classes);
      }
      break;
    }
    case MethodKind::Chi: {
      const auto classes = target_classes(ds);
      for (std::size_t j = 0; j < p; ++j) {
        scores[j] = chi_square(equal_frequency_bins(ds.features[j], bins), classes);
      }
      break;
    }
    case MethodKind::Fisher: {
      const auto classes = target_classes(ds);
      for (std::size_t j = 0; j < p; ++j) scores[j] = fisher_score(ds.features[j], classes);
      break;
    }
    case MethodKind::DataDispersion:
      for (std::size_t j = 0; j < p; ++j) scores[j] = dispersion_ratio(ds.features[j]);
      break;
    default:
      fail(ErrorCode::InvalidArgument, std::string(method_name(kind)) + " is not a filter method");
  }
  return scores;
}

}  // namespace simfs
