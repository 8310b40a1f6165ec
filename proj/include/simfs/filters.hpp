#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simfs/dataset_io.hpp"
#include "simfs/selection.hpp"

namespace simfs {

/// Equal-frequency discretization: bin = floor(r * bins / n) where r is the
/// smallest 0-based rank among values equal to v, so ties share a bin.
std::vector<std::size_t> equal_frequency_bins(std::span<const double> values, std::size_t bins);

/// Plug-in mutual information (nats) between two discrete labelings.
double mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Pearson chi-square statistic of the contingency table of two labelings.
double chi_square(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// sum_c n_c (mu_c - mu)^2 / sum_c n_c sigma_c^2 over the classes in `labels`.
double fisher_score(std::span<const double> feature, std::span<const std::size_t> labels);

/// Arithmetic over geometric mean of the feature rescaled to [1, 2].
double dispersion_ratio(std::span<const double> feature);

double pearson(std::span<const double> a, std::span<const double> b);
double sample_variance(std::span<const double> values);

/// ceil(sqrt(n)), at least 1.
std::size_t default_bin_count(std::size_t n);

/// One relevance score per feature column (higher is better).
std::vector<double> filter_scores(const Dataset& ds, MethodKind kind);

}  // namespace simfs
