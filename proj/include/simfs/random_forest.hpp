#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "simfs/dataset_io.hpp"
#include "simfs/selection.hpp"

namespace simfs {

/// Total variance-reduction (impurity decrease) credited to each feature by
/// one CART regression tree grown on `rows` (duplicates allowed, as in a
/// bootstrap sample). Each split considers `mtry` features; the subset is
/// drawn by hashing feature names with a per-node seed, so relabelling or
/// reordering columns does not change which features a node sees.
std::vector<double> tree_importance(const Dataset& ds, std::span<const std::size_t> rows,
                                    std::size_t max_depth, std::size_t min_samples_split,
                                    std::size_t mtry, std::uint64_t seed);

/// Random forest of bootstrap CART trees with sqrt(p) features per split.
/// Importances are summed over trees and normalized to sum to one.
std::vector<double> forest_importance(const Dataset& ds, const ForestParams& params, std::uint64_t seed);

}  // namespace simfs
