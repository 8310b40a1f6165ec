#include "simfs/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simfs/error.hpp"
#include "simfs/rng.hpp"

namespace simfs {
namespace {

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeGrower {
 public:
  TreeGrower(const Dataset& ds, std::size_t max_depth, std::size_t min_split, std::size_t mtry,
             std::uint64_t seed)
      : ds_(ds), max_depth_(max_depth), min_split_(min_split), mtry_(mtry), seed_(seed),
        name_hash_(ds.feature_count()), importance_(ds.feature_count(), 0.0) {
    for (std::size_t j = 0; j < ds.feature_count(); ++j) name_hash_[j] = fnv1a(ds.feature_names[j]);
  }

  std::vector<double> grow(std::vector<std::size_t> rows) {
    build(rows, 0);
    return std::move(importance_);
  }

 private:
  // Candidate features for a node, in hash-key order.
  std::vector<std::size_t> candidates(std::uint64_t node_seed) const {
    const std::size_t p = ds_.feature_count();
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(p);
    for (std::size_t j = 0; j < p; ++j) keyed[j] = {mix64(node_seed ^ name_hash_[j]), j};
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::min(mtry_, p); ++i) out.push_back(keyed[i].second);
    return out;
  }

  Split best_split(const std::vector<std::size_t>& rows, std::uint64_t node_seed) const {
    const auto n = static_cast<double>(rows.size());
    double total = 0.0;
    for (const auto r : rows) total += ds_.target[r];

    Split best;
    std::vector<std::size_t> order(rows);
    for (const auto f : candidates(node_seed)) {
      const auto& col = ds_.features[f];
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
      double left = 0.0;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        left += ds_.target[order[i]];
        if (col[order[i]] == col[order[i + 1]]) continue;
        const auto nl = static_cast<double>(i + 1);
        const double right = total - left;
        // SSE reduction = S_l^2/n_l + S_r^2/n_r - S^2/n
        const double gain = left * left / nl + right * right / (n - nl) - total * total / n;
        if (gain > best.gain) {
          best = {f, 0.5 * (col[order[i]] + col[order[i + 1]]), gain};
        }
      }
    }
    return best;
  }

  void build(const std::vector<std::size_t>& rows, std::size_t depth) {
    const std::uint64_t node_seed = mix64(seed_ + 0x9e3779b97f4a7c15ULL * ++node_counter_);
    if (depth >= max_depth_ || rows.size() < std::max<std::size_t>(min_split_, 2)) return;
    const Split split = best_split(rows, node_seed);
    // Ignore gains at rounding level relative to the node's sum of squares.
    double ss = 0.0;
    for (const auto r : rows) ss += ds_.target[r] * ds_.target[r];
    if (!(split.gain > 1e-12 * ss)) return;

    importance_[split.feature] += split.gain;
    std::vector<std::size_t> left, right;
    for (const auto r : rows) {
      (ds_.features[split.feature][r] <= split.threshold ? left : right).push_back(r);
    }
    build(left, depth + 1);
    build(right, depth + 1);
  }

  const Dataset& ds_;
  std::size_t max_depth_;
  std::size_t min_split_;
  std::size_t mtry_;
  std::uint64_t seed_;
  std::uint64_t node_counter_ = 0;
  std::vector<std::uint64_t> name_hash_;
  std::vector<double> importance_;
};

}  // namespace

std::vector<double> tree_importance(const Dataset& ds, std::span<const std::size_t> rows,
                                    std::size_t max_depth, std::size_t min_samples_split,
                                    std::size_t mtry, std::uint64_t seed) {
  if (ds.missing_count() > 0) fail(ErrorCode::NotImputed, "tree growing needs an imputed dataset");
  TreeGrower grower(ds, max_depth, min_samples_split, std::max<std::size_t>(mtry, 1), seed);
  return grower.grow(std::vector<std::size_t>(rows.begin(), rows.end()));
}

std::vector<double> forest_importance(const Dataset& ds, const ForestParams& params, std::uint64_t seed) {
  const std::size_t p = ds.feature_count();
  const std::size_t n = ds.rows();
  const auto mtry = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
  std::vector<double> total(p, 0.0);
  SplitMix64 rng(seed);
  std::vector<std::size_t> sample(n);
  for (std::size_t t = 0; t < params.trees; ++t) {
    for (auto& r : sample) r = static_cast<std::size_t>(rng.below(n));
    const auto imp = tree_importance(ds, sample, params.max_depth, params.min_samples_split, mtry, rng.next());
    for (std::size_t j = 0; j < p; ++j) total[j] += imp[j];
  }
  const double sum = std::accumulate(total.begin(), total.end(), 0.0);
  if (sum > 0.0) {
    for (auto& v : total) v /= sum;
  }
  return total;
}

}  // namespace simfs
