#include "simfs/wrappers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simfs/error.hpp"
#include "simfs/rng.hpp"
#include "simfs/selection.hpp"

namespace simfs {
namespace {

constexpr double kImprovement = 1e-9;

std::vector<std::size_t> with(std::vector<std::size_t> s, std::size_t j) {
  s.push_back(j);
  return s;
}

std::vector<std::size_t> without(const std::vector<std::size_t>& s, std::size_t j) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (const auto v : s) {
    if (v != j) out.push_back(v);
  }
  return out;
}

bool contains(const std::vector<std::size_t>& s, std::size_t j) {
  return std::find(s.begin(), s.end(), j) != s.end();
}

[[noreturn]] void budget_exceeded(const SubsetObjective& objective, const char* search) {
  fail(ErrorCode::BudgetExceeded, std::string(search) + ": budget of " +
                                      std::to_string(objective.budget()) +
                                      " evaluations ran out before the first complete pass");
}

// Best single addition to `current` (lowest objective, ties to the lower index).
std::pair<std::size_t, double> best_addition(SubsetObjective& objective, std::size_t p,
                                             const std::vector<std::size_t>& current) {
  std::size_t best = p;
  double best_value = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    if (contains(current, j)) continue;
    const double v = objective(with(current, j));
    if (best == p || v < best_value) {
      best = j;
      best_value = v;
    }
  }
  return {best, best_value};
}

// Best single removal from `current` (lowest objective, ties to the lower index).
std::pair<std::size_t, double> best_removal(SubsetObjective& objective, const std::vector<std::size_t>& current) {
  std::vector<std::size_t> order = current;
  std::sort(order.begin(), order.end());
  std::size_t best = 0;
  double best_value = 0.0;
  bool found = false;
  for (const auto j : order) {
    const double v = objective(without(current, j));
    if (!found || v < best_value) {
      best = j;
      best_value = v;
      found = true;
    }
  }
  return {best, best_value};
}

}  // namespace

SubsetObjective::SubsetObjective(const Dataset& ds, std::uint64_t seed, std::size_t inner_folds,
                                 double ridge_jitter, std::size_t budget)
    : ds_(ds), budget_(budget) {
  cv_.folds = std::min(inner_folds, ds.rows());
  cv_.iterations = 1;
  cv_.base_seed = mix64(seed ^ 0x243f6a8885a308d3ULL);
  cv_.ridge_jitter = ridge_jitter;
  cv_.validate(ds.rows());
}

double SubsetObjective::compute(const std::vector<std::size_t>& subset) {
  if (subset.empty()) return evaluate_mean_predictor(ds_, cv_).mean_mae;
  return evaluate_columns(ds_, subset, cv_).mean_mae;
}

double SubsetObjective::operator()(std::vector<std::size_t> subset) {
  std::sort(subset.begin(), subset.end());
  if (const auto it = cache_.find(subset); it != cache_.end()) return it->second;
  if (evaluations_ >= budget_) throw BudgetSignal{};
  ++evaluations_;
  const double v = compute(subset);
  cache_.emplace(std::move(subset), v);
  return v;
}

double SubsetObjective::unbounded(std::vector<std::size_t> subset) {
  std::sort(subset.begin(), subset.end());
  if (const auto it = cache_.find(subset); it != cache_.end()) return it->second;
  const double v = compute(subset);
  cache_.emplace(std::move(subset), v);
  return v;
}

WrapperOutcome finalize_to_k(SubsetObjective& objective, std::size_t p, std::vector<std::size_t> subset,
                             std::size_t k) {
  const std::size_t target = std::min(k, p);
  const double base = objective.unbounded(subset);
  std::vector<double> contribution(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    contribution[j] = contains(subset, j) ? objective.unbounded(without(subset, j)) - base
                                          : base - objective.unbounded(with(subset, j));
  }

  WrapperOutcome out;
  out.scores = contribution;
  if (subset.size() > target) {
    // top_k breaks ties by position; sort members by index so ties go to the lower index.
    std::vector<std::size_t> members = subset;
    std::sort(members.begin(), members.end());
    std::vector<double> member_scores;
    for (const auto j : members) member_scores.push_back(contribution[j]);
    for (const auto pos : top_k(member_scores, target, false)) out.selected.push_back(members[pos]);
  } else {
    out.selected = subset;
    if (subset.size() < target) {
      std::vector<std::size_t> outsiders;
      std::vector<double> outsider_values;
      for (std::size_t j = 0; j < p; ++j) {
        if (contains(subset, j)) continue;
        outsiders.push_back(j);
        outsider_values.push_back(contribution[j]);
      }
      for (const auto pos : top_k(outsider_values, target - subset.size(), false)) {
        out.selected.push_back(outsiders[pos]);
      }
    }
  }
  out.objective = objective.unbounded(out.selected);
  out.evaluations = objective.evaluations();
  return out;
}

WrapperOutcome forward_selection(SubsetObjective& objective, std::size_t p, std::size_t k) {
  std::vector<std::size_t> current;
  bool pass_done = false;
  try {
    double current_value = objective({});
    while (current.size() < std::min(k, p)) {
      const auto [best, value] = best_addition(objective, p, current);
      pass_done = true;
      if (!(value < current_value)) break;
      current.push_back(best);
      current_value = value;
    }
  } catch (const SubsetObjective::BudgetSignal&) {
    if (!pass_done) budget_exceeded(objective, "forward");
  }
  return finalize_to_k(objective, p, current, k);
}

WrapperOutcome backward_elimination(SubsetObjective& objective, std::size_t p, std::size_t k) {
  std::vector<std::size_t> current(p);
  std::iota(current.begin(), current.end(), std::size_t{0});
  bool pass_done = p <= k;
  try {
    while (current.size() > std::min(k, p)) {
      const auto [worst, value] = best_removal(objective, current);
      pass_done = true;
      current = without(current, worst);
    }
  } catch (const SubsetObjective::BudgetSignal&) {
    if (!pass_done) budget_exceeded(objective, "backward");
  }
  auto out = finalize_to_k(objective, p, current, k);
  // Survivors ordered by contribution, strongest first.
  std::vector<std::size_t> members = out.selected;
  std::sort(members.begin(), members.end());
  std::vector<double> member_scores;
  for (const auto j : members) member_scores.push_back(out.scores[j]);
  out.selected.clear();
  for (const auto pos : top_k(member_scores, members.size(), false)) out.selected.push_back(members[pos]);
  return out;
}

WrapperOutcome stepwise_selection(SubsetObjective& objective, std::size_t p, std::size_t k) {
  std::vector<std::size_t> current;
  bool pass_done = false;
  try {
    double current_value = objective({});
    while (current.size() < p) {
      const auto [best, value] = best_addition(objective, p, current);
      pass_done = true;
      if (!(value < current_value - kImprovement)) break;
      current.push_back(best);
      current_value = value;
      while (current.size() > 1) {
        const auto [drop, dropped_value] = best_removal(objective, current);
        if (!(dropped_value < current_value - kImprovement)) break;
        current = without(current, drop);
        current_value = dropped_value;
      }
    }
  } catch (const SubsetObjective::BudgetSignal&) {
    if (!pass_done) budget_exceeded(objective, "stepwise");
  }
  return finalize_to_k(objective, p, current, k);
}

WrapperOutcome simulated_annealing(SubsetObjective& objective, std::size_t p, std::size_t k,
                                   const AnnealingSchedule& schedule, std::uint64_t seed,
                                   std::vector<double>* trace) {
  SplitMix64 rng(seed);
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span(order));
  std::vector<bool> in(p, false);
  for (std::size_t i = 0; i < std::min(k, p); ++i) in[order[i]] = true;

  auto members = [&] {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < p; ++j) {
      if (in[j]) s.push_back(j);
    }
    return s;
  };

  std::vector<std::size_t> best = members();
  double current_value = 0.0;
  try {
    current_value = objective(best);
  } catch (const SubsetObjective::BudgetSignal&) {
    budget_exceeded(objective, "simulated_annealing");
  }
  double best_value = current_value;
  double temperature = schedule.t0;

  try {
    for (std::size_t it = 0; it < schedule.iterations; ++it) {
      const auto flip = static_cast<std::size_t>(rng.below(p));
      in[flip] = !in[flip];
      const auto candidate = members();
      bool accept = false;
      double candidate_value = current_value;
      if (!candidate.empty()) {
        candidate_value = objective(candidate);
        const double delta = candidate_value - current_value;
        if (delta <= 0.0) {
          accept = true;
        } else if (temperature > 0.0) {
          accept = rng.uniform() < std::exp(-delta / temperature);
        }
      }
      if (accept) {
        current_value = candidate_value;
        if (current_value < best_value) {
          best_value = current_value;
          best = candidate;
        }
      } else {
        in[flip] = !in[flip];
      }
      if (trace) trace->push_back(current_value);
      temperature *= schedule.ratio;
    }
  } catch (const SubsetObjective::BudgetSignal&) {
    // Budget ran out mid-schedule; keep the best subset seen so far.
  }
  return finalize_to_k(objective, p, best, k);
}

std::vector<std::size_t> rfe_order(const Dataset& ds, std::size_t keep, double ridge_jitter) {
  const std::size_t p = ds.feature_count();
  keep = std::clamp<std::size_t>(keep, 1, std::max<std::size_t>(p, 1));
  std::vector<std::size_t> active(p);
  std::iota(active.begin(), active.end(), std::size_t{0});
  const auto rows = all_rows(ds);
  const Eigen::VectorXd y = target_vector(ds, rows);

  auto coefficients = [&](const std::vector<std::size_t>& cols) {
    const Eigen::MatrixXd x = design_matrix(ds, cols, rows);
    const auto model = ols_fit(Standardizer::fit(x).apply(x), y, ridge_jitter);
    return model.coef.cwiseAbs().eval();
  };

  std::vector<std::size_t> order;
  order.reserve(p);
  while (active.size() > keep) {
    const Eigen::VectorXd mag = coefficients(active);
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
      // `<=` keeps the last minimum, so ties eliminate the higher index.
      if (mag(static_cast<Eigen::Index>(i)) <= mag(static_cast<Eigen::Index>(weakest))) weakest = i;
    }
    order.push_back(active[weakest]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(weakest));
  }
  if (!active.empty()) {
    const Eigen::VectorXd mag = coefficients(active);
    std::vector<std::size_t> pos(active.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
      const double ma = mag(static_cast<Eigen::Index>(a));
      const double mb = mag(static_cast<Eigen::Index>(b));
      if (ma != mb) return ma < mb;
      return active[a] > active[b];
    });
    for (const auto i : pos) order.push_back(active[i]);
  }
  return order;
}

}  // namespace simfs
