#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "simfs/dataset_io.hpp"
#include "simfs/evaluation.hpp"

namespace simfs {

/// Inner-CV MAE of an OLS model on a feature subset, with memoization and an
/// evaluation budget. The empty subset is scored with the training-mean
/// predictor. Folds come from `seed` and are shared by every subset.
class SubsetObjective {
 public:
  SubsetObjective(const Dataset& ds, std::uint64_t seed, std::size_t inner_folds, double ridge_jitter,
                  std::size_t budget);

  /// Raises BudgetSignal when a new evaluation would exceed the budget.
  double operator()(std::vector<std::size_t> subset);

  /// Evaluates without touching the budget.
  double unbounded(std::vector<std::size_t> subset);

  std::size_t evaluations() const noexcept { return evaluations_; }
  std::size_t budget() const noexcept { return budget_; }

  struct BudgetSignal {};

 private:
  double compute(const std::vector<std::size_t>& subset);

  const Dataset& ds_;
  CvConfig cv_;
  std::size_t budget_;
  std::size_t evaluations_ = 0;
  std::map<std::vector<std::size_t>, double> cache_;
};

struct WrapperOutcome {
  std::vector<std::size_t> selected;  // ordered
  std::vector<double> scores;         // per feature
  double objective = 0.0;             // inner-CV MAE of the selected subset
  std::size_t evaluations = 0;
};

/// Shrinks or grows `subset` to exactly min(k, p) members using each feature's
/// marginal contribution to the objective relative to `subset`.
WrapperOutcome finalize_to_k(SubsetObjective& objective, std::size_t p,
                             std::vector<std::size_t> subset, std::size_t k);

WrapperOutcome forward_selection(SubsetObjective& objective, std::size_t p, std::size_t k);
WrapperOutcome backward_elimination(SubsetObjective& objective, std::size_t p, std::size_t k);
WrapperOutcome stepwise_selection(SubsetObjective& objective, std::size_t p, std::size_t k);

struct AnnealingSchedule {
  double t0 = 1.0;
  double ratio = 0.95;
  std::size_t iterations = 500;
};

/// Bit-flip simulated annealing with Metropolis acceptance. `trace`, when
/// given, receives the current objective after every iteration.
WrapperOutcome simulated_annealing(SubsetObjective& objective, std::size_t p, std::size_t k,
                                   const AnnealingSchedule& schedule, std::uint64_t seed,
                                   std::vector<double>* trace = nullptr);

/// Recursive feature elimination with OLS on standardized columns. Returns all
/// feature indices from least to most important: the elimination order
/// (smallest |coefficient| first) until `keep` remain, then the survivors by
/// increasing final |coefficient|. Ties go against the higher index.
std::vector<std::size_t> rfe_order(const Dataset& ds, std::size_t keep, double ridge_jitter);

}  // namespace simfs
