#include "simfs/selection.hpp"

#include <algorithm>
#include <numeric>

#include "simfs/embedded.hpp"
#include "simfs/error.hpp"
#include "simfs/filters.hpp"
#include "simfs/preprocessing.hpp"
#include "simfs/random_forest.hpp"
#include "simfs/rng.hpp"
#include "simfs/wrappers.hpp"

namespace simfs {
namespace {

struct MethodEntry {
  MethodKind kind;
  std::string_view name;
  Category category;
};

constexpr MethodEntry kMethods[] = {
    {MethodKind::Euc, "euc", Category::Similarity},
    {MethodKind::Dtw, "dtw", Category::Similarity},
    {MethodKind::Lcss, "lcss", Category::Similarity},
    {MethodKind::Edr, "edr", Category::Similarity},
    {MethodKind::Epr, "epr", Category::Similarity},
    {MethodKind::Twed, "twed", Category::Similarity},
    {MethodKind::Hausdorff, "hausdorff", Category::Similarity},
    {MethodKind::Frechet, "frechet", Category::Similarity},
    {MethodKind::Sspd, "sspd", Category::Similarity},
    {MethodKind::Correlation, "corrolation", Category::Filter},
    {MethodKind::Variance, "var", Category::Filter},
    {MethodKind::MiScore, "MI_Score", Category::Filter},
    {MethodKind::InfoGain, "inf", Category::Filter},
    {MethodKind::Chi, "chi", Category::Filter},
    {MethodKind::Fisher, "fisher", Category::Filter},
    {MethodKind::DataDispersion, "data_dispersion", Category::Filter},
    {MethodKind::Forward, "forward", Category::Wrapper},
    {MethodKind::Backward, "backward", Category::Wrapper},
    {MethodKind::Stepwise, "stepwise", Category::Wrapper},
    {MethodKind::Recursive, "recursive", Category::Wrapper},
    {MethodKind::SimulatedAnnealing, "simulated_annealing", Category::Wrapper},
    {MethodKind::Lasso, "lasso", Category::Embedded},
    {MethodKind::TreeBased, "Tree-based", Category::Embedded},
    {MethodKind::Rfecv, "rfecv", Category::Embedded},
};

constexpr std::pair<std::string_view, MethodKind> kAliases[] = {
    {"erp", MethodKind::Epr},
    {"euclidean", MethodKind::Euc},
    {"correlation", MethodKind::Correlation},
    {"variance", MethodKind::Variance},
    {"mi_score", MethodKind::MiScore},
    {"information_gain", MethodKind::InfoGain},
    {"rfe", MethodKind::Recursive},
    {"tree", MethodKind::TreeBased},
    {"tree-based", MethodKind::TreeBased},
};

const MethodEntry& entry(MethodKind kind) {
  for (const auto& e : kMethods) {
    if (e.kind == kind) return e;
  }
  return kMethods[0];
}

std::vector<std::string> names_of(const Dataset& ds, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (const auto j : idx) out.push_back(ds.feature_names[j]);
  return out;
}

std::vector<FeatureScore> score_table(const Dataset& ds, const std::vector<double>& scores) {
  std::vector<FeatureScore> out;
  out.reserve(scores.size());
  for (std::size_t j = 0; j < scores.size(); ++j) out.push_back({ds.feature_names[j], scores[j]});
  return out;
}

void require_imputed(const Dataset& ds) {
  if (ds.missing_count() > 0) fail(ErrorCode::NotImputed, "selection needs an imputed dataset");
  if (ds.rows() == 0) fail(ErrorCode::InvalidArgument, "dataset has no rows");
}

void require_category(const MethodSpec& spec, Category expected) {
  if (spec.category() != expected) {
    fail(ErrorCode::InvalidArgument, std::string(method_name(spec.kind)) + " is a " +
                                         std::string(category_name(spec.category())) + " method, not " +
                                         std::string(category_name(expected)));
  }
  if (spec.k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
}

// Scores ranked by position: most important first gets p, last gets 1.
std::vector<double> positional_scores(std::size_t p, const std::vector<std::size_t>& importance_order) {
  std::vector<double> scores(p, 0.0);
  for (std::size_t i = 0; i < importance_order.size(); ++i) {
    scores[importance_order[i]] = static_cast<double>(p - i);
  }
  return scores;
}

}  // namespace

Category category_of(MethodKind kind) noexcept { return entry(kind).category; }

std::string_view category_name(Category c) noexcept {
  switch (c) {
    case Category::Similarity: return "similarity";
    case Category::Filter: return "Filters";
    case Category::Wrapper: return "Wrappers";
    case Category::Embedded: return "Embedded";
  }
  return "";
}

std::string_view method_name(MethodKind kind) noexcept { return entry(kind).name; }

std::optional<MethodKind> parse_method(std::string_view name) noexcept {
  for (const auto& e : kMethods) {
    if (e.name == name) return e.kind;
  }
  for (const auto& [alias, kind] : kAliases) {
    if (alias == name) return kind;
  }
  return std::nullopt;
}

std::vector<MethodKind> paper23_roster() {
  return {MethodKind::Euc,         MethodKind::Dtw,         MethodKind::Lcss,
          MethodKind::Edr,         MethodKind::Epr,         MethodKind::Hausdorff,
          MethodKind::Frechet,     MethodKind::Sspd,        MethodKind::Correlation,
          MethodKind::Variance,    MethodKind::MiScore,     MethodKind::InfoGain,
          MethodKind::Chi,         MethodKind::Fisher,      MethodKind::DataDispersion,
          MethodKind::Forward,     MethodKind::Backward,    MethodKind::Stepwise,
          MethodKind::Recursive,   MethodKind::SimulatedAnnealing,
          MethodKind::Lasso,       MethodKind::TreeBased,   MethodKind::Rfecv};
}

std::vector<MethodKind> full_roster() {
  std::vector<MethodKind> out;
  for (const auto& e : kMethods) out.push_back(e.kind);
  return out;
}

std::optional<Measure> measure_of(MethodKind kind) noexcept {
  switch (kind) {
    case MethodKind::Euc: return Measure::Euclidean;
    case MethodKind::Dtw: return Measure::Dtw;
    case MethodKind::Lcss: return Measure::Lcss;
    case MethodKind::Edr: return Measure::Edr;
    case MethodKind::Epr: return Measure::Erp;
    case MethodKind::Twed: return Measure::Twed;
    case MethodKind::Hausdorff: return Measure::Hausdorff;
    case MethodKind::Frechet: return Measure::Frechet;
    case MethodKind::Sspd: return Measure::Sspd;
    default: return std::nullopt;
  }
}

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k, bool ascending) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? scores[a] < scores[b] : scores[a] > scores[b];
  });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

SelectionResult similarity_select(const Dataset& ds, const MethodSpec& spec) {
  require_category(spec, Category::Similarity);
  require_imputed(ds);
  spec.distance.validate();
  const Measure measure = *measure_of(spec.kind);
  if (measure == Measure::Sspd && ds.rows() < 2) {
    fail(ErrorCode::TooShortForSSPD, "sspd needs at least two years");
  }
  const auto target = spec.normalize ? znormalize(ds.target) : ds.target;
  std::vector<double> scores(ds.feature_count());
  for (std::size_t j = 0; j < ds.feature_count(); ++j) {
    const auto feature = spec.normalize ? znormalize(ds.features[j]) : ds.features[j];
    scores[j] = distance(measure, feature, target, spec.distance);
  }
  SelectionResult out;
  out.method = spec;
  out.selected = names_of(ds, top_k(scores, spec.k, true));
  out.scores = score_table(ds, scores);
  return out;
}

SelectionResult filter_select(const Dataset& ds, const MethodSpec& spec) {
  require_category(spec, Category::Filter);
  require_imputed(ds);
  const auto scores = filter_scores(ds, spec.kind);
  SelectionResult out;
  out.method = spec;
  out.selected = names_of(ds, top_k(scores, spec.k, false));
  out.scores = score_table(ds, scores);
  return out;
}

SelectionResult wrapper_select(const Dataset& ds, const MethodSpec& spec) {
  require_category(spec, Category::Wrapper);
  require_imputed(ds);
  const std::size_t p = ds.feature_count();
  const auto& w = spec.wrapper;
  if (w.budget < p) {
    fail(ErrorCode::BudgetExceeded, "budget " + std::to_string(w.budget) + " is below the " +
                                        std::to_string(p) + " evaluations of one pass");
  }

  SelectionResult out;
  out.method = spec;
  if (spec.kind == MethodKind::Recursive) {
    auto order = rfe_order(ds, std::min(spec.k, p), w.ridge_jitter);
    std::reverse(order.begin(), order.end());
    out.scores = score_table(ds, positional_scores(p, order));
    order.resize(std::min(spec.k, p));
    out.selected = names_of(ds, order);
    return out;
  }

  SubsetObjective objective(ds, spec.seed, w.inner_folds, w.ridge_jitter, w.budget);
  WrapperOutcome outcome;
  switch (spec.kind) {
    case MethodKind::Forward: outcome = forward_selection(objective, p, spec.k); break;
    case MethodKind::Backward: outcome = backward_elimination(objective, p, spec.k); break;
    case MethodKind::Stepwise: outcome = stepwise_selection(objective, p, spec.k); break;
    case MethodKind::SimulatedAnnealing:
      outcome = simulated_annealing(objective, p, spec.k,
                                    {w.anneal_t0, w.anneal_ratio, w.anneal_iterations},
                                    mix64(spec.seed ^ 0x13198a2e03707344ULL));
      break;
    default: break;
  }
  out.selected = names_of(ds, outcome.selected);
  out.scores = score_table(ds, outcome.scores);
  out.diagnostics["inner_cv_mae"] = outcome.objective;
  out.diagnostics["evaluations"] = static_cast<double>(outcome.evaluations);
  return out;
}

SelectionResult embedded_select(const Dataset& ds, const MethodSpec& spec) {
  require_category(spec, Category::Embedded);
  require_imputed(ds);
  const std::size_t p = ds.feature_count();
  SelectionResult out;
  out.method = spec;

  switch (spec.kind) {
    case MethodKind::Lasso: {
      const auto fit = lasso_fit(ds, spec.lasso, spec.wrapper.inner_folds, spec.seed);
      std::vector<double> scores(p);
      for (std::size_t j = 0; j < p; ++j) scores[j] = std::abs(fit.coef(static_cast<Eigen::Index>(j)));
      out.selected = names_of(ds, top_k(scores, spec.k, false));
      out.scores = score_table(ds, scores);
      out.diagnostics["lambda"] = fit.lambda;
      out.diagnostics["lambda_max"] = fit.lambda_max;
      break;
    }
    case MethodKind::TreeBased: {
      const auto scores = forest_importance(ds, spec.forest, spec.seed);
      out.selected = names_of(ds, top_k(scores, spec.k, false));
      out.scores = score_table(ds, scores);
      break;
    }
    case MethodKind::Rfecv: {
      const auto fit = rfecv_fit(ds, spec.rfecv_max_size, spec.wrapper.inner_folds, spec.wrapper.ridge_jitter,
                                 spec.seed);
      std::vector<std::size_t> chosen(fit.importance_order.begin(),
                                      fit.importance_order.begin() +
                                          static_cast<std::ptrdiff_t>(std::min(spec.k, p)));
      out.selected = names_of(ds, chosen);
      out.scores = score_table(ds, positional_scores(p, fit.importance_order));
      out.diagnostics["best_size"] = static_cast<double>(fit.best_size);
      out.diagnostics["best_cv_mae"] = fit.cv_mae[fit.best_size - 1];
      break;
    }
    default: break;
  }
  return out;
}

SelectionResult select_features(const Dataset& ds, const MethodSpec& spec) {
  switch (spec.category()) {
    case Category::Similarity: return similarity_select(ds, spec);
    case Category::Filter: return filter_select(ds, spec);
    case Category::Wrapper: return wrapper_select(ds, spec);
    case Category::Embedded: return embedded_select(ds, spec);
  }
  fail(ErrorCode::UnknownMethod, "unhandled category");
}

}  // namespace simfs
