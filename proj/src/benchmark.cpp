#include "simfs/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "simfs/error.hpp"
#include "simfs/rng.hpp"

namespace simfs {
namespace {

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

}  // namespace

BenchmarkReport run_benchmark(const IndicatorPanel& panel, const std::vector<std::string>& targets,
                              const std::vector<MethodSpec>& roster, const PreprocessConfig& preprocess,
                              const CvConfig& cv, const BenchmarkOptions& options) {
  if (targets.empty()) fail(ErrorCode::InvalidArgument, "no targets");
  if (roster.empty()) fail(ErrorCode::InvalidArgument, "empty roster");
  preprocess.validate();

  BenchmarkReport report;
  report.targets = targets;
  for (const auto& spec : roster) report.methods.push_back(spec.kind);
  report.provenance = {preprocess, cv, options.years, roster};

  std::vector<std::optional<Dataset>> datasets(targets.size());
  std::vector<std::string> dataset_errors(targets.size());
  parallel_for(targets.size(), options.jobs, [&](std::size_t t) {
    try {
      auto ds = simfs::preprocess(build_dataset(panel, targets[t], options.years), preprocess);
      cv.validate(ds.rows());
      datasets[t] = std::move(ds);
    } catch (const std::exception& e) {
      dataset_errors[t] = e.what();
    }
  });

  const std::size_t m = roster.size();
  report.cells.resize(targets.size() * m);
  parallel_for(report.cells.size(), options.jobs, [&](std::size_t i) {
    const std::size_t t = i / m;
    auto spec = roster[i % m];
    CellResult& cell = report.cells[i];
    cell.target = targets[t];
    cell.method = spec.kind;
    cell.selection_seed = derive_seed(cv.base_seed, targets[t], method_name(spec.kind));
    if (!datasets[t]) {
      cell.error = dataset_errors[t];
      return;
    }
    try {
      spec.seed = cell.selection_seed;
      const auto selection = select_features(*datasets[t], spec);
      cell.selected = selection.selected;
      cell.metrics = evaluate_subset(*datasets[t], cell.selected, cv);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  if (std::none_of(report.cells.begin(), report.cells.end(), [](const CellResult& c) { return c.ok; })) {
    std::string reason = report.cells.empty() ? std::string("no cells") : report.cells.front().error;
    fail(ErrorCode::BenchmarkEmpty, "every cell failed (first error: " + reason + ")");
  }
  return report;
}

std::vector<double> average_ranks(const std::vector<double>& values, const std::vector<bool>& ok) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (ok[i]) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos + 1;
    while (end < order.size() && values[order[end]] == values[order[pos]]) ++end;
    const double shared = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = pos; i < end; ++i) ranks[order[i]] = shared;
    pos = end;
  }
  const std::size_t failed = n - order.size();
  if (failed > 0) {
    const double shared = (static_cast<double>(order.size() + 1) + static_cast<double>(n)) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ok[i]) ranks[i] = shared;
    }
  }
  return ranks;
}

RankTable rank_methods(const BenchmarkReport& report, RankMetric metric) {
  RankTable table;
  table.metric = metric;
  table.targets = report.targets;
  table.methods = report.methods;
  const std::size_t m = report.methods.size();
  const std::size_t t_count = report.targets.size();

  table.method_avg_rank.assign(m, 0.0);
  std::vector<double> metric_sum(m, 0.0);
  std::vector<std::size_t> metric_count(m, 0);
  for (std::size_t t = 0; t < t_count; ++t) {
    std::vector<double> values(m, 0.0);
    std::vector<bool> ok(m, false);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& c = report.cell(t, j);
      ok[j] = c.ok;
      values[j] = metric == RankMetric::Mae ? c.metrics.mean_mae : c.metrics.mean_rmse;
      if (c.ok) {
        metric_sum[j] += values[j];
        ++metric_count[j];
      }
    }
    table.ranks.push_back(average_ranks(values, ok));
    for (std::size_t j = 0; j < m; ++j) table.method_avg_rank[j] += table.ranks.back()[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (t_count > 0) table.method_avg_rank[j] /= static_cast<double>(t_count);
    table.method_avg_metric.push_back(metric_count[j] > 0
                                          ? metric_sum[j] / static_cast<double>(metric_count[j])
                                          : std::numeric_limits<double>::quiet_NaN());
  }

  for (const Category c : {Category::Similarity, Category::Filter, Category::Wrapper, Category::Embedded}) {
    double sum = 0.0;
    std::size_t members = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (category_of(table.methods[j]) != c) continue;
      sum += table.method_avg_rank[j];
      ++members;
    }
    if (members > 0) table.category_avg_rank.emplace_back(c, sum / static_cast<double>(members));
  }
  return table;
}

}  // namespace simfs
