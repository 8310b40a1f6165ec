#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "simfs/benchmark.hpp"
#include "simfs/error.hpp"
#include "simfs/evaluation.hpp"
#include "simfs/fixtures.hpp"
#include "simfs/linear_model.hpp"
#include "simfs/rng.hpp"

using namespace simfs;
using Catch::Matchers::WithinAbs;

namespace {

Dataset linear_dataset(std::size_t n, std::uint64_t seed, double noise) {
  SplitMix64 rng(seed);
  Dataset ds;
  ds.target_name = "y";
  ds.feature_names = {"a", "b", "noise"};
  ds.features.assign(3, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& f : ds.features) f[r] = rng.normal();
    ds.target.push_back(3.0 * ds.features[0][r] - ds.features[1][r] + 0.5 + noise * rng.normal());
    ds.years.push_back(1990 + int(r));
  }
  return ds;
}

BenchmarkReport mock_report(const std::vector<double>& maes) {
  BenchmarkReport rep;
  rep.targets = {"t"};
  const auto roster = paper23_roster();
  rep.methods.assign(roster.begin(), roster.begin() + long(maes.size()));
  for (std::size_t m = 0; m < maes.size(); ++m) {
    CellResult c;
    c.target = "t";
    c.method = rep.methods[m];
    c.ok = true;
    c.metrics.mean_mae = c.metrics.mean_rmse = maes[m];
    rep.cells.push_back(c);
  }
  return rep;
}

}  // namespace

TEST_CASE("fold sizes for 33 rows in 10 folds") {
  const auto folds = kfold_split(33, 10, 42);
  std::vector<std::size_t> sizes;
  for (const auto& f : folds) sizes.push_back(f.size());
  CHECK(sizes == std::vector<std::size_t>{4, 4, 4, 3, 3, 3, 3, 3, 3, 3});
}

TEST_CASE("folds partition the rows and are reproducible") {
  for (std::size_t n : {2, 7, 33, 100}) {
    for (std::size_t k = 2; k <= std::min<std::size_t>(n, 12); ++k) {
      const auto folds = kfold_split(n, k, n * 31 + k);
      std::vector<std::size_t> all;
      for (const auto& f : folds) {
        CHECK(std::is_sorted(f.begin(), f.end()));
        all.insert(all.end(), f.begin(), f.end());
      }
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> expected(n);
      std::iota(expected.begin(), expected.end(), std::size_t{0});
      CHECK(all == expected);
      CHECK(kfold_split(n, k, n * 31 + k) == folds);
    }
  }
  CHECK(kfold_split(33, 10, 1) != kfold_split(33, 10, 2));
  CHECK_THROWS_AS(kfold_split(5, 6, 0), Error);
}

TEST_CASE("error metrics") {
  const std::vector<double> a{1, 2, 3};
  CHECK(metrics(a, a) == ErrorPair{0.0, 0.0});
  const auto e = metrics(std::vector<double>{3, -4}, std::vector<double>{0, 0});
  CHECK_THAT(e.rmse, WithinAbs(std::sqrt(12.5), 1e-12));
  CHECK(e.mae == 3.5);
  const auto c = metrics(std::vector<double>{2, 0, 2}, std::vector<double>{0, 2, 4});
  CHECK(c.rmse == 2.0);
  CHECK(c.mae == 2.0);
  CHECK_THROWS_AS(metrics(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("ols recovers an exact line") {
  Eigen::MatrixXd x(6, 1);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) {
    x(i, 0) = i;
    y(i) = 2.0 * i + 1.0;
  }
  const auto fit = ols_fit(x, y);
  CHECK_THAT(fit.coef(0), WithinAbs(2.0, 1e-9));
  CHECK_THAT(fit.intercept, WithinAbs(1.0, 1e-9));
}

TEST_CASE("ols with duplicated columns stays finite") {
  Eigen::MatrixXd x(8, 2);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 8; ++i) {
    x(i, 0) = x(i, 1) = i * 0.5 - 1.0;
    y(i) = 4.0 * x(i, 0) - 2.0;
  }
  for (const double jitter : {1e-8, 0.0}) {
    const auto fit = ols_fit(x, y, jitter);
    CHECK(fit.coef.allFinite());
    CHECK((fit.predict(x) - y).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("ols with more columns than rows interpolates") {
  SplitMix64 rng(4);
  Eigen::MatrixXd x(5, 12);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 12; ++j) x(i, j) = rng.normal();
    y(i) = rng.normal();
  }
  CHECK((ols_fit(x, y).predict(x) - y).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("an exactly linear target has near-zero error") {
  const auto ds = linear_dataset(40, 1, 0.0);
  const std::vector<std::string> subset{"a", "b"};
  CHECK(evaluate_subset(ds, subset, {}).mean_mae <= 1e-6);
}

TEST_CASE("a noise subset is close to the mean predictor") {
  SplitMix64 rng(8);
  Dataset ds;
  ds.target_name = "y";
  ds.feature_names = {"n1"};
  ds.features.assign(1, {});
  for (int r = 0; r < 200; ++r) {
    ds.features[0].push_back(rng.normal());
    ds.target.push_back(rng.normal());
    ds.years.push_back(r);
  }
  const std::vector<std::string> subset{"n1"};
  const double noise = evaluate_subset(ds, subset, {}).mean_mae;
  const double baseline = evaluate_mean_predictor(ds, {}).mean_mae;
  CHECK(std::abs(noise - baseline) <= 0.25 * baseline);
}

TEST_CASE("evaluation is deterministic and pooling is selectable") {
  const auto ds = linear_dataset(33, 2, 0.5);
  const std::vector<std::string> subset{"a", "noise"};
  CvConfig cv;
  const auto a = evaluate_subset(ds, subset, cv);
  CHECK(a == evaluate_subset(ds, subset, cv));
  CHECK(a.per_iteration.size() == 10);
  CHECK(a.mean_rmse >= a.mean_mae);
  cv.pooling = Pooling::PerFold;
  const auto b = evaluate_subset(ds, subset, cv);
  CHECK(b.mean_mae > 0.0);
  CHECK(b != a);
}

TEST_CASE("evaluation rejects unknown features and empty subsets") {
  const auto ds = linear_dataset(20, 3, 0.1);
  CHECK_THROWS(evaluate_subset(ds, std::vector<std::string>{"zzz"}, {}));
  CHECK_THROWS(evaluate_subset(ds, std::vector<std::string>{}, {}));
}

TEST_CASE("average ranks") {
  CHECK(average_ranks({1.0, 2.0}, {true, true}) == std::vector<double>{1.0, 2.0});
  CHECK(average_ranks({3.0, 3.0}, {true, true}) == std::vector<double>{1.5, 1.5});
  CHECK(average_ranks({5.0, 1.0, 5.0, 0.0}, {true, true, true, false}) == std::vector<double>{2.5, 1.0, 2.5, 4.0});
  CHECK(average_ranks({1.0, 2.0, 3.0}, {false, true, false}) == std::vector<double>{2.5, 1.0, 2.5});
}

TEST_CASE("a lower average MAE ranks first") {
  // euc carries the stepwise value and dtw the frechet value.
  const auto table = rank_methods(mock_report({32.0299, 51.6163}));
  CHECK(table.method_avg_rank == std::vector<double>{1.0, 2.0});
}

TEST_CASE("rank tables sum per target and average by category") {
  SplitMix64 rng(17);
  BenchmarkReport rep;
  rep.methods = paper23_roster();
  for (int t = 0; t < 6; ++t) {
    rep.targets.push_back("t" + std::to_string(t));
    for (const auto m : rep.methods) {
      CellResult c;
      c.target = rep.targets.back();
      c.method = m;
      c.ok = rng.uniform() > 0.1;
      c.metrics.mean_mae = double(rng.below(5));
      c.metrics.mean_rmse = rng.uniform();
      rep.cells.push_back(c);
    }
  }
  const double m = double(rep.methods.size());
  for (const auto metric : {RankMetric::Mae, RankMetric::Rmse}) {
    const auto table = rank_methods(rep, metric);
    for (const auto& row : table.ranks) {
      CHECK_THAT(std::accumulate(row.begin(), row.end(), 0.0), WithinAbs(m * (m + 1) / 2, 1e-9));
    }
    for (const auto& [cat, avg] : table.category_avg_rank) {
      double sum = 0.0;
      int count = 0;
      for (std::size_t i = 0; i < table.methods.size(); ++i) {
        if (category_of(table.methods[i]) == cat) {
          sum += table.method_avg_rank[i];
          ++count;
        }
      }
      CHECK(avg == sum / count);
    }
  }
}

TEST_CASE("benchmark grid shape and failure isolation") {
  const auto panel = make_benchmark_panel(3);
  const std::vector<std::string> targets{benchmark_target_names()[0], benchmark_target_names()[1]};
  std::vector<MethodSpec> roster(3);
  roster[0].kind = MethodKind::Euc;
  roster[1].kind = MethodKind::Correlation;
  roster[2].kind = MethodKind::Lasso;
  CvConfig cv;
  cv.iterations = 2;
  const auto rep = run_benchmark(panel, targets, roster, {}, cv);
  CHECK(rep.cells.size() == 6);
  for (const auto& c : rep.cells) CHECK(c.ok);
  CHECK(rep.cell(1, 2).target == targets[1]);
  CHECK(rep.cell(1, 2).method == MethodKind::Lasso);

  BenchmarkOptions parallel;
  parallel.jobs = 4;
  const auto again = run_benchmark(panel, targets, roster, {}, cv, parallel);
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    CHECK(again.cells[i].selected == rep.cells[i].selected);
    CHECK(again.cells[i].metrics == rep.cells[i].metrics);
  }

  // A selector error marks only its own cell.
  std::vector<MethodSpec> mixed(2);
  mixed[0].kind = MethodKind::Stepwise;
  mixed[0].wrapper.budget = 1;
  mixed[1].kind = MethodKind::Euc;
  const auto partial = run_benchmark(panel, targets, mixed, {}, cv);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(!partial.cell(t, 0).ok);
    CHECK(partial.cell(t, 0).error.find("BudgetExceeded") != std::string::npos);
    CHECK(partial.cell(t, 1).ok);
  }
  const auto ranks = rank_methods(partial);
  CHECK(ranks.method_avg_rank == std::vector<double>{2.0, 1.0});

  // A single-row window leaves nothing that can be cross-validated.
  BenchmarkOptions tiny;
  tiny.years = {2000, 2000};
  try {
    run_benchmark(panel, targets, mixed, {}, cv, tiny);
    FAIL("expected BenchmarkEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BenchmarkEmpty);
  }
}
