#include "catch_amalgamated.hpp"

#include <cmath>
#include <limits>

#include "distance_oracles.hpp"
#include "simfs/error.hpp"
#include "simfs/rng.hpp"
#include "simfs/similarity.hpp"

using namespace simfs;
using Catch::Matchers::WithinAbs;
using V = std::vector<double>;

namespace {

V random_series(SplitMix64& rng, std::size_t n) {
  V s(n);
  for (auto& v : s) v = 4.0 * rng.uniform() - 2.0;
  return s;
}

ErrorCode code_of(Measure m, const V& x, const V& y) {
  try {
    distance(m, x, y);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("euclidean") {
  CHECK(euclidean(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
  CHECK(euclidean(V{0, 0}, V{3, 4}) == 5.0);
  CHECK_THAT(euclidean(V{1, 2}, V{2, 4}), WithinAbs(std::sqrt(5.0), 1e-12));
  CHECK(code_of(Measure::Euclidean, V{1, 2}, V{1}) == ErrorCode::LengthMismatch);
}

TEST_CASE("dtw") {
  CHECK(dtw(V{1, 5, 2}, V{1, 5, 2}) == 0.0);
  CHECK(dtw(V{0, 0, 1}, V{0, 1}) == 0.0);
  CHECK(dtw(V{0, 2}, V{0, 0, 0}) == 2.0);
}

TEST_CASE("lcss") {
  CHECK(lcss_distance(V{1, 2, 3}, V{1, 2, 3}, 0.5) == 0.0);
  CHECK(lcss_distance(V{0, 0}, V{5, 5, 5}, 0.5) == 1.0);
  CHECK_THAT(lcss_distance(V{1, 2, 3}, V{2, 3, 4}, 0.5), WithinAbs(1.0 / 3.0, 1e-15));
  // a window of zero only allows matches at the same position
  CHECK(lcss_distance(V{1, 2, 3}, V{2, 3, 4}, 0.5, 0) == 1.0);
}

TEST_CASE("edr") {
  CHECK(edr(V{1, 2, 3}, V{1, 2, 3}, 0.25) == 0.0);
  CHECK(edr(V{1}, V{5}, 0.5) == 1.0);
  CHECK(edr(V{1, 2, 3}, V{1, 3}, 0.25) == 1.0);
}

TEST_CASE("erp") {
  CHECK(erp(V{1, 2}, V{1, 2}, 7.0) == 0.0);
  CHECK(erp(V{1, 2}, V{1}, 0.0) == 2.0);
  CHECK(erp(V{0}, V{0, 3}, 0.0) == 3.0);
}

TEST_CASE("twed") {
  CHECK(twed(V{1, -1, 2}, V{1, -1, 2}, 0.001, 1.0) == 0.0);
  CHECK(twed(V{1}, V{2}, 0.001, 1.0) == 1.0);
  CHECK(twed(V{1, 2}, V{1}, 0.0, 0.0) == 1.0);
}

TEST_CASE("hausdorff") {
  CHECK(hausdorff(V{1, 3}, V{1, 3}) == 0.0);
  CHECK(hausdorff(V{0, 0}, V{3, 3}) == 3.0);
  CHECK(hausdorff(V{0, 0}, V{0, 4}) == 4.0);
}

TEST_CASE("discrete frechet") {
  CHECK(discrete_frechet(V{1, 3}, V{1, 3}) == 0.0);
  CHECK(discrete_frechet(V{0, 0}, V{3, 3}) == 3.0);
  CHECK(discrete_frechet(V{0, 2, 0}, V{0, 0}) == 2.0);
}

TEST_CASE("sspd") {
  CHECK(sspd(V{1, 3, 2}, V{1, 3, 2}) == 0.0);
  CHECK(sspd(V{0, 0}, V{3, 3}) == 3.0);
  // directed means: 2 and (0 + 4/sqrt(17)) / 2
  CHECK_THAT(sspd(V{0, 4}, V{0, 0}), WithinAbs(0.5 * (2.0 + 2.0 / std::sqrt(17.0)), 1e-12));
  CHECK_THAT(sspd(V{0, 4}, V{0, 0}), WithinAbs(1.242536, 1e-6));
  CHECK(code_of(Measure::Sspd, V{1}, V{1, 2}) == ErrorCode::TooShortForSSPD);
}

TEST_CASE("invalid input is rejected by every measure") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto m : kAllMeasures) {
    CAPTURE(measure_name(m));
    CHECK(code_of(m, V{}, V{1, 2}) == ErrorCode::EmptySeries);
    CHECK(code_of(m, V{1, nan}, V{1, 2}) == ErrorCode::NonFiniteInput);
    CHECK(code_of(m, V{1, 2}, V{1, std::numeric_limits<double>::infinity()}) == ErrorCode::NonFiniteInput);
  }
}

TEST_CASE("measure names round-trip") {
  for (const auto m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
  CHECK(parse_measure("erp") == Measure::Erp);
  CHECK(!parse_measure("cosine"));
}

TEST_CASE("dynamic programs agree with brute-force enumeration") {
  const auto all = oracle::integer_series(3, -2, 2);
  SplitMix64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& a = all[rng.below(all.size())];
    V b(1 + rng.below(5));
    for (auto& v : b) v = double(int(rng.below(5)) - 2);
    CHECK(dtw(a, b) == oracle::dtw(a, b));
    CHECK(lcss_distance(a, b, 1.0, 1) == oracle::lcss_distance(a, b, 1.0, 1));
    CHECK(edr(a, b, 0.25) == oracle::edr(a, b, 0.25));
    CHECK(erp(a, b, 0.5) == oracle::erp(a, b, 0.5));
    CHECK(twed(a, b, 0.001, 1.0) == oracle::twed(a, b, 0.001, 1.0));
    CHECK_THAT(discrete_frechet(a, b), WithinAbs(oracle::discrete_frechet(a, b), 1e-9));
    CHECK_THAT(hausdorff(a, b), WithinAbs(oracle::hausdorff(a, b), 1e-9));
    if (a.size() > 1 && b.size() > 1) CHECK_THAT(sspd(a, b), WithinAbs(oracle::sspd(a, b), 1e-9));
  }
}

TEST_CASE("metric properties on random pairs") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    const auto x = random_series(rng, n);
    const auto y = random_series(rng, n);
    for (const auto m : kAllMeasures) {
      CAPTURE(measure_name(m), trial);
      const double d = distance(m, x, y);
      CHECK(d >= 0.0);
      CHECK_THAT(distance(m, y, x), WithinAbs(d, 1e-12));
      CHECK_THAT(distance(m, x, x), WithinAbs(0.0, 1e-12));
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::abs(x[i] - y[i]);
    CHECK(dtw(x, y) <= l1);
    const auto z = random_series(rng, 1 + rng.below(12));
    CHECK(erp(x, y, 0.3) <= erp(x, z, 0.3) + erp(z, y, 0.3) + 1e-9);
  }
}

TEST_CASE("distance parameter validation") {
  DistanceParams p;
  p.lcss_epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.twed_nu = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
}
