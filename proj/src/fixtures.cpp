#include "simfs/fixtures.hpp"

#include <cmath>

#include "simfs/rng.hpp"

namespace simfs {

const std::vector<std::string>& benchmark_target_names() {
  static const std::vector<std::string> names = {
      "Adjusted savings consumption of fixed capital",
      "Broad money",
      "Food production index (2014-2016 = 100)",
      "Foreign direct investment, net inflows (% of GDP)",
      "gdp growth",
      "General government final consumption expenditure (% of GDP)",
      "GNI",
      "Gross domestic income",
      "Gross domestic saving",
      "Gross national expenditure (% of GDP)",
      "Gross value added at basic prices",
      "Households and NPISHs Final consumption expenditure per capita (constant 2015 US$)",
      "Imports of goods and services (constant 2015 US$)",
      "Manufacturing, value added (annual % growth)",
      "Official exchange rate (LCU per US$, period average)",
      "Stocks traded, total value (% of GDP)",
      "Total debt service (% of exports of goods, services and primary income)",
      "Unemployment, total (% of total labor force) (modeled ILO estimate)",
      "Wholesale price index (2010 = 100)",
      "Inflation consumer prices",
  };
  return names;
}

IndicatorPanel make_benchmark_panel(std::uint64_t seed) {
  constexpr int kFirstYear = 1985;
  constexpr int kLastYear = 2022;
  constexpr std::size_t kYears = kLastYear - kFirstYear + 1;
  constexpr std::size_t kDrivers = 12;
  constexpr std::size_t kDistractors = 10;
  constexpr std::size_t kSparse = 2;

  SplitMix64 rng(seed);
  auto ar1 = [&](double phi) {
    std::vector<double> s(kYears);
    double v = rng.normal();
    for (auto& x : s) {
      v = phi * v + rng.normal();
      x = v;
    }
    return s;
  };

  IndicatorPanel panel;
  panel.country_name = "Synthetic Republic";
  panel.country_code = "SYN";
  for (int y = kFirstYear; y <= kLastYear; ++y) panel.years.push_back(y);

  std::vector<std::vector<double>> drivers;
  for (std::size_t d = 0; d < kDrivers; ++d) drivers.push_back(ar1(0.6));

  for (std::size_t t = 0; t < benchmark_target_names().size(); ++t) {
    const std::size_t picks[3] = {t % kDrivers, (t + 5) % kDrivers, (t + 7) % kDrivers};
    double weights[3];
    for (auto& w : weights) w = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (1.0 + 2.0 * rng.uniform());
    const double scale = std::pow(10.0, 3.0 * rng.uniform());
    const double offset = scale * (5.0 + 10.0 * rng.uniform());
    std::vector<double> row(kYears);
    for (std::size_t i = 0; i < kYears; ++i) {
      double v = 0.3 * rng.normal();
      for (std::size_t k = 0; k < 3; ++k) v += weights[k] * drivers[picks[k]][i];
      row[i] = offset + scale * v;
    }
    panel.indicators.push_back({benchmark_target_names()[t], "TGT." + std::to_string(t + 1)});
    panel.values.push_back(std::move(row));
  }

  for (std::size_t d = 0; d < kDrivers; ++d) {
    std::vector<double> row = drivers[d];
    const double scale = std::pow(10.0, 2.0 * rng.uniform());
    for (auto& v : row) v = scale * (3.0 + v);
    panel.indicators.push_back({"Driver indicator " + std::to_string(d + 1), "DRV." + std::to_string(d + 1)});
    panel.values.push_back(std::move(row));
  }

  for (std::size_t d = 0; d < kDistractors; ++d) {
    std::vector<double> row = ar1(0.9);
    const double scale = std::pow(10.0, 4.0 + 3.0 * rng.uniform());
    for (auto& v : row) v = scale * (10.0 + v);
    panel.indicators.push_back({"Distractor series " + std::to_string(d + 1), "DST." + std::to_string(d + 1)});
    panel.values.push_back(std::move(row));
  }

  for (std::size_t s = 0; s < kSparse; ++s) {
    std::vector<double> row(kYears, kMissing);
    for (std::size_t i = 0; i < kYears; i += 12) row[i] = 100.0 + 10.0 * rng.normal();
    panel.indicators.push_back({"Sparse survey indicator " + std::to_string(s + 1), "SPR." + std::to_string(s + 1)});
    panel.values.push_back(std::move(row));
  }

  // A few scattered gaps in the dense rows, never more than two per row.
  const std::size_t dense = panel.indicators.size() - kSparse;
  for (std::size_t r = 0; r < dense; ++r) {
    const std::size_t gaps = static_cast<std::size_t>(rng.below(3));
    for (std::size_t g = 0; g < gaps; ++g) panel.values[r][static_cast<std::size_t>(rng.below(kYears))] = kMissing;
  }
  return panel;
}

Dataset make_planted_dataset(std::uint64_t seed, const PlantedConfig& config) {
  SplitMix64 rng(seed);
  Dataset ds;
  ds.target_name = "y";
  for (std::size_t i = 0; i < config.rows; ++i) ds.years.push_back(1990 + static_cast<int>(i));
  ds.features.assign(config.features, std::vector<double>(config.rows));
  for (std::size_t j = 0; j < config.features; ++j) {
    ds.feature_names.push_back("f" + std::to_string(j + 1));
    for (auto& v : ds.features[j]) v = rng.normal();
  }
  ds.target.resize(config.rows);
  for (std::size_t i = 0; i < config.rows; ++i) {
    const double f1 = config.features > 0 ? ds.features[0][i] : 0.0;
    const double f2 = config.features > 1 ? ds.features[1][i] : 0.0;
    const double f3 = config.features > 2 ? ds.features[2][i] : 0.0;
    ds.target[i] = 2.0 * f1 - 3.0 * f2 + f3 + config.noise_sd * rng.normal();
  }
  return ds;
}

}  // namespace simfs
