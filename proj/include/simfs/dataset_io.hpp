#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simfs {

/// Missing cells are stored as quiet NaN throughout the library.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) noexcept { return std::isnan(v); }

struct Indicator {
  std::string name;
  std::optional<std::string> code;

  bool operator==(const Indicator&) const = default;
};

/// One country's WDI table: rows are indicators, columns are contiguous years.
struct IndicatorPanel {
  std::optional<std::string> country_name;
  std::optional<std::string> country_code;
  std::vector<Indicator> indicators;
  std::vector<int> years;
  std::vector<std::vector<double>> values;  // [indicator][year], NaN = missing

  std::size_t indicator_count() const noexcept { return indicators.size(); }
  std::optional<std::size_t> find(std::string_view name) const noexcept;
  std::size_t missing_count() const noexcept;
};

struct YearRange {
  int start = 1990;
  int end = 2022;
};

/// Analysis matrix for one target. Rows are years, each feature column is a
/// time series aligned with `target`.
struct Dataset {
  std::string target_name;
  std::vector<double> target;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;  // [feature][row]
  std::vector<int> years;

  std::size_t rows() const noexcept { return years.size(); }
  std::size_t feature_count() const noexcept { return features.size(); }
  std::optional<std::size_t> feature_index(std::string_view name) const noexcept;
  std::size_t missing_count() const noexcept;
};

IndicatorPanel parse_wdi_csv(std::string_view raw_text);
IndicatorPanel read_wdi_csv(const std::filesystem::path& path);

/// Inverse of parse_wdi_csv: missing cells are written as "..", values in
/// shortest round-trip form.
std::string write_wdi_csv(const IndicatorPanel& panel);

Dataset build_dataset(const IndicatorPanel& panel, std::string_view target_name,
                      YearRange range = {});

/// RFC-4180 record splitter used by the WDI reader. Exposed for tests.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

}  // namespace simfs
