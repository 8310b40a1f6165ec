#include "simfs/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "simfs/error.hpp"

namespace simfs {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_missing_marker(std::string_view cell) {
  const auto t = trim(cell);
  return t.empty() || t == "..";
}

// Accepts "1990" and the DataBank variant "1990 [YR1990]".
std::optional<int> parse_year_header(std::string_view h) {
  if (h.size() < 4) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i) {
    if (h[i] < '0' || h[i] > '9') return std::nullopt;
  }
  const int year = (h[0] - '0') * 1000 + (h[1] - '0') * 100 + (h[2] - '0') * 10 + (h[3] - '0');
  const auto rest = trim(h.substr(4));
  if (rest.empty()) return year;
  if (rest == "[YR" + std::string(h.substr(0, 4)) + "]") return year;
  return std::nullopt;
}

std::optional<double> parse_real(std::string_view cell) {
  auto t = trim(cell);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double value = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos || trim(s) != s;
}

void append_field(std::string& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out += s;
    return;
  }
  out += '"';
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::optional<std::size_t> IndicatorPanel::find(std::string_view name) const noexcept {
  const auto key = trim(name);
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    if (indicators[i].name == key) return i;
  }
  return std::nullopt;
}

std::size_t IndicatorPanel::missing_count() const noexcept {
  std::size_t count = 0;
  for (const auto& row : values) count += std::count_if(row.begin(), row.end(), is_missing);
  return count;
}

std::optional<std::size_t> Dataset::feature_index(std::string_view name) const noexcept {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names.begin());
}

std::size_t Dataset::missing_count() const noexcept {
  std::size_t count = std::count_if(target.begin(), target.end(), is_missing);
  for (const auto& col : features) count += std::count_if(col.begin(), col.end(), is_missing);
  return count;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    const bool blank = std::all_of(record.begin(), record.end(),
                                   [](const std::string& f) { return trim(f).empty(); });
    if (!blank) records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

IndicatorPanel parse_wdi_csv(std::string_view raw_text) {
  const auto records = parse_csv_records(raw_text);
  if (records.empty()) fail(ErrorCode::MalformedHeader, "empty input");

  const auto& header = records.front();
  std::optional<std::size_t> name_col, code_col, country_col, country_code_col;
  std::vector<std::pair<std::size_t, int>> year_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto h = trim(header[c]);
    if (h == "Indicator Name" || h == "Series Name") {
      name_col = c;
    } else if (h == "Indicator Code" || h == "Series Code") {
      code_col = c;
    } else if (h == "Country Name") {
      country_col = c;
    } else if (h == "Country Code") {
      country_code_col = c;
    } else if (const auto year = parse_year_header(h)) {
      year_cols.emplace_back(c, *year);
    }
  }
  if (!name_col) fail(ErrorCode::MalformedHeader, "no 'Indicator Name' column");
  if (year_cols.empty()) fail(ErrorCode::MalformedHeader, "no year columns");
  for (std::size_t i = 1; i < year_cols.size(); ++i) {
    if (year_cols[i].second != year_cols[i - 1].second + 1) {
      fail(ErrorCode::MalformedHeader, "year columns are not contiguous and increasing at " +
                                           std::to_string(year_cols[i].second));
    }
  }

  IndicatorPanel panel;
  for (const auto& [col, year] : year_cols) panel.years.push_back(year);

  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t body_row = r - 1;
    if (rec.size() != header.size()) throw MalformedCellError(body_row, rec.size(), "<row width>");

    if (country_col) {
      const std::string country(trim(rec[*country_col]));
      if (!panel.country_name) {
        panel.country_name = country;
      } else if (*panel.country_name != country) {
        fail(ErrorCode::MixedCountries,
             "'" + *panel.country_name + "' and '" + country + "' in one file");
      }
      if (country_code_col && !panel.country_code) {
        panel.country_code = std::string(trim(rec[*country_code_col]));
      }
    }

    Indicator ind;
    ind.name = std::string(trim(rec[*name_col]));
    if (code_col) {
      const auto code = trim(rec[*code_col]);
      if (!code.empty()) ind.code = std::string(code);
    }
    if (!seen.insert(ind.name).second) {
      fail(ErrorCode::DuplicateIndicator, "'" + ind.name + "'");
    }

    std::vector<double> row;
    row.reserve(year_cols.size());
    for (const auto& [col, year] : year_cols) {
      const auto& cell = rec[col];
      if (is_missing_marker(cell)) {
        row.push_back(kMissing);
      } else if (const auto v = parse_real(cell)) {
        row.push_back(*v);
      } else {
        throw MalformedCellError(body_row, col, cell);
      }
    }
    panel.indicators.push_back(std::move(ind));
    panel.values.push_back(std::move(row));
  }
  return panel;
}

IndicatorPanel read_wdi_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_wdi_csv(buf.str());
}

std::string write_wdi_csv(const IndicatorPanel& panel) {
  const bool with_codes = std::any_of(panel.indicators.begin(), panel.indicators.end(),
                                      [](const Indicator& i) { return i.code.has_value(); });
  std::string out;
  auto sep = [&out](bool& first) {
    if (!first) out += ',';
    first = false;
  };

  bool first = true;
  if (panel.country_name) {
    sep(first);
    out += "Country Name";
    if (panel.country_code) out += ",Country Code";
  }
  sep(first);
  out += "Indicator Name";
  if (with_codes) out += ",Indicator Code";
  for (const int y : panel.years) out += "," + std::to_string(y);
  out += '\n';

  for (std::size_t r = 0; r < panel.indicators.size(); ++r) {
    first = true;
    if (panel.country_name) {
      sep(first);
      append_field(out, *panel.country_name);
      if (panel.country_code) {
        out += ',';
        append_field(out, *panel.country_code);
      }
    }
    sep(first);
    append_field(out, panel.indicators[r].name);
    if (with_codes) {
      out += ',';
      append_field(out, panel.indicators[r].code.value_or(""));
    }
    for (const double v : panel.values[r]) {
      out += ',';
      out += is_missing(v) ? std::string("..") : format_real(v);
    }
    out += '\n';
  }
  return out;
}

Dataset build_dataset(const IndicatorPanel& panel, std::string_view target_name, YearRange range) {
  const auto target_row = panel.find(target_name);
  if (!target_row) fail(ErrorCode::UnknownTarget, "'" + std::string(target_name) + "'");
  if (range.start > range.end || panel.years.empty() || range.start < panel.years.front() ||
      range.end > panel.years.back()) {
    fail(ErrorCode::YearRangeError,
         "[" + std::to_string(range.start) + ", " + std::to_string(range.end) +
             "] is not inside the panel's years");
  }
  const auto first = static_cast<std::size_t>(range.start - panel.years.front());
  const auto n = static_cast<std::size_t>(range.end - range.start + 1);

  auto slice = [&](std::size_t row) {
    const auto& src = panel.values[row];
    return std::vector<double>(src.begin() + static_cast<std::ptrdiff_t>(first),
                               src.begin() + static_cast<std::ptrdiff_t>(first + n));
  };

  Dataset ds;
  ds.target_name = panel.indicators[*target_row].name;
  ds.target = slice(*target_row);
  if (std::all_of(ds.target.begin(), ds.target.end(), is_missing)) {
    fail(ErrorCode::EmptyTarget, "'" + ds.target_name + "' has no observations in range");
  }
  for (int y = range.start; y <= range.end; ++y) ds.years.push_back(y);
  for (std::size_t r = 0; r < panel.indicators.size(); ++r) {
    if (r == *target_row) continue;
    ds.feature_names.push_back(panel.indicators[r].name);
    ds.features.push_back(slice(r));
  }
  return ds;
}

}  // namespace simfs
