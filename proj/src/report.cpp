#include "simfs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace simfs {
namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string rank_metric_name(RankMetric m) { return m == RankMetric::Mae ? "mae" : "rmse"; }

nlohmann::json rank_table_to_json(const RankTable& table) {
  nlohmann::json j;
  j["metric"] = rank_metric_name(table.metric);
  j["method_avg_rank"] = nlohmann::json::array();
  for (std::size_t m = 0; m < table.methods.size(); ++m) {
    nlohmann::json row = {{"method", method_name(table.methods[m])},
                          {"category", category_name(category_of(table.methods[m]))},
                          {"avg_rank", table.method_avg_rank[m]}};
    row["avg_" + rank_metric_name(table.metric)] =
        std::isnan(table.method_avg_metric[m]) ? nlohmann::json(nullptr) : nlohmann::json(table.method_avg_metric[m]);
    j["method_avg_rank"].push_back(row);
  }
  j["category_avg_rank"] = nlohmann::json::array();
  for (const auto& [c, r] : table.category_avg_rank) {
    j["category_avg_rank"].push_back({{"category", category_name(c)}, {"avg_rank", r}});
  }
  j["per_target"] = nlohmann::json::array();
  for (std::size_t t = 0; t < table.targets.size(); ++t) {
    j["per_target"].push_back({{"target", table.targets[t]}, {"ranks", table.ranks[t]}});
  }
  return j;
}

// Method indices ordered by `key` ascending, NaN last, ties by roster position.
std::vector<std::size_t> order_by(const std::vector<double>& key) {
  std::vector<std::size_t> idx(key.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (std::isnan(key[a]) != std::isnan(key[b])) return std::isnan(key[b]);
    return key[a] < key[b];
  });
  return idx;
}

}  // namespace

nlohmann::json distance_params_to_json(const DistanceParams& p) {
  nlohmann::json j = {{"lcss_epsilon", p.lcss_epsilon}, {"edr_epsilon", p.edr_epsilon},
                      {"erp_gap", p.erp_gap},           {"twed_nu", p.twed_nu},
                      {"twed_lambda", p.twed_lambda}};
  j["lcss_delta"] = p.lcss_delta ? nlohmann::json(*p.lcss_delta) : nlohmann::json(nullptr);
  return j;
}

DistanceParams distance_params_from_json(const nlohmann::json& j) {
  DistanceParams p;
  p.lcss_epsilon = j.value("lcss_epsilon", p.lcss_epsilon);
  p.edr_epsilon = j.value("edr_epsilon", p.edr_epsilon);
  p.erp_gap = j.value("erp_gap", p.erp_gap);
  p.twed_nu = j.value("twed_nu", p.twed_nu);
  p.twed_lambda = j.value("twed_lambda", p.twed_lambda);
  if (j.contains("lcss_delta") && !j["lcss_delta"].is_null()) p.lcss_delta = j["lcss_delta"].get<std::size_t>();
  p.validate();
  return p;
}

nlohmann::json report_to_json(const BenchmarkReport& report, const RankTable& mae, const RankTable& rmse,
                              const std::optional<std::string>& generated_at) {
  nlohmann::json j;
  if (generated_at) j["generated_at"] = *generated_at;

  const auto& prov = report.provenance;
  nlohmann::json provenance;
  provenance["preprocess"] = {{"max_missing_fraction", prov.preprocess.max_missing_fraction},
                              {"knn_k", prov.preprocess.knn_k},
                              {"normalize", prov.preprocess.normalize}};
  provenance["cv"] = {{"folds", prov.cv.folds},
                      {"iterations", prov.cv.iterations},
                      {"base_seed", prov.cv.base_seed},
                      {"ridge_jitter", prov.cv.ridge_jitter},
                      {"pooling", prov.cv.pooling == Pooling::Pooled ? "pooled" : "per_fold"}};
  provenance["year_range"] = {prov.years.start, prov.years.end};
  if (!prov.roster.empty()) {
    provenance["k"] = prov.roster.front().k;
    provenance["distance"] = distance_params_to_json(prov.roster.front().distance);
  }
  j["provenance"] = provenance;

  j["targets"] = report.targets;
  j["methods"] = nlohmann::json::array();
  for (const auto m : report.methods) {
    j["methods"].push_back({{"method", method_name(m)}, {"category", category_name(category_of(m))}});
  }

  j["grid"] = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cell = {{"target", c.target},
                           {"method", method_name(c.method)},
                           {"category", category_name(category_of(c.method))},
                           {"selection_seed", c.selection_seed},
                           {"status", c.ok ? "ok" : "failed"}};
    if (c.ok) {
      cell["selected"] = c.selected;
      cell["mean_mae"] = c.metrics.mean_mae;
      cell["mean_rmse"] = c.metrics.mean_rmse;
      cell["per_iteration"] = nlohmann::json::array();
      for (const auto& e : c.metrics.per_iteration) {
        cell["per_iteration"].push_back({{"rmse", e.rmse}, {"mae", e.mae}});
      }
    } else {
      cell["error"] = c.error;
    }
    j["grid"].push_back(cell);
  }
  j["ranks"] = {{"mae", rank_table_to_json(mae)}, {"rmse", rank_table_to_json(rmse)}};
  return j;
}

std::string report_to_csv(const BenchmarkReport& report) {
  std::string out = "target,method,category,status,mean_mae,mean_rmse\n";
  for (const auto& c : report.cells) {
    out += csv_field(c.target) + "," + csv_field(std::string(method_name(c.method))) + "," +
           std::string(category_name(category_of(c.method))) + "," + (c.ok ? "ok" : "failed") + ",";
    if (c.ok) out += fmt(c.metrics.mean_mae, "%.17g") + "," + fmt(c.metrics.mean_rmse, "%.17g");
    else out += ",";
    out += "\n";
  }
  return out;
}

std::string report_to_markdown(const BenchmarkReport& report, const RankTable& mae, const RankTable& rmse) {
  const auto& cv = report.provenance.cv;
  std::string md = "# Feature selection benchmark\n\n";
  md += "- targets: " + std::to_string(report.targets.size()) + "\n";
  md += "- methods: " + std::to_string(report.methods.size()) + "\n";
  md += "- cross-validation: " + std::to_string(cv.folds) + "-fold x " + std::to_string(cv.iterations) +
        " iterations, base seed " + std::to_string(cv.base_seed) + "\n";
  md += "- years: " + std::to_string(report.provenance.years.start) + "-" +
        std::to_string(report.provenance.years.end) + "\n";
  if (!report.provenance.roster.empty()) md += "- subset size k: " + std::to_string(report.provenance.roster.front().k) + "\n";
  const auto failed = std::count_if(report.cells.begin(), report.cells.end(), [](const CellResult& c) { return !c.ok; });
  md += "- failed cells: " + std::to_string(failed) + "\n\n";

  md += "## Average MAE across targets\n\n| category | method | average MAE |\n|---|---|---|\n";
  for (const auto m : order_by(mae.method_avg_metric)) {
    md += "| " + std::string(category_name(category_of(mae.methods[m]))) + " | " +
          std::string(method_name(mae.methods[m])) + " | " + fmt(mae.method_avg_metric[m]) + " |\n";
  }

  auto rank_section = [&](const RankTable& table, const std::string& label) {
    std::string s = "\n## Average " + label + " rank per method\n\n| rank | method | category | average rank |\n|---|---|---|---|\n";
    std::size_t pos = 1;
    for (const auto m : order_by(table.method_avg_rank)) {
      s += "| " + std::to_string(pos++) + " | " + std::string(method_name(table.methods[m])) + " | " +
           std::string(category_name(category_of(table.methods[m]))) + " | " +
           fmt(table.method_avg_rank[m], "%.4f") + " |\n";
    }
    s += "\n## Average " + label + " rank per category\n\n| category | average rank |\n|---|---|\n";
    auto cats = table.category_avg_rank;
    std::stable_sort(cats.begin(), cats.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [c, r] : cats) s += "| " + std::string(category_name(c)) + " | " + fmt(r, "%.4f") + " |\n";
    return s;
  };
  md += rank_section(mae, "MAE");
  md += rank_section(rmse, "RMSE");

  if (failed > 0) {
    md += "\n## Failed cells\n\n| target | method | error |\n|---|---|---|\n";
    for (const auto& c : report.cells) {
      if (!c.ok) md += "| " + c.target + " | " + std::string(method_name(c.method)) + " | " + c.error + " |\n";
    }
  }
  return md;
}

}  // namespace simfs
