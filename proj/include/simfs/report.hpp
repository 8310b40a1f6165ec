#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "simfs/benchmark.hpp"

namespace simfs {

nlohmann::json distance_params_to_json(const DistanceParams& p);
DistanceParams distance_params_from_json(const nlohmann::json& j);

/// Full grid, provenance and both rank tables. `generated_at` is written only
/// when given, so deterministic runs produce byte-identical files.
nlohmann::json report_to_json(const BenchmarkReport& report, const RankTable& mae, const RankTable& rmse,
                              const std::optional<std::string>& generated_at = std::nullopt);

/// One line per cell: target,method,category,status,mean_mae,mean_rmse.
std::string report_to_csv(const BenchmarkReport& report);

/// Average-MAE table, per-method average rank and per-category average rank.
std::string report_to_markdown(const BenchmarkReport& report, const RankTable& mae, const RankTable& rmse);

}  // namespace simfs
