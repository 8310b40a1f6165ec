#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simfs/dataset_io.hpp"

namespace simfs {

/// The twenty World Bank indicators used as forecasting targets.
const std::vector<std::string>& benchmark_target_names();

/// Synthetic single-country WDI panel, 1985-2022. Each of the twenty targets
/// is a noisy linear combination of three latent "driver" indicators; ten
/// high-variance distractors, two mostly-empty indicators and a sprinkle of
/// ".." cells exercise the preprocessing path.
IndicatorPanel make_benchmark_panel(std::uint64_t seed);

struct PlantedConfig {
  std::size_t rows = 33;
  std::size_t features = 50;
  double noise_sd = 0.1;
};

/// y = 2 f1 - 3 f2 + f3 + noise with i.i.d. standard normal features f1..fp.
Dataset make_planted_dataset(std::uint64_t seed, const PlantedConfig& config = {});

}  // namespace simfs
