#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace simfs {

/// SplitMix64 stream. Every random draw in the library goes through this type
/// so results are identical across compilers and standard libraries
/// (std::shuffle and the <random> distributions are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller (one value per call, the pair's partner is cached).
  double normal() noexcept;

  template <typename T>
  void shuffle(std::span<T> values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// The SplitMix64 finalizer applied to a single word.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Seed for one (scope, method) cell, independent of execution order.
std::uint64_t derive_seed(std::uint64_t base, std::string_view scope, std::string_view method) noexcept;

}  // namespace simfs
