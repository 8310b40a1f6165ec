#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace simfs {

using SeriesView = std::span<const double>;

struct DistanceParams {
  double lcss_epsilon = 0.5;
  std::optional<std::size_t> lcss_delta;  // nullopt = unbounded window
  double edr_epsilon = 0.25;
  double erp_gap = 0.0;
  double twed_nu = 0.001;
  double twed_lambda = 1.0;

  void validate() const;
};

enum class Measure { Euclidean, Dtw, Lcss, Edr, Erp, Twed, Hausdorff, Frechet, Sspd };

inline constexpr Measure kAllMeasures[] = {Measure::Euclidean, Measure::Dtw,       Measure::Lcss,
                                           Measure::Edr,       Measure::Erp,       Measure::Twed,
                                           Measure::Hausdorff, Measure::Frechet,   Measure::Sspd};

/// Roster name of the measure ("euc", "dtw", "lcss", "edr", "epr", "twed",
/// "hausdorff", "frechet", "sspd").
std::string_view measure_name(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view name) noexcept;

// All measures throw EmptySeries on an empty input and NonFiniteInput on NaN/inf.

/// sqrt(sum (x_i - y_i)^2); equal lengths required.
double euclidean(SeriesView x, SeriesView y);

/// Full-band DTW with L1 local cost, summed along the optimal warping path.
double dtw(SeriesView x, SeriesView y);

/// 1 - L / min(|x|, |y|), L = LCSS length under |x_i - y_j| <= epsilon and |i - j| <= delta.
double lcss_distance(SeriesView x, SeriesView y, double epsilon,
                     std::optional<std::size_t> delta = std::nullopt);

/// Edit distance with 0/1 substitution cost (match iff |x_i - y_j| <= epsilon).
double edr(SeriesView x, SeriesView y, double epsilon);

/// Edit distance with real penalty: match |x_i - y_j|, gap |v - g|.
double erp(SeriesView x, SeriesView y, double gap);

/// Time warp edit distance. Sample i (1-based) sits at time i; a virtual
/// sample of value 0 at time 0 precedes both series.
double twed(SeriesView x, SeriesView y, double nu, double lambda);

// Geometric measures embed a series as planar points (i, x_i).

double hausdorff(SeriesView x, SeriesView y);
double discrete_frechet(SeriesView x, SeriesView y);

/// Symmetric segment-path distance; both series need at least two samples.
double sspd(SeriesView x, SeriesView y);

double distance(Measure m, SeriesView x, SeriesView y, const DistanceParams& params = {});

}  // namespace simfs
