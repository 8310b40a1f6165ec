#include "simfs/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "simfs/error.hpp"

namespace simfs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_series(SeriesView s, const char* which) {
  if (s.empty()) fail(ErrorCode::EmptySeries, std::string(which) + " is empty");
  for (const double v : s) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, std::string(which) + " has a non-finite value");
  }
}

void check_pair(SeriesView x, SeriesView y) {
  check_series(x, "x");
  check_series(y, "y");
}

double point_distance(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

// Distance from (px, py) to the segment (ax, ay)-(bx, by).
double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  const double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  if (t <= 0.0) return point_distance(px, py, ax, ay);
  if (t >= 1.0) return point_distance(px, py, bx, by);
  return point_distance(px, py, ax + t * dx, ay + t * dy);
}

double directed_hausdorff(SeriesView a, SeriesView b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double nearest = kInf;
    for (std::size_t j = 0; j < b.size(); ++j) {
      nearest = std::min(nearest, point_distance(static_cast<double>(i), a[i],
                                                 static_cast<double>(j), b[j]));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

double segment_path_distance(SeriesView a, SeriesView b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double nearest = kInf;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      nearest = std::min(nearest, point_segment_distance(static_cast<double>(i), a[i],
                                                         static_cast<double>(j), b[j],
                                                         static_cast<double>(j + 1), b[j + 1]));
    }
    total += nearest;
  }
  return total / static_cast<double>(a.size());
}

}  // namespace

void DistanceParams::validate() const {
  if (!(lcss_epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "lcss_epsilon must be positive");
  if (!(edr_epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "edr_epsilon must be positive");
  if (!std::isfinite(erp_gap)) fail(ErrorCode::InvalidArgument, "erp_gap must be finite");
  if (!(twed_nu >= 0.0)) fail(ErrorCode::InvalidArgument, "twed_nu must be non-negative");
  if (!(twed_lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "twed_lambda must be non-negative");
}

std::string_view measure_name(Measure m) noexcept {
  switch (m) {
    case Measure::Euclidean: return "euc";
    case Measure::Dtw: return "dtw";
    case Measure::Lcss: return "lcss";
    case Measure::Edr: return "edr";
    case Measure::Erp: return "epr";
    case Measure::Twed: return "twed";
    case Measure::Hausdorff: return "hausdorff";
    case Measure::Frechet: return "frechet";
    case Measure::Sspd: return "sspd";
  }
  return "";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  for (const Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  if (name == "erp") return Measure::Erp;
  if (name == "euclidean") return Measure::Euclidean;
  return std::nullopt;
}

double euclidean(SeriesView x, SeriesView y) {
  check_pair(x, y);
  if (x.size() != y.size()) {
    fail(ErrorCode::LengthMismatch,
         "euclidean needs equal lengths, got " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(sum);
}

double dtw(SeriesView x, SeriesView y) {
  check_pair(x, y);
  const std::size_t m = y.size();
  std::vector<double> prev(m + 1, kInf), cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= m; ++j) {
      const double cost = std::abs(x[i - 1] - y[j - 1]);
      cur[j] = cost + std::min({prev[j - 1], prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double lcss_distance(SeriesView x, SeriesView y, double epsilon, std::optional<std::size_t> delta) {
  check_pair(x, y);
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "lcss epsilon must be positive");
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      const bool in_window = !delta || gap <= *delta;
      if (in_window && std::abs(x[i - 1] - y[j - 1]) <= epsilon) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[m]) / static_cast<double>(std::min(n, m));
}

double edr(SeriesView x, SeriesView y, double epsilon) {
  check_pair(x, y);
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "edr epsilon must be positive");
  const std::size_t m = y.size();
  std::vector<double> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = static_cast<double>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const double sub = std::abs(x[i - 1] - y[j - 1]) <= epsilon ? 0.0 : 1.0;
      cur[j] = std::min({prev[j - 1] + sub, prev[j] + 1.0, cur[j - 1] + 1.0});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double erp(SeriesView x, SeriesView y, double gap) {
  check_pair(x, y);
  const std::size_t m = y.size();
  std::vector<double> prev(m + 1), cur(m + 1);
  prev[0] = 0.0;
  for (std::size_t j = 1; j <= m; ++j) prev[j] = prev[j - 1] + std::abs(y[j - 1] - gap);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const double del_x = std::abs(x[i - 1] - gap);
    cur[0] = prev[0] + del_x;
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = std::min({prev[j - 1] + std::abs(x[i - 1] - y[j - 1]), prev[j] + del_x,
                         cur[j - 1] + std::abs(y[j - 1] - gap)});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double twed(SeriesView x, SeriesView y, double nu, double lambda) {
  check_pair(x, y);
  if (!(nu >= 0.0) || !(lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "twed nu and lambda must be non-negative");
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  // Prefixed value at position i: 0 for the virtual origin, x[i-1] otherwise.
  auto xv = [&](std::size_t i) { return i == 0 ? 0.0 : x[i - 1]; };
  auto yv = [&](std::size_t j) { return j == 0 ? 0.0 : y[j - 1]; };
  auto gap = [](std::size_t a, std::size_t b) { return static_cast<double>(a > b ? a - b : b - a); };

  std::vector<double> prev(m + 1, kInf), cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = kInf;
    const double del_x = std::abs(xv(i) - xv(i - 1)) + nu + lambda;
    for (std::size_t j = 1; j <= m; ++j) {
      const double match_cost = std::abs(xv(i) - yv(j)) + std::abs(xv(i - 1) - yv(j - 1)) +
                                nu * (gap(i, j) + gap(i - 1, j - 1));
      const double del_y = std::abs(yv(j) - yv(j - 1)) + nu + lambda;
      const double match = prev[j - 1] + match_cost;
      const double delete_x = prev[j] + del_x;
      const double delete_y = cur[j - 1] + del_y;
      cur[j] = std::min({match, delete_x, delete_y});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double hausdorff(SeriesView x, SeriesView y) {
  check_pair(x, y);
  return std::max(directed_hausdorff(x, y), directed_hausdorff(y, x));
}

double discrete_frechet(SeriesView x, SeriesView y) {
  check_pair(x, y);
  const std::size_t m = y.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = point_distance(static_cast<double>(i), x[i], static_cast<double>(j), y[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = 0.0;
      } else if (i == 0) {
        reach = cur[j - 1];
      } else if (j == 0) {
        reach = prev[0];
      } else {
        reach = std::min({prev[j - 1], prev[j], cur[j - 1]});
      }
      cur[j] = std::max(reach, d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double sspd(SeriesView x, SeriesView y) {
  check_pair(x, y);
  if (x.size() < 2 || y.size() < 2) {
    fail(ErrorCode::TooShortForSSPD, "sspd needs at least two samples per series");
  }
  return (segment_path_distance(x, y) + segment_path_distance(y, x)) / 2.0;
}

double distance(Measure m, SeriesView x, SeriesView y, const DistanceParams& params) {
  switch (m) {
    case Measure::Euclidean: return euclidean(x, y);
    case Measure::Dtw: return dtw(x, y);
    case Measure::Lcss: return lcss_distance(x, y, params.lcss_epsilon, params.lcss_delta);
    case Measure::Edr: return edr(x, y, params.edr_epsilon);
    case Measure::Erp: return erp(x, y, params.erp_gap);
    case Measure::Twed: return twed(x, y, params.twed_nu, params.twed_lambda);
    case Measure::Hausdorff: return hausdorff(x, y);
    case Measure::Frechet: return discrete_frechet(x, y);
    case Measure::Sspd: return sspd(x, y);
  }
  return 0.0;
}

}  // namespace simfs
