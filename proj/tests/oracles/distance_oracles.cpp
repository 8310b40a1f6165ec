#include "distance_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every strictly increasing index list drawn from [0, n).
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Calls visit(xs, ys) for every one-to-one order-preserving matching between
// positions of x and positions of y.
void for_each_matching(std::size_t n, std::size_t m,
                       const std::function<void(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>& visit) {
  const auto xs = index_subsets(n);
  const auto ys = index_subsets(m);
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      if (a.size() == b.size()) visit(a, b);
    }
  }
}

// Walks every monotone path of unit steps from (0, 0) to (n-1, m-1).
void for_each_coupling(std::size_t n, std::size_t m,
                       const std::function<void(const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
  std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
  std::function<void()> walk = [&]() {
    const auto [i, j] = path.back();
    if (i + 1 == n && j + 1 == m) {
      visit(path);
      return;
    }
    const std::pair<std::size_t, std::size_t> steps[] = {{i + 1, j}, {i, j + 1}, {i + 1, j + 1}};
    for (const auto& s : steps) {
      if (s.first < n && s.second < m) {
        path.push_back(s);
        walk();
        path.pop_back();
      }
    }
  };
  walk();
}

double euclid2(double ax, double ay, double bx, double by) {
  return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

// Nearest distance from p to the segment a-b by ternary search on the
// segment parameter; the squared distance is convex in it.
double point_to_segment(double px, double py, double ax, double ay, double bx, double by) {
  auto at = [&](double t) { return euclid2(px, py, ax + t * (bx - ax), ay + t * (by - ay)); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (at(m1) <= at(m2)) hi = m2;
    else lo = m1;
  }
  return std::min({at(0.5 * (lo + hi)), at(0.0), at(1.0)});
}

double mean_min_segment(const Series& a, const Series& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = kInf;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      best = std::min(best, point_to_segment(double(i), a[i], double(j), b[j], double(j + 1), b[j + 1]));
    }
    total += best;
  }
  return total / double(a.size());
}

}  // namespace

double dtw(const Series& x, const Series& y) {
  double best = kInf;
  for_each_coupling(x.size(), y.size(), [&](const auto& path) {
    double cost = 0.0;
    for (const auto& [i, j] : path) cost += std::abs(x[i] - y[j]);
    best = std::min(best, cost);
  });
  return best;
}

double lcss_distance(const Series& x, const Series& y, double epsilon, std::optional<std::size_t> delta) {
  std::size_t longest = 0;
  for_each_matching(x.size(), y.size(), [&](const auto& a, const auto& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::size_t gap = a[k] > b[k] ? a[k] - b[k] : b[k] - a[k];
      if (std::abs(x[a[k]] - y[b[k]]) > epsilon) return;
      if (delta && gap > *delta) return;
    }
    longest = std::max(longest, a.size());
  });
  return 1.0 - double(longest) / double(std::min(x.size(), y.size()));
}

double edr(const Series& x, const Series& y, double epsilon) {
  double best = kInf;
  for_each_matching(x.size(), y.size(), [&](const auto& a, const auto& b) {
    double cost = double(x.size() - a.size()) + double(y.size() - b.size());
    for (std::size_t k = 0; k < a.size(); ++k) cost += std::abs(x[a[k]] - y[b[k]]) <= epsilon ? 0.0 : 1.0;
    best = std::min(best, cost);
  });
  return best;
}

double erp(const Series& x, const Series& y, double gap) {
  double best = kInf;
  for_each_matching(x.size(), y.size(), [&](const auto& a, const auto& b) {
    std::vector<bool> used_x(x.size(), false), used_y(y.size(), false);
    double cost = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      cost += std::abs(x[a[k]] - y[b[k]]);
      used_x[a[k]] = used_y[b[k]] = true;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!used_x[i]) cost += std::abs(x[i] - gap);
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!used_y[j]) cost += std::abs(y[j] - gap);
    }
    best = std::min(best, cost);
  });
  return best;
}

double twed(const Series& x, const Series& y, double nu, double lambda) {
  // Sample k sits at time k; a virtual sample of value 0 sits at time 0.
  Series xa{0.0}, ya{0.0}, tx{0.0}, ty{0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    xa.push_back(x[i]);
    tx.push_back(double(i + 1));
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    ya.push_back(y[j]);
    ty.push_back(double(j + 1));
  }
  const std::size_t n = x.size(), m = y.size();
  double best = kInf;
  // Enumerate operation sequences; each step ends at (i, j) and costs a
  // match, a deletion in x or a deletion in y. The first step must leave
  // the virtual origin in both series at once.
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    if (i == n && j == m) {
      best = std::min(best, acc);
      return;
    }
    if (i < n && j < m) {
      const double step = std::abs(xa[i + 1] - ya[j + 1]) + std::abs(xa[i] - ya[j]) +
                          nu * (std::abs(tx[i + 1] - ty[j + 1]) + std::abs(tx[i] - ty[j]));
      walk(i + 1, j + 1, acc + step);
    }
    if (i < n && j > 0) walk(i + 1, j, acc + (std::abs(xa[i + 1] - xa[i]) + nu + lambda));
    if (j < m && i > 0) walk(i, j + 1, acc + (std::abs(ya[j + 1] - ya[j]) + nu + lambda));
  };
  walk(0, 0, 0.0);
  return best;
}

double hausdorff(const Series& x, const Series& y) {
  std::vector<std::vector<double>> d(x.size(), std::vector<double>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) d[i][j] = euclid2(double(i), x[i], double(j), y[j]);
  }
  double h = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) h = std::max(h, *std::min_element(d[i].begin(), d[i].end()));
  for (std::size_t j = 0; j < y.size(); ++j) {
    double col = kInf;
    for (std::size_t i = 0; i < x.size(); ++i) col = std::min(col, d[i][j]);
    h = std::max(h, col);
  }
  return h;
}

double discrete_frechet(const Series& x, const Series& y) {
  double best = kInf;
  for_each_coupling(x.size(), y.size(), [&](const auto& path) {
    double worst = 0.0;
    for (const auto& [i, j] : path) worst = std::max(worst, euclid2(double(i), x[i], double(j), y[j]));
    best = std::min(best, worst);
  });
  return best;
}

double sspd(const Series& x, const Series& y) {
  return 0.5 * (mean_min_segment(x, y) + mean_min_segment(y, x));
}

std::vector<Series> integer_series(std::size_t max_len, int lo, int hi) {
  std::vector<Series> out;
  std::vector<Series> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Series> next;
    for (const auto& s : layer) {
      for (int v = lo; v <= hi; ++v) {
        auto t = s;
        t.push_back(double(v));
        next.push_back(std::move(t));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace oracle
