#include "finegrain/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace finegrain {

namespace {

// Unique representative N*(delta - m) in [-N/2, N/2).
inline double representative(double delta, double n) {
  const double m = std::floor(delta + 0.5);
  return n * (delta - m);
}

// Closed-interval membership with a hair of slack: representatives carry
// roundoff of order N*ulp, and structured inputs (rational lattices) land
// exactly on interval endpoints.
constexpr double kBoundaryTol = 1e-9;

inline bool in_interval(double r, double a, double b) {
  return r >= a - kBoundaryTol && r <= b + kBoundaryTol;
}

void validate_points(std::span<const double> points) {
  if (points.size() < 2) throw std::invalid_argument("correlate: need at least 2 points");
  for (double v : points)
    if (!(v >= 0.0 && v < 1.0))
      throw std::invalid_argument("correlate: points must lie in [0,1)");
}

}  // namespace

double BoxRegion::volume() const {
  double v = 1.0;
  for (const auto& [a, b] : intervals) v *= (b - a);
  return v;
}

double BoxRegion::max_abs_coord() const {
  double m = 0.0;
  for (const auto& [a, b] : intervals) m = std::max({m, std::fabs(a), std::fabs(b)});
  return m;
}

void BoxRegion::validate() const {
  if (k < 2) throw std::invalid_argument("BoxRegion: k must be >= 2");
  if (intervals.size() != static_cast<std::size_t>(k - 1))
    throw std::invalid_argument("BoxRegion: expected k-1 intervals");
  for (const auto& [a, b] : intervals)
    if (!(a < b)) throw std::invalid_argument("BoxRegion: intervals must satisfy a < b");
}

double ck_factor(int k, std::int64_t n) {
  if (k < 2) throw std::invalid_argument("ck_factor: k must be >= 2");
  if (k > n) throw std::invalid_argument("ck_factor: k > N, B_k is empty");
  long double prod = 1.0L;
  for (int i = 1; i < k; ++i)
    prod *= 1.0L - static_cast<long double>(i) / static_cast<long double>(n);
  return static_cast<double>(prod);
}

CorrResult correlate_box_bruteforce(std::span<const double> points, const BoxRegion& box) {
  box.validate();
  validate_points(points);
  const auto n = static_cast<std::int64_t>(points.size());
  const auto dn = static_cast<double>(n);
  if (box.max_abs_coord() > dn / 2.0)
    throw std::invalid_argument("correlate_box_bruteforce: ambiguous representative (box wider than N/2)");
  const int k = box.k;

  std::int64_t count = 0;
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(k));
  std::vector<char> used(points.size(), 0);
  // Ordered distinct tuples; prune as soon as a prefix difference misses.
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      ++count;
      return;
    }
    for (std::int64_t x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      if (depth > 0) {
        const double delta = points[static_cast<std::size_t>(tuple[static_cast<std::size_t>(depth - 1)])] -
                             points[static_cast<std::size_t>(x)];
        const double r = representative(delta, dn);
        const auto& [a, b] = box.intervals[static_cast<std::size_t>(depth - 1)];
        if (!in_interval(r, a, b)) continue;
      }
      tuple[static_cast<std::size_t>(depth)] = x;
      used[static_cast<std::size_t>(x)] = 1;
      self(self, depth + 1);
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  recurse(recurse, 0);

  CorrResult res;
  res.raw_count = count;
  res.value = static_cast<double>(count) / dn;
  res.poisson_reference = box.volume();
  res.k = k;
  res.n_points = n;
  return res;
}

namespace {

// Sorted circular window machinery shared by the box and triangle kernels.
struct SortedPoints {
  std::vector<double> values;  // ascending in [0,1)

  explicit SortedPoints(std::span<const double> points)
      : values(points.begin(), points.end()) {
    std::stable_sort(values.begin(), values.end());
  }

  // Indices (sorted positions) whose value lies in the circular interval
  // [lo, hi]; emits at most two contiguous ranges.
  template <typename Fn>
  void for_window(double lo, double hi, Fn&& fn) const {
    const auto n = static_cast<std::int64_t>(values.size());
    auto wrap = [](double x) {
      x -= std::floor(x);
      return x;
    };
    if (hi - lo >= 1.0) {  // whole circle
      for (std::int64_t i = 0; i < n; ++i) fn(i);
      return;
    }
    const double wl = wrap(lo), wh = wrap(hi);
    auto emit = [&](double a, double b) {
      const auto first = std::lower_bound(values.begin(), values.end(), a) - values.begin();
      const auto last = std::upper_bound(values.begin(), values.end(), b) - values.begin();
      for (auto i = first; i < last; ++i) fn(i);
    };
    if (wl <= wh) {
      emit(wl, wh);
    } else {
      emit(wl, 1.0);
      emit(0.0, wh);
    }
  }
};

// Candidate windows must enclose everything the membership predicate can
// accept, including its boundary slack; false candidates are filtered anyway.
constexpr double kWindowPad = kBoundaryTol + 1e-12;

}  // namespace

CorrResult correlate_box(std::span<const double> points, const BoxRegion& box) {
  box.validate();
  validate_points(points);
  const auto n = static_cast<std::int64_t>(points.size());
  const auto dn = static_cast<double>(n);
  if (box.max_abs_coord() > dn / 4.0)
    throw std::invalid_argument("correlate_box: ambiguous representative (box wider than N/4)");
  const int k = box.k;

  const SortedPoints sorted(points);
  std::vector<char> used(points.size(), 0);
  std::int64_t count = 0;

  // Chains x_k -> x_{k-1} -> ... -> x_1; level i places x_i relative to
  // x_{i+1} through interval i-1.
  auto chain = [&](auto&& self, int level, std::int64_t center) -> void {
    const auto& [a, b] = box.intervals[static_cast<std::size_t>(level - 1)];
    const double vc = sorted.values[static_cast<std::size_t>(center)];
    sorted.for_window(vc + a / dn - kWindowPad, vc + b / dn + kWindowPad,
                      [&](std::int64_t c) {
                        if (used[static_cast<std::size_t>(c)]) return;
                        const double r = representative(
                            sorted.values[static_cast<std::size_t>(c)] - vc, dn);
                        if (!in_interval(r, a, b)) return;
                        if (level == 1) {
                          ++count;
                        } else {
                          used[static_cast<std::size_t>(c)] = 1;
                          self(self, level - 1, c);
                          used[static_cast<std::size_t>(c)] = 0;
                        }
                      });
  };
  for (std::int64_t anchor = 0; anchor < n; ++anchor) {
    used[static_cast<std::size_t>(anchor)] = 1;
    chain(chain, k - 1, anchor);
    used[static_cast<std::size_t>(anchor)] = 0;
  }

  CorrResult res;
  res.raw_count = count;
  res.value = static_cast<double>(count) / dn;
  res.poisson_reference = box.volume();
  res.k = k;
  res.n_points = n;
  return res;
}

double correlate_triangle(std::span<const double> points, std::span<const double> widths) {
  if (widths.empty()) throw std::invalid_argument("correlate_triangle: need k-1 widths");
  validate_points(points);
  const auto n = static_cast<std::int64_t>(points.size());
  const auto dn = static_cast<double>(n);
  const int k = static_cast<int>(widths.size()) + 1;
  for (double s : widths)
    if (!(s > 0.0) || s > dn / 4.0)
      throw std::invalid_argument("correlate_triangle: widths must be in (0, N/4]");

  const SortedPoints sorted(points);
  std::vector<char> used(points.size(), 0);

  // Compensated accumulation keeps the fixed-order sum reproducible.
  double sum = 0.0, comp = 0.0;
  auto add = [&](double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  auto chain = [&](auto&& self, int level, std::int64_t center, double weight) -> void {
    const double s = widths[static_cast<std::size_t>(level - 1)];
    const double vc = sorted.values[static_cast<std::size_t>(center)];
    sorted.for_window(vc - s / dn - kWindowPad, vc + s / dn + kWindowPad,
                      [&](std::int64_t c) {
                        if (used[static_cast<std::size_t>(c)]) return;
                        const double r = representative(
                            sorted.values[static_cast<std::size_t>(c)] - vc, dn);
                        const double f = 1.0 - std::fabs(r) / s;
                        if (f <= 0.0) return;
                        if (level == 1) {
                          add(weight * f);
                        } else {
                          used[static_cast<std::size_t>(c)] = 1;
                          self(self, level - 1, c, weight * f);
                          used[static_cast<std::size_t>(c)] = 0;
                        }
                      });
  };
  for (std::int64_t anchor = 0; anchor < n; ++anchor) {
    used[static_cast<std::size_t>(anchor)] = 1;
    chain(chain, k - 1, anchor, 1.0);
    used[static_cast<std::size_t>(anchor)] = 0;
  }
  return sum / dn;
}

double poisson_gap_cdf(double s) {
  if (s < 0.0) throw std::invalid_argument("poisson_gap_cdf: s must be nonnegative");
  return -std::expm1(-s);
}

GapHistogram gap_distribution(std::span<const double> points, std::vector<double> s_grid) {
  if (points.size() < 2) throw std::invalid_argument("gap_distribution: need at least 2 points");
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw std::invalid_argument("gap_distribution: s_grid must be increasing");
  if (!s_grid.empty() && s_grid.front() < 0.0)
    throw std::invalid_argument("gap_distribution: s_grid must be nonnegative");

  std::vector<double> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end());
  const auto n = static_cast<std::int64_t>(sorted.size()) - 1;  // N interior gaps
  std::vector<double> gaps(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    gaps[static_cast<std::size_t>(i)] =
        static_cast<double>(n) *
        (sorted[static_cast<std::size_t>(i + 1)] - sorted[static_cast<std::size_t>(i)]);
  std::sort(gaps.begin(), gaps.end());

  GapHistogram hist;
  hist.n_gaps = n;
  hist.s_grid = std::move(s_grid);
  hist.cdf.reserve(hist.s_grid.size());
  for (double s : hist.s_grid) {
    const auto cnt =
        std::upper_bound(gaps.begin(), gaps.end(), s + kBoundaryTol) - gaps.begin();
    hist.cdf.push_back(static_cast<double>(cnt) / static_cast<double>(n));
  }
  return hist;
}

double GapHistogram::sup_deviation_from_poisson() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < s_grid.size(); ++i)
    worst = std::max(worst, std::fabs(cdf[i] - poisson_gap_cdf(s_grid[i])));
  return worst;
}

std::vector<double> lattice_points(std::int64_t n) {
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(n);
  return pts;
}

std::vector<double> sqrt_mod_one(std::int64_t n) {
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const double s = std::sqrt(static_cast<double>(i));
    pts[static_cast<std::size_t>(i - 1)] = s - std::floor(s);
  }
  return pts;
}

}  // namespace finegrain
