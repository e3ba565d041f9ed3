#include "finegrain/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace finegrain {

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  // splitmix64 finalizer keyed by (seed, counter).
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::vector<double> sample_alphas(IntervalJ j, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_alphas: M must be >= 1");
  CounterRng rng{seed};
  std::vector<double> alphas(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    alphas[static_cast<std::size_t>(i)] = j.lo() + rng.uniform(static_cast<std::uint64_t>(i));
  return alphas;
}

bool TrialReport::all_pass() const {
  if (!ok) return false;
  return std::all_of(stats.begin(), stats.end(), [](const StatEntry& s) { return s.pass; });
}

std::vector<double> TrialConfig::default_s_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.05 * i);
  return grid;
}

namespace {

double spec_parameter(const SequenceSpec& spec) {
  if (const auto* e = std::get_if<ExpLinearSeq>(&spec.mode)) return e->alpha;
  if (const auto* g = std::get_if<GeometricSeq>(&spec.mode))
    return g->exact ? g->exact->to_double() : g->beta;
  return std::get<DilatedIntegerSeq>(spec.mode).alpha;
}

std::string box_name(const BoxRegion& box) {
  std::ostringstream os;
  os << "R" << box.k << "[";
  for (std::size_t i = 0; i < box.intervals.size(); ++i) {
    if (i) os << "x";
    os << box.intervals[i].first << ":" << box.intervals[i].second;
  }
  os << "]";
  return os.str();
}

void run_statistics(TrialReport& report, std::span<const double> corr_points,
                    std::span<const double> gap_points, const TrialConfig& cfg) {
  for (std::size_t i = 0; i < cfg.boxes.size(); ++i) {
    const auto res = correlate_box(corr_points, cfg.boxes[i]);
    StatEntry e;
    e.name = box_name(cfg.boxes[i]);
    e.value = res.value;
    e.reference = res.poisson_reference;
    e.deviation = std::fabs(e.value - e.reference);
    e.threshold = i < cfg.box_thresholds.size() ? cfg.box_thresholds[i] : 0.0;
    e.pass = e.deviation <= e.threshold;
    report.stats.push_back(e);
  }
  if (!cfg.s_grid.empty()) {
    const auto hist = gap_distribution(gap_points, cfg.s_grid);
    StatEntry e;
    e.name = "gap_sup_dev";
    e.value = hist.sup_deviation_from_poisson();
    e.reference = 0.0;
    e.deviation = e.value;
    e.threshold = cfg.gap_threshold;
    e.pass = e.deviation <= e.threshold;
    report.stats.push_back(e);
  }
}

}  // namespace

TrialReport convergence_trial(const SequenceSpec& spec, std::int64_t n,
                              const TrialConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.seed = seed;
  report.alpha = spec_parameter(spec);
  report.spec = spec.describe();
  report.n_points = n;
  try {
    const bool want_gaps = !cfg.s_grid.empty();
    const FracSeq seq = generate(spec, want_gaps ? n + 1 : n);
    const std::span<const double> all = seq.points();
    run_statistics(report, all.first(static_cast<std::size_t>(n)), all, cfg);
  } catch (const std::exception& ex) {
    report.ok = false;
    report.error = ex.what();
  }
  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

TrialReport convergence_trial_points(std::span<const double> points, std::int64_t n,
                                     const TrialConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.spec = "external points";
  report.n_points = n;
  const auto corr_n = std::min<std::size_t>(static_cast<std::size_t>(n), points.size());
  run_statistics(report, points.first(corr_n), points, cfg);
  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

int FDescriptor::k() const {
  return is_box ? box.k : static_cast<int>(tri_widths.size()) + 1;
}

double FDescriptor::integral() const {
  if (is_box) return box.volume();
  double v = 1.0;
  for (double s : tri_widths) v *= s;
  return v;
}

double FDescriptor::evaluate_r(std::span<const double> points) const {
  return is_box ? correlate_box(points, box).value
                : correlate_triangle(points, tri_widths);
}

std::string FDescriptor::describe() const {
  if (is_box) return "box " + box_name(box);
  std::ostringstream os;
  os << "triangle s=(";
  for (std::size_t i = 0; i < tri_widths.size(); ++i) {
    if (i) os << ",";
    os << tri_widths[i];
  }
  os << ")";
  return os.str();
}

VarEstimate variance_estimate(const FDescriptor& f, const ASequence& a, std::int64_t n,
                              IntervalJ j, int m, std::uint64_t seed,
                              const std::function<double(double)>* stat_hook) {
  if (m < 2) throw std::invalid_argument("variance_estimate: M must be >= 2");
  const double center = ck_factor(f.k(), n) * f.integral();
  const auto alphas = sample_alphas(j, m, seed);
  std::vector<double> sq(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double alpha = alphas[static_cast<std::size_t>(i)];
    double r;
    if (stat_hook) {
      r = (*stat_hook)(alpha);
    } else {
      SequenceSpec spec;
      spec.mode = ExpLinearSeq{alpha, std::nullopt, a};
      const FracSeq seq = generate(spec, n);
      r = f.evaluate_r(seq.points());
    }
    const double d = r - center;
    sq[static_cast<std::size_t>(i)] = d * d;
  }
  double mean = 0.0;
  for (double v : sq) mean += v;
  mean /= m;
  double var_of_sq = 0.0;
  for (double v : sq) var_of_sq += (v - mean) * (v - mean);
  var_of_sq /= (m - 1);
  return {mean, std::sqrt(var_of_sq / m)};
}

VarianceCurve variance_curve(const FDescriptor& f, const ASequence& a,
                             std::span<const std::int64_t> n_values, IntervalJ j, int m,
                             std::uint64_t seed) {
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1])
      throw std::invalid_argument("variance_curve: N values must be strictly increasing");
  VarianceCurve curve;
  curve.k = f.k();
  curve.f_desc = f.describe();
  curve.j_lo = j.lo();
  curve.m = m;
  for (auto n : n_values) {
    const auto est = variance_estimate(f, a, n, j, m, seed);
    curve.n_values.push_back(n);
    curve.variances.push_back(est.variance);
    curve.std_errors.push_back(est.std_error);
  }
  return curve;
}

double decay_slope(const VarianceCurve& curve) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < curve.n_values.size(); ++i) {
    if (curve.variances[i] > 0.0) {
      lx.push_back(std::log(static_cast<double>(curve.n_values[i])));
      ly.push_back(std::log(curve.variances[i]));
    }
  }
  if (lx.size() < 2)
    throw std::invalid_argument("decay_slope: fewer than 2 positive variance entries");
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double triangle_fourier_transform(double width, double xi) {
  if (xi == 0.0) return width;
  const double arg = std::numbers::pi * width * xi;
  const double s = std::sin(arg) / arg;
  return width * s * s;
}

double fourier_side_r2(std::span<const double> points, double width, double eps,
                       bool zero_fhat) {
  const auto n = static_cast<std::int64_t>(points.size());
  if (n < 2) throw std::invalid_argument("fourier_side_r2: need at least 2 points");
  if (eps < 0.0) throw std::invalid_argument("fourier_side_r2: eps must be >= 0");
  const double c2 = ck_factor(2, n) * width;
  if (zero_fhat) return c2;

  const auto freq_max = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(n), 1.0 + eps)));
  long double acc = 0.0L;
  for (std::int64_t m = 1; m <= freq_max; ++m) {
    long double re = 0.0L, im = 0.0L;
    for (double p : points) {
      const long double arg = 2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>(m) * static_cast<long double>(p);
      re += cosl(arg);
      im += sinl(arg);
    }
    const long double s2 = re * re + im * im - static_cast<long double>(n);
    // n and -n contribute conjugate terms with the same even fhat.
    acc += 2.0L * static_cast<long double>(
                      triangle_fourier_transform(width, static_cast<double>(m) /
                                                            static_cast<double>(n))) *
           s2;
  }
  return c2 + static_cast<double>(acc / (static_cast<long double>(n) *
                                         static_cast<long double>(n)));
}

double fourier_side_r2_tuple_first(std::span<const double> points, double width,
                                   double eps) {
  const auto n = static_cast<std::int64_t>(points.size());
  if (n < 2) throw std::invalid_argument("fourier_side_r2_tuple_first: need at least 2 points");
  const double c2 = ck_factor(2, n) * width;
  const auto freq_max = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(n), 1.0 + eps)));
  long double acc = 0.0L;
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const long double delta = static_cast<long double>(points[static_cast<std::size_t>(x)]) -
                                static_cast<long double>(points[static_cast<std::size_t>(y)]);
      for (std::int64_t m = 1; m <= freq_max; ++m) {
        const long double arg =
            2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m) * delta;
        acc += 2.0L * static_cast<long double>(triangle_fourier_transform(
                          width, static_cast<double>(m) / static_cast<double>(n))) *
               cosl(arg);
      }
    }
  }
  return c2 + static_cast<double>(acc / (static_cast<long double>(n) *
                                         static_cast<long double>(n)));
}

}  // namespace finegrain
