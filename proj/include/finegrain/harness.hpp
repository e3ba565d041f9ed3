#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finegrain/correlation.hpp"
#include "finegrain/sequence.hpp"
#include "finegrain/spectral.hpp"

namespace finegrain {

// Counter-based deterministic generator: output i depends only on
// (seed, i), so streams can be sliced and replayed.
struct CounterRng {
  static constexpr const char* kName = "splitmix64-counter";
  std::uint64_t seed = 0;

  std::uint64_t bits(std::uint64_t counter) const;
  double uniform(std::uint64_t counter) const;  // [0,1)
};

std::vector<double> sample_alphas(IntervalJ j, int m, std::uint64_t seed);

struct StatEntry {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct TrialReport {
  std::string generator = CounterRng::kName;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  std::string spec;
  std::int64_t n_points = 0;
  std::vector<StatEntry> stats;
  bool ok = true;          // generation succeeded
  std::string error;       // reason when !ok
  double runtime_ms = 0.0;

  bool all_pass() const;
};

struct TrialConfig {
  std::vector<BoxRegion> boxes;
  std::vector<double> box_thresholds;  // one per box
  std::vector<double> s_grid;          // gap CDF grid; empty = skip gaps
  double gap_threshold = 0.03;

  static std::vector<double> default_s_grid();  // 0..5 step 0.05
};

TrialReport convergence_trial(const SequenceSpec& spec, std::int64_t n,
                              const TrialConfig& cfg,
                              std::uint64_t seed = 0);

// Same statistics on externally supplied points (generator bypass).
TrialReport convergence_trial_points(std::span<const double> points, std::int64_t n,
                                     const TrialConfig& cfg);

// Test function for the variance: box indicator or product triangle.
struct FDescriptor {
  bool is_box = true;
  BoxRegion box;
  std::vector<double> tri_widths;

  int k() const;
  double integral() const;
  double evaluate_r(std::span<const double> points) const;  // R_k(f, points)
  std::string describe() const;
};

struct VarEstimate {
  double variance = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of int_J (R_k(f,alpha,N) - C_k(N) int f)^2 dalpha
// over m alphas sampled from J. The statistic hook replaces
// alpha -> R_k(f,alpha,N) for tests.
VarEstimate variance_estimate(const FDescriptor& f, const ASequence& a,
                              std::int64_t n, IntervalJ j, int m,
                              std::uint64_t seed,
                              const std::function<double(double)>* stat_hook = nullptr);

struct VarianceCurve {
  int k = 2;
  std::string f_desc;
  double j_lo = 2.0;
  int m = 0;
  std::vector<std::int64_t> n_values;  // strictly increasing
  std::vector<double> variances;
  std::vector<double> std_errors;
};

VarianceCurve variance_curve(const FDescriptor& f, const ASequence& a,
                             std::span<const std::int64_t> n_values, IntervalJ j,
                             int m, std::uint64_t seed);

// Least-squares slope of log(variance) vs log(N); nonpositive entries are
// dropped, fewer than 2 left is an error.
double decay_slope(const VarianceCurve& curve);

// Truncated Poisson-summation evaluation of R_2 with the triangle test
// function, frequency-first: C_2(N) s + N^-2 sum_n fhat(n/N)(|S(n)|^2 - N).
// zero_fhat is a test hook that zeroes every n != 0 term.
double fourier_side_r2(std::span<const double> points, double width, double eps,
                       bool zero_fhat = false);

// Same sum reorganized tuple-first (pure algebra check, O(N^2 * range)).
double fourier_side_r2_tuple_first(std::span<const double> points, double width,
                                   double eps);

double triangle_fourier_transform(double width, double xi);  // fhat for the triangle

}  // namespace finegrain
