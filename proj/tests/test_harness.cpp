#include <cmath>

#include "doctest.h"
#include "finegrain/harness.hpp"

using namespace finegrain;

TEST_CASE("sample_alphas is deterministic and in range") {
  const auto a = sample_alphas(IntervalJ{2.0}, 3, 42);
  const auto b = sample_alphas(IntervalJ{2.0}, 3, 42);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v >= 2.0);
    CHECK(v < 3.0);
  }
  CHECK(sample_alphas(IntervalJ{2.0}, 1, 7).size() == 1);
}

TEST_CASE("sample_alphas mean obeys the CLT bound") {
  const auto a = sample_alphas(IntervalJ{2.0}, 10000, 13);
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= static_cast<double>(a.size());
  CHECK(std::fabs(mean - 2.5) < 0.02);
}

TEST_CASE("lattice trial has exactly zero deviation") {
  TrialConfig cfg;
  cfg.boxes = {BoxRegion{2, {{-1.0, 1.0}}}};
  cfg.box_thresholds = {0.1};
  const auto pts = lattice_points(1000);
  const auto report = convergence_trial_points(pts, 1000, cfg);
  REQUIRE(report.stats.size() == 1);
  CHECK(report.stats[0].value == 2.0);
  CHECK(report.stats[0].deviation == 0.0);
  CHECK(report.all_pass());
}

TEST_CASE("generator failures surface as failed reports with a reason") {
  TrialConfig cfg;
  cfg.boxes = {BoxRegion{2, {{-1.0, 1.0}}}};
  cfg.box_thresholds = {0.1};
  // alpha <= 0 is invalid
  const auto report = convergence_trial(SequenceSpec::exp_linear(-2.0), 100, cfg, 1);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.error.empty());
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("constant statistic hook gives zero variance") {
  FDescriptor f;
  f.box = BoxRegion{2, {{-1.0, 1.0}}};
  ASequence a{ASequenceKind::Sqrt, {}};
  const double center = ck_factor(2, 1000) * f.integral();
  std::function<double(double)> hook = [center](double) { return center; };
  const auto est = variance_estimate(f, a, 1000, IntervalJ{2.0}, 50, 3, &hook);
  CHECK(est.variance == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("variance estimate is positive, reproducible, and decreasing in N") {
  FDescriptor f;
  f.box = BoxRegion{2, {{-1.0, 1.0}}};
  ASequence a{ASequenceKind::Sqrt, {}};
  const auto e1 = variance_estimate(f, a, 500, IntervalJ{2.0}, 24, 7);
  const auto e2 = variance_estimate(f, a, 500, IntervalJ{2.0}, 24, 7);
  CHECK(e1.variance == e2.variance);  // bit-for-bit
  CHECK(e1.variance > 0.0);
  const auto e3 = variance_estimate(f, a, 4000, IntervalJ{2.0}, 24, 7);
  CHECK(e3.variance < e1.variance);
}

TEST_CASE("decay_slope closed cases") {
  VarianceCurve halving;
  halving.n_values = {1000, 2000, 4000};
  halving.variances = {1e-3, 5e-4, 2.5e-4};
  CHECK(decay_slope(halving) == doctest::Approx(-1.0).epsilon(1e-12));

  VarianceCurve flat;
  flat.n_values = {1000, 2000};
  flat.variances = {0.125, 0.125};
  CHECK(decay_slope(flat) == doctest::Approx(0.0).epsilon(1e-12));

  VarianceCurve degenerate;
  degenerate.n_values = {1000, 2000, 4000};
  degenerate.variances = {0.0, 0.0, 1e-3};
  CHECK_THROWS_AS(decay_slope(degenerate), std::invalid_argument);
}

TEST_CASE("ck_factor increases towards 1 in N") {
  for (int k = 2; k <= 4; ++k) {
    double prev = 0.0;
    for (std::int64_t n : {10LL, 100LL, 1000LL, 10000LL}) {
      const double c = ck_factor(k, n);
      CHECK(c > prev);
      CHECK(c < 1.0);
      prev = c;
    }
  }
}

TEST_CASE("fourier side with zeroed coefficients reduces to the centering term") {
  const auto pts = lattice_points(100);
  CHECK(fourier_side_r2(pts, 1.0, 0.5, true) ==
        doctest::Approx(ck_factor(2, 100) * 1.0).epsilon(1e-15));
}

TEST_CASE("lattice fourier side matches the independent closed form") {
  const std::int64_t n = 100;
  const double s = 1.0;
  const double eps = 0.5;
  const auto got = fourier_side_r2(lattice_points(n), s, eps);
  // S(m) vanishes unless n | m, where |S|^2 = n^2; and fhat(m/n) = 0 at
  // integer arguments for s = 1. Remaining terms carry the -N correction.
  const auto freq_max = static_cast<std::int64_t>(std::pow(n, 1.0 + eps));
  long double expect = ck_factor(2, n) * s;
  for (std::int64_t m = 1; m <= freq_max; ++m) {
    const double fh = triangle_fourier_transform(s, static_cast<double>(m) / n);
    long double s2 = (m % n == 0) ? static_cast<long double>(n) * n - n
                                  : -static_cast<long double>(n);
    expect += 2.0L * fh * s2 / (static_cast<long double>(n) * n);
  }
  CHECK(got == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
}

TEST_CASE("frequency-first and tuple-first reorganizations agree") {
  const auto alphas = sample_alphas(IntervalJ{0.0}, 64, 17);
  std::vector<double> pts(alphas.begin(), alphas.end());
  const double a = fourier_side_r2(pts, 1.0, 0.5);
  const double b = fourier_side_r2_tuple_first(pts, 1.0, 0.5);
  CHECK(std::fabs(a - b) < 1e-9);
}

TEST_CASE("counter rng matches its fixed algorithm identifier") {
  TrialReport r;
  CHECK(r.generator == std::string("splitmix64-counter"));
  CounterRng rng{5};
  CHECK(rng.uniform(0) == rng.uniform(0));
  CHECK(rng.uniform(0) != rng.uniform(1));
}
