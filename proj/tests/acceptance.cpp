// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Thresholds are frozen here; loosening one requires a recorded rationale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "finegrain/correlation.hpp"
#include "finegrain/harness.hpp"
#include "finegrain/report.hpp"
#include "finegrain/sequence.hpp"
#include "finegrain/spectral.hpp"

using namespace finegrain;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void line(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<double> random_points(std::int64_t n, std::uint64_t seed) {
  CounterRng rng{seed};
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = rng.uniform(static_cast<std::uint64_t>(i));
  return pts;
}

std::vector<double> unit_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 100; ++i) g.push_back(0.05 * i);
  return g;
}

// 1. Optimized counter equals brute force, exact integers, 50 instances per k.
void criterion_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 gen(20240901);
  std::uniform_real_distribution<double> width(0.1, 3.0);
  std::uniform_real_distribution<double> off(-2.0, 2.0);
  int mismatches = 0, total = 0;
  for (int k = 2; k <= 4; ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::int64_t n = 50 + static_cast<std::int64_t>(gen() % 251);  // <= 300
      const auto pts = random_points(n, gen());
      BoxRegion box;
      box.k = k;
      for (int i = 0; i < k - 1; ++i) {
        const double a = off(gen);
        box.intervals.push_back({a, a + width(gen)});
      }
      const auto slow = correlate_box_bruteforce(pts, box);
      const auto fast = correlate_box(pts, box);
      ++total;
      if (slow.raw_count != fast.raw_count) ++mismatches;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  line(mismatches == 0 && secs < 60.0, "oracle-equivalence",
       fmt("%d/%d exact matches, %.1fs (limit 60s)", total - mismatches, total, secs));
}

// 2. Lattice closed forms with zero tolerance, N = 10 and N = 10^6.
void criterion_closed_forms() {
  bool ok = true;
  std::string why;
  for (std::int64_t n : {10LL, 1000000LL}) {
    const auto pts = lattice_points(n);
    for (double s : {0.5, 1.0, 2.5}) {
      const auto res = correlate_box(pts, BoxRegion{2, {{-s, s}}});
      if (res.value != 2.0 * std::floor(s)) {
        ok = false;
        why = fmt("R2 N=%lld s=%g gave %.17g", (long long)n, s, res.value);
      }
    }
    const auto tri = correlate_box(pts, BoxRegion{3, {{0.5, 1.5}, {0.5, 1.5}}});
    if (tri.value != 1.0) {
      ok = false;
      why = fmt("R3 N=%lld gave %.17g", (long long)n, tri.value);
    }
    // every normalized gap equals exactly 1 - 1/N
    const double step = 1.0 - 1.0 / static_cast<double>(n);
    const auto hist = gap_distribution(pts, {step / 2.0, 0.999 * step, step, 2.0});
    const bool gap_ok = hist.cdf[0] == 0.0 && hist.cdf[1] == 0.0 &&
                        hist.cdf[2] == 1.0 && hist.cdf[3] == 1.0;
    if (!gap_ok) {
      ok = false;
      why = fmt("gap step N=%lld cdf=(%g,%g,%g,%g)", (long long)n, hist.cdf[0],
                hist.cdf[1], hist.cdf[2], hist.cdf[3]);
    }
  }
  line(ok, "lattice-closed-forms", ok ? "R2=2*floor(s), R3=1, exact gap step" : why);
}

TrialConfig poisson_trial_config() {
  TrialConfig cfg;
  cfg.boxes = {BoxRegion{2, {{-1.0, 1.0}}}, BoxRegion{3, {{0.0, 1.0}, {0.0, 1.0}}}};
  cfg.box_thresholds = {0.1, 0.15};
  cfg.s_grid = unit_grid();
  cfg.gap_threshold = 0.03;
  return cfg;
}

// Shared majority-vote protocol for criteria 3 and 4.
void poisson_experiment(const char* name, std::int64_t n, std::uint64_t seed,
                        bool geometric) {
  const auto start = Clock::now();
  const auto cfg = poisson_trial_config();
  const auto alphas = sample_alphas(IntervalJ{2.0}, 10, seed);
  int passing = 0;
  for (double alpha : alphas) {
    const auto spec = geometric ? SequenceSpec::geometric(alpha)
                                : SequenceSpec::exp_linear(alpha, ASequenceKind::Sqrt);
    const auto rep = convergence_trial(spec, n, cfg, seed);
    if (rep.ok && rep.all_pass()) ++passing;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  line(passing >= 8, name,
       fmt("%d/10 alphas Poissonian at N=%lld (need >= 8), %.1fs", passing,
           (long long)n, secs));
}

// 5. sqrt(n) mod one, perfect squares excluded: Poissonian pair correlation
// but a gap law visibly away from 1 - e^{-s}.
void criterion_negative_control() {
  std::vector<double> pts;
  std::int64_t next_square = 1, root = 1;
  for (std::int64_t n = 1; std::cmp_less(pts.size(), 100001); ++n) {
    if (n == next_square) {
      ++root;
      next_square = root * root;
      continue;  // sqrt(n) is an integer: a zero fractional part artifact
    }
    const double r = std::sqrt(static_cast<double>(n));
    pts.push_back(r - std::floor(r));
  }
  const auto r2 =
      correlate_box(std::span<const double>(pts).first(100000), BoxRegion{2, {{-1.0, 1.0}}});
  const auto hist = gap_distribution(pts, unit_grid());
  const double sup = hist.sup_deviation_from_poisson();
  const bool ok = std::fabs(r2.value - 2.0) <= 0.1 && sup > 0.03;
  line(ok, "negative-control",
       fmt("R2=%.4f (|R2-2|<=0.1), gap sup=%.4f (> 0.03 required)", r2.value, sup));
}

// 6. Variance decay in N: log-log slope <= -0.6.
void criterion_variance_decay() {
  const auto start = Clock::now();
  FDescriptor f;
  f.box = BoxRegion{2, {{-1.0, 1.0}}};
  ASequence a{ASequenceKind::Sqrt, {}};
  const std::vector<std::int64_t> ns = {1000, 2000, 4000, 8000, 16000};
  const auto curve = variance_curve(f, a, ns, IntervalJ{2.0}, 100, 6061);
  const double slope = decay_slope(curve);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  line(slope <= -0.6 && secs < 1800.0, "variance-decay",
       fmt("slope=%.3f (limit -0.6), M=100, %.0fs (limit 1800s)", slope, secs));
}

// 7. Difference-vector identity and the h-map relations.
void criterion_summation_identity() {
  std::mt19937_64 gen(777);
  std::uniform_int_distribution<long long> coeff(-20, 20);
  std::uniform_real_distribution<double> alpha_d(0.1, 3.0);
  ASequence lin{ASequenceKind::Linear, {}};
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(gen() % 3);
    std::vector<std::int64_t> x;
    while (std::cmp_less(x.size(), k)) {
      const auto cand = static_cast<std::int64_t>(1 + gen() % 40);
      if (std::find(x.begin(), x.end(), cand) == x.end()) x.push_back(cand);
    }
    std::vector<long long> n(static_cast<std::size_t>(k - 1));
    for (auto& v : n) v = coeff(gen);
    worst = std::max(worst, delta_identity_residual(x, n, alpha_d(gen), lin));
  }
  bool hmap_ok = true;
  for (int trial = 0; trial < 100000 && hmap_ok; ++trial) {
    const std::size_t len = 1 + gen() % 6;
    std::vector<long long> n(len);
    long long ninf = 0;
    for (auto& v : n) {
      v = coeff(gen);
      ninf = std::max(ninf, std::llabs(v));
    }
    long long sum = 0, hinf = 0;
    for (auto v : h_map(n)) {
      sum += v;
      hinf = std::max(hinf, std::llabs(v));
    }
    if (sum != 0 || hinf > 2 * ninf) hmap_ok = false;
  }
  line(worst < 1e-12 && hmap_ok, "summation-identity",
       fmt("worst residual %.2e over 1000 (limit 1e-12); h-map relations %s on 1e5",
           worst, hmap_ok ? "hold" : "VIOLATED"));
}

// 8. Fourier-side vs direct-space R2, plus the algebraic reorganization.
void criterion_fourier_crosscheck() {
  double worst = 0.0;
  for (double alpha : sample_alphas(IntervalJ{2.0}, 8, 99)) {
    const auto seq = generate(SequenceSpec::exp_linear(alpha, ASequenceKind::Sqrt), 500);
    const double direct = correlate_triangle(seq.points(), std::vector<double>{1.0});
    const double fsum = fourier_side_r2(seq.points(), 1.0, 0.5);
    worst = std::max(worst, std::fabs(direct - fsum));
  }
  // frozen after a calibration run showing worst ~2.1e-5 on this protocol
  const double kTruncationBound = 2e-4;
  const auto pts = random_points(200, 4242);
  const double reorg =
      std::fabs(fourier_side_r2(pts, 1.0, 0.5) - fourier_side_r2_tuple_first(pts, 1.0, 0.5));
  line(worst <= kTruncationBound && reorg < 1e-9, "fourier-crosscheck",
       fmt("worst |direct-fourier|=%.2e (limit 2e-4) at N=500; reorg diff=%.2e (limit 1e-9)",
           worst, reorg));
}

// 9. Spectral invariants: inverse residuals, zero counts, oscillatory decay,
// and the repulsion envelope.
void criterion_spectral_suite() {
  bool ok = true;
  std::string why;

  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> base(0.5, 3.0);
  double worst_resid = 0.0;
  for (int ell = 1; ell <= 6 && ok; ++ell) {
    std::uniform_real_distribution<double> gap(1e-3, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(ell));
      x[0] = base(gen);
      for (int i = 1; i < ell; ++i)
        x[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)] + gap(gen);
      worst_resid = std::max(worst_resid, vandermonde_inverse(x).residual);
    }
  }
  if (worst_resid > 1e-10) {
    ok = false;
    why = fmt("vandermonde residual %.2e", worst_resid);
  }

  std::uniform_int_distribution<long long> coeff(1, 5);
  for (int trial = 0; trial < 200 && ok; ++trial) {
    std::vector<long long> u(4);
    for (auto& v : u) v = coeff(gen) * (gen() % 2 ? 1 : -1);
    PhaseSpec spec;
    spec.u = u;
    spec.t = {1, 2, 3, 4};
    spec.a.kind = ASequenceKind::Linear;
    const auto zc = count_zeros(spec, -2.0, 2.0);
    int oracle = 0, last = 0;
    for (int g = 0; g <= 200000; ++g) {
      const double a = -2.0 + 4.0 * g / 200000.0;
      double psi = 0.0;
      for (int i = 0; i < 4; ++i)
        psi += static_cast<double>(u[static_cast<std::size_t>(i)]) * std::exp(a * (i + 1));
      const int sign = (psi > 0.0) - (psi < 0.0);
      if (sign == 0) {
        ++oracle;
        last = 0;
      } else {
        if (last != 0 && sign != last) ++oracle;
        last = sign;
      }
    }
    if (!zc.resolved || zc.count > 3 || zc.count != oracle) {
      ok = false;
      why = fmt("zero count trial %d: count=%d oracle=%d", trial, zc.count, oracle);
    }
  }

  if (ok) {
    double prev = 2.0;
    for (std::int64_t tl : {5LL, 10LL, 20LL, 40LL}) {
      PhaseSpec spec;
      spec.u = {1, -1};
      spec.t = {1, tl};
      spec.a.kind = ASequenceKind::Sqrt;
      const auto res = oscillatory_integral(spec, IntervalJ{0.1});
      const double mag = std::abs(res.value);
      if (mag > 1.0 + 1e-12 || mag >= prev) {
        ok = false;
        why = fmt("oscillatory |I|=%.4f at t_ell=%lld (prev %.4f)", mag, (long long)tl, prev);
        break;
      }
      prev = mag;
    }
  }

  for (int trial = 0; trial < 20 && ok; ++trial) {
    PhaseSpec spec;
    spec.a.kind = ASequenceKind::Sqrt;
    spec.u = {coeff(gen) * (gen() % 2 ? 1 : -1), coeff(gen) * (gen() % 2 ? 1 : -1)};
    spec.t = {static_cast<std::int64_t>(1 + gen() % 10), 30};
    const auto env = min_van_over_j(spec, IntervalJ{0.5}, 2000, 2);
    const double bound = repulsion_lower_bound(spec, IntervalJ{0.5}, 1.0);
    if (env.min_value < bound) {
      ok = false;
      why = fmt("repulsion envelope %.3e < bound %.3e", env.min_value, bound);
    }
  }

  line(ok, "spectral-suite",
       ok ? fmt("inverse residual %.2e; zero counts, decay, repulsion all hold", worst_resid)
          : why);
}

// 10. Generator certification: stability, integer base, exact rational base.
void criterion_generator_certification() {
  bool ok = true;
  std::string why;
  const double tol = std::ldexp(1.0, -40);

  const std::vector<SequenceSpec> specs = {
      SequenceSpec::exp_linear(2.5),
      SequenceSpec::exp_linear(2.5, ASequenceKind::Sqrt),
      SequenceSpec::exp_linear(2.5, ASequenceKind::LogSquared),
      SequenceSpec::geometric(2.5),
      SequenceSpec::geometric_exp(1.1),
      SequenceSpec::geometric(Rational{3, 2}),
  };
  double worst = 0.0;
  for (const auto& s : specs) worst = std::max(worst, verify_stability(s, 500, 64));
  if (worst >= tol) {
    ok = false;
    why = fmt("stability deviation %.3e >= 2^-40", worst);
  }

  const auto integer_base = generate(SequenceSpec::geometric(Rational{2, 1}), 50);
  for (double v : integer_base.points())
    if (v != 0.0) {
      ok = false;
      why = "2^n produced a nonzero fractional part";
    }

  // independent oracle: {(3/2)^n} = (3^n mod 2^n) / 2^n, dyadic hence exact
  const auto rat = generate(SequenceSpec::geometric(Rational{3, 2}), 30);
  long long num = 1, den = 1;
  for (int n = 1; n <= 30 && ok; ++n) {
    num *= 3;
    den *= 2;
    const double expect = static_cast<double>(num % den) / static_cast<double>(den);
    const double got = rat.points()[static_cast<std::size_t>(n - 1)];
    if (got != expect) {
      ok = false;
      why = fmt("(3/2)^%d: got %.17g expected %.17g", n, got, expect);
    }
  }

  line(ok, "generator-certification",
       ok ? fmt("stability %.2e < 2^-40; 2^n all-zero; (3/2)^n exact to n=30", worst) : why);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_oracle_equivalence();
  criterion_closed_forms();
  poisson_experiment("poisson-geometric", 50000, 3001, true);
  poisson_experiment("poisson-sublacunary", 100000, 3002, false);
  criterion_negative_control();
  criterion_variance_decay();
  criterion_summation_identity();
  criterion_fourier_crosscheck();
  criterion_spectral_suite();
  criterion_generator_certification();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%d/10 criteria passed in %.0fs\n", 10 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
