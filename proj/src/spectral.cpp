#include "finegrain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "internal.hpp"
#include "mpfr_util.hpp"

namespace finegrain {

using detail::Mp;
using detail::set_a_value;

namespace {

constexpr int kMaxEll = 8;  // 2 * k_max with k_max = 4
constexpr double kLog2E = 1.4426950408889634;

// Mantissa length covering e^{alpha a_t} magnitudes plus guard bits.
mpfr_prec_t phase_precision(const PhaseSpec& spec, double alpha_max, int extra = 0) {
  double a_max = 0.0;
  for (auto t : spec.t) a_max = std::max(a_max, spec.a.value(t));
  const double bits = std::fabs(alpha_max) * a_max * kLog2E;
  return static_cast<mpfr_prec_t>(std::max(bits, 0.0)) + 128 + extra;
}

// All derivatives phi^(j), j = 0..max_order, sharing the exponentials.
std::vector<double> phase_derivs_upto(const PhaseSpec& spec, double alpha, int max_order) {
  const mpfr_prec_t prec = phase_precision(spec, alpha, 16 * (max_order + 1));
  const int ell = spec.ell();
  std::vector<Mp> sums;
  sums.reserve(static_cast<std::size_t>(max_order + 1));
  for (int j = 0; j <= max_order; ++j) {
    sums.emplace_back(prec);
    mpfr_set_zero(sums.back(), 1);
  }
  Mp a(prec), e(prec), term(prec);
  for (int i = 0; i < ell; ++i) {
    set_a_value(a, spec.a, spec.t[static_cast<std::size_t>(i)]);
    mpfr_mul_d(e, a, alpha, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    mpfr_mul_si(e, e, spec.u[static_cast<std::size_t>(i)], MPFR_RNDN);
    for (int j = 0; j <= max_order; ++j) {
      mpfr_add(sums[static_cast<std::size_t>(j)], sums[static_cast<std::size_t>(j)], e,
               MPFR_RNDN);
      if (j < max_order) mpfr_mul(e, e, a, MPFR_RNDN);
    }
  }
  std::vector<double> out(static_cast<std::size_t>(max_order + 1));
  for (int j = 0; j <= max_order; ++j) out[static_cast<std::size_t>(j)] = sums[static_cast<std::size_t>(j)].to_double();
  return out;
}

}  // namespace

void PhaseSpec::validate(bool repulsion_mode) const {
  if (u.empty() || u.size() != t.size())
    throw std::invalid_argument("PhaseSpec: u and t must be nonempty and equal length");
  if (static_cast<int>(u.size()) > kMaxEll)
    throw std::invalid_argument("PhaseSpec: length exceeds 2*k_max");
  std::int64_t prev = 0;
  for (auto ti : t) {
    if (ti <= prev) throw std::invalid_argument("PhaseSpec: t must be strictly increasing positive");
    prev = ti;
  }
  if (repulsion_mode)
    for (auto ui : u)
      if (ui == 0) throw std::invalid_argument("PhaseSpec: zero coefficient in repulsion mode");
}

std::vector<long long> h_map(std::span<const long long> n) {
  if (n.empty()) throw std::invalid_argument("h_map: empty input");
  const auto k = n.size() + 1;
  std::vector<long long> h(k);
  h[0] = n[0];
  for (std::size_t i = 1; i + 1 < k; ++i) h[i] = n[i] - n[i - 1];
  h[k - 1] = -n[n.size() - 1];
  return h;
}

double phase_deriv(const PhaseSpec& spec, double alpha, int order) {
  spec.validate();
  if (order < 0) throw std::invalid_argument("phase_deriv: negative order");
  if (!(alpha > 0.0)) throw std::invalid_argument("phase_deriv: alpha must be positive");
  return phase_derivs_upto(spec, alpha, order)[static_cast<std::size_t>(order)];
}

double van_ell(const PhaseSpec& spec, double alpha, int ell) {
  spec.validate();
  if (ell < 1) throw std::invalid_argument("van_ell: ell must be >= 1");
  const auto derivs = phase_derivs_upto(spec, alpha, ell);
  double best = 0.0;
  for (int j = 1; j <= ell; ++j)
    best = std::max(best, std::fabs(derivs[static_cast<std::size_t>(j)]));
  return best;
}

VanEnvelope min_van_over_j(const PhaseSpec& spec, IntervalJ j, int grid_points, int ell) {
  if (grid_points < 2) throw std::invalid_argument("min_van_over_j: need at least 2 grid points");
  const double spacing = 1.0 / static_cast<double>(grid_points - 1);
  double lowest = std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_points; ++g) {
    const double alpha = j.lo() + spacing * static_cast<double>(g);
    lowest = std::min(lowest, van_ell(spec, alpha, ell));
  }
  return {lowest, spacing};
}

double repulsion_lower_bound(const PhaseSpec& spec, IntervalJ j, double c_exponent) {
  spec.validate(true);
  const auto t_ell = spec.t.back();
  const double a_tl = spec.a.value(t_ell);
  const int ell = spec.ell();
  return std::exp(j.lo() * a_tl / 2.0) *
         std::pow(static_cast<double>(t_ell), -c_exponent * static_cast<double>(ell - 1));
}

VandermondeInverse vandermonde_inverse(std::span<const double> x) {
  const int ell = static_cast<int>(x.size());
  if (ell < 1) throw std::invalid_argument("vandermonde_inverse: empty input");
  double prev = 0.0;
  for (double xi : x) {
    if (!(xi > prev)) throw std::invalid_argument("vandermonde_inverse: x must be strictly increasing positive");
    prev = xi;
  }

  const mpfr_prec_t prec = 768;
  const auto le = static_cast<std::size_t>(ell);
  // m_ij = (-1)^{j-1} e_{ell-j}(x without x_i) / (x_i prod_{m!=i}(x_m - x_i))
  std::vector<Mp> inv;
  inv.reserve(le * le);
  for (std::size_t i = 0; i < le * le; ++i) inv.emplace_back(prec);

  Mp denom(prec), tmp(prec), xi(prec);
  std::vector<Mp> esym;  // e_0..e_{ell-1} of the other coordinates
  for (std::size_t d = 0; d < le; ++d) esym.emplace_back(prec);

  for (std::size_t i = 0; i < le; ++i) {
    mpfr_set_d(xi, x[i], MPFR_RNDN);
    mpfr_set_si(esym[0], 1, MPFR_RNDN);
    for (std::size_t d = 1; d < le; ++d) mpfr_set_zero(esym[d], 1);
    mpfr_set(denom.get(), xi.get(), MPFR_RNDN);
    std::size_t used = 0;
    for (std::size_t m = 0; m < le; ++m) {
      if (m == i) continue;
      mpfr_set_d(tmp, x[m], MPFR_RNDN);
      for (std::size_t d = std::min(used + 1, le - 1); d >= 1; --d) {
        Mp prod(prec);
        mpfr_mul(prod, esym[d - 1], tmp, MPFR_RNDN);
        mpfr_add(esym[d], esym[d], prod, MPFR_RNDN);
      }
      ++used;
      mpfr_sub_d(tmp, tmp, x[i], MPFR_RNDN);  // x_m - x_i
      mpfr_mul(denom, denom, tmp, MPFR_RNDN);
    }
    for (std::size_t jcol = 1; jcol <= le; ++jcol) {
      Mp& cell = inv[i * le + (jcol - 1)];
      mpfr_div(cell, esym[le - jcol], denom, MPFR_RNDN);
      if (jcol % 2 == 0) mpfr_neg(cell, cell, MPFR_RNDN);
    }
  }

  // Residual |M * M^{-1} - I|_max against the extended-precision inverse.
  Mp acc(prec), pw(prec), resid(prec), worst(prec);
  mpfr_set_zero(worst, 1);
  for (std::size_t r = 0; r < le; ++r) {
    for (std::size_t c = 0; c < le; ++c) {
      mpfr_set_zero(acc, 1);
      for (std::size_t jj = 0; jj < le; ++jj) {
        mpfr_set_d(pw, x[jj], MPFR_RNDN);
        mpfr_pow_ui(pw, pw, static_cast<unsigned long>(r + 1), MPFR_RNDN);
        mpfr_mul(pw, pw, inv[jj * le + c], MPFR_RNDN);
        mpfr_add(acc, acc, pw, MPFR_RNDN);
      }
      if (r == c) mpfr_sub_si(acc, acc, 1, MPFR_RNDN);
      mpfr_abs(resid, acc, MPFR_RNDN);
      mpfr_max(worst, worst, resid, MPFR_RNDN);
    }
  }

  VandermondeInverse out;
  out.ell = ell;
  out.inv.assign(le, std::vector<double>(le, 0.0));
  double norm = 0.0;
  for (std::size_t i = 0; i < le; ++i) {
    double row = 0.0;
    for (std::size_t jcol = 0; jcol < le; ++jcol) {
      out.inv[i][jcol] = inv[i * le + jcol].to_double();
      row += std::fabs(out.inv[i][jcol]);
    }
    norm = std::max(norm, row);
  }
  out.op_norm = norm;
  out.residual = worst.to_double();
  return out;
}

ZeroCount count_zeros(const PhaseSpec& spec, double lo, double hi) {
  spec.validate(true);
  if (!(lo < hi)) throw std::invalid_argument("count_zeros: need lo < hi");
  const mpfr_prec_t prec = phase_precision(spec, std::max(std::fabs(lo), std::fabs(hi)));

  Mp a(prec), term(prec), sum(prec);
  auto psi_sign = [&](double alpha) -> int {
    mpfr_set_zero(sum, 1);
    for (int i = 0; i < spec.ell(); ++i) {
      set_a_value(a, spec.a, spec.t[static_cast<std::size_t>(i)]);
      mpfr_mul_d(term, a, alpha, MPFR_RNDN);
      mpfr_exp(term, term, MPFR_RNDN);
      mpfr_mul_si(term, term, spec.u[static_cast<std::size_t>(i)], MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
    }
    return mpfr_sgn(sum.get());
  };

  constexpr int kCells = 20000;
  constexpr double kWidthGoal = 1e-9;
  constexpr int kMaxDepth = 80;

  ZeroCount zc;
  const double step = (hi - lo) / kCells;
  int prev_sign = psi_sign(lo);
  double prev_alpha = lo;
  if (prev_sign == 0) zc.zeros.push_back(lo);
  for (int c = 1; c <= kCells; ++c) {
    const double alpha = (c == kCells) ? hi : lo + step * c;
    int sign = psi_sign(alpha);
    if (sign == 0) {
      zc.zeros.push_back(alpha);
      prev_sign = sign;
      prev_alpha = alpha;
      continue;
    }
    if (prev_sign != 0 && sign != prev_sign) {
      double a0 = prev_alpha, a1 = alpha;
      int s0 = prev_sign;
      int depth = 0;
      while (a1 - a0 > kWidthGoal && depth < kMaxDepth) {
        const double mid = 0.5 * (a0 + a1);
        const int sm = psi_sign(mid);
        if (sm == 0) {
          a0 = a1 = mid;
          break;
        }
        if (sm == s0)
          a0 = mid;
        else
          a1 = mid;
        ++depth;
      }
      if (a1 - a0 > kWidthGoal) {
        zc.resolved = false;
      } else {
        zc.zeros.push_back(0.5 * (a0 + a1));
      }
    }
    prev_sign = sign;
    prev_alpha = alpha;
  }
  zc.count = static_cast<int>(zc.zeros.size());
  if (zc.resolved && zc.count > spec.ell() - 1)
    throw std::logic_error("count_zeros: more than ell-1 zeros detected");
  return zc;
}

namespace {

// 12-point Gauss-Legendre on [-1, 1].
constexpr double kGlNodes[6] = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGlWeights[6] = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

}  // namespace

OscIntegral oscillatory_integral(const PhaseSpec& spec, IntervalJ j, double frequency_ceiling) {
  spec.validate();
  const int ell = spec.ell();
  std::vector<double> avals(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i)
    avals[static_cast<std::size_t>(i)] = spec.a.value(spec.t[static_cast<std::size_t>(i)]);

  // Monotone envelope for |phi'| on [j.lo, p].
  auto deriv_bound = [&](double p) {
    double b = 0.0;
    for (int i = 0; i < ell; ++i)
      b += std::fabs(static_cast<double>(spec.u[static_cast<std::size_t>(i)])) *
           avals[static_cast<std::size_t>(i)] *
           std::exp(p * avals[static_cast<std::size_t>(i)]);
    return b;
  };
  const double freq_max = deriv_bound(j.hi()) / (2.0 * std::numbers::pi);
  if (freq_max > frequency_ceiling) {
    std::ostringstream os;
    os << "oscillatory_integral: frequency bound F=" << freq_max << " exceeds ceiling "
       << frequency_ceiling;
    throw feasibility_error(os.str());
  }

  const mpfr_prec_t prec = phase_precision(spec, j.hi(), 64);
  Mp a(prec), term(prec), sum(prec), frac(prec);
  auto phase_mod1 = [&](double alpha) -> double {
    mpfr_set_zero(sum, 1);
    for (int i = 0; i < ell; ++i) {
      set_a_value(a, spec.a, spec.t[static_cast<std::size_t>(i)]);
      mpfr_mul_d(term, a, alpha, MPFR_RNDN);
      mpfr_exp(term, term, MPFR_RNDN);
      mpfr_mul_si(term, term, spec.u[static_cast<std::size_t>(i)], MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
    }
    detail::mp_frac(frac, sum);
    return frac.to_double();
  };

  // Panel width <= quarter period of the local frequency bound.
  auto integrate = [&](double width_scale, std::int64_t* panel_count) {
    double re = 0.0, im = 0.0;
    double p = j.lo();
    std::int64_t panels = 0;
    while (p < j.hi()) {
      double w = std::min(j.hi() - p, 0.25 * width_scale);
      for (int it = 0; it < 3; ++it) {
        const double f_local = deriv_bound(p + w) / (2.0 * std::numbers::pi);
        w = std::min({j.hi() - p, 0.25 * width_scale,
                      width_scale / (4.0 * std::max(f_local, 1e-300))});
      }
      const double mid = p + 0.5 * w;
      const double half = 0.5 * w;
      for (int g = 0; g < 6; ++g) {
        for (int s = -1; s <= 1; s += 2) {
          const double alpha = mid + s * half * kGlNodes[g];
          const double ph = phase_mod1(alpha);
          re += kGlWeights[g] * half * std::cos(2.0 * std::numbers::pi * ph);
          im += kGlWeights[g] * half * std::sin(2.0 * std::numbers::pi * ph);
        }
      }
      p += w;
      ++panels;
    }
    if (panel_count) *panel_count = panels;
    return std::complex<double>(re, im);
  };

  std::int64_t panels = 0;
  const std::complex<double> coarse = integrate(1.0, nullptr);
  const std::complex<double> fine = integrate(0.5, &panels);

  OscIntegral out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse);
  out.panels = panels;
  return out;
}

double delta_identity_residual(std::span<const std::int64_t> x, std::span<const long long> n,
                               double alpha, const ASequence& a) {
  if (x.size() != n.size() + 1)
    throw std::invalid_argument("delta_identity_residual: need |x| = |n| + 1");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t jj = i + 1; jj < x.size(); ++jj)
      if (x[i] == x[jj]) throw std::invalid_argument("delta_identity_residual: x must be distinct");

  double a_max = 0.0;
  for (auto xi : x) a_max = std::max(a_max, a.value(xi));
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::max(std::fabs(alpha) * a_max * kLog2E, 0.0)) + 192;

  Mp av(prec), e1(prec), e2(prec), term(prec), lhs(prec), rhs(prec);
  // lhs = sum_i n_i (e^{alpha a_{x_i}} - e^{alpha a_{x_{i+1}}})
  mpfr_set_zero(lhs, 1);
  for (std::size_t i = 0; i < n.size(); ++i) {
    set_a_value(av, a, x[i]);
    mpfr_mul_d(e1, av, alpha, MPFR_RNDN);
    mpfr_exp(e1, e1, MPFR_RNDN);
    set_a_value(av, a, x[i + 1]);
    mpfr_mul_d(e2, av, alpha, MPFR_RNDN);
    mpfr_exp(e2, e2, MPFR_RNDN);
    mpfr_sub(term, e1, e2, MPFR_RNDN);
    mpfr_mul_si(term, term, n[i], MPFR_RNDN);
    mpfr_add(lhs, lhs, term, MPFR_RNDN);
  }
  // rhs = phi(h(n), x, alpha)
  const auto h = h_map(n);
  mpfr_set_zero(rhs, 1);
  for (std::size_t i = 0; i < h.size(); ++i) {
    set_a_value(av, a, x[i]);
    mpfr_mul_d(e1, av, alpha, MPFR_RNDN);
    mpfr_exp(e1, e1, MPFR_RNDN);
    mpfr_mul_si(e1, e1, h[i], MPFR_RNDN);
    mpfr_add(rhs, rhs, e1, MPFR_RNDN);
  }

  Mp diff(prec), scale(prec);
  mpfr_sub(diff, lhs, rhs, MPFR_RNDN);
  mpfr_abs(diff, diff, MPFR_RNDN);
  mpfr_abs(scale, lhs, MPFR_RNDN);
  if (mpfr_cmp_si(scale, 1) < 0) mpfr_set_si(scale, 1, MPFR_RNDN);
  mpfr_div(diff, diff, scale, MPFR_RNDN);
  return diff.to_double();
}

}  // namespace finegrain
