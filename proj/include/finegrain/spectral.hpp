#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "finegrain/sequence.hpp"

namespace finegrain {

// Exponential-sum phase sum_i u_i e^{alpha a_{t_i}}.
struct PhaseSpec {
  std::vector<long long> u;      // coefficients; all nonzero in repulsion mode
  std::vector<std::int64_t> t;   // strictly increasing positive indices
  ASequence a;

  void validate(bool repulsion_mode = false) const;
  int ell() const { return static_cast<int>(u.size()); }
};

struct IntervalJ {
  double a_lo = 1.0;  // the interval is [A, A+1], A > 0
  double lo() const { return a_lo; }
  double hi() const { return a_lo + 1.0; }
};

// n in Z^{k-1} -> h in Z^k with sum(h) = 0 and |h|_inf <= 2|n|_inf.
std::vector<long long> h_map(std::span<const long long> n);

// d^j/dalpha^j of the phase, evaluated in high precision then rounded.
double phase_deriv(const PhaseSpec& spec, double alpha, int order);

// max over 1 <= i <= ell of |phi^(i)(alpha)|.
double van_ell(const PhaseSpec& spec, double alpha, int ell);

struct VanEnvelope {
  double min_value = 0.0;
  double grid_spacing = 0.0;  // envelope resolution, not a certified minimum
};
VanEnvelope min_van_over_j(const PhaseSpec& spec, IntervalJ j, int grid_points, int ell);

// Explicit lower bound e^{alpha_lo a_{t_ell}/2} * t_ell^{-C(ell-1)} from the
// repulsion argument, for trend comparisons against the envelope.
double repulsion_lower_bound(const PhaseSpec& spec, IntervalJ j, double c_exponent);

struct VandermondeInverse {
  int ell = 0;
  std::vector<std::vector<double>> inv;  // row-major M^{-1}
  double op_norm = 0.0;                  // max row sum of |entries|
  double residual = 0.0;                 // |M*M^{-1} - I|_max, extended precision
};

// Closed-form inverse of M(x)_{ij} = x_j^i via elementary symmetric
// polynomials; computed in extended precision.
VandermondeInverse vandermonde_inverse(std::span<const double> x);

struct ZeroCount {
  int count = 0;
  bool resolved = true;  // false if a sign change failed to isolate
  std::vector<double> zeros;
};

// Isolates sign changes of psi(alpha) = sum u_i e^{alpha a_{t_i}} on
// [lo, hi] by grid refinement + bisection to width 1e-9.
ZeroCount count_zeros(const PhaseSpec& spec, double lo, double hi);

struct OscIntegral {
  std::complex<double> value;
  double error_estimate = 0.0;  // from one global refinement
  std::int64_t panels = 0;
};

// int_J e(phi(alpha)) dalpha by oscillation-aware panel quadrature;
// panel width <= quarter period of the local frequency.
OscIntegral oscillatory_integral(const PhaseSpec& spec, IntervalJ j,
                                 double frequency_ceiling = 1e7);

// |<Delta(x,alpha), n> - phi(h(n), x, alpha)| / max(1, |lhs|), both sides
// evaluated independently on the unreduced values e^{alpha a_j}.
double delta_identity_residual(std::span<const std::int64_t> x,
                               std::span<const long long> n,
                               double alpha, const ASequence& a);

}  // namespace finegrain
