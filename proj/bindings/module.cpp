#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "finegrain/correlation.hpp"
#include "finegrain/harness.hpp"
#include "finegrain/sequence.hpp"
#include "finegrain/spectral.hpp"

namespace py = pybind11;
using namespace finegrain;

namespace {

ASequenceKind akind(const std::string& a) {
  if (a == "linear") return ASequenceKind::Linear;
  if (a == "sqrt") return ASequenceKind::Sqrt;
  if (a == "logsq") return ASequenceKind::LogSquared;
  throw std::invalid_argument("a must be linear, sqrt, or logsq");
}

BoxRegion make_box(const std::vector<std::pair<double, double>>& intervals) {
  BoxRegion box;
  box.k = static_cast<int>(intervals.size()) + 1;
  for (const auto& [a, b] : intervals) box.intervals.push_back({a, b});
  return box;
}

}  // namespace

PYBIND11_MODULE(_finegrain, m) {
  m.doc() = "fine-scale statistics of sequences modulo one";

  py::register_exception<feasibility_error>(m, "FeasibilityError");

  py::class_<FracSeq>(m, "FracSeq")
      .def_property_readonly("points",
                             [](const FracSeq& s) {
                               return std::vector<double>(s.values.begin(),
                                                          s.values.end());
                             })
      .def_readonly("n_points", &FracSeq::n_points)
      .def_readonly("precision_bits", &FracSeq::precision_bits)
      .def_readonly("err_bound", &FracSeq::err_bound);

  m.def(
      "generate_exp",
      [](double alpha, std::int64_t n, const std::string& a, int bits) {
        auto spec = SequenceSpec::exp_linear(alpha, akind(a));
        spec.error_bits = bits;
        return generate(spec, n);
      },
      py::arg("alpha"), py::arg("n"), py::arg("a") = "linear", py::arg("bits") = 53,
      "fractional parts of exp(alpha * a_n)");

  m.def(
      "generate_geometric",
      [](double beta, std::int64_t n, int bits) {
        auto spec = SequenceSpec::geometric(beta);
        spec.error_bits = bits;
        return generate(spec, n);
      },
      py::arg("beta"), py::arg("n"), py::arg("bits") = 53,
      "fractional parts of beta^n for a real base");

  m.def(
      "generate_rational",
      [](long long p, long long q, std::int64_t n, int bits) {
        auto spec = SequenceSpec::geometric(Rational{p, q});
        spec.error_bits = bits;
        return generate(spec, n);
      },
      py::arg("p"), py::arg("q"), py::arg("n"), py::arg("bits") = 53,
      "fractional parts of (p/q)^n, exact powering");

  m.def("lattice_points", &lattice_points, py::arg("n"));

  py::class_<CorrResult>(m, "CorrResult")
      .def_readonly("raw_count", &CorrResult::raw_count)
      .def_readonly("value", &CorrResult::value)
      .def_readonly("poisson_reference", &CorrResult::poisson_reference)
      .def_readonly("k", &CorrResult::k)
      .def_readonly("n_points", &CorrResult::n_points);

  m.def(
      "correlate_box",
      [](const std::vector<double>& pts,
         const std::vector<std::pair<double, double>>& intervals) {
        return correlate_box(pts, make_box(intervals));
      },
      py::arg("points"), py::arg("intervals"),
      "k-point correlation over a box given as k-1 (lo, hi) pairs");

  m.def(
      "correlate_triangle",
      [](const std::vector<double>& pts, const std::vector<double>& widths) {
        return correlate_triangle(pts, widths);
      },
      py::arg("points"), py::arg("widths"));

  py::class_<GapHistogram>(m, "GapHistogram")
      .def_readonly("s_grid", &GapHistogram::s_grid)
      .def_readonly("cdf", &GapHistogram::cdf)
      .def_readonly("n_gaps", &GapHistogram::n_gaps)
      .def("sup_deviation_from_poisson", &GapHistogram::sup_deviation_from_poisson);

  m.def(
      "gap_distribution",
      [](const std::vector<double>& pts, const std::vector<double>& s_grid) {
        return gap_distribution(pts, s_grid);
      },
      py::arg("points"), py::arg("s_grid"));

  m.def("poisson_gap_cdf", &poisson_gap_cdf, py::arg("s"));
  m.def("ck_factor", &ck_factor, py::arg("k"), py::arg("n"));

  m.def(
      "h_map",
      [](const std::vector<long long>& n) { return h_map(n); },
      py::arg("n"));

  py::class_<VandermondeInverse>(m, "VandermondeInverse")
      .def_readonly("ell", &VandermondeInverse::ell)
      .def_readonly("inv", &VandermondeInverse::inv)
      .def_readonly("op_norm", &VandermondeInverse::op_norm)
      .def_readonly("residual", &VandermondeInverse::residual);

  m.def(
      "vandermonde_inverse",
      [](const std::vector<double>& x) { return vandermonde_inverse(x); },
      py::arg("x"));

  m.def(
      "oscillatory_integral",
      [](const std::vector<long long>& u, const std::vector<std::int64_t>& t,
         const std::string& a, double j_lo, double ceiling) {
        PhaseSpec spec;
        spec.u = u;
        spec.t = t;
        spec.a.kind = akind(a);
        const auto res = oscillatory_integral(spec, IntervalJ{j_lo}, ceiling);
        return py::make_tuple(res.value, res.error_estimate, res.panels);
      },
      py::arg("u"), py::arg("t"), py::arg("a") = "sqrt", py::arg("j_lo") = 0.1,
      py::arg("frequency_ceiling") = 1e7,
      "(value, error_estimate, panels) of the interval-J oscillatory integral");

  m.def(
      "count_zeros",
      [](const std::vector<long long>& u, const std::vector<std::int64_t>& t,
         const std::string& a, double lo, double hi) {
        PhaseSpec spec;
        spec.u = u;
        spec.t = t;
        spec.a.kind = akind(a);
        const auto zc = count_zeros(spec, lo, hi);
        return py::make_tuple(zc.count, zc.resolved, zc.zeros);
      },
      py::arg("u"), py::arg("t"), py::arg("a"), py::arg("lo"), py::arg("hi"),
      "(count, resolved, zeros) of the phase derivative sum on [lo, hi]");
}
