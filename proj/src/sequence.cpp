#include "finegrain/sequence.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "internal.hpp"
#include "json.hpp"
#include "mpfr_util.hpp"

namespace finegrain {

using detail::Mp;
using detail::set_a_value;
using nlohmann::json;

double ASequence::value(std::int64_t n) const {
  switch (kind) {
    case ASequenceKind::Linear:
      return static_cast<double>(n);
    case ASequenceKind::Sqrt:
      return std::sqrt(static_cast<double>(n));
    case ASequenceKind::LogSquared: {
      const double l = std::log(static_cast<double>(n) + 1.0);
      return l * l;
    }
    case ASequenceKind::Table:
      if (n < 1 || n > static_cast<std::int64_t>(table.size()))
        throw std::invalid_argument("ASequence: table index out of range");
      return table[static_cast<std::size_t>(n - 1)];
  }
  throw std::logic_error("ASequence: bad kind");
}

bool ASequence::monotone_positive() const {
  if (kind != ASequenceKind::Table) return true;
  double prev = 0.0;
  for (double v : table) {
    if (v <= prev) return false;
    prev = v;
  }
  return !table.empty();
}

std::string ASequence::name() const {
  switch (kind) {
    case ASequenceKind::Linear: return "linear";
    case ASequenceKind::Sqrt: return "sqrt";
    case ASequenceKind::LogSquared: return "log_squared";
    case ASequenceKind::Table: return "table";
  }
  return "?";
}

Rational Rational::parse(const std::string& s) {
  Rational r;
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      r.num = std::stoll(s);
      r.den = 1;
    } else {
      r.num = std::stoll(s.substr(0, slash));
      r.den = std::stoll(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
  if (r.den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const long long g = std::gcd(std::abs(r.num), r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

void SequenceSpec::validate() const {
  if (error_bits < 1) throw std::invalid_argument("SequenceSpec: error_bits must be >= 1");
  if (const auto* e = std::get_if<ExpLinearSeq>(&mode)) {
    if (!(e->alpha > 0.0)) throw std::invalid_argument("SequenceSpec: alpha must be positive");
    if (e->a.kind == ASequenceKind::Table && e->a.table.empty())
      throw std::invalid_argument("SequenceSpec: empty table");
  } else if (const auto* g = std::get_if<GeometricSeq>(&mode)) {
    const double beta = g->exact ? g->exact->to_double() : g->beta;
    if (!(beta > 1.0)) throw std::invalid_argument("SequenceSpec: beta must exceed 1");
  } else if (const auto* d = std::get_if<DilatedIntegerSeq>(&mode)) {
    if (!(d->alpha > 0.0)) throw std::invalid_argument("SequenceSpec: alpha must be positive");
  }
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  if (const auto* e = std::get_if<ExpLinearSeq>(&mode)) {
    os << "exp(alpha*a_n), alpha=";
    if (e->ln_of)
      os << "ln(" << *e->ln_of << ")";
    else
      os << e->alpha;
    os << ", a=" << e->a.name();
    if (e->a.kind == ASequenceKind::Table && !e->a.monotone_positive())
      os << " [unchecked: table not strictly increasing positive]";
  } else if (const auto* g = std::get_if<GeometricSeq>(&mode)) {
    if (g->exact)
      os << "geometric, beta=" << g->exact->str();
    else if (g->exp_of)
      os << "geometric, beta=exp(" << *g->exp_of << ")";
    else
      os << "geometric, beta=" << g->beta;
  } else if (const auto* d = std::get_if<DilatedIntegerSeq>(&mode)) {
    os << "alpha*b_n, alpha=" << d->alpha
       << ", b=" << (d->kind == IntegerKind::Squares ? "n^2" : "2^n");
  }
  return os.str();
}

SequenceSpec SequenceSpec::exp_linear(double alpha, ASequenceKind kind) {
  SequenceSpec s;
  s.mode = ExpLinearSeq{alpha, std::nullopt, ASequence{kind, {}}};
  return s;
}

SequenceSpec SequenceSpec::exp_linear_ln(double x, ASequenceKind kind) {
  SequenceSpec s;
  s.mode = ExpLinearSeq{std::log(x), x, ASequence{kind, {}}};
  return s;
}

SequenceSpec SequenceSpec::geometric(Rational beta) {
  SequenceSpec s;
  s.mode = GeometricSeq{beta, std::nullopt, beta.to_double()};
  return s;
}

SequenceSpec SequenceSpec::geometric(double beta) {
  SequenceSpec s;
  s.mode = GeometricSeq{std::nullopt, std::nullopt, beta};
  return s;
}

SequenceSpec SequenceSpec::geometric_exp(double alpha) {
  SequenceSpec s;
  s.mode = GeometricSeq{std::nullopt, alpha, std::exp(alpha)};
  return s;
}

long GenOptions::default_precision_ceiling() {
  if (const char* env = std::getenv("FINEGRAIN_PRECISION_CEILING")) {
    const long v = std::atol(env);
    if (v > 0) return v;
  }
  return 1L << 22;
}

long required_precision(const SequenceSpec& spec, std::int64_t n, int p) {
  if (n < 1) throw std::invalid_argument("required_precision: N must be >= 1");
  if (p < 1) throw std::invalid_argument("required_precision: p must be >= 1");
  spec.validate();
  constexpr double kLog2E = 1.4426950408889634;
  double magnitude_bits = 0.0;
  if (const auto* e = std::get_if<ExpLinearSeq>(&spec.mode)) {
    double a_max = e->a.value(n);
    if (e->a.kind == ASequenceKind::Table)
      a_max = *std::max_element(e->a.table.begin(), e->a.table.begin() + n);
    magnitude_bits = std::ceil(e->alpha * a_max * kLog2E);
  } else if (const auto* g = std::get_if<GeometricSeq>(&spec.mode)) {
    const double beta = g->exact ? g->exact->to_double() : g->beta;
    magnitude_bits = std::ceil(static_cast<double>(n) * std::log2(beta));
  } else {
    const auto* d = std::get_if<DilatedIntegerSeq>(&spec.mode);
    const double log_bn = d->kind == IntegerKind::Squares
                              ? 2.0 * std::log2(static_cast<double>(n))
                              : static_cast<double>(n);
    magnitude_bits = std::ceil(std::log2(d->alpha) + log_bn);
  }
  return static_cast<long>(std::max(magnitude_bits, 0.0)) + p + 64;
}

namespace {

// Exact rational powering: {(p/q)^n} = (p^n mod q^n) / q^n.
void generate_exact_rational(const Rational& beta, std::int64_t n, long prec,
                             std::vector<double>& out) {
  mpz_t num, den, rem;
  mpz_inits(num, den, rem, nullptr);
  mpz_set_si(num, 1);
  mpz_set_si(den, 1);
  Mp frac(std::max(prec, 128L));
  Mp dn(std::max(prec, 128L));
  for (std::int64_t i = 1; i <= n; ++i) {
    mpz_mul_si(num, num, beta.num);
    mpz_mul_si(den, den, beta.den);
    mpz_mod(rem, num, den);
    mpfr_set_z(frac, rem, MPFR_RNDN);
    mpfr_set_z(dn, den, MPFR_RNDN);
    mpfr_div(frac, frac, dn, MPFR_RNDN);
    out.push_back(frac.to_double());
  }
  mpz_clears(num, den, rem, nullptr);
}

void generate_real_geometric(const GeometricSeq& g, long prec, std::int64_t n,
                             std::vector<double>& out) {
  Mp b(prec), x(prec), f(prec);
  if (g.exp_of) {
    mpfr_set_d(b, *g.exp_of, MPFR_RNDN);
    mpfr_exp(b, b, MPFR_RNDN);
  } else {
    mpfr_set_d(b, g.beta, MPFR_RNDN);
  }
  mpfr_set_si(x, 1, MPFR_RNDN);
  for (std::int64_t i = 1; i <= n; ++i) {
    mpfr_mul(x, x, b, MPFR_RNDN);
    detail::mp_frac(f, x);
    out.push_back(f.to_double());
  }
}

void generate_exp_linear(const ExpLinearSeq& e, long prec, std::int64_t n,
                         std::vector<double>& out) {
  Mp alpha(prec), t(prec), f(prec);
  if (e.ln_of) {
    mpfr_set_d(alpha, *e.ln_of, MPFR_RNDN);
    mpfr_log(alpha, alpha, MPFR_RNDN);
  } else {
    mpfr_set_d(alpha, e.alpha, MPFR_RNDN);
  }
  for (std::int64_t i = 1; i <= n; ++i) {
    set_a_value(t, e.a, i);
    mpfr_mul(t, t, alpha, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    detail::mp_frac(f, t);
    out.push_back(f.to_double());
  }
}

void generate_dilated_integer(const DilatedIntegerSeq& d, long prec, std::int64_t n,
                              std::vector<double>& out) {
  Mp alpha(prec), t(prec), f(prec);
  mpfr_set_d(alpha, d.alpha, MPFR_RNDN);
  mpz_t b;
  mpz_init_set_si(b, 1);
  for (std::int64_t i = 1; i <= n; ++i) {
    if (d.kind == IntegerKind::Squares) {
      mpz_set_si(b, i);
      mpz_mul_si(b, b, i);
    } else {
      if (i == 1)
        mpz_set_si(b, 2);
      else
        mpz_mul_si(b, b, 2);
    }
    mpfr_mul_z(t, alpha, b, MPFR_RNDN);
    detail::mp_frac(f, t);
    out.push_back(f.to_double());
  }
  mpz_clear(b);
}

FracSeq generate_at(const SequenceSpec& spec, std::int64_t n, long prec) {
  FracSeq seq;
  seq.spec = spec;
  seq.n_points = n;
  seq.precision_bits = prec;
  seq.err_bound = std::ldexp(1.0, -spec.error_bits);
  seq.values.reserve(static_cast<std::size_t>(n));
  if (const auto* g = std::get_if<GeometricSeq>(&spec.mode)) {
    if (g->exact)
      generate_exact_rational(*g->exact, n, prec, seq.values);
    else
      generate_real_geometric(*g, prec, n, seq.values);
  } else if (const auto* e = std::get_if<ExpLinearSeq>(&spec.mode)) {
    generate_exp_linear(*e, prec, n, seq.values);
  } else {
    generate_dilated_integer(std::get<DilatedIntegerSeq>(spec.mode), prec, n, seq.values);
  }
  // {x} rounded to double can land exactly on 1.0; fold it back.
  for (double& v : seq.values)
    if (v >= 1.0) v = 0.0;
  return seq;
}

}  // namespace

FracSeq generate(const SequenceSpec& spec, std::int64_t n, const GenOptions& opts) {
  const long prec = required_precision(spec, n, spec.error_bits);
  if (prec > opts.precision_ceiling) {
    std::ostringstream os;
    os << "generate: required precision " << prec << " bits exceeds ceiling "
       << opts.precision_ceiling << " (spec: " << spec.describe() << ", N=" << n << ")";
    throw feasibility_error(os.str());
  }
  return generate_at(spec, n, prec);
}

double circular_distance(double x, double y) {
  double f = std::fabs(x - y);
  f -= std::floor(f);
  return std::min(f, 1.0 - f);
}

double verify_stability(const SequenceSpec& spec, std::int64_t n, long extra_bits,
                        const GenOptions& opts) {
  const long prec = required_precision(spec, n, spec.error_bits);
  if (prec + extra_bits > opts.precision_ceiling) {
    std::ostringstream os;
    os << "verify_stability: required precision " << (prec + extra_bits)
       << " bits exceeds ceiling " << opts.precision_ceiling;
    throw feasibility_error(os.str());
  }
  const FracSeq base = generate_at(spec, n, prec);
  const FracSeq refined = generate_at(spec, n, prec + extra_bits);
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    worst = std::max(worst, circular_distance(base.values[static_cast<std::size_t>(i)],
                                              refined.values[static_cast<std::size_t>(i)]));
  return worst;
}

namespace {

json spec_to_json(const SequenceSpec& spec) {
  json j;
  j["error_bits"] = spec.error_bits;
  if (const auto* e = std::get_if<ExpLinearSeq>(&spec.mode)) {
    j["mode"] = "exp_linear";
    j["alpha"] = e->alpha;
    if (e->ln_of) j["ln_of"] = *e->ln_of;
    j["a"] = e->a.name();
    if (e->a.kind == ASequenceKind::Table) j["table"] = e->a.table;
  } else if (const auto* g = std::get_if<GeometricSeq>(&spec.mode)) {
    j["mode"] = "geometric";
    if (g->exact)
      j["beta_rational"] = g->exact->str();
    else if (g->exp_of)
      j["beta_exp_of"] = *g->exp_of;
    else
      j["beta"] = g->beta;
  } else {
    const auto* d = std::get_if<DilatedIntegerSeq>(&spec.mode);
    j["mode"] = "dilated_integer";
    j["alpha"] = d->alpha;
    j["b"] = d->kind == IntegerKind::Squares ? "squares" : "powers_of_two";
  }
  return j;
}

SequenceSpec spec_from_json(const json& j) {
  SequenceSpec spec;
  spec.error_bits = j.at("error_bits").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "exp_linear") {
    ExpLinearSeq e;
    e.alpha = j.at("alpha").get<double>();
    if (j.contains("ln_of")) e.ln_of = j.at("ln_of").get<double>();
    const std::string a = j.at("a").get<std::string>();
    if (a == "linear") e.a.kind = ASequenceKind::Linear;
    else if (a == "sqrt") e.a.kind = ASequenceKind::Sqrt;
    else if (a == "log_squared") e.a.kind = ASequenceKind::LogSquared;
    else {
      e.a.kind = ASequenceKind::Table;
      e.a.table = j.at("table").get<std::vector<double>>();
    }
    spec.mode = e;
  } else if (mode == "geometric") {
    GeometricSeq g;
    if (j.contains("beta_rational")) {
      g.exact = Rational::parse(j.at("beta_rational").get<std::string>());
      g.beta = g.exact->to_double();
    } else if (j.contains("beta_exp_of")) {
      g.exp_of = j.at("beta_exp_of").get<double>();
      g.beta = std::exp(*g.exp_of);
    } else {
      g.beta = j.at("beta").get<double>();
    }
    spec.mode = g;
  } else if (mode == "dilated_integer") {
    DilatedIntegerSeq d;
    d.alpha = j.at("alpha").get<double>();
    d.kind = j.at("b").get<std::string>() == "squares" ? IntegerKind::Squares
                                                       : IntegerKind::PowersOfTwo;
    spec.mode = d;
  } else {
    throw std::invalid_argument("spec_from_json: unknown mode '" + mode + "'");
  }
  return spec;
}

template <typename T>
void write_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_cache(const FracSeq& seq, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_cache: cannot open " + path);
  os.write("FSQ1", 4);
  const std::string spec_json = spec_to_json(seq.spec).dump();
  write_le<std::uint32_t>(os, static_cast<std::uint32_t>(spec_json.size()));
  os.write(spec_json.data(), static_cast<std::streamsize>(spec_json.size()));
  write_le<std::int64_t>(os, seq.n_points);
  write_le<std::int64_t>(os, seq.precision_bits);
  write_le<double>(os, seq.err_bound);
  for (double v : seq.values) write_le<double>(os, v);
  if (!os) throw std::runtime_error("write_cache: write failed for " + path);
}

FracSeq read_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_cache: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "FSQ1", 4) != 0)
    throw std::runtime_error("read_cache: bad magic in " + path);
  const auto spec_len = read_le<std::uint32_t>(is);
  std::string spec_json(spec_len, '\0');
  is.read(spec_json.data(), spec_len);
  FracSeq seq;
  seq.spec = spec_from_json(json::parse(spec_json));
  seq.n_points = read_le<std::int64_t>(is);
  seq.precision_bits = read_le<std::int64_t>(is);
  seq.err_bound = read_le<double>(is);
  seq.values.resize(static_cast<std::size_t>(seq.n_points));
  for (double& v : seq.values) v = read_le<double>(is);
  if (!is) throw std::runtime_error("read_cache: truncated file " + path);
  return seq;
}

void write_csv(const FracSeq& seq, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_csv: cannot open " + path);
  os << "n,value\n";
  os.precision(17);
  for (std::int64_t i = 0; i < seq.n_points; ++i)
    os << (i + 1) << "," << seq.values[static_cast<std::size_t>(i)] << "\n";
}

}  // namespace finegrain
