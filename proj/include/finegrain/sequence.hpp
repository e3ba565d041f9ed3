#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace finegrain {

/// Raised when a request exceeds a configured feasibility ceiling
/// (working precision, quadrature frequency).
class feasibility_error : public std::runtime_error {
 public:
  explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

enum class ASequenceKind { Linear, Sqrt, LogSquared, Table };

// The exponent sequence a_n (n >= 1): strictly increasing positive reals.
// Built-in kinds grow faster than log n; Table carries no such guarantee
// and is flagged unchecked.
struct ASequence {
  ASequenceKind kind = ASequenceKind::Linear;
  std::vector<double> table;  // Table only

  double value(std::int64_t n) const;  // a_n
  bool growth_guaranteed() const { return kind != ASequenceKind::Table; }
  // Table entries that are not strictly increasing/positive are accepted
  // but reported here so callers can flag the run.
  bool monotone_positive() const;
  std::string name() const;
};

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational parse(const std::string& s);  // "p/q" or "p"
  double to_double() const { return double(num) / double(den); }
  std::string str() const;
};

struct ExpLinearSeq {
  double alpha = 1.0;  // > 0
  // When set, alpha = ln(ln_of) is evaluated at working precision and the
  // double field above is only its approximation (CLI syntax "ln:x").
  std::optional<double> ln_of;
  ASequence a;
};

// Geometric progression beta^n; beta either an exact rational (kept exact
// through powering) or a real given to working precision.
struct GeometricSeq {
  std::optional<Rational> exact;
  // When set, beta = e^{exp_of} at working precision.
  std::optional<double> exp_of;
  double beta = 2.0;  // > 1; always set, approximates the value above
};

enum class IntegerKind { Squares, PowersOfTwo };

// Dilated integer sequences alpha*b_n for comparison experiments.
struct DilatedIntegerSeq {
  double alpha = 1.0;
  IntegerKind kind = IntegerKind::Squares;
};

struct SequenceSpec {
  std::variant<ExpLinearSeq, GeometricSeq, DilatedIntegerSeq> mode;
  int error_bits = 53;  // target absolute error 2^-p per fractional part

  void validate() const;  // throws std::invalid_argument
  std::string describe() const;

  static SequenceSpec exp_linear(double alpha, ASequenceKind kind = ASequenceKind::Linear);
  static SequenceSpec exp_linear_ln(double x, ASequenceKind kind = ASequenceKind::Linear);
  static SequenceSpec geometric(Rational beta);
  static SequenceSpec geometric(double beta);
  static SequenceSpec geometric_exp(double alpha);  // beta = e^alpha
};

struct GenOptions {
  // Hard cap on working precision; overridable via FINEGRAIN_PRECISION_CEILING.
  long precision_ceiling = default_precision_ceiling();
  static long default_precision_ceiling();
};

// Fractional parts of the first N terms, with the certificate of how they
// were produced. Immutable after construction.
struct FracSeq {
  std::vector<double> values;  // each in [0,1)
  SequenceSpec spec;
  std::int64_t n_points = 0;
  long precision_bits = 0;
  double err_bound = 0.0;  // certified absolute error per element

  std::span<const double> points() const { return values; }
};

// Working mantissa length needed so each fractional part is within 2^-p.
long required_precision(const SequenceSpec& spec, std::int64_t n, int p);

FracSeq generate(const SequenceSpec& spec, std::int64_t n, const GenOptions& opts = {});

// Regenerates at precision_bits + extra_bits; returns the max circular
// distance between corresponding elements.
double verify_stability(const SequenceSpec& spec, std::int64_t n, long extra_bits,
                        const GenOptions& opts = {});

// d(x,y) on R/Z.
double circular_distance(double x, double y);

// Binary cache: "FSQ1" header + spec + N little-endian doubles.
void write_cache(const FracSeq& seq, const std::string& path);
FracSeq read_cache(const std::string& path);
void write_csv(const FracSeq& seq, const std::string& path);

}  // namespace finegrain
