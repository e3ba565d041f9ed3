#include <cmath>

#include "doctest.h"
#include "finegrain/sequence.hpp"

using namespace finegrain;

TEST_CASE("required_precision matches the sizing formula") {
  CHECK(required_precision(SequenceSpec::exp_linear(1.1), 10000, 53) == 15987);
  CHECK(required_precision(SequenceSpec::geometric(Rational{2, 1}), 100, 53) == 217);
  // ceil(1.1 * sqrt(1e5) * log2 e) recomputed independently
  const long mag = static_cast<long>(
      std::ceil(1.1 * std::sqrt(1e5) * (1.0 / std::log(2.0))));
  CHECK(mag == 502);
  CHECK(required_precision(SequenceSpec::exp_linear(1.1, ASequenceKind::Sqrt), 100000, 53) ==
        mag + 53 + 64);
}

TEST_CASE("required_precision rejects invalid inputs") {
  CHECK_THROWS_AS(required_precision(SequenceSpec::exp_linear(-1.0), 10, 53),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_precision(SequenceSpec::geometric(0.5), 10, 53),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_precision(SequenceSpec::geometric(2.0), 0, 53),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_precision(SequenceSpec::geometric(2.0), 10, 0),
                  std::invalid_argument);
}

TEST_CASE("rational geometric powers are exact") {
  const auto seq = generate(SequenceSpec::geometric(Rational{3, 2}), 3);
  REQUIRE(seq.values.size() == 3);
  CHECK(seq.values[0] == 0.5);    // 1.5
  CHECK(seq.values[1] == 0.25);   // 2.25
  CHECK(seq.values[2] == 0.375);  // 3.375
}

TEST_CASE("integer base gives identically zero fractional parts") {
  const auto seq = generate(SequenceSpec::geometric(Rational{2, 1}), 5);
  for (double v : seq.values) CHECK(v == 0.0);
}

TEST_CASE("alpha = ln 2 at working precision reduces to near-integers") {
  const auto seq = generate(SequenceSpec::exp_linear_ln(2.0), 20);
  for (double v : seq.values)
    CHECK(std::min(v, 1.0 - v) < std::ldexp(1.0, -40));
}

TEST_CASE("all outputs lie in [0,1)") {
  for (const auto& spec :
       {SequenceSpec::exp_linear(0.7, ASequenceKind::Sqrt),
        SequenceSpec::exp_linear(0.3, ASequenceKind::LogSquared),
        SequenceSpec::geometric(1.7), SequenceSpec::geometric(Rational{7, 3})}) {
    const auto seq = generate(spec, 200);
    for (double v : seq.values) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("geometric e^alpha path agrees with the per-term exponential path") {
  const double alpha = 0.8314;
  const auto a = generate(SequenceSpec::geometric_exp(alpha), 300);
  const auto b = generate(SequenceSpec::exp_linear(alpha), 300);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    CHECK(circular_distance(a.values[i], b.values[i]) <= 2.0 * a.err_bound);
}

TEST_CASE("verify_stability certifies the generator") {
  CHECK(verify_stability(SequenceSpec::geometric(Rational{3, 2}), 50, 64) == 0.0);
  CHECK(verify_stability(SequenceSpec::exp_linear(0.7, ASequenceKind::Sqrt), 1000, 64) <
        std::ldexp(1.0, -40));
  CHECK(verify_stability(SequenceSpec::exp_linear(1.0), 1000, 64) <
        std::ldexp(1.0, -40));
}

TEST_CASE("precision ceiling produces a diagnostic feasibility error") {
  GenOptions opts;
  opts.precision_ceiling = 1000;
  CHECK_THROWS_AS(generate(SequenceSpec::geometric(2.0), 100000, opts), feasibility_error);
  try {
    generate(SequenceSpec::geometric(2.0), 100000, opts);
  } catch (const feasibility_error& e) {
    CHECK(std::string(e.what()).find("100117") != std::string::npos);
  }
}

TEST_CASE("dilated integer sequences stay accurate at large n") {
  SequenceSpec spec;
  spec.mode = DilatedIntegerSeq{std::sqrt(2.0), IntegerKind::Squares};
  const auto seq = generate(spec, 2000);
  // spot check against exact integer arithmetic on the double alpha
  const double alpha = std::sqrt(2.0);
  for (std::int64_t n : {1500LL, 1999LL}) {
    const long double v = static_cast<long double>(alpha) * n * n;
    const double expect = static_cast<double>(v - std::floor(v));
    CHECK(circular_distance(seq.values[static_cast<std::size_t>(n - 1)], expect) < 1e-9);
  }
}

TEST_CASE("cache round-trip preserves values and metadata") {
  const auto seq = generate(SequenceSpec::exp_linear(0.9, ASequenceKind::Sqrt), 64);
  const std::string path = "/tmp/finegrain_test_cache.fsq";
  write_cache(seq, path);
  const auto back = read_cache(path);
  CHECK(back.n_points == seq.n_points);
  CHECK(back.precision_bits == seq.precision_bits);
  CHECK(back.err_bound == seq.err_bound);
  CHECK(back.values == seq.values);
  CHECK(back.spec.describe() == seq.spec.describe());
}

TEST_CASE("table sequences are accepted but flagged when non-monotone") {
  SequenceSpec spec;
  ExpLinearSeq e;
  e.alpha = 1.0;
  e.a.kind = ASequenceKind::Table;
  e.a.table = {2.0, 1.0, 3.0};
  spec.mode = e;
  CHECK(spec.describe().find("unchecked") != std::string::npos);
  CHECK_NOTHROW(generate(spec, 3));
}
