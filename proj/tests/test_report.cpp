#include <random>

#include "doctest.h"
#include "finegrain/report.hpp"

using namespace finegrain;

namespace {

TrialReport random_report(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  TrialReport r;
  r.seed = gen();
  r.alpha = real(gen);
  r.spec = "geometric, beta=2";
  r.n_points = static_cast<std::int64_t>(gen() % 100000);
  r.ok = gen() % 4 != 0;
  if (!r.ok) r.error = "synthetic failure";
  r.runtime_ms = std::fabs(real(gen));
  const std::size_t nstats = gen() % 4;
  for (std::size_t i = 0; i < nstats; ++i) {
    StatEntry s;
    s.name = "stat" + std::to_string(i);
    s.value = real(gen);
    s.reference = real(gen);
    s.deviation = std::fabs(s.value - s.reference);
    s.threshold = std::fabs(real(gen));
    s.pass = s.deviation <= s.threshold;
    r.stats.push_back(s);
  }
  return r;
}

}  // namespace

TEST_CASE("serialization is byte-stable") {
  std::mt19937_64 gen(1);
  const auto r = random_report(gen);
  CHECK(report_to_json(r) == report_to_json(r));
  CHECK(report_to_json(r).find('\r') == std::string::npos);
}

TEST_CASE("report round-trips through json") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_report(gen);
    const auto back = report_from_json(report_to_json(r));
    CHECK(report_to_json(back) == report_to_json(r));
    CHECK(back.seed == r.seed);
    CHECK(back.alpha == r.alpha);
    CHECK(back.stats.size() == r.stats.size());
    for (std::size_t i = 0; i < r.stats.size(); ++i) {
      CHECK(back.stats[i].value == r.stats[i].value);
      CHECK(back.stats[i].pass == r.stats[i].pass);
    }
  }
}

TEST_CASE("empty results are refused, no file written") {
  CHECK_THROWS_AS(write_report_file({}, "/tmp/finegrain_should_not_exist.json"),
                  std::invalid_argument);
}

TEST_CASE("csv serialization uses 17 significant digits") {
  VarianceCurve c;
  c.n_values = {1000};
  c.variances = {1.0 / 3.0};
  c.std_errors = {0.1};
  const auto csv = variance_curve_to_csv(c);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
}
