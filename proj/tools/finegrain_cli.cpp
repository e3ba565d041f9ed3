#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finegrain/correlation.hpp"
#include "finegrain/harness.hpp"
#include "finegrain/report.hpp"
#include "finegrain/sequence.hpp"
#include "finegrain/spectral.hpp"

using namespace finegrain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFeasibility = 2;
constexpr int kExitVerifyFailed = 3;

// Canonical key=value view of the options a run resolved to; embedded in
// every artifact so the run can be replayed byte-for-byte.
using Config = std::map<std::string, std::string>;

std::string config_json(const Config& cfg) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : cfg) {
    if (!first) os << ",";
    first = false;
    os << "\"" << k << "\":\"" << v << "\"";
  }
  os << "}";
  return os.str();
}

std::string config_comment(const Config& cfg) {
  std::ostringstream os;
  os << "# finegrain " << kToolVersion << "\n# config:";
  for (const auto& [k, v] : cfg) os << " " << k << "=" << v;
  os << "\n";
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(text, out_path);
}

// ---- option parsing ------------------------------------------------------

struct SeqCli {
  std::string seq = "exp";
  std::string alpha = "2.5";
  std::string a = "linear";
  std::string beta = "2";
  std::string integer = "squares";
  int bits = 53;
};

void add_seq_options(CLI::App* cmd, SeqCli& s) {
  cmd->add_option("--seq", s.seq, "sequence family: exp | geom | dilated")
      ->check(CLI::IsMember({"exp", "geom", "dilated"}));
  cmd->add_option("--alpha", s.alpha, "alpha as a decimal or ln:x");
  cmd->add_option("--a", s.a, "exponent sequence a_n: linear | sqrt | logsq")
      ->check(CLI::IsMember({"linear", "sqrt", "logsq"}));
  cmd->add_option("--beta", s.beta, "geometric base: p/q, decimal, or exp:x");
  cmd->add_option("--int", s.integer, "integer sequence: squares | pow2")
      ->check(CLI::IsMember({"squares", "pow2"}));
  cmd->add_option("--bits", s.bits, "target error bits per point")
      ->check(CLI::Range(8, 200));
}

ASequenceKind parse_akind(const std::string& a) {
  if (a == "linear") return ASequenceKind::Linear;
  if (a == "sqrt") return ASequenceKind::Sqrt;
  return ASequenceKind::LogSquared;
}

double parse_decimal(const std::string& text, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size())
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  return v;
}

SequenceSpec build_spec(const SeqCli& s, Config& cfg) {
  cfg["seq"] = s.seq;
  cfg["bits"] = std::to_string(s.bits);
  SequenceSpec spec;
  if (s.seq == "exp") {
    cfg["alpha"] = s.alpha;
    cfg["a"] = s.a;
    if (s.alpha.rfind("ln:", 0) == 0)
      spec = SequenceSpec::exp_linear_ln(parse_decimal(s.alpha.substr(3), "--alpha"),
                                         parse_akind(s.a));
    else
      spec = SequenceSpec::exp_linear(parse_decimal(s.alpha, "--alpha"), parse_akind(s.a));
  } else if (s.seq == "geom") {
    cfg["beta"] = s.beta;
    if (s.beta.find('/') != std::string::npos)
      spec = SequenceSpec::geometric(Rational::parse(s.beta));
    else if (s.beta.rfind("exp:", 0) == 0)
      spec = SequenceSpec::geometric_exp(parse_decimal(s.beta.substr(4), "--beta"));
    else
      spec = SequenceSpec::geometric(parse_decimal(s.beta, "--beta"));
  } else {
    cfg["alpha"] = s.alpha;
    cfg["int"] = s.integer;
    DilatedIntegerSeq d;
    d.alpha = parse_decimal(s.alpha, "--alpha");
    d.kind = s.integer == "pow2" ? IntegerKind::PowersOfTwo : IntegerKind::Squares;
    spec.mode = d;
  }
  spec.error_bits = s.bits;
  return spec;
}

BoxRegion parse_box(const std::string& text, int k) {
  BoxRegion box;
  box.k = k;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--box: expected a:b, got '" + part + "'");
    box.intervals.push_back({parse_decimal(part.substr(0, colon), "--box"),
                             parse_decimal(part.substr(colon + 1), "--box")});
  }
  if (box.intervals.size() + 1 != static_cast<std::size_t>(k))
    throw std::invalid_argument("--box: expected k-1 = " + std::to_string(k - 1) +
                                " intervals");
  return box;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if constexpr (std::is_integral_v<T>)
      out.push_back(static_cast<T>(std::stoll(part)));
    else
      out.push_back(parse_decimal(part, what));
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

std::vector<double> gap_grid(double smax, double step) {
  if (!(step > 0.0) || !(smax > 0.0))
    throw std::invalid_argument("--smax and --sstep must be positive");
  std::vector<double> g;
  for (int i = 0; step * i <= smax + 1e-12; ++i) g.push_back(step * i);
  return g;
}

// ---- verify suites -------------------------------------------------------

void push_check(TrialReport& rep, const std::string& name, double value,
                double reference, double threshold) {
  StatEntry e;
  e.name = name;
  e.value = value;
  e.reference = reference;
  e.deviation = std::fabs(value - reference);
  e.threshold = threshold;
  e.pass = e.deviation <= threshold;
  rep.stats.push_back(e);
}

TrialReport verify_spectral(std::uint64_t seed) {
  TrialReport rep;
  rep.seed = seed;
  rep.spec = "verify:spectral";
  std::mt19937_64 gen(seed);

  std::uniform_real_distribution<double> base(0.5, 3.0), gap(1e-3, 2.0);
  double worst_resid = 0.0;
  for (int ell = 1; ell <= 6; ++ell)
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(ell));
      x[0] = base(gen);
      for (int i = 1; i < ell; ++i)
        x[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)] + gap(gen);
      worst_resid = std::max(worst_resid, vandermonde_inverse(x).residual);
    }
  push_check(rep, "vandermonde_residual", worst_resid, 0.0, 1e-10);

  std::uniform_int_distribution<long long> coeff(1, 5);
  int zero_violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    PhaseSpec spec;
    spec.u = {coeff(gen) * (gen() % 2 ? 1 : -1), coeff(gen) * (gen() % 2 ? 1 : -1),
              coeff(gen) * (gen() % 2 ? 1 : -1), coeff(gen) * (gen() % 2 ? 1 : -1)};
    spec.t = {1, 2, 3, 4};
    spec.a.kind = ASequenceKind::Linear;
    const auto zc = count_zeros(spec, -2.0, 2.0);
    if (!zc.resolved || zc.count > 3) ++zero_violations;
  }
  push_check(rep, "zero_count_bound", zero_violations, 0.0, 0.0);

  double prev = 2.0;
  int decay_violations = 0;
  for (std::int64_t tl : {5LL, 10LL, 20LL, 40LL}) {
    PhaseSpec spec;
    spec.u = {1, -1};
    spec.t = {1, tl};
    spec.a.kind = ASequenceKind::Sqrt;
    const double mag = std::abs(oscillatory_integral(spec, IntervalJ{0.1}).value);
    if (mag > 1.0 + 1e-12 || mag >= prev) ++decay_violations;
    prev = mag;
  }
  push_check(rep, "oscillatory_decay", decay_violations, 0.0, 0.0);

  int repulsion_violations = 0;
  for (int trial = 0; trial < 5; ++trial) {
    PhaseSpec spec;
    spec.a.kind = ASequenceKind::Sqrt;
    spec.u = {coeff(gen) * (gen() % 2 ? 1 : -1), coeff(gen) * (gen() % 2 ? 1 : -1)};
    spec.t = {static_cast<std::int64_t>(1 + gen() % 10), 30};
    const auto env = min_van_over_j(spec, IntervalJ{0.5}, 2000, 2);
    if (env.min_value < repulsion_lower_bound(spec, IntervalJ{0.5}, 1.0))
      ++repulsion_violations;
  }
  push_check(rep, "repulsion_envelope", repulsion_violations, 0.0, 0.0);

  std::uniform_int_distribution<long long> nc(-20, 20);
  std::uniform_real_distribution<double> alpha_d(0.1, 3.0);
  ASequence lin{ASequenceKind::Linear, {}};
  double worst_delta = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(gen() % 3);
    std::vector<std::int64_t> x;
    while (std::cmp_less(x.size(), k)) {
      const auto cand = static_cast<std::int64_t>(1 + gen() % 40);
      if (std::find(x.begin(), x.end(), cand) == x.end()) x.push_back(cand);
    }
    std::vector<long long> n(static_cast<std::size_t>(k - 1));
    for (auto& v : n) v = nc(gen);
    worst_delta = std::max(worst_delta, delta_identity_residual(x, n, alpha_d(gen), lin));
  }
  push_check(rep, "delta_identity_residual", worst_delta, 0.0, 1e-12);
  return rep;
}

TrialReport verify_generator(std::uint64_t seed) {
  TrialReport rep;
  rep.seed = seed;
  rep.spec = "verify:generator";
  const double tol = std::ldexp(1.0, -40);

  double worst = 0.0;
  for (const auto& s :
       {SequenceSpec::exp_linear(2.5), SequenceSpec::exp_linear(2.5, ASequenceKind::Sqrt),
        SequenceSpec::exp_linear(2.5, ASequenceKind::LogSquared),
        SequenceSpec::geometric(2.5), SequenceSpec::geometric_exp(1.1),
        SequenceSpec::geometric(Rational{3, 2})})
    worst = std::max(worst, verify_stability(s, 200, 64));
  push_check(rep, "stability_deviation", worst, 0.0, tol);

  const auto two = generate(SequenceSpec::geometric(Rational{2, 1}), 50);
  double nonzero = 0.0;
  for (double v : two.points()) nonzero = std::max(nonzero, v);
  push_check(rep, "integer_base_zero_fracs", nonzero, 0.0, 0.0);

  const auto rat = generate(SequenceSpec::geometric(Rational{3, 2}), 30);
  long long num = 1, den = 1;
  double rat_dev = 0.0;
  for (int n = 1; n <= 30; ++n) {
    num *= 3;
    den *= 2;
    const double expect = static_cast<double>(num % den) / static_cast<double>(den);
    rat_dev = std::max(
        rat_dev, std::fabs(rat.points()[static_cast<std::size_t>(n - 1)] - expect));
  }
  push_check(rep, "rational_base_exact", rat_dev, 0.0, 0.0);
  return rep;
}

std::string wrap_artifact(const Config& cfg, const std::string& results_json) {
  std::string body = results_json;
  if (!body.empty() && body.back() == '\n') body.pop_back();
  return "{\"config\":" + config_json(cfg) + ",\"results\":" + body + ",\"version\":\"" +
         kToolVersion + "\"}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fine-scale statistics of sequences modulo one"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker thread cap")->check(CLI::Range(1, 1024));

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "generate fractional parts");
  SeqCli gen_seq;
  add_seq_options(cmd_gen, gen_seq);
  std::int64_t gen_n = 100;
  std::string gen_format = "csv", gen_out;
  cmd_gen->add_option("--N", gen_n, "number of points")->check(CLI::PositiveNumber);
  cmd_gen->add_option("--format", gen_format, "csv | bin")
      ->check(CLI::IsMember({"csv", "bin"}));
  cmd_gen->add_option("--out", gen_out, "output path (default stdout, csv only)");

  // corr
  auto* cmd_corr = app.add_subcommand("corr", "k-point correlation over a box");
  SeqCli corr_seq;
  add_seq_options(cmd_corr, corr_seq);
  int corr_k = 2;
  std::int64_t corr_n = 1000, corr_lattice = 0;
  std::string corr_box = "-1:1", corr_out;
  cmd_corr->add_option("--k", corr_k, "correlation order")->check(CLI::Range(2, 8));
  cmd_corr->add_option("--N", corr_n, "number of points")->check(CLI::PositiveNumber);
  cmd_corr->add_option("--box", corr_box, "box intervals a:b[,a:b...]");
  cmd_corr->add_option("--lattice", corr_lattice, "use the lattice i/N instead")
      ->check(CLI::PositiveNumber);
  cmd_corr->add_option("--out", corr_out, "output path (default stdout)");

  // gaps
  auto* cmd_gaps = app.add_subcommand("gaps", "nearest-neighbour gap distribution");
  SeqCli gaps_seq;
  add_seq_options(cmd_gaps, gaps_seq);
  std::int64_t gaps_n = 1000;
  double gaps_smax = 5.0, gaps_sstep = 0.05;
  std::string gaps_out;
  cmd_gaps->add_option("--N", gaps_n, "number of points")->check(CLI::PositiveNumber);
  cmd_gaps->add_option("--smax", gaps_smax, "grid upper end");
  cmd_gaps->add_option("--sstep", gaps_sstep, "grid step");
  cmd_gaps->add_option("--out", gaps_out, "output path (default stdout)");

  // variance
  auto* cmd_var = app.add_subcommand("variance", "variance curve over sampled alpha");
  std::string var_a = "sqrt", var_box = "-1:1", var_ns = "1000,2000,4000", var_out;
  int var_k = 2, var_m = 20;
  double var_j = 2.0;
  std::uint64_t var_seed = 0;
  cmd_var->add_option("--a", var_a, "exponent sequence: linear | sqrt | logsq")
      ->check(CLI::IsMember({"linear", "sqrt", "logsq"}));
  cmd_var->add_option("--k", var_k, "correlation order")->check(CLI::Range(2, 8));
  cmd_var->add_option("--box", var_box, "box intervals a:b[,a:b...]");
  cmd_var->add_option("--Ns", var_ns, "comma-separated N values");
  cmd_var->add_option("--M", var_m, "alpha samples per N")->check(CLI::Range(2, 100000));
  cmd_var->add_option("--J", var_j, "interval J = [A, A+1], this is A");
  cmd_var->add_option("--seed", var_seed, "rng seed");
  cmd_var->add_option("--out", var_out, "output path (default stdout)");

  // oscint
  auto* cmd_osc = app.add_subcommand("oscint", "oscillatory integral of a phase");
  std::string osc_u = "1,-1", osc_t = "5,10", osc_a = "sqrt", osc_out;
  double osc_j = 0.1, osc_ceiling = 1e7;
  cmd_osc->add_option("--u", osc_u, "integer coefficients");
  cmd_osc->add_option("--t", osc_t, "strictly increasing indices");
  cmd_osc->add_option("--a", osc_a, "exponent sequence: linear | sqrt | logsq")
      ->check(CLI::IsMember({"linear", "sqrt", "logsq"}));
  cmd_osc->add_option("--J", osc_j, "interval J = [A, A+1], this is A");
  cmd_osc->add_option("--ceiling", osc_ceiling, "frequency feasibility ceiling");
  cmd_osc->add_option("--out", osc_out, "output path (default stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the built-in check suites");
  std::string verify_suite = "all", verify_out;
  std::uint64_t verify_seed = 0;
  cmd_verify->add_option("--suite", verify_suite, "spectral | generator | all")
      ->check(CLI::IsMember({"spectral", "generator", "all"}));
  cmd_verify->add_option("--seed", verify_seed, "rng seed");
  cmd_verify->add_option("--out", verify_out, "output path (default stdout)");

  // report
  auto* cmd_rep = app.add_subcommand("report", "convergence trials over sampled alpha");
  SeqCli rep_seq;
  add_seq_options(cmd_rep, rep_seq);
  std::int64_t rep_n = 10000;
  int rep_m = 5;
  double rep_j = 2.0;
  std::uint64_t rep_seed = 0;
  std::string rep_out;
  cmd_rep->add_option("--N", rep_n, "number of points")->check(CLI::PositiveNumber);
  cmd_rep->add_option("--m", rep_m, "number of sampled alphas")->check(CLI::Range(1, 10000));
  cmd_rep->add_option("--J", rep_j, "interval J = [A, A+1], this is A");
  cmd_rep->add_option("--seed", rep_seed, "rng seed");
  cmd_rep->add_option("--out", rep_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (cmd_gen->parsed()) {
      Config cfg;
      const auto spec = build_spec(gen_seq, cfg);
      cfg["cmd"] = "generate";
      cfg["N"] = std::to_string(gen_n);
      cfg["format"] = gen_format;
      const auto seq = generate(spec, gen_n);
      if (gen_format == "bin") {
        if (gen_out.empty())
          throw std::invalid_argument("generate: --format bin requires --out");
        write_cache(seq, gen_out);
      } else {
        std::ostringstream os;
        if (!gen_out.empty()) os << config_comment(cfg);
        os << "n,value\n";
        for (std::int64_t i = 0; i < seq.n_points; ++i)
          os << (i + 1) << "," << format_real(seq.values[static_cast<std::size_t>(i)])
             << "\n";
        emit(os.str(), gen_out);
      }
    } else if (cmd_corr->parsed()) {
      Config cfg;
      cfg["cmd"] = "corr";
      cfg["k"] = std::to_string(corr_k);
      cfg["box"] = corr_box;
      const auto box = parse_box(corr_box, corr_k);
      CorrResult res;
      if (corr_lattice > 0) {
        cfg["lattice"] = std::to_string(corr_lattice);
        res = correlate_box(lattice_points(corr_lattice), box);
      } else {
        const auto spec = build_spec(corr_seq, cfg);
        cfg["N"] = std::to_string(corr_n);
        res = correlate_box(generate(spec, corr_n).points(), box);
      }
      std::ostringstream os;
      os << "{\"config\":" << config_json(cfg) << ",\"poisson_reference\":"
         << format_real(res.poisson_reference) << ",\"raw_count\":" << res.raw_count
         << ",\"value\":" << format_real(res.value) << ",\"version\":\"" << kToolVersion
         << "\"}\n";
      emit(os.str(), corr_out);
    } else if (cmd_gaps->parsed()) {
      Config cfg;
      const auto spec = build_spec(gaps_seq, cfg);
      cfg["cmd"] = "gaps";
      cfg["N"] = std::to_string(gaps_n);
      cfg["smax"] = format_real(gaps_smax);
      cfg["sstep"] = format_real(gaps_sstep);
      const auto seq = generate(spec, gaps_n);
      const auto hist = gap_distribution(seq.points(), gap_grid(gaps_smax, gaps_sstep));
      std::ostringstream os;
      os << config_comment(cfg)
         << "# sup_deviation_from_poisson="
         << format_real(hist.sup_deviation_from_poisson()) << "\n"
         << gap_histogram_to_csv(hist);
      emit(os.str(), gaps_out);
    } else if (cmd_var->parsed()) {
      Config cfg;
      cfg["cmd"] = "variance";
      cfg["a"] = var_a;
      cfg["k"] = std::to_string(var_k);
      cfg["box"] = var_box;
      cfg["Ns"] = var_ns;
      cfg["M"] = std::to_string(var_m);
      cfg["J"] = format_real(var_j);
      cfg["seed"] = std::to_string(var_seed);
      FDescriptor f;
      f.box = parse_box(var_box, var_k);
      ASequence a{parse_akind(var_a), {}};
      const auto ns = parse_list<std::int64_t>(var_ns, "--Ns");
      const auto curve = variance_curve(f, a, ns, IntervalJ{var_j}, var_m, var_seed);
      std::ostringstream os;
      os << config_comment(cfg) << "# slope=" << format_real(decay_slope(curve)) << "\n"
         << variance_curve_to_csv(curve);
      emit(os.str(), var_out);
    } else if (cmd_osc->parsed()) {
      Config cfg;
      cfg["cmd"] = "oscint";
      cfg["u"] = osc_u;
      cfg["t"] = osc_t;
      cfg["a"] = osc_a;
      cfg["J"] = format_real(osc_j);
      cfg["ceiling"] = format_real(osc_ceiling);
      PhaseSpec spec;
      spec.u = parse_list<long long>(osc_u, "--u");
      for (auto t : parse_list<long long>(osc_t, "--t"))
        spec.t.push_back(static_cast<std::int64_t>(t));
      spec.a.kind = parse_akind(osc_a);
      const auto res = oscillatory_integral(spec, IntervalJ{osc_j}, osc_ceiling);
      std::ostringstream os;
      os << "{\"abs\":" << format_real(std::abs(res.value))
         << ",\"config\":" << config_json(cfg)
         << ",\"error_estimate\":" << format_real(res.error_estimate)
         << ",\"imag\":" << format_real(res.value.imag())
         << ",\"panels\":" << res.panels
         << ",\"real\":" << format_real(res.value.real()) << ",\"version\":\""
         << kToolVersion << "\"}\n";
      emit(os.str(), osc_out);
    } else if (cmd_verify->parsed()) {
      Config cfg;
      cfg["cmd"] = "verify";
      cfg["suite"] = verify_suite;
      cfg["seed"] = std::to_string(verify_seed);
      std::vector<TrialReport> reports;
      if (verify_suite == "spectral" || verify_suite == "all")
        reports.push_back(verify_spectral(verify_seed));
      if (verify_suite == "generator" || verify_suite == "all")
        reports.push_back(verify_generator(verify_seed));
      emit(wrap_artifact(cfg, reports_to_json(reports)), verify_out);
      for (const auto& r : reports)
        if (!r.all_pass()) return kExitVerifyFailed;
    } else if (cmd_rep->parsed()) {
      Config cfg;
      build_spec(rep_seq, cfg);  // validates family flags; alpha resampled below
      cfg["cmd"] = "report";
      cfg["N"] = std::to_string(rep_n);
      cfg["m"] = std::to_string(rep_m);
      cfg["J"] = format_real(rep_j);
      cfg["seed"] = std::to_string(rep_seed);
      TrialConfig tcfg;
      tcfg.boxes = {BoxRegion{2, {{-1.0, 1.0}}}, BoxRegion{3, {{0.0, 1.0}, {0.0, 1.0}}}};
      tcfg.box_thresholds = {0.1, 0.15};
      tcfg.s_grid = TrialConfig::default_s_grid();
      std::vector<TrialReport> reports;
      for (double alpha : sample_alphas(IntervalJ{rep_j}, rep_m, rep_seed)) {
        SequenceSpec spec;
        if (rep_seq.seq == "geom") {
          spec = SequenceSpec::geometric(alpha);
        } else if (rep_seq.seq == "dilated") {
          DilatedIntegerSeq d;
          d.alpha = alpha;
          d.kind = rep_seq.integer == "pow2" ? IntegerKind::PowersOfTwo
                                             : IntegerKind::Squares;
          spec.mode = d;
        } else {
          spec = SequenceSpec::exp_linear(alpha, parse_akind(rep_seq.a));
        }
        spec.error_bits = rep_seq.bits;
        auto rep = convergence_trial(spec, rep_n, tcfg, rep_seed);
        rep.alpha = alpha;
        reports.push_back(std::move(rep));
      }
      emit(wrap_artifact(cfg, reports_to_json(reports)), rep_out);
    }
  } catch (const feasibility_error& e) {
    std::cerr << "feasibility: " << e.what() << "\n";
    return kExitFeasibility;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
