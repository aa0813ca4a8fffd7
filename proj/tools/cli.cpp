#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weylchar/afalgebra.hpp"
#include "weylchar/errors.hpp"
#include "weylchar/json_io.hpp"
#include "weylchar/moments.hpp"
#include "weylchar/poisson.hpp"
#include "weylchar/symfunc.hpp"
#include "weylchar/ucharacters.hpp"

namespace weylchar::cli {
namespace {

using json = nlohmann::json;
namespace jio = json_io;

struct Outcome {
  json body;
  bool passed = true;
  std::string summary;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) out.push_back(item);
  if (text.back() == sep) out.emplace_back();
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw PreconditionError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw PreconditionError("not an integer: '" + item + "'");
    out.push_back(value);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& q : parse_rationals(text)) out.push_back(to_double(q));
  return out;
}

Signature parse_signature_arg(const std::string& text) {
  auto entries = parse_ints(text);
  if (entries.empty()) throw PreconditionError("signature is empty");
  return Signature(std::move(entries));
}

Partition parse_partition_arg(const std::string& text) { return Partition(parse_ints(text)); }

/// Blocks separated by ';', angles in turns separated by ','.
BlockUnitary parse_block_unitary(const std::string& text, int level) {
  BlockUnitary u;
  u.level = level;
  for (const auto& block : split(text, ';')) u.blocks.emplace_back(parse_rationals(block));
  return u;
}

BratteliDiagram load_diagram(const std::string& name, int depth) {
  if (std::filesystem::is_regular_file(name)) {
    std::ifstream in(name);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw PreconditionError("cannot parse diagram file: " + std::string(e.what()));
    }
    return jio::parse_diagram(j);
  }
  return make_preset(name, depth);
}

CharMethod parse_method(const std::string& name) {
  if (name == "auto") return CharMethod::Auto;
  if (name == "bialternant") return CharMethod::Bialternant;
  if (name == "weight-sum") return CharMethod::WeightSum;
  if (name == "determinantal") return CharMethod::Determinantal;
  throw PreconditionError("unknown method '" + name + "'");
}

/// Weakly decreasing d-tuples with entries in [lo, hi].
void for_each_signature(int d, int lo, int hi, const std::function<void(const Signature&)>& visit) {
  std::vector<int> entries(static_cast<std::size_t>(d));
  std::function<void(int, int)> rec = [&](int i, int top) {
    if (i == d) {
      visit(Signature(entries));
      return;
    }
    for (int v = top; v >= lo; --v) {
      entries[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, hi);
}

// ---------------------------------------------------------------- subcommands

struct CharArgs {
  std::string sig;
  std::string u;
  std::string method = "auto";
};

Outcome cmd_char(const CharArgs& args, const EnumerationBudget& budget) {
  const Signature sig = parse_signature_arg(args.sig);
  const DiagonalUnitary u(parse_rationals(args.u));
  if (u.d() != sig.d()) throw PreconditionError("unitary size does not match the signature");
  CharOptions options;
  options.method = parse_method(args.method);
  options.budget = budget;
  const BigInt dim = weyl_dim(sig);
  const Complex trace = char_eval(sig, u, options);
  const Complex normalized = trace / to_double(Rational(dim));
  Outcome o;
  o.body = {{"signature", jio::signature(sig)},
            {"dim", jio::big(dim)},
            {"trace", jio::complex(trace)},
            {"normalized", jio::complex(normalized)}};
  o.summary = "dim " + dim.get_str() + ", |normalized| = " + std::to_string(std::abs(normalized));
  return o;
}

struct BranchArgs {
  std::string sig;
  std::string with;
  std::string blocks;
  std::string max_dim = "50000000";
};

Outcome cmd_branch(const BranchArgs& args) {
  const Signature sig = parse_signature_arg(args.sig);
  DecompositionBudget budget;
  budget.max_dim = BigInt(args.max_dim);
  Outcome o;
  BranchingReport report;
  if (!args.with.empty() == !args.blocks.empty()) throw PreconditionError("give exactly one of --with and --blocks");
  if (!args.with.empty()) {
    const Signature other = parse_signature_arg(args.with);
    const auto components = tensor_decompose(sig, other, budget);
    report = check_branching_inequalities(sig, other, components);
    o.body = {{"kind", "tensor"}, {"left", jio::signature(sig)}, {"right", jio::signature(other)},
              {"components", jio::tensor(components)}};
  } else {
    const auto dims = parse_ints(args.blocks);
    if (dims.size() != 2) throw PreconditionError("--blocks takes d1,d2");
    const auto decomposition = restrict_to_blocks(sig, dims[0], dims[1], budget);
    report = check_branching_inequalities(sig, decomposition);
    o.body = {{"kind", "restriction"}, {"signature", jio::signature(sig)}, {"blocks", dims},
              {"components", jio::restriction(decomposition)}};
  }
  o.body["inequalities"] = {{"holds", report.holds}, {"checked", report.checked}, {"violations", report.violations}};
  o.passed = report.holds;
  o.summary = std::to_string(o.body["components"].size()) + " components, inequalities " +
              (report.holds ? "hold" : "FAIL");
  return o;
}

struct MomentsArgs {
  std::string sig;
  int r = 2;
  int offset = 0;
  bool sweep = false;
  int dmin = 2;
  int dmax = 6;
  int range = 2;
};

json moments_report(const Signature& sig, const TraceZeroSigned& f, const EnumerationBudget& budget, bool& passed) {
  const WeightDistribution dist = weight_distribution(sig, f, budget);
  const Rational m2 = moment(dist, 2);
  const Rational m4 = moment(dist, 4);
  const Rational m2c = moment2_closed(sig, f);
  bool equal = m2 == m2c;
  json body = {{"signature", jio::signature(sig)},
               {"r", f.r},
               {"offset", f.offset},
               {"distribution", jio::distribution(dist)},
               {"symmetric", dist.is_symmetric()},
               {"m2", jio::rational(m2)},
               {"m4", jio::rational(m4)},
               {"m2_closed", jio::rational(m2c)}};
  if (sig.d() >= 4) {
    const Rational m4c = moment4_closed(sig, f);
    body["m4_closed"] = jio::rational(m4c);
    equal = equal && m4 == m4c;
  } else {
    body["m4_closed"] = nullptr;
  }
  body["equal"] = equal;
  const auto ratio = moment_ratio(dist);
  body["ratio"] = ratio ? jio::rational(*ratio) : json(nullptr);
  passed = equal && dist.is_symmetric();
  if (sig.d() >= 4 && 3 * f.r >= 2 * sig.d()) {
    const EstimateReport e = estimate_check(sig, f);
    body["estimate"] = {{"c1", jio::rational(e.c1)}, {"c2", jio::rational(e.c2)}, {"bound", jio::rational(e.bound)},
                        {"holds", e.holds}};
    passed = passed && e.holds;
  } else {
    body["estimate"] = nullptr;
  }
  return body;
}

Outcome cmd_moments(const MomentsArgs& args, const EnumerationBudget& budget) {
  Outcome o;
  if (!args.sweep) {
    if (args.sig.empty()) throw PreconditionError("--sig is required unless --sweep is given");
    const Signature sig = parse_signature_arg(args.sig);
    TraceZeroSigned f{args.r, sig.d(), args.offset};
    f.validate();
    bool passed = true;
    o.body = moments_report(sig, f, budget, passed);
    o.passed = passed;
    o.summary = std::string("moments ") + (passed ? "agree" : "DISAGREE");
    return o;
  }
  if (args.dmin < 2 || args.dmax < args.dmin || args.range < 0) throw PreconditionError("bad sweep range");
  long checked = 0;
  long m4_checked = 0;
  long estimates = 0;
  json failures = json::array();
  for (int d = args.dmin; d <= args.dmax; ++d) {
    for (int r = 2; r <= d; r += 2) {
      const TraceZeroSigned f{r, d, 0};
      for_each_signature(d, -args.range, args.range, [&](const Signature& sig) {
        bool passed = true;
        json report = moments_report(sig, f, budget, passed);
        ++checked;
        if (d >= 4) ++m4_checked;
        if (!report["estimate"].is_null()) ++estimates;
        if (!passed && failures.size() < 20) failures.push_back(std::move(report));
        if (!passed) o.passed = false;
      });
    }
  }
  o.body = {{"sweep", {{"dmin", args.dmin}, {"dmax", args.dmax}, {"range", args.range}}},
            {"checked", checked},
            {"m4_checked", m4_checked},
            {"estimates_checked", estimates},
            {"all_passed", o.passed},
            {"failures", failures}};
  o.summary = std::to_string(checked) + " cases, " + (o.passed ? "all pass" : "FAILURES");
  return o;
}

struct HcizArgs {
  int d = 3;
  int n = 2;
  long samples = 100'000;
  std::uint64_t seed = 0;
  std::string mode = "power";
  std::string a;
  std::string b;
  unsigned threads = 0;
};

HermitianSpectrum random_spectrum(int d, std::mt19937_64& rng, bool distinct) {
  std::uniform_int_distribution<int> pick(-8, 8);
  for (;;) {
    HermitianSpectrum s;
    for (int i = 0; i < d; ++i) s.eigenvalues.emplace_back(pick(rng), 4);
    if (!distinct) return s;
    auto e = s.eigenvalues;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) == e.end()) return s;
  }
}

Outcome cmd_hciz(const HcizArgs& args) {
  if (args.d < 1 || args.n < 1) throw PreconditionError("need d >= 1 and n >= 1");
  if (args.samples < 1000) throw PreconditionError("need at least 1000 samples");
  HcizMode mode;
  if (args.mode == "power") {
    mode = HcizMode::Power;
  } else if (args.mode == "exp") {
    mode = HcizMode::Exponential;
  } else {
    throw PreconditionError("mode must be power or exp");
  }
  std::mt19937_64 rng(chunk_seed(args.seed, ~std::uint64_t{0}));
  const bool distinct = mode == HcizMode::Exponential;
  HermitianSpectrum a = args.a.empty() ? random_spectrum(args.d, rng, distinct) : HermitianSpectrum{parse_rationals(args.a)};
  HermitianSpectrum b = args.b.empty() ? random_spectrum(args.d, rng, distinct) : HermitianSpectrum{parse_rationals(args.b)};
  if (a.d() != args.d || b.d() != args.d) throw PreconditionError("spectra must have length d");

  Complex exact;
  json exact_json;
  if (mode == HcizMode::Power) {
    const Rational value = hciz_partition_sum(a, b, args.n);
    exact = Complex(to_double(value), 0.0);
    exact_json = jio::rational(value);
  } else {
    exact = hciz_determinant(a, b);
    exact_json = jio::complex(exact);
  }
  MonteCarloOptions options;
  options.samples = args.samples;
  options.seed = args.seed;
  options.threads = args.threads;
  const MonteCarloResult mc = hciz_monte_carlo(a, b, args.n, mode, options);
  const double dre = std::abs(mc.estimate.real() - exact.real());
  const double dim = std::abs(mc.estimate.imag() - exact.imag());
  Outcome o;
  o.passed = dre <= 3 * mc.stderr_re + 1e-12 && dim <= 3 * mc.stderr_im + 1e-12;
  auto spectrum = [](const HermitianSpectrum& s) {
    json out = json::array();
    for (const auto& x : s.eigenvalues) out.push_back(jio::rational(x));
    return out;
  };
  o.body = {{"d", args.d},
            {"n", args.n},
            {"mode", args.mode},
            {"a", spectrum(a)},
            {"b", spectrum(b)},
            {"exact", exact_json},
            {"monte_carlo", jio::monte_carlo(mc)},
            {"deviation", {{"re", dre}, {"im", dim}}},
            {"passed", o.passed}};
  o.summary = std::string("Monte Carlo ") + (o.passed ? "within" : "OUTSIDE") + " 3 stderr of the exact value";
  return o;
}

struct ErgodicArgs {
  std::string diagram = "car";
  std::string lam;
  std::string mu;
  std::string u;
  int level = 1;
  int nmax = 6;
  int block = 0;
  std::string method = "auto";
};

Outcome cmd_ergodic(const ErgodicArgs& args, const EnumerationBudget& budget) {
  const BratteliDiagram diagram = load_diagram(args.diagram, args.nmax);
  const Partition lambda = parse_partition_arg(args.lam);
  const Partition mu = parse_partition_arg(args.mu);
  if (args.level < 0 || args.level > diagram.depth()) throw PreconditionError("level outside the diagram");
  const BlockUnitary u = args.u.empty() ? identity_unitary(diagram, args.level) : parse_block_unitary(args.u, args.level);
  const auto& dims = diagram.levels[args.level];
  if (u.blocks.size() != dims.size()) throw PreconditionError("unitary needs one ';'-separated block per level block");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (u.blocks[i].d() != dims[i]) throw PreconditionError("block " + std::to_string(i) + " has the wrong size");
  }
  ErgodicOptions options;
  options.block = args.block;
  options.char_options.method = parse_method(args.method);
  options.char_options.budget = budget;
  const ErgodicResult result = ergodic_sequence(lambda, mu, diagram, u, args.nmax, options);
  json sequence = json::array();
  for (const auto& p : result.points) {
    sequence.push_back({{"level", p.level}, {"d", p.d}, {"value", jio::complex(p.value)}, {"error", p.error}});
  }
  Outcome o;
  o.body = {{"diagram", diagram.name},
            {"lambda", jio::partition(lambda)},
            {"mu", jio::partition(mu)},
            {"sequence", sequence},
            {"limit", jio::complex(result.limit)},
            {"rate_exponent", result.rate_exponent ? json(*result.rate_exponent) : json(nullptr)}};
  o.summary = std::to_string(result.points.size()) + " levels, limit " + std::to_string(result.limit.real()) +
              (result.limit.imag() == 0 ? "" : " + " + std::to_string(result.limit.imag()) + "i");
  return o;
}

struct SchurWeylArgs {
  int n = 1;
  int p = 1;
  int q = 1;
};

Outcome cmd_schur_weyl(const SchurWeylArgs& args) {
  const Rational defect = schur_weyl_defect(args.n, args.p, args.q);
  Outcome o;
  o.body = {{"n", args.n}, {"p", args.p}, {"q", args.q}, {"d", std::int64_t{1} << args.n},
            {"defect", jio::rational(defect)}, {"defect_value", to_double(defect)}};
  o.summary = "defect " + to_fraction_string(defect);
  return o;
}

struct PoissonArgs {
  std::string stirling;
  int terms = 0;
  double tv = 0.0;
  bool kstep = false;
  bool series = false;
  bool reexpand = false;
  int k = 1;
  std::string a;
  std::string b;
  int truncation = 60;
  std::string diagram = "car";
  int level = 1;
  int n = 1;
  int m = 2;
  std::string u;
};

Outcome cmd_poisson(const PoissonArgs& args) {
  const int modes = !args.stirling.empty() + (args.tv != 0.0) + args.kstep + args.series + args.reexpand;
  if (modes != 1) throw PreconditionError("give exactly one of --stirling, --tv, --kstep, --series, --reexpand");
  Outcome o;
  if (!args.stirling.empty()) {
    const StirlingResult s = stirling_identity(parse_rational(args.stirling), args.terms);
    const double scaled_dev = std::abs(s.scaled_partial - s.scaled_closed);
    const double relative_dev = std::abs(s.partial_sum - s.closed) / std::abs(s.closed);
    o.passed = scaled_dev <= 1e-10 && relative_dev <= 1e-10;
    o.body = {{"t", jio::rational(s.t)},
              {"closed", s.closed_exact ? jio::rational(*s.closed_exact) : json(nullptr)},
              {"closed_value", s.closed},
              {"partial_sum", s.partial_sum},
              {"terms", s.terms},
              {"tail", s.tail},
              {"scaled", {{"closed", s.scaled_closed}, {"partial", s.scaled_partial}, {"tail", s.scaled_tail}}},
              {"stirling_asymptotic", s.stirling_asymptotic},
              {"report", jio::poisson_report({"stirling", scaled_dev, 1e-10, s.terms, o.passed})}};
    o.summary = "closed form " + (s.closed_exact ? to_fraction_string(*s.closed_exact) : std::to_string(s.closed));
    return o;
  }
  if (args.tv != 0.0) {
    const double bound = tv_bound(args.tv, args.k);
    const int terms = static_cast<int>(std::ceil(args.tv * args.k + 12 * std::sqrt(args.tv * args.k) + 40));
    const double series = tv_bound_series(args.tv, args.k, terms);
    o.passed = std::abs(bound - series) <= 1e-10;
    o.body = {{"a", args.tv}, {"k", args.k}, {"tv_bound", bound}, {"series", series},
              {"report", jio::poisson_report({"tv_bound", std::abs(bound - series), 1e-10, terms, o.passed})}};
    o.summary = "tv bound " + std::to_string(bound);
    return o;
  }
  if (args.kstep) {
    const PoissonReport r = kstep_semigroup_check(parse_doubles(args.a), args.k, args.truncation);
    o.passed = r.passed;
    o.body = {{"a", parse_doubles(args.a)}, {"k", args.k}, {"report", jio::poisson_report(r)}};
    o.summary = "k-step deviation " + std::to_string(r.value);
    return o;
  }
  const StableAlgebra algebra = make_stable(args.diagram, args.level);
  const BlockUnitary u = args.u.empty() ? algebra.identity(args.n) : parse_block_unitary(args.u, args.n);
  // One unit rate per extreme trace unless given.
  const std::vector<double> a = args.a.empty() ? std::vector<double>(algebra.traces.size(), 1.0) : parse_doubles(args.a);
  if (args.series) {
    const std::vector<double> b = args.b.empty() ? std::vector<double>(a.size(), 0.0) : parse_doubles(args.b);
    const SeriesReport r = poisson_series_check(algebra, a, b, args.n, u, args.truncation);
    o.passed = r.check.passed;
    o.body = {{"closed", jio::complex(r.closed)}, {"series", jio::complex(r.series)},
              {"report", jio::poisson_report(r.check)}};
    o.summary = "series deviation " + std::to_string(r.check.value);
    return o;
  }
  json reports = json::object();
  for (const auto& r : binomial_reexpansion_check(algebra, a, args.n, args.m, u, args.truncation)) {
    reports[r.name] = jio::poisson_report(r);
    o.passed = o.passed && r.passed;
  }
  o.body = {{"n", args.n}, {"m", args.m}, {"reports", reports}};
  o.summary = std::string("re-expansion identities ") + (o.passed ? "hold" : "FAIL");
  return o;
}

struct ValidateArgs {
  std::string diagram;
  int depth = 6;
};

Outcome cmd_validate(const ValidateArgs& args) {
  const BratteliDiagram diagram = load_diagram(args.diagram, args.depth);
  const DiagramReport report = validate_diagram(diagram);
  Outcome o;
  o.passed = report.valid;
  o.body = {{"name", diagram.name},
            {"valid", report.valid},
            {"errors", report.errors},
            {"min_block", report.min_block},
            {"min_block_nondecreasing", report.min_block_nondecreasing},
            {"primitivity_lag", report.primitivity_lag},
            {"simple", diagram.simple},
            {"diagram", jio::diagram(diagram)}};
  if (report.valid) {
    try {
      const TraceWeights t = trace_weights(diagram);
      json levels = json::array();
      for (int n = 0; n <= diagram.depth(); ++n) {
        json level = json::array();
        for (int i = 0; i < diagram.blocks(n); ++i) level.push_back(t.value(n, i));
        levels.push_back(level);
      }
      o.body["trace"] = {{"method", t.method}, {"weights", levels},
                         {"compatibility_residual", t.compatibility_residual}};
    } catch (const NonConvergence& e) {
      o.body["trace"] = {{"error", e.what()}};
    }
  }
  o.summary = std::string("diagram ") + (report.valid ? "valid" : "INVALID");
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characters of unitary groups and AF algebras", "weylchar"};
  app.require_subcommand(1);
  std::string output;
  EnumerationBudget budget;
  int gt_dim_max = budget.max_d;
  app.add_option("--output", output, "Write JSON to this file instead of stdout");
  app.add_option("--gt-dim-max", gt_dim_max, "Largest d for Gelfand-Tsetlin enumeration")->check(CLI::PositiveNumber);

  CharArgs char_args;
  auto* c_char = app.add_subcommand("char", "Evaluate an irreducible character on a diagonal unitary");
  c_char->add_option("--sig", char_args.sig, "Signature, e.g. 1,0,0,-1")->required();
  c_char->add_option("--u", char_args.u, "Eigenvalue angles in turns")->required();
  c_char->add_option("--method", char_args.method, "auto, bialternant, weight-sum, determinantal");

  BranchArgs branch_args;
  auto* c_branch = app.add_subcommand("branch", "Tensor product or block restriction with inequality check");
  c_branch->add_option("--sig", branch_args.sig)->required();
  c_branch->add_option("--with", branch_args.with, "Second signature for a tensor product");
  c_branch->add_option("--blocks", branch_args.blocks, "d1,d2 for restriction to U(d1) x U(d2)");
  c_branch->add_option("--max-dim", branch_args.max_dim);

  MomentsArgs moments_args;
  auto* c_moments = app.add_subcommand("moments", "Weight distribution moments against closed forms");
  c_moments->add_option("--sig", moments_args.sig);
  c_moments->add_option("--r", moments_args.r);
  c_moments->add_option("--offset", moments_args.offset);
  c_moments->add_flag("--sweep", moments_args.sweep, "All signatures with entries in [-range, range]");
  c_moments->add_option("--dmin", moments_args.dmin);
  c_moments->add_option("--dmax", moments_args.dmax);
  c_moments->add_option("--range", moments_args.range);

  HcizArgs hciz_args;
  auto* c_hciz = app.add_subcommand("hciz", "Haar Monte Carlo against the exact HCIZ value");
  c_hciz->add_option("--d", hciz_args.d);
  c_hciz->add_option("--n", hciz_args.n);
  c_hciz->add_option("--samples", hciz_args.samples);
  c_hciz->add_option("--seed", hciz_args.seed);
  c_hciz->add_option("--mode", hciz_args.mode, "power or exp");
  c_hciz->add_option("--a", hciz_args.a, "Spectrum of A; random when omitted");
  c_hciz->add_option("--b", hciz_args.b, "Spectrum of B; random when omitted");
  c_hciz->add_option("--threads", hciz_args.threads);

  ErgodicArgs ergodic_args;
  auto* c_ergodic = app.add_subcommand("ergodic", "Characters along a Bratteli diagram and their limit");
  c_ergodic->add_option("--diagram", ergodic_args.diagram, "Preset name or JSON file");
  c_ergodic->add_option("--lam", ergodic_args.lam);
  c_ergodic->add_option("--mu", ergodic_args.mu);
  c_ergodic->add_option("--u", ergodic_args.u, "Angles per block, blocks separated by ';'");
  c_ergodic->add_option("--level", ergodic_args.level, "Level of the starting unitary");
  c_ergodic->add_option("--nmax", ergodic_args.nmax);
  c_ergodic->add_option("--block", ergodic_args.block);
  c_ergodic->add_option("--method", ergodic_args.method);

  SchurWeylArgs sw_args;
  auto* c_sw = app.add_subcommand("schur-weyl", "Schur-Weyl defect for d = 2^n");
  c_sw->add_option("--n", sw_args.n)->required();
  c_sw->add_option("--p", sw_args.p)->required();
  c_sw->add_option("--q", sw_args.q)->required();

  PoissonArgs poisson_args;
  auto* c_poisson = app.add_subcommand("poisson", "Poisson kernel, tail and series checks");
  c_poisson->add_option("--stirling", poisson_args.stirling, "t for the Stirling sum identity");
  c_poisson->add_option("--terms", poisson_args.terms);
  c_poisson->add_option("--tv", poisson_args.tv, "a_i for the total variation bound");
  c_poisson->add_flag("--kstep", poisson_args.kstep);
  c_poisson->add_flag("--series", poisson_args.series);
  c_poisson->add_flag("--reexpand", poisson_args.reexpand);
  c_poisson->add_option("--k", poisson_args.k);
  c_poisson->add_option("--a", poisson_args.a);
  c_poisson->add_option("--b", poisson_args.b);
  c_poisson->add_option("--truncation", poisson_args.truncation);
  c_poisson->add_option("--diagram", poisson_args.diagram);
  c_poisson->add_option("--level", poisson_args.level);
  c_poisson->add_option("--n", poisson_args.n);
  c_poisson->add_option("--m", poisson_args.m);
  c_poisson->add_option("--u", poisson_args.u);

  ValidateArgs validate_args;
  auto* c_validate = app.add_subcommand("validate-diagram", "Check a Bratteli diagram");
  c_validate->add_option("--diagram", validate_args.diagram)->required();
  c_validate->add_option("--depth", validate_args.depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsage;
  }

  if (const char* env = std::getenv("WEYLCHAR_SEED")) {
    try {
      std::size_t used = 0;
      hciz_args.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: WEYLCHAR_SEED is not an unsigned integer\n";
      return kUsage;
    }
  }
  budget.max_d = gt_dim_max;

  Outcome outcome;
  try {
    if (*c_char) outcome = cmd_char(char_args, budget);
    else if (*c_branch) outcome = cmd_branch(branch_args);
    else if (*c_moments) outcome = cmd_moments(moments_args, budget);
    else if (*c_hciz) outcome = cmd_hciz(hciz_args);
    else if (*c_ergodic) outcome = cmd_ergodic(ergodic_args, budget);
    else if (*c_sw) outcome = cmd_schur_weyl(sw_args);
    else if (*c_poisson) outcome = cmd_poisson(poisson_args);
    else outcome = cmd_validate(validate_args);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const NonConvergence& e) {
    err << "no convergence: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }

  const std::string text = outcome.body.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output);
    if (!file) {
      err << "error: cannot write " << output << "\n";
      return kUsage;
    }
    file << text;
  }
  err << outcome.summary << "\n";
  return outcome.passed ? kPass : kCheckFailed;
}

}  // namespace weylchar::cli
