#include "weylchar/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weylchar {

double log_power_over_factorial(double t, long k) {
  if (k == 0) return 0.0;
  return static_cast<double>(k) * std::log(t) - std::lgamma(static_cast<double>(k) + 1.0);
}

double poisson_mass(double t, long k) {
  if (k < 0) return 0.0;
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(log_power_over_factorial(t, k) - t);
}

double poisson_tail(double t, long k) {
  if (k < 0) return 1.0;
  double sum = 0.0;
  for (long j = k + 1;; ++j) {
    const double term = poisson_mass(t, j);
    sum += term;
    if (static_cast<double>(j) > t && (term < 1e-300 || term < sum * 1e-17)) break;
  }
  return sum;
}

double kernel(const std::vector<double>& a, const std::vector<long>& x, const std::vector<long>& y) {
  if (a.size() != x.size() || a.size() != y.size()) throw PreconditionError("kernel arguments differ in length");
  double log_mass = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0) throw PreconditionError("kernel parameters must be positive");
    const long step = y[i] - x[i];
    if (step < 0) return 0.0;
    log_mass += log_power_over_factorial(a[i], step) - a[i];
  }
  return std::exp(log_mass);
}

// ---------------------------------------------------------------- k-step semigroup

namespace {

/// Row-major grid [0, t]^m.
struct Grid {
  int dims = 0;
  int side = 0;
  std::size_t size = 0;

  std::vector<long> point(std::size_t index) const {
    std::vector<long> p(static_cast<std::size_t>(dims));
    for (int i = dims - 1; i >= 0; --i) {
      p[i] = static_cast<long>(index % side);
      index /= side;
    }
    return p;
  }
  std::size_t index(const std::vector<long>& p) const {
    std::size_t idx = 0;
    for (long c : p) idx = idx * side + static_cast<std::size_t>(c);
    return idx;
  }
};

}  // namespace

PoissonReport kstep_semigroup_check(const std::vector<double>& a, int k, int truncation, double tolerance) {
  if (k < 1) throw PreconditionError("k must be positive");
  if (a.empty()) throw PreconditionError("need at least one rate");
  Grid grid{static_cast<int>(a.size()), truncation + 1, 1};
  for (std::size_t i = 0; i < a.size(); ++i) grid.size *= static_cast<std::size_t>(grid.side);
  if (grid.size > 200'000) throw BudgetExceeded("semigroup grid exceeds 200000 points");

  const std::vector<long> origin(a.size(), 0);
  std::vector<double> step(grid.size);
  std::vector<std::vector<long>> points(grid.size);
  for (std::size_t idx = 0; idx < grid.size; ++idx) {
    points[idx] = grid.point(idx);
    step[idx] = kernel(a, origin, points[idx]);
  }

  std::vector<double> dist = step;
  for (int s = 1; s < k; ++s) {
    std::vector<double> next(grid.size, 0.0);
    for (std::size_t z = 0; z < grid.size; ++z) {
      double acc = 0.0;
      for (std::size_t w = 0; w < grid.size; ++w) {
        std::vector<long> diff(points[z]);
        bool inside = true;
        for (std::size_t i = 0; i < diff.size(); ++i) {
          diff[i] -= points[w][i];
          if (diff[i] < 0) inside = false;
        }
        if (inside) acc += dist[w] * step[grid.index(diff)];
      }
      next[z] = acc;
    }
    dist = std::move(next);
  }

  std::vector<double> ka(a);
  for (auto& x : ka) x *= k;
  PoissonReport report;
  report.name = "kstep_semigroup";
  report.truncation = truncation;
  report.bound = tolerance;
  for (std::size_t z = 0; z < grid.size; ++z) {
    report.value = std::max(report.value, std::abs(dist[z] - kernel(ka, origin, points[z])));
  }
  report.passed = report.value <= report.bound;
  return report;
}

// ---------------------------------------------------------------- tail estimates

double tv_bound(double a_i, int k) {
  if (k < 1) throw PreconditionError("tv_bound needs k >= 1");
  if (!(a_i > 0)) throw PreconditionError("tv_bound needs a_i > 0");
  const double t = k * a_i;
  const long floor_t = static_cast<long>(std::floor(t));
  return 2.0 * std::exp(log_power_over_factorial(t, floor_t) - t);
}

double tv_bound_series(double a_i, int k, int terms) {
  const double t = k * a_i;
  double sum = poisson_mass(t, 0);
  for (long l = 1; l <= terms; ++l) sum += std::abs(poisson_mass(t, l) - poisson_mass(t, l - 1));
  return sum;
}

StirlingResult stirling_identity(const Rational& t, int terms) {
  if (t <= 0) throw PreconditionError("stirling identity needs t > 0");
  StirlingResult out;
  out.t = t;
  const double td = to_double(t);
  BigInt floor_big;
  mpz_fdiv_q(floor_big.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  const long floor_t = floor_big.get_si();
  if (floor_t <= 2000) {
    out.closed_exact = Rational(-1) + 2 * pow(t, static_cast<unsigned>(floor_t)) /
                                          Rational(factorial(static_cast<unsigned>(floor_t)));
    out.closed_exact->canonicalize();
    out.closed = to_double(*out.closed_exact);
  } else {
    out.closed = -1.0 + 2.0 * std::exp(log_power_over_factorial(td, floor_t));
  }
  out.terms = terms > 0 ? terms : static_cast<int>(std::ceil(td + 12.0 * std::sqrt(td) + 40.0));
  for (long n = 1; n <= out.terms; ++n) {
    out.scaled_partial += std::abs(poisson_mass(td, n - 1) - poisson_mass(td, n));
  }
  out.scaled_tail = static_cast<double>(out.terms) > td ? poisson_mass(td, out.terms) : 1.0;
  out.scaled_closed = 2.0 * std::exp(log_power_over_factorial(td, floor_t) - td) - std::exp(-td);
  const double scale = std::exp(td);
  out.partial_sum = out.scaled_partial * scale;
  out.tail = out.scaled_tail * scale;
  out.stirling_asymptotic = 1.0 / std::sqrt(2.0 * std::numbers::pi * td);
  return out;
}

Complex chi_tau_tauprime(const std::vector<Complex>& tau_vals, const std::vector<Complex>& tauprime_vals) {
  Complex exponent{};
  for (const auto& v : tau_vals) {
    if (v.real() > 1e-12) throw PreconditionError("tau(u - 1) must have nonpositive real part");
    exponent += v;
  }
  for (const auto& v : tauprime_vals) {
    if (v.real() > 1e-12) throw PreconditionError("tau'(u* - 1) must have nonpositive real part");
    exponent += v;
  }
  return std::exp(exponent);
}

// ---------------------------------------------------------------- stable algebras

BlockUnitary StableAlgebra::identity(int n) const {
  if (n < 1) throw PreconditionError("stable level must be >= 1");
  BlockUnitary u;
  u.level = n;
  for (auto d : base.levels.at(level)) u.blocks.push_back(DiagonalUnitary::identity(static_cast<int>(d) * n));
  return u;
}

std::vector<Complex> StableAlgebra::normalized_traces(const BlockUnitary& u, int n) const {
  const auto& dims = base.levels.at(level);
  if (u.blocks.size() != dims.size()) throw PreconditionError("unitary has the wrong number of blocks");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (u.blocks[i].d() != dims[i] * n) throw PreconditionError("block " + std::to_string(i) + " has the wrong size");
  }
  std::vector<Complex> out;
  for (const auto& weights : traces) {
    Complex s{};
    for (std::size_t i = 0; i < dims.size(); ++i) {
      s += weights.value(level, static_cast<int>(i)) * u.blocks[i].trace() / static_cast<double>(n);
    }
    out.push_back(s);
  }
  return out;
}

BlockUnitary StableAlgebra::pad(const BlockUnitary& u, int n, int m) const {
  if (m < n) throw PreconditionError("padding needs m >= n");
  const auto& dims = base.levels.at(level);
  BlockUnitary out;
  out.level = m;
  for (std::size_t i = 0; i < u.blocks.size(); ++i) {
    std::vector<Rational> turns(u.blocks[i].turns());
    turns.resize(turns.size() + static_cast<std::size_t>(dims[i] * (m - n)), Rational(0));
    out.blocks.emplace_back(std::move(turns));
  }
  return out;
}

StableAlgebra make_stable(const std::string& preset, int level) {
  StableAlgebra algebra;
  algebra.base = make_preset(preset, level);
  algebra.level = level;
  algebra.traces.push_back(trace_weights(algebra.base));
  return algebra;
}

namespace {

void require_rates(const std::vector<double>& rates, std::size_t count, const char* what) {
  if (rates.size() != count) {
    throw PreconditionError(std::string(what) + " needs one rate per extreme trace (" + std::to_string(count) + ")");
  }
  for (double r : rates) {
    if (r < 0) throw PreconditionError(std::string(what) + " rates must be nonnegative");
  }
}

/// sum_{k<=T} mass(t, k) z^k; the box-truncated multi-index series factorizes into these.
Complex truncated_exponential(double t, Complex z, int truncation) {
  Complex sum{};
  Complex power(1.0, 0.0);
  for (long k = 0; k <= truncation; ++k) {
    sum += poisson_mass(t, k) * power;
    power *= z;
  }
  return sum;
}

Complex closed_character(const std::vector<double>& a, const std::vector<double>& b, int n,
                         const std::vector<Complex>& tau) {
  std::vector<Complex> pos;
  std::vector<Complex> neg;
  for (std::size_t i = 0; i < a.size(); ++i) pos.push_back(static_cast<double>(n) * a[i] * (tau[i] - 1.0));
  for (std::size_t j = 0; j < b.size(); ++j) neg.push_back(static_cast<double>(n) * b[j] * (std::conj(tau[j]) - 1.0));
  return chi_tau_tauprime(pos, neg);
}

}  // namespace

SeriesReport poisson_series_check(const StableAlgebra& algebra, const std::vector<double>& a,
                                  const std::vector<double>& b, int n, const BlockUnitary& u, int truncation) {
  require_rates(a, algebra.traces.size(), "a");
  require_rates(b, algebra.traces.size(), "b");
  const auto tau = algebra.normalized_traces(u, n);
  SeriesReport out;
  out.closed = closed_character(a, b, n, tau);
  out.series = Complex(1.0, 0.0);
  double tail = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    out.series *= truncated_exponential(n * a[i], tau[i], truncation);
    tail += poisson_tail(n * a[i], truncation);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0) continue;
    out.series *= truncated_exponential(n * b[j], std::conj(tau[j]), truncation);
    tail += poisson_tail(n * b[j], truncation);
  }
  out.check.name = "poisson_series";
  out.check.truncation = truncation;
  out.check.value = std::abs(out.series - out.closed);
  out.check.bound = tail + 1e-12;
  out.check.passed = out.check.value <= out.check.bound;
  return out;
}

std::vector<PoissonReport> binomial_reexpansion_check(const StableAlgebra& algebra, const std::vector<double>& a,
                                                      int n, int m, const BlockUnitary& u, int truncation) {
  if (!(n >= 1 && n < m)) throw PreconditionError("need 1 <= n < m");
  require_rates(a, algebra.traces.size(), "a");
  std::vector<PoissonReport> reports;
  auto add = [&](const std::string& name, double value, double bound) {
    reports.push_back({name, value, bound, truncation, value <= bound});
  };

  const auto tau_n = algebra.normalized_traces(u, n);
  const BlockUnitary padded = algebra.pad(u, n, m);
  const auto tau_m = algebra.normalized_traces(padded, m);
  double trace_dev = 0.0;
  for (std::size_t i = 0; i < tau_n.size(); ++i) {
    const Complex expected = (static_cast<double>(n) * tau_n[i] + static_cast<double>(m - n)) / static_cast<double>(m);
    trace_dev = std::max(trace_dev, std::abs(tau_m[i] - expected));
  }
  add("padded_trace", trace_dev, 1e-12);

  double kernel_dev = 0.0;
  double constant_dev = 0.0;
  double constant_bound = 1e-12;
  double coordinate_dev = 0.0;
  double coordinate_bound = 1e-10;
  for (double rate : a) {
    if (rate == 0) continue;
    const double step = (m - n) * rate;
    for (long z = 0; z <= truncation; ++z) {
      for (long x = 0; x <= z; ++x) {
        const double log_rhs = log_power_over_factorial(step, z - x) - step;
        if (log_rhs < -700) continue;
        const double log_lhs = (log_power_over_factorial(m * rate, z) - m * rate) -
                               (log_power_over_factorial(n * rate, x) - n * rate) +
                               std::lgamma(z + 1.0) - std::lgamma(x + 1.0) - std::lgamma(z - x + 1.0) +
                               x * std::log(static_cast<double>(n)) +
                               (z - x) * std::log(static_cast<double>(m - n)) - z * std::log(static_cast<double>(m));
        kernel_dev = std::max(kernel_dev, std::abs(std::expm1(log_lhs - log_rhs)));
      }
    }
    // P^{(m-n)} applied at x = truncation / 2, summing z up to the truncation.
    const long x = truncation / 2;
    const long reach = truncation - x;
    double mass = 0.0;
    double first = 0.0;
    for (long k = 0; k <= reach; ++k) {
      const double p = poisson_mass(step, k);
      mass += p;
      first += static_cast<double>(x + k) * p;
    }
    constant_dev = std::max(constant_dev, std::abs(mass - 1.0));
    constant_bound = std::max(constant_bound, poisson_tail(step, reach) + 1e-12);
    coordinate_dev = std::max(coordinate_dev, std::abs(first - (static_cast<double>(x) + step)));
    coordinate_bound = std::max(coordinate_bound, static_cast<double>(x) * poisson_tail(step, reach) +
                                                      step * poisson_tail(step, reach - 1) + 1e-10);
  }
  add("kernel_identity", kernel_dev, 1e-10);
  add("constant_harmonic", constant_dev, constant_bound);
  add("coordinate_harmonic", coordinate_dev, coordinate_bound);

  const std::vector<double> none(a.size(), 0.0);
  const Complex at_n = closed_character(a, none, n, tau_n);
  const Complex at_m = closed_character(a, none, m, tau_m);
  add("level_consistency", std::abs(at_n - at_m), 1e-10);
  return reports;
}

}  // namespace weylchar
