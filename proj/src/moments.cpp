#include "weylchar/moments.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "weylchar/symfunc.hpp"

namespace weylchar {

// ---------------------------------------------------------------- spectra

Rational HermitianSpectrum::trace() const {
  Rational s = 0;
  for (const auto& x : eigenvalues) s += x;
  return s;
}

Rational HermitianSpectrum::trace_power(int k) const {
  Rational s = 0;
  for (const auto& x : eigenvalues) s += pow(x, static_cast<unsigned>(k));
  return s;
}

HermitianSpectrum HermitianSpectrum::from_signature(const Signature& sig) {
  HermitianSpectrum out;
  for (int x : sig.entries()) out.eigenvalues.emplace_back(x);
  return out;
}

HermitianSpectrum operator+(const HermitianSpectrum& a, const HermitianSpectrum& b) {
  if (a.d() != b.d()) throw PreconditionError("spectra of different sizes");
  HermitianSpectrum out = a;
  for (int i = 0; i < a.d(); ++i) out.eigenvalues[i] += b.eigenvalues[i];
  return out;
}

void TraceZeroSigned::validate() const {
  if (r < 2 || r % 2 != 0) throw PreconditionError("r must be an even integer >= 2, got " + std::to_string(r));
  if (offset < 0 || offset + r > d) {
    throw PreconditionError("F block [" + std::to_string(offset) + ", " + std::to_string(offset + r) +
                            ") does not fit in d = " + std::to_string(d));
  }
}

std::vector<int> TraceZeroSigned::coefficients() const {
  validate();
  std::vector<int> c(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < r / 2; ++i) c[offset + i] = 1;
  for (int i = r / 2; i < r; ++i) c[offset + i] = -1;
  return c;
}

HermitianSpectrum TraceZeroSigned::spectrum() const {
  HermitianSpectrum out;
  for (int c : coefficients()) out.eigenvalues.emplace_back(c);
  return out;
}

HermitianSpectrum rho(int d) {
  HermitianSpectrum out;
  for (int i = 0; i < d; ++i) out.eigenvalues.emplace_back(d - 1 - 2 * i, 2);
  for (auto& x : out.eigenvalues) x.canonicalize();
  return out;
}

HermitianSpectrum center(const HermitianSpectrum& b) {
  const Rational mean = b.trace() / b.d();
  HermitianSpectrum out = b;
  for (auto& x : out.eigenvalues) x -= mean;
  return out;
}

// ---------------------------------------------------------------- distributions

Rational WeightDistribution::total() const {
  Rational s = 0;
  for (const auto& [k, p] : probs) s += p;
  return s;
}

bool WeightDistribution::is_symmetric() const {
  for (const auto& [k, p] : probs) {
    auto it = probs.find(-k);
    if (it == probs.end() || it->second != p) return false;
  }
  return true;
}

WeightDistribution weight_distribution(const Signature& sig, const TraceZeroSigned& f,
                                       const EnumerationBudget& budget) {
  if (f.d != sig.d()) throw PreconditionError("F and the signature must have the same d");
  const auto coeffs = f.coefficients();
  const auto counts = linear_weight_counts(sig, coeffs, budget);
  const BigInt dim = weyl_dim(sig);
  WeightDistribution out;
  for (const auto& [k, count] : counts) {
    Rational p(count, dim);
    p.canonicalize();
    out.probs.emplace(k, std::move(p));
  }
  return out;
}

Rational moment(const WeightDistribution& dist, int p) {
  Rational s = 0;
  for (const auto& [k, prob] : dist.probs) s += pow(Rational(k), static_cast<unsigned>(p)) * prob;
  return s;
}

std::optional<Rational> moment_ratio(const WeightDistribution& dist) {
  const Rational m2 = moment(dist, 2);
  if (m2 == 0) return std::nullopt;
  return Rational(moment(dist, 4) / (m2 * m2));
}

WeightDistribution convolve(const WeightDistribution& a, const WeightDistribution& b) {
  WeightDistribution out;
  for (const auto& [ka, pa] : a.probs) {
    for (const auto& [kb, pb] : b.probs) out.probs[ka + kb] += pa * pb;
  }
  return out;
}

AdditivityReport product_moment_identity(const std::vector<WeightDistribution>& dists) {
  AdditivityReport report;
  report.convolution.probs[0] = 1;
  report.symmetric_inputs = true;
  std::vector<Rational> m2s;
  for (const auto& dist : dists) {
    report.convolution = convolve(report.convolution, dist);
    report.symmetric_inputs = report.symmetric_inputs && dist.is_symmetric();
    m2s.push_back(moment(dist, 2));
    report.m2_sum += m2s.back();
    report.m4_identity += moment(dist, 4);
  }
  for (std::size_t i = 0; i < m2s.size(); ++i) {
    for (std::size_t j = i + 1; j < m2s.size(); ++j) report.m4_identity += 6 * m2s[i] * m2s[j];
  }
  report.m2_direct = moment(report.convolution, 2);
  report.m4_direct = moment(report.convolution, 4);
  report.holds = report.m2_direct == report.m2_sum && report.m4_direct == report.m4_identity;
  return report;
}

// ---------------------------------------------------------------- HCIZ sums and closed forms

Rational hciz_partition_sum(const HermitianSpectrum& a, const HermitianSpectrum& b, int n) {
  if (a.d() != b.d()) throw PreconditionError("spectra of different sizes");
  const int d = a.d();
  Rational total = 0;
  for (const Partition& lambda : partitions_of(n, d)) {
    const auto expansion = schur_to_power_sums(lambda);
    const Rational sa = expansion.evaluate(a.eigenvalues);
    if (sa == 0) continue;
    const Rational sb = expansion.evaluate(b.eigenvalues);
    total += Rational(sym_group_dim(lambda)) * sa * sb / Rational(schur_dim(lambda, d));
  }
  return total;
}

Rational J_series(const HermitianSpectrum& b, const TraceZeroSigned& f, int n) {
  if (f.d != b.d()) throw PreconditionError("F and B must have the same d");
  return hciz_partition_sum(f.spectrum(), b, n);
}

Rational J_closed(const HermitianSpectrum& b, const TraceZeroSigned& f, int n) {
  f.validate();
  if (f.d != b.d()) throw PreconditionError("F and B must have the same d");
  if (b.trace() != 0) throw PreconditionError("closed forms need Tr B = 0; center B first");
  const Rational d = f.d;
  const Rational r = f.r;
  const Rational d2 = d * d;
  if (n == 2) {
    if (f.d < 2) throw PreconditionError("J(B,r,2) needs d >= 2");
    return Rational(r * b.trace_power(2) / (d2 - 1));
  }
  if (n == 4) {
    if (f.d < 4) throw PreconditionError("J(B,r,4) closed form needs d >= 4");
    const Rational t2 = b.trace_power(2);
    const Rational t4 = b.trace_power(4);
    const Rational common = (d2 - 1) * (d2 - 4) * (d2 - 9);
    const Rational first = 3 * r * ((d2 * d2 - 6 * d2 + 18) * r - 2 * d * (2 * d2 - 3)) / (d2 * common);
    const Rational second = 6 * r * ((2 * d2 - 3) * r - d * (d2 + 1)) / (d * common);
    return Rational(first * t2 * t2 - second * t4);
  }
  throw PreconditionError("closed forms exist for n = 2 and n = 4 only");
}

namespace {

HermitianSpectrum centered_signature(const Signature& sig) { return center(HermitianSpectrum::from_signature(sig)); }

}  // namespace

Rational moment2_closed(const Signature& sig, const TraceZeroSigned& f) {
  f.validate();
  if (f.d != sig.d()) throw PreconditionError("F and the signature must have the same d");
  const int d = sig.d();
  const auto l = centered_signature(sig);
  const auto staircase = rho(d);
  Rational t = 0;
  for (int i = 0; i < d; ++i) t += 2 * l.eigenvalues[i] * staircase.eigenvalues[i] + l.eigenvalues[i] * l.eigenvalues[i];
  return Rational(f.r * t / (d * d - 1));
}

Rational moment4_closed(const Signature& sig, const TraceZeroSigned& f) {
  if (sig.d() < 4) throw PreconditionError("m(Lambda,r,4) closed form needs d >= 4");
  const auto staircase = rho(sig.d());
  const auto shifted = staircase + centered_signature(sig);
  const Rational m2 = moment2_closed(sig, f);
  return J_closed(shifted, f, 4) - 6 * m2 * J_closed(staircase, f, 2) - J_closed(staircase, f, 4);
}

EstimateReport estimate_check(const Signature& sig, const TraceZeroSigned& f) {
  f.validate();
  if (f.d < 4) throw PreconditionError("estimate needs d >= 4");
  if (3 * f.r < 2 * f.d) throw PreconditionError("estimate needs r >= 2d/3");
  const Rational d2 = f.d * f.d;
  EstimateReport report;
  report.m2 = moment2_closed(sig, f);
  report.m4 = moment4_closed(sig, f);
  report.c1 = 3 * (d2 - 1) * (d2 * d2 - 6 * d2 + 18) / (d2 * (d2 - 4) * (d2 - 9));
  report.c2 = 2 * (d2 * d2 - 2 * d2 - 3) / ((d2 - 4) * (d2 - 9));
  report.bound = report.c1 * report.m2 * report.m2 + report.c2 * report.m2;
  report.holds = report.m4 <= report.bound;
  return report;
}

// ---------------------------------------------------------------- Monte Carlo

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXcd sample_haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double modulus = std::abs(diag);
    if (modulus > 0) q.col(j) *= diag / modulus;
  }
  return q;
}

namespace {

constexpr long kChunkSize = 4096;

struct ChunkSums {
  Complex sum;
  double sum_sq_re = 0.0;
  double sum_sq_im = 0.0;
  long count = 0;
};

}  // namespace

MonteCarloResult haar_average(int d, const std::function<Complex(const Eigen::MatrixXcd&)>& statistic,
                              const MonteCarloOptions& options) {
  if (options.samples < 1) throw PreconditionError("need at least one sample");
  const long chunks = (options.samples + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkSums> sums(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](long c) {
    std::mt19937_64 rng(chunk_seed(options.seed, static_cast<std::uint64_t>(c)));
    const long begin = c * kChunkSize;
    const long end = std::min(options.samples, begin + kChunkSize);
    ChunkSums& s = sums[c];
    for (long i = begin; i < end; ++i) {
      const Complex v = statistic(sample_haar_unitary(d, rng));
      s.sum += v;
      s.sum_sq_re += v.real() * v.real();
      s.sum_sq_im += v.imag() * v.imag();
      ++s.count;
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, chunks));
  if (threads <= 1) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (long c = t; c < chunks; c += threads) run_chunk(c);
      });
    }
    for (auto& w : workers) w.join();
  }

  ChunkSums total;
  for (const auto& s : sums) {
    total.sum += s.sum;
    total.sum_sq_re += s.sum_sq_re;
    total.sum_sq_im += s.sum_sq_im;
    total.count += s.count;
  }
  const double n = static_cast<double>(total.count);
  MonteCarloResult out;
  out.estimate = total.sum / n;
  out.samples = total.count;
  out.seed = options.seed;
  if (total.count > 1) {
    const double var_re = std::max(0.0, (total.sum_sq_re - n * out.estimate.real() * out.estimate.real()) / (n - 1));
    const double var_im = std::max(0.0, (total.sum_sq_im - n * out.estimate.imag() * out.estimate.imag()) / (n - 1));
    out.stderr_re = std::sqrt(var_re / n);
    out.stderr_im = std::sqrt(var_im / n);
  }
  return out;
}

MonteCarloResult hciz_monte_carlo(const HermitianSpectrum& a, const HermitianSpectrum& b, int n, HcizMode mode,
                                  const MonteCarloOptions& options) {
  if (a.d() != b.d()) throw PreconditionError("spectra of different sizes");
  const int d = a.d();
  std::vector<double> av;
  std::vector<double> bv;
  for (const auto& x : a.eigenvalues) av.push_back(to_double(x));
  for (const auto& x : b.eigenvalues) bv.push_back(to_double(x));
  auto statistic = [&](const Eigen::MatrixXcd& u) -> Complex {
    // Tr(U A U* B) = sum_{i,j} |U_ij|^2 a_j b_i
    double t = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) t += std::norm(u(i, j)) * av[j] * bv[i];
    }
    if (mode == HcizMode::Exponential) return std::polar(1.0, t);
    return std::pow(t, n);
  };
  return haar_average(d, statistic, options);
}

Complex hciz_determinant(const HermitianSpectrum& a, const HermitianSpectrum& b) {
  if (a.d() != b.d()) throw PreconditionError("spectra of different sizes");
  const int d = a.d();
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = std::polar(1.0, to_double(a.eigenvalues[i] * b.eigenvalues[j]));
  }
  Rational delta = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      delta *= (a.eigenvalues[i] - a.eigenvalues[j]) * (b.eigenvalues[i] - b.eigenvalues[j]);
    }
  }
  if (delta == 0) throw PreconditionError("determinant formula needs distinct eigenvalues in A and B");
  BigInt superfactorial = 1;
  for (int i = 1; i < d; ++i) superfactorial *= factorial(static_cast<unsigned>(i));
  // 1 / i^{d(d-1)/2}
  const Complex phase = std::pow(Complex(0.0, -1.0), d * (d - 1) / 2);
  return phase * to_double(Rational(superfactorial) / delta) * m.partialPivLu().determinant();
}

}  // namespace weylchar
