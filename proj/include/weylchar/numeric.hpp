// Exact arithmetic vocabulary shared by every module.
#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace weylchar {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Always "num/den", even for integers ("3/1"), so consumers can parse one shape.
std::string to_fraction_string(const Rational& q);

/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);
double to_double(const BigInt& z);

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);
Rational pow(const Rational& base, unsigned exponent);

/// Element of Q(i), used for exact evaluation at quarter-turn roots of unity.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit widening
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}  // NOLINT

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const GaussianRational& z);

/// Field helpers so templated exact code works for Rational, GaussianRational and Complex.
inline bool is_exact_zero(const Rational& q) { return q == 0; }
inline bool is_exact_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_exact_zero(const Complex& z) { return z == Complex{}; }

/// Embeds an exact rational into the field T.
template <typename T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Complex>) {
    return Complex(to_double(q), 0.0);
  } else {
    return T(q);
  }
}

/// Integer power for any field element; negative exponents invert.
template <typename T>
T ipow(const T& base, long exponent) {
  if (exponent < 0) {
    T inverse = T(1) / base;
    return ipow<T>(inverse, -exponent);
  }
  T result(1);
  T b = base;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

/// Determinant over a field by Gaussian elimination with nonzero pivot search.
template <typename T>
T field_determinant(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_exact_zero(m[pivot][col])) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (is_exact_zero(m[row][col])) continue;
      T factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

}  // namespace weylchar
