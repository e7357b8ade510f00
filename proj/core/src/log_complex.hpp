#pragma once

// Complex numbers stored as (ln|z|, arg z). Used by the Darboux recursion
// where |rho| spans hundreds of orders of magnitude across a grid.

#include <cmath>
#include <complex>
#include <limits>

namespace soliton::detail {

struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();  // -inf encodes zero
  double phase = 0.0;

  static LogComplex of(std::complex<double> z) {
    if (z == std::complex<double>{}) return {};
    return {std::log(std::abs(z)), std::arg(z)};
  }
  [[nodiscard]] bool is_zero() const { return std::isinf(log_mag) && log_mag < 0.0; }
  [[nodiscard]] std::complex<double> value() const {
    if (is_zero()) return {};
    return std::polar(std::exp(log_mag), phase);
  }
  [[nodiscard]] LogComplex conj() const { return {log_mag, -phase}; }
};

inline LogComplex operator*(LogComplex a, LogComplex b) { return {a.log_mag + b.log_mag, a.phase + b.phase}; }
inline LogComplex operator/(LogComplex a, LogComplex b) { return {a.log_mag - b.log_mag, a.phase - b.phase}; }

inline LogComplex operator+(LogComplex a, LogComplex b) {
  if (a.log_mag < b.log_mag) std::swap(a, b);
  if (b.is_zero()) return a;
  const std::complex<double> s = 1.0 + std::polar(std::exp(b.log_mag - a.log_mag), b.phase - a.phase);
  if (s == std::complex<double>{}) return {};
  return {a.log_mag + std::log(std::abs(s)), a.phase + std::arg(s)};
}

inline LogComplex negate(LogComplex a) { return {a.log_mag, a.phase + M_PI}; }

/// ln(1 + e^x) without overflow.
inline double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace soliton::detail
