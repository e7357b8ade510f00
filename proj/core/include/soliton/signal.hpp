#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "soliton/spectrum.hpp"

namespace soliton {

/// Uniform time grid t_i = t_start + i dt, i < n_samples (a power of two).
struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.1;
  std::size_t n_samples = 1024;

  /// Throws ValidationError unless dt > 0 and n_samples is a power of two >= 2.
  void validate() const;
  [[nodiscard]] double t(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
  [[nodiscard]] double t_end() const { return t(n_samples - 1); }
  [[nodiscard]] double width() const { return static_cast<double>(n_samples) * dt; }

  /// Grid with n samples centred on `center` (n rounded up to a power of two).
  static TimeGrid centered(double center, double dt, std::size_t n);

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct SampledSignal {
  TimeGrid grid;
  std::vector<cplx> samples;

  SampledSignal() = default;
  SampledSignal(TimeGrid g, std::vector<cplx> s);

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  /// sum |q|^2 dt
  [[nodiscard]] double energy() const;
  [[nodiscard]] double peak() const;
  /// max(|q_0|, |q_{n-1}|) / max|q|, zero for an all-zero signal.
  [[nodiscard]] double edge_ratio() const;
};

/// Linear (Fourier) spectrum sampled at f_m = f_start + m df, ascending,
/// scaled as the continuous transform Q(f) = int q(t) e^{-j 2 pi f t} dt.
struct FrequencySamples {
  double f_start = 0.0;
  double df = 0.0;
  std::vector<cplx> values;

  [[nodiscard]] double f(std::size_t m) const { return f_start + static_cast<double>(m) * df; }
};

/// Unitary DFT of the sampled signal (Parseval: sum |Q|^2 df = sum |q|^2 dt).
FrequencySamples fourier_transform(const SampledSignal& signal);

/// Signal in physical units: tau = t T0, Q = sqrt(P0) q.
struct PhysicalSignal {
  double tau_start = 0.0;  // s
  double dtau = 0.0;       // s
  std::vector<cplx> samples;  // sqrt(W)
};

PhysicalSignal denormalize(const SampledSignal& signal, const PhysicalScaling& scaling);

}  // namespace soliton
