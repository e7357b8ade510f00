#include "soliton/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fft.hpp"
#include "soliton/error.hpp"

namespace soliton {

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("time grid: dt must be finite and > 0");
  if (!std::isfinite(t_start)) throw ValidationError("time grid: t_start must be finite");
  if (n_samples < 2 || !std::has_single_bit(n_samples))
    throw ValidationError("time grid: n_samples must be a power of two >= 2");
}

TimeGrid TimeGrid::centered(double center, double dt, std::size_t n) {
  TimeGrid g;
  g.n_samples = std::bit_ceil(std::max<std::size_t>(n, 2));
  g.dt = dt;
  g.t_start = center - 0.5 * static_cast<double>(g.n_samples) * dt;
  g.validate();
  return g;
}

SampledSignal::SampledSignal(TimeGrid g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  grid.validate();
  if (samples.size() != grid.n_samples) throw ValidationError("signal length does not match its grid");
}

double SampledSignal::energy() const {
  double e = 0.0;
  for (const auto& v : samples) e += std::norm(v);
  return e * grid.dt;
}

double SampledSignal::peak() const {
  double p = 0.0;
  for (const auto& v : samples) p = std::max(p, std::abs(v));
  return p;
}

double SampledSignal::edge_ratio() const {
  const double p = peak();
  if (p == 0.0 || samples.empty()) return 0.0;
  return std::max(std::abs(samples.front()), std::abs(samples.back())) / p;
}

FrequencySamples fourier_transform(const SampledSignal& signal) {
  const std::size_t n = signal.size();
  auto& fft = detail::thread_buffer(n);
  auto buf = fft.data();
  std::ranges::copy(signal.samples, buf.begin());
  fft.forward();

  FrequencySamples out;
  out.df = 1.0 / (static_cast<double>(n) * signal.grid.dt);
  out.f_start = -0.5 * static_cast<double>(n) * out.df;
  out.values.resize(n);
  const std::size_t half = n / 2;
  const double t0 = signal.grid.t_start;
  for (std::size_t m = 0; m < n; ++m) {
    // ascending order: bins n/2..n-1 are the negative frequencies
    const std::size_t src = (m + half) % n;
    const double f = out.f(m);
    out.values[m] = buf[src] * signal.grid.dt * std::polar(1.0, -kTwoPi * f * t0);
  }
  return out;
}

PhysicalSignal denormalize(const SampledSignal& signal, const PhysicalScaling& scaling) {
  scaling.validate();
  const double amp = std::sqrt(scaling.power());
  PhysicalSignal out;
  out.tau_start = signal.grid.t_start * scaling.T0;
  out.dtau = signal.grid.dt * scaling.T0;
  out.samples.reserve(signal.size());
  for (const auto& v : signal.samples) out.samples.push_back(amp * v);
  return out;
}

}  // namespace soliton
