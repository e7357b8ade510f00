#include "soliton/nlse.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "soliton/error.hpp"
#include "soliton/metrics.hpp"

namespace soliton {

PropagationPlan PropagationPlan::over(double z_total) {
  PropagationPlan p;
  p.z_total = z_total;
  p.n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(z_total) / kDefaultStep)));
  return p;
}

PropagationPlan PropagationPlan::over(double z_total, const SampledSignal& input) {
  const double peak = input.peak();
  const double r = peak > kStepPeak ? kStepPeak / peak : 1.0;
  const double dz = kDefaultStep * r * r * r;
  PropagationPlan p;
  p.z_total = z_total;
  p.n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(z_total) / dz)));
  return p;
}

void PropagationPlan::validate() const {
  if (!std::isfinite(z_total)) throw ValidationError("propagation distance must be finite");
  if (n_steps < 1) throw ValidationError("propagation needs at least one step");
}

PropagationResult propagate(const SampledSignal& signal, const PropagationPlan& plan, std::size_t snapshots) {
  plan.validate();
  signal.grid.validate();
  const std::size_t n = signal.size();
  const double h = plan.dz();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Q_z = j (2 pi f)^2 Q in the Fourier domain
  std::vector<cplx> half(n), full(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = static_cast<double>(m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n));
    const double w = kTwoPi * k / (static_cast<double>(n) * signal.grid.dt);
    half[m] = std::polar(inv_n, 0.5 * w * w * h);
    full[m] = std::polar(inv_n, w * w * h);
  }

  auto& fft = detail::thread_buffer(n);
  auto buf = fft.data();
  std::ranges::copy(signal.samples, buf.begin());

  // snapshot i is taken after step (i + 1) * n_steps / (snapshots + 1)
  std::vector<std::size_t> marks;
  for (std::size_t i = 1; i <= snapshots; ++i) marks.push_back(i * plan.n_steps / (snapshots + 1));

  PropagationResult out;
  auto check_alias = [&](const SampledSignal& s) {
    if (spectral_edge_fraction(fourier_transform(s)) > 1e-8) out.aliasing_warning = true;
  };
  auto nonlinear = [&] {
    for (auto& v : buf) v *= std::polar(1.0, -2.0 * std::norm(v) * h);
  };
  auto linear = [&](const std::vector<cplx>& mult) {
    fft.forward();
    for (std::size_t m = 0; m < n; ++m) buf[m] *= mult[m];
    fft.backward();
  };

  std::size_t next_mark = 0;
  for (std::size_t s = 0; s < plan.n_steps; ++s) {
    linear(half);
    nonlinear();
    linear(half);
    while (next_mark < marks.size() && marks[next_mark] == s + 1) {
      SampledSignal snap(signal.grid, std::vector<cplx>(buf.begin(), buf.end()));
      out.snapshot_z.push_back(plan.z_total * static_cast<double>(s + 1) / static_cast<double>(plan.n_steps));
      out.snapshots.push_back(std::move(snap));
      ++next_mark;
    }
  }
  out.signal = SampledSignal(signal.grid, std::vector<cplx>(buf.begin(), buf.end()));
  // the transforms below reuse the thread's FFT buffer, so they run last
  for (const auto& snap : out.snapshots) check_alias(snap);
  check_alias(out.signal);
  for (const auto& v : out.signal.samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("propagate: non-finite sample");
  return out;
}

}  // namespace soliton
