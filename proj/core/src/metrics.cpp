#include "soliton/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "soliton/darboux.hpp"
#include "soliton/error.hpp"
#include "soliton/parallel.hpp"

namespace soliton {

namespace {

// Smallest interval holding `target` of the piecewise-constant density
// w_i / h on bins [x0 + i h, x0 + (i + 1) h). One endpoint of the optimum
// lies on a bin edge, so both families of such intervals are scanned.
Interval smallest_window(std::span<const double> w, double x0, double h, double target) {
  const std::size_t n = w.size();
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) c[i + 1] = c[i] + w[i];
  auto edge = [&](std::size_t i) { return x0 + static_cast<double>(i) * h; };

  Interval best{0.0, std::numeric_limits<double>::infinity()};
  double best_width = std::numeric_limits<double>::infinity();
  auto consider = [&](double lo, double hi) {
    if (hi - lo < best_width) {
      best_width = hi - lo;
      best = {lo, hi};
    }
  };

  // left end on edge i, right end inside bin j
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double need = c[i] + target;
    if (need > c[n]) break;
    j = std::max(j, i);
    while (j < n && c[j + 1] < need) ++j;
    if (j == n) break;
    const double frac = w[j] > 0.0 ? (need - c[j]) / w[j] : 0.0;
    consider(edge(i), edge(j) + frac * h);
  }
  // right end on edge k, left end inside bin i
  std::size_t i = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double need = c[k] - target;
    if (need < 0.0) continue;
    while (i + 1 < k && c[i + 1] <= need) ++i;
    const double frac = w[i] > 0.0 ? (need - c[i]) / w[i] : 0.0;
    consider(edge(i) + frac * h, edge(k));
  }
  return best;
}

// Crossing of level `thr` between samples (x_a, y_a) and (x_b, y_b),
// interpolated linearly in log magnitude.
double crossing(double xa, double ya, double xb, double yb, double thr) {
  if (ya > 0.0 && yb > 0.0 && ya != yb) {
    const double s = (std::log(thr) - std::log(ya)) / (std::log(yb) - std::log(ya));
    return xa + std::clamp(s, 0.0, 1.0) * (xb - xa);
  }
  if (yb != ya) return xa + std::clamp((thr - ya) / (yb - ya), 0.0, 1.0) * (xb - xa);
  return 0.5 * (xa + xb);
}

// Smallest interval outside which the magnitudes stay below alpha * peak.
Interval threshold_window(std::span<const double> mag, double x0, double h, double alpha, const char* what) {
  const std::size_t n = mag.size();
  const auto it = std::ranges::max_element(mag);
  const std::size_t m = static_cast<std::size_t>(it - mag.begin());
  double peak = *it;
  if (m > 0 && m + 1 < n) {
    // parabolic refinement of the sampled maximum
    const double y0 = mag[m - 1], y1 = mag[m], y2 = mag[m + 1];
    const double den = y0 - 2.0 * y1 + y2;
    if (den < 0.0) peak = y1 - 0.125 * (y0 - y2) * (y0 - y2) / den;
  }
  if (!(peak > 0.0)) throw MeasurementError(std::string(what) + ": zero signal");
  const double thr = alpha * peak;
  std::size_t first = 0;
  while (first < n && mag[first] <= thr) ++first;
  std::size_t last = n - 1;
  while (last > 0 && mag[last] <= thr) --last;
  if (first == 0 || last == n - 1)
    throw MeasurementError(std::string(what) + ": magnitude above threshold at the grid edge");
  auto x = [&](std::size_t i) { return x0 + static_cast<double>(i) * h; };
  return {crossing(x(first - 1), mag[first - 1], x(first), mag[first], thr),
          crossing(x(last), mag[last], x(last + 1), mag[last + 1], thr)};
}

Interval duration_of(std::span<const cplx> q, const TimeGrid& grid, const MeasureConfig& cfg) {
  const std::size_t n = q.size();
  if (cfg.definition == Definition::threshold) {
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(q[i]);
    return threshold_window(mag, grid.t_start, grid.dt, cfg.threshold(), "duration");
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::norm(q[i]) * grid.dt);
  if (!(total > 0.0)) throw MeasurementError("duration: zero signal");
  const double leak = (std::norm(q.front()) + std::norm(q.back())) * grid.width() / total;
  if (leak > 1e-2 * cfg.epsilon)
    throw MeasurementError("duration: the grid edges hold too much energy for this epsilon");
  return smallest_window(w, grid.t_start - 0.5 * grid.dt, grid.dt, (1.0 - cfg.epsilon) * total);
}

Interval bandwidth_of(const FrequencySamples& spec, const MeasureConfig& cfg) {
  if (spectral_edge_fraction(spec) > 1e-8)
    throw MeasurementError("bandwidth: spectrum reaches the Nyquist edge (aliasing)");
  const std::size_t n = spec.values.size();
  if (cfg.definition == Definition::threshold) {
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(spec.values[i]);
    return threshold_window(mag, spec.f_start, spec.df, cfg.threshold(), "bandwidth");
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::norm(spec.values[i]) * spec.df);
  if (!(total > 0.0)) throw MeasurementError("bandwidth: zero signal");
  return smallest_window(w, spec.f_start - 0.5 * spec.df, spec.df, (1.0 - cfg.epsilon) * total);
}

bool on_imaginary_axis(const DiscreteSpectrum& s) {
  return std::ranges::all_of(s.entries(), [](const SpectrumEntry& e) { return e.eigenvalue.omega == 0.0; });
}

}  // namespace

void MeasureConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
  if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (phase_points < 2) throw ValidationError("phase grid needs at least 2 points");
  if (z_samples < 2) throw ValidationError("need at least 2 z samples");
}

double matched_alpha(double epsilon) { return std::sqrt(2.0 * epsilon); }

double MeasureConfig::threshold() const { return alpha ? *alpha : matched_alpha(epsilon); }

double spectral_edge_fraction(const FrequencySamples& spectrum) {
  const std::size_t n = spectrum.values.size();
  const std::size_t k = std::max<std::size_t>(1, n / 100);
  double edge = 0.0;
  double total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double p = std::norm(spectrum.values[m]);
    total += p;
    if (m < k || m + k >= n) edge += p;
  }
  return total > 0.0 ? edge / total : 0.0;
}

Interval duration(const SampledSignal& signal, const MeasureConfig& config) {
  config.validate();
  return duration_of(signal.samples, signal.grid, config);
}

Interval bandwidth(const SampledSignal& signal, const MeasureConfig& config) {
  config.validate();
  return bandwidth_of(fourier_transform(signal), config);
}

TBReport measure(const SampledSignal& signal, const MeasureConfig& config) {
  TBReport r;
  r.T_interval = duration(signal, config);
  r.B_interval = bandwidth(signal, config);
  r.T = r.T_interval.width();
  r.B = r.B_interval.width();
  return r;
}

PhaseMaxima t_max_b_max(const DiscreteSpectrum& spectrum, const MeasureConfig& config, double at_z,
                        bool want_bandwidth) {
  config.validate();
  const std::size_t n = spectrum.size();
  const std::size_t m = config.phase_points;
  std::size_t combos = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (combos > (std::size_t{1} << 40) / m) throw ValidationError("phase grid too large");
    combos *= m;
  }

  // the evolution adds a fixed offset to every transmit phase
  const DiscreteSpectrum at_tx = spectrum.with_phases(std::vector<double>(n, 0.0));
  const DiscreteSpectrum at_rx = evolve(at_tx, at_z);
  std::vector<double> offset(n);
  for (std::size_t k = 0; k < n; ++k) offset[k] = at_rx[k].amplitude.phi;

  const TimeGrid grid = auto_grid(at_rx, config.epsilon);
  const SynthesisPlan plan(at_rx, grid);
  const double step = kTwoPi / static_cast<double>(m);

  auto tx_phases = [&](std::size_t c) {
    // first entry is the most significant digit: lexicographic order
    std::vector<double> ph(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;) {
      ph[k] = static_cast<double>(c % m) * step;
      c /= m;
    }
    return ph;
  };

  // On the imaginary axis with zero offsets, phases -phi give conj(q):
  // same T and B, so only one of each mirrored pair is rendered.
  const bool mirrored = on_imaginary_axis(spectrum) &&
                        std::ranges::all_of(offset, [](double o) { return o == 0.0; });
  auto mirror = [&](std::size_t c) {
    std::size_t out = 0, scale = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      out += ((m - c % m) % m) * scale;
      c /= m;
      scale *= m;
    }
    return out;
  };
  std::vector<std::size_t> todo;
  for (std::size_t c = 0; c < combos; ++c)
    if (!mirrored || mirror(c) >= c) todo.push_back(c);

  std::vector<double> t_val(combos), b_val(combos, 0.0);
  parallel_for(todo.size(), [&](std::size_t i) {
    const std::size_t c = todo[i];
    auto ph = tx_phases(c);
    for (std::size_t k = 0; k < n; ++k) ph[k] += offset[k];
    std::vector<cplx> buf(grid.n_samples);
    plan.render(ph, 0, grid.n_samples, buf);
    t_val[c] = duration_of(buf, grid, config).width();
    if (want_bandwidth) {
      const SampledSignal sig(grid, std::move(buf));
      b_val[c] = bandwidth_of(fourier_transform(sig), config).width();
    }
  });
  if (mirrored) {
    for (std::size_t c = 0; c < combos; ++c) {
      const std::size_t r = mirror(c);
      if (r < c) {
        t_val[c] = t_val[r];
        b_val[c] = b_val[r];
      }
    }
  }

  PhaseMaxima out;
  const auto t_it = std::ranges::max_element(t_val, std::less<>{});
  const auto b_it = std::ranges::max_element(b_val, std::less<>{});
  // max_element returns the first maximum: the lexicographic tie rule
  out.T_max = *t_it;
  out.T_phases = tx_phases(static_cast<std::size_t>(t_it - t_val.begin()));
  if (want_bandwidth) {
    out.B_max = *b_it;
    out.B_phases = tx_phases(static_cast<std::size_t>(b_it - b_val.begin()));
  } else {
    out.B_max = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

LinkMaxima t_hat_b_hat(const DiscreteSpectrum& spectrum, const MeasureConfig& config, double L) {
  config.validate();
  if (!(L >= 0.0) || !std::isfinite(L)) throw ValidationError("link length must be finite and >= 0");
  LinkMaxima out;
  const bool fixed = on_imaginary_axis(spectrum) || L == 0.0;
  const std::size_t zs = fixed ? 1 : config.z_samples;
  for (std::size_t i = 0; i < zs; ++i) {
    const double z = zs == 1 ? 0.0 : L * static_cast<double>(i) / static_cast<double>(zs - 1);
    const bool ends = i == 0 || i + 1 == zs;
    const auto pm = t_max_b_max(spectrum, config, z, ends);
    out.z.push_back(z);
    out.T_max.push_back(pm.T_max);
    out.B_max.push_back(pm.B_max);
    out.T_hat = std::max(out.T_hat, pm.T_max);
    if (ends) out.B_hat = std::max(out.B_hat, pm.B_max);
  }
  return out;
}

double tbp_per_eigenvalue(double t_hat, double b_hat, std::size_t n) {
  if (n == 0) throw ValidationError("tbp_per_eigenvalue: N must be >= 1");
  return t_hat * b_hat / static_cast<double>(n);
}

double reference_tbp(const MeasureConfig& config) {
  config.validate();
  const DiscreteSpectrum one({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  const auto sig = synthesize(one, auto_grid(one, config.epsilon));
  const auto r = measure(sig, config);
  return r.T * r.B;
}

}  // namespace soliton
