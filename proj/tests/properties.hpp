#pragma once

// Randomized spectrum generators and property checks shared by the unit
// tests and the acceptance runner. Each check returns an empty string on
// success and a description of the first violation otherwise.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "soliton/asymptotics.hpp"
#include "soliton/darboux.hpp"
#include "soliton/metrics.hpp"
#include "soliton/spectrum.hpp"

namespace props {

using namespace soliton;

struct Ranges {
  std::size_t n_max = 3;
  double sigma_lo = 0.3, sigma_hi = 1.5;
  double omega_max = 1.0;
  double dt_max = 3.0;
  bool imaginary = false;
};

// Random spectrum with eigenvalues at least 0.05 apart.
inline DiscreteSpectrum random_spectrum(std::mt19937_64& rng, const Ranges& r, std::size_t n = 0) {
  std::uniform_int_distribution<std::size_t> un(1, r.n_max);
  std::uniform_real_distribution<double> us(r.sigma_lo, r.sigma_hi), uw(-r.omega_max, r.omega_max),
      ud(-r.dt_max, r.dt_max), up(0.0, kTwoPi);
  if (n == 0) n = un(rng);
  for (;;) {
    std::vector<double> s(n), w(n), d(n), p(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = us(rng);
      w[k] = r.imaginary ? 0.0 : uw(rng);
      d[k] = ud(rng);
      p[k] = up(rng);
    }
    bool apart = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = k + 1; m < n; ++m)
        if (std::abs(cplx(w[k], s[k]) - cplx(w[m], s[m])) < 0.05) apart = false;
    if (apart) return make_spectrum(s, w, d, p);
  }
}

inline std::vector<double> phases_of(const DiscreteSpectrum& s) {
  std::vector<double> p;
  for (const auto& e : s.entries()) p.push_back(e.amplitude.phi);
  return p;
}

inline std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// max_i |x_i - f(i)|
template <class F>
double max_diff(const SampledSignal& x, F&& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e = std::max(e, std::abs(x.samples[i] - f(i)));
  return e;
}

inline TimeGrid shifted(TimeGrid g, double t0) {
  g.t_start += t0;
  return g;
}

// Each spectrum-domain transform against its signal-domain counterpart.
inline std::string check_transforms(const DiscreteSpectrum& s, std::mt19937_64& rng, double tol = 1e-8) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const TimeGrid g = auto_grid(s);
  const SampledSignal q = synthesize(s, g);

  const double phi0 = kTwoPi * u01(rng);
  const auto gp = synthesize(transform(s, TransformKind::global_phase, phi0), g);
  const cplx rot = std::polar(1.0, phi0);
  if (double e = max_diff(gp, [&](std::size_t i) { return q.samples[i] * rot; }); e > tol)
    return fmt("global phase: max error %.3g", e);

  const double t0 = 4.0 * (u01(rng) - 0.5);
  const auto ts = synthesize(transform(s, TransformKind::time_shift, t0), shifted(g, t0));
  if (double e = max_diff(ts, [&](std::size_t i) { return q.samples[i]; }); e > tol)
    return fmt("time shift: max error %.3g", e);

  const double s0 = 0.7 + 0.6 * u01(rng);
  TimeGrid gd = g;
  gd.t_start *= s0;
  gd.dt *= s0;
  const auto dl = synthesize(transform(s, TransformKind::dilate, s0), gd);
  if (double e = max_diff(dl, [&](std::size_t i) { return q.samples[i] / s0; }); e > tol)
    return fmt("dilation: max error %.3g", e);

  const double w0 = u01(rng) - 0.5;
  const auto fs = synthesize(transform(s, TransformKind::freq_shift, w0), g);
  if (double e = max_diff(fs, [&](std::size_t i) { return q.samples[i] * std::polar(1.0, 2.0 * w0 * g.t(i)); });
      e > tol)
    return fmt("frequency shift: max error %.3g", e);

  TimeGrid gr = g;
  gr.t_start = -g.t_end();
  const auto tr = synthesize(transform(s, TransformKind::time_reverse), gr);
  const std::size_t n = g.n_samples;
  if (double e = max_diff(tr, [&](std::size_t i) { return q.samples[n - 1 - i]; }); e > tol)
    return fmt("time reversal: max error %.3g", e);

  const auto cj = synthesize(transform(s, TransformKind::conjugate), g);
  if (double e = max_diff(cj, [&](std::size_t i) { return std::conj(q.samples[i]); }); e > tol)
    return fmt("conjugation: max error %.3g", e);
  return {};
}

// eta = 1 and omega = 0 give an even |q(t)|.
inline std::string check_symmetric(const DiscreteSpectrum& s, double tol = 1e-8) {
  std::vector<SpectrumEntry> e(s.entries().begin(), s.entries().end());
  for (auto& x : e) {
    x.eigenvalue.omega = 0.0;
    x.amplitude.eta = 1.0;
  }
  const DiscreteSpectrum sym(e);
  TimeGrid g = auto_grid(sym);
  g.t_start = -0.5 * static_cast<double>(g.n_samples - 1) * g.dt;
  const auto q = synthesize(sym, g);
  const std::size_t n = g.n_samples;
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(std::abs(q.samples[i]) - std::abs(q.samples[n - 1 - i])));
  return err > tol ? fmt("symmetry: max |q(t)| - |q(-t)| = %.3g", err) : std::string{};
}

inline std::string check_order_invariance(const DiscreteSpectrum& s, std::mt19937_64& rng, double tol = 1e-8) {
  std::vector<SpectrumEntry> e(s.entries().begin(), s.entries().end());
  std::shuffle(e.begin(), e.end(), rng);
  const TimeGrid g = auto_grid(s);
  const auto a = synthesize(s, g);
  const auto b = synthesize(DiscreteSpectrum(e), g);
  const double err = max_diff(a, [&](std::size_t i) { return b.samples[i]; });
  return err > tol ? fmt("order invariance: max error %.3g", err) : std::string{};
}

inline std::string check_energy(const DiscreteSpectrum& s, double tol = 1e-4) {
  const auto q = synthesize(s, auto_grid(s));
  const double want = 4.0 * s.sigma_sum();
  const double rel = std::abs(q.energy() - want) / want;
  return rel > tol ? fmt("energy: relative error %.3g (want %.6g)", rel, want) : std::string{};
}

// T and B are non-increasing in epsilon.
inline std::string check_epsilon_monotone(const DiscreteSpectrum& s) {
  const auto q = synthesize(s, auto_grid(s, 1e-6));
  double last_t = std::numeric_limits<double>::infinity();
  double last_b = last_t;
  for (double eps : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    MeasureConfig c;
    c.epsilon = eps;
    const auto r = measure(q, c);
    if (r.T > last_t || r.B > last_b) return fmt("epsilon monotonicity broken at epsilon = %.1g", eps);
    last_t = r.T;
    last_b = r.B;
  }
  return {};
}

// Energy and threshold definitions agree at alpha = sqrt(2 epsilon) for a
// first-order soliton.
inline std::string check_alpha_agreement(double sigma, double epsilon = 1e-4, double tol = 0.02) {
  const DiscreteSpectrum one({SpectrumEntry{{sigma, 0.0}, {1.0, 0.0}}});
  const auto q = synthesize(one, auto_grid(one, epsilon));
  MeasureConfig ce;
  ce.epsilon = epsilon;
  MeasureConfig ct = ce;
  ct.definition = Definition::threshold;
  const auto e = measure(q, ce);
  const auto t = measure(q, ct);
  const double dt = std::abs(e.T - t.T) / e.T;
  const double db = std::abs(e.B - t.B) / e.B;
  if (dt > tol || db > tol) return fmt("alpha agreement: relative T gap %.3g, B gap %.3g", dt, db);
  return {};
}

// a_{N,N} of the tail recursion against prod (s_N + s_k) / (s_N - s_k).
inline std::string check_ann_identity(const std::vector<double>& sigmas, double tol = 1e-10) {
  std::vector<cplx> lam;
  for (double s : sigmas) lam.emplace_back(0.0, s);
  const auto tc = tail_coefficients(lam);
  const std::size_t n = sigmas.size();
  auto sorted = sigmas;
  std::ranges::sort(sorted, std::greater<>{});
  const double sn = sorted.back();
  double prod = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) prod *= (sn + sorted[k]) / (sn - sorted[k]);
  const cplx got = tc(n - 1, n - 1);
  const double rel = std::abs(got - prod) / std::abs(prod);
  return rel > tol ? fmt("a_NN identity: relative error %.3g", rel) : std::string{};
}

}  // namespace props
