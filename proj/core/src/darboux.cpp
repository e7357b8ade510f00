#include "soliton/darboux.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "log_complex.hpp"
#include "soliton/asymptotics.hpp"
#include "soliton/error.hpp"
#include "soliton/parallel.hpp"

namespace soliton {

namespace {

using detail::LogComplex;

// |ln rho| beyond which plain complex arithmetic may overflow in the update
constexpr double kDirectLimit = 120.0;

// Alg. 1 on ordinary complex numbers; rho is overwritten.
bool darboux_direct(const cplx* lam, const double* sig, cplx* rho, std::size_t n, cplx& q) {
  cplx acc{};
  for (std::size_t p = 0; p < n; ++p) {
    const cplx rp = rho[p];
    const double w = 1.0 / (1.0 + std::norm(rp));
    acc += -4.0 * sig[p] * w * std::conj(rp);
    const cplx g(0.0, 2.0 * sig[p] * w);
    const cplx grp = g * rp;
    const cplx grpc = g * std::conj(rp);
    for (std::size_t k = p + 1; k < n; ++k) {
      const cplx num = rho[k] * (lam[k] - lam[p] + g) - grp;
      const cplx den = (lam[k] - std::conj(lam[p]) - g) - grpc * rho[k];
      rho[k] = num / den;
    }
  }
  q = acc;
  return std::isfinite(acc.real()) && std::isfinite(acc.imag());
}

// The same recursion with every rho held as (ln|rho|, arg rho).
cplx darboux_log(const cplx* lam, const double* sig, LogComplex* rho, std::size_t n) {
  cplx acc{};
  for (std::size_t p = 0; p < n; ++p) {
    const LogComplex rp = rho[p];
    const double sp = detail::softplus(2.0 * rp.log_mag);  // ln(1 + |rho|^2)
    // -4 sigma rho^* / (1 + |rho|^2)
    acc += LogComplex{std::log(4.0 * sig[p]) + rp.log_mag - sp, kPi - rp.phase}.value();
    const LogComplex g{std::log(2.0 * sig[p]) - sp, 0.5 * kPi};
    const cplx gv = g.value();
    const LogComplex grp = g * rp;
    const LogComplex grpc = g * rp.conj();
    for (std::size_t k = p + 1; k < n; ++k) {
      const LogComplex num = rho[k] * LogComplex::of(lam[k] - lam[p] + gv) + detail::negate(grp);
      const LogComplex den = LogComplex::of(lam[k] - std::conj(lam[p]) - gv) + detail::negate(grpc * rho[k]);
      rho[k] = num / den;
    }
  }
  return acc;
}

struct Window {
  double lo;
  double hi;
  double dt;
};

Window grid_window(const DiscreteSpectrum& spectrum, double epsilon) {
  const std::size_t n = spectrum.size();
  const double s_min = spectrum.sigma_min();
  const double s_max = spectrum.sigma_max();
  // amplitude floor well below kBoundaryTolerance times the smallest peak
  const double floor = 1e-13 * 2.0 * s_min;
  const double share = static_cast<double>(n) / floor;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const auto env = tail_envelope(spectrum);
  for (const auto& term : env.right)
    if (term.coefficient > 0.0) hi = std::max(hi, std::log(term.coefficient * share) / term.rate);
  for (const auto& term : env.left)
    if (term.coefficient > 0.0) lo = std::min(lo, -std::log(term.coefficient * share) / term.rate);
  // first-order windows of the components around their shifts
  for (const auto& e : spectrum.entries()) {
    const double s = e.eigenvalue.sigma;
    const double center = delta_t(e.eigenvalue, e.amplitude.eta);
    const double half = std::log(4.0 * s / floor) / (2.0 * s);
    lo = std::min(lo, center - half);
    hi = std::max(hi, center + half);
  }
  const double margin = 2.0 / s_min;
  lo -= margin;
  hi += margin;
  const double half_t = 0.75 * duration_estimate(spectrum, epsilon / 100.0);
  const double mid = 0.5 * (lo + hi);
  lo = std::min(lo, mid - half_t);
  hi = std::max(hi, mid + half_t);

  double w_max = 0.0;
  for (const auto& e : spectrum.entries()) w_max = std::max(w_max, std::abs(e.eigenvalue.omega));
  const double f_edge = w_max / kPi + 4.0 * s_max;
  const double b_est = bandwidth_estimate(spectrum, epsilon);
  const double dt = std::min(1.0 / (2.0 * f_edge), 1.0 / (8.0 * b_est));
  return {lo, hi, dt};
}

TimeGrid grid_from(const Window& w) {
  constexpr std::size_t kMinSamples = 256;
  const double width = w.hi - w.lo;
  const auto want = static_cast<std::size_t>(std::ceil(width / w.dt)) + 1;
  return TimeGrid::centered(0.5 * (w.lo + w.hi), w.dt, std::max(want, kMinSamples));
}

}  // namespace

SynthesisPlan::SynthesisPlan(const DiscreteSpectrum& spectrum, const TimeGrid& grid) : grid_(grid) {
  grid_.validate();
  const std::size_t n = spectrum.size();
  lambdas_ = spectrum.eigenvalues();
  for (std::size_t k = 0; k < n; ++k) sigmas_.push_back(spectrum[k].eigenvalue.sigma);

  // rho_k^(0)(t) = eta_k e^{j phi_k} e^{2 j lambda_k t}, i.e. Q_d(lambda_k) read
  // as eta_k Q_d,init(lambda_k) e^{j phi_k}; phi is applied at render time
  std::vector<double> log_eta(n);
  for (std::size_t k = 0; k < n; ++k) log_eta[k] = std::log(spectrum[k].amplitude.eta);

  const std::size_t ns = grid_.n_samples;
  base_.resize(ns * n);
  direct_.resize(ns * n);
  use_log_.assign(ns, 0);
  for (std::size_t i = 0; i < ns; ++i) {
    const double t = grid_.t(i);
    bool big = false;
    for (std::size_t k = 0; k < n; ++k) {
      Base b{log_eta[k] - 2.0 * sigmas_[k] * t, 2.0 * lambdas_[k].real() * t};
      base_[i * n + k] = b;
      if (std::abs(b.log_mag) > kDirectLimit)
        big = true;
      else
        direct_[i * n + k] = std::polar(std::exp(b.log_mag), b.phase);
    }
    use_log_[i] = big ? 1 : 0;
  }
}

void SynthesisPlan::render(std::span<const double> phases, std::size_t begin, std::size_t end,
                           std::span<cplx> out) const {
  const std::size_t n = lambdas_.size();
  if (phases.size() != n) throw ValidationError("render: phase count does not match spectrum size");
  if (end > grid_.n_samples || begin > end || out.size() != end - begin)
    throw ValidationError("render: sample range does not match output");

  std::vector<cplx> rot(n);
  for (std::size_t k = 0; k < n; ++k) rot[k] = std::polar(1.0, phases[k]);
  std::vector<cplx> rho(n);
  std::vector<LogComplex> lrho(n);
  for (std::size_t i = begin; i < end; ++i) {
    cplx q{};
    bool ok = false;
    if (!use_log_[i]) {
      for (std::size_t k = 0; k < n; ++k) rho[k] = direct_[i * n + k] * rot[k];
      ok = darboux_direct(lambdas_.data(), sigmas_.data(), rho.data(), n, q);
    }
    if (!ok) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto& b = base_[i * n + k];
        lrho[k] = {b.log_mag, b.phase + phases[k]};
      }
      q = darboux_log(lambdas_.data(), sigmas_.data(), lrho.data(), n);
      if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
        throw NumericError("darboux: non-finite sample at t = " + std::to_string(grid_.t(i)));
    }
    out[i - begin] = q;
  }
}

void SynthesisPlan::render(std::span<const double> phases, std::span<cplx> out) const {
  render(phases, 0, grid_.n_samples, out);
}

SampledSignal SynthesisPlan::render(std::span<const double> phases) const {
  std::vector<cplx> samples(grid_.n_samples);
  // chunked so that the work can be spread over the workers
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (grid_.n_samples + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t b = c * kChunk;
    const std::size_t e = std::min(b + kChunk, grid_.n_samples);
    render(phases, b, e, std::span<cplx>(samples).subspan(b, e - b));
  });
  return SampledSignal(grid_, std::move(samples));
}

SampledSignal synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid) {
  std::vector<double> phases;
  for (const auto& e : spectrum.entries()) phases.push_back(e.amplitude.phi);
  return SynthesisPlan(spectrum, grid).render(phases);
}

SynthesisResult synthesize_checked(const DiscreteSpectrum& spectrum, const TimeGrid& grid) {
  SynthesisResult r{synthesize(spectrum, grid), 0.0};
  r.edge_ratio = r.signal.edge_ratio();
  return r;
}

TimeGrid auto_grid(const DiscreteSpectrum& spectrum, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("auto_grid: epsilon must lie in (0, 1)");
  return grid_from(grid_window(spectrum, epsilon));
}

TimeGrid auto_grid(std::span<const DiscreteSpectrum> spectra, double epsilon) {
  if (spectra.empty()) throw ValidationError("auto_grid: no spectra");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("auto_grid: epsilon must lie in (0, 1)");
  Window all = grid_window(spectra.front(), epsilon);
  for (const auto& s : spectra.subspan(1)) {
    const Window w = grid_window(s, epsilon);
    all.lo = std::min(all.lo, w.lo);
    all.hi = std::max(all.hi, w.hi);
    all.dt = std::min(all.dt, w.dt);
  }
  return grid_from(all);
}

}  // namespace soliton
