#include "soliton/asymptotics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "soliton/error.hpp"
#include "soliton/parallel.hpp"

namespace soliton {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
}

void check_sigmas(std::span<const double> sigmas) {
  if (sigmas.empty()) throw ValidationError("need at least one sigma");
  for (double s : sigmas)
    if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("sigma must be finite and > 0");
}

std::vector<cplx> axis_eigenvalues(double sigma, std::span<const double> omegas) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
  if (omegas.empty()) throw ValidationError("need at least one omega");
  std::vector<cplx> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.emplace_back(w, sigma);
  return out;
}

}  // namespace

TailCoefficients tail_coefficients(std::span<const cplx> eigenvalues) {
  const std::size_t n = eigenvalues.size();
  if (n == 0) throw ValidationError("tail_coefficients: no eigenvalues");
  for (const auto& l : eigenvalues)
    if (!(l.imag() > 0.0)) throw ValidationError("tail_coefficients: eigenvalues must lie in the upper half-plane");

  TailCoefficients tc;
  tc.n = n;
  tc.order.resize(n);
  std::iota(tc.order.begin(), tc.order.end(), std::size_t{0});
  std::ranges::stable_sort(tc.order, [&](std::size_t i, std::size_t j) {
    return eigenvalues[i].imag() > eigenvalues[j].imag();
  });
  std::vector<cplx> lam(n);
  for (std::size_t i = 0; i < n; ++i) lam[i] = eigenvalues[tc.order[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(lam[i] - lam[j]) < kDistinctTolerance)
        throw DegenerateSpectrumError("tail_coefficients: eigenvalues coincide");

  // c[k * n + r]: weight of rho_r^(0) in the current rho_k
  std::vector<cplx> c(n * n);
  for (std::size_t k = 0; k < n; ++k) c[k * n + k] = 1.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double sp = lam[p].imag();
    for (std::size_t k = p + 1; k < n; ++k) {
      const cplx d = lam[k] - lam[p];
      const cplx keep = (lam[k] - std::conj(lam[p])) / d;
      const cplx mix = cplx(0.0, -2.0 * sp) / d;
      for (std::size_t r = 0; r <= p; ++r) c[k * n + r] = c[k * n + r] * keep + mix * c[p * n + r];
      c[k * n + k] *= keep;
    }
  }
  tc.a.assign(n * n, cplx{});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r <= k; ++r) tc.a[r * n + k] = c[k * n + r];
  tc.A.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    cplx s{};
    for (std::size_t k = r; k < n; ++k) s += tc(r, k);
    tc.A[r] = std::abs(s);
  }
  return tc;
}

double t_lim_imaginary(std::span<const double> sigmas, double epsilon) {
  check_sigmas(sigmas);
  check_epsilon(epsilon);
  const auto min_it = std::ranges::min_element(sigmas);
  const double sn = *min_it;
  const double total = std::accumulate(sigmas.begin(), sigmas.end(), 0.0);
  double t = std::log((2.0 / epsilon) * sn / total);
  for (auto it = sigmas.begin(); it != sigmas.end(); ++it) {
    if (it == min_it) continue;
    if (*it - sn <= kSeparationGap)
      throw DegenerateSpectrumError("t_lim_imaginary: sigma values are not separated from the smallest one");
    t += 2.0 * std::log((sn + *it) / (*it - sn));
  }
  return t / (2.0 * sn);
}

double t_approx_real(double sigma, std::span<const double> omegas, std::span<const double> etas,
                     double epsilon) {
  check_epsilon(epsilon);
  if (etas.size() != omegas.size()) throw ValidationError("t_approx_real: omegas and etas differ in length");
  for (double e : etas)
    if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("t_approx_real: eta must be finite and > 0");
  const auto lambdas = axis_eigenvalues(sigma, omegas);
  const auto tc = tail_coefficients(lambdas);
  double s_plus = 0.0;
  double s_minus = 0.0;
  for (std::size_t r = 0; r < tc.n; ++r) {
    const double eta = etas[tc.order[r]];
    s_plus += eta * tc.A[r];
    s_minus += tc.A[r] / eta;
  }
  const double n = static_cast<double>(tc.n);
  return std::log(2.0 / (n * epsilon) * s_plus * s_minus) / (2.0 * sigma);
}

double t_lim_real(double sigma, std::span<const double> omegas, double epsilon) {
  const std::vector<double> ones(omegas.size(), 1.0);
  return t_approx_real(sigma, omegas, ones, epsilon);
}

double b_lim_imaginary(std::span<const double> sigmas, double epsilon) {
  check_sigmas(sigmas);
  check_epsilon(epsilon);
  const double s1 = std::ranges::max(sigmas);
  const double total = std::accumulate(sigmas.begin(), sigmas.end(), 0.0);
  return 2.0 * s1 / (kPi * kPi) * std::log((2.0 / epsilon) * s1 / total);
}

double b_lim_real(double sigma, std::span<const double> omegas, double epsilon) {
  check_epsilon(epsilon);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("b_lim_real: sigma must be finite and > 0");
  if (omegas.empty()) throw ValidationError("b_lim_real: need at least one omega");
  double plus = 0.0;
  double minus = 0.0;
  for (double w : omegas) {
    plus += std::exp(kPi * w / (2.0 * sigma));
    minus += std::exp(-kPi * w / (2.0 * sigma));
  }
  const double n = static_cast<double>(omegas.size());
  return 2.0 * sigma / (kPi * kPi) * (std::log(2.0 / (epsilon * n)) + std::log(plus * minus));
}

double TailEnvelope::evaluate(double t) const {
  const auto& side = t >= 0.0 ? right : left;
  double v = 0.0;
  for (const auto& term : side) v += term.coefficient * std::exp(-term.rate * std::abs(t));
  return v;
}

TailEnvelope tail_envelope(const DiscreteSpectrum& spectrum) {
  const auto lambdas = spectrum.eigenvalues();
  const auto tc = tail_coefficients(lambdas);
  TailEnvelope env;
  for (std::size_t r = 0; r < tc.n; ++r) {
    cplx s{};
    for (std::size_t k = r; k < tc.n; ++k) s += lambdas[tc.order[k]].imag() * tc(r, k);
    const double eta = spectrum[tc.order[r]].amplitude.eta;
    const double rate = 2.0 * lambdas[tc.order[r]].imag();
    env.right.push_back({4.0 * eta * std::abs(s), rate});
    env.left.push_back({4.0 / eta * std::abs(s), rate});
  }
  return env;
}

TailEnvelope leading_tail(const DiscreteSpectrum& spectrum) {
  const double sn = spectrum.sigma_min();
  std::size_t at_min = 0;
  for (const auto& e : spectrum.entries())
    if (e.eigenvalue.sigma - sn <= kSeparationGap) ++at_min;
  if (at_min != 1) throw DegenerateSpectrumError("leading_tail: smallest sigma is not separated");
  auto env = tail_envelope(spectrum);
  env.right.erase(env.right.begin(), env.right.end() - 1);
  env.left.erase(env.left.begin(), env.left.end() - 1);
  return env;
}

double separated_spectrum_envelope(const DiscreteSpectrum& spectrum, double f) {
  double v = 0.0;
  for (const auto& e : spectrum.entries()) {
    const double s = e.eigenvalue.sigma;
    v += 1.0 / std::cosh(kPi * kPi / (2.0 * s) * (f + e.eigenvalue.omega / kPi));
  }
  return kPi * v;
}

double duration_estimate(const DiscreteSpectrum& spectrum, double epsilon) {
  check_epsilon(epsilon);
  const auto env = tail_envelope(spectrum);
  const double energy = 4.0 * spectrum.sigma_sum();
  const double n = static_cast<double>(spectrum.size());
  // energy beyond t of c e^{-a t} is c^2 e^{-2 a t} / (2 a); each term gets
  // an equal share of epsilon E / 2
  auto edge = [&](const std::vector<TailTerm>& side) {
    double t = -std::numeric_limits<double>::infinity();
    for (const auto& term : side) {
      if (term.coefficient <= 0.0) continue;
      const double c2 = term.coefficient * term.coefficient;
      t = std::max(t, std::log(c2 * n / (term.rate * epsilon * energy)) / (2.0 * term.rate));
    }
    return std::isfinite(t) ? t : 0.0;
  };
  return std::max(edge(env.right) + edge(env.left), 0.0);
}

double bandwidth_estimate(const DiscreteSpectrum& spectrum, double epsilon) {
  check_epsilon(epsilon);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& e : spectrum.entries()) {
    const double center = -e.eigenvalue.omega / kPi;
    const double half = e.eigenvalue.sigma / (kPi * kPi) * std::log(2.0 / epsilon);
    lo = std::min(lo, center - half);
    hi = std::max(hi, center + half);
  }
  return hi - lo;
}

// ---------------------------------------------------------------------------
// lower bound

namespace {

constexpr double kPinnedSigma = 0.5;
constexpr double kPenalty = 1e10;

double raw_objective(std::span<const double> x, Constellation c, double eps) {
  try {
    if (c == Constellation::imaginary) {
      std::vector<double> s(x.begin(), x.end());
      s.push_back(kPinnedSigma);
      for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i] > kPinnedSigma + kSeparationGap) || !std::isfinite(s[i])) return kPenalty;
      const double n = static_cast<double>(s.size());
      const double v = t_lim_imaginary(s, eps) * b_lim_imaginary(s, eps) / n;
      return std::isfinite(v) ? v : kPenalty;
    }
    for (double w : x)
      if (!std::isfinite(w) || std::abs(w) > 50.0) return kPenalty;
    const double n = static_cast<double>(x.size());
    const double v = t_lim_real(kPinnedSigma, x, eps) * b_lim_real(kPinnedSigma, x, eps) / n;
    return std::isfinite(v) ? v : kPenalty;
  } catch (const DegenerateSpectrumError&) {
    return kPenalty;
  }
}

// A common frequency shift leaves the real-axis objective unchanged, so the
// simplex works on the first n - 1 omegas and the last one keeps their mean
// at zero.
std::vector<double> centered(std::vector<double> free) {
  double sum = 0.0;
  for (double w : free) sum += w;
  free.push_back(-sum);
  return free;
}

struct GslContext {
  Constellation constellation;
  double epsilon;
};

double gsl_objective(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const GslContext*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  if (ctx->constellation == Constellation::real_axis) x = centered(x);
  return raw_objective(x, ctx->constellation, ctx->epsilon);
}

struct LocalResult {
  std::vector<double> x;
  double value;
  bool converged;
};

LocalResult nelder_mead(std::vector<double> start, double step, Constellation c, double eps) {
  const std::size_t dim = start.size();
  GslContext ctx{c, eps};
  gsl_multimin_function fn{&gsl_objective, dim, &ctx};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* ss = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, start[i]);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(m, &fn, x, ss);
  bool converged = false;
  for (int iter = 0; iter < 20000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-6) == GSL_SUCCESS) {
      converged = true;
      break;
    }
  }
  LocalResult out;
  out.x.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) out.x[i] = gsl_vector_get(m->x, i);
  out.value = m->fval;
  out.converged = converged;
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return out;
}

BoundEntry minimize_order(std::size_t n, Constellation c, double eps) {
  BoundEntry entry;
  entry.n = n;
  std::vector<std::vector<double>> seeds;
  if (c == Constellation::imaginary) {
    // one-parameter families: all free sigmas clustered at s, or spread
    // linearly from 0.5 + d up to 0.5 + (n - 1) d
    std::vector<double> best;
    double best_v = kPenalty;
    const std::size_t free = n - 1;
    for (double s = 0.55; s <= 3.0 + 1e-9; s += 0.05) {
      std::vector<double> x(free, s);
      if (double v = raw_objective(x, c, eps); v < best_v) best_v = v, best = x;
      for (std::size_t i = 0; i < free; ++i)
        x[i] = kPinnedSigma + (s - kPinnedSigma) * static_cast<double>(free - i) / static_cast<double>(free);
      if (double v = raw_objective(x, c, eps); v < best_v) best_v = v, best = x;
    }
    seeds.push_back(best);
    // jitter the cluster so the simplex can split it
    auto spread = best;
    for (std::size_t i = 0; i < spread.size(); ++i) spread[i] += 0.01 * static_cast<double>(spread.size() - i);
    seeds.push_back(spread);
  } else {
    // equally spaced, centred omegas
    std::vector<double> best;
    double best_v = kPenalty;
    const double mid = 0.5 * static_cast<double>(n - 1);
    const double d_max = 6.0 / static_cast<double>(n - 1);
    for (double d = 0.05; d <= d_max + 1e-9; d += 0.05) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = d * (static_cast<double>(i) - mid);
      if (double v = raw_objective(x, c, eps); v < best_v) best_v = v, best = x;
    }
    seeds.push_back(best);
    auto reversed = best;
    std::ranges::reverse(reversed);
    seeds.push_back(reversed);
  }

  double best_v = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (auto seed : seeds) {
    if (c == Constellation::real_axis) seed.pop_back();
    auto local = nelder_mead(seed, 0.05, c, eps);
    // one restart from the result to escape a collapsed simplex
    local = nelder_mead(local.x, 0.02, c, eps);
    if (local.value < best_v) {
      best_v = local.value;
      entry.params = c == Constellation::real_axis ? centered(local.x) : local.x;
      converged = local.converged;
    }
  }
  if (c == Constellation::imaginary) entry.params.push_back(kPinnedSigma);
  entry.normalized_bound = best_v;
  entry.flagged = !converged || best_v >= kPenalty;
  return entry;
}

}  // namespace

double bound_objective(std::span<const double> params, Constellation constellation, double epsilon) {
  check_epsilon(epsilon);
  const double v = raw_objective(params, constellation, epsilon);
  return v >= kPenalty ? std::numeric_limits<double>::infinity() : v;
}

BoundCurve lower_bound_curve(std::size_t n_max, Constellation constellation, double epsilon) {
  if (n_max < 1) throw ValidationError("lower_bound_curve: n_max must be >= 1");
  check_epsilon(epsilon);
  gsl_set_error_handler_off();

  BoundCurve curve;
  curve.constellation = constellation;
  curve.epsilon = epsilon;
  curve.entries.resize(n_max);
  // N = 1 has no free parameter in either family
  const double ref = t_lim_imaginary(std::vector<double>{kPinnedSigma}, epsilon) *
                     b_lim_imaginary(std::vector<double>{kPinnedSigma}, epsilon);
  curve.entries[0].n = 1;
  curve.entries[0].normalized_bound = 1.0;
  curve.entries[0].params = {constellation == Constellation::imaginary ? kPinnedSigma : 0.0};

  parallel_for(n_max - 1, [&](std::size_t i) {
    auto entry = minimize_order(i + 2, constellation, epsilon);
    entry.normalized_bound /= ref;
    curve.entries[i + 1] = std::move(entry);
  });
  return curve;
}

}  // namespace soliton
