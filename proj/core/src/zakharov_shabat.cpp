#include "soliton/zakharov_shabat.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "soliton/error.hpp"
#include "soliton/parallel.hpp"

namespace soliton {

namespace {

constexpr cplx kJ{0.0, 1.0};

// Jost solution in the standard frame v' = [[-j l, q], [-q^*, j l]] v,
// carried as exp(log_scale) * (v1, v2) together with its lambda-derivative.
struct State {
  cplx v1, v2, d1, d2;
  double log_scale = 0.0;

  void renormalize() {
    const double m = std::max(std::abs(v1), std::abs(v2));
    if (m == 0.0 || !std::isfinite(m)) return;
    v1 /= m;
    v2 /= m;
    d1 /= m;
    d2 /= m;
    log_scale += std::log(m);
  }
};

// Exact transfer over one cell of constant potential q and signed length h.
void step(State& s, cplx q, cplx lam, double h) {
  const cplx k2 = -lam * lam - std::norm(q);
  const cplx k = std::sqrt(k2);
  const cplx kh = k * h;
  const cplx x = kh * kh;
  const double akh = std::abs(kh);
  cplx c, sh, r;
  if (akh < 1e-3) {
    c = 1.0 + x / 2.0 + x * x / 24.0;
    sh = h * (1.0 + x / 6.0 + x * x / 120.0);
  } else {
    c = std::cosh(kh);
    sh = std::sinh(kh) / k;
  }
  // (h c - sh) / k^2 loses digits for small kh
  if (akh < 0.05)
    r = h * h * h * (1.0 / 3.0 + x / 30.0 + x * x / 840.0);
  else
    r = (h * c - sh) / k2;

  const cplx m11 = c - kJ * lam * sh;
  const cplx m12 = sh * q;
  const cplx m21 = -sh * std::conj(q);
  const cplx m22 = c + kJ * lam * sh;
  const cplx dc = -h * lam * sh;
  const cplx ds = -lam * r;
  const cplx dm11 = dc - kJ * lam * ds - kJ * sh;
  const cplx dm12 = ds * q;
  const cplx dm21 = -ds * std::conj(q);
  const cplx dm22 = dc + kJ * lam * ds + kJ * sh;

  const cplx v1 = m11 * s.v1 + m12 * s.v2;
  const cplx v2 = m21 * s.v1 + m22 * s.v2;
  const cplx d1 = m11 * s.d1 + m12 * s.d2 + dm11 * s.v1 + dm12 * s.v2;
  const cplx d2 = m21 * s.d1 + m22 * s.d2 + dm21 * s.v1 + dm22 * s.v2;
  s.v1 = v1;
  s.v2 = v2;
  s.d1 = d1;
  s.d2 = d2;
}

// Left solution ~ (e^{-j l t}, 0) at the left edge, marched over cells [0, end).
State march_left(const SampledSignal& sig, cplx lam, std::size_t end) {
  const double dt = sig.grid.dt;
  const double tl = sig.grid.t_start - 0.5 * dt;
  State s;
  // e^{-j lam t} = e^{sigma t} e^{-j omega t}
  const cplx ph = std::polar(1.0, -lam.real() * tl);
  s.v1 = ph;
  s.d1 = -kJ * tl * ph;
  s.log_scale = lam.imag() * tl;
  for (std::size_t i = 0; i < end; ++i) {
    step(s, sig.samples[i], lam, dt);
    if ((i & 15) == 15) s.renormalize();
  }
  s.renormalize();
  return s;
}

// Right solution ~ (0, e^{j l t}) at the right edge, marched back over [begin, n).
State march_right(const SampledSignal& sig, cplx lam, std::size_t begin) {
  const double dt = sig.grid.dt;
  const std::size_t n = sig.size();
  const double tr = sig.grid.t(n - 1) + 0.5 * dt;
  State s;
  const cplx ph = std::polar(1.0, lam.real() * tr);
  s.v2 = ph;
  s.d2 = kJ * tr * ph;
  s.log_scale = -lam.imag() * tr;
  for (std::size_t i = n; i-- > begin;) {
    step(s, sig.samples[i], lam, -dt);
    if ((i & 15) == 0) s.renormalize();
  }
  s.renormalize();
  return s;
}

std::size_t matching_index(const SampledSignal& sig) {
  std::size_t m = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const double v = std::norm(sig.samples[i]);
    if (v > best) best = v, m = i;
  }
  return best > 0.0 ? m : sig.size() / 2;
}

// Newton on a(lambda) from z; nullopt unless |a| drops below kRootTolerance.
std::optional<cplx> newton(const SampledSignal& signal, cplx z, double max_step) {
  for (int it = 0; it < kNewtonIterations; ++it) {
    auto jp = scatter(signal, z);
    if (std::abs(jp.a) < kRootTolerance) {
      // a few more steps pin the root far below the merge distance even
      // where |a'| is small
      for (int p = 0; p < 3 && jp.a_prime != cplx{}; ++p) {
        const cplx next = z - jp.a / jp.a_prime;
        if (std::abs(next - z) < 1e-13) break;
        const auto jn = scatter(signal, next);
        if (!(std::abs(jn.a) < std::abs(jp.a))) break;
        z = next;
        jp = jn;
      }
      return z;
    }
    if (jp.a_prime == cplx{}) return std::nullopt;
    cplx dz = -jp.a / jp.a_prime;
    if (std::abs(dz) > max_step) dz *= max_step / std::abs(dz);
    z += dz;
    if (!(z.imag() > 0.0) || !std::isfinite(z.real())) return std::nullopt;
  }
  return std::nullopt;
}

// Every other sample on a grid of twice the spacing.
SampledSignal decimate(const SampledSignal& signal) {
  TimeGrid g = signal.grid;
  g.dt *= 2.0;
  g.n_samples /= 2;
  std::vector<cplx> s(g.n_samples);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = signal.samples[2 * i];
  return SampledSignal(g, std::move(s));
}

}  // namespace

JostPair scatter(const SampledSignal& signal, cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ValidationError("scatter: lambda is not finite");
  if (lambda.imag() < 0.0) throw ValidationError("scatter: lambda must not lie in the lower half-plane");
  if (signal.size() == 0) throw ValidationError("scatter: empty signal");

  JostPair out;
  out.edge_warning = signal.edge_ratio() > 1e-8;
  const std::size_t n = signal.size();

  if (lambda.imag() == 0.0) {
    // both solutions stay bounded on the real line: plain forward definition
    const State s = march_left(signal, lambda, n);
    const double tr = signal.grid.t(n - 1) + 0.5 * signal.grid.dt;
    const double scale = std::exp(s.log_scale);
    const cplx e = std::polar(1.0, lambda.real() * tr);
    out.a = scale * s.v1 * e;
    out.b = scale * s.v2 * std::conj(e);
    out.a_prime = scale * (s.d1 + kJ * tr * s.v1) * e;
    return out;
  }

  const std::size_t m = matching_index(signal);
  const State l = march_left(signal, lambda, m);
  const State r = march_right(signal, lambda, m);
  const double scale = std::exp(l.log_scale + r.log_scale);
  out.a = scale * (l.v1 * r.v2 - l.v2 * r.v1);
  out.a_prime = scale * (l.d1 * r.v2 + l.v1 * r.d2 - l.d2 * r.v1 - l.v2 * r.d1);
  const double rr = std::norm(r.v1) + std::norm(r.v2);
  out.b = std::exp(l.log_scale - r.log_scale) * (std::conj(r.v1) * l.v1 + std::conj(r.v2) * l.v2) / rr;
  return out;
}

SearchRegion default_region(const SampledSignal& signal) {
  const double e = signal.energy();
  const double s_max = e / 4.0;
  const auto spec = fourier_transform(signal);
  double peak = 0.0;
  for (const auto& v : spec.values) peak = std::max(peak, std::norm(v));
  double f_lo = 0.0;
  double f_hi = 0.0;
  bool any = false;
  for (std::size_t m = 0; m < spec.values.size(); ++m) {
    if (std::norm(spec.values[m]) < 1e-6 * peak) continue;
    const double f = spec.f(m);
    if (!any) f_lo = f_hi = f, any = true;
    f_lo = std::min(f_lo, f);
    f_hi = std::max(f_hi, f);
  }
  SearchRegion r;
  // a component near omega has its spectrum centred at f = -omega / pi
  r.re_min = -kPi * f_hi - s_max;
  r.re_max = -kPi * f_lo + s_max;
  r.im_min = 0.0;
  r.im_max = 1.1 * s_max + 0.05;
  return r;
}

namespace {

// Roots of a(lambda) for the sampled potential itself.
std::vector<cplx> locate_roots(const SampledSignal& signal, std::optional<SearchRegion> region,
                               std::size_t seeds_per_axis) {
  if (seeds_per_axis == 0) throw ValidationError("find_eigenvalues: need at least one seed per axis");
  const SearchRegion reg = region ? *region : default_region(signal);
  if (!(reg.im_max > reg.im_min) || reg.im_min < 0.0 || !(reg.re_max >= reg.re_min))
    throw ValidationError("find_eigenvalues: region must be a rectangle in the upper half-plane");
  if (signal.energy() == 0.0) return {};

  const std::size_t ns = seeds_per_axis;
  const double dre = (reg.re_max - reg.re_min) / static_cast<double>(ns);
  const double dim = (reg.im_max - reg.im_min) / static_cast<double>(ns);
  const double max_step = std::max(reg.re_max - reg.re_min, reg.im_max - reg.im_min);
  auto inside = [&](cplx z) {
    const double tol = 1e-9;
    return z.imag() > reg.im_min && z.imag() <= reg.im_max + tol && z.real() >= reg.re_min - tol &&
           z.real() <= reg.re_max + tol;
  };

  std::vector<std::optional<cplx>> found(ns * ns);
  parallel_for(ns * ns, [&](std::size_t idx) {
    const std::size_t i = idx / ns;
    const std::size_t j = idx % ns;
    const cplx seed(reg.re_min + (static_cast<double>(i) + 0.5) * dre,
                    reg.im_min + (static_cast<double>(j) + 0.5) * dim);
    if (auto z = newton(signal, seed, max_step); z && inside(*z)) found[idx] = *z;
  });

  std::vector<cplx> roots;
  for (const auto& f : found)
    if (f) roots.push_back(*f);
  std::ranges::sort(roots, [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  std::vector<cplx> merged;
  for (const auto& z : roots) {
    const bool dup = std::ranges::any_of(merged, [&](cplx w) { return std::abs(w - z) < kMergeDistance; });
    if (!dup) merged.push_back(z);
  }
  return merged;
}

// The cell-wise constant potential makes roots and amplitudes accurate to
// O(dt^2) with an even error expansion. The same roots on the
// half-resolution signal allow one Richardson step that removes the
// leading term; nullopt when the grid is too short or a root is lost.
std::optional<std::vector<cplx>> coarse_roots(const SampledSignal& signal, const SampledSignal& coarse,
                                              std::span<const cplx> roots) {
  if (signal.size() < 64) return std::nullopt;
  std::vector<cplx> r2(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const auto z = newton(coarse, roots[k], 0.1);
    if (!z || std::abs(*z - roots[k]) > 0.1) return std::nullopt;
    r2[k] = *z;
  }
  return r2;
}

cplx extrapolate(cplx fine, cplx coarse) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace

std::vector<cplx> find_eigenvalues(const SampledSignal& signal, std::optional<SearchRegion> region,
                                   std::size_t seeds_per_axis) {
  auto roots = locate_roots(signal, region, seeds_per_axis);
  if (roots.empty() || signal.size() < 64) return roots;
  const auto coarse = decimate(signal);
  if (const auto r2 = coarse_roots(signal, coarse, roots)) {
    for (std::size_t k = 0; k < roots.size(); ++k) roots[k] = extrapolate(roots[k], (*r2)[k]);
  }
  return roots;
}


cplx discrete_amplitude(const SampledSignal& signal, cplx lambda_k) {
  if (!(lambda_k.imag() > 0.0)) throw ValidationError("discrete_amplitude: eigenvalue must have Im > 0");
  const auto jp = scatter(signal, lambda_k);
  if (std::abs(jp.a_prime) < 1e-10) throw DegenerateSpectrumError("discrete_amplitude: a'(lambda) vanishes");
  return jp.b / jp.a_prime;
}

DiscreteSpectrum nft(const SampledSignal& signal, std::optional<SearchRegion> region, std::size_t seeds_per_axis) {
  auto roots = locate_roots(signal, region, seeds_per_axis);
  if (roots.empty()) throw NumericError("nft: no eigenvalue found");
  std::vector<cplx> amps(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) amps[k] = discrete_amplitude(signal, roots[k]);
  if (signal.size() >= 64) {
    const auto coarse = decimate(signal);
    if (const auto r2 = coarse_roots(signal, coarse, roots)) {
      for (std::size_t k = 0; k < roots.size(); ++k) {
        amps[k] = extrapolate(amps[k], discrete_amplitude(coarse, (*r2)[k]));
        roots[k] = extrapolate(roots[k], (*r2)[k]);
      }
    }
  }

  std::vector<SpectrumEntry> entries;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const cplx qd = amps[k];
    const cplx init = qd_init(roots, k);
    SpectrumEntry e;
    e.eigenvalue = {roots[k].imag(), roots[k].real()};
    e.amplitude.eta = std::abs(qd) / std::abs(init);
    e.amplitude.phi = wrap_phase(std::arg(qd) - std::arg(init));
    entries.push_back(e);
  }
  return DiscreteSpectrum(std::move(entries));
}

}  // namespace soliton
