#include "soliton/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soliton/error.hpp"

namespace soliton {

double wrap_phase(double phi) {
  if (!std::isfinite(phi)) throw ValidationError("phase is not finite");
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value can round back up to 2pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

DiscreteSpectrum::DiscreteSpectrum(std::vector<SpectrumEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("spectrum needs at least one eigenvalue");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    auto& e = entries_[k];
    const auto where = " (entry " + std::to_string(k) + ")";
    if (!std::isfinite(e.eigenvalue.sigma) || e.eigenvalue.sigma <= 0.0)
      throw ValidationError("sigma must be finite and > 0" + where);
    if (!std::isfinite(e.eigenvalue.omega)) throw ValidationError("omega must be finite" + where);
    if (!std::isfinite(e.amplitude.eta) || e.amplitude.eta <= 0.0)
      throw ValidationError("eta must be finite and > 0" + where);
    e.amplitude.phi = wrap_phase(e.amplitude.phi);
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    for (std::size_t m = k + 1; m < entries_.size(); ++m) {
      if (std::abs(entries_[k].eigenvalue.lambda() - entries_[m].eigenvalue.lambda()) < kDistinctTolerance)
        throw DegenerateSpectrumError("eigenvalues " + std::to_string(k) + " and " + std::to_string(m) +
                                      " coincide");
    }
  }
}

std::vector<cplx> DiscreteSpectrum::eigenvalues() const {
  std::vector<cplx> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.eigenvalue.lambda());
  return out;
}

double DiscreteSpectrum::sigma_sum() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.eigenvalue.sigma;
  return s;
}

double DiscreteSpectrum::sigma_min() const {
  return std::ranges::min(entries_, {}, [](const SpectrumEntry& e) { return e.eigenvalue.sigma; })
      .eigenvalue.sigma;
}

double DiscreteSpectrum::sigma_max() const {
  return std::ranges::max(entries_, {}, [](const SpectrumEntry& e) { return e.eigenvalue.sigma; })
      .eigenvalue.sigma;
}

DiscreteSpectrum DiscreteSpectrum::with_phases(std::span<const double> phis) const {
  if (phis.size() != entries_.size()) throw ValidationError("phase count does not match spectrum size");
  auto copy = entries_;
  for (std::size_t k = 0; k < copy.size(); ++k) copy[k].amplitude.phi = phis[k];
  return DiscreteSpectrum(std::move(copy));
}

DiscreteSpectrum make_spectrum(std::span<const double> sigma, std::span<const double> omega,
                               std::span<const double> dt, std::span<const double> phi) {
  const auto n = sigma.size();
  if (omega.size() != n || dt.size() != n || phi.size() != n)
    throw ValidationError("make_spectrum: parameter lists differ in length");
  std::vector<SpectrumEntry> entries(n);
  for (std::size_t k = 0; k < n; ++k) {
    entries[k].eigenvalue = {sigma[k], omega[k]};
    if (!(sigma[k] > 0.0)) throw ValidationError("sigma must be > 0");
    entries[k].amplitude = {eta_of(entries[k].eigenvalue, dt[k]), phi[k]};
  }
  return DiscreteSpectrum(std::move(entries));
}

cplx qd_init(std::span<const cplx> lambdas, std::size_t k) {
  if (k >= lambdas.size()) throw ValidationError("eigenvalue index out of range");
  const cplx lk = lambdas[k];
  cplx value = lk - std::conj(lk);
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    if (m == k) continue;
    const cplx diff = lk - lambdas[m];
    if (std::abs(diff) < kDistinctTolerance)
      throw DegenerateSpectrumError("qd_init: eigenvalues coincide");
    value *= (lk - std::conj(lambdas[m])) / diff;
  }
  return value;
}

cplx qd_init(const DiscreteSpectrum& spectrum, std::size_t k) {
  const auto lambdas = spectrum.eigenvalues();
  return qd_init(lambdas, k);
}

cplx qd_value(const DiscreteSpectrum& spectrum, std::size_t k) {
  const double mag = std::abs(qd_init(spectrum, k));
  const auto& a = spectrum[k].amplitude;
  return std::polar(a.eta * mag, a.phi);
}

cplx qd_realized(const DiscreteSpectrum& spectrum, std::size_t k) {
  const auto& a = spectrum[k].amplitude;
  return a.eta * qd_init(spectrum, k) * std::polar(1.0, a.phi);
}

double delta_t(const Eigenvalue& eigenvalue, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("delta_t: eta must be finite and > 0");
  if (!(eigenvalue.sigma > 0.0)) throw ValidationError("delta_t: sigma must be > 0");
  return std::log(eta) / (2.0 * eigenvalue.sigma);
}

double eta_of(const Eigenvalue& eigenvalue, double dt) {
  if (!(eigenvalue.sigma > 0.0)) throw ValidationError("eta_of: sigma must be > 0");
  const double eta = std::exp(2.0 * eigenvalue.sigma * dt);
  if (!std::isfinite(eta) || eta <= 0.0) throw NumericError("eta_of: amplitude scaling out of range");
  return eta;
}

DiscreteSpectrum evolve(const DiscreteSpectrum& spectrum, double z) {
  std::vector<SpectrumEntry> out(spectrum.entries().begin(), spectrum.entries().end());
  for (auto& e : out) {
    const double s = e.eigenvalue.sigma;
    const double w = e.eigenvalue.omega;
    // -4j lambda^2 z = 8 s w z + j(-4 (w^2 - s^2) z)
    const double log_eta = std::log(e.amplitude.eta) + 8.0 * s * w * z;
    const double eta = std::exp(log_eta);
    if (!std::isfinite(eta) || eta == 0.0) throw NumericError("evolve: eta over/underflows at this distance");
    e.amplitude.eta = eta;
    e.amplitude.phi = wrap_phase(e.amplitude.phi - 4.0 * (w * w - s * s) * z);
  }
  return DiscreteSpectrum(std::move(out));
}

DiscreteSpectrum transform(const DiscreteSpectrum& spectrum, TransformKind kind, double parameter) {
  std::vector<SpectrumEntry> out(spectrum.entries().begin(), spectrum.entries().end());
  switch (kind) {
    case TransformKind::global_phase:
      for (auto& e : out) e.amplitude.phi -= parameter;
      break;
    case TransformKind::time_shift:
      for (auto& e : out) {
        e.amplitude.eta *= std::exp(2.0 * e.eigenvalue.sigma * parameter);
        e.amplitude.phi -= 2.0 * e.eigenvalue.omega * parameter;
      }
      break;
    case TransformKind::dilate:
      if (!(parameter > 0.0) || !std::isfinite(parameter))
        throw ValidationError("dilate: sigma_0 must be finite and > 0");
      for (auto& e : out) {
        e.eigenvalue.sigma /= parameter;
        e.eigenvalue.omega /= parameter;
      }
      break;
    case TransformKind::freq_shift:
      for (auto& e : out) e.eigenvalue.omega -= parameter;
      break;
    case TransformKind::time_reverse:
      for (auto& e : out) {
        e.amplitude.eta = 1.0 / e.amplitude.eta;
        e.eigenvalue.omega = -e.eigenvalue.omega;
      }
      break;
    case TransformKind::conjugate:
      for (auto& e : out) {
        e.amplitude.phi = -e.amplitude.phi;
        e.eigenvalue.omega = -e.eigenvalue.omega;
      }
      break;
  }
  return DiscreteSpectrum(std::move(out));
}

void PhysicalScaling::validate() const {
  if (!(beta2 < 0.0) || !std::isfinite(beta2)) throw ValidationError("beta2 must be finite and < 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be finite and > 0");
  if (!(T0 > 0.0) || !std::isfinite(T0)) throw ValidationError("T0 must be finite and > 0");
}

double PhysicalScaling::power() const {
  validate();
  return std::abs(beta2) / (gamma * T0 * T0);
}

double PhysicalScaling::distance(double z) const {
  validate();
  return z * 2.0 * T0 * T0 / std::abs(beta2);
}

}  // namespace soliton
