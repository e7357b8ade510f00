#pragma once

// Discrete nonlinear Fourier spectrum of an N-soliton.
//
// Canonical storage is (sigma, omega, eta, phi) per eigenvalue:
//   lambda_k = omega_k + j sigma_k                    (upper half-plane)
//   Q_d(lambda_k) = eta_k |Q_d,init(lambda_k)| e^{j phi_k}
// so that eta/phi are the modulation coordinates and Q_d is derived.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace soliton {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Minimum complex distance between two eigenvalues of one spectrum.
inline constexpr double kDistinctTolerance = 1e-6;

struct Eigenvalue {
  double sigma = 0.5;  // Im(lambda) > 0
  double omega = 0.0;  // Re(lambda)

  [[nodiscard]] cplx lambda() const { return {omega, sigma}; }
  friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};

struct SpectralAmplitude {
  double eta = 1.0;  // > 0
  double phi = 0.0;  // radians, kept in [0, 2pi)
  friend bool operator==(const SpectralAmplitude&, const SpectralAmplitude&) = default;
};

struct SpectrumEntry {
  Eigenvalue eigenvalue;
  SpectralAmplitude amplitude;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Wraps an angle into [0, 2pi).
double wrap_phase(double phi);

/// Immutable, validated list of (eigenvalue, amplitude) pairs.
class DiscreteSpectrum {
 public:
  /// Throws ValidationError for non-positive sigma/eta or non-finite values,
  /// DegenerateSpectrumError for eigenvalues closer than kDistinctTolerance.
  explicit DiscreteSpectrum(std::vector<SpectrumEntry> entries);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const SpectrumEntry& operator[](std::size_t k) const { return entries_[k]; }
  [[nodiscard]] std::span<const SpectrumEntry> entries() const { return entries_; }

  [[nodiscard]] std::vector<cplx> eigenvalues() const;
  [[nodiscard]] double sigma_sum() const;
  [[nodiscard]] double sigma_min() const;
  [[nodiscard]] double sigma_max() const;

  /// Copy with the phases replaced (size must match).
  [[nodiscard]] DiscreteSpectrum with_phases(std::span<const double> phis) const;

  friend bool operator==(const DiscreteSpectrum&, const DiscreteSpectrum&) = default;

 private:
  std::vector<SpectrumEntry> entries_;
};

/// Builds a spectrum from per-entry (sigma, omega, delta_t, phi) lists, the
/// parametrization used by the optimizer (eta = exp(2 sigma delta_t)).
DiscreteSpectrum make_spectrum(std::span<const double> sigma, std::span<const double> omega,
                               std::span<const double> delta_t, std::span<const double> phi);

/// (lambda_k - lambda_k^*) prod_{m != k} (lambda_k - lambda_m^*) / (lambda_k - lambda_m)
cplx qd_init(std::span<const cplx> eigenvalues, std::size_t k);
cplx qd_init(const DiscreteSpectrum& spectrum, std::size_t k);

/// eta_k |Q_d,init(lambda_k)| e^{j phi_k}
cplx qd_value(const DiscreteSpectrum& spectrum, std::size_t k);

/// eta_k Q_d,init(lambda_k) e^{j phi_k}: the spectral amplitude that the
/// synthesized pulse actually carries. Same magnitude as qd_value; the phase
/// additionally contains arg Q_d,init(lambda_k).
cplx qd_realized(const DiscreteSpectrum& spectrum, std::size_t k);

/// Temporal shift ln(eta)/(2 sigma) of a first-order component.
double delta_t(const Eigenvalue& eigenvalue, double eta);
/// Inverse of delta_t: eta = exp(2 sigma dt).
double eta_of(const Eigenvalue& eigenvalue, double dt);

/// Exact propagation of the discrete spectrum over normalized distance z:
/// Q_d <- Q_d exp(-4j lambda^2 z). Throws NumericError if an eta overflows.
DiscreteSpectrum evolve(const DiscreteSpectrum& spectrum, double z);

/// Eigenvalue families studied by the optimizer and the bounds:
/// lambda_k = j sigma_k, or lambda_k = j sigma + omega_k.
enum class Constellation { imaginary, real_axis };

enum class TransformKind { global_phase, time_shift, dilate, freq_shift, time_reverse, conjugate };

/// Spectrum-domain image of the TBP-preserving signal transformations.
/// `parameter` is phi_0, t_0, sigma_0 or omega_0 depending on `kind`
/// (ignored for time_reverse and conjugate).
DiscreteSpectrum transform(const DiscreteSpectrum& spectrum, TransformKind kind,
                           double parameter = 0.0);

struct PhysicalScaling {
  double beta2 = -21.7e-27;  // s^2/m, < 0
  double gamma = 1.3e-3;     // 1/(W m), > 0
  double T0 = 1e-11;         // s, > 0

  /// Throws ValidationError when the invariants do not hold.
  void validate() const;
  /// Peak power scale P0 = |beta2| / (gamma T0^2) in W.
  [[nodiscard]] double power() const;
  /// Physical distance in m of a normalized distance z.
  [[nodiscard]] double distance(double z) const;
};

}  // namespace soliton
