#pragma once

// Pulse duration and bandwidth of sampled pulses, and their worst case over
// the spectral phases and the link.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "soliton/signal.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

enum class Definition {
  energy,     // smallest interval holding (1 - epsilon) of the energy
  threshold,  // smallest interval outside which |.| <= alpha * peak
};

struct MeasureConfig {
  double epsilon = 1e-4;
  std::optional<double> alpha;  // sqrt(2 epsilon) when absent
  Definition definition = Definition::energy;
  std::size_t phase_points = 16;  // M
  std::size_t z_samples = 41;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
  [[nodiscard]] double threshold() const;
};

/// The threshold that makes both definitions agree on a first-order soliton.
double matched_alpha(double epsilon);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double width() const { return hi - lo; }
};

struct TBReport {
  double T = 0.0;
  double B = 0.0;
  Interval T_interval;
  Interval B_interval;
};

/// Throws MeasurementError when the grid edges hold too much energy for the
/// requested epsilon.
Interval duration(const SampledSignal& signal, const MeasureConfig& config);
/// On the unitary DFT, frequency in cycles. Throws MeasurementError when the
/// outer spectral bins hold more than 1e-8 of the energy (aliasing).
Interval bandwidth(const SampledSignal& signal, const MeasureConfig& config);
TBReport measure(const SampledSignal& signal, const MeasureConfig& config);

/// Energy share of the outermost spectral bins, used for the aliasing check.
double spectral_edge_fraction(const FrequencySamples& spectrum);

struct PhaseMaxima {
  double T_max = 0.0;
  double B_max = 0.0;
  std::vector<double> T_phases;  // first maximizing phase vector (lexicographic)
  std::vector<double> B_phases;
};

/// Maxima of T and B over the M^(N-1) transmit phase vectors
/// phi_k = m_k 2 pi / M (phi_N = 0), each pulse synthesized from
/// evolve(S with those phases, at_z). The phases stored in S are ignored.
/// With want_bandwidth false only T is measured.
PhaseMaxima t_max_b_max(const DiscreteSpectrum& spectrum, const MeasureConfig& config, double at_z = 0.0,
                        bool want_bandwidth = true);

struct LinkMaxima {
  double T_hat = 0.0;
  double B_hat = 0.0;
  std::vector<double> z;      // sampled distances
  std::vector<double> T_max;  // T_max at each z
  std::vector<double> B_max;  // B_max at each z (NaN where not measured)
};

/// T_hat = max over z in [0, L] (config.z_samples points) of T_max(z),
/// B_hat = max of B_max at z = 0 and z = L. Spectra on the imaginary axis
/// are z-invariant in |Q_d| and are measured at z = 0 only.
LinkMaxima t_hat_b_hat(const DiscreteSpectrum& spectrum, const MeasureConfig& config, double L);

/// T_hat B_hat / N
double tbp_per_eigenvalue(double t_hat, double b_hat, std::size_t n);

/// Measured T B of the first-order soliton at lambda = 0.5j.
double reference_tbp(const MeasureConfig& config);

}  // namespace soliton
