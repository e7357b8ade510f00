#pragma once

// Inverse NFT of a purely discrete spectrum by the recursive Darboux
// transform, evaluated independently at every sample of a time grid.

#include <span>
#include <vector>

#include "soliton/signal.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

/// Boundary samples above this fraction of the peak flag a truncated grid.
inline constexpr double kBoundaryTolerance = 1e-12;

struct SynthesisResult {
  SampledSignal signal;
  double edge_ratio = 0.0;
  [[nodiscard]] bool truncated() const { return edge_ratio > kBoundaryTolerance; }
};

SampledSignal synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid);

/// As synthesize, additionally reporting whether the grid cuts the pulse.
SynthesisResult synthesize_checked(const DiscreteSpectrum& spectrum, const TimeGrid& grid);

/// Grid centred on the pulse, wide enough that the edges sit below
/// kBoundaryTolerance and at least 1.5x the duration estimate at epsilon/100,
/// with dt oversampling the bandwidth estimate at least 8x.
/// Depends on eigenvalues and |Q_d| only, never on the phases.
TimeGrid auto_grid(const DiscreteSpectrum& spectrum, double epsilon = 1e-4);

/// Smallest auto grid covering every spectrum in the list (same dt for all),
/// e.g. the endpoints of a propagation.
TimeGrid auto_grid(std::span<const DiscreteSpectrum> spectra, double epsilon = 1e-4);

/// Precomputed Darboux initialization for repeated synthesis with varying
/// phases: the eigenvalues and |Q_d| are fixed by the spectrum handed to the
/// constructor, the phases are supplied per render.
class SynthesisPlan {
 public:
  SynthesisPlan(const DiscreteSpectrum& spectrum, const TimeGrid& grid);

  [[nodiscard]] const TimeGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t order() const { return lambdas_.size(); }

  /// Writes q(t_i) for the given phases (one per eigenvalue) into `out`.
  void render(std::span<const double> phases, std::span<cplx> out) const;
  /// Same for the samples [begin, end) only; out has end - begin entries.
  void render(std::span<const double> phases, std::size_t begin, std::size_t end, std::span<cplx> out) const;
  [[nodiscard]] SampledSignal render(std::span<const double> phases) const;

 private:
  struct Base {
    double log_mag;  // ln|rho_k^(0)(t_i)| without the modulation phase
    double phase;
  };

  TimeGrid grid_;
  std::vector<cplx> lambdas_;
  std::vector<double> sigmas_;
  std::vector<Base> base_;      // n_samples x N, row-major by sample
  std::vector<cplx> direct_;    // same values as complex numbers where representable
  std::vector<char> use_log_;   // per sample: needs the log-domain recursion
};

}  // namespace soliton
