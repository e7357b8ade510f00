#pragma once

// Split-step Fourier integration of q_z + j q_tt + 2j |q|^2 q = 0 on the
// periodic sample grid.

#include <cstddef>
#include <vector>

#include "soliton/signal.hpp"

namespace soliton {

enum class SplitScheme { strang };

/// Step size used when only the distance is known.
inline constexpr double kDefaultStep = 1e-3;
/// Peak magnitude up to which kDefaultStep is kept by the amplitude-aware
/// default. The splitting error grows roughly as peak^6, so larger pulses get
/// dz = kDefaultStep (kStepPeak / peak)^3.
inline constexpr double kStepPeak = 1.5;

struct PropagationPlan {
  double z_total = 1.0;
  std::size_t n_steps = 1000;
  SplitScheme scheme = SplitScheme::strang;

  /// Plan with steps of at most kDefaultStep.
  static PropagationPlan over(double z_total);
  /// Default resolution for a given input: kDefaultStep scaled down for
  /// pulses whose peak exceeds kStepPeak.
  static PropagationPlan over(double z_total, const SampledSignal& input);
  void validate() const;
  [[nodiscard]] double dz() const { return z_total / static_cast<double>(n_steps); }
};

struct PropagationResult {
  SampledSignal signal;
  /// Outer spectral bins held more than 1e-8 of the energy at some output.
  bool aliasing_warning = false;
  /// Intermediate signals at z_total * i / (k + 1), i = 1..k.
  std::vector<SampledSignal> snapshots;
  std::vector<double> snapshot_z;
};

/// Symmetric split step: half linear, full nonlinear, half linear per step.
PropagationResult propagate(const SampledSignal& signal, const PropagationPlan& plan, std::size_t snapshots = 0);

}  // namespace soliton
