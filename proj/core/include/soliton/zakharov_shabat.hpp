#pragma once

// Forward nonlinear Fourier transform of a sampled pulse: Jost coefficients,
// discrete eigenvalues and their spectral amplitudes.

#include <cstddef>
#include <optional>
#include <vector>

#include "soliton/signal.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

struct JostPair {
  cplx a;
  cplx b;
  cplx a_prime;  // da/dlambda
  bool edge_warning = false;  // the signal does not decay at the grid edges
};

/// Jost coefficients of the sampled potential (held constant over each
/// sample's cell). For Im(lambda) > 0 `a` and `a_prime` come from matching
/// the left and right Jost solutions at the pulse peak and `b` is the
/// proportionality factor between them, which is exact at eigenvalues.
/// Throws ValidationError for Im(lambda) < 0.
JostPair scatter(const SampledSignal& signal, cplx lambda);

struct SearchRegion {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = 0.0;  // exclusive
  double im_max = 1.0;
};

/// Region guessed from the signal: sigma cannot exceed energy / 4, omega
/// follows the centre of its Fourier spectrum.
SearchRegion default_region(const SampledSignal& signal);

inline constexpr double kRootTolerance = 1e-6;
inline constexpr int kNewtonIterations = 50;
inline constexpr double kMergeDistance = 1e-4;

/// Newton iteration on a(lambda) from a seeds x seeds grid over the region,
/// each root then corrected by one Richardson step against the
/// half-resolution signal. Returns the distinct roots inside the region
/// sorted by real, then imaginary part.
std::vector<cplx> find_eigenvalues(const SampledSignal& signal, std::optional<SearchRegion> region = {},
                                   std::size_t seeds_per_axis = 20);

/// b(lambda_k) / a'(lambda_k). Throws DegenerateSpectrumError if |a'| < 1e-10.
cplx discrete_amplitude(const SampledSignal& signal, cplx lambda_k);

/// Located eigenvalues with their amplitudes in (sigma, omega, eta, phi)
/// form, phi taken relative to arg Q_d,init so that nft(synthesize(S))
/// reproduces S. Throws NumericError when no eigenvalue is found.
DiscreteSpectrum nft(const SampledSignal& signal, std::optional<SearchRegion> region = {},
                     std::size_t seeds_per_axis = 20);

}  // namespace soliton
