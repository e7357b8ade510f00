#pragma once

// Closed-form tail, duration and bandwidth approximations of multi-solitons
// and the estimated lower bound on the time-bandwidth product.

#include <cstddef>
#include <span>
#include <vector>

#include "soliton/spectrum.hpp"

namespace soliton {

/// Weights of rho_k^(k-1) = sum_r a_{r,k} rho_r^(0) in the t -> +inf limit.
/// Eigenvalues are sorted by decreasing sigma first (stable); `order[i]` is
/// the input index of sorted eigenvalue i, and all indices below refer to
/// the sorted order.
struct TailCoefficients {
  std::size_t n = 0;
  std::vector<cplx> a;           // n x n, a[r * n + k], zero below the diagonal
  std::vector<double> A;         // A_r = |sum_{k >= r} a_{r,k}|
  std::vector<std::size_t> order;

  [[nodiscard]] cplx operator()(std::size_t r, std::size_t k) const { return a[r * n + k]; }
};

TailCoefficients tail_coefficients(std::span<const cplx> eigenvalues);

/// Minimum |sigma_k - sigma_min| for the single-exponential tail of an
/// imaginary spectrum to be used.
inline constexpr double kSeparationGap = 0.02;

/// Energy duration of an imaginary N-soliton with equal shifts.
/// Throws DegenerateSpectrumError if some sigma lies within kSeparationGap
/// of the smallest one.
double t_lim_imaginary(std::span<const double> sigmas, double epsilon);

/// Duration approximation for lambda_k = j sigma + omega_k with scalings eta.
double t_approx_real(double sigma, std::span<const double> omegas, std::span<const double> etas,
                     double epsilon);
/// t_approx_real at eta_k = 1, its minimum over the scalings.
double t_lim_real(double sigma, std::span<const double> omegas, double epsilon);

/// Bandwidth of an imaginary N-soliton separated into first-order components.
double b_lim_imaginary(std::span<const double> sigmas, double epsilon);
/// Bandwidth of separated components with lambda_k = j sigma + omega_k.
double b_lim_real(double sigma, std::span<const double> omegas, double epsilon);

/// |q(t)| ~ coefficient * exp(-rate |t|) on one side of the pulse.
struct TailTerm {
  double coefficient = 0.0;
  double rate = 0.0;
};

/// Tail terms on both sides, one per eigenvalue (sorted order). Their sum
/// bounds |q| for |t| -> inf; the term with the smallest rate dominates.
struct TailEnvelope {
  std::vector<TailTerm> right;
  std::vector<TailTerm> left;

  [[nodiscard]] double evaluate(double t) const;
};

TailEnvelope tail_envelope(const DiscreteSpectrum& spectrum);

/// Single dominant term 4 eta_N^{+-1} sigma_N |a_NN| exp(-+2 sigma_N t) of an
/// imaginary spectrum. Throws DegenerateSpectrumError when sigma_N is not
/// separated from the others by kSeparationGap.
TailEnvelope leading_tail(const DiscreteSpectrum& spectrum);

/// pi sum_k sech(pi^2 / (2 sigma_k) (f + omega_k / pi)): the magnitude
/// spectrum of the pulse once its components have separated.
double separated_spectrum_envelope(const DiscreteSpectrum& spectrum, double f);

/// Rough energy duration from the tail envelope (used to size grids).
double duration_estimate(const DiscreteSpectrum& spectrum, double epsilon);
/// Rough energy bandwidth from the separated-component spectra.
double bandwidth_estimate(const DiscreteSpectrum& spectrum, double epsilon);

struct BoundEntry {
  std::size_t n = 1;
  double normalized_bound = 1.0;
  std::vector<double> params;  // sigmas (imaginary) or omegas (real axis)
  bool flagged = false;        // the local minimizer did not converge
};

struct BoundCurve {
  Constellation constellation = Constellation::imaginary;
  double epsilon = 1e-4;
  std::vector<BoundEntry> entries;
};

/// min over the eigenvalues of T_lim * B_lim / N, divided by the N = 1 value.
/// Imaginary: sigma_N = 0.5, other sigmas free. Real axis: sigma = 0.5,
/// omegas free. Per-N minimizations run in parallel.
BoundCurve lower_bound_curve(std::size_t n_max, Constellation constellation, double epsilon = 1e-4);

/// T_lim * B_lim / N for one parameter vector (inf when undefined).
double bound_objective(std::span<const double> params, Constellation constellation, double epsilon);

}  // namespace soliton
