#pragma once

// Exhaustive grid search for the multi-soliton parameters that minimize
// T_hat B_hat, with one stage of local grid refinement.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soliton/metrics.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

struct ParamRange {
  double min = 0.0;
  double max = 0.0;
  double step = 0.1;

  /// min, min + step, ... up to max (inclusive within rounding).
  [[nodiscard]] std::vector<double> values() const;
};

struct SweepSpec {
  Constellation constellation = Constellation::imaginary;
  std::size_t n = 2;
  /// Coarse grid, one range per free parameter (see parameter_names).
  std::vector<ParamRange> ranges;
  /// Refinement step per parameter; empty disables refinement.
  std::vector<double> fine_steps;
  /// Half-width of the refinement box in coarse steps.
  double refine_radius = 1.0;
  MeasureConfig measure;

  /// Throws ValidationError when the spec is unusable.
  void validate() const;

  /// Grids thinned 2x against the published ones, M = 16.
  static SweepSpec desk(Constellation constellation, std::size_t n, MeasureConfig measure = {});
  /// The published grids, M = 128.
  static SweepSpec paper_fidelity(Constellation constellation, std::size_t n, MeasureConfig measure = {});
};

/// Free parameters of a constellation in trace order.
/// imaginary: sigma_1..sigma_{N-1}, delta_t_1..delta_t_{N-1}
///   (sigma_N = 0.5, delta_t_N = 0).
/// real_axis, N = 2: omega_1, delta_t_1 (omega_2 = -omega_1, delta_t_2 = -delta_t_1).
/// real_axis, N = 3: omega_1, delta_t_1, omega_3, delta_t_3.
/// All real-axis eigenvalues have sigma = 0.5.
std::vector<std::string> parameter_names(Constellation constellation, std::size_t n);

/// Spectrum (all phases zero) at a parameter vector.
DiscreteSpectrum spectrum_at(Constellation constellation, std::size_t n, const std::vector<double>& params);

/// Link length over which T_hat is taken: 0 for the imaginary axis,
/// |delta_t_1 / (2 omega_1)| on the real axis (the components swap their
/// shifts after this distance). Infinite when omega_1 = 0.
double link_length(Constellation constellation, const std::vector<double>& params);

struct TracePoint {
  std::vector<double> params;
  double T_hat = 0.0;
  double B_hat = 0.0;
  double objective = 0.0;  // T_hat B_hat, NaN when the point failed
  std::string error;       // empty on success

  [[nodiscard]] bool ok() const { return error.empty(); }
};

/// Evaluates one grid point; failures are reported in TracePoint::error.
TracePoint evaluate_point(const SweepSpec& spec, const std::vector<double>& params);

struct SweepResult {
  std::vector<double> best_params;
  std::vector<double> sigma;    // per eigenvalue at the optimum
  std::vector<double> omega;
  std::vector<double> delta_t;
  double best_T_hat = 0.0;
  double best_B_hat = 0.0;
  double best_objective = 0.0;
  double coarse_objective = 0.0;  // best over the coarse grid alone
  double reference = 0.0;         // measured T B of the first-order soliton
  double tbp_per_ev_ratio = 0.0;  // (T_hat B_hat / N) / reference
  std::optional<double> L_star;
  std::vector<TracePoint> trace;  // every point evaluated or resumed
};

struct SweepOptions {
  /// CSV trace file param_1,...,param_k,T_hat,B_hat,objective.
  std::optional<std::string> trace_path;
  /// Reuse the points already in trace_path and append new ones.
  bool resume = false;
  /// Called once per failed point.
  std::function<void(const TracePoint&)> on_failure;
};

/// Throws ValidationError for a bad spec and NumericError when no grid
/// point could be evaluated. Ties go to the lexicographically smallest
/// parameter vector.
SweepResult optimize(const SweepSpec& spec, const SweepOptions& options = {});
SweepResult optimize_imaginary(const SweepSpec& spec, const SweepOptions& options = {});
SweepResult optimize_real_axis(const SweepSpec& spec, const SweepOptions& options = {});

/// Ratio (T_hat B_hat / N) / reference at a parameter vector, evaluated
/// directly without a sweep.
double ratio_at(const SweepSpec& spec, const std::vector<double>& params);

}  // namespace soliton
