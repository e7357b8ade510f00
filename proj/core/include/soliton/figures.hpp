#pragma once

// Plot data for the duration/bandwidth studies, as plain numeric tables.

#include <cstddef>
#include <string>
#include <vector>

#include "soliton/metrics.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Optimum parameter vectors reported for the two constellations
/// (parameter order as in parameter_names).
struct ReferenceOptimum {
  Constellation constellation;
  std::size_t n;
  Definition definition;
  std::vector<double> params;
  double ratio;  // reported (T_hat B_hat / N) / (T B)_1
};
const std::vector<ReferenceOptimum>& reference_optima();

/// T_max and B_max at z = 0 against delta_t_2 in [0, dt_max] for the
/// 2-solitons {0.5j, 1j} and 0.5j + {0.8, -0.6} (delta_t_1 = 0).
/// Columns delta_t_2, T_max_imag, B_max_imag, T_max_real, B_max_real.
Table delta_t_study(const MeasureConfig& config, double dt_max = 6.0, double step = 0.1);

/// T_max and B_max against z in [0, L*] for the real-axis optima of the
/// energy definition. Columns n, z, T_max, B_max.
Table propagation_study(const MeasureConfig& config);

/// Lower bound per N with the directly evaluated optima of both
/// definitions (NaN where absent). Columns N, bound, optimum_energy,
/// optimum_threshold.
Table bound_study(Constellation constellation, std::size_t n_max, const MeasureConfig& config);

}  // namespace soliton
