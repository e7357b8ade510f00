#include "soliton/figures.hpp"

#include <cmath>
#include <limits>

#include "soliton/asymptotics.hpp"
#include "soliton/optimizer.hpp"

namespace soliton {

const std::vector<ReferenceOptimum>& reference_optima() {
  static const std::vector<ReferenceOptimum> table{
      {Constellation::imaginary, 2, Definition::energy, {0.58, 2.0}, 0.89},
      {Constellation::imaginary, 2, Definition::threshold, {0.6, 1.4}, 0.86},
      {Constellation::imaginary, 3, Definition::energy, {0.7, 0.62, -2.85, 1.05}, 0.84},
      {Constellation::imaginary, 3, Definition::threshold, {0.68, 0.62, -2.75, 1.6}, 0.85},
      {Constellation::real_axis, 2, Definition::energy, {0.075, -0.9}, 0.74},
      {Constellation::real_axis, 2, Definition::threshold, {0.22, -0.9}, 0.75},
      {Constellation::real_axis, 3, Definition::energy, {0.55, -2.2, 0.0, 0.0}, 0.71},
      {Constellation::real_axis, 3, Definition::threshold, {0.14, -2.13, 0.0, 0.0}, 0.71},
  };
  return table;
}

Table delta_t_study(const MeasureConfig& config, double dt_max, double step) {
  Table t{{"delta_t_2", "T_max_imag", "B_max_imag", "T_max_real", "B_max_real"}, {}};
  const auto count = static_cast<long>(std::floor(dt_max / step + 1e-9));
  const std::vector<double> zero{0.0, 0.0};
  for (long i = 0; i <= count; ++i) {
    const double dt2 = static_cast<double>(i) * step;
    const std::vector<double> dts{0.0, dt2};
    const auto imag = t_max_b_max(make_spectrum(std::vector{0.5, 1.0}, zero, dts, zero), config);
    const auto real = t_max_b_max(make_spectrum(std::vector{0.5, 0.5}, std::vector{0.8, -0.6}, dts, zero), config);
    t.rows.push_back({dt2, imag.T_max, imag.B_max, real.T_max, real.B_max});
  }
  return t;
}

Table propagation_study(const MeasureConfig& config) {
  Table t{{"n", "z", "T_max", "B_max"}, {}};
  for (const auto& opt : reference_optima()) {
    if (opt.constellation != Constellation::real_axis || opt.definition != Definition::energy) continue;
    const DiscreteSpectrum s = spectrum_at(opt.constellation, opt.n, opt.params);
    const double L = link_length(opt.constellation, opt.params);
    const std::size_t zs = config.z_samples;
    for (std::size_t i = 0; i < zs; ++i) {
      const double z = L * static_cast<double>(i) / static_cast<double>(zs - 1);
      const auto pm = t_max_b_max(s, config, z, true);
      t.rows.push_back({static_cast<double>(opt.n), z, pm.T_max, pm.B_max});
    }
  }
  return t;
}

Table bound_study(Constellation constellation, std::size_t n_max, const MeasureConfig& config) {
  Table t{{"N", "bound", "optimum_energy", "optimum_threshold"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const BoundCurve curve = lower_bound_curve(n_max, constellation, config.epsilon);
  for (const auto& e : curve.entries) {
    std::vector<double> row{static_cast<double>(e.n), e.normalized_bound, nan, nan};
    if (e.n == 1) row[2] = row[3] = 1.0;
    for (const auto& opt : reference_optima()) {
      if (opt.constellation != constellation || opt.n != e.n) continue;
      SweepSpec spec;
      spec.constellation = constellation;
      spec.n = opt.n;
      spec.measure = config;
      spec.measure.definition = opt.definition;
      row[opt.definition == Definition::energy ? 2 : 3] = ratio_at(spec, opt.params);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace soliton
