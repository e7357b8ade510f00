#include "soliton/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "soliton/error.hpp"
#include "soliton/parallel.hpp"

namespace soliton {

namespace {

constexpr double kSigmaPinned = 0.5;
constexpr double kGridRound = 1e10;

double snap(double v) { return std::round(v * kGridRound) / kGridRound; }

using Key = std::vector<long long>;

Key key_of(const std::vector<double>& p) {
  Key k;
  k.reserve(p.size());
  for (double v : p) k.push_back(std::llround(v * 1e9));
  return k;
}

std::vector<std::vector<double>> cartesian(const std::vector<std::vector<double>>& axes) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * axis.size());
    for (const auto& head : out) {
      for (double v : axis) {
        auto p = head;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

// smaller objective first, then the lexicographically smaller vector
bool better(const TracePoint& a, const TracePoint& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.params < b.params;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string csv_line(const TracePoint& p) {
  std::string line;
  for (double v : p.params) line += csv_number(v) + ",";
  line += csv_number(p.T_hat) + "," + csv_number(p.B_hat) + "," + csv_number(p.objective);
  return line;
}

std::string csv_header(std::size_t k) {
  std::string h;
  for (std::size_t i = 1; i <= k; ++i) h += "param_" + std::to_string(i) + ",";
  return h + "T_hat,B_hat,objective";
}

std::vector<TracePoint> load_trace(const std::string& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read trace file " + path);
  std::string line;
  if (!std::getline(in, line)) return {};
  if (line != csv_header(k)) throw ValidationError("trace file " + path + ": header does not match the sweep");
  std::vector<TracePoint> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) cells.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
    } catch (const std::exception&) {
      throw ValidationError("trace file " + path + ": bad number on line " + std::to_string(row));
    }
    if (cells.size() != k + 3)
      throw ValidationError("trace file " + path + ": wrong column count on line " + std::to_string(row));
    TracePoint p;
    p.params.assign(cells.begin(), cells.begin() + static_cast<long>(k));
    p.T_hat = cells[k];
    p.B_hat = cells[k + 1];
    p.objective = cells[k + 2];
    if (!std::isfinite(p.objective)) p.error = "failed in a previous run";
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> refine_axis(const ParamRange& r, double center, double fine, double radius) {
  const double half = radius * r.step;
  const auto steps = static_cast<long>(std::floor(half / fine + 1e-9));
  std::vector<double> out;
  for (long i = -steps; i <= steps; ++i) {
    const double v = snap(center + static_cast<double>(i) * fine);
    if (v >= r.min - 1e-9 && v <= r.max + 1e-9) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> ParamRange::values() const {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((max - min) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(snap(min + static_cast<double>(i) * step));
  return out;
}

void SweepSpec::validate() const {
  if (n != 2 && n != 3) throw ValidationError("exhaustive sweeps support N = 2 or 3");
  const std::size_t k = parameter_names(constellation, n).size();
  if (ranges.size() != k) throw ValidationError("sweep needs " + std::to_string(k) + " parameter ranges");
  for (std::size_t i = 0; i < k; ++i) {
    const auto& r = ranges[i];
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.step > 0.0))
      throw ValidationError("range " + std::to_string(i + 1) + " needs finite bounds and a positive step");
    if (r.max < r.min) throw ValidationError("range " + std::to_string(i + 1) + " is empty");
  }
  if (!fine_steps.empty()) {
    if (fine_steps.size() != k) throw ValidationError("need one refinement step per parameter");
    for (double s : fine_steps)
      if (!(s > 0.0)) throw ValidationError("refinement steps must be positive");
    if (!(refine_radius >= 0.0)) throw ValidationError("refinement radius must be >= 0");
  }
  measure.validate();
}

SweepSpec SweepSpec::paper_fidelity(Constellation constellation, std::size_t n, MeasureConfig measure) {
  SweepSpec s;
  s.constellation = constellation;
  s.n = n;
  s.measure = measure;
  s.measure.phase_points = 128;
  if (constellation == Constellation::imaginary) {
    if (n == 2) {
      s.ranges = {{0.5, 1.5, 0.1}, {0.0, 5.0, 0.25}};
      s.fine_steps = {0.02, 0.05};
    } else {
      s.ranges = {{0.5, 1.5, 0.1}, {0.5, 1.5, 0.1}, {-5.0, 5.0, 0.25}, {0.0, 5.0, 0.25}};
      s.fine_steps = {0.02, 0.02, 0.05, 0.05};
    }
  } else {
    s.ranges = {{0.0, 1.0, 0.05}, {-4.0, 0.0, 0.2}};
    s.fine_steps = {0.01, 0.05};
    if (n == 3) {
      s.ranges.push_back({-1.0, 1.0, 0.1});
      s.ranges.push_back({-3.0, 0.0, 0.2});
      s.fine_steps.push_back(0.01);
      s.fine_steps.push_back(0.05);
    }
  }
  s.validate();
  return s;
}

SweepSpec SweepSpec::desk(Constellation constellation, std::size_t n, MeasureConfig measure) {
  SweepSpec s = paper_fidelity(constellation, n, measure);
  s.measure.phase_points = 16;
  for (auto& r : s.ranges) r.step *= 2.0;
  for (auto& f : s.fine_steps) f *= 2.0;
  return s;
}

std::vector<std::string> parameter_names(Constellation constellation, std::size_t n) {
  if (n < 2) throw ValidationError("sweeps need N >= 2");
  std::vector<std::string> out;
  if (constellation == Constellation::imaginary) {
    for (std::size_t k = 1; k < n; ++k) out.push_back("sigma_" + std::to_string(k));
    for (std::size_t k = 1; k < n; ++k) out.push_back("delta_t_" + std::to_string(k));
    return out;
  }
  if (n > 3) throw ValidationError("real-axis sweeps support N = 2 or 3");
  out = {"omega_1", "delta_t_1"};
  if (n == 3) {
    out.emplace_back("omega_3");
    out.emplace_back("delta_t_3");
  }
  return out;
}

DiscreteSpectrum spectrum_at(Constellation constellation, std::size_t n, const std::vector<double>& params) {
  if (params.size() != parameter_names(constellation, n).size())
    throw ValidationError("parameter vector has the wrong length");
  std::vector<double> sigma(n, kSigmaPinned), omega(n, 0.0), dt(n, 0.0), phi(n, 0.0);
  if (constellation == Constellation::imaginary) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      sigma[k] = params[k];
      dt[k] = params[n - 1 + k];
    }
  } else {
    omega[0] = params[0];
    omega[1] = -params[0];
    dt[0] = params[1];
    dt[1] = -params[1];
    if (n == 3) {
      omega[2] = params[2];
      dt[2] = params[3];
    }
  }
  return make_spectrum(sigma, omega, dt, phi);
}

double link_length(Constellation constellation, const std::vector<double>& params) {
  if (constellation == Constellation::imaginary) return 0.0;
  if (params.size() < 2) throw ValidationError("parameter vector has the wrong length");
  if (params[1] == 0.0) return 0.0;
  if (params[0] == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(params[1] / (2.0 * params[0]));
}

TracePoint evaluate_point(const SweepSpec& spec, const std::vector<double>& params) {
  TracePoint p;
  p.params = params;
  p.T_hat = p.B_hat = p.objective = std::numeric_limits<double>::quiet_NaN();
  try {
    const DiscreteSpectrum s = spectrum_at(spec.constellation, spec.n, params);
    const double L = link_length(spec.constellation, params);
    if (!std::isfinite(L)) throw ValidationError("no finite collision distance (omega_1 = 0)");
    const auto lm = t_hat_b_hat(s, spec.measure, L);
    p.T_hat = lm.T_hat;
    p.B_hat = lm.B_hat;
    p.objective = lm.T_hat * lm.B_hat;
    if (!std::isfinite(p.objective) || !(p.objective > 0.0)) throw NumericError("non-finite objective");
  } catch (const std::exception& e) {
    p.error = e.what();
    p.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

SweepResult optimize(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  const std::size_t k = spec.ranges.size();

  SweepResult out;
  std::map<Key, std::size_t> index;
  auto add = [&](TracePoint p) {
    index.emplace(key_of(p.params), out.trace.size());
    out.trace.push_back(std::move(p));
  };

  std::ofstream sink;
  if (options.trace_path) {
    const bool reuse = options.resume && std::filesystem::exists(*options.trace_path);
    if (reuse)
      for (auto& p : load_trace(*options.trace_path, k)) add(std::move(p));
    sink.open(*options.trace_path, reuse ? std::ios::app : std::ios::trunc);
    if (!sink) throw ValidationError("cannot write trace file " + *options.trace_path);
    if (!reuse || out.trace.empty()) {
      if (reuse) sink << "\n";
      sink << csv_header(k) << "\n" << std::flush;
    }
  }

  auto run = [&](const std::vector<std::vector<double>>& points) {
    std::vector<std::vector<double>> todo;
    std::map<Key, bool> queued;
    for (const auto& p : points) {
      const Key key = key_of(p);
      if (index.contains(key) || queued.contains(key)) continue;
      queued.emplace(key, true);
      todo.push_back(p);
    }
    std::vector<TracePoint> res(todo.size());
    std::mutex io;
    parallel_for(todo.size(), [&](std::size_t i) {
      res[i] = evaluate_point(spec, todo[i]);
      if (sink.is_open()) {
        std::lock_guard lock(io);
        sink << csv_line(res[i]) << "\n" << std::flush;
      }
    });
    for (auto& p : res) {
      if (!p.ok() && options.on_failure) options.on_failure(p);
      add(std::move(p));
    }
  };

  auto best_of = [&](const std::vector<std::vector<double>>& points) -> const TracePoint* {
    const TracePoint* best = nullptr;
    for (const auto& p : points) {
      const auto it = index.find(key_of(p));
      if (it == index.end()) continue;
      const TracePoint& t = out.trace[it->second];
      if (t.ok() && (!best || better(t, *best))) best = &t;
    }
    return best;
  };

  std::vector<std::vector<double>> axes;
  for (const auto& r : spec.ranges) axes.push_back(r.values());
  const auto coarse = cartesian(axes);
  run(coarse);
  const TracePoint* coarse_best = best_of(coarse);
  if (!coarse_best) throw NumericError("no grid point could be evaluated");
  out.coarse_objective = coarse_best->objective;

  if (!spec.fine_steps.empty()) {
    const std::vector<double> center = coarse_best->params;
    std::vector<std::vector<double>> fine_axes;
    for (std::size_t i = 0; i < k; ++i)
      fine_axes.push_back(refine_axis(spec.ranges[i], center[i], spec.fine_steps[i], spec.refine_radius));
    run(cartesian(fine_axes));
  }

  const TracePoint* best = nullptr;
  for (const auto& t : out.trace)
    if (t.ok() && (!best || better(t, *best))) best = &t;

  out.best_params = best->params;
  out.best_T_hat = best->T_hat;
  out.best_B_hat = best->B_hat;
  out.best_objective = best->objective;
  const DiscreteSpectrum s = spectrum_at(spec.constellation, spec.n, out.best_params);
  for (const auto& e : s.entries()) {
    out.sigma.push_back(e.eigenvalue.sigma);
    out.omega.push_back(e.eigenvalue.omega);
    out.delta_t.push_back(delta_t(e.eigenvalue, e.amplitude.eta));
  }
  out.reference = reference_tbp(spec.measure);
  out.tbp_per_ev_ratio = tbp_per_eigenvalue(out.best_T_hat, out.best_B_hat, spec.n) / out.reference;
  if (spec.constellation == Constellation::real_axis) out.L_star = link_length(spec.constellation, out.best_params);
  return out;
}

SweepResult optimize_imaginary(const SweepSpec& spec, const SweepOptions& options) {
  if (spec.constellation != Constellation::imaginary)
    throw ValidationError("optimize_imaginary needs the imaginary constellation");
  return optimize(spec, options);
}

SweepResult optimize_real_axis(const SweepSpec& spec, const SweepOptions& options) {
  if (spec.constellation != Constellation::real_axis)
    throw ValidationError("optimize_real_axis needs the real-axis constellation");
  return optimize(spec, options);
}

double ratio_at(const SweepSpec& spec, const std::vector<double>& params) {
  const TracePoint p = evaluate_point(spec, params);
  if (!p.ok()) throw NumericError("point could not be evaluated: " + p.error);
  return tbp_per_eigenvalue(p.T_hat, p.B_hat, spec.n) / reference_tbp(spec.measure);
}

}  // namespace soliton
