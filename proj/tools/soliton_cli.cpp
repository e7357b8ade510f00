// soliton: command-line front end for synthesis, NFT, propagation,
// measurement, parameter sweeps, bound curves and figure data.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "soliton/asymptotics.hpp"
#include "soliton/darboux.hpp"
#include "soliton/error.hpp"
#include "soliton/figures.hpp"
#include "soliton/io.hpp"
#include "soliton/metrics.hpp"
#include "soliton/nlse.hpp"
#include "soliton/optimizer.hpp"
#include "soliton/zakharov_shabat.hpp"

namespace {

using namespace soliton;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string full(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// "-" means stdout
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  body(out);
}

void write_table(const std::string& path, const Table& t) {
  with_output(path, [&](std::ostream& out) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << full(row[i]);
      out << "\n";
    }
  });
}

// options shared by the measuring subcommands
struct MeasureFlags {
  double epsilon = 1e-4;
  std::optional<double> alpha;
  std::string definition = "energy";
  std::size_t phases = 16;
  std::size_t z_samples = 41;

  void attach(CLI::App* app, bool with_phases) {
    app->add_option("--epsilon", epsilon, "energy fraction outside T and B")->capture_default_str();
    app->add_option("--alpha", alpha, "threshold for --def threshold (default sqrt(2 epsilon))");
    app->add_option("--def", definition, "duration/bandwidth definition")
        ->check(CLI::IsMember({"energy", "threshold"}))
        ->capture_default_str();
    if (with_phases) {
      app->add_option("--phases", phases, "phase grid size M")->capture_default_str();
      app->add_option("--z-samples", z_samples, "distances sampled over [0, L]")->capture_default_str();
    }
  }

  [[nodiscard]] MeasureConfig config() const {
    MeasureConfig c;
    c.epsilon = epsilon;
    c.alpha = alpha;
    c.definition = definition == "threshold" ? Definition::threshold : Definition::energy;
    c.phase_points = phases;
    c.z_samples = z_samples;
    c.validate();
    return c;
  }
};

Constellation parse_constellation(const std::string& s) {
  if (s == "imag" || s == "imaginary") return Constellation::imaginary;
  return Constellation::real_axis;
}

std::string constellation_name(Constellation c) { return c == Constellation::imaginary ? "imaginary" : "real_axis"; }

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-soliton synthesis, NFT, propagation and time-bandwidth analysis"};
  app.require_subcommand(1);
  std::function<void()> action;

  // synth
  std::string spectrum_path, signal_path, out_path = "-";
  double grid_epsilon = 1e-4;
  std::optional<double> grid_dt;
  std::optional<std::size_t> grid_samples;
  auto* synth = app.add_subcommand("synth", "spectrum file -> signal CSV");
  synth->add_option("--spectrum", spectrum_path, "spectrum file")->required();
  synth->add_option("--out", out_path, "signal CSV ('-' for stdout)")->capture_default_str();
  synth->add_option("--epsilon", grid_epsilon, "epsilon used to size the grid")->capture_default_str();
  synth->add_option("--dt", grid_dt, "sample spacing (default: automatic)");
  synth->add_option("--samples", grid_samples, "sample count, rounded up to a power of two");
  synth->callback([&] {
    action = [&] {
      const auto file = read_spectrum(spectrum_path);
      TimeGrid g = auto_grid(file.spectrum, grid_epsilon);
      if (grid_dt || grid_samples) {
        const double center = g.t_start + 0.5 * static_cast<double>(g.n_samples - 1) * g.dt;
        g = TimeGrid::centered(center, grid_dt.value_or(g.dt), grid_samples.value_or(g.n_samples));
      }
      const auto r = synthesize_checked(file.spectrum, g);
      if (r.edge_ratio > 1e-6) warn("signal does not decay at the grid edges (ratio " + num(r.edge_ratio) + ")");
      with_output(out_path, [&](std::ostream& out) { write_signal_csv(out, r.signal); });
    };
  });

  // nft
  std::size_t seeds = 20;
  auto* nft_cmd = app.add_subcommand("nft", "signal CSV -> spectrum file");
  nft_cmd->add_option("--signal", signal_path, "signal CSV")->required();
  nft_cmd->add_option("--out", out_path, "spectrum file ('-' for stdout)")->capture_default_str();
  nft_cmd->add_option("--seeds", seeds, "Newton seeds per axis")->capture_default_str();
  nft_cmd->callback([&] {
    action = [&] {
      const auto sig = read_signal_csv(signal_path);
      if (sig.edge_ratio() > 1e-6) warn("signal does not decay at the grid edges");
      const auto s = nft(sig, std::nullopt, seeds);
      with_output(out_path, [&](std::ostream& out) { out << format_spectrum(s); });
    };
  });

  // propagate
  double z_total = 1.0;
  std::optional<std::size_t> steps;
  std::size_t snapshots = 0;
  auto* prop = app.add_subcommand("propagate", "split-step propagation of a signal CSV");
  prop->add_option("--signal", signal_path, "input signal CSV")->required();
  prop->add_option("--z", z_total, "normalized distance")->required();
  prop->add_option("--steps", steps, "step count (default: amplitude-aware dz <= 1e-3)");
  prop->add_option("--snapshots", snapshots, "intermediate signals written as <out>_snap_<i>.csv");
  prop->add_option("--out", out_path, "output signal CSV ('-' for stdout)")->capture_default_str();
  prop->callback([&] {
    action = [&] {
      const auto sig = read_signal_csv(signal_path);
      PropagationPlan plan = PropagationPlan::over(z_total, sig);
      if (steps) plan.n_steps = *steps;
      plan.validate();
      if (snapshots > 0 && out_path == "-") throw ValidationError("--snapshots needs a file for --out");
      const auto r = propagate(sig, plan, snapshots);
      if (r.aliasing_warning) warn("spectrum reaches the Nyquist edge during propagation");
      with_output(out_path, [&](std::ostream& out) { write_signal_csv(out, r.signal); });
      const std::filesystem::path base(out_path);
      for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
        auto p = base;
        p.replace_filename(base.stem().string() + "_snap_" + std::to_string(i + 1) + ".csv");
        write_signal_csv(p.string(), r.snapshots[i]);
        std::cerr << "snapshot " << i + 1 << " z=" << num(r.snapshot_z[i]) << " -> " << p.string() << "\n";
      }
    };
  });

  // measure
  MeasureFlags mflags;
  double link = 0.0;
  std::string z_csv;
  auto* meas = app.add_subcommand("measure", "T and B of a signal, or T_hat and B_hat of a spectrum");
  auto* m_sig = meas->add_option("--signal", signal_path, "signal CSV");
  auto* m_spec = meas->add_option("--spectrum", spectrum_path, "spectrum file");
  m_sig->excludes(m_spec);
  mflags.attach(meas, true);
  meas->add_option("--L", link, "link length for T_hat (spectrum input)")->capture_default_str();
  meas->add_option("--z-csv", z_csv, "write z,T_max,B_max (spectrum input)");
  meas->callback([&] {
    action = [&] {
      const MeasureConfig cfg = mflags.config();
      if (signal_path.empty() == spectrum_path.empty()) throw ValidationError("give exactly one of --signal, --spectrum");
      if (!signal_path.empty()) {
        const auto r = measure(read_signal_csv(signal_path), cfg);
        std::cout << "T: " << num(r.T) << "\nT_interval: [" << num(r.T_interval.lo) << ", " << num(r.T_interval.hi)
                  << "]\nB: " << num(r.B) << "\nB_interval: [" << num(r.B_interval.lo) << ", "
                  << num(r.B_interval.hi) << "]\nTB: " << num(r.T * r.B) << "\n";
        return;
      }
      const auto file = read_spectrum(spectrum_path);
      const auto& s = file.spectrum;
      const auto pulse = measure(synthesize(s, auto_grid(s, cfg.epsilon)), cfg);
      const auto lm = t_hat_b_hat(s, cfg, link);
      const double ref = reference_tbp(cfg);
      std::cout << "N: " << s.size() << "\nT: " << num(pulse.T) << "\nB: " << num(pulse.B)
                << "\nTB: " << num(pulse.T * pulse.B) << "\nT_hat: " << num(lm.T_hat) << "\nB_hat: " << num(lm.B_hat)
                << "\nTB_per_eigenvalue: " << num(tbp_per_eigenvalue(lm.T_hat, lm.B_hat, s.size()))
                << "\nreference_TB: " << num(ref)
                << "\nratio: " << num(tbp_per_eigenvalue(lm.T_hat, lm.B_hat, s.size()) / ref) << "\n";
      if (!z_csv.empty()) {
        Table t{{"z", "T_max", "B_max"}, {}};
        for (std::size_t i = 0; i < lm.z.size(); ++i) t.rows.push_back({lm.z[i], lm.T_max[i], lm.B_max[i]});
        write_table(z_csv, t);
      }
    };
  });

  // sweep
  MeasureFlags sflags;
  std::optional<std::size_t> entry;
  double dt_from = 0.0, dt_to = 6.0, dt_step = 0.1;
  auto* sweep = app.add_subcommand("sweep", "T_max and B_max against the shift delta_t of one entry");
  sweep->add_option("--spectrum", spectrum_path, "spectrum file")->required();
  sweep->add_option("--entry", entry, "1-based entry whose delta_t is swept (default: last)");
  sweep->add_option("--from", dt_from, "first delta_t")->capture_default_str();
  sweep->add_option("--to", dt_to, "last delta_t")->capture_default_str();
  sweep->add_option("--step", dt_step, "delta_t step")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV delta_t,T_max,B_max ('-' for stdout)")->capture_default_str();
  sflags.attach(sweep, true);
  sweep->callback([&] {
    action = [&] {
      const MeasureConfig cfg = sflags.config();
      const auto file = read_spectrum(spectrum_path);
      const std::size_t k = entry.value_or(file.spectrum.size());
      if (k < 1 || k > file.spectrum.size()) throw ValidationError("--entry out of range");
      if (!(dt_step > 0.0) || dt_to < dt_from) throw ValidationError("--from/--to/--step describe an empty range");
      Table t{{"delta_t", "T_max", "B_max"}, {}};
      for (double dt : ParamRange{dt_from, dt_to, dt_step}.values()) {
        auto entries = std::vector<SpectrumEntry>(file.spectrum.entries().begin(), file.spectrum.entries().end());
        entries[k - 1].amplitude.eta = eta_of(entries[k - 1].eigenvalue, dt);
        const auto pm = t_max_b_max(DiscreteSpectrum(entries), cfg);
        t.rows.push_back({dt, pm.T_max, pm.B_max});
      }
      write_table(out_path, t);
    };
  });

  // optimize
  MeasureFlags oflags;
  std::string constellation = "imag", resume_path, trace_path = "trace.csv", optimum_path = "optimum.json";
  std::size_t order = 2;
  bool paper = false;
  auto* opt = app.add_subcommand("optimize", "grid search for the smallest T_hat B_hat");
  opt->add_option("--constellation", constellation, "eigenvalue family")
      ->check(CLI::IsMember({"imag", "real"}))
      ->capture_default_str();
  opt->add_option("--n", order, "number of eigenvalues (2 or 3)")->capture_default_str();
  oflags.attach(opt, true);
  auto* phases_opt = opt->get_option("--phases");
  opt->add_flag("--paper-fidelity", paper, "full published grids with M = 128");
  opt->add_option("--trace", trace_path, "trace CSV written during the sweep")->capture_default_str();
  opt->add_option("--resume", resume_path, "continue the sweep recorded in this trace CSV");
  opt->add_option("--out", optimum_path, "spectrum file for the optimum")->capture_default_str();
  opt->callback([&] {
    action = [&] {
      const Constellation c = parse_constellation(constellation);
      MeasureConfig cfg = oflags.config();
      SweepSpec spec = paper ? SweepSpec::paper_fidelity(c, order, cfg) : SweepSpec::desk(c, order, cfg);
      if (phases_opt->count() > 0) spec.measure.phase_points = oflags.phases;
      spec.validate();
      SweepOptions so;
      so.trace_path = resume_path.empty() ? trace_path : resume_path;
      so.resume = !resume_path.empty();
      std::size_t failures = 0;
      so.on_failure = [&](const TracePoint& p) {
        ++failures;
        std::string at;
        for (double v : p.params) at += (at.empty() ? "" : ",") + num(v);
        warn("point (" + at + ") skipped: " + p.error);
      };
      const SweepResult r = optimize(spec, so);
      const auto names = parameter_names(c, order);
      std::cout << "constellation: " << constellation_name(c) << "\nN: " << order
                << "\nphase_points: " << spec.measure.phase_points << "\npoints: " << r.trace.size()
                << "\nfailed_points: " << failures << "\n";
      for (std::size_t i = 0; i < names.size(); ++i) std::cout << names[i] << ": " << num(r.best_params[i]) << "\n";
      std::cout << "T_hat: " << num(r.best_T_hat) << "\nB_hat: " << num(r.best_B_hat)
                << "\nobjective: " << num(r.best_objective) << "\ncoarse_objective: " << num(r.coarse_objective)
                << "\nreference_TB: " << num(r.reference) << "\nratio: " << num(r.tbp_per_ev_ratio) << "\n";
      if (r.L_star) std::cout << "L_star: " << num(*r.L_star) << "\n";
      write_spectrum(optimum_path, spectrum_at(c, order, r.best_params));
    };
  });

  // bound
  std::size_t n_max = 10;
  double bound_epsilon = 1e-4;
  auto* bound = app.add_subcommand("bound", "lower bound on T B per eigenvalue against N");
  bound->add_option("--n-max", n_max, "largest N")->capture_default_str();
  bound->add_option("--constellation", constellation, "eigenvalue family")
      ->check(CLI::IsMember({"imag", "real"}))
      ->capture_default_str();
  bound->add_option("--epsilon", bound_epsilon, "energy fraction outside T and B")->capture_default_str();
  bound->add_option("--out", out_path, "CSV N,normalized_bound,param_... ('-' for stdout)")->capture_default_str();
  bound->callback([&] {
    action = [&] {
      const BoundCurve curve = lower_bound_curve(n_max, parse_constellation(constellation), bound_epsilon);
      std::size_t width = 0;
      for (const auto& e : curve.entries) width = std::max(width, e.params.size());
      with_output(out_path, [&](std::ostream& out) {
        out << "N,normalized_bound";
        for (std::size_t i = 1; i <= width; ++i) out << ",param_" << i;
        out << "\n";
        for (const auto& e : curve.entries) {
          out << e.n << "," << full(e.normalized_bound);
          for (std::size_t i = 0; i < width; ++i) out << "," << (i < e.params.size() ? full(e.params[i]) : "");
          out << "\n";
          if (e.flagged) warn("N=" + std::to_string(e.n) + ": local minimizer did not converge");
        }
      });
    };
  });

  // figures
  MeasureFlags fflags;
  std::string which = "all", outdir = ".";
  auto* fig = app.add_subcommand("figures", "CSV data for the duration, propagation and bound figures");
  fig->add_option("--which", which, "figure to regenerate")
      ->check(CLI::IsMember({"fig3", "fig5", "fig6", "all"}))
      ->capture_default_str();
  fig->add_option("--outdir", outdir, "output directory")->capture_default_str();
  fig->add_option("--n-max", n_max, "largest N for fig6")->capture_default_str();
  fig->add_flag("--paper-fidelity", paper, "M = 128 phase grid");
  fflags.attach(fig, true);
  auto* fig_phases = fig->get_option("--phases");
  fig->callback([&] {
    action = [&] {
      MeasureConfig cfg = fflags.config();
      if (paper && fig_phases->count() == 0) cfg.phase_points = 128;
      std::filesystem::create_directories(outdir);
      const std::filesystem::path dir(outdir);
      if (which == "fig3" || which == "all") write_table((dir / "fig3.csv").string(), delta_t_study(cfg));
      if (which == "fig5" || which == "all") write_table((dir / "fig5.csv").string(), propagation_study(cfg));
      if (which == "fig6" || which == "all") {
        for (const auto c : {Constellation::imaginary, Constellation::real_axis})
          write_table((dir / ("fig6_" + constellation_name(c) + ".csv")).string(), bound_study(c, n_max, cfg));
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DegenerateSpectrumError& e) {
    std::cerr << "error: degenerate spectrum: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const MeasurementError& e) {
    std::cerr << "error: measurement failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
