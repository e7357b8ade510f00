#include "soliton/io.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "soliton/error.hpp"

namespace soliton {

namespace {

using json = nlohmann::json;

double number_at(const json& obj, const std::string& key, const std::string& where, std::optional<double> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ValidationError(where + "." + key + ": missing");
  }
  if (!it->is_number()) throw ValidationError(where + "." + key + ": expected a number");
  return it->get<double>();
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SpectrumFile parse_spectrum(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("spectrum file line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON");
  }
  if (!doc.is_object()) throw ValidationError("spectrum file: top level must be an object");
  const auto entries = doc.find("entries");
  if (entries == doc.end() || !entries->is_array()) throw ValidationError("entries: missing or not an array");
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw ValidationError("n: expected an integer");
    if (doc["n"].get<long long>() != static_cast<long long>(entries->size()))
      throw ValidationError("n: does not match the number of entries");
  }

  std::vector<SpectrumEntry> list;
  for (std::size_t k = 0; k < entries->size(); ++k) {
    const auto& e = (*entries)[k];
    const std::string where = "entries[" + std::to_string(k) + "]";
    if (!e.is_object()) throw ValidationError(where + ": expected an object");
    SpectrumEntry s;
    s.eigenvalue.sigma = number_at(e, "sigma", where, std::nullopt);
    s.eigenvalue.omega = number_at(e, "omega", where, 0.0);
    const bool has_eta = e.contains("eta");
    const bool has_dt = e.contains("delta_t");
    if (has_eta == has_dt) throw ValidationError(where + ": give exactly one of eta and delta_t");
    if (has_eta) {
      s.amplitude.eta = number_at(e, "eta", where, std::nullopt);
    } else {
      if (!(s.eigenvalue.sigma > 0.0)) throw ValidationError(where + ".sigma: must be > 0");
      s.amplitude.eta = eta_of(s.eigenvalue, number_at(e, "delta_t", where, std::nullopt));
    }
    s.amplitude.phi = number_at(e, "phi", where, 0.0);
    list.push_back(s);
  }

  std::optional<PhysicalScaling> physical;
  if (const auto p = doc.find("physical"); p != doc.end()) {
    if (!p->is_object()) throw ValidationError("physical: expected an object");
    PhysicalScaling ps;
    ps.beta2 = number_at(*p, "beta2_s2_per_m", "physical", ps.beta2);
    ps.gamma = number_at(*p, "gamma_per_W_m", "physical", ps.gamma);
    ps.T0 = number_at(*p, "T0_s", "physical", ps.T0);
    ps.validate();
    physical = ps;
  }
  return {DiscreteSpectrum(std::move(list)), physical};
}

SpectrumFile read_spectrum(const std::string& path) { return parse_spectrum(read_file(path)); }

std::string format_spectrum(const DiscreteSpectrum& spectrum, const std::optional<PhysicalScaling>& physical) {
  json doc;
  doc["n"] = spectrum.size();
  doc["entries"] = json::array();
  for (const auto& e : spectrum.entries()) {
    doc["entries"].push_back(
        {{"sigma", e.eigenvalue.sigma}, {"omega", e.eigenvalue.omega}, {"eta", e.amplitude.eta}, {"phi", e.amplitude.phi}});
  }
  if (physical) {
    doc["physical"] = {
        {"beta2_s2_per_m", physical->beta2}, {"gamma_per_W_m", physical->gamma}, {"T0_s", physical->T0}};
  }
  return doc.dump(2) + "\n";
}

void write_spectrum(const std::string& path, const DiscreteSpectrum& spectrum,
                    const std::optional<PhysicalScaling>& physical) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << format_spectrum(spectrum, physical);
}

SampledSignal parse_signal_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("signal CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im,abs") throw ValidationError("signal CSV line 1: expected header t,re,im,abs");
  std::vector<double> t;
  std::vector<cplx> q;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[4];
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    try {
      while (std::getline(ss, cell, ',')) {
        if (c >= 4) throw ValidationError("");
        v[c++] = std::stod(cell);
      }
    } catch (const std::exception&) {
      throw ValidationError("signal CSV line " + std::to_string(row) + ": expected 4 numbers");
    }
    if (c < 3) throw ValidationError("signal CSV line " + std::to_string(row) + ": expected 4 numbers");
    if (!t.empty() && !(v[0] > t.back()))
      throw ValidationError("signal CSV line " + std::to_string(row) + ": t must be ascending");
    t.push_back(v[0]);
    q.emplace_back(v[1], v[2]);
  }
  if (t.size() < 2) throw ValidationError("signal CSV: need at least 2 samples");
  if (!std::has_single_bit(t.size())) throw ValidationError("signal CSV: sample count must be a power of two");
  TimeGrid g;
  g.t_start = t.front();
  g.n_samples = t.size();
  g.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - g.t(i)) > 1e-6 * g.dt)
      throw ValidationError("signal CSV line " + std::to_string(i + 2) + ": samples are not evenly spaced");
  }
  return SampledSignal(g, std::move(q));
}

SampledSignal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  return parse_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const SampledSignal& signal) {
  out << "t,re,im,abs\n" << std::setprecision(17);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const cplx v = signal.samples[i];
    out << signal.grid.t(i) << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
  }
}

void write_signal_csv(const std::string& path, const SampledSignal& signal) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  write_signal_csv(out, signal);
}

}  // namespace soliton
