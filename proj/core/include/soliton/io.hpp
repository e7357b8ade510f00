#pragma once

// File formats shared by the command-line tools.
//
// Spectrum file (JSON):
//   {"n": 2,
//    "entries": [{"sigma": 0.58, "omega": 0, "eta": 10.2, "phi": 0}, ...],
//    "physical": {"beta2_s2_per_m": -2.17e-26, "gamma_per_W_m": 1.3e-3, "T0_s": 1e-11}}
// Each entry gives either "eta" or "delta_t" (eta = exp(2 sigma delta_t));
// "omega" and "phi" default to 0 and "physical" is optional.
//
// Signal CSV: header t,re,im,abs, one row per sample, t ascending and evenly
// spaced, power-of-two row count.

#include <iosfwd>
#include <optional>
#include <string>

#include "soliton/signal.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

struct SpectrumFile {
  DiscreteSpectrum spectrum;
  std::optional<PhysicalScaling> physical;
};

/// Throws ValidationError naming the line or field at fault.
SpectrumFile parse_spectrum(const std::string& text);
SpectrumFile read_spectrum(const std::string& path);
std::string format_spectrum(const DiscreteSpectrum& spectrum,
                            const std::optional<PhysicalScaling>& physical = std::nullopt);
void write_spectrum(const std::string& path, const DiscreteSpectrum& spectrum,
                    const std::optional<PhysicalScaling>& physical = std::nullopt);

/// Throws ValidationError naming the line at fault.
SampledSignal parse_signal_csv(std::istream& in);
SampledSignal read_signal_csv(const std::string& path);
void write_signal_csv(std::ostream& out, const SampledSignal& signal);
void write_signal_csv(const std::string& path, const SampledSignal& signal);

}  // namespace soliton
