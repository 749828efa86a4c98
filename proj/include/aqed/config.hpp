#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "aqed/blockade.hpp"
#include "aqed/channels.hpp"
#include "aqed/fieldobs.hpp"
#include "aqed/lattice.hpp"
#include "aqed/units.hpp"

namespace aqed::config {

enum class Route { Analytic, Numeric };
enum class Spacing { Linear, Log };
enum class OutputUnits { MHz, Dimensionless };

// One scan axis. `x` is the single-photon detuning delta_p - Delta_1, `y` the
// two-photon detuning delta. Values are stored in the axis unit.
struct Axis {
  double min = 0;
  double max = 0;
  int points = 0;
  units::RateUnit unit = units::RateUnit::Gamma;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

struct LatticeInput {
  lattice::LatticeSpec spec;  // lengths in m, gamma_atom in MHz (nu = rate/2pi)
  lattice::SumMode mode = lattice::SumMode::FiniteArray;
  bool use_sum = false;       // derive Gamma from the lattice sum instead of the closed form
};

// Fully resolved physics. Rates are in units of Gamma_1 (the library's internal scale).
struct Physics {
  std::optional<double> gamma_mhz;  // Gamma_1 / 2pi in MHz, when known
  std::optional<LatticeInput> lattice;
  channels::ChannelParams channel1;
  channels::ChannelParams channel2;
  channels::Complex omega_c{0.25, 0.0};
  double detuning = 0;  // delta_p - Delta_1
  double delta = 0;     // two-photon detuning
  double saturation = 1e-4;
  fieldobs::FieldScale scale{};
  fieldobs::Port port = fieldobs::Port::Transmission;
  std::optional<blockade::VdwSpec> vdw;  // c6 in MHz um^6, waist in um
  std::optional<double> vdw_lattice_um;  // site spacing for the validity report

  double delta_p() const { return channel1.delta_k + detuning; }
  channels::EITConfig eit(double detuning_, double delta_) const;
  channels::DerivedChannel derive(int which, double detuning_, double delta_) const;
  double gamma0() const { return 4.0 * std::norm(omega_c) / channel1.gamma_k; }
  units::ReferenceScales scales() const;
};

struct ScanConfig {
  std::string preset;
  std::string notes;
  Physics physics;
  std::optional<Axis> x;
  std::optional<Axis> y;
  bool y_follows_rydberg_resonance = false;  // y = omega(x) instead of a grid axis
  std::vector<double> taus;                  // delays as written
  bool tau_in_gamma_ryd = true;              // units of 1/gamma_2 (per point) instead of 1/Gamma_1

  // Delays in units of 1/Gamma_1 at an operating point with channel-2 width gamma_2.
  std::vector<double> taus_at(double gamma_2) const;
  Route route = Route::Analytic;
  OutputUnits output_units = OutputUnits::Dimensionless;
};

/// Parses a YAML document; throws ConfigError with the offending field and line.
ScanConfig parse_config(const std::string& text, const std::string& source = "<config>");
ScanConfig load_config(const std::string& path);

/// Directory holding the shipped presets (compile-time default, overridable by AQED_PRESET_DIR).
std::string preset_directory();
ScanConfig load_preset(const std::string& name);
std::vector<std::string> preset_names();

const char* to_string(Route route);

}  // namespace aqed::config
