#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace aqed::channels {

using Complex = std::complex<double>;

// All rates share one unit; the library works in units of a reference Gamma.
struct ChannelParams {
  std::string label;
  double gamma_k = 1.0;
  double delta_k = 0.0;
  double gamma_sc = 0.0;
  std::optional<Eigen::Vector2d> k_vec;

  void validate() const;
};

struct EITConfig {
  Complex omega_c{0.0, 0.0};
  double delta_p = 0.0;
  double delta_c = 0.0;

  // Two-photon detuning delta_p + delta_c.
  double delta() const { return delta_p + delta_c; }
};

// Immutable snapshot of one channel at one operating point.
struct DerivedChannel {
  Complex r;
  Complex r_tilde;
  double omega_k = 0;
  double gamma_ryd = 0;
  double gamma0 = 0;
  double r_res = 0;
  double delta = 0;

  // r - r_tilde, the atomic (nonlinear) part of the output amplitude per unit E_p.
  Complex x() const { return r - r_tilde; }
  // gamma/2 + i(omega - delta), the complex rate of the driven Rydberg mode.
  Complex pole() const { return {0.5 * gamma_ryd, omega_k - delta}; }
};

/// Two-level array reflectivity r = -Gamma / (Gamma + gamma_sc + 2i(Delta - delta_p)).
Complex two_level_reflectivity(const ChannelParams& ch, double delta_p);

struct RydbergMode {
  double omega_k = 0;
  double gamma_ryd = 0;
};

/// gamma/2 + i omega = -(2|Omega_c|^2/Gamma) r.
RydbergMode rydberg_mode_params(const ChannelParams& ch, const EITConfig& eit);

/// r_tilde = r delta / (delta - omega + i gamma/2). Exactly zero at delta = 0.
Complex eit_reflectivity(const ChannelParams& ch, const EITConfig& eit);

/// Same quantity written as -(Gamma/2) delta / (D delta + i|Omega_c|^2) with
/// D = (Gamma + gamma_sc)/2 + i(Delta - delta_p). Independent of the Rydberg-mode route.
Complex eit_reflectivity_closed_form(const ChannelParams& ch, const EITConfig& eit);

double transparency_width(const ChannelParams& ch, const EITConfig& eit);
double resonant_reflectivity(const ChannelParams& ch);

DerivedChannel derive(const ChannelParams& ch, const EITConfig& eit);

/// Coherent drive of the collective Rydberg mode,
/// Omega_k = -r (2 Omega_c / Gamma) (sqrt(N) d* / hbar) E_p.
/// `dipole_over_hbar` is d/hbar in the units that make the product a rate.
Complex effective_drive(const ChannelParams& ch, const EITConfig& eit, Complex e_p, int n_atoms,
                        Complex dipole_over_hbar);

/// Same drive written through the coupling field scale: with eps = E_p / E_c^*,
/// Omega_k = -r (2|Omega_c|^2/Gamma) eps.
Complex effective_drive_scaled(const DerivedChannel& dc, Complex eps);

/// S = 2|Omega_k|^2 / ((omega - delta)^2 + (gamma/2)^2).
double saturation(const ChannelParams& ch, const EITConfig& eit, Complex omega_drive);
double saturation(const DerivedChannel& dc, Complex omega_drive);

/// S = 2 |eps|^2 |1 - r_tilde/r|^2, eps = E_p/E_c^*, i.e. 2N|E_p|^2|d|^2/|hbar Omega_c|^2 |1 - r_tilde/r|^2.
double saturation_from_field(const DerivedChannel& dc, Complex eps);

/// |eps| giving saturation S, the inverse of saturation_from_field.
double field_for_saturation(const DerivedChannel& dc, double s);

struct ResonancePoint {
  // delta on the full-absorption hyperbole delta/gamma0 = (Gamma/4)/(delta_p - Delta);
  // empty at delta_p = Delta where it is unbounded.
  std::optional<double> absorption_delta;
  bool at_resonance = false;
  // delta on the collective two-photon resonance delta = omega_k(delta_p).
  double rydberg_delta = 0;
};

ResonancePoint resonance_curves(const ChannelParams& ch, Complex omega_c, double delta_p);

/// eta^2 Gamma times a user prefactor (only the scaling is known).
double scattering_loss_estimate(double eta, double gamma_k, double prefactor = 1.0);

enum class FieldRegime { Weak, Marginal, Strong };

inline constexpr double kWeakFieldLimit = 1e-2;
inline constexpr double kStrongFieldLimit = 1.0;

FieldRegime classify_saturation(double s);
const char* to_string(FieldRegime regime);

/// K copies of one channel, labelled "<label>1", "<label>2", ...
std::vector<ChannelParams> identical_channels(const ChannelParams& prototype, int count);

}  // namespace aqed::channels
