#include "aqed/channels.hpp"

#include <cmath>

#include "aqed/errors.hpp"

namespace aqed::channels {

void ChannelParams::validate() const {
  if (!(gamma_k > 0)) throw DomainError("channel " + label + ": gamma_k must be positive");
  if (!(gamma_sc >= 0)) throw DomainError("channel " + label + ": gamma_sc must be non-negative");
}

Complex two_level_reflectivity(const ChannelParams& ch, double delta_p) {
  ch.validate();
  return -ch.gamma_k / Complex(ch.gamma_k + ch.gamma_sc, 2.0 * (ch.delta_k - delta_p));
}

double transparency_width(const ChannelParams& ch, const EITConfig& eit) {
  return 4.0 * std::norm(eit.omega_c) / ch.gamma_k;
}

double resonant_reflectivity(const ChannelParams& ch) { return ch.gamma_k / (ch.gamma_k + ch.gamma_sc); }

RydbergMode rydberg_mode_params(const ChannelParams& ch, const EITConfig& eit) {
  const Complex r = two_level_reflectivity(ch, eit.delta_p);
  const Complex half_gamma_plus_i_omega = -(2.0 * std::norm(eit.omega_c) / ch.gamma_k) * r;
  return {half_gamma_plus_i_omega.imag(), 2.0 * half_gamma_plus_i_omega.real()};
}

Complex eit_reflectivity(const ChannelParams& ch, const EITConfig& eit) {
  const double delta = eit.delta();
  if (delta == 0.0) return 0.0;
  const Complex r = two_level_reflectivity(ch, eit.delta_p);
  const auto mode = rydberg_mode_params(ch, eit);
  return r * delta / Complex(delta - mode.omega_k, 0.5 * mode.gamma_ryd);
}

Complex eit_reflectivity_closed_form(const ChannelParams& ch, const EITConfig& eit) {
  ch.validate();
  const double delta = eit.delta();
  const Complex d(0.5 * (ch.gamma_k + ch.gamma_sc), ch.delta_k - eit.delta_p);
  const Complex denom = d * delta + Complex(0.0, std::norm(eit.omega_c));
  if (denom == 0.0) throw DomainError("eit_reflectivity: undefined at delta = 0 with omega_c = 0");
  return -0.5 * ch.gamma_k * delta / denom;
}

DerivedChannel derive(const ChannelParams& ch, const EITConfig& eit) {
  DerivedChannel dc;
  dc.r = two_level_reflectivity(ch, eit.delta_p);
  dc.r_tilde = eit_reflectivity(ch, eit);
  const auto mode = rydberg_mode_params(ch, eit);
  dc.omega_k = mode.omega_k;
  dc.gamma_ryd = mode.gamma_ryd;
  dc.gamma0 = transparency_width(ch, eit);
  dc.r_res = resonant_reflectivity(ch);
  dc.delta = eit.delta();
  return dc;
}

Complex effective_drive(const ChannelParams& ch, const EITConfig& eit, Complex e_p, int n_atoms,
                        Complex dipole_over_hbar) {
  if (n_atoms < 1) throw DomainError("effective_drive: n_atoms must be >= 1");
  const Complex r = two_level_reflectivity(ch, eit.delta_p);
  return -r * (2.0 * eit.omega_c / ch.gamma_k) * std::sqrt(double(n_atoms)) * std::conj(dipole_over_hbar) * e_p;
}

Complex effective_drive_scaled(const DerivedChannel& dc, Complex eps) { return -dc.r * (0.5 * dc.gamma0) * eps; }

double saturation(const DerivedChannel& dc, Complex omega_drive) {
  const double denom = std::norm(dc.pole());
  if (!(denom > 0)) throw DomainError("saturation: Rydberg mode undefined (omega_c = 0 and delta = 0)");
  return 2.0 * std::norm(omega_drive) / denom;
}

double saturation(const ChannelParams& ch, const EITConfig& eit, Complex omega_drive) {
  return saturation(derive(ch, eit), omega_drive);
}

double saturation_from_field(const DerivedChannel& dc, Complex eps) {
  if (dc.r == 0.0) throw DomainError("saturation_from_field: r = 0");
  return 2.0 * std::norm(eps) * std::norm(1.0 - dc.r_tilde / dc.r);
}

double field_for_saturation(const DerivedChannel& dc, double s) {
  if (s < 0) throw DomainError("field_for_saturation: S must be non-negative");
  const double per_unit = saturation_from_field(dc, 1.0);
  if (!(per_unit > 0)) throw DomainError("field_for_saturation: channel is not driven (r_tilde = r)");
  return std::sqrt(s / per_unit);
}

ResonancePoint resonance_curves(const ChannelParams& ch, Complex omega_c, double delta_p) {
  ch.validate();
  if (omega_c == 0.0) throw DomainError("resonance_curves: omega_c must be non-zero");
  const EITConfig eit{omega_c, delta_p, 0.0};
  const double gamma0 = transparency_width(ch, eit);
  ResonancePoint p;
  const double detuning = delta_p - ch.delta_k;
  if (detuning == 0.0) {
    p.at_resonance = true;
  } else {
    p.absorption_delta = gamma0 * 0.25 * ch.gamma_k / detuning;
  }
  p.rydberg_delta = -0.5 * gamma0 * two_level_reflectivity(ch, delta_p).imag();
  return p;
}

double scattering_loss_estimate(double eta, double gamma_k, double prefactor) {
  return prefactor * eta * eta * gamma_k;
}

FieldRegime classify_saturation(double s) {
  if (s <= kWeakFieldLimit) return FieldRegime::Weak;
  if (s <= kStrongFieldLimit) return FieldRegime::Marginal;
  return FieldRegime::Strong;
}

const char* to_string(FieldRegime regime) {
  switch (regime) {
    case FieldRegime::Weak: return "weak";
    case FieldRegime::Marginal: return "marginal";
    case FieldRegime::Strong: return "strong";
  }
  return "?";
}

std::vector<ChannelParams> identical_channels(const ChannelParams& prototype, int count) {
  std::vector<ChannelParams> out(count, prototype);
  for (int i = 0; i < count; ++i) out[i].label = prototype.label + std::to_string(i + 1);
  return out;
}

}  // namespace aqed::channels
