#pragma once

#include <Eigen/Core>
#include <complex>

namespace aqed::blockade {

using Complex = std::complex<double>;

// C6 in rate * length^6 with the same rate and length units used by the caller
// (shipped presets use MHz * um^6, i.e. C6/h, and um).
struct VdwSpec {
  double c6 = 0;
  double beam_waist = 0;

  void validate() const;
};

double vdw_potential(const VdwSpec& spec, double r);

/// V_nm = C6/|r_n - r_m|^6 with a zero diagonal; any 2D point set.
Eigen::MatrixXd pairwise_potential(const VdwSpec& spec, const Eigen::Matrix2Xd& positions);

struct BlockadeRadius {
  double radius = 0;
  bool blockade = false;  // false when C6 = 0
};

/// R_b = (C6 / |gamma + 2i(omega - delta)|)^{1/6}.
BlockadeRadius blockade_radius(const VdwSpec& spec, double gamma_ryd, double omega_k, double delta);

/// Resonant form R_b = (C6/gamma)^{1/6}, the delta = omega case of the above.
BlockadeRadius blockade_radius_resonant(const VdwSpec& spec, double gamma_ryd);

struct TwoExcitationAmplitudes {
  Complex c0{1.0, 0.0};
  Eigen::VectorXcd c1;
  Eigen::MatrixXcd c2;  // symmetric, zero diagonal
};

/// Lowest-order steady amplitudes of the driven real-space ensemble:
/// c1_n = -Omega_n / lambda, c2_nm = c1_n c1_m / (1 + i V_nm / (2 lambda)),
/// lambda = gamma/2 + i(omega - delta).
TwoExcitationAmplitudes two_excitation_amplitudes(const Eigen::VectorXcd& drive, double gamma, double omega,
                                                  double delta, const Eigen::MatrixXd& vdw);

/// |c2_nm / (c1_n c1_m)| = 1/|1 + iV/(2 lambda)|.
double suppression_factor(double v, double gamma, double omega, double delta);

struct ValidityReport {
  double blockade_radius = 0;
  double beam_waist = 0;
  double ratio = 0;               // w / R_b
  double worst_suppression = 0;   // largest |c2/(c1 c1)| over pairs inside the waist
  bool valid = false;             // w < R_b
};

/// Compares the waist with the resonant blockade radius. With `lattice_a > 0` the
/// worst pair is searched over lattice sites inside the waist; otherwise the pair
/// separation is taken as the waist diameter.
ValidityReport blockade_validity(const VdwSpec& spec, double gamma_ryd, double lattice_a = 0.0);

}  // namespace aqed::blockade
