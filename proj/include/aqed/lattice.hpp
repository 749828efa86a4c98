#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "aqed/errors.hpp"

namespace aqed::lattice {

template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;
template <typename Real>
using Dyadic = Eigen::Matrix<std::complex<Real>, 3, 3>;

// Square n_side x n_side array in the z = 0 plane. Lengths share one unit
// (a and lambda_p); gamma_atom sets the unit of the returned rates.
struct LatticeSpec {
  double a = 0;
  int n_side = 1;
  Eigen::Vector3d e_d = Eigen::Vector3d::UnitX();
  double lambda_p = 0;
  double gamma_atom = 0;

  int size() const { return n_side * n_side; }
  // Column (i * n_side + j) is the site (i a, j a).
  Eigen::Matrix2Xd positions() const;
  // Throws DomainError on a hard invariant violation.
  void validate() const;
  // Non-fatal findings, e.g. a >= lambda_p (more than one diffraction order).
  std::vector<std::string> warnings() const;
};

struct CollectiveRates {
  Eigen::Vector2d k = Eigen::Vector2d::Zero();
  double gamma_k = 0;
  double delta_k = 0;
};

enum class SumMode {
  // Collective-mode expectation over the whole finite array:
  // (1/N) sum_{n,m} e.G(r_n - r_m).e exp(-i k.(r_n - r_m)).
  FiniteArray,
  // Plain truncated lattice sum seen from the central site(s); rings with n_side.
  CentralSite,
};

/// Free-space dyadic Green's function at wavelength `lambda_p`, normalized so that
/// Im G(r -> 0) = (k/6pi) * I with k = 2pi/lambda_p.
///
/// G(r) = e^{ikr}/(4 pi r) [ (1 + (ikr - 1)/(kr)^2) I + (3 - 3ikr - (kr)^2)/(kr)^2 rhat rhat^T ].
template <typename Real>
Dyadic<Real> free_space_green(Real lambda_p, const Vector3<Real>& r) {
  using C = std::complex<Real>;
  const Real dist = r.norm();
  if (!(dist > Real(0))) throw DomainError("free_space_green: |r| must be positive (self term is handled separately)");
  if (!(lambda_p > Real(0))) throw DomainError("free_space_green: wavelength must be positive");
  const Real k = Real(2) * std::numbers::pi_v<Real> / lambda_p;
  const Real kr = k * dist;
  const C ikr(Real(0), kr);
  const Real kr2 = kr * kr;
  const C prefactor = std::exp(ikr) / (Real(4) * std::numbers::pi_v<Real> * dist);
  const C transverse = Real(1) + (ikr - Real(1)) / kr2;
  const C longitudinal = (Real(3) - Real(3) * ikr - kr2) / kr2;
  const Vector3<Real> rhat = r / dist;
  Dyadic<Real> g = (longitudinal * (rhat * rhat.transpose()).template cast<C>()).eval();
  g.diagonal().array() += transverse;
  return prefactor * g;
}

/// Imaginary part of the coincident-point Green's function, k/(6 pi) = 1/(3 lambda_p).
template <typename Real>
Real green_self_imag(Real lambda_p) {
  return Real(1) / (Real(3) * lambda_p);
}

CollectiveRates collective_rates(const LatticeSpec& spec, const Eigen::Vector2d& k,
                                 SumMode mode = SumMode::FiniteArray);

/// Infinite-array linewidth at normal incidence, (3/4pi)(lambda/a)^2 gamma_atom.
double gamma_k0_closed_form(double a, double lambda_p, double gamma_atom);

}  // namespace aqed::lattice
