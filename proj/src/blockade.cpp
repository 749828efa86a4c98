#include "aqed/blockade.hpp"

#include <cmath>
#include <vector>

#include "aqed/errors.hpp"

namespace aqed::blockade {

namespace {

Complex pole(double gamma, double omega, double delta) { return {0.5 * gamma, omega - delta}; }

}  // namespace

void VdwSpec::validate() const {
  if (!(c6 >= 0)) throw DomainError("vdw: C6 must be non-negative");
  if (!(beam_waist > 0)) throw DomainError("vdw: beam waist must be positive");
}

double vdw_potential(const VdwSpec& spec, double r) {
  if (!(r > 0)) throw DomainError("vdw_potential: separation must be positive");
  return spec.c6 / std::pow(r, 6);
}

Eigen::MatrixXd pairwise_potential(const VdwSpec& spec, const Eigen::Matrix2Xd& positions) {
  const Eigen::Index n = positions.cols();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) v(i, j) = v(j, i) = vdw_potential(spec, (positions.col(i) - positions.col(j)).norm());
  return v;
}

BlockadeRadius blockade_radius(const VdwSpec& spec, double gamma_ryd, double omega_k, double delta) {
  if (spec.c6 == 0.0) return {0.0, false};
  if (!(spec.c6 > 0)) throw DomainError("blockade_radius: C6 must be non-negative");
  const double width = std::abs(Complex(gamma_ryd, 2.0 * (omega_k - delta)));
  if (!(width > 0)) throw DomainError("blockade_radius: need gamma > 0 or omega != delta");
  return {std::pow(spec.c6 / width, 1.0 / 6.0), true};
}

BlockadeRadius blockade_radius_resonant(const VdwSpec& spec, double gamma_ryd) {
  return blockade_radius(spec, gamma_ryd, 0.0, 0.0);
}

TwoExcitationAmplitudes two_excitation_amplitudes(const Eigen::VectorXcd& drive, double gamma, double omega,
                                                  double delta, const Eigen::MatrixXd& vdw) {
  const Eigen::Index n = drive.size();
  if (vdw.rows() != n || vdw.cols() != n) throw DomainError("two_excitation_amplitudes: potential matrix shape mismatch");
  const Complex lambda = pole(gamma, omega, delta);
  if (lambda == 0.0) throw DomainError("two_excitation_amplitudes: singular denominator (gamma = 0, omega = delta)");

  TwoExcitationAmplitudes out;
  out.c1 = -drive / lambda;
  out.c2 = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::isinf(vdw(i, j))) continue;
      const Complex factor = 1.0 + Complex(0.0, vdw(i, j)) / (2.0 * lambda);
      if (std::abs(factor) < 1e-300) throw DomainError("two_excitation_amplitudes: singular pair denominator");
      out.c2(i, j) = out.c2(j, i) = out.c1(i) * out.c1(j) / factor;
    }
  }
  return out;
}

double suppression_factor(double v, double gamma, double omega, double delta) {
  const Complex lambda = pole(gamma, omega, delta);
  if (lambda == 0.0) throw DomainError("suppression_factor: singular denominator");
  if (std::isinf(v)) return 0.0;
  return 1.0 / std::abs(1.0 + Complex(0.0, v) / (2.0 * lambda));
}

ValidityReport blockade_validity(const VdwSpec& spec, double gamma_ryd, double lattice_a) {
  spec.validate();
  ValidityReport rep;
  rep.beam_waist = spec.beam_waist;
  const auto rb = blockade_radius_resonant(spec, gamma_ryd);
  rep.blockade_radius = rb.radius;
  rep.ratio = rb.blockade ? spec.beam_waist / rb.radius : INFINITY;
  rep.valid = rb.blockade && spec.beam_waist < rb.radius;

  double max_separation = 2.0 * spec.beam_waist;
  if (lattice_a > 0) {
    // Farthest pair of lattice sites inside a disk of radius w around a site.
    const int m = int(std::floor(spec.beam_waist / lattice_a));
    std::vector<Eigen::Vector2d> sites;
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j)
        if (std::hypot(i, j) * lattice_a <= spec.beam_waist) sites.emplace_back(i * lattice_a, j * lattice_a);
    max_separation = 0;
    for (size_t i = 0; i < sites.size(); ++i)
      for (size_t j = i + 1; j < sites.size(); ++j) max_separation = std::max(max_separation, (sites[i] - sites[j]).norm());
  }
  rep.worst_suppression =
      max_separation > 0 ? suppression_factor(vdw_potential(spec, max_separation), gamma_ryd, 0.0, 0.0) : 0.0;
  return rep;
}

}  // namespace aqed::blockade
