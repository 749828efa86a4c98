#include "aqed/lattice.hpp"

#include <cstdlib>

namespace aqed::lattice {

namespace {

// Neumaier-compensated complex accumulator: deterministic for a fixed order and
// insensitive to the large cancellations in the oscillating far-field tail.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

std::complex<double> projected_green(const LatticeSpec& spec, double dx, double dy) {
  const Eigen::Vector3d r(dx, dy, 0.0);
  return spec.e_d.dot((free_space_green(spec.lambda_p, r) * spec.e_d.cast<std::complex<double>>()).eval());
}

CollectiveRates to_rates(const LatticeSpec& spec, const Eigen::Vector2d& k, std::complex<double> green_sum) {
  // Gamma/2 + i Delta = -i (3/2) gamma_atom lambda e.G(k).e
  const std::complex<double> half_gamma_plus_i_delta =
      std::complex<double>(0, -1.5) * spec.gamma_atom * spec.lambda_p * green_sum;
  return {k, 2.0 * half_gamma_plus_i_delta.real(), half_gamma_plus_i_delta.imag()};
}

}  // namespace

Eigen::Matrix2Xd LatticeSpec::positions() const {
  Eigen::Matrix2Xd p(2, size());
  for (int i = 0; i < n_side; ++i)
    for (int j = 0; j < n_side; ++j) p.col(i * n_side + j) << i * a, j * a;
  return p;
}

void LatticeSpec::validate() const {
  if (!(a > 0)) throw DomainError("lattice: lattice constant a must be positive");
  if (n_side < 1) throw DomainError("lattice: n_side must be >= 1");
  if (!(lambda_p > 0)) throw DomainError("lattice: wavelength must be positive");
  if (!(gamma_atom > 0)) throw DomainError("lattice: gamma_atom must be positive");
  if (std::abs(e_d.norm() - 1.0) > 1e-12) throw DomainError("lattice: dipole orientation must be a unit vector");
  if (e_d.z() != 0.0) throw DomainError("lattice: dipole orientation must lie in the array plane");
}

std::vector<std::string> LatticeSpec::warnings() const {
  std::vector<std::string> out;
  if (a >= lambda_p) out.emplace_back("a >= lambda: more than one diffraction order; directional-channel picture does not hold");
  return out;
}

CollectiveRates collective_rates(const LatticeSpec& spec, const Eigen::Vector2d& k, SumMode mode) {
  spec.validate();
  const double zone = std::numbers::pi / spec.a;
  if (std::abs(k.x()) > zone * (1 + 1e-12) || std::abs(k.y()) > zone * (1 + 1e-12))
    throw DomainError("collective_rates: k outside the first Brillouin zone");

  const int n = spec.n_side;
  const std::complex<double> self(0.0, green_self_imag(spec.lambda_p));

  if (mode == SumMode::FiniteArray) {
    // Pair count per displacement (i, j) is (n - |i|)(n - |j|).
    CompensatedSum sum;
    sum.add(self);
    const double inv_n = 1.0 / spec.size();
    for (int i = -(n - 1); i <= n - 1; ++i) {
      for (int j = -(n - 1); j <= n - 1; ++j) {
        if (i == 0 && j == 0) continue;
        const double dx = i * spec.a, dy = j * spec.a;
        const double weight = double(n - std::abs(i)) * double(n - std::abs(j)) * inv_n;
        const std::complex<double> phase = std::polar(1.0, -(k.x() * dx + k.y() * dy));
        sum.add(weight * projected_green(spec, dx, dy) * phase);
      }
    }
    return to_rates(spec, k, sum.value());
  }

  // Central-site sum, averaged over the inversion-symmetric set of central atoms
  // (one site for odd n_side, four for even) so that Gamma_k = Gamma_{-k}.
  std::vector<std::pair<int, int>> centres;
  if (n % 2 == 1) {
    centres = {{n / 2, n / 2}};
  } else {
    centres = {{n / 2 - 1, n / 2 - 1}, {n / 2, n / 2 - 1}, {n / 2 - 1, n / 2}, {n / 2, n / 2}};
  }
  CompensatedSum sum;
  for (auto [ci, cj] : centres) {
    sum.add(self);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == ci && j == cj) continue;
        const double dx = (i - ci) * spec.a, dy = (j - cj) * spec.a;
        const std::complex<double> phase = std::polar(1.0, -(k.x() * dx + k.y() * dy));
        sum.add(projected_green(spec, dx, dy) * phase);
      }
    }
  }
  return to_rates(spec, k, sum.value() / double(centres.size()));
}

double gamma_k0_closed_form(double a, double lambda_p, double gamma_atom) {
  if (!(a > 0) || !(lambda_p > 0) || !(gamma_atom > 0))
    throw DomainError("gamma_k0_closed_form: inputs must be positive");
  return 3.0 / (4.0 * std::numbers::pi) * (lambda_p * lambda_p) / (a * a) * gamma_atom;
}

}  // namespace aqed::lattice
