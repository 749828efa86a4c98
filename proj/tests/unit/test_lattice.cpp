#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aqed/errors.hpp"
#include "aqed/lattice.hpp"

using namespace aqed;
using Eigen::Vector3d;

namespace {

// G = (1 + grad grad / k^2) e^{ikr} / (4 pi r), by central differences of the scalar kernel.
Eigen::Matrix3cd green_by_differences(double lambda, const Vector3d& r) {
  const double k = 2 * std::numbers::pi / lambda;
  auto g = [&](const Vector3d& p) {
    const double d = p.norm();
    return std::exp(std::complex<double>(0, k * d)) / (4 * std::numbers::pi * d);
  };
  const double h = 1e-4 * lambda;
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Identity() * g(r);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vector3d ei = Vector3d::Unit(i) * h, ej = Vector3d::Unit(j) * h;
      const auto d2 = (g(r + ei + ej) - g(r + ei - ej) - g(r - ei + ej) + g(r - ei - ej)) / (4 * h * h);
      out(i, j) += d2 / (k * k);
    }
  return out;
}

}  // namespace

TEST_CASE("Green dyadic matches the differentiated scalar kernel") {
  const double lambda = 0.78;
  for (const Vector3d r : {Vector3d(0.3, 0.1, 0.0), Vector3d(1.7, -0.4, 0.2), Vector3d(0.05, 0.02, 0.0)}) {
    const auto g = lattice::free_space_green(lambda, r);
    const auto ref = green_by_differences(lambda, r);
    CHECK((g - ref).norm() / ref.norm() < 2e-5);
    CHECK((g - g.transpose()).norm() < 1e-14 * g.norm());
    CHECK((lattice::free_space_green(lambda, Vector3d(-r)) - g).norm() < 1e-14 * g.norm());
  }
}

TEST_CASE("Im G approaches the self term 1/(3 lambda)") {
  const double lambda = 1.0;
  const auto g = lattice::free_space_green(lambda, Vector3d(1e-3, 0, 0));
  CHECK(g(1, 1).imag() == doctest::Approx(lattice::green_self_imag(lambda)).epsilon(1e-5));
  CHECK_THROWS_AS(lattice::free_space_green(lambda, Vector3d(Vector3d::Zero())), DomainError);
}

TEST_CASE("closed-form normal-incidence width") {
  const double g = lattice::gamma_k0_closed_form(532e-9, 780e-9, 6.06);
  CHECK(g == doctest::Approx(3 / (4 * std::numbers::pi) * std::pow(780.0 / 532.0, 2) * 6.06));
  CHECK(g == doctest::Approx(3.10).epsilon(5e-3));
}

TEST_CASE("lattice sums approach the closed form as the array grows") {
  lattice::LatticeSpec spec{532e-9, 20, Vector3d::UnitX(), 780e-9, 6.06};
  const double closed = lattice::gamma_k0_closed_form(spec.a, spec.lambda_p, spec.gamma_atom);
  double prev = 1e300;
  for (int n : {20, 40, 80}) {
    spec.n_side = n;
    const double err = std::abs(lattice::collective_rates(spec, Eigen::Vector2d::Zero()).gamma_k - closed);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("collective rates are even in k and reject points outside the zone") {
  lattice::LatticeSpec spec{532e-9, 30, Vector3d::UnitX(), 780e-9, 6.06};
  const Eigen::Vector2d k(0.2 * std::numbers::pi / spec.a, 0.1 * std::numbers::pi / spec.a);
  const auto a = lattice::collective_rates(spec, k, lattice::SumMode::CentralSite);
  const auto b = lattice::collective_rates(spec, -k, lattice::SumMode::CentralSite);
  CHECK(a.gamma_k == doctest::Approx(b.gamma_k).epsilon(1e-10));
  CHECK(a.delta_k == doctest::Approx(b.delta_k).epsilon(1e-10));
  CHECK_THROWS_AS(lattice::collective_rates(spec, Eigen::Vector2d(1.1 * std::numbers::pi / spec.a, 0)), DomainError);
}

TEST_CASE("invalid lattice specs") {
  lattice::LatticeSpec spec{532e-9, 10, Vector3d::UnitX(), 780e-9, 6.06};
  spec.a = -1;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {532e-9, 0, Vector3d::UnitX(), 780e-9, 6.06};
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {900e-9, 10, Vector3d::UnitX(), 780e-9, 6.06};
  CHECK(!spec.warnings().empty());  // a > lambda: diffraction orders open
}
