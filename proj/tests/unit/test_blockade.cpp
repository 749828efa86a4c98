#include <doctest.h>

#include <cmath>
#include <limits>

#include "aqed/blockade.hpp"
#include "aqed/config.hpp"
#include "aqed/errors.hpp"
#include "aqed/oracle.hpp"

using namespace aqed;
using Complex = std::complex<double>;

TEST_CASE("van der Waals potential and blockade radius") {
  const blockade::VdwSpec spec{8.95e6, 5.3};
  CHECK(blockade::vdw_potential(spec, 2.0) == doctest::Approx(8.95e6 / 64));
  const auto rb = blockade::blockade_radius_resonant(spec, 0.726);
  CHECK(rb.blockade);
  CHECK(rb.radius == doctest::Approx(std::pow(8.95e6 / 0.726, 1.0 / 6.0)));
  CHECK(rb.radius == doctest::Approx(15.2).epsilon(5e-3));
  // Off resonance the width grows to |gamma + 2i(omega - delta)| and R_b shrinks.
  CHECK(blockade::blockade_radius(spec, 0.726, 1.0, 0.0).radius < rb.radius);
  CHECK(!blockade::blockade_radius_resonant({0.0, 5.3}, 0.726).blockade);
  CHECK_THROWS_AS(blockade::vdw_potential(spec, 0.0), DomainError);
}

TEST_CASE("practical-considerations preset: R_b and validity") {
  const auto cfg = config::load_preset("sm6");
  REQUIRE(cfg.physics.vdw);
  REQUIRE(cfg.physics.gamma_mhz);
  const auto dc = cfg.physics.derive(0, cfg.physics.detuning, cfg.physics.delta);
  const double gamma_mhz = dc.gamma_ryd * *cfg.physics.gamma_mhz;
  CHECK(gamma_mhz == doctest::Approx(0.73).epsilon(1e-2));
  const auto rep = blockade::blockade_validity(*cfg.physics.vdw, gamma_mhz, 0.532);
  CHECK(rep.blockade_radius == doctest::Approx(15.2).epsilon(1e-2));
  CHECK(rep.valid);
  CHECK(rep.ratio < 1);
}

TEST_CASE("pair suppression limits") {
  CHECK(blockade::suppression_factor(0.0, 1.0, 0.2, 0.0) == doctest::Approx(1.0));
  CHECK(blockade::suppression_factor(1e6, 1.0, 0.0, 0.0) < 1e-5);
  double prev = 2;
  for (double v : {0.1, 1.0, 10.0, 100.0}) {
    const double f = blockade::suppression_factor(v, 1.0, 0.0, 0.0);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("two-excitation closed form agrees with the real-space solver") {
  // Dual route: per-pair closed form vs the sparse Schroedinger solve with hard-core atoms.
  const int n = 5;
  Eigen::Matrix2Xd pos(2, n);
  for (int i = 0; i < n; ++i) pos.col(i) << 0.7 * i, 0.2 * (i % 2);
  const blockade::VdwSpec spec{0.3, 1.0};
  const Eigen::MatrixXd v = blockade::pairwise_potential(spec, pos);
  Eigen::VectorXcd drive(n);
  for (int i = 0; i < n; ++i) drive(i) = std::polar(0.01 * (1 + i), 0.4 * i);
  const double gamma = 0.8, omega = 0.1, delta = -0.05;

  const auto closed = blockade::two_excitation_amplitudes(drive, gamma, omega, delta, v);
  oracle::RealSpaceModel model;
  model.positions = pos;
  model.drive = drive;
  model.gamma = gamma;
  model.omega = omega;
  model.delta = delta;
  model.vdw = v;
  const auto solved = oracle::realspace_amplitudes(model);
  CHECK((closed.c1 - solved.c1).norm() < 1e-12 * closed.c1.norm());
  CHECK((closed.c2 - solved.c2).norm() < 1e-10 * closed.c2.norm());

  const Eigen::MatrixXd blocked = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  const auto inf = blockade::two_excitation_amplitudes(drive, gamma, omega, delta, blocked);
  CHECK(inf.c2.norm() == 0.0);
}
