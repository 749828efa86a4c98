#include <doctest.h>

#include <cmath>

#include "aqed/errors.hpp"
#include "aqed/mastereq.hpp"
#include "aqed/oracle.hpp"

using namespace aqed;
using mastereq::Complex;

namespace {

mastereq::BlockadedModel two_modes(double drive = 0.05) {
  mastereq::BlockadedModel m;
  m.modes.push_back({"k1", 0.2, 0.7, Complex(drive, 0.2 * drive)});
  m.modes.push_back({"k2", -0.1, 1.3, Complex(0.0, -0.5 * drive)});
  return m;
}

}  // namespace

TEST_CASE("single driven mode: closed-form steady population") {
  // rho_11 = (S/2)/(1+S), S = 2|Omega|^2/((omega-delta)^2 + gamma^2/4).
  for (double drive : {0.01, 0.3, 2.0}) {
    mastereq::BlockadedModel m;
    m.modes.push_back({"k", 0.3, 0.9, Complex(0.0, drive)});
    const double delta = -0.2;
    const double s = 2 * drive * drive / (std::pow(0.3 - delta, 2) + 0.25 * 0.81);
    const auto st = mastereq::steady_state(m, delta);
    CHECK(st.rho(1, 1).real() == doctest::Approx(0.5 * s / (1 + s)).epsilon(1e-10));
  }
}

TEST_CASE("generator preserves trace and hermiticity") {
  const auto model = two_modes();
  const auto l = mastereq::liouvillian(model, 0.05);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Random(3, 3);
  rho = rho * rho.adjoint();
  rho /= rho.trace();
  const auto drho = mastereq::unvec(l * mastereq::vec(rho), 3);
  CHECK(std::abs(drho.trace()) < 1e-14);
  CHECK((drho - drho.adjoint()).norm() < 1e-14);
}

TEST_CASE("evolution stays a density matrix and reaches the steady state") {
  const auto model = two_modes(0.4);
  auto st = mastereq::evolve(mastereq::BlockadedState::ground(3), model, 0.05, 2.0);
  st.check(1e-10);
  st = mastereq::evolve(st, model, 0.05, 60.0);
  CHECK(mastereq::trace_distance(st.rho, mastereq::steady_state(model, 0.05).rho) < 1e-9);
}

TEST_CASE("weak drive: steady coherences match the lowest-order amplitudes") {
  const auto model = two_modes(1e-4);
  const auto st = mastereq::steady_state(model, 0.05);
  const auto c = mastereq::weak_field_amplitudes(model, 0.05);
  for (int k = 1; k <= 2; ++k) {
    const Complex sigma = st.expect(mastereq::lowering(3, k));
    CHECK(std::abs(sigma - c(k - 1)) < 1e-6 * std::abs(c(k - 1)));
  }
}

TEST_CASE("regression: tau = 0 reduces to the equal-time product, long tau factorizes") {
  const auto model = two_modes(0.2);
  const mastereq::Regression reg(model, 0.05);
  const auto s1 = mastereq::lowering(3, 1), s2 = mastereq::lowering(3, 2);
  const Eigen::MatrixXcd n2 = s2.adjoint() * s2;
  const Complex zero = reg.at(s1.adjoint(), n2, s1, 0.0);
  CHECK(std::abs(zero - reg.equal_time(s1.adjoint(), n2, s1)) < 1e-14);
  CHECK(std::abs(zero) < 1e-14);  // blockade: no double excitation
  const Complex late = reg.at(s1.adjoint(), n2, s1, 200.0);
  const Complex fact = reg.steady().expect(s1.adjoint() * s1) * reg.steady().expect(n2);
  CHECK(std::abs(late - fact) < 1e-10);
}

TEST_CASE("dual integrators agree on a driven instance") {
  const auto model = two_modes(0.3);
  const auto rho0 = mastereq::BlockadedState::ground(3);
  const auto a = mastereq::evolve(rho0, model, 0.1, 5.0);
  const auto b = oracle::independent_integrator(model, 0.1, 5.0, rho0);
  CHECK(mastereq::trace_distance(a.rho, b.rho) < 1e-9);
}

TEST_CASE("invalid models") {
  mastereq::BlockadedModel m;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m.modes.push_back({"k", 0.0, 0.0, Complex(0.1, 0)});
  CHECK_THROWS_AS(mastereq::steady_state(m, 0.0), DomainError);
  CHECK_THROWS_AS(mastereq::lowering(3, 3), DomainError);
}
