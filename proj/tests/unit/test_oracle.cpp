#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aqed/channels.hpp"
#include "aqed/fieldobs.hpp"
#include "aqed/oracle.hpp"

using namespace aqed;
using Complex = std::complex<double>;

namespace {

struct Setup {
  channels::DerivedChannel dc;
  lattice::LatticeSpec patch{1.0, 6, Eigen::Vector3d::UnitX(), 2.0, 1.0};
  Eigen::Vector2d k1{0.0, 0.0};
  Eigen::Vector2d k2{2 * std::numbers::pi / 6, 0.0};
};

Setup make(double delta) {
  Setup s;
  s.dc = channels::derive({"k", 1.0, 0.0, 0.05, std::nullopt}, {0.3, 0.2, delta - 0.2});
  return s;
}

}  // namespace

TEST_CASE("no interaction: uncorrelated output in both ports") {
  const auto s = make(0.1);
  auto model = oracle::two_mode_model(s.patch, s.dc, s.k1, s.k2, 1.0, Complex(0, 1));
  oracle::set_uniform_interaction(model, 0.0);
  for (auto port : {fieldobs::Port::Transmission, fieldobs::Port::Reflection})
    CHECK(oracle::realspace_field_g2(model, s.dc, s.k1, s.k2, 1.0, Complex(0, 1), port) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("strong uniform interaction reproduces the blockaded closed form") {
  for (double delta : {0.01, 0.05, -0.2}) {
    const auto s = make(delta);
    auto model = oracle::two_mode_model(s.patch, s.dc, s.k1, s.k2, 1.0, Complex(0, 1));
    oracle::set_uniform_interaction(model, 1e7 * s.dc.gamma_ryd);
    for (auto port : {fieldobs::Port::Transmission, fieldobs::Port::Reflection}) {
      const double g = oracle::realspace_field_g2(model, s.dc, s.k1, s.k2, 1.0, Complex(0, 1), port);
      const double ref = fieldobs::analytic_g2_zero(s.dc, fieldobs::OutputPort::make(port, s.dc));
      CHECK(g == doctest::Approx(ref).epsilon(1e-5));
    }
  }
}

TEST_CASE("plane-wave drive populates only its own modes") {
  const auto s = make(0.1);
  auto model = oracle::two_mode_model(s.patch, s.dc, s.k1, s.k2, 1.0, 0.0);
  oracle::set_uniform_interaction(model, 0.0);
  const auto amp = oracle::realspace_amplitudes(model);
  const auto pops = oracle::mode_populations(model, amp, {s.k1, s.k2});
  CHECK(pops(1) < 1e-20 * pops(0));
  CHECK(pops(0) > 0);
}

TEST_CASE("independent steady state agrees with the direct solve") {
  mastereq::BlockadedModel m;
  m.modes.push_back({"a", 0.1, 0.5, Complex(0.05, 0)});
  m.modes.push_back({"b", -0.2, 0.9, Complex(0.0, 0.02)});
  const auto a = mastereq::steady_state(m, 0.03);
  const auto b = oracle::independent_steady_state(m, 0.03);
  CHECK(mastereq::trace_distance(a.rho, b.rho) < 1e-9);
}
