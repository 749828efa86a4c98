#include <doctest.h>

#include <cmath>

#include "aqed/channels.hpp"
#include "aqed/errors.hpp"

using namespace aqed;
using channels::Complex;

namespace {

channels::ChannelParams lossy(double gsc = 0.05) { return {"k", 1.0, 0.0, gsc, std::nullopt}; }
channels::EITConfig at(double detuning, double delta, double omega_c = 0.3) { return {omega_c, detuning, delta - detuning}; }

}  // namespace

TEST_CASE("two-level reflectivity") {
  const auto ch = lossy();
  for (double dp : {-2.0, -0.3, 0.0, 0.7}) {
    const Complex ref = -1.0 / (1.05 + 2.0 * Complex(0, -dp));
    CHECK(std::abs(channels::two_level_reflectivity(ch, dp) - ref) < 1e-15);
  }
  CHECK(channels::resonant_reflectivity(ch) == doctest::Approx(1 / 1.05));
}

TEST_CASE("lossless array conserves flux, lossy array is passive") {
  for (double dp : {-3.0, -0.5, 0.1, 2.0}) {
    const Complex r0 = channels::two_level_reflectivity(lossy(0.0), dp);
    CHECK(std::norm(1.0 + r0) + std::norm(r0) == doctest::Approx(1.0).epsilon(1e-14));
    const Complex r = channels::two_level_reflectivity(lossy(0.05), dp);
    CHECK(std::norm(1.0 + r) + std::norm(r) < 1.0);
    CHECK(std::abs(r) <= channels::resonant_reflectivity(lossy(0.05)) + 1e-15);
  }
}

TEST_CASE("Rydberg mode parameters") {
  const auto ch = lossy();
  const auto e = at(0.4, 0.0);
  const auto m = channels::rydberg_mode_params(ch, e);
  const Complex r = channels::two_level_reflectivity(ch, e.delta_p);
  const Complex ref = -2.0 * std::norm(e.omega_c) * r;
  CHECK(0.5 * m.gamma_ryd == doctest::Approx(ref.real()));
  CHECK(m.omega_k == doctest::Approx(ref.imag()));
  CHECK(m.gamma_ryd > 0);
  CHECK(channels::transparency_width(ch, e) == doctest::Approx(4 * 0.09));
}

TEST_CASE("EIT reflectivity: two routes agree") {
  const auto ch = lossy();
  for (double det : {-0.8, -0.1, 0.0, 0.5})
    for (double delta : {-0.3, -0.01, 0.0, 0.02, 0.4}) {
      const auto e = at(det, delta);
      CHECK(std::abs(channels::eit_reflectivity(ch, e) - channels::eit_reflectivity_closed_form(ch, e)) < 1e-13);
    }
}

TEST_CASE("derived channel snapshot") {
  const auto dc = channels::derive(lossy(), at(0.2, 0.05));
  CHECK(dc.x() == dc.r - dc.r_tilde);
  CHECK(dc.pole() == Complex(0.5 * dc.gamma_ryd, dc.omega_k - dc.delta));
  CHECK(dc.delta == doctest::Approx(0.05));
}

TEST_CASE("saturation and its inverse") {
  const auto dc = channels::derive(lossy(), at(0.3, 0.1));
  for (double s : {1e-6, 1e-3, 0.5, 4.0}) {
    const double eps = channels::field_for_saturation(dc, s);
    CHECK(channels::saturation_from_field(dc, eps) == doctest::Approx(s).epsilon(1e-12));
    const Complex omega = channels::effective_drive_scaled(dc, eps);
    CHECK(channels::saturation(dc, omega) ==
          doctest::Approx(2 * std::norm(omega) / std::norm(dc.pole())).epsilon(1e-12));
  }
  CHECK(channels::classify_saturation(1e-3) == channels::FieldRegime::Weak);
  CHECK(channels::classify_saturation(0.1) == channels::FieldRegime::Marginal);
  CHECK(channels::classify_saturation(3) == channels::FieldRegime::Strong);
}

TEST_CASE("resonance curves") {
  const auto ch = lossy();
  const double omega_c = 0.3;
  const auto rp = channels::resonance_curves(ch, omega_c, 0.4);
  REQUIRE(rp.absorption_delta);
  const double gamma0 = 4 * omega_c * omega_c;
  CHECK(*rp.absorption_delta / gamma0 == doctest::Approx(0.25 / 0.4));
  const auto dc = channels::derive(ch, at(0.4, rp.rydberg_delta, omega_c));
  CHECK(dc.omega_k == doctest::Approx(dc.delta));
  CHECK(!channels::resonance_curves(ch, omega_c, 0.0).absorption_delta);
}

TEST_CASE("invalid channel parameters") {
  channels::ChannelParams ch{"k", -1.0, 0.0, 0.0, std::nullopt};
  CHECK_THROWS_AS(ch.validate(), DomainError);
  ch = {"k", 1.0, 0.0, -0.1, std::nullopt};
  CHECK_THROWS_AS(ch.validate(), DomainError);
  CHECK(channels::identical_channels(lossy(), 3).size() == 3);
}
