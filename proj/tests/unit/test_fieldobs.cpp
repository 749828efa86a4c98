#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aqed/channels.hpp"
#include "aqed/errors.hpp"
#include "aqed/fieldobs.hpp"

using namespace aqed;
using channels::Complex;
using fieldobs::Port;

namespace {

channels::DerivedChannel point(double detuning, double delta_over_g0, double gsc = 0.05, double gamma = 1.0) {
  const channels::ChannelParams ch{"k", gamma, 0.0, gsc * gamma, std::nullopt};
  const double omega_c = 0.3;
  const double g0 = 4 * omega_c * omega_c;
  return channels::derive(ch, {omega_c, detuning, delta_over_g0 * g0 - detuning});
}

// |b|^2 |b - 2x|^2 / |b - x|^4
double eq9(const channels::DerivedChannel& dc, Port port) {
  const Complex b = port == Port::Transmission ? 1.0 + dc.r : dc.r;
  const Complex x = dc.r - dc.r_tilde;
  return std::norm(b) * std::norm(b - 2.0 * x) / std::pow(std::norm(b - x), 2);
}

}  // namespace

TEST_CASE("weak-field g2(0) closed form") {
  for (double det : {-0.7, 0.0, 0.3})
    for (double d : {-1.5, -0.2, 0.1, 0.9})
      for (Port port : {Port::Transmission, Port::Reflection}) {
        const auto dc = point(det, d);
        const auto op = fieldobs::OutputPort::make(port, dc);
        CHECK(fieldobs::analytic_g2_zero(dc, op) == doctest::Approx(eq9(dc, port)).epsilon(1e-12));
        CHECK(fieldobs::analytic_g1(dc, op) == doctest::Approx(std::norm(op.b - dc.x())).epsilon(1e-12));
      }
}

TEST_CASE("antibunching and the full-absorption bunching formula") {
  const auto dc = point(0.0, 0.0);
  CHECK(fieldobs::analytic_g2_zero(dc, fieldobs::OutputPort::make(Port::Transmission, dc)) ==
        doctest::Approx(std::norm(1.0 - dc.r * dc.r)).epsilon(1e-12));
  const double det = 0.4, d = 0.25 / det;
  const auto h = point(det, d);
  CHECK(std::abs(h.r_tilde + h.r_res) < 1e-12);
  const double expected = std::norm(1.0 + h.r) * std::norm(1.0 - h.r - 2 * h.r_res) / std::pow(1 - h.r_res, 4);
  CHECK(fieldobs::analytic_g2_zero(h, fieldobs::OutputPort::make(Port::Transmission, h)) ==
        doctest::Approx(expected).epsilon(1e-10));
  CHECK(expected > 1);
}

TEST_CASE("delayed correlations relax to 1 with the later channel's width") {
  const auto d1 = point(0.0, 0.0, 0.05, 1.0), d2 = point(0.0, 0.0, 0.05, 0.5);
  const auto early = fieldobs::analytic_g2_tau(d1, d2, Port::Transmission, {0.0});
  const auto late = fieldobs::analytic_g2_tau(d1, d2, Port::Transmission, {80.0 / d2.gamma_ryd});
  CHECK(late[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(early[0] < 1);
  // Identical channels at tau = 0 reduce to the zero-delay closed form.
  const auto g = fieldobs::analytic_g2_tau(d1, d1, Port::Transmission, {0.0});
  CHECK(g[0] == doctest::Approx(eq9(d1, Port::Transmission)).epsilon(1e-10));
}

TEST_CASE("numeric route reproduces the closed forms in the weak limit") {
  const auto dc = point(0.3, 0.4);
  const auto op = fieldobs::OutputPort::make(Port::Transmission, dc);
  auto numeric = [&](double s) {
    const double eps = channels::field_for_saturation(dc, s);
    return fieldobs::NumericRoute(dc, dc, eps, eps, Port::Transmission);
  };
  const auto a = numeric(1e-4), b = numeric(5e-5);
  // Linear extrapolation in S removes the first saturation correction.
  CHECK(2 * b.g1(0) - a.g1(0) == doctest::Approx(fieldobs::analytic_g1(dc, op)).epsilon(1e-7));
  CHECK(2 * b.G2(0.0) - a.G2(0.0) == doctest::Approx(fieldobs::analytic_G2_zero(dc, op)).epsilon(1e-7));
  const double tau = 1.3 / dc.gamma_ryd;
  CHECK(2 * b.G2(tau) - a.G2(tau) ==
        doctest::Approx(fieldobs::analytic_G2_tau(dc, dc, Port::Transmission, tau)).epsilon(1e-7));
  CHECK(a.g2(500.0 / dc.gamma_ryd) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("numeric witnesses: closed-form and theta-grid minimizations agree") {
  const auto dc = point(0.2, 0.3);
  const double eps = channels::field_for_saturation(dc, 1e-4);
  const fieldobs::NumericRoute route(dc, dc, eps, std::polar(eps, -0.5 * std::numbers::pi), Port::Transmission);
  const auto a = route.entanglement(1e-3);
  const auto b = route.entanglement_theta_grid(1e-3, 7200);
  CHECK(a.duan_d == doctest::Approx(b.duan_d).epsilon(1e-7));
  CHECK(a.squeezing_v == doctest::Approx(b.squeezing_v).epsilon(1e-7));
}

TEST_CASE("entanglement measures") {
  const auto dc = point(0.3, 0.0);
  const auto rp = channels::resonance_curves({"k", 1.0, 0.0, 0.05, std::nullopt}, 0.3, 0.3);
  const auto res = channels::derive({"k", 1.0, 0.0, 0.05, std::nullopt}, {0.3, 0.3, rp.rydberg_delta - 0.3});
  CHECK(fieldobs::lorentzian_k(res) == doctest::Approx(res.r_res * res.r_res).epsilon(1e-12));
  CHECK(fieldobs::lorentzian_k(dc) == doctest::Approx(std::norm(dc.x())).epsilon(1e-12));
  const auto e = fieldobs::entanglement_measures(dc, dc, {1.0, 0.2, 0.5 * std::numbers::pi});
  CHECK(e.duan_d == doctest::Approx(1 - 0.4 * e.k_param));
  CHECK(e.squeezing_v == doctest::Approx(1 - 0.2 * e.k_sq));
  CHECK_THROWS_AS(fieldobs::entanglement_measures(dc, dc, {1.0, 10.0, 0.0}), DomainError);
}

TEST_CASE("output map names the missing atomic term") {
  const auto dc = point(0.1, 0.2);
  const auto f = fieldobs::field_amplitudes(fieldobs::OutputPort::make(Port::Transmission, dc), dc, 0.01);
  fieldobs::AtomicBundle bundle;
  bundle.sigma = {Complex(0.1), Complex(0.1)};
  try {
    fieldobs::output_field_map({f, f}, bundle);
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("<s1^dag s1>") != std::string::npos);
  }
}

TEST_CASE("strong drive is refused by the weak-field formulas") {
  const auto dc = point(0.0, 0.1);
  CHECK_THROWS_AS(fieldobs::analytic_g2_tau(dc, dc, Port::Transmission, {0.0}, 2.0, 0.0), DomainError);
  std::vector<std::string> warnings;
  fieldobs::analytic_g2_tau(dc, dc, Port::Transmission, {0.0}, 0.1, 0.0, &warnings);
  CHECK(!warnings.empty());
}
