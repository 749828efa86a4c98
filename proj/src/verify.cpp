#include "aqed/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "aqed/blockade.hpp"
#include "aqed/channels.hpp"
#include "aqed/config.hpp"
#include "aqed/errors.hpp"
#include "aqed/fieldobs.hpp"
#include "aqed/lattice.hpp"
#include "aqed/mastereq.hpp"
#include "aqed/oracle.hpp"
#include "aqed/scan.hpp"

namespace aqed::verify {

namespace {

using channels::ChannelParams;
using channels::Complex;
using channels::DerivedChannel;
using channels::EITConfig;
using fieldobs::Port;

constexpr double kGammaAtomMHz = 6.06;
constexpr double kA = 532e-9;
constexpr double kLambda = 780e-9;
// Coupling of the practical-considerations scenario in units of Gamma: 0.75 MHz / 3.1 MHz.
constexpr double kOmegaC = 0.75 / 3.1;

// Records a bounded measurement; `value <= tol` passes.
void bound(CriterionResult& r, std::string name, double value, double tol) {
  r.measurements.push_back({std::move(name), value, tol, value <= tol});
}

void info(CriterionResult& r, std::string name, double value) {
  r.measurements.push_back({std::move(name), value, 0.0, true});
}

void flag(CriterionResult& r, std::string name, bool ok) {
  r.measurements.push_back({std::move(name), ok ? 1.0 : 0.0, 0.0, ok});
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ChannelParams lossy(double gamma_sc_ratio = 0.05, double gamma = 1.0) {
  return {"k", gamma, 0.0, gamma_sc_ratio * gamma, std::nullopt};
}

EITConfig at(double detuning, double delta, double omega_c = kOmegaC, double delta_k = 0.0) {
  const double delta_p = delta_k + detuning;
  return {omega_c, delta_p, delta - delta_p};
}

// ------------------------------------------------------------------------------------

void c1_closed_form(CriterionResult& r) {
  const double g = lattice::gamma_k0_closed_form(kA, kLambda, kGammaAtomMHz);
  info(r, "Gamma_k0/2pi [MHz]", g);
  bound(r, "relative deviation from 3.10 MHz", rel(g, 3.10), 5e-3);
}

void c2_lattice_convergence(CriterionResult& r) {
  const double closed = lattice::gamma_k0_closed_form(kA, kLambda, kGammaAtomMHz);
  for (int n : {40, 100}) {
    lattice::LatticeSpec spec{kA, n, Eigen::Vector3d::UnitX(), kLambda, kGammaAtomMHz};
    const double g = lattice::collective_rates(spec, Eigen::Vector2d::Zero()).gamma_k;
    info(r, "Gamma(n_side=" + std::to_string(n) + ") [MHz]", g);
    bound(r, "relative error n_side=" + std::to_string(n), rel(g, closed), n == 40 ? 0.05 : 0.02);
  }
}

void c3_eit_width(CriterionResult& r) {
  // Gamma = 3.1 MHz as the rate unit.
  const ChannelParams ch{"k", 3.1, 0.0, 0.0, std::nullopt};
  const auto mode = channels::rydberg_mode_params(ch, {0.75, 0.0, 0.0});
  info(r, "gamma/2pi [MHz]", mode.gamma_ryd);
  bound(r, "relative deviation from 0.726 MHz", rel(mode.gamma_ryd, 0.726), 5e-3);
}

void c4_reflectivity(CriterionResult& r) {
  const auto ch = lossy(0.05);
  const double r2 = std::norm(channels::two_level_reflectivity(ch, 0.0));
  info(r, "r_res^2", r2);
  bound(r, "|r_res^2 - 0.907|", std::abs(r2 - 0.907), 1e-3);
  const Complex r0 = channels::two_level_reflectivity(lossy(0.0), 0.0);
  flag(r, "r = -1 exactly (gamma_sc = 0)", r0 == Complex(-1.0, 0.0));
}

void c5_eit_limits(CriterionResult& r) {
  const auto ch = lossy(0.05);
  flag(r, "r_tilde(delta=0) == 0", channels::eit_reflectivity(ch, at(0.3, 0.0)) == 0.0);
  const double gamma0 = channels::transparency_width(ch, at(0.0, 0.0));
  double worst = 0;
  for (double detuning : {-0.7, -0.3, 0.0, 0.3, 0.7})
    for (double sign : {-1.0, 1.0}) {
      const auto e = at(detuning, sign * 1e3 * gamma0);
      const Complex rr = channels::two_level_reflectivity(ch, e.delta_p);
      worst = std::max(worst, std::abs(channels::eit_reflectivity(ch, e) - rr) / std::abs(rr));
    }
  bound(r, "max |r_tilde - r|/|r| at |delta| = 1e3 gamma0", worst, 1e-3);
  double worst_res = 0;
  for (double d_over_g0 : {-2.0, -0.5, 0.25, 0.5, 1.0, 3.0}) {
    const double delta = d_over_g0 * gamma0;
    const double detuning = ch.gamma_k * gamma0 / (4.0 * delta);
    const Complex rt = channels::eit_reflectivity(ch, at(detuning, delta));
    worst_res = std::max(worst_res, std::abs(rt + channels::resonant_reflectivity(ch)));
  }
  bound(r, "max |r_tilde + r_res| on the absorption hyperbola", worst_res, 1e-10);
}

void c6_antibunching(CriterionResult& r) {
  const auto ch = lossy(0.05);
  const auto dc = channels::derive(ch, at(0.0, 0.0));
  const double g2 = fieldobs::analytic_g2_zero(dc, fieldobs::OutputPort::make(Port::Transmission, dc));
  const double target = std::norm(1.0 - dc.r * dc.r);
  info(r, "g2_12,+(0)", g2);
  info(r, "|1-r^2|^2", target);
  bound(r, "|g2 - |1-r^2|^2|", std::abs(g2 - target), 1e-10);
  bound(r, "|g2 - 0.00864|", std::abs(g2 - 0.00864), 5e-6);
}

void c7_saturation(CriterionResult& r) {
  const auto ch = lossy(0.05);
  const double detuning = 1e3;
  const auto rp = channels::resonance_curves(ch, kOmegaC, detuning);
  const auto dc = channels::derive(ch, at(detuning, rp.rydberg_delta));
  const double g2 = fieldobs::analytic_g2_zero(dc, fieldobs::OutputPort::make(Port::Transmission, dc));
  const double limit = fieldobs::saturated_limit_g2(dc);
  info(r, "g2 at (delta_p-Delta)/Gamma = 1e3 on delta = omega", g2);
  info(r, "(1-2r_res)^2/(1-r_res)^4", limit);
  bound(r, "relative deviation", rel(g2, limit), 1e-2);
}

// Slope of log|g2(tau) - 1| over tau in [10, 20]/gamma_2.
double fitted_rate(const DerivedChannel& a, const DerivedChannel& b) {
  std::vector<double> taus;
  for (int i = 0; i <= 40; ++i) taus.push_back((10.0 + 10.0 * i / 40.0) / b.gamma_ryd);
  const auto g2 = fieldobs::analytic_g2_tau(a, b, Port::Transmission, taus);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(taus.size());
  for (size_t i = 0; i < taus.size(); ++i) {
    const double y = std::log(std::abs(g2[i] - 1.0));
    sx += taus[i];
    sy += y;
    sxx += taus[i] * taus[i];
    sxy += taus[i] * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void c8_correlation_time(CriterionResult& r) {
  const auto e = at(0.0, 0.0);
  const auto d1 = channels::derive(lossy(0.05, 1.0), e);
  const auto d2 = channels::derive(lossy(0.05, 0.5), e);  // gamma_2 = 2 gamma_1
  info(r, "gamma_1", d1.gamma_ryd);
  info(r, "gamma_2", d2.gamma_ryd);
  const double k12 = fitted_rate(d1, d2), k21 = fitted_rate(d2, d1);
  info(r, "fitted rate (1 then 2)", k12);
  info(r, "fitted rate (2 then 1)", k21);
  bound(r, "relative error vs gamma_2/2", rel(k12, 0.5 * d2.gamma_ryd), 0.02);
  bound(r, "relative error vs gamma_1/2 after swap", rel(k21, 0.5 * d1.gamma_ryd), 0.02);
  const auto dd = channels::derive(lossy(0.05), e);
  bound(r, "identical channels: relative error vs gamma/2", rel(fitted_rate(dd, dd), 0.5 * dd.gamma_ryd), 0.02);
}

struct Deviation {
  double g1 = 0, g2_0 = 0, g2_tau = 0;
};

void c9_equivalence(CriterionResult& r) {
  const double s = 1e-4;
  const auto ch = lossy(0.05);
  const double gamma0 = channels::transparency_width(ch, at(0.0, 0.0));
  Deviation raw, extrap;
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 21; ++j) {
      const double detuning = -1.0 + 0.1 * i;
      const double delta = (-2.0 + 0.2 * j) * gamma0;
      const auto dc = channels::derive(ch, at(detuning, delta));
      const auto port = fieldobs::OutputPort::make(Port::Transmission, dc);
      const double tau = 1.0 / dc.gamma_ryd;

      auto numeric = [&](double sat) {
        const double eps = channels::field_for_saturation(dc, sat);
        const fieldobs::NumericRoute route(dc, dc, eps, eps, Port::Transmission);
        return std::array<double, 3>{route.g1(0), route.G2(0.0), route.G2(tau)};
      };
      const auto n1 = numeric(s);
      const auto n2 = numeric(0.5 * s);

      // Closed forms at the drive strength of the numeric run (S_2 = S_1 = S).
      const double a_g1 = fieldobs::analytic_g1(dc, port, s);
      const double a_g20 = fieldobs::analytic_G2_zero(dc, port, s);
      const double a_g2t = fieldobs::analytic_G2_tau(dc, dc, Port::Transmission, tau);
      raw.g1 = std::max(raw.g1, rel(n1[0], a_g1));
      raw.g2_0 = std::max(raw.g2_0, rel(n1[1], a_g20));
      raw.g2_tau = std::max(raw.g2_tau, rel(n1[2], a_g2t));

      // Two-point extrapolation S -> 0 removes the O(S) saturation of the numerics.
      extrap.g1 = std::max(extrap.g1, rel(2 * n2[0] - n1[0], fieldobs::analytic_g1(dc, port, 0.0)));
      extrap.g2_0 = std::max(extrap.g2_0, rel(2 * n2[1] - n1[1], fieldobs::analytic_G2_zero(dc, port, 0.0)));
      extrap.g2_tau = std::max(extrap.g2_tau, rel(2 * n2[2] - n1[2], a_g2t));
    }
  }
  bound(r, "max rel |G1 numeric - closed form|", raw.g1, 1e-4);
  bound(r, "max rel |G2(0) numeric - closed form|", raw.g2_0, 1e-4);
  bound(r, "max rel |G2(1/gamma) numeric - closed form|", raw.g2_tau, 1e-4);
  info(r, "S->0 extrapolated: max rel G1", extrap.g1);
  info(r, "S->0 extrapolated: max rel G2(0)", extrap.g2_0);
  info(r, "S->0 extrapolated: max rel G2(1/gamma)", extrap.g2_tau);
  r.notes.push_back(
      "the closed forms are first order in the saturation; at S = 1e-4 the numerics carry O(S) self-saturation "
      "terms that are not small relative to G1 near full absorption, so the pointwise 1e-4 target is not reachable "
      "at this drive strength. The extrapolated rows show agreement of the weak-field limits.");
}

void c10_entanglement(CriterionResult& r) {
  const auto ch = lossy(0.05);
  const double r_res2 = std::pow(channels::resonant_reflectivity(ch), 2);
  double worst_peak = 0;
  bool is_peak = true;
  for (double detuning : {-0.8, -0.3, 0.0, 0.2, 0.6, 2.0}) {
    const auto rp = channels::resonance_curves(ch, kOmegaC, detuning);
    const auto scale = fieldobs::FieldScale{1.0, 0.0, std::numbers::pi / 2};
    const auto dc = channels::derive(ch, at(detuning, rp.rydberg_delta));
    const double k = fieldobs::entanglement_measures(dc, dc, scale).k_param;
    worst_peak = std::max(worst_peak, std::abs(k - r_res2));
    for (double off : {-1e-3, 1e-3}) {
      const auto side = channels::derive(ch, at(detuning, rp.rydberg_delta + off * dc.gamma_ryd));
      is_peak &= fieldobs::entanglement_measures(side, side, scale).k_param < k;
    }
  }
  info(r, "r_res^2", r_res2);
  bound(r, "max |K(delta=omega) - r_res^2|", worst_peak, 1e-6);
  flag(r, "K is a local maximum at delta = omega", is_peak);

  // The drive ratio e0 = |E_p/E0|^2 is tied to the saturation: 2 e0 K = (gamma0/Bc) |r|^2 S with
  // gamma0/Bc << 1. Take the loosest bound gamma0/Bc = 1; e0 = 0.1 is kept as an out-of-regime probe.
  const double s = 1e-4;
  double worst_d = 0, worst_k = 0, worst_probe = 0;
  bool entangled = true;
  for (double detuning : {-0.5, 0.0, 0.4}) {
    for (double dshift : {0.0, 0.5}) {
      const auto rp = channels::resonance_curves(ch, kOmegaC, detuning);
      const auto dc0 = channels::derive(ch, at(detuning, rp.rydberg_delta));
      const auto dc = channels::derive(ch, at(detuning, rp.rydberg_delta + dshift * dc0.gamma_ryd));
      const double k = std::norm(dc.x());
      const double e0 = std::norm(dc.r) * s / (2.0 * k);
      const fieldobs::FieldScale scale{1.0, e0, std::numbers::pi / 2};
      const auto an = fieldobs::entanglement_measures(dc, dc, scale);
      const double eps = channels::field_for_saturation(dc, s);
      const fieldobs::NumericRoute route(dc, dc, eps, std::polar(eps, -scale.phase_phi), Port::Transmission);
      const auto nu = route.entanglement(e0);
      worst_d = std::max(worst_d, rel(nu.duan_d, an.duan_d));
      worst_k = std::max(worst_k, rel(1.0 - nu.duan_d, 1.0 - an.duan_d));
      entangled &= nu.duan_d < 1.0;
      const auto probe_an = fieldobs::entanglement_measures(dc, dc, {1.0, 0.1, std::numbers::pi / 2});
      worst_probe = std::max(worst_probe, rel(route.entanglement(0.1).duan_d, probe_an.duan_d));
    }
  }
  bound(r, "max rel |D numeric - (1 - 2 e0 K)|, 2 e0 K = |r|^2 S", worst_d, 1e-4);
  info(r, "max rel deviation of 1 - D (O(S) saturation)", worst_k);
  info(r, "max rel |D numeric - (1 - 2 e0 K)| at e0 = 0.1", worst_probe);
  flag(r, "D < 1 flags entanglement at every tested point", entangled);
  const auto dc = channels::derive(ch, at(0.0, 0.0));
  const auto vac = fieldobs::entanglement_measures(dc, dc, {1.0, 0.0, std::numbers::pi / 2});
  flag(r, "E_p = 0 gives D = V = 1 (not entangled)", vac.duan_d == 1.0 && vac.squeezing_v == 1.0);

  // Shipped fig4b scan: K maximum tracks delta = omega.
  const auto cfg = config::load_preset("fig4b");
  const auto pts = scan::grid(cfg);
  const auto k = scan::run_scan(cfg, 4).numeric_column("k_param");
  const int ny = cfg.y->points, nx = cfg.x->points;
  const double dy = pts[1].delta - pts[0].delta;
  double kmax = 0;
  int off_curve = 0;
  for (int i = 0; i < nx; ++i) {
    int best = 0;
    for (int j = 0; j < ny; ++j)
      if (k[i * ny + j] > k[i * ny + best]) best = j;
    kmax = std::max(kmax, k[i * ny + best]);
    const auto& p = pts[i * ny + best];
    const double omega =
        channels::resonance_curves(cfg.physics.channel1, cfg.physics.omega_c, cfg.physics.channel1.delta_k + p.detuning)
            .rydberg_delta;
    if (std::abs(p.delta - omega) > dy) ++off_curve;
  }
  info(r, "fig4b grid maximum of K", kmax);
  bound(r, "fig4b: relative gap of grid max to r_res^2", rel(kmax, r_res2), 1e-2);
  bound(r, "fig4b: columns whose K maximum is off delta = omega by > 1 cell", off_curve, 0);
}

void c11_oracle(CriterionResult& r) {
  const auto ch = lossy(0.05);
  const auto dc = channels::derive(ch, at(0.0, 0.0));
  const double target = fieldobs::analytic_g2_zero(dc, fieldobs::OutputPort::make(Port::Transmission, dc));
  lattice::LatticeSpec patch{1.0, 6, Eigen::Vector3d::UnitX(), 2.0, 1.0};
  const Eigen::Vector2d k1(0.0, 0.0), k2(2.0 * std::numbers::pi / 6.0, 0.0);
  auto model = oracle::two_mode_model(patch, dc, k1, k2, 1.0, Complex(0.0, 1.0));

  oracle::set_uniform_interaction(model, 0.0);
  const double g_free = oracle::realspace_field_g2(model, dc, k1, k2, 1.0, Complex(0.0, 1.0), Port::Transmission);
  bound(r, "|g2(V=0) - 1|", std::abs(g_free - 1.0), 1e-10);
  info(r, "blockaded analytic g2_12,+(0)", target);
  for (double v : {1e3, 1e4, 1e5, 1e6}) {
    oracle::set_uniform_interaction(model, v * dc.gamma_ryd);
    const double g = oracle::realspace_field_g2(model, dc, k1, k2, 1.0, Complex(0.0, 1.0), Port::Transmission);
    std::ostringstream name;
    name << "relative deviation at V = " << v << " gamma";
    bound(r, name.str(), rel(g, target), 0.02);
  }
  oracle::set_uniform_interaction(model, std::abs(dc.pole()));
  const double g_mid = oracle::realspace_field_g2(model, dc, k1, k2, 1.0, Complex(0.0, 1.0), Port::Transmission);
  info(r, "g2 at V = |gamma/2 + i(omega - delta)|", g_mid);
  flag(r, "crossover value lies between the V = infinity and V = 0 limits", g_mid > target && g_mid < 1.0);
}

void c12_dual_integrator(CriterionResult& r) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0, worst_ss = 0;
  for (int trial = 0; trial < 6; ++trial) {
    mastereq::BlockadedModel model;
    for (int k = 0; k < 2; ++k) {
      const double gamma = 0.1 + 0.9 * uni(rng);
      const double omega = uni(rng) - 0.5;
      const Complex drive = std::polar(1e-2 * gamma * uni(rng), 2 * std::numbers::pi * uni(rng));
      model.modes.push_back({"k" + std::to_string(k + 1), omega, gamma, drive});
    }
    const double delta = 0.4 * (uni(rng) - 0.5);
    const double t = 10.0 / std::min(model.modes[0].gamma, model.modes[1].gamma);
    const auto rho0 = mastereq::BlockadedState::ground(3);
    const auto a = mastereq::evolve(rho0, model, delta, t);
    const auto b = oracle::independent_integrator(model, delta, t, rho0);
    worst = std::max(worst, mastereq::trace_distance(a.rho, b.rho));
    worst_ss = std::max(worst_ss, mastereq::trace_distance(mastereq::steady_state(model, delta).rho,
                                                           oracle::independent_steady_state(model, delta).rho));
  }
  bound(r, "max trace distance at t = 10/gamma (6 random instances)", worst, 1e-7);
  bound(r, "max trace distance of steady states", worst_ss, 1e-7);
}

void c13_shapes(CriterionResult& r) {
  const auto cfg = config::load_preset("fig3a");
  const auto pts = scan::grid(cfg);
  const auto g2 = scan::run_scan(cfg, 4).numeric_column("g2_zero");
  const int nx = cfg.x->points, ny = cfg.y->points;
  const double gamma0_grid = cfg.physics.gamma0();
  std::vector<double> xs(nx), ys(ny);
  for (int i = 0; i < nx; ++i) xs[i] = pts[i * ny].detuning / cfg.physics.channel1.gamma_k;
  for (int j = 0; j < ny; ++j) ys[j] = pts[j].delta / gamma0_grid;

  int x0 = 0;
  for (int i = 0; i < nx; ++i)
    if (std::abs(xs[i]) < std::abs(xs[x0])) x0 = i;
  int ymin = 0;
  for (int j = 0; j < ny; ++j)
    if (g2[x0 * ny + j] < g2[x0 * ny + ymin]) ymin = j;
  info(r, "delta/gamma0 of the minimum along delta_p = Delta", ys[ymin]);
  flag(r, "minimum along delta_p = Delta at delta = 0", std::abs(ys[ymin]) < 1e-12 && std::abs(xs[x0]) < 1e-12);

  // Hyperbola delta/gamma0 = (1/4)/((delta_p - Delta)/Gamma) against the column maxima.
  auto hyper = [](double x) { return 0.25 / x; };
  int checked = 0, missed = 0;
  for (int i = 1; i + 1 < nx; ++i) {
    if (std::abs(hyper(xs[i])) > ys.back()) continue;
    int best = 0;
    for (int j = 0; j < ny; ++j)
      if (g2[i * ny + j] > g2[i * ny + best]) best = j;
    const double lo = ys[std::max(best - 1, 0)], hi = ys[std::min(best + 1, ny - 1)];
    const double h1 = hyper(xs[i - 1]), h2 = hyper(xs[i + 1]);
    const bool hit = std::max(h1, h2) >= lo && std::min(h1, h2) <= hi;
    ++checked;
    if (!hit) ++missed;
  }
  info(r, "columns with the hyperbola inside the y range", checked);
  bound(r, "column maxima more than one cell from the hyperbola", missed, 0);

  const auto ch = lossy(0.05);
  const double gamma0 = channels::transparency_width(ch, at(0.0, 0.0));
  double prev = 0;
  bool monotone = true;
  double last = 0;
  for (double d : {1.0, 0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3, 1e-4}) {
    const auto dc = channels::derive(ch, at(0.0, d * gamma0));
    const double g = fieldobs::analytic_g2_zero(dc, fieldobs::OutputPort::make(Port::Reflection, dc));
    monotone &= g > prev;
    prev = last = g;
  }
  flag(r, "reflection g2 increases monotonically as delta -> 0", monotone);
  info(r, "reflection g2 at delta = 1e-4 gamma0", last);
  flag(r, "reflection g2 diverges (> 1e6 at delta = 1e-4 gamma0)", last > 1e6);
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "closed-form Gamma_k0 = 3.10 MHz", Level::Fast, c1_closed_form},
      {2, "lattice-sum convergence to the closed form", Level::Full, c2_lattice_convergence},
      {3, "EIT width gamma/2pi = 0.726 MHz", Level::Fast, c3_eit_width},
      {4, "reflectivity anchors", Level::Fast, c4_reflectivity},
      {5, "EIT reflectivity limits", Level::Fast, c5_eit_limits},
      {6, "antibunching anchor |1-r^2|^2", Level::Fast, c6_antibunching},
      {7, "bunching saturation along delta = omega", Level::Fast, c7_saturation},
      {8, "correlation time set by gamma_2", Level::Fast, c8_correlation_time},
      {9, "analytic vs master-equation equivalence at S = 1e-4", Level::Full, c9_equivalence},
      {10, "entanglement anchor K = r_res^2 and numeric D", Level::Full, c10_entanglement},
      {11, "real-space oracle converges to the blockaded g2", Level::Full, c11_oracle},
      {12, "dual master-equation integrators agree", Level::Full, c12_dual_integrator},
      {13, "qualitative shape of the g2 maps", Level::Fast, c13_shapes},
  };
  return list;
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  r.level = c.level;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(r);
    r.passed = !r.measurements.empty();
    for (const auto& m : r.measurements) r.passed &= m.ok;
  } catch (const std::exception& e) {
    r.passed = false;
    r.notes.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run(Level level) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria())
    if (level == Level::Full || c.level == Level::Fast) out.push_back(run_criterion(c));
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title << " (";
  bool first = true;
  for (const auto& m : r.measurements) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", m.value);
    os << (first ? "" : "; ") << m.name << " = " << buf;
    if (m.tolerance > 0) {
      std::snprintf(buf, sizeof buf, "%.3g", m.tolerance);
      os << " <= " << buf;
    }
    first = false;
  }
  os << ")";
  return os.str();
}

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  bool all = true;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all &= r.passed;
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["level"] = to_string(r.level);
    c["passed"] = r.passed;
    c["seconds"] = r.seconds;
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const auto& m : r.measurements) {
      nlohmann::ordered_json mj;
      mj["name"] = m.name;
      mj["value"] = std::isfinite(m.value) ? nlohmann::ordered_json(m.value) : nlohmann::ordered_json(std::to_string(m.value));
      if (m.tolerance > 0) mj["tolerance"] = m.tolerance;
      mj["ok"] = m.ok;
      ms.push_back(mj);
    }
    c["measurements"] = ms;
    c["notes"] = r.notes;
    list.push_back(c);
  }
  j["passed"] = all;
  j["criteria"] = list;
  return j;
}

Level parse_level(const std::string& s) {
  if (s == "fast") return Level::Fast;
  if (s == "full") return Level::Full;
  throw DomainError("unknown verification level '" + s + "' (expected fast or full)");
}

const char* to_string(Level level) { return level == Level::Fast ? "fast" : "full"; }

}  // namespace aqed::verify
