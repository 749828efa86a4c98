#include "aqed/fieldobs.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqed/errors.hpp"

namespace aqed::fieldobs {

namespace {

double re(Complex z) { return z.real(); }

bool same_channel(const DerivedChannel& a, const DerivedChannel& b) {
  return a.r == b.r && a.r_tilde == b.r_tilde && a.pole() == b.pole();
}

double weak_g1(const DerivedChannel& ch, Port port) { return analytic_g1(ch, OutputPort::make(port, ch), 0.0); }

}  // namespace

OutputPort OutputPort::make(Port direction, const DerivedChannel& dc) {
  return {direction, direction == Port::Transmission ? 1.0 + dc.r : dc.r};
}

const char* to_string(Port port) { return port == Port::Transmission ? "transmission" : "reflection"; }

Port parse_port(const std::string& text) {
  if (text == "+" || text == "transmission" || text == "plus") return Port::Transmission;
  if (text == "-" || text == "reflection" || text == "minus") return Port::Reflection;
  throw DomainError("unknown port '" + text + "' (expected transmission|reflection|+|-)");
}

const char* to_string(Provenance p) { return p == Provenance::Analytic ? "analytic" : "numeric"; }

void FieldScale::validate() const {
  if (!(e0_ratio >= 0)) throw DomainError("field scale: e0_ratio must be non-negative");
}

// ---------------------------------------------------------------- input-output map

std::string AtomicBundle::term_name(int a, int b, int c) {
  static const char* as[] = {"", "s1^dag(t) "};
  static const char* bs[] = {"1", "s2(t+tau)", "s2^dag(t+tau)", "s2^dag s2(t+tau)"};
  static const char* cs[] = {"", " s1(t)"};
  return std::string("<") + as[a] + bs[b] + cs[c] + ">";
}

FieldAmplitudes field_amplitudes(const OutputPort& port, const DerivedChannel& dc, Complex e_p, Complex e_c,
                                 double kz_z) {
  return {port.b * e_p, dc.r * std::conj(e_c), kz_z};
}

FieldCorrelators output_field_map(const std::array<FieldAmplitudes, 2>& fields, const AtomicBundle& atomic) {
  auto need = [](const auto& opt, const std::string& name) {
    if (!opt) throw ContractError("output_field_map: missing atomic correlator " + name);
    return *opt;
  };
  FieldCorrelators out;
  std::array<Complex, 2> mean{};
  for (int k = 0; k < 2; ++k) {
    const auto& f = fields[k];
    const std::string id = std::to_string(k + 1);
    const Complex s = need(atomic.sigma[k], "<s" + id + ">");
    const double n = need(atomic.population[k], "<s" + id + "^dag s" + id + ">");
    out.g1[k] = std::norm(f.alpha) + std::norm(f.beta) * n + 2.0 * re(std::conj(f.alpha) * f.beta * s);
    out.fluctuation[k] = std::norm(f.beta) * (n - std::norm(s));
    mean[k] = f.alpha + f.beta * s;
  }

  // Equal-time fluctuation moments (used by the entanglement witnesses).
  const Complex ph1 = std::polar(1.0, fields[0].phase), ph2 = std::polar(1.0, fields[1].phase);
  if (atomic.sigma_pair) {
    out.pair_moment = ph1 * ph2 * fields[0].beta * fields[1].beta * (*atomic.sigma_pair - *atomic.sigma[0] * *atomic.sigma[1]);
  }
  if (atomic.coherence) {
    out.cross_fluctuation =
        std::conj(ph1) * ph2 * std::conj(fields[0].beta) * fields[1].beta *
        (*atomic.coherence - std::conj(*atomic.sigma[0]) * *atomic.sigma[1]);
  }
  for (int k = 0; k < 2; ++k) {
    if (atomic.sigma_sq[k]) {
      const Complex ph = k == 0 ? ph1 : ph2;
      out.self_squeeze[k] = ph * ph * fields[k].beta * fields[k].beta * (*atomic.sigma_sq[k] - *atomic.sigma[k] * *atomic.sigma[k]);
    }
  }

  bool any_two_time = false;
  for (const auto& t : atomic.two_time) any_two_time |= t.has_value();
  if (any_two_time) {
    const auto& f1 = fields[0];
    const auto& f2 = fields[1];
    const std::array<Complex, 2> wa{std::conj(f1.alpha), std::conj(f1.beta)};
    const std::array<Complex, 2> wc{f1.alpha, f1.beta};
    const std::array<Complex, 4> wb{std::norm(f2.alpha), std::conj(f2.alpha) * f2.beta, std::conj(f2.beta) * f2.alpha,
                                    std::norm(f2.beta)};
    Complex g2 = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 2; ++c)
          g2 += wa[a] * wb[b] * wc[c] *
                need(atomic.two_time[AtomicBundle::index(a, b, c)], AtomicBundle::term_name(a, b, c));
    out.g2 = g2.real();
  }
  return out;
}

// ---------------------------------------------------------------- closed forms

double analytic_g1(const DerivedChannel& ch, const OutputPort& port, double s_other) {
  const Complex b = port.b, x = ch.x();
  return std::norm(b) + (std::norm(x) - 2.0 * re(std::conj(b) * x)) / (1.0 + s_other);
}

double analytic_G2_zero(const DerivedChannel& ch, const OutputPort& port, double s_other) {
  const Complex b = port.b, x = ch.x();
  const double b2 = std::norm(b);
  return b2 * b2 - 2.0 / (1.0 + s_other) * (2.0 * b2 * re(std::conj(b) * x) - 2.0 * b2 * std::norm(x));
}

double analytic_g2_zero(const DerivedChannel& ch, const OutputPort& port, double s_other) {
  const double g1 = analytic_g1(ch, port, 0.0);
  if (!(g1 > 0)) throw DomainError("analytic_g2_zero: G1 vanishes, g2 normalization undefined");
  return analytic_G2_zero(ch, port, s_other) / (g1 * g1);
}

double analytic_G2_tau(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port, double tau) {
  if (tau < 0) throw DomainError("analytic_G2_tau: tau must be non-negative");
  const Complex b = OutputPort::make(port, ch1).b, bp = OutputPort::make(port, ch2).b;
  const Complex x = ch1.x(), xp = ch2.x();
  const double nb = std::norm(b), nbp = std::norm(bp), nx = std::norm(x), nxp = std::norm(xp);
  const Complex e = std::exp(-ch2.pole() * tau) - 1.0;
  double g = nb * nbp;
  g -= 2.0 * re(nbp * std::conj(b) * x + nb * std::conj(bp) * xp);
  g += nbp * nx + nb * nxp;
  g += 2.0 * re(b * std::conj(bp) * std::conj(x) * xp);
  g += 2.0 * re((std::conj(bp) * nx * xp + std::conj(b) * nxp * x - std::conj(b) * std::conj(bp) * x * xp) * e);
  g += nx * nxp * std::norm(e);
  return g;
}

void check_weak_field(double s, const std::string& what, std::vector<std::string>* warnings, bool refuse_strong) {
  switch (channels::classify_saturation(s)) {
    case channels::FieldRegime::Weak: return;
    case channels::FieldRegime::Marginal:
      if (warnings) warnings->push_back(what + " = " + std::to_string(s) + " exceeds the weak-field limit 1e-2");
      return;
    case channels::FieldRegime::Strong:
      if (refuse_strong)
        throw DomainError(what + " = " + std::to_string(s) +
                          " > 1: weak-field closed form not valid, use the master-equation route");
      if (warnings) warnings->push_back(what + " = " + std::to_string(s) + " > 1: weak-field closed form not valid");
      return;
  }
}

std::vector<double> analytic_g2_tau(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                    const std::vector<double>& taus, double s1, double s2,
                                    std::vector<std::string>* warnings) {
  check_weak_field(s1, "S_1", warnings, true);
  check_weak_field(s2, "S_2", warnings, true);
  const double norm = weak_g1(ch1, port) * weak_g1(ch2, port);
  if (!(norm > 0)) throw DomainError("analytic_g2_tau: G1 product vanishes, g2 normalization undefined");
  std::vector<double> out;
  out.reserve(taus.size());
  for (double tau : taus) out.push_back(analytic_G2_tau(ch1, ch2, port, tau) / norm);
  return out;
}

Entanglement entanglement_measures(const DerivedChannel& ch1, const DerivedChannel& ch2, const FieldScale& scale) {
  scale.validate();
  const Complex x1 = ch1.x(), x2 = ch2.x();
  const Complex ph = std::polar(1.0, scale.phase_phi);
  Entanglement e;
  e.k_param = std::abs(x1 * x2);
  e.k_sq = std::abs(x1 * x1 * ph * ph + x2 * x2 + 2.0 * x1 * x2 * ph);
  if (2.0 * scale.e0_ratio * e.k_param >= 1.0)
    throw DomainError("entanglement_measures: 2|E_p/E_0|^2 K = " + std::to_string(2.0 * scale.e0_ratio * e.k_param) +
                      " >= 1; the weak-field witnesses require this product (reflectivity squared times saturation "
                      "times |E_c/E_0|^2) to be small");
  e.duan_d = 1.0 - 2.0 * scale.e0_ratio * e.k_param;
  e.squeezing_v = 1.0 - scale.e0_ratio * e.k_sq;
  return e;
}

double lorentzian_k(const DerivedChannel& ch) {
  const double detune = ch.delta - ch.omega_k;
  return ch.r_res * ch.r_res / (1.0 + 4.0 * detune * detune / (ch.gamma_ryd * ch.gamma_ryd));
}

double saturated_limit_g2(double r_res) {
  if (r_res == 1.0) return std::numeric_limits<double>::infinity();
  const double num = 1.0 - 2.0 * r_res;
  const double den = 1.0 - r_res;
  return num * num / (den * den * den * den);
}

CorrelationSet analytic_correlations(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                     const std::vector<double>& taus, const FieldScale& scale, double s1, double s2) {
  CorrelationSet cs;
  cs.provenance = Provenance::Analytic;
  check_weak_field(s1, "S_1", &cs.warnings, false);
  check_weak_field(s2, "S_2", &cs.warnings, false);
  cs.g1 = {analytic_g1(ch1, OutputPort::make(port, ch1), s2), analytic_g1(ch2, OutputPort::make(port, ch2), s1)};

  const double norm = weak_g1(ch1, port) * weak_g1(ch2, port);
  if (same_channel(ch1, ch2)) {
    cs.g2_zero = norm > 0 ? analytic_G2_zero(ch1, OutputPort::make(port, ch1), s2) / norm
                          : std::numeric_limits<double>::infinity();
  } else {
    cs.g2_zero = norm > 0 ? analytic_G2_tau(ch1, ch2, port, 0.0) / norm : std::numeric_limits<double>::infinity();
  }
  cs.tau = taus;
  if (!taus.empty()) {
    if (std::max(s1, s2) > channels::kStrongFieldLimit) {
      cs.warnings.push_back("G2(tau) omitted: saturation above 1, use the numeric route");
      cs.tau.clear();
    } else if (norm > 0) {
      cs.g2_tau = analytic_g2_tau(ch1, ch2, port, taus, s1, s2, nullptr);
    } else {
      cs.g2_tau.assign(taus.size(), std::numeric_limits<double>::infinity());
    }
  }
  const auto ent = entanglement_measures(ch1, ch2, scale);
  cs.duan_d = ent.duan_d;
  cs.squeezing_v = ent.squeezing_v;
  cs.k_param = ent.k_param;
  cs.k_sq = ent.k_sq;
  return cs;
}

// ---------------------------------------------------------------- numeric route

namespace {

mastereq::BlockadedModel two_channel_model(const std::array<DerivedChannel, 2>& ch, const std::array<Complex, 2>& eps) {
  return mastereq::BlockadedModel::from_channels(
      {ch[0], ch[1]}, {channels::effective_drive_scaled(ch[0], eps[0]), channels::effective_drive_scaled(ch[1], eps[1])},
      {"k1", "k2"});
}

}  // namespace

NumericRoute::NumericRoute(const DerivedChannel& ch1, const DerivedChannel& ch2, Complex eps1, Complex eps2, Port port,
                           double kz_z)
    : ch_{ch1, ch2},
      eps_{eps1, eps2},
      amp_{field_amplitudes(OutputPort::make(port, ch1), ch1, eps1, 1.0, kz_z),
           field_amplitudes(OutputPort::make(port, ch2), ch2, eps2, 1.0, kz_z)},
      regression_(two_channel_model(ch_, eps_), ch1.delta) {
  if (ch1.delta != ch2.delta) throw DomainError("numeric route: channels must share the two-photon detuning");
}

AtomicBundle NumericRoute::bundle(double tau) const {
  const int dim = 3;
  const Eigen::MatrixXcd s1 = mastereq::lowering(dim, 1), s2 = mastereq::lowering(dim, 2);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const auto& st = regression_.steady();

  AtomicBundle b;
  b.sigma = {st.expect(s1), st.expect(s2)};
  b.population = {st.expect(s1.adjoint() * s1).real(), st.expect(s2.adjoint() * s2).real()};
  b.sigma_sq = {st.expect(s1 * s1), st.expect(s2 * s2)};
  b.sigma_pair = st.expect(s1 * s2);
  b.coherence = st.expect(s1.adjoint() * s2);

  const std::array<Eigen::MatrixXcd, 2> as{id, s1.adjoint()};
  const std::array<Eigen::MatrixXcd, 4> bs{id, s2, s2.adjoint(), s2.adjoint() * s2};
  const std::array<Eigen::MatrixXcd, 2> cs{id, s1};
  Eigen::MatrixXcd expl;
  if (tau > 0) expl = (regression_.generator() * tau).exp();
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      Eigen::MatrixXcd x = cs[c] * st.rho * as[a];
      if (tau > 0) x = mastereq::unvec(expl * mastereq::vec(x), dim);
      for (int bi = 0; bi < 4; ++bi) b.two_time[AtomicBundle::index(a, bi, c)] = (bs[bi] * x).trace();
    }
  }
  return b;
}

FieldCorrelators NumericRoute::fields(double tau) const { return output_field_map(amp_, bundle(tau)); }

double NumericRoute::g1(int k) const {
  const auto f = fields(0.0);
  return f.g1[k] / std::norm(eps_[k]);
}

double NumericRoute::G2(double tau) const { return *fields(tau).g2 / (std::norm(eps_[0]) * std::norm(eps_[1])); }

double NumericRoute::g2(double tau) const {
  const auto f = fields(tau);
  return *f.g2 / (f.g1[0] * f.g1[1]);
}

double NumericRoute::saturation(int k) const {
  return channels::saturation(ch_[k], channels::effective_drive_scaled(ch_[k], eps_[k]));
}

Entanglement NumericRoute::entanglement(double e0_ratio) const {
  const auto f = fields(0.0);
  const double c = e0_ratio / std::norm(eps_[0]);
  Entanglement e;
  e.duan_d = 1.0 + c * (f.fluctuation[0] + f.fluctuation[1]) - 2.0 * c * std::abs(f.pair_moment);
  const double n_total = f.fluctuation[0] + f.fluctuation[1] + 2.0 * f.cross_fluctuation.real();
  const Complex sq_total = f.self_squeeze[0] + f.self_squeeze[1] + 2.0 * f.pair_moment;
  e.squeezing_v = 1.0 + c * n_total - c * std::abs(sq_total);
  e.k_param = std::abs(f.pair_moment) / std::abs(eps_[0] * eps_[1]);
  e.k_sq = std::abs(sq_total) / std::norm(eps_[0]);
  return e;
}

Entanglement NumericRoute::entanglement_theta_grid(double e0_ratio, int points) const {
  const auto f = fields(0.0);
  const double c = e0_ratio / std::norm(eps_[0]);
  const double n_total = f.fluctuation[0] + f.fluctuation[1] + 2.0 * f.cross_fluctuation.real();
  const Complex sq_total = f.self_squeeze[0] + f.self_squeeze[1] + 2.0 * f.pair_moment;
  Entanglement e = entanglement(e0_ratio);
  e.duan_d = e.squeezing_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const Complex rot = std::polar(1.0, 2.0 * std::numbers::pi * i / points);  // e^{2i theta}, theta in [0, pi)
    const double d = 1.0 + c * (f.fluctuation[0] + f.fluctuation[1]) + 2.0 * c * re(rot * f.pair_moment);
    const double v = 1.0 + c * n_total + c * re(rot * sq_total);
    e.duan_d = std::min(e.duan_d, d);
    e.squeezing_v = std::min(e.squeezing_v, v);
  }
  return e;
}

CorrelationSet numeric_correlations(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                    const std::vector<double>& taus, const FieldScale& scale, double s1) {
  scale.validate();
  const double amp = channels::field_for_saturation(ch1, s1);
  const Complex eps1 = amp, eps2 = std::polar(amp, -scale.phase_phi);
  const NumericRoute route(ch1, ch2, eps1, eps2, port);

  CorrelationSet cs;
  cs.provenance = Provenance::Numeric;
  const auto f0 = route.fields(0.0);
  cs.g1 = {f0.g1[0] / std::norm(eps1), f0.g1[1] / std::norm(eps2)};
  const double norm = f0.g1[0] * f0.g1[1];
  cs.g2_zero = *f0.g2 / norm;
  cs.tau = taus;
  for (double tau : taus) cs.g2_tau.push_back(*route.fields(tau).g2 / norm);
  const auto ent = route.entanglement(scale.e0_ratio);
  cs.duan_d = ent.duan_d;
  cs.squeezing_v = ent.squeezing_v;
  cs.k_param = ent.k_param;
  cs.k_sq = ent.k_sq;
  check_weak_field(route.saturation(0), "S_1", &cs.warnings, false);
  check_weak_field(route.saturation(1), "S_2", &cs.warnings, false);
  return cs;
}

}  // namespace aqed::fieldobs
