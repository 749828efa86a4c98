#include "aqed/scan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "aqed/errors.hpp"

namespace aqed::scan {

namespace {

double to_gamma_units(double v, units::RateUnit unit, const config::Physics& ph) {
  switch (unit) {
    case units::RateUnit::Gamma: return v;
    case units::RateUnit::Gamma0: return v * ph.gamma0();
    case units::RateUnit::MHz:
      if (!ph.gamma_mhz) throw ConfigError("scan", "MHz axis needs the reference scale Gamma in MHz");
      return v / *ph.gamma_mhz;
  }
  return v;
}

std::string rate_tag(const config::ScanConfig& cfg) {
  return cfg.output_units == config::OutputUnits::MHz ? "[MHz]" : "[Gamma]";
}

double out_rate(const config::ScanConfig& cfg, double v_gamma) {
  if (cfg.output_units == config::OutputUnits::Dimensionless) return v_gamma;
  if (!cfg.physics.gamma_mhz) throw ConfigError("units", "MHz output needs the reference scale Gamma in MHz");
  return units::convert(units::Rate{v_gamma, units::RateUnit::Gamma}, units::RateUnit::MHz, cfg.physics.scales()).value;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

std::vector<GridPoint> grid(const config::ScanConfig& cfg) {
  const auto& ph = cfg.physics;
  std::vector<double> xs{ph.detuning};
  if (cfg.x) {
    xs.clear();
    for (double v : cfg.x->values()) xs.push_back(to_gamma_units(v, cfg.x->unit, ph));
  }
  std::vector<GridPoint> pts;
  if (cfg.y_follows_rydberg_resonance) {
    for (size_t i = 0; i < xs.size(); ++i) {
      const auto rp = channels::resonance_curves(ph.channel1, ph.omega_c, ph.channel1.delta_k + xs[i]);
      pts.push_back({int(i), 0, xs[i], rp.rydberg_delta});
    }
    return pts;
  }
  std::vector<double> ys{ph.delta};
  if (cfg.y) {
    ys.clear();
    for (double v : cfg.y->values()) ys.push_back(to_gamma_units(v, cfg.y->unit, ph));
  }
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) pts.push_back({int(i), int(j), xs[i], ys[j]});
  return pts;
}

PointResult evaluate(const config::ScanConfig& cfg, const GridPoint& point) {
  const auto& ph = cfg.physics;
  PointResult res;
  res.point = point;
  res.ch1 = ph.derive(0, point.detuning, point.delta);
  res.ch2 = ph.derive(1, point.detuning, point.delta);

  // Channel-1 drive fixed by its saturation; E_p,2 = e^{-i phi} E_p,1.
  double eps = 0;
  if (ph.saturation > 0) {
    eps = channels::field_for_saturation(res.ch1, ph.saturation);
    res.s1 = ph.saturation;
    res.s2 = channels::saturation_from_field(res.ch2, eps);
  }
  const auto taus = cfg.taus_at(res.ch2.gamma_ryd);
  if (!cfg.taus.empty() && cfg.tau_in_gamma_ryd && !(res.ch2.gamma_ryd > 0))
    throw DomainError("delays in units of 1/gamma need a non-zero coupling field");

  auto scale = ph.scale;
  if (cfg.route == config::Route::Analytic) {
    try {
      res.set = fieldobs::analytic_correlations(res.ch1, res.ch2, ph.port, taus, scale, res.s1, res.s2);
    } catch (const DomainError& e) {
      // The entanglement witnesses refuse outside the weak-field bound; keep the rest.
      scale.e0_ratio = 0;
      res.set = fieldobs::analytic_correlations(res.ch1, res.ch2, ph.port, taus, scale, res.s1, res.s2);
      res.set.duan_d = res.set.squeezing_v = std::numeric_limits<double>::quiet_NaN();
      res.set.warnings.push_back(e.what());
    }
  } else {
    if (!(ph.saturation > 0)) throw ConfigError("drive.saturation", "numeric route needs a positive saturation");
    res.set = fieldobs::numeric_correlations(res.ch1, res.ch2, ph.port, taus, scale, ph.saturation);
  }
  return res;
}

std::vector<std::string> columns(const config::ScanConfig& cfg) {
  const std::string u = rate_tag(cfg);
  std::vector<std::string> c{"ix", "iy", "detuning" + u, "delta" + u, "detuning_over_Gamma", "delta_over_gamma0",
                             "r_re", "r_im", "r_tilde_re", "r_tilde_im", "omega" + u, "gamma" + u, "gamma0" + u,
                             "S1", "S2", "g1_1", "g1_2", "g2_zero", "duan_d", "squeezing_v", "k_param", "k_sq"};
  const std::string tu = cfg.tau_in_gamma_ryd ? "/gamma" : "/Gamma";
  for (double t : cfg.taus) c.push_back("g2_tau[" + table::format_number(t) + tu + "]");
  c.push_back("provenance");
  c.push_back("warnings");
  return c;
}

namespace {

std::vector<std::string> row(const PointResult& r, const config::ScanConfig& cfg) {
  using table::format_number;
  const double gamma0 = cfg.physics.gamma0();
  std::vector<std::string> out{std::to_string(r.point.ix), std::to_string(r.point.iy),
                               format_number(out_rate(cfg, r.point.detuning)),
                               format_number(out_rate(cfg, r.point.delta)),
                               format_number(r.point.detuning / cfg.physics.channel1.gamma_k),
                               format_number(gamma0 > 0 ? r.point.delta / gamma0 : std::numeric_limits<double>::quiet_NaN()),
                               format_number(r.ch1.r.real()), format_number(r.ch1.r.imag()),
                               format_number(r.ch1.r_tilde.real()), format_number(r.ch1.r_tilde.imag()),
                               format_number(out_rate(cfg, r.ch1.omega_k)), format_number(out_rate(cfg, r.ch1.gamma_ryd)),
                               format_number(out_rate(cfg, r.ch1.gamma0)), format_number(r.s1), format_number(r.s2),
                               format_number(r.set.g1[0]), format_number(r.set.g1[1]), format_number(r.set.g2_zero),
                               format_number(r.set.duan_d), format_number(r.set.squeezing_v),
                               format_number(r.set.k_param), format_number(r.set.k_sq)};
  for (size_t i = 0; i < cfg.taus.size(); ++i)
    out.push_back(i < r.set.g2_tau.size() ? format_number(r.set.g2_tau[i]) : "nan");
  out.push_back(fieldobs::to_string(r.set.provenance));
  out.push_back(join(r.set.warnings));
  return out;
}

}  // namespace

table::Table run_scan(const config::ScanConfig& cfg, int jobs) {
  table::Table t;
  t.columns = columns(cfg);
  const auto pts = grid(cfg);
  t.rows.resize(pts.size());
  if (pts.empty()) return t;

  jobs = std::max(1, std::min<int>(jobs, int(pts.size())));
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < pts.size(); i = next++) {
      try {
        t.rows[i] = row(evaluate(cfg, pts[i]), cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = pts.size();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return t;
}

nlohmann::ordered_json to_json(const PointResult& r, const config::ScanConfig& cfg) {
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return table::format_number(v);
  };
  nlohmann::ordered_json j;
  j["preset"] = cfg.preset;
  j["route"] = config::to_string(cfg.route);
  j["port"] = fieldobs::to_string(cfg.physics.port);
  j["units"] = cfg.output_units == config::OutputUnits::MHz ? "MHz" : "Gamma";
  j["detuning"] = num(out_rate(cfg, r.point.detuning));
  j["delta"] = num(out_rate(cfg, r.point.delta));
  for (int k = 0; k < 2; ++k) {
    const auto& ch = k == 0 ? r.ch1 : r.ch2;
    nlohmann::ordered_json c;
    c["r"] = {num(ch.r.real()), num(ch.r.imag())};
    c["r_tilde"] = {num(ch.r_tilde.real()), num(ch.r_tilde.imag())};
    c["omega"] = num(out_rate(cfg, ch.omega_k));
    c["gamma"] = num(out_rate(cfg, ch.gamma_ryd));
    c["gamma0"] = num(out_rate(cfg, ch.gamma0));
    c["r_res"] = num(ch.r_res);
    c["saturation"] = num(k == 0 ? r.s1 : r.s2);
    c["g1"] = num(r.set.g1[k]);
    j[k == 0 ? "channel1" : "channel2"] = c;
  }
  j["g2_zero"] = num(r.set.g2_zero);
  nlohmann::ordered_json tau = nlohmann::ordered_json::array(), g2 = nlohmann::ordered_json::array();
  for (size_t i = 0; i < r.set.tau.size(); ++i) {
    tau.push_back(num(r.set.tau[i]));
    g2.push_back(num(i < r.set.g2_tau.size() ? r.set.g2_tau[i] : NAN));
  }
  j["tau_over_Gamma_inverse"] = tau;
  j["g2_tau"] = g2;
  j["duan_d"] = num(r.set.duan_d);
  j["squeezing_v"] = num(r.set.squeezing_v);
  j["k_param"] = num(r.set.k_param);
  j["k_sq"] = num(r.set.k_sq);
  j["provenance"] = fieldobs::to_string(r.set.provenance);
  j["warnings"] = r.set.warnings;
  return j;
}

}  // namespace aqed::scan
