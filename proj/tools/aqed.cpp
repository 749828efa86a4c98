// Command-line front end: params, scan, correlate, verify.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "aqed/blockade.hpp"
#include "aqed/config.hpp"
#include "aqed/errors.hpp"
#include "aqed/lattice.hpp"
#include "aqed/scan.hpp"
#include "aqed/table.hpp"
#include "aqed/verify.hpp"

using namespace aqed;

namespace {

enum Exit { kOk = 0, kConfig = 1, kVerify = 2, kNumeric = 3 };

struct Common {
  std::string config_path;
  std::string preset;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  std::string route;
  std::string port;
  std::string units;
};

config::ScanConfig load(const Common& c) {
  if (!c.config_path.empty() && !c.preset.empty()) throw ConfigError("--preset", "give either --config or --preset");
  if (c.config_path.empty() && c.preset.empty()) throw ConfigError("--config", "a config file or preset is required");
  auto cfg = c.preset.empty() ? config::load_config(c.config_path) : config::load_preset(c.preset);
  if (!c.route.empty()) {
    if (c.route == "analytic") cfg.route = config::Route::Analytic;
    else if (c.route == "numeric") cfg.route = config::Route::Numeric;
    else throw ConfigError("--route", "expected analytic or numeric");
  }
  if (!c.port.empty()) {
    try {
      cfg.physics.port = fieldobs::parse_port(c.port);
    } catch (const DomainError& e) {
      throw ConfigError("--port", e.what());
    }
  }
  if (!c.units.empty()) {
    if (c.units == "mhz" || c.units == "MHz") cfg.output_units = config::OutputUnits::MHz;
    else if (c.units == "dimensionless") cfg.output_units = config::OutputUnits::Dimensionless;
    else throw ConfigError("--units", "expected mhz or dimensionless");
  }
  return cfg;
}

// Writes to --out when given, stdout otherwise.
template <typename Fn>
void emit(const Common& c, Fn&& fn) {
  if (c.out.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("--out", "cannot open '" + c.out + "' for writing");
  fn(f);
}

// ---- params ----

void add(table::Table& t, const std::string& name, double v, const std::string& unit) {
  t.rows.push_back({name, table::format_number(v), unit});
}

void add_rate(table::Table& t, const config::ScanConfig& cfg, const std::string& name, double v_gamma) {
  if (cfg.output_units == config::OutputUnits::MHz) {
    if (!cfg.physics.gamma_mhz) throw ConfigError("units", "MHz output needs the reference scale Gamma in MHz");
    add(t, name, v_gamma * *cfg.physics.gamma_mhz, "MHz");
  } else {
    add(t, name, v_gamma, "Gamma");
  }
}

table::Table params(const config::ScanConfig& cfg, const std::string& subject) {
  table::Table t;
  t.columns = {"quantity", "value", "unit"};
  const auto& ph = cfg.physics;
  const bool all = subject == "all";

  if (all || subject == "lattice") {
    if (!ph.lattice) {
      if (subject == "lattice") throw ConfigError("lattice", "lattice section required");
    } else {
      const auto& spec = ph.lattice->spec;
      add(t, "Gamma_k0 closed form", lattice::gamma_k0_closed_form(spec.a, spec.lambda_p, spec.gamma_atom), "MHz");
      const auto rates = lattice::collective_rates(spec, Eigen::Vector2d::Zero(), ph.lattice->mode);
      add(t, "Gamma_k (lattice sum, n_side = " + std::to_string(spec.n_side) + ")", rates.gamma_k, "MHz");
      add(t, "Delta_k (lattice sum, n_side = " + std::to_string(spec.n_side) + ")", rates.delta_k, "MHz");
      for (const auto& w : spec.warnings()) std::cerr << "warning: " << w << "\n";
    }
  }

  if (all || subject == "channel" || subject == "blockade") {
    const auto dc = ph.derive(0, ph.detuning, ph.delta);
    if (all || subject == "channel") {
      add_rate(t, cfg, "Gamma_k", ph.channel1.gamma_k);
      add_rate(t, cfg, "Delta_k", ph.channel1.delta_k);
      add_rate(t, cfg, "gamma_sc", ph.channel1.gamma_sc);
      add_rate(t, cfg, "gamma0", dc.gamma0);
      add_rate(t, cfg, "gamma_k", dc.gamma_ryd);
      add_rate(t, cfg, "omega_k", dc.omega_k);
      add_rate(t, cfg, "delta", dc.delta);
      add(t, "r_re", dc.r.real(), "1");
      add(t, "r_im", dc.r.imag(), "1");
      add(t, "r_tilde_re", dc.r_tilde.real(), "1");
      add(t, "r_tilde_im", dc.r_tilde.imag(), "1");
      add(t, "r_res", dc.r_res, "1");
      add(t, "S_k", ph.saturation, "1");
      add(t, "field regime", ph.saturation, channels::to_string(channels::classify_saturation(ph.saturation)));
    }
    if (all || subject == "blockade") {
      if (!ph.vdw) {
        if (subject == "blockade") throw ConfigError("blockade.c6", "C6 required");
      } else {
        if (!ph.gamma_mhz) throw ConfigError("channel.gamma", "blockade radius needs Gamma in MHz");
        const double gamma_mhz = dc.gamma_ryd * *ph.gamma_mhz;
        const auto rb = blockade::blockade_radius(*ph.vdw, gamma_mhz, dc.omega_k * *ph.gamma_mhz, dc.delta * *ph.gamma_mhz);
        add(t, "R_b", rb.radius, "um");
        const auto rep = blockade::blockade_validity(*ph.vdw, gamma_mhz, ph.vdw_lattice_um.value_or(0.0));
        add(t, "beam waist", rep.beam_waist, "um");
        add(t, "w / R_b", rep.ratio, "1");
        add(t, "worst pair suppression", rep.worst_suppression, "1");
        add(t, "blockade valid (w < R_b)", rep.valid ? 1 : 0, "bool");
        if (!rep.valid) std::cerr << "warning: beam waist exceeds the blockade radius; single-blockade model invalid\n";
      }
    }
  }
  return t;
}

void write(const Common& c, const table::Table& t) {
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format", "expected csv or json");
  emit(c, [&](std::ostream& os) {
    if (c.format == "csv") table::write_csv(os, t);
    else table::write_json(os, t);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-channel photon correlations of a Rydberg atom array"};
  app.require_subcommand(1);
  Common common;
  std::string subject = "all";
  std::string level = "fast";

  auto add_common = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--config", common.config_path, "YAML config file");
    sub->add_option("--preset", common.preset, "shipped preset name (fig3a, fig3b, fig3c, fig4a, fig4b, sm6)");
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--format", common.format, "csv or json");
    sub->add_option("--route", common.route, "override the route: analytic or numeric");
    sub->add_option("--port", common.port, "override the port: transmission (+) or reflection (-)");
    sub->add_option("--units", common.units, "output units: mhz or dimensionless");
    if (with_jobs) sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* p = app.add_subcommand("params", "derived parameters of a config");
  add_common(p, false);
  p->add_option("--subject", subject, "lattice, channel, blockade or all")
      ->check(CLI::IsMember({"all", "lattice", "channel", "blockade"}));
  auto* s = app.add_subcommand("scan", "grid scan to CSV/JSON");
  add_common(s, true);
  auto* c = app.add_subcommand("correlate", "full correlation set at the config point (JSON)");
  add_common(c, false);
  auto* v = app.add_subcommand("verify", "acceptance criteria");
  v->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  v->add_option("--out", common.out, "JSON report path");
  v->add_option("--format", common.format, "csv (summary lines) or json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (p->parsed()) {
      write(common, params(load(common), subject));
    } else if (s->parsed()) {
      write(common, scan::run_scan(load(common), common.jobs));
    } else if (c->parsed()) {
      const auto cfg = load(common);
      scan::GridPoint pt{0, 0, cfg.physics.detuning, cfg.physics.delta};
      const auto j = scan::to_json(scan::evaluate(cfg, pt), cfg);
      emit(common, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    } else if (v->parsed()) {
      const auto results = verify::run(verify::parse_level(level));
      bool ok = true;
      for (const auto& r : results) {
        std::cout << verify::summary_line(r) << std::endl;
        ok &= r.passed;
      }
      if (!common.out.empty() || common.format == "json")
        emit(common, [&](std::ostream& os) { os << verify::to_json(results).dump(2) << "\n"; });
      return ok ? kOk : kVerify;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
