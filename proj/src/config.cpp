#include "aqed/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "aqed/errors.hpp"

#ifndef AQED_PRESET_DIR
#define AQED_PRESET_DIR "presets"
#endif

namespace aqed::config {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line; }

[[noreturn]] void fail(const std::string& field, const YAML::Node& n, const std::string& msg) {
  throw ConfigError(field, msg, n ? line_of(n) : -1);
}

std::string scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(field, n, "expected a scalar value");
  return n.Scalar();
}

double number(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) fail(field, n, "expected a number, got '" + s + "'");
  return v;
}

int integer(const YAML::Node& n, const std::string& field) {
  const double v = number(n, field);
  if (v != std::floor(v) || v < 0) fail(field, n, "expected a non-negative integer");
  return int(v);
}

units::Rate rate(const YAML::Node& n, const std::string& field) {
  try {
    return units::parse_rate(scalar(n, field));
  } catch (const DomainError& e) {
    fail(field, n, e.what());
  }
}

double length_m(const YAML::Node& n, const std::string& field) {
  try {
    const auto q = units::parse_length(scalar(n, field));
    return units::convert(q, units::LengthUnit::Meter).value;
  } catch (const DomainError& e) {
    fail(field, n, e.what());
  } catch (const ContractError& e) {
    fail(field, n, e.what());
  }
}

double angle(const YAML::Node& n, const std::string& field) {
  std::istringstream is(scalar(n, field));
  double v = 0;
  std::string tag;
  if (!(is >> v)) fail(field, n, "expected an angle such as '90 deg' or '1.5708 rad'");
  is >> tag;
  if (tag == "deg") return v * std::numbers::pi / 180.0;
  if (tag == "rad") return v;
  fail(field, n, "angle needs a unit tag (deg or rad)");
}

// "<value> MHz um^6"
double c6_value(const YAML::Node& n, const std::string& field) {
  std::istringstream is(scalar(n, field));
  double v = 0;
  std::string r, l;
  if (!(is >> v) || !(is >> r >> l) || r != "MHz" || l != "um^6")
    fail(field, n, "expected C6 as '<value> MHz um^6' (C6/h)");
  return v;
}

template <typename Fn>
void for_keys(const YAML::Node& map, const std::string& section, const std::vector<std::string>& allowed, Fn&& fn) {
  if (!map.IsMap()) fail(section, map, "expected a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(section.empty() ? key : section + "." + key, kv.first, "unknown key (expected one of: " + list + ")");
    }
    fn(key, kv.second, section.empty() ? key : section + "." + key);
  }
}

// Rates may be given in MHz, Gamma or gamma0; resolved once the reference scales are known.
struct PendingRate {
  units::Rate q;
  YAML::Node node;
  std::string field;
};

class Resolver {
 public:
  std::optional<double> gamma_mhz;
  double gamma0 = 0;  // in Gamma units

  double to_gamma(const PendingRate& p, bool allow_gamma0 = true) const {
    switch (p.q.unit) {
      case units::RateUnit::Gamma: return p.q.value;
      case units::RateUnit::Gamma0:
        if (!allow_gamma0) fail(p.field, p.node, "gamma0 units are not allowed here");
        return p.q.value * gamma0;
      case units::RateUnit::MHz:
        if (!gamma_mhz)
          fail(p.field, p.node,
               "MHz value needs the reference scale Gamma in MHz (give channel.gamma in MHz or a lattice section)");
        return units::convert(p.q, units::RateUnit::Gamma, {gamma_mhz, std::nullopt, std::nullopt, std::nullopt}).value;
    }
    return 0;
  }
};

Axis parse_axis(const YAML::Node& node, const std::string& field) {
  Axis axis;
  bool has_points = false;
  for_keys(node, field, {"min", "max", "points", "unit", "spacing"}, [&](const std::string& key, const YAML::Node& v, const std::string& f) {
    if (key == "min") axis.min = number(v, f);
    else if (key == "max") axis.max = number(v, f);
    else if (key == "points") { axis.points = integer(v, f); has_points = true; }
    else if (key == "unit") {
      const auto u = units::parse_rate_unit(scalar(v, f));
      if (!u) fail(f, v, "unknown rate unit (expected MHz, Gamma or gamma0)");
      axis.unit = *u;
    } else if (key == "spacing") {
      const std::string s = scalar(v, f);
      if (s == "linear") axis.spacing = Spacing::Linear;
      else if (s == "log") axis.spacing = Spacing::Log;
      else fail(f, v, "expected linear or log");
    }
  });
  if (!has_points) fail(field + ".points", node, "axis needs a point count");
  if (axis.points >= 2 && !(axis.max > axis.min)) fail(field, node, "axis must be strictly increasing (min < max)");
  if (axis.spacing == Spacing::Log && axis.points > 0 && !(axis.min > 0))
    fail(field, node, "log spacing needs a positive range");
  return axis;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v;
  v.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : double(i) / double(points - 1);
    v.push_back(spacing == Spacing::Linear ? min + f * (max - min) : min * std::pow(max / min, f));
  }
  return v;
}

channels::EITConfig Physics::eit(double detuning_, double delta_) const {
  const double delta_p = channel1.delta_k + detuning_;
  return {omega_c, delta_p, delta_ - delta_p};
}

channels::DerivedChannel Physics::derive(int which, double detuning_, double delta_) const {
  return channels::derive(which == 0 ? channel1 : channel2, eit(detuning_, delta_));
}

units::ReferenceScales Physics::scales() const {
  units::ReferenceScales s;
  s.gamma_mhz = gamma_mhz;
  if (gamma_mhz) s.gamma0_mhz = gamma0() * *gamma_mhz;
  if (lattice) {
    s.lattice_constant_m = lattice->spec.a;
    s.wavelength_m = lattice->spec.lambda_p;
  }
  return s;
}

std::vector<double> ScanConfig::taus_at(double gamma_2) const {
  std::vector<double> out;
  for (double t : taus) out.push_back(tau_in_gamma_ryd ? t / gamma_2 : t);
  return out;
}

const char* to_string(Route route) { return route == Route::Analytic ? "analytic" : "numeric"; }

ScanConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.msg, e.mark.line);
  }
  if (!root.IsMap()) throw ConfigError(source, "top level must be a mapping", 0);

  ScanConfig cfg;
  Physics& ph = cfg.physics;
  Resolver res;

  std::optional<PendingRate> ch_gamma, ch_delta_k, ch_gamma_sc, omega_c, detuning, delta;
  std::optional<PendingRate> ch2_gamma, ch2_delta_k, ch2_gamma_sc;
  bool has_channel2 = false;
  YAML::Node scan_node;
  bool has_scan = false;

  auto pend = [](const YAML::Node& v, const std::string& f) { return PendingRate{rate(v, f), v, f}; };

  for_keys(root, "", {"preset", "notes", "NOTES", "units", "route", "lattice", "channel", "channel2", "coupling", "point",
                      "drive", "port", "blockade", "scan"},
           [&](const std::string& key, const YAML::Node& v, const std::string& f) {
             if (key == "preset") cfg.preset = scalar(v, f);
             else if (key == "notes" || key == "NOTES") cfg.notes = scalar(v, f);
             else if (key == "units") {
               const std::string s = scalar(v, f);
               if (s == "mhz" || s == "MHz") cfg.output_units = OutputUnits::MHz;
               else if (s == "dimensionless") cfg.output_units = OutputUnits::Dimensionless;
               else fail(f, v, "expected mhz or dimensionless");
             } else if (key == "route") {
               const std::string s = scalar(v, f);
               if (s == "analytic") cfg.route = Route::Analytic;
               else if (s == "numeric") cfg.route = Route::Numeric;
               else fail(f, v, "expected analytic or numeric");
             } else if (key == "lattice") {
               LatticeInput li;
               li.spec.n_side = 40;
               for_keys(v, f, {"a", "lambda", "gamma_atom", "n_side", "gamma_from"},
                        [&](const std::string& k, const YAML::Node& w, const std::string& g) {
                          if (k == "a") li.spec.a = length_m(w, g);
                          else if (k == "lambda") li.spec.lambda_p = length_m(w, g);
                          else if (k == "n_side") li.spec.n_side = integer(w, g);
                          else if (k == "gamma_atom") {
                            const auto q = rate(w, g);
                            if (q.unit != units::RateUnit::MHz) fail(g, w, "gamma_atom must be given in MHz");
                            li.spec.gamma_atom = q.value;
                          } else if (k == "gamma_from") {
                            const std::string s = scalar(w, g);
                            if (s == "closed_form") li.use_sum = false;
                            else if (s == "finite_array") { li.use_sum = true; li.mode = lattice::SumMode::FiniteArray; }
                            else if (s == "central_site") { li.use_sum = true; li.mode = lattice::SumMode::CentralSite; }
                            else fail(g, w, "expected closed_form, finite_array or central_site");
                          }
                        });
               try {
                 li.spec.validate();
               } catch (const DomainError& e) {
                 fail(f, v, e.what());
               }
               ph.lattice = li;
             } else if (key == "channel" || key == "channel2") {
               const bool second = key == "channel2";
               has_channel2 |= second;
               for_keys(v, f, {"gamma", "delta_k", "gamma_sc", "label"},
                        [&](const std::string& k, const YAML::Node& w, const std::string& g) {
                          if (k == "label") (second ? ph.channel2 : ph.channel1).label = scalar(w, g);
                          else if (k == "gamma") (second ? ch2_gamma : ch_gamma) = pend(w, g);
                          else if (k == "delta_k") (second ? ch2_delta_k : ch_delta_k) = pend(w, g);
                          else (second ? ch2_gamma_sc : ch_gamma_sc) = pend(w, g);
                        });
             } else if (key == "coupling") {
               for_keys(v, f, {"omega_c"}, [&](const std::string&, const YAML::Node& w, const std::string& g) { omega_c = pend(w, g); });
             } else if (key == "point") {
               for_keys(v, f, {"detuning", "delta"}, [&](const std::string& k, const YAML::Node& w, const std::string& g) {
                 (k == "detuning" ? detuning : delta) = pend(w, g);
               });
             } else if (key == "drive") {
               for_keys(v, f, {"saturation", "e0_ratio", "phi"}, [&](const std::string& k, const YAML::Node& w, const std::string& g) {
                 if (k == "saturation") {
                   ph.saturation = number(w, g);
                   if (ph.saturation < 0) fail(g, w, "saturation must be non-negative");
                 } else if (k == "e0_ratio") {
                   ph.scale.e0_ratio = number(w, g);
                   if (ph.scale.e0_ratio < 0) fail(g, w, "e0_ratio must be non-negative");
                 } else {
                   ph.scale.phase_phi = angle(w, g);
                 }
               });
             } else if (key == "port") {
               try {
                 ph.port = fieldobs::parse_port(scalar(v, f));
               } catch (const DomainError& e) {
                 fail(f, v, e.what());
               }
             } else if (key == "blockade") {
               blockade::VdwSpec vdw;
               bool has_c6 = false, has_w = false;
               for_keys(v, f, {"c6", "beam_waist", "lattice_constant"}, [&](const std::string& k, const YAML::Node& w, const std::string& g) {
                 if (k == "c6") { vdw.c6 = c6_value(w, g); has_c6 = true; }
                 else if (k == "beam_waist") { vdw.beam_waist = length_m(w, g) * 1e6; has_w = true; }
                 else ph.vdw_lattice_um = length_m(w, g) * 1e6;
               });
               if (!has_c6) fail(f + ".c6", v, "C6 required");
               if (!has_w) fail(f + ".beam_waist", v, "beam waist required");
               if (vdw.c6 < 0) fail(f + ".c6", v, "C6 must be non-negative");
               if (!(vdw.beam_waist > 0)) fail(f + ".beam_waist", v, "beam waist must be positive");
               ph.vdw = vdw;
             } else if (key == "scan") {
               scan_node = v;
               has_scan = true;
             }
           });

  // Reference scale Gamma_1.
  double gamma1 = 1.0;
  if (ch_gamma) {
    if (ch_gamma->q.unit == units::RateUnit::MHz) {
      res.gamma_mhz = ch_gamma->q.value;
    } else if (ch_gamma->q.unit == units::RateUnit::Gamma) {
      gamma1 = ch_gamma->q.value;
      if (gamma1 != 1.0) fail(ch_gamma->field, ch_gamma->node, "channel.gamma defines the unit Gamma; use 1 Gamma or MHz");
    } else {
      fail(ch_gamma->field, ch_gamma->node, "channel.gamma cannot be given in gamma0 units");
    }
  }
  if (ph.lattice) {
    const auto& li = *ph.lattice;
    const double g_lat = li.use_sum ? lattice::collective_rates(li.spec, Eigen::Vector2d::Zero(), li.mode).gamma_k
                                    : lattice::gamma_k0_closed_form(li.spec.a, li.spec.lambda_p, li.spec.gamma_atom);
    if (!res.gamma_mhz) res.gamma_mhz = g_lat;  // "1 Gamma" or absent: the lattice sets the scale
  }
  if (!ch_gamma && !ph.lattice) fail("channel.gamma", root, "channel.gamma required when no lattice section is given");
  if (!(gamma1 > 0) || (res.gamma_mhz && !(*res.gamma_mhz > 0))) fail("channel.gamma", root, "Gamma must be positive");
  ph.gamma_mhz = res.gamma_mhz;
  ph.channel1.gamma_k = 1.0;
  if (ph.channel1.label.empty()) ph.channel1.label = "k1";

  if (ch_delta_k) ph.channel1.delta_k = res.to_gamma(*ch_delta_k, false);
  if (ch_gamma_sc) ph.channel1.gamma_sc = res.to_gamma(*ch_gamma_sc, false);
  if (omega_c) {
    if (omega_c->q.unit == units::RateUnit::Gamma0) fail(omega_c->field, omega_c->node, "omega_c cannot be given in gamma0 units");
    ph.omega_c = res.to_gamma(*omega_c, false);
  }
  res.gamma0 = ph.gamma0();

  const std::string label2 = ph.channel2.label;
  ph.channel2 = ph.channel1;
  ph.channel2.label = label2.empty() ? "k2" : label2;
  if (has_channel2) {
    if (ch2_gamma) ph.channel2.gamma_k = res.to_gamma(*ch2_gamma, false);
    if (ch2_delta_k) ph.channel2.delta_k = res.to_gamma(*ch2_delta_k, false);
    if (ch2_gamma_sc) ph.channel2.gamma_sc = res.to_gamma(*ch2_gamma_sc, false);
  }
  try {
    ph.channel1.validate();
    ph.channel2.validate();
  } catch (const DomainError& e) {
    throw ConfigError("channel", e.what());
  }
  if (ph.channel1.label == ph.channel2.label) throw ConfigError("channel2.label", "channel labels must be unique");

  if (detuning) ph.detuning = res.to_gamma(*detuning);
  if (delta) ph.delta = res.to_gamma(*delta);

  if (has_scan) {
    for_keys(scan_node, "scan", {"x", "y", "tau"}, [&](const std::string& key, const YAML::Node& v, const std::string& f) {
      if (key == "x") cfg.x = parse_axis(v, f);
      else if (key == "y") {
        if (v.IsScalar()) {
          if (v.Scalar() != "rydberg_resonance") fail(f, v, "expected an axis mapping or 'rydberg_resonance'");
          cfg.y_follows_rydberg_resonance = true;
        } else {
          cfg.y = parse_axis(v, f);
        }
      } else {
        for_keys(v, f, {"values", "unit"}, [&](const std::string& k, const YAML::Node& w, const std::string& g) {
          if (k == "values") {
            if (!w.IsSequence()) fail(g, w, "expected a list of delays");
            for (const auto& t : w) {
              const double tau = number(t, g);
              if (tau < 0) fail(g, t, "delays must be non-negative");
              cfg.taus.push_back(tau);
            }
          } else {
            const std::string u = scalar(w, g);
            if (u == "1/gamma") cfg.tau_in_gamma_ryd = true;
            else if (u == "1/Gamma") cfg.tau_in_gamma_ryd = false;
            else fail(g, w, "expected 1/gamma (collective Rydberg width of channel 2) or 1/Gamma");
          }
        });
      }
    });
    if (cfg.y_follows_rydberg_resonance && cfg.y) fail("scan.y", scan_node, "conflicting y specifications");
  }
  return cfg;
}

ScanConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string preset_directory() {
  if (const char* env = std::getenv("AQED_PRESET_DIR")) return env;
  return AQED_PRESET_DIR;
}

ScanConfig load_preset(const std::string& name) {
  const auto path = std::filesystem::path(preset_directory()) / (name + ".yaml");
  if (!std::filesystem::exists(path)) throw ConfigError("--preset", "unknown preset '" + name + "' (looked in " + preset_directory() + ")");
  return load_config(path.string());
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(preset_directory(), ec))
    if (e.path().extension() == ".yaml") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aqed::config
