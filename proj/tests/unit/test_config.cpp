#include <doctest.h>

#include <sstream>

#include "aqed/config.hpp"
#include "aqed/errors.hpp"
#include "aqed/scan.hpp"
#include "aqed/table.hpp"

using namespace aqed;

namespace {

const char* kSmall = R"(
route: analytic
port: transmission
channel:
  gamma: 1 Gamma
  gamma_sc: 0.05 Gamma
coupling:
  omega_c: 0.25 Gamma
drive:
  saturation: 1e-4
  e0_ratio: 0.05
scan:
  x: {min: -1, max: 1, points: 7, unit: Gamma}
  y: {min: -2, max: 2, points: 5, unit: gamma0}
  tau: {values: [0, 1, 3], unit: 1/gamma}
)";

std::string csv(const table::Table& t) {
  std::ostringstream os;
  table::write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_CASE("every shipped preset parses and documents itself") {
  const auto names = config::preset_names();
  for (const char* want : {"fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "sm6"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  for (const auto& n : names) {
    const auto cfg = config::load_preset(n);
    CHECK(!cfg.notes.empty());
    CHECK(cfg.preset == n);
    if (n.rfind("fig", 0) == 0)  // "gamma_sc/Gamma = 0.05 in all plots"
      CHECK(cfg.physics.channel1.gamma_sc == doctest::Approx(0.05 * cfg.physics.channel1.gamma_k));
  }
}

TEST_CASE("config errors carry field and line") {
  try {
    config::parse_config("channel:\n  gamma: 1 Gamma\n  colour: red\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "channel.colour");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(config::parse_config("channel:\n  gamma: 1\n"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("channel: {gamma: 1 Gamma}\nscan:\n  x: {min: 1, max: -1, points: 3, unit: Gamma}\n"),
                  ConfigError);
  CHECK_THROWS_AS(config::parse_config("channel: {gamma: 1 Gamma}\nblockade: {beam_waist: 5 um}\n"), ConfigError);
  CHECK_THROWS_AS(config::load_preset("no_such_preset"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("channel: {gamma: 1 Gamma}\ncoupling: {omega_c: 0.75 MHz}\n"), ConfigError);
}

TEST_CASE("missing C6 is reported by name") {
  try {
    config::parse_config("channel: {gamma: 1 Gamma}\nblockade: {beam_waist: 5 um}\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("C6 required") != std::string::npos);
  }
}

TEST_CASE("scan output is identical for any job count") {
  const auto cfg = config::parse_config(kSmall);
  const auto a = csv(scan::run_scan(cfg, 1));
  CHECK(a == csv(scan::run_scan(cfg, 4)));
  CHECK(a == csv(scan::run_scan(cfg, 1)));
  auto num = cfg;
  num.route = config::Route::Numeric;
  CHECK(csv(scan::run_scan(num, 1)) == csv(scan::run_scan(num, 3)));
}

TEST_CASE("scan rows follow the grid and carry provenance") {
  const auto cfg = config::parse_config(kSmall);
  const auto t = scan::run_scan(cfg, 2);
  CHECK(t.rows.size() == 35);
  CHECK(t.columns == scan::columns(cfg));
  const int prov = t.column_index("provenance");
  REQUIRE(prov >= 0);
  for (const auto& row : t.rows) CHECK(row[prov] == "analytic");
  const auto ix = t.numeric_column("ix"), iy = t.numeric_column("iy");
  CHECK(ix[6] == 1);
  CHECK(iy[6] == 1);
}

TEST_CASE("numeric and analytic scans agree to first order in S") {
  auto cfg = config::parse_config(kSmall);
  const auto a = scan::run_scan(cfg, 1).numeric_column("g2_zero");
  cfg.route = config::Route::Numeric;
  const auto n = scan::run_scan(cfg, 1).numeric_column("g2_zero");
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(n[i] - a[i]) < 0.05 * std::abs(a[i]));
}

TEST_CASE("CSV round trip") {
  table::Table t;
  t.columns = {"name", "value"};
  t.rows = {{"plain", table::format_number(0.1)}, {"with, comma", table::format_number(1e-300)},
            {"quote \"q\"", table::format_number(std::numeric_limits<double>::infinity())}};
  std::istringstream in(csv(t));
  const auto back = table::read_csv(in);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(table::parse_number(back.rows[0][1]) == 0.1);
  CHECK(std::isinf(table::parse_number(back.rows[2][1])));
}

TEST_CASE("a lattice section sets the MHz scale of Gamma") {
  const auto cfg = config::parse_config(
      "lattice: {a: 532 nm, lambda: 780 nm, gamma_atom: 6.06 MHz, gamma_from: closed_form}\n"
      "channel: {gamma: 1 Gamma}\ncoupling: {omega_c: 0.75 MHz}\n");
  REQUIRE(cfg.physics.gamma_mhz);
  CHECK(*cfg.physics.gamma_mhz == doctest::Approx(3.11).epsilon(1e-3));
  CHECK(cfg.physics.omega_c.real() == doctest::Approx(0.75 / *cfg.physics.gamma_mhz));
}
