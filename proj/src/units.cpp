#include "aqed/units.hpp"

#include <charconv>
#include <cctype>

#include "aqed/errors.hpp"

namespace aqed {

ConfigError::ConfigError(std::string field, std::string message, int line)
    : std::runtime_error(field + (line >= 0 ? " (line " + std::to_string(line + 1) + ")" : std::string()) +
                         ": " + message),
      field_(std::move(field)),
      line_(line) {}

namespace units {

double rate_scale_mhz(RateUnit unit, const ReferenceScales& ctx) {
  switch (unit) {
    case RateUnit::MHz:
      return 1.0;
    case RateUnit::Gamma:
      if (!ctx.gamma_mhz) throw ContractError("conversion needs the reference scale Gamma (collective linewidth)");
      return *ctx.gamma_mhz;
    case RateUnit::Gamma0:
      if (!ctx.gamma0_mhz) throw ContractError("conversion needs the reference scale gamma0 (EIT transparency width)");
      return *ctx.gamma0_mhz;
  }
  return 1.0;
}

double length_scale_m(LengthUnit unit, const ReferenceScales& ctx) {
  switch (unit) {
    case LengthUnit::Meter:
      return 1.0;
    case LengthUnit::Micrometer:
      return 1e-6;
    case LengthUnit::Nanometer:
      return 1e-9;
    case LengthUnit::LatticeConstant:
      if (!ctx.lattice_constant_m) throw ContractError("conversion needs the reference scale a (lattice constant)");
      return *ctx.lattice_constant_m;
    case LengthUnit::Wavelength:
      if (!ctx.wavelength_m) throw ContractError("conversion needs the reference scale lambda (probe wavelength)");
      return *ctx.wavelength_m;
  }
  return 1.0;
}

std::optional<RateUnit> parse_rate_unit(std::string_view tag) {
  if (tag == "MHz") return RateUnit::MHz;
  if (tag == "Gamma") return RateUnit::Gamma;
  if (tag == "gamma0") return RateUnit::Gamma0;
  return std::nullopt;
}

std::optional<LengthUnit> parse_length_unit(std::string_view tag) {
  if (tag == "m") return LengthUnit::Meter;
  if (tag == "um") return LengthUnit::Micrometer;
  if (tag == "nm") return LengthUnit::Nanometer;
  if (tag == "a") return LengthUnit::LatticeConstant;
  if (tag == "lambda") return LengthUnit::Wavelength;
  return std::nullopt;
}

std::string_view to_string(RateUnit unit) {
  switch (unit) {
    case RateUnit::MHz:
      return "MHz";
    case RateUnit::Gamma:
      return "Gamma";
    case RateUnit::Gamma0:
      return "gamma0";
  }
  return "";
}

std::string_view to_string(LengthUnit unit) {
  switch (unit) {
    case LengthUnit::Meter:
      return "m";
    case LengthUnit::Micrometer:
      return "um";
    case LengthUnit::Nanometer:
      return "nm";
    case LengthUnit::LatticeConstant:
      return "a";
    case LengthUnit::Wavelength:
      return "lambda";
  }
  return "";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::pair<double, std::string_view> split_value(std::string_view text) {
  text = trim(text);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc()) throw DomainError("not a number: '" + std::string(text) + "'");
  auto tag = trim(std::string_view(ptr, text.data() + text.size() - ptr));
  if (tag.empty()) throw DomainError("missing unit tag in '" + std::string(text) + "'");
  return {value, tag};
}

}  // namespace

Rate parse_rate(std::string_view text) {
  auto [value, tag] = split_value(text);
  auto unit = parse_rate_unit(tag);
  if (!unit) throw DomainError("unknown rate unit '" + std::string(tag) + "' (expected MHz, Gamma or gamma0)");
  return {value, *unit};
}

Length parse_length(std::string_view text) {
  auto [value, tag] = split_value(text);
  auto unit = parse_length_unit(tag);
  if (!unit) throw DomainError("unknown length unit '" + std::string(tag) + "' (expected m, um, nm, a or lambda)");
  return {value, *unit};
}

}  // namespace units
}  // namespace aqed
