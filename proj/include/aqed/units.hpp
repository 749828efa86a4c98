#pragma once

#include <complex>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

namespace aqed::units {

// Rates. `MHz` stores ν = rate / 2π in MHz, the way linewidths are quoted.
enum class RateUnit { MHz, Gamma, Gamma0 };

enum class LengthUnit { Meter, Micrometer, Nanometer, LatticeConstant, Wavelength };

template <typename T>
concept UnitTag = std::same_as<T, RateUnit> || std::same_as<T, LengthUnit>;

template <UnitTag Unit, typename T = double>
struct Quantity {
  T value{};
  Unit unit{};
};

using Rate = Quantity<RateUnit>;
using Length = Quantity<LengthUnit>;
using ComplexRate = Quantity<RateUnit, std::complex<double>>;

// Reference scales needed by the normalized units. Rates in MHz, lengths in meters.
struct ReferenceScales {
  std::optional<double> gamma_mhz;
  std::optional<double> gamma0_mhz;
  std::optional<double> lattice_constant_m;
  std::optional<double> wavelength_m;
};

// Exact-ratio conversion within one unit family. Throws ContractError naming the
// missing reference scale.
template <UnitTag Unit, typename T>
Quantity<Unit, T> convert(const Quantity<Unit, T>& q, Unit target, const ReferenceScales& ctx = {});

template <typename From, typename To>
concept ConvertibleTo = requires(From q, To target, ReferenceScales ctx) { convert(q, target, ctx); };

double rate_scale_mhz(RateUnit unit, const ReferenceScales& ctx);
double length_scale_m(LengthUnit unit, const ReferenceScales& ctx);

template <UnitTag Unit, typename T>
Quantity<Unit, T> convert(const Quantity<Unit, T>& q, Unit target, const ReferenceScales& ctx) {
  if (q.unit == target) return q;
  if constexpr (std::same_as<Unit, RateUnit>) {
    return {q.value * (rate_scale_mhz(q.unit, ctx) / rate_scale_mhz(target, ctx)), target};
  } else {
    return {q.value * (length_scale_m(q.unit, ctx) / length_scale_m(target, ctx)), target};
  }
}

std::optional<RateUnit> parse_rate_unit(std::string_view tag);
std::optional<LengthUnit> parse_length_unit(std::string_view tag);
std::string_view to_string(RateUnit unit);
std::string_view to_string(LengthUnit unit);

// "3.1 MHz", "0.05 Gamma", "532 nm". A bare number is rejected: every physical
// input carries its unit.
Rate parse_rate(std::string_view text);
Length parse_length(std::string_view text);

}  // namespace aqed::units
