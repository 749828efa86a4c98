#include <doctest.h>

#include "aqed/errors.hpp"
#include "aqed/units.hpp"

using namespace aqed;
using namespace aqed::units;

// Rates and lengths never convert into each other.
static_assert(ConvertibleTo<Rate, RateUnit>);
static_assert(ConvertibleTo<Length, LengthUnit>);
static_assert(!ConvertibleTo<Rate, LengthUnit>);
static_assert(!ConvertibleTo<Length, RateUnit>);

TEST_CASE("rate conversion through the reference Gamma") {
  ReferenceScales s;
  s.gamma_mhz = 3.1;
  s.gamma0_mhz = 0.72;
  CHECK(convert(Rate{2.0, RateUnit::Gamma}, RateUnit::MHz, s).value == doctest::Approx(6.2));
  CHECK(convert(Rate{0.72, RateUnit::MHz}, RateUnit::Gamma0, s).value == doctest::Approx(1.0));
  const auto there = convert(Rate{1.234, RateUnit::Gamma0}, RateUnit::Gamma, s);
  CHECK(convert(there, RateUnit::Gamma0, s).value == doctest::Approx(1.234).epsilon(1e-15));
}

TEST_CASE("missing reference scale is a contract error") {
  CHECK_THROWS_AS(convert(Rate{1.0, RateUnit::Gamma}, RateUnit::MHz), ContractError);
  CHECK_THROWS_AS(convert(Length{1.0, LengthUnit::LatticeConstant}, LengthUnit::Meter), ContractError);
}

TEST_CASE("length conversion") {
  ReferenceScales s;
  s.lattice_constant_m = 532e-9;
  s.wavelength_m = 780e-9;
  CHECK(convert(Length{532, LengthUnit::Nanometer}, LengthUnit::Micrometer).value == doctest::Approx(0.532));
  CHECK(convert(Length{1.0, LengthUnit::LatticeConstant}, LengthUnit::Wavelength, s).value ==
        doctest::Approx(532.0 / 780.0));
}

TEST_CASE("parsing requires a unit tag") {
  const auto r = parse_rate("0.75 MHz");
  CHECK(r.value == 0.75);
  CHECK(r.unit == RateUnit::MHz);
  CHECK(parse_rate("2 gamma0").unit == RateUnit::Gamma0);
  CHECK(parse_length("5.3 um").unit == LengthUnit::Micrometer);
  CHECK_THROWS_AS(parse_rate("0.75"), DomainError);
  CHECK_THROWS_AS(parse_rate("0.75 Hz"), DomainError);
  CHECK_THROWS_AS(parse_length("3 furlong"), DomainError);
}
