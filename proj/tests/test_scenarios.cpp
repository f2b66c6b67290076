#include <catch2/catch_amalgamated.hpp>

#include "morphflow/scenarios.hpp"

using namespace morphflow;
using Catch::Matchers::WithinRel;

TEST_CASE("built-in fluid scenarios are consistent") {
    const auto low = low_viscosity_scenario();
    CHECK(low.density == 1000.0);
    CHECK(low.dynamic_viscosity == 1.0e-3);
    CHECK_THAT(low.kinematic_viscosity, WithinRel(1.0e-6, 1e-15));
    CHECK(low.name == "low");

    const auto high = high_viscosity_scenario();
    CHECK(high.dynamic_viscosity == 10.0);
    CHECK_THAT(high.kinematic_viscosity, WithinRel(1.0e-2, 1e-15));
    CHECK(high.name == "high");

    CHECK_THROWS_AS(FluidScenario(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FluidScenario(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("dimensionless numbers for a micron body") {
    const auto low = low_viscosity_scenario();
    const CharacteristicScales s(1e-6, 2.5e-3, 1e-3);
    CHECK_THAT(reynolds(s, low), WithinRel(2.5e-3, 1e-12));
    // d0 / sqrt(nu T) = 1e-6 / sqrt(1e-9)
    CHECK_THAT(womersley(s, low), WithinRel(0.0316227766016838, 1e-12));

    const auto high = high_viscosity_scenario();
    const CharacteristicScales sh(1e-6, 2.5e-6, 1.0);
    CHECK_THAT(reynolds(sh, high), WithinRel(2.5e-10, 1e-12));
    CHECK_THAT(womersley(sh, high), WithinRel(1e-5, 1e-12));
}

TEST_CASE("power factors scale as eta d0 v0^2 and k d0^2 v0^2") {
    const auto low = low_viscosity_scenario();
    const CharacteristicScales s(1e-6, 2.5e-3, 1e-3);
    CHECK_THAT(fluid_power_factor(s, low), WithinRel(6.25e-15, 1e-12));
    CHECK_THAT(internal_power_factor(s), WithinRel(6.25e-15, 1e-12));
    CHECK_THAT(internal_power_factor(s, 2e3), WithinRel(1.25e-14, 1e-12));

    // doubling speed quadruples both factors
    const CharacteristicScales s2(1e-6, 5e-3, 1e-3);
    CHECK_THAT(fluid_power_factor(s2, low), WithinRel(4.0 * fluid_power_factor(s, low), 1e-12));
    CHECK_THAT(internal_power_factor(s2), WithinRel(4.0 * internal_power_factor(s), 1e-12));
}

TEST_CASE("glucose bookkeeping") {
    CHECK_THAT(glucose_equivalent(4.77e-18, 4.77e-18, 0.5), WithinRel(2.0, 1e-12));
    CHECK_THAT(glucose_equivalent(1.5e-16), WithinRel(1.5e-16 / (0.5 * 4.77e-18), 1e-12));
    CHECK(glucose_equivalent(0.0) == 0.0);
    CHECK_THROWS_AS(glucose_equivalent(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(glucose_equivalent(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("thermal motion of a micron sphere in water") {
    const auto low = low_viscosity_scenario();
    const double D = stokes_einstein_diffusion(1e-6, low);
    // k_B 310 K / (6 pi 1e-3 1e-6)
    CHECK_THAT(D, WithinRel(2.2707e-13, 1e-4));
    CHECK_THAT(brownian_displacement(D, 1e-3), WithinRel(std::sqrt(6.0 * D * 1e-3), 1e-15));
    // ten times the viscosity, a tenth of the diffusion
    const auto high = high_viscosity_scenario();
    CHECK_THAT(stokes_einstein_diffusion(1e-6, high), WithinRel(D * 1e-4, 1e-12));
    CHECK_THROWS_AS(stokes_einstein_diffusion(0.0, low), std::invalid_argument);
}

TEST_CASE("scale preconditions reject nonpositive inputs") {
    CHECK_THROWS_AS(CharacteristicScales(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CharacteristicScales(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CharacteristicScales(1.0, 1.0, 0.0), std::invalid_argument);
}
