#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "morphflow/optimizer.hpp"
#include "morphflow/scenarios.hpp"

using namespace morphflow;
using Catch::Matchers::WithinRel;

namespace {

DissipationCurve linear_curve() {
    std::vector<DissipationSample> samples;
    for (int i = 0; i <= 10; ++i) {
        const double f = 0.1 * i;
        samples.push_back({f, 2.0 + f, 1.0 - 0.5 * f});
    }
    return {std::move(samples), low_viscosity_scenario(), CharacteristicScales(1e-6, 2.5e-3, 1e-3)};
}

}  // namespace

TEST_CASE("constant-power schedule beats the uniform one") {
    const auto k = [](double f) { return 1.0 + f * f; };
    const double F = 1.0, T = 2.0;

    const double eu = uniform_energy(k, F, T);
    const double eo = optimal_energy(k, F, T);
    CHECK(eo < eu);

    // closed forms for this cost
    CHECK_THAT(eu, WithinRel((F / T) * (F + F * F * F / 3.0), 1e-8));
    const double s = 0.5 * (std::sqrt(2.0) + std::log(1.0 + std::sqrt(2.0)));
    CHECK_THAT(eo, WithinRel(s * s / T, 1e-8));
    CHECK_THAT(savings(k, F, T), WithinRel(1.0 - eo / eu, 1e-6));
}

TEST_CASE("constant cost leaves nothing to optimize") {
    const auto k = [](double) { return 3.7; };
    CHECK(savings(k, 0.5, 1.5) <= 1e-10);
    const auto p = optimal_profile(k, 0.5, 1.5);
    for (double fd : p.fdot) CHECK_THAT(fd, WithinRel(0.5 / 1.5, 1e-10));
    CHECK_THAT(p.energy, WithinRel(uniform_energy(k, 0.5, 1.5), 1e-10));
}

TEST_CASE("optimal energy is invariant under traversal direction") {
    const double F = 0.8, T = 3.0;
    const auto k = [](double f) { return 1.0 + 3.0 * f + std::sin(2.0 * f); };
    const auto kr = [&](double f) { return k(F - f); };
    CHECK_THAT(optimal_energy(kr, F, T), WithinRel(optimal_energy(k, F, T), 1e-9));
    CHECK_THAT(uniform_energy(kr, F, T), WithinRel(uniform_energy(k, F, T), 1e-9));
}

TEST_CASE("optimal profile holds power constant and hits the endpoints") {
    const auto k = [](double f) { return std::exp(2.0 * f); };
    const double F = 1.0, T = 0.25;
    const auto p = optimal_profile(k, F, T);

    REQUIRE(p.t.size() == p.f.size());
    REQUIRE(p.t.size() == p.power.size());
    CHECK(p.t.front() == 0.0);
    CHECK(p.t.back() == T);
    CHECK(p.f.front() == 0.0);
    CHECK(p.f.back() == F);
    for (std::size_t i = 1; i < p.t.size(); ++i) CHECK(p.t[i] > p.t[i - 1]);

    double pmin = p.power.front(), pmax = p.power.front();
    for (double w : p.power) {
        pmin = std::min(pmin, w);
        pmax = std::max(pmax, w);
    }
    CHECK(pmax / pmin - 1.0 < 1e-9);
    CHECK_THAT(p.energy, WithinRel(p.power.front() * T, 1e-9));
    CHECK_THAT(p.peak_power, WithinRel(p.power.front(), 1e-9));

    // increasing cost: ramping down the rate cuts the peak below uniform
    const auto u = uniform_profile(k, F, T);
    CHECK(p.peak_power < u.peak_power);
    CHECK(p.fdot.front() > p.fdot.back());
}

TEST_CASE("profile arrays are consistent with their stated energy") {
    const auto k = [](double f) { return 2.0 + f * f * f; };
    const double F = 0.5, T = 1.0;
    for (const auto& p : {uniform_profile(k, F, T), optimal_profile(k, F, T)}) {
        double trapz = 0.0;
        for (std::size_t i = 1; i < p.t.size(); ++i)
            trapz += 0.5 * (p.power[i] + p.power[i - 1]) * (p.t[i] - p.t[i - 1]);
        CHECK_THAT(trapz, WithinRel(p.energy, 2e-5));
    }
}

TEST_CASE("segment energy of a flat cost has the closed form") {
    const auto k = [](double) { return 1.0; };
    CHECK_THAT(constant_power_energy(k, 0.2, 0.8, 2.0), WithinRel(0.36 / 2.0, 1e-10));
    CHECK_THROWS_AS(constant_power_energy(k, 0.8, 0.2, 2.0), std::invalid_argument);
}

TEST_CASE("sampled cost function reproduces its inputs") {
    const auto curve = linear_curve();
    const double c = 5e-6, kf = 500.0;
    const CostFunction k(curve, kf, c);

    const double eta = curve.fluid.dynamic_viscosity;
    const double d0 = curve.scales.d0;
    CHECK_THAT(k.fluid_part(0.5), WithinRel(c * c * eta * d0 * 2.5, 1e-9));
    CHECK_THAT(k.internal_part(0.5), WithinRel(c * c * kf * d0 * d0 * 0.75, 1e-9));
    CHECK_THAT(k(0.5), WithinRel(k.fluid_part(0.5) + k.internal_part(0.5), 1e-12));

    // linear samples continue linearly past the sampled range
    CHECK_THAT(k.fluid_part(1.2), WithinRel(c * c * eta * d0 * 3.2, 1e-9));
    CHECK_THAT(k.fluid_part(-0.1), WithinRel(c * c * eta * d0 * 1.9, 1e-9));
}

TEST_CASE("uniform split separates drag from internal friction") {
    const auto curve = linear_curve();
    const CostFunction k(curve, 500.0, 5e-6);
    const double F = 1.0, T = 1e-3;
    const auto split = uniform_energy_split(k, F, T);

    CHECK(split.fluid > 0.0);
    CHECK(split.internal > 0.0);
    CHECK(split.fluid_share() > 0.0);
    CHECK(split.fluid_share() < 1.0);
    CHECK_THAT(split.total(), WithinRel(uniform_energy(k, F, T), 1e-8));

    const double eta = curve.fluid.dynamic_viscosity, d0 = curve.scales.d0, c = 5e-6;
    CHECK_THAT(split.fluid, WithinRel((F / T) * c * c * eta * d0 * 2.5, 1e-8));
    CHECK_THAT(split.internal, WithinRel((F / T) * c * c * 500.0 * d0 * d0 * 0.75, 1e-8));
}

TEST_CASE("curve validation rejects malformed samples") {
    auto c = linear_curve();
    c.samples.resize(5);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    auto dup = linear_curve();
    dup.samples[3].f = dup.samples[2].f;
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    auto neg = linear_curve();
    neg.samples[4].h_fluid = -1e-9;
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

    CHECK_THROWS_AS(CostFunction(linear_curve(), -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CostFunction(linear_curve(), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("degenerate arguments are rejected") {
    const auto k = [](double f) { return 1.0 + f; };
    CHECK_THROWS_AS(uniform_energy(k, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_energy(k, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_profile(k, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_profile(k, 1.0, 1.0, 1), std::invalid_argument);

    const auto bad = [](double f) { return f - 0.5; };
    CHECK_THROWS_AS(optimal_energy(bad, 1.0, 1.0), std::domain_error);
}
