#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "morphflow/friction.hpp"

using namespace morphflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Power of one telescoping stack summed contact by contact: each interface
// i = 2..n is a cylindrical band of radius r + (n-i) s and length L (1-f),
// sliding at relative speed L fdot.
double stack_power(int n, double r, double s, double L, double f, double fdot,
                   double k_friction) {
    double p = 0.0;
    for (int i = 2; i <= n; ++i) {
        const double area = 2.0 * std::numbers::pi * (r + (n - i) * s) * L * (1.0 - f);
        const double v_rel = L * fdot;
        p += k_friction * area * v_rel * v_rel;
    }
    return p;
}

}  // namespace

TEST_CASE("sliding_area matches the band geometry") {
    // radius of the contact between segments i-1 and i, overlap L (1-f)
    CHECK_THAT(sliding_area(2, 5, 0.75, 0.05, 1.0, 0.0),
               WithinRel(2.0 * std::numbers::pi * 0.9, 1e-15));
    CHECK_THAT(sliding_area(5, 5, 0.75, 0.05, 1.0, 0.5),
               WithinRel(2.0 * std::numbers::pi * 0.75 * 0.5, 1e-15));
    CHECK_THROWS_AS(sliding_area(1, 5, 0.75, 0.05, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sliding_area(6, 5, 0.75, 0.05, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sliding_area(3, 5, 0.75, 0.05, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("expanding closed form equals the contact-by-contact sum") {
    const double L = 1.0, s = 0.03, fdot = 7.0, k = 1e3;
    for (int n = 2; n <= 20; ++n) {
        const ExpandingRobotSpec spec(L, n, s, fdot);
        const double r = spec.inner_radius();
        REQUIRE(r > 0.0);
        for (const double f : {0.0, 0.25, 0.5, 0.9}) {
            // both halves of the robot slide
            const double power = 2.0 * stack_power(n, r, s, L, f, fdot, k);
            const double v0 = spec.tip_speed();
            const double h_ref = power / (k * L * L * v0 * v0);
            CHECK_THAT(expanding_h_internal(spec, f), WithinRel(h_ref, 1e-13));
        }
    }
}

TEST_CASE("probe closed form equals the contact-by-contact sum") {
    const double L = 1.0, fdot = 3.0, k = 1e3;
    for (int n = 2; n <= 20; ++n) {
        for (const double f : {0.0, 0.25, 0.5, 0.9}) {
            const ProbeSpec spec(L, n, 0.05, 0.02, 1.0, fdot);
            const double power = stack_power(n, spec.r, spec.s, L, f, fdot, k);
            const double v0 = spec.tip_speed();
            const double h_ref = power / (k * L * L * v0 * v0);
            CHECK_THAT(probe_h_internal(spec, f), WithinRel(h_ref, 1e-13));
        }
    }
}

TEST_CASE("reference coefficients of the studied geometries") {
    // five nested shells, inner radius three quarters of the outer
    const ExpandingRobotSpec expanding(1e-6, 5, 0.05e-6, 500.0);
    CHECK_THAT(expanding_h_internal(expanding, 0.0), WithinAbs(1.6588, 2e-4));
    CHECK_THAT(expanding_h_internal(expanding, 0.5),
               WithinRel(0.5 * expanding_h_internal(expanding, 0.0), 1e-13));
    CHECK(expanding_h_internal(expanding, 1.0) == 0.0);

    // five nested tubes, 50 nm core, 20 nm wall step
    const ProbeSpec probe(1e-6, 5, 50e-9, 20e-9, 1e-6, 500.0);
    CHECK_THAT(probe_h_internal(probe, 0.0), WithinAbs(0.1257, 1e-4));
    CHECK_THAT(probe_h_internal(probe, 0.5), WithinAbs(0.0628, 1e-4));
}

TEST_CASE("tread internal models") {
    CHECK_THAT(tread_h_internal(TreadInternalModel::band_only, 0.5),
               WithinRel(2.0 * std::numbers::pi, 1e-15));
    CHECK(tread_h_internal(TreadInternalModel::calibrated, 0.5) == tread_calibrated_h_internal);
    CHECK(tread_calibrated_h_internal == 19.6);
    CHECK_THROWS_AS(tread_h_internal(TreadInternalModel::band_only, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(tread_h_internal(TreadInternalModel::band_only, 1.0),
                    std::invalid_argument);
}

TEST_CASE("degenerate stacks do not slide") {
    const ExpandingRobotSpec one(1.0, 1, 0.1, 1.0);
    CHECK(expanding_h_internal(one, 0.3) == 0.0);
    CHECK_THROWS_AS(expanding_h_internal(ExpandingRobotSpec(1.0, 5, 0.05, 1.0), -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(probe_h_internal(ProbeSpec(1.0, 5, 0.05, 0.02, 1.0, 1.0), 1.1),
                    std::invalid_argument);
}
