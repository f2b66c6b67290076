#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "morphflow/quadrature.hpp"

using namespace morphflow::detail;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ten-point Gauss-Legendre nodes and weights") {
    const double ref[10][2] = {
        {-0.973906528517171720078, 0.06667134430868813759357},
        {-0.8650633666889845107321, 0.1494513491505805931458},
        {-0.6794095682990244062343, 0.2190863625159820439955},
        {-0.4333953941292471907993, 0.2692667193099963550912},
        {-0.1488743389816312108848, 0.2955242247147528701739},
        {0.1488743389816312108848, 0.2955242247147528701739},
        {0.4333953941292471907993, 0.2692667193099963550912},
        {0.6794095682990244062343, 0.2190863625159820439955},
        {0.8650633666889845107321, 0.1494513491505805931458},
        {0.973906528517171720078, 0.06667134430868813759357},
    };
    double wsum = 0.0;
    for (int i = 0; i < 10; ++i) {
        CHECK_THAT(gl10_nodes[i], WithinAbs(ref[i][0], 1e-16));
        CHECK_THAT(gl10_weights[i], WithinRel(ref[i][1], 1e-15));
        wsum += gl10_weights[i];
    }
    CHECK_THAT(wsum, WithinRel(2.0, 1e-15));
}

TEST_CASE("single pass integrates polynomials up to degree 19 exactly") {
    // x^19 + x^10 over [0,1]: 1/20 + 1/11
    const auto poly = [](double x) {
        return std::array<double, 1>{std::pow(x, 19) + std::pow(x, 10)};
    };
    const auto got = gauss10<1>(poly, 0.0, 1.0);
    CHECK_THAT(got[0], WithinRel(0.05 + 1.0 / 11.0, 1e-14));

    // shifted interval
    const auto lin = [](double x) { return std::array<double, 1>{3.0 * x - 1.0}; };
    CHECK_THAT(gauss10<1>(lin, -2.0, 5.0)[0], WithinRel(1.5 * 21.0 - 7.0, 1e-14));
}

TEST_CASE("adaptive integration resolves a near-singular integrand") {
    // 1/sqrt(x + c) over [0,1] = 2 (sqrt(1+c) - sqrt(c))
    const double c = 1e-6;
    const auto f = [c](double x) { return std::array<double, 1>{1.0 / std::sqrt(x + c)}; };
    const double exact = 2.0 * (std::sqrt(1.0 + c) - std::sqrt(c));
    const auto got = integrate_adaptive<1>(f, 0.0, 1.0, 1e-10 * exact);
    CHECK_THAT(got[0], WithinRel(exact, 1e-9));
}

TEST_CASE("adaptive integration handles several components at once") {
    const auto f = [](double x) {
        return std::array<double, 3>{std::exp(x), std::cos(20.0 * x), 1.0 / (0.01 + x * x)};
    };
    const double e0 = std::exp(1.0) - 1.0;
    const double e1 = std::sin(20.0) / 20.0;
    const double e2 = 10.0 * std::atan(10.0);
    const auto got = integrate_adaptive<3>(f, 0.0, 1.0, 1e-12 * e2);
    CHECK_THAT(got[0], WithinRel(e0, 1e-10));
    CHECK_THAT(got[1], WithinAbs(e1, 1e-10));
    CHECK_THAT(got[2], WithinRel(e2, 1e-10));
}

TEST_CASE("scalar convenience wrapper refines to the requested tolerance") {
    const auto f = [](double x) { return 1.0 / (1.0 + 100.0 * x * x); };
    const double exact = std::atan(10.0) / 10.0;
    CHECK_THAT(integrate_scalar(f, 0.0, 1.0, 1e-10), WithinRel(exact, 1e-8));
    CHECK_THROWS_AS(integrate_scalar(f, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("orientation and degenerate intervals") {
    const auto f = [](double x) { return std::array<double, 1>{x * x}; };
    const auto fwd = integrate_adaptive<1>(f, 0.0, 2.0, 1e-12);
    const auto rev = integrate_adaptive<1>(f, 2.0, 0.0, 1e-12);
    CHECK_THAT(fwd[0], WithinRel(8.0 / 3.0, 1e-12));
    CHECK_THAT(rev[0], WithinRel(-8.0 / 3.0, 1e-12));
    const auto zero = integrate_adaptive<1>(f, 1.0, 1.0, 1e-12);
    CHECK(zero[0] == 0.0);
}
