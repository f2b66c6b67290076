#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "morphflow/bem.hpp"
#include "morphflow/geometry.hpp"

using namespace morphflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

SurfaceVelocityBC uniform_translation(const RingMesh& mesh, double uz) {
    SurfaceVelocityBC bc = SurfaceVelocityBC::zero(mesh.elements.size());
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) bc.set_constant(e, uz, 0.0);
    return bc;
}

/// Boundary data of a point source of strength Q at the sphere center:
/// u = Q r_hat / (4 pi r^2), purely radial on the surface.
SurfaceVelocityBC radial_source(const RingMesh& mesh, double a, double cz, double Q) {
    SurfaceVelocityBC bc = SurfaceVelocityBC::zero(mesh.elements.size());
    const double u0 = Q / (4.0 * kPi * a * a);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        const auto& p0 = mesh.nodes[static_cast<std::size_t>(el.n0)];
        const auto& p1 = mesh.nodes[static_cast<std::size_t>(el.n1)];
        bc.panels[e] = {u0 * (p0.z - cz) / a, u0 * p0.s / a,
                        u0 * (p1.z - cz) / a, u0 * p1.s / a};
    }
    return bc;
}

double power_error(int n_panels) {
    const RingMesh mesh = sphere_mesh(1.0, 0.0, n_panels);
    const auto sol = solve_traction(mesh, uniform_translation(mesh, 1.0), 1.0, {});
    return std::abs(sol.power - 6.0 * kPi) / (6.0 * kPi);
}

}  // namespace

TEST_CASE("towed sphere matches Stokes drag and power") {
    const RingMesh mesh = sphere_mesh(1.0, 0.0, 128);
    const auto sol = solve_traction(mesh, uniform_translation(mesh, 1.0), 1.0, {});

    CHECK_THAT(sol.body_force_z.at(0), WithinRel(-6.0 * kPi, 1e-2));
    CHECK_THAT(sol.power, WithinRel(6.0 * kPi, 1e-2));
    CHECK_THAT(sol.body_power.at(0), WithinRel(sol.power, 1e-12));

    // translating a closed rigid body moves no volume, so the completion
    // mode stays quiet compared with the traction scale
    CHECK(std::abs(sol.null_strength.at(0)) < 1e-3 * 6.0 * kPi);
}

TEST_CASE("sphere power error shrinks under refinement") {
    const double e64 = power_error(64);
    const double e128 = power_error(128);
    const double e256 = power_error(256);
    CHECK(e64 > e128);
    CHECK(e128 > e256);
    CHECK(e256 < 2e-3);
}

TEST_CASE("solution is linear in the boundary data") {
    const RingMesh mesh = sphere_mesh(1.0, 0.0, 64);
    const auto base = solve_traction(mesh, uniform_translation(mesh, 1.0), 1.0, {});
    const auto scaled = solve_traction(mesh, uniform_translation(mesh, 2.5), 1.0, {});

    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        CHECK_THAT(scaled.traction[e].tz, WithinAbs(2.5 * base.traction[e].tz,
                                                    1e-10 * (1.0 + std::abs(base.traction[e].tz))));
        CHECK_THAT(scaled.traction[e].ts, WithinAbs(2.5 * base.traction[e].ts,
                                                    1e-10 * (1.0 + std::abs(base.traction[e].ts))));
    }
    CHECK_THAT(scaled.power, WithinRel(2.5 * 2.5 * base.power, 1e-10));
    CHECK_THAT(scaled.body_force_z.at(0), WithinRel(2.5 * base.body_force_z.at(0), 1e-10));
}

TEST_CASE("traction and power scale with viscosity") {
    const RingMesh mesh = sphere_mesh(1.0, 0.0, 64);
    const auto bc = uniform_translation(mesh, 1.0);
    const auto thin = solve_traction(mesh, bc, 1.0, {});
    const auto thick = solve_traction(mesh, bc, 7.0, {});
    CHECK_THAT(thick.power, WithinRel(7.0 * thin.power, 1e-12));
    CHECK_THAT(thick.traction.at(5).tz, WithinRel(7.0 * thin.traction.at(5).tz, 1e-12));
}

TEST_CASE("axial position of the sphere does not matter") {
    const RingMesh centered = sphere_mesh(1.0, 0.0, 96);
    const RingMesh lifted = sphere_mesh(1.0, 3.0, 96);
    const auto a = solve_traction(centered, uniform_translation(centered, 1.0), 1.0, {});
    const auto b = solve_traction(lifted, uniform_translation(lifted, 1.0), 1.0, {});
    CHECK_THAT(b.power, WithinRel(a.power, 1e-9));
    CHECK_THAT(b.body_force_z.at(0), WithinRel(a.body_force_z.at(0), 1e-9));
}

TEST_CASE("point-source boundary data reproduces the source dissipation") {
    // u = Q r_hat / (4 pi r^2) outside the sphere dissipates eta Q^2 / (pi a^3);
    // the flow carries net volume flux, which only a correctly pinned
    // completion mode can represent
    const double a = 1.0, Q = 4.0 * kPi;
    const RingMesh mesh = sphere_mesh(a, 0.0, 128);
    const auto sol = solve_traction(mesh, radial_source(mesh, a, 0.0, Q), 1.0, {});

    const double expected = Q * Q / (kPi * a * a * a);
    CHECK_THAT(sol.power, WithinRel(expected, 1e-2));
    CHECK_THAT(sol.body_force_z.at(0), WithinAbs(0.0, 1e-2 * 6.0 * kPi));
}

TEST_CASE("translation and surface slip satisfy reciprocity") {
    const RingMesh mesh = sphere_mesh(1.0, 0.0, 96);

    SurfaceVelocityBC slip = SurfaceVelocityBC::zero(mesh.elements.size());
    const auto ut = [](double th) { return std::sin(th); };
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        slip.panels[e] = tangential_panel(mesh.nodes[static_cast<std::size_t>(el.n0)],
                                          mesh.nodes[static_cast<std::size_t>(el.n1)], 0.0, ut);
    }
    const auto bc1 = uniform_translation(mesh, 1.0);
    const auto s1 = solve_traction(mesh, bc1, 1.0, {});
    const auto s2 = solve_traction(mesh, slip, 1.0, {});

    double ab = 0.0, ba = 0.0;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto g = mesh.panel(e);
        const auto& p1 = bc1.panels[e];
        const auto& p2 = slip.panels[e];
        const double u1z = 0.5 * (p1.uz0 + p1.uz1), u1s = 0.5 * (p1.us0 + p1.us1);
        const double u2z = 0.5 * (p2.uz0 + p2.uz1), u2s = 0.5 * (p2.us0 + p2.us1);
        ab += g.area * (u2z * s1.traction[e].tz + u2s * s1.traction[e].ts);
        ba += g.area * (u1z * s2.traction[e].tz + u1s * s2.traction[e].ts);
    }
    const double scale = std::max(std::abs(ab), std::abs(ba));
    CHECK(scale > 1.0);  // expected magnitude 4 pi
    CHECK(std::abs(ab - ba) < 1e-2 * scale);
}

TEST_CASE("refinement driver reports convergence") {
    const auto build = [](int level) {
        const int n = 32 << level;
        RingMesh mesh = sphere_mesh(1.0, 0.0, n);
        SurfaceVelocityBC bc = uniform_translation(mesh, 1.0);
        return std::make_pair(std::move(mesh), std::move(bc));
    };
    const auto run = refine_power_until(build, 1.0, {}, 5e-3, 0, 3);
    CHECK(run.converged);
    CHECK(run.level >= 1);
    CHECK(run.power_change < 5e-3);
    CHECK_THAT(run.solution.power, WithinRel(6.0 * kPi, 1e-2));
}
