/**
 * @file geometry.hpp
 * @brief Mesh and boundary-condition builders for the modeled robot shapes.
 *
 * Every builder returns the meridian mesh plus the matching surface
 * velocity. A resolution level doubles all panel counts per increment, so
 * the builders form monotone refinement families for convergence control.
 */
#ifndef MORPHFLOW_GEOMETRY_HPP
#define MORPHFLOW_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "morphflow/mesh.hpp"
#include "morphflow/robot_specs.hpp"
#include "morphflow/scenarios.hpp"

namespace morphflow {

/**
 * n+1 points from x0 to x1 with geometrically varying steps;
 * ratio = last step / first step (1 = uniform).
 */
inline std::vector<double> graded_points(double x0, double x1, int n, double ratio = 1.0) {
    if (n < 1) throw std::invalid_argument("graded_points: need at least one step");
    if (!(ratio > 0.0)) throw std::invalid_argument("graded_points: ratio must be > 0");
    std::vector<double> pts(static_cast<std::size_t>(n) + 1);
    pts[0] = x0;
    const double q = n > 1 ? std::pow(ratio, 1.0 / (n - 1)) : 1.0;
    double step = 1.0, sum = 0.0;
    std::vector<double> steps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        steps[static_cast<std::size_t>(i)] = step;
        sum += step;
        step *= q;
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += steps[static_cast<std::size_t>(i)];
        pts[static_cast<std::size_t>(i) + 1] = x0 + (x1 - x0) * (acc / sum);
    }
    pts[static_cast<std::size_t>(n)] = x1;
    return pts;
}

namespace detail {

/// Sphere meridian points, polar angle from theta0 to theta1 (measured from +z).
inline std::vector<RingMesh::Node> sphere_arc(double a, double cz, double theta0, double theta1,
                                              int n, double ratio = 1.0) {
    const auto th = graded_points(theta0, theta1, n, ratio);
    std::vector<RingMesh::Node> pts(th.size());
    for (std::size_t i = 0; i < th.size(); ++i)
        pts[i] = {cz + a * std::cos(th[i]), a * std::sin(th[i])};
    const auto snap = [&](RingMesh::Node& p, double theta) {
        if (std::abs(std::sin(theta)) < 1e-12) p.s = 0.0;
    };
    snap(pts.front(), theta0);
    snap(pts.back(), theta1);
    return pts;
}

/// Straight meridian segment split into n panels.
inline std::vector<RingMesh::Node> line_points(RingMesh::Node p0, RingMesh::Node p1, int n,
                                               double ratio = 1.0) {
    const auto u = graded_points(0.0, 1.0, n, ratio);
    std::vector<RingMesh::Node> pts(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        pts[i] = {p0.z + (p1.z - p0.z) * u[i], p0.s + (p1.s - p0.s) * u[i]};
    return pts;
}

inline int scaled(int base, int level) { return base << level; }

/// Append a chain and assign per-panel endpoint velocities from a node function.
inline void add_chain_with_bc(RingMesh& mesh, SurfaceVelocityBC& bc,
                              const std::vector<RingMesh::Node>& pts, int body,
                              const std::function<void(const RingMesh::Node&, double&, double&)>& vel) {
    mesh.add_chain(pts, body);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        SurfaceVelocityBC::PanelVelocity pv;
        vel(pts[i], pv.uz0, pv.us0);
        vel(pts[i + 1], pv.uz1, pv.us1);
        bc.panels.push_back(pv);
    }
}

}  // namespace detail

/**
 * Sphere of radius a centered at (center_z, 0), meshed pole to pole with
 * n_panels panels. pole_ratio grades the polar steps: < 1 shrinks panels
 * toward the north pole, > 1 toward the south pole.
 */
inline RingMesh sphere_mesh(double a, double center_z, int n_panels, int body = 0,
                            double pole_ratio = 1.0) {
    if (!(a > 0.0)) throw std::invalid_argument("sphere_mesh: radius must be positive");
    RingMesh mesh;
    mesh.add_chain(detail::sphere_arc(a, center_z, std::numbers::pi, 0.0, n_panels, pole_ratio),
                   body);
    return mesh;
}

/**
 * Telescoping expander: resting cylinder of radius L and length 2L with a
 * truncated cone (base L, tip r) of length n f L on each end, closed by a
 * flat tip disc. Tip discs move axially at +-n L fdot and the axial speed
 * along each cone interpolates linearly from 0 at the base to the tip
 * speed. f = 0 degenerates to the cylinder with uniformly moving end discs.
 */
inline std::pair<RingMesh, SurfaceVelocityBC> expanding_robot_mesh(const ExpandingRobotSpec& spec,
                                                                   double f, int level = 0) {
    if (!(f >= 0.0) || !(f <= 1.0))
        throw std::invalid_argument("expanding_robot_mesh: f outside [0, 1]");
    const double L = spec.L, r = spec.inner_radius();
    const double c = spec.n * f * L;        // cone length
    const double vtip = spec.tip_speed();   // n L fdot
    const auto vel_cone = [&](const RingMesh::Node& p, double& uz, double& us) {
        us = 0.0;
        if (std::abs(p.z) <= L) {
            uz = 0.0;  // cylinder at rest
            return;
        }
        const double frac = std::min((std::abs(p.z) - L) / c, 1.0);
        uz = (p.z > 0.0 ? vtip : -vtip) * frac;
    };
    const auto vel_disc = [&](const RingMesh::Node& p, double& uz, double& us) {
        us = 0.0;
        uz = p.z > 0.0 ? vtip : -vtip;
    };

    RingMesh mesh;
    SurfaceVelocityBC bc;
    const int nd = detail::scaled(8, level);
    const int ncyl = detail::scaled(24, level);
    if (c == 0.0) {
        detail::add_chain_with_bc(mesh, bc, detail::line_points({-L, 0.0}, {-L, L}, nd), 0, vel_disc);
        detail::add_chain_with_bc(mesh, bc, detail::line_points({-L, L}, {L, L}, ncyl), 0,
                                  [](const RingMesh::Node&, double& uz, double& us) { uz = us = 0.0; });
        detail::add_chain_with_bc(mesh, bc, detail::line_points({L, L}, {L, 0.0}, nd), 0, vel_disc);
        return {std::move(mesh), std::move(bc)};
    }
    const double cone_len = std::hypot(c, L - r);
    const int ncone = std::max(detail::scaled(8, level),
                               static_cast<int>(std::ceil(cone_len / (L / 12) )) << level);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({-L - c, 0.0}, {-L - c, r}, nd), 0,
                              vel_disc);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({-L - c, r}, {-L, L}, ncone), 0,
                              vel_cone);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({-L, L}, {L, L}, ncyl), 0, vel_cone);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({L, L}, {L + c, r}, ncone), 0, vel_cone);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({L + c, r}, {L + c, 0.0}, nd), 0,
                              vel_disc);
    return {std::move(mesh), std::move(bc)};
}

/**
 * Telescoping probe: anchored sphere of radius R_body with a truncated cone
 * (base r+(n-1)s on the sphere surface, tip r) of length (n-1) f L along +z,
 * closed by a tip disc moving at (n-1) L fdot; the cone side speed
 * interpolates linearly from 0 at the base. The spherical cap hidden behind
 * the probe base circle is not wetted and not meshed.
 */
inline std::pair<RingMesh, SurfaceVelocityBC> probe_mesh(const ProbeSpec& spec, double f,
                                                         int level = 0) {
    if (!(f >= 0.0) || !(f <= 1.0)) throw std::invalid_argument("probe_mesh: f outside [0, 1]");
    const double R = spec.R_body, r = spec.r, rb = spec.base_radius(), L = spec.L;
    const double c = (spec.n - 1) * f * L;
    const double vtip = spec.tip_speed();
    const double zb = std::sqrt(R * R - rb * rb);
    const double theta_b = std::atan2(rb, zb);  // polar angle of the base circle

    RingMesh mesh;
    SurfaceVelocityBC bc;
    const auto rest = [](const RingMesh::Node&, double& uz, double& us) { uz = us = 0.0; };
    const auto vel_tip = [&](const RingMesh::Node&, double& uz, double& us) {
        uz = vtip;
        us = 0.0;
    };
    // sphere panels shrink toward the probe junction
    const int nsph = detail::scaled(36, level);
    detail::add_chain_with_bc(mesh, bc,
                              detail::sphere_arc(R, 0.0, std::numbers::pi, theta_b, nsph, 0.25), 0,
                              rest);
    if (c == 0.0) {
        const int nd = detail::scaled(10, level);
        detail::add_chain_with_bc(mesh, bc, detail::line_points({zb, rb}, {zb, 0.0}, nd), 0,
                                  vel_tip);
        return {std::move(mesh), std::move(bc)};
    }
    const auto vel_cone = [&](const RingMesh::Node& p, double& uz, double& us) {
        us = 0.0;
        uz = vtip * std::clamp((p.z - zb) / c, 0.0, 1.0);
    };
    const int ncone = std::max(detail::scaled(8, level),
                               static_cast<int>(std::ceil(c / (L / 16))) << level);
    const int nd = detail::scaled(4, level);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({zb, rb}, {zb + c, r}, ncone), 0,
                              vel_cone);
    detail::add_chain_with_bc(mesh, bc, detail::line_points({zb + c, r}, {zb + c, 0.0}, nd), 0,
                              vel_tip);
    return {std::move(mesh), std::move(bc)};
}

/// Slip profile of a treadmill band: 1 inside, 0 outside, linear ramps of
/// arc width ramp_width straddling both band edges.
inline double tread_band_profile(double theta, double a, double band_area_fraction,
                                 double ramp_width) {
    const double cb = band_area_fraction;
    const double t1 = std::acos(cb), t2 = std::acos(-cb);
    const double d = 0.5 * ramp_width / a;
    const double up = std::clamp((theta - (t1 - d)) / (2.0 * d), 0.0, 1.0);
    const double dn = std::clamp(((t2 + d) - theta) / (2.0 * d), 0.0, 1.0);
    return up * dn;
}

/**
 * Tangential (meridional) surface velocity on a sphere-shaped body:
 * u = u_theta(theta) * thetahat, thetahat = (-sin, cos) in (z, s).
 * u_theta > 0 drives the classic squirmer toward +z.
 */
inline SurfaceVelocityBC::PanelVelocity tangential_panel(const RingMesh::Node& p0,
                                                         const RingMesh::Node& p1, double cz,
                                                         const std::function<double(double)>& ut) {
    const auto eval = [&](const RingMesh::Node& p, double& uz, double& us) {
        const double th = std::atan2(p.s, p.z - cz);
        const double v = ut(th);
        uz = -v * std::sin(th);
        us = v * std::cos(th);
    };
    SurfaceVelocityBC::PanelVelocity pv;
    eval(p0, pv.uz0, pv.us0);
    eval(p1, pv.uz1, pv.us1);
    return pv;
}

struct TreadMeshResult {
    RingMesh mesh;
    SurfaceVelocityBC bc;
    std::vector<int> free_bodies;
};

namespace detail {

/// One treadmill sphere: band edges meshed exactly at the ramp breakpoints.
/// facing = -1 grades panels toward the south pole (wall / partner below),
/// facing = +1 toward the north pole. sign multiplies the slip, choosing the
/// swim direction (+1 swims toward +z).
inline void add_tread_sphere(RingMesh& mesh, SurfaceVelocityBC& bc, const TreadSphereSpec& spec,
                             double cz, int body, int facing, double sign, double gap, int level) {
    const double a = spec.a;
    const double cb = spec.band_area_fraction;
    const double t1 = std::acos(cb), t2 = std::acos(-cb);
    const double d = 0.5 * spec.ramp_width / a;
    const auto ut = [&, sign](double th) {
        return sign * spec.v_tread * tread_band_profile(th, a, spec.band_area_fraction,
                                                        spec.ramp_width);
    };
    const auto add = [&](double thA, double thB, int n, double ratio) {
        const auto pts = sphere_arc(a, cz, thA, thB, n, ratio);
        mesh.add_chain(pts, body);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            bc.panels.push_back(tangential_panel(pts[i], pts[i + 1], cz, ut));
    };
    // near-gap cap panels shrink toward the facing pole
    const double cap_ratio = std::clamp(0.35 * gap / a, 0.01, 1.0);
    const int ncap = scaled(18, level), nband = scaled(18, level);
    const int nramp = scaled(3, level), nfar = scaled(12, level);
    const double pi = std::numbers::pi;
    if (facing < 0) {
        add(pi, t2 + d, ncap, 1.0 / cap_ratio);
        add(t2 + d, t2 - d, nramp, 1.0);
        add(t2 - d, t1 + d, nband, 1.0);
        add(t1 + d, t1 - d, nramp, 1.0);
        add(t1 - d, 0.0, nfar, 1.0);
    } else {
        add(pi, t2 + d, nfar, 1.0);
        add(t2 + d, t2 - d, nramp, 1.0);
        add(t2 - d, t1 + d, nband, 1.0);
        add(t1 + d, t1 - d, nramp, 1.0);
        add(t1 - d, 0.0, ncap, cap_ratio);
    }
}

/// Resting wall disc in the z = 0 plane, rim to axis so the normal faces
/// +z; panel sizes grow geometrically from h0 at the axis outward.
inline void add_wall_disc(RingMesh& mesh, SurfaceVelocityBC& bc, double h0, double W, int level,
                          int body) {
    const double growth = std::pow(1.45, 1.0 / (1 << level));
    std::vector<double> svals{0.0};
    double h = h0, s = 0.0;
    while (s < W) {
        s = std::min(s + h, W);
        svals.push_back(s);
        h *= growth;
    }
    std::vector<RingMesh::Node> wall_pts(svals.size());
    for (std::size_t i = 0; i < svals.size(); ++i)
        wall_pts[i] = {0.0, svals[svals.size() - 1 - i]};
    mesh.add_chain(wall_pts, body);
    for (std::size_t i = 0; i + 1 < wall_pts.size(); ++i) bc.panels.push_back({});
}

}  // namespace detail

/**
 * Rigid sphere towed at speed U along -z toward a resting wall disc in the
 * z = 0 plane, center height a*delta. Panels grade into the gap on both
 * surfaces.
 */
inline std::pair<RingMesh, SurfaceVelocityBC> towed_sphere_near_wall(double a, double delta,
                                                                     double U, int level = 0,
                                                                     double wall_extent = 30.0) {
    if (!(a > 0.0) || !(delta > 1.0))
        throw std::invalid_argument("towed_sphere_near_wall: need a > 0, delta > 1");
    const double gap = a * (delta - 1.0);
    RingMesh mesh;
    SurfaceVelocityBC bc;
    const double cap_ratio = std::clamp(0.35 * gap / a, 0.01, 1.0);
    const auto pts = detail::sphere_arc(a, a * delta, std::numbers::pi, 0.0,
                                        detail::scaled(48, level), 1.0 / cap_ratio);
    mesh.add_chain(pts, 0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        bc.panels.push_back({-U, 0.0, -U, 0.0});
    detail::add_wall_disc(mesh, bc, std::clamp(0.4 * gap, a / 256.0, a / 8.0), wall_extent * a,
                          level, 1);
    return {std::move(mesh), std::move(bc)};
}

/**
 * Treadmill-sphere scenario at normalized distance delta.
 *
 * Wall case: sphere center at z = a*delta above a no-slip disc of radius
 * wall_extent*a in the z = 0 plane; the slip drives the sphere toward the
 * wall. Two-sphere case: mirror pair with centers at z = +-a*delta driven
 * toward each other; both spheres are free bodies and no symmetry reduction
 * is applied. Panels grade geometrically into the gap.
 */
inline TreadMeshResult tread_sphere_mesh(const TreadSphereSpec& spec, int level = 0,
                                         double wall_extent = 30.0) {
    const double a = spec.a, delta = spec.delta;
    TreadMeshResult out;
    if (spec.geometry == TreadCase::wall) {
        const double gap = a * (delta - 1.0);
        // swim toward -z (the wall below)
        detail::add_tread_sphere(out.mesh, out.bc, spec, a * delta, 0, -1, -1.0, gap, level);
        detail::add_wall_disc(out.mesh, out.bc, std::clamp(0.4 * gap, a / 256.0, a / 8.0),
                              wall_extent * a, level, 1);
        out.free_bodies = {0};
    } else {
        const double gap = 2.0 * a * (delta - 1.0);
        detail::add_tread_sphere(out.mesh, out.bc, spec, +a * delta, 0, -1, -1.0, gap, level);
        detail::add_tread_sphere(out.mesh, out.bc, spec, -a * delta, 1, +1, +1.0, gap, level);
        out.free_bodies = {0, 1};
    }
    return out;
}

/// Plain sphere mesh with tangential slip, for isolated-swimmer solves.
inline TreadMeshResult isolated_tread_sphere(const TreadSphereSpec& spec, int level = 0) {
    TreadMeshResult out;
    detail::add_tread_sphere(out.mesh, out.bc, spec, 0.0, 0, -1, -1.0, spec.a, level);
    out.free_bodies = {0};
    return out;
}

/// Dimensionless drag coefficient of a dimensional dissipated power.
inline double h_fluid_from_power(double P, double eta, const CharacteristicScales& scales) {
    if (!(P >= 0.0)) throw std::invalid_argument("h_fluid_from_power: power must be >= 0");
    const double denom = eta * scales.d0 * scales.v0 * scales.v0;
    if (!(denom > 0.0)) throw std::invalid_argument("h_fluid_from_power: zero power scale");
    return P / denom;
}

}  // namespace morphflow

#endif  // MORPHFLOW_GEOMETRY_HPP
