/**
 * @file bem.hpp
 * @brief Boundary-element traction solver for axisymmetric Stokes flow.
 *
 * Green's identity for the exterior velocity field, collocated at panel
 * midpoints, with the physical traction as unknown:
 *
 *   (1/8 pi eta) S[f](x0) = (1/8 pi) D[u](x0) - u(x0),
 *
 * where S is the single layer over all panels and D the double layer over
 * closed bodies. For the collocation body D is taken in the subtracted form
 * D[u - u(x0)] with u(x0) a fixed Cartesian vector, which absorbs the jump
 * term and keeps the integrand bounded; the in-plane part of that constant
 * rotates relative to the ring frame, so it needs the one-cosine azimuthal
 * kernel rather than the axisymmetric one. Open screens (finite no-slip
 * walls) carry only the jump of traction across them, so they contribute no
 * double layer.
 *
 * The single layer on each closed body annihilates the outward normal
 * density (the traction of a constant-pressure interior state), and
 * velocity data cannot pin that mode. Each closed body therefore gets one
 * bordered column (the normal density, with strength mu_b) and one extra
 * equation: the pressure representation evaluated at a point inside the
 * body must vanish. The normal density produces a nonzero interior
 * pressure, so the bordered system is uniquely solvable and mu_b returns
 * as machine noise; boundary conditions with net volume flux are then
 * represented correctly, which plain least-squares completions get wrong.
 *
 * Bodies listed as force free swap a known rigid speed for an unknown one:
 * a column of ones in their axial velocity rows plus a zero-net-axial-force
 * row. Everything is solved in one dense LU factorization.
 *
 * Internally the system is scaled by power-of-two length and velocity
 * references, so geometrically similar inputs produce bitwise-similar
 * systems regardless of absolute scale.
 */
#ifndef MORPHFLOW_BEM_HPP
#define MORPHFLOW_BEM_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "morphflow/mesh.hpp"
#include "morphflow/quadrature.hpp"
#include "morphflow/ring_kernel.hpp"

namespace morphflow {

struct SolverOptions {
    double quad_rel_tol = 1e-8;   // per-pair relative tolerance for panel integrals
    double far_panel_distance = 4.0;  // dist/h beyond which one Gauss pass suffices
    int max_quad_depth = 32;
    int jobs = 1;                 // assembly threads; result is independent of this
    std::vector<int> free_bodies;  // closed bodies with unknown rigid axial speed
    double kernel_perturbation = 0.0;  // fault-injection hook for self-checks
};

namespace detail {

struct PanelData {
    double z0, s0, h, tz, ts, nz, ns, area;
    int body;
    bool closed;       // body is a closed surface
    double umz, ums;   // boundary velocity at the midpoint
    double duz, dus;   // boundary velocity slope along the panel
};

inline double dist_point_panel(double cz, double cs, const PanelData& p) {
    const double rz = cz - p.z0, rs = cs - p.s0;
    double t = rz * p.tz + rs * p.ts;
    t = std::clamp(t, -0.5 * p.h, 0.5 * p.h);
    return std::hypot(rz - t * p.tz, rs - t * p.ts);
}

/// Round a positive scale up to a power of two so scaling is exact.
inline double pow2_scale(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("pow2_scale: need a positive scale");
    return std::exp2(std::ceil(std::log2(x)));
}

}  // namespace detail

/**
 * Solve for the surface traction given the boundary velocity. Bodies in
 * options.free_bodies must be closed; their boundary velocity entries are
 * the slip (shape-change) part, and the rigid axial speed that makes them
 * force free is solved for and returned in free_body_velocity.
 */
inline TractionSolution solve_traction(const RingMesh& mesh, const SurfaceVelocityBC& bc,
                                       double eta, const SolverOptions& options = {}) {
    using detail::PanelData;
    if (!(eta > 0.0)) throw std::invalid_argument("solve_traction: viscosity must be > 0");
    if (bc.panels.size() != mesh.elements.size())
        throw std::invalid_argument("solve_traction: boundary condition size mismatch");
    mesh.validate();

    const std::size_t n = mesh.elements.size();
    const int n_bodies = mesh.body_count();

    std::vector<char> closed(static_cast<std::size_t>(n_bodies), 0);
    for (int b = 0; b < n_bodies; ++b) closed[static_cast<std::size_t>(b)] = mesh.body_is_closed(b);
    for (int b : options.free_bodies)
        if (b < 0 || b >= n_bodies || !closed[static_cast<std::size_t>(b)])
            throw std::invalid_argument("solve_traction: free body must be a closed body");

    // Power-of-two references keep the internal system scale free.
    const double Lref = detail::pow2_scale(mesh.extent());
    double vmax = 0.0;
    for (const auto& p : bc.panels)
        vmax = std::max({vmax, std::abs(p.uz0), std::abs(p.us0), std::abs(p.uz1),
                         std::abs(p.us1)});
    const double Vref = vmax > 0.0 ? detail::pow2_scale(vmax) : 1.0;

    std::vector<PanelData> pan(n);
    for (std::size_t e = 0; e < n; ++e) {
        const auto g = mesh.panel(e);
        PanelData& p = pan[e];
        p.z0 = g.z0 / Lref;
        p.s0 = g.s0 / Lref;
        p.h = g.h / Lref;
        p.tz = g.tz;
        p.ts = g.ts;
        p.nz = g.nz;
        p.ns = g.ns;
        p.area = g.area / (Lref * Lref);
        p.body = mesh.elements[e].body;
        p.closed = closed[static_cast<std::size_t>(p.body)] != 0;
        const auto& v = bc.panels[e];
        p.umz = 0.5 * (v.uz0 + v.uz1) / Vref;
        p.ums = 0.5 * (v.us0 + v.us1) / Vref;
        p.duz = (v.uz1 - v.uz0) / (Vref * p.h);
        p.dus = (v.us1 - v.us0) / (Vref * p.h);
    }

    // Unknown layout: [tractions 2n | mu per closed body | U per free body].
    std::vector<int> mu_index(static_cast<std::size_t>(n_bodies), -1);
    int n_closed = 0;
    for (int b = 0; b < n_bodies; ++b)
        if (closed[static_cast<std::size_t>(b)]) mu_index[static_cast<std::size_t>(b)] = n_closed++;
    std::vector<int> u_index(static_cast<std::size_t>(n_bodies), -1);
    int n_free = 0;
    for (int b : options.free_bodies) u_index[static_cast<std::size_t>(b)] = n_free++;

    const std::size_t dim = 2 * n + static_cast<std::size_t>(n_closed + n_free);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    Eigen::VectorXd B = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));

    const double inv8pi = 1.0 / (8.0 * std::numbers::pi);
    const double skew = 1.0 + options.kernel_perturbation;

    // Velocity rows: two per collocation point (panel midpoint).
    const auto fill_row = [&](std::size_t i) {
        const PanelData& ci = pan[i];
        double dl_acc_z = 0.0, dl_acc_s = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            const PanelData& pe = pan[e];
            const bool self = e == i;
            const bool want_dl = pe.closed;
            const bool same_body = pe.body == ci.body && ci.closed;
            const double dz0 = pe.z0 - ci.z0, ds0 = pe.s0 - ci.s0;
            const auto f = [&](double t) -> std::array<double, 6> {
                const double sg = pe.s0 + t * pe.ts;
                const auto geom = detail::make_ring_geom_rel(ci.s0, sg, dz0 + t * pe.tz,
                                                             ds0 + t * pe.ts);
                auto sl = detail::ring_sl(geom);
                sl.sz *= skew;
                std::array<double, 6> out{sl.zz, sl.zs, sl.sz, sl.ss, 0.0, 0.0};
                if (self) {
                    const double lg = detail::ring_sl_log_coefficient * std::log(std::abs(t));
                    out[0] += lg;
                    out[3] += lg;
                }
                if (want_dl) {
                    double uz = pe.umz + t * pe.duz;
                    const double us = pe.ums + t * pe.dus;
                    // The subtracted collocation velocity must be a constant
                    // Cartesian vector or the -4 pi jump bookkeeping in the
                    // right-hand side is wrong. Its axial part shifts uz; its
                    // in-plane part rotates relative to the ring frame and
                    // enters through the one-cosine-mode kernel.
                    if (same_body) uz -= ci.umz;
                    auto dl = detail::ring_dl(geom, pe.nz, pe.ns, uz, us);
                    if (same_body && ci.ums != 0.0) {
                        const auto dx = detail::ring_dl_xhat(geom, pe.nz, pe.ns);
                        dl.z -= ci.ums * dx.z;
                        dl.s -= ci.ums * dx.s;
                    }
                    out[4] = dl.z;
                    out[5] = dl.s;
                }
                return out;
            };
            const double hh = 0.5 * pe.h;
            std::array<double, 6> I{};
            if (self) {
                const auto w1 = detail::gauss10<6>(f, -hh, 0.0);
                const auto w2 = detail::gauss10<6>(f, 0.0, hh);
                double scale = 0.0;
                for (int c = 0; c < 6; ++c) scale = std::max(scale, std::abs(w1[c] + w2[c]));
                const double tol = 0.5 * options.quad_rel_tol * scale;
                const auto I1 = detail::integrate_adaptive<6>(f, -hh, 0.0, tol, options.max_quad_depth);
                const auto I2 = detail::integrate_adaptive<6>(f, 0.0, hh, tol, options.max_quad_depth);
                for (int c = 0; c < 6; ++c) I[c] = I1[c] + I2[c];
                // add back the subtracted log: int_{-h/2}^{h/2} -2 ln|t| dt
                const double lg = -detail::ring_sl_log_coefficient * pe.h * (std::log(hh) - 1.0);
                I[0] += lg;
                I[3] += lg;
            } else if (detail::dist_point_panel(ci.z0, ci.s0, pe) >
                       options.far_panel_distance * pe.h) {
                I = detail::gauss10<6>(f, -hh, hh);
            } else {
                const auto whole = detail::gauss10<6>(f, -hh, hh);
                double scale = 0.0;
                for (int c = 0; c < 6; ++c) scale = std::max(scale, std::abs(whole[c]));
                I = detail::integrate_adaptive<6>(f, -hh, hh, options.quad_rel_tol * scale,
                                                  options.max_quad_depth);
            }
            const auto ei = static_cast<Eigen::Index>(2 * e);
            const auto ri = static_cast<Eigen::Index>(2 * i);
            A(ri, ei) = inv8pi * I[0];
            A(ri, ei + 1) = inv8pi * I[1];
            A(ri + 1, ei) = inv8pi * I[2];
            A(ri + 1, ei + 1) = inv8pi * I[3];
            dl_acc_z += I[4];
            dl_acc_s += I[5];
        }
        const auto ri = static_cast<Eigen::Index>(2 * i);
        B(ri) = inv8pi * dl_acc_z - ci.umz;
        B(ri + 1) = inv8pi * dl_acc_s - ci.ums;
        if (ci.closed) {
            const auto mc = static_cast<Eigen::Index>(2 * n) + mu_index[static_cast<std::size_t>(ci.body)];
            A(ri, mc) = ci.nz;
            A(ri + 1, mc) = ci.ns;
        }
        if (u_index[static_cast<std::size_t>(ci.body)] >= 0) {
            const auto uc = static_cast<Eigen::Index>(2 * n) + n_closed +
                            u_index[static_cast<std::size_t>(ci.body)];
            A(ri, uc) = 1.0;  // unknown rigid speed adds U zhat to the boundary velocity
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || n < 2 * static_cast<std::size_t>(jobs)) {
        for (std::size_t i = 0; i < n; ++i) fill_row(i);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
        for (int j = 0; j < jobs; ++j) {
            const std::size_t lo = static_cast<std::size_t>(j) * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) fill_row(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // One pressure-extinction row per closed body, collocated at an interior
    // axis point; this is the equation that pins the normal-density mode.
    for (int b = 0; b < n_bodies; ++b) {
        if (!closed[static_cast<std::size_t>(b)]) continue;
        const auto xc = mesh.interior_axis_point(b);
        const double cz = xc.z / Lref, cs = 0.0;
        const auto row = static_cast<Eigen::Index>(2 * n) + mu_index[static_cast<std::size_t>(b)];
        double rhs = 0.0, ucoef = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            const PanelData& pe = pan[e];
            const bool want_dl = pe.closed;
            const bool own_free = pe.body == b && u_index[static_cast<std::size_t>(b)] >= 0;
            const auto f = [&](double t) -> std::array<double, 4> {
                const double z = pe.z0 + t * pe.tz;
                const double sg = pe.s0 + t * pe.ts;
                const auto geom = detail::make_ring_geom(cz, cs, z, sg);
                const auto ps = detail::ring_pressure_sl(geom);
                std::array<double, 4> out{ps.z, ps.s, 0.0, 0.0};
                if (want_dl) {
                    const double uz = pe.umz + t * pe.duz;
                    const double us = pe.ums + t * pe.dus;
                    out[2] = detail::ring_pressure_dl(geom, pe.nz, pe.ns, uz, us);
                    if (own_free) out[3] = detail::ring_pressure_dl(geom, pe.nz, pe.ns, 1.0, 0.0);
                }
                return out;
            };
            const double hh = 0.5 * pe.h;
            const auto whole = detail::gauss10<4>(f, -hh, hh);
            double scale = 0.0;
            for (int c = 0; c < 4; ++c) scale = std::max(scale, std::abs(whole[c]));
            const auto I = detail::integrate_adaptive<4>(f, -hh, hh,
                                                         options.quad_rel_tol * scale,
                                                         options.max_quad_depth);
            const auto ei = static_cast<Eigen::Index>(2 * e);
            A(row, ei) += inv8pi * I[0];
            A(row, ei + 1) += inv8pi * I[1];
            rhs -= inv8pi * I[2];
            ucoef += inv8pi * I[3];
        }
        if (u_index[static_cast<std::size_t>(b)] >= 0)
            A(row, static_cast<Eigen::Index>(2 * n) + n_closed +
                       u_index[static_cast<std::size_t>(b)]) = ucoef;
        B(row) = rhs;
        const double rscale = std::max(A.row(row).cwiseAbs().maxCoeff(), 1e-30);
        A.row(row) /= rscale;
        B(row) /= rscale;
    }

    // Zero net axial force on each free body.
    for (int b : options.free_bodies) {
        const auto row = static_cast<Eigen::Index>(2 * n) + n_closed +
                         u_index[static_cast<std::size_t>(b)];
        double atot = 0.0;
        for (std::size_t e = 0; e < n; ++e)
            if (pan[e].body == b) atot += pan[e].area;
        for (std::size_t e = 0; e < n; ++e)
            if (pan[e].body == b) A(row, static_cast<Eigen::Index>(2 * e)) = pan[e].area / atot;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd X = lu.solve(B);
    const double resid = (A * X - B).norm();
    const double bscale = std::max(B.norm(), 1e-30);
    if (!(resid <= 1e-8 * bscale + 1e-12))
        throw std::runtime_error("solve_traction: linear system solved poorly, residual " +
                                 std::to_string(resid / bscale));

    // Back to physical units. X holds the traction exerted by the fluid on
    // the surface; the solution reports the opposite side of that pair.
    const double fscale = eta * Vref / Lref;
    TractionSolution sol;
    sol.traction.resize(n);
    sol.body_force_z.assign(static_cast<std::size_t>(n_bodies), 0.0);
    sol.body_power.assign(static_cast<std::size_t>(n_bodies), 0.0);
    sol.null_strength.assign(static_cast<std::size_t>(n_closed), 0.0);
    sol.free_body_velocity.assign(static_cast<std::size_t>(n_free), 0.0);
    for (int c = 0; c < n_closed; ++c)
        sol.null_strength[static_cast<std::size_t>(c)] = X(static_cast<Eigen::Index>(2 * n) + c);
    for (int k = 0; k < n_free; ++k)
        sol.free_body_velocity[static_cast<std::size_t>(k)] =
            Vref * X(static_cast<Eigen::Index>(2 * n) + n_closed + k);

    for (std::size_t e = 0; e < n; ++e) {
        const PanelData& pe = pan[e];
        const double fz = fscale * X(static_cast<Eigen::Index>(2 * e));
        const double fs = fscale * X(static_cast<Eigen::Index>(2 * e) + 1);
        sol.traction[e] = {-fz, -fs};  // exerted on the fluid
        const double area = pe.area * Lref * Lref;
        double uz = pe.umz * Vref, us = pe.ums * Vref;
        const int ui = u_index[static_cast<std::size_t>(pe.body)];
        if (ui >= 0) uz += sol.free_body_velocity[static_cast<std::size_t>(ui)];
        sol.body_force_z[static_cast<std::size_t>(pe.body)] += fz * area;
        sol.body_power[static_cast<std::size_t>(pe.body)] += (uz * -fz + us * -fs) * area;
    }
    double pabs = 0.0;
    for (double p : sol.body_power) {
        sol.power += p;
        pabs += std::abs(p);
    }
    if (!(sol.power >= -1e-9 * std::max(pabs, 1e-300)))
        throw std::runtime_error("solve_traction: dissipated power came out negative");
    return sol;
}

/// Result of a mesh-refinement loop driven by the dissipated power.
struct RefinedSolve {
    RingMesh mesh;
    SurfaceVelocityBC bc;
    TractionSolution solution;
    int level = 0;
    double power_change = 0.0;  // relative change at the accepted level
    bool converged = false;
};

/**
 * Re-solve on successively finer meshes until the dissipated power changes
 * by less than rel_tol between levels (or max_level is hit). build(level)
 * must return a (mesh, boundary condition) pair, finer for larger level.
 */
template <class BuilderFn>
RefinedSolve refine_power_until(BuilderFn&& build, double eta, const SolverOptions& options,
                                double rel_tol, int min_level = 0, int max_level = 3) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("refine_power_until: rel_tol must be > 0");
    RefinedSolve out;
    double prev = 0.0;
    for (int level = min_level; level <= max_level; ++level) {
        auto [mesh, bc] = build(level);
        out.solution = solve_traction(mesh, bc, eta, options);
        out.mesh = std::move(mesh);
        out.bc = std::move(bc);
        out.level = level;
        if (level > min_level) {
            out.power_change = std::abs(out.solution.power - prev) /
                               std::max(std::abs(out.solution.power), 1e-300);
            if (out.power_change <= rel_tol) {
                out.converged = true;
                return out;
            }
        }
        prev = out.solution.power;
    }
    return out;
}

}  // namespace morphflow

#endif  // MORPHFLOW_BEM_HPP
