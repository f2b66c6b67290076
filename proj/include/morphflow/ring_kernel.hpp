/**
 * @file ring_kernel.hpp
 * @brief Azimuthally integrated free-space Stokes kernels.
 *
 * A ring of radius sigma at height z carries either a force density
 * (single layer) or a velocity jump (double layer). Integrating the 3D
 * kernels over the azimuth phi reduces every entry to a short polynomial in
 * w = 1 - cos(phi) contracted against the positive moments
 *
 *   F^nu_p = int_0^{2pi} w^p / r^nu dphi = 4 * 2^p * G^nu_p / r2^nu,
 *
 * where r^2 = r1^2 + 2 sigma s0 w, r1/r2 are the closest/farthest passing
 * distances, and G^nu_p comes from elliptic.hpp. Writing the numerators in w
 * keeps every term well scaled near the self-interaction singularity; the
 * only genuine divergence left is the log carried by K in the two diagonal
 * single-layer entries, which panel integration removes explicitly.
 *
 * Conventions: field point x0 = (z0, s0), source point x = (z, sigma),
 * zeta = z - z0, d = sigma - s0. The velocity Green function is
 * G_ij = delta_ij / r + rhat_i rhat_j r / r^2 (Oseen tensor, no prefactor);
 * the stresslet is T_ijk = -6 r_i r_j r_k / r^5 with r = x - x0. Prefactors
 * 1/(8 pi eta) etc. are applied by the caller.
 */
#ifndef MORPHFLOW_RING_KERNEL_HPP
#define MORPHFLOW_RING_KERNEL_HPP

#include <cmath>
#include <stdexcept>

#include "morphflow/elliptic.hpp"

namespace morphflow::detail {

/// Shared geometry and moments for one (field point, source ring) pair.
struct RingGeom {
    double sigma;   // source ring radius
    double s0;      // field point radius (0 on the axis)
    double zeta;    // z - z0
    double d;       // sigma - s0
    double F1[2];   // nu = 1 moments, p = 0..1
    double F3[3];   // nu = 3
    double F5[4];   // nu = 5
};

/**
 * Build the geometry from offsets the caller already has. Collocation
 * schemes must form zeta and d relative to the collocation point (panel
 * offset plus arclength step) rather than subtracting absolute positions:
 * for very short panels the absolute source position rounds onto the field
 * point and a spurious zero separation results.
 */
inline RingGeom make_ring_geom_rel(double s0, double sigma, double zeta, double d) {
    if (!(sigma > 0.0) || !(s0 >= 0.0))
        throw std::domain_error("make_ring_geom: need sigma > 0 and s0 >= 0");
    RingGeom g;
    g.sigma = sigma;
    g.s0 = s0;
    g.zeta = zeta;
    g.d = d;
    const double r1sq = g.zeta * g.zeta + g.d * g.d;
    const double sp = sigma + s0;
    const double r2sq = g.zeta * g.zeta + sp * sp;
    const double m1 = r1sq / r2sq;
    const double m = 4.0 * sigma * s0 / r2sq;
    const RingMoments mom = ring_moments(m, m1);
    const double r2 = std::sqrt(r2sq);
    const double i1 = 1.0 / r2;
    const double i3 = i1 / r2sq;
    const double i5 = i3 / r2sq;
    g.F1[0] = 4.0 * mom.g1[0] * i1;
    g.F1[1] = 8.0 * mom.g1[1] * i1;
    g.F3[0] = 4.0 * mom.g3[0] * i3;
    g.F3[1] = 8.0 * mom.g3[1] * i3;
    g.F3[2] = 16.0 * mom.g3[2] * i3;
    g.F5[0] = 4.0 * mom.g5[0] * i5;
    g.F5[1] = 8.0 * mom.g5[1] * i5;
    g.F5[2] = 16.0 * mom.g5[2] * i5;
    g.F5[3] = 32.0 * mom.g5[3] * i5;
    return g;
}

inline RingGeom make_ring_geom(double z0, double s0, double z, double sigma) {
    return make_ring_geom_rel(s0, sigma, z - z0, sigma - s0);
}

/**
 * Velocity at x0 per unit force density on the ring, per unit meridian
 * arclength (circumference factor sigma included, 1/(8 pi eta) not).
 * Column index is the force direction (z, s), row the velocity component.
 */
struct RingSL {
    double zz, zs, sz, ss;
};

inline RingSL ring_sl(const RingGeom& g) {
    RingSL k;
    const double sg = g.sigma, z = g.zeta, d = g.d, s0 = g.s0;
    k.zz = sg * (g.F1[0] + z * z * g.F3[0]);
    k.zs = sg * z * (d * g.F3[0] + s0 * g.F3[1]);
    k.sz = sg * z * (d * g.F3[0] - sg * g.F3[1]);
    k.ss = sg * (g.F1[0] - g.F1[1] + d * d * (g.F3[0] - g.F3[1]) - sg * s0 * g.F3[2]);
    return k;
}

/// Coefficient of -ln|t| in both diagonal single-layer entries as the field
/// point approaches the ring at distance t. The log enters through K only:
/// sigma * 4 K / r2 -> 2 (ln(8 s0) - ln t). Used by the self-panel scheme.
inline constexpr double ring_sl_log_coefficient = 2.0;

/**
 * Double-layer (stresslet) velocity at x0 from ring velocity (uz, us) and
 * ring normal (nz, ns): sigma * int u_i T_ijk n_k dphi, stresslet factor -6
 * included, 1/(8 pi) not.
 */
struct RingDL {
    double z, s;
};

inline RingDL ring_dl(const RingGeom& g, double nz, double ns, double uz, double us) {
    const double sg = g.sigma, z = g.zeta, d = g.d, s0 = g.s0;
    const double au = us * d + uz * z, bu = us * s0;
    const double an = ns * d + nz * z, bn = ns * s0;
    const double A = au * an, B = au * bn + an * bu, C = bu * bn;
    RingDL out;
    out.z = -6.0 * sg * z * (A * g.F5[0] + B * g.F5[1] + C * g.F5[2]);
    out.s = -6.0 * sg *
            (A * d * g.F5[0] + (B * d - A * sg) * g.F5[1] + (C * d - B * sg) * g.F5[2] -
             C * sg * g.F5[3]);
    return out;
}

/**
 * Double layer of the constant Cartesian vector xhat, the in-plane unit
 * vector through the field point's azimuth: sigma * int xhat_i T_ijk n_k
 * dphi. Around the ring xhat resolves into the one-cosine azimuthal mode,
 * so ring_dl cannot express it; with u.R = d - sigma w it reduces to the
 * same moment contractions. The self-interaction scheme subtracts the
 * collocation velocity as a genuinely constant vector, the only kind the
 * -4 pi jump identity holds for, and this kernel carries its in-plane part.
 */
inline RingDL ring_dl_xhat(const RingGeom& g, double nz, double ns) {
    const double sg = g.sigma, z = g.zeta, d = g.d, s0 = g.s0;
    const double an = ns * d + nz * z, bn = ns * s0;
    const double A = d * an, B = d * bn - sg * an, C = -sg * bn;
    RingDL out;
    out.z = -6.0 * sg * z * (A * g.F5[0] + B * g.F5[1] + C * g.F5[2]);
    out.s = -6.0 * sg *
            (A * d * g.F5[0] + (B * d - A * sg) * g.F5[1] + (C * d - B * sg) * g.F5[2] -
             C * sg * g.F5[3]);
    return out;
}

/**
 * Pressure at x0 per unit ring force density: p = (1/8pi) sum_e int
 * (Rz fz + Rs fs) dl. Pairs with ring_sl under the same representation.
 */
struct RingPressureSL {
    double z, s;
};

inline RingPressureSL ring_pressure_sl(const RingGeom& g) {
    const double sg = g.sigma;
    return {2.0 * sg * g.zeta * g.F3[0], 2.0 * sg * (g.d * g.F3[0] + g.s0 * g.F3[1])};
}

/**
 * Pressure double layer: sigma * int u_i Pi_ik n_k dphi with
 * Pi_ik = 4(-delta_ik / r^3 + 3 r_i r_k / r^5). Caller applies eta/(8 pi).
 */
inline double ring_pressure_dl(const RingGeom& g, double nz, double ns, double uz, double us) {
    const double sg = g.sigma, z = g.zeta, d = g.d, s0 = g.s0;
    const double au = us * d + uz * z, bu = us * s0;
    const double an = ns * d + nz * z, bn = ns * s0;
    return sg * (-4.0 * (uz * nz + us * ns) * g.F3[0] +
                 12.0 * ((au * an) * g.F5[0] + (au * bn + an * bu) * g.F5[1] +
                         (bu * bn) * g.F5[2]));
}

}  // namespace morphflow::detail

#endif  // MORPHFLOW_RING_KERNEL_HPP
