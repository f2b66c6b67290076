/**
 * @file robot_specs.hpp
 * @brief Parameter sets for the three robot families.
 *
 * The extension state f runs from 0 (retracted) to 1 (fully extended);
 * geometric meshes and friction formulas take f as the configuration
 * coordinate.
 */
#ifndef MORPHFLOW_ROBOT_SPECS_HPP
#define MORPHFLOW_ROBOT_SPECS_HPP

#include <stdexcept>

namespace morphflow {

/**
 * Telescoping expanding robot: an outer cylinder of radius L and length 2L
 * with n nested segments per side, each of length L and wall step s, the
 * innermost of radius r = L - n s. Both sides extend symmetrically at
 * rate fdot (per unit f).
 */
struct ExpandingRobotSpec {
    double L;      ///< outer radius and segment length [m]
    int n;         ///< segments per side
    double s;      ///< radial step between nested segments [m]
    double fdot;   ///< extension rate df/dt [1/s]

    ExpandingRobotSpec(double L_, int n_, double s_, double fdot_)
        : L(L_), n(n_), s(s_), fdot(fdot_) {
        if (!(L > 0.0)) throw std::invalid_argument("ExpandingRobotSpec: L must be positive");
        if (n < 1) throw std::invalid_argument("ExpandingRobotSpec: n must be >= 1");
        if (!(s >= 0.0)) throw std::invalid_argument("ExpandingRobotSpec: s must be >= 0");
        if (!(inner_radius() > 0.0))
            throw std::invalid_argument("ExpandingRobotSpec: innermost radius L - n s must be positive");
    }

    double inner_radius() const { return L - n * s; }   ///< r = L - n s
    double tip_speed() const { return n * L * fdot; }   ///< v0 = n L fdot
};

/**
 * Extensible probe on a spherical body: n nested tubes of length L each,
 * innermost radius r, wall step s, mounted on a sphere of radius R_body.
 * Only the n-1 inner tubes extend (the outermost is fixed to the body).
 */
struct ProbeSpec {
    double L;
    int n;
    double r;       ///< innermost tube radius [m]
    double s;       ///< radial step between tubes [m]
    double R_body;  ///< radius of the carrying sphere [m]
    double fdot;

    ProbeSpec(double L_, int n_, double r_, double s_, double R_body_, double fdot_)
        : L(L_), n(n_), r(r_), s(s_), R_body(R_body_), fdot(fdot_) {
        if (!(L > 0.0) || !(r > 0.0) || !(s >= 0.0) || !(R_body > 0.0))
            throw std::invalid_argument("ProbeSpec: lengths must be positive");
        if (n < 2) throw std::invalid_argument("ProbeSpec: n must be >= 2");
        if (!(base_radius() < R_body))
            throw std::invalid_argument("ProbeSpec: probe base r + (n-1)s must fit inside the body sphere");
    }

    double base_radius() const { return r + (n - 1) * s; }  ///< outermost moving tube radius
    double tip_speed() const { return (n - 1) * L * fdot; } ///< v0 = (n-1) L fdot
};

/// Which bounding configuration a treadmill sphere runs against.
enum class TreadCase { wall, two_spheres };

/**
 * Surface-treadmill sphere: radius a with a tangentially moving equatorial
 * band covering band_area_fraction of the surface, tread speed v_tread.
 * delta is the normalized separation: center-to-wall distance over a for
 * the wall case, center-to-midplane distance over a for two spheres.
 */
struct TreadSphereSpec {
    double a;
    double v_tread;
    double delta;
    TreadCase geometry;
    double band_area_fraction = 0.5;
    double ramp_width = 50e-9;  ///< tread edge velocity ramp arclength [m]

    TreadSphereSpec(double a_, double v_tread_, double delta_, TreadCase c,
                    double fraction = 0.5, double ramp = 50e-9)
        : a(a_), v_tread(v_tread_), delta(delta_), geometry(c),
          band_area_fraction(fraction), ramp_width(ramp) {
        if (!(a > 0.0)) throw std::invalid_argument("TreadSphereSpec: a must be positive");
        if (!(delta > 1.0)) throw std::invalid_argument("TreadSphereSpec: delta must exceed 1 (no overlap)");
        if (!(fraction > 0.0) || !(fraction < 1.0))
            throw std::invalid_argument("TreadSphereSpec: band fraction must be in (0,1)");
        if (!(ramp >= 0.0) || !(ramp < a * fraction))
            throw std::invalid_argument("TreadSphereSpec: ramp width must be small against the band");
    }
};

}  // namespace morphflow

#endif  // MORPHFLOW_ROBOT_SPECS_HPP
