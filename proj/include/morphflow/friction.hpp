/**
 * @file friction.hpp
 * @brief Closed forms for internal sliding dissipation of telescoping robots.
 *
 * Sliding contacts are modeled as lubricated surfaces with tangential stress
 * k_friction * v_rel. The dimensionless coefficient h_internal normalizes the
 * summed contact power by k_friction d0^2 v0^2, with d0 = L and v0 the tip
 * speed of the respective robot.
 */
#ifndef MORPHFLOW_FRICTION_HPP
#define MORPHFLOW_FRICTION_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "morphflow/robot_specs.hpp"

namespace morphflow {

/**
 * Contact area between nested segments i and i-1 at extension f:
 * a cylindrical overlap band 2 pi (r + (n-i) s) L (1-f).
 *
 * @param i segment index in [2, n] (segment 1 is the outermost).
 */
inline double sliding_area(int i, int n, double r, double s, double L, double f) {
    if (i < 2 || i > n) throw std::invalid_argument("sliding_area: need 2 <= i <= n");
    if (!(f >= 0.0) || !(f <= 1.0)) throw std::invalid_argument("sliding_area: f outside [0,1]");
    return 2.0 * std::numbers::pi * (r + (n - i) * s) * L * (1.0 - f);
}

/**
 * h_internal of the double-sided expanding robot:
 *   2 pi (1-f) (n-1)/n^3 [ (n-2) + (n+2) r/L ].
 * Equals the sum of 2 k S_i (L fdot)^2 over contacts i = 2..n (both sides),
 * normalized by k L^2 (n L fdot)^2.
 */
inline double expanding_h_internal(const ExpandingRobotSpec& spec, double f) {
    if (!(f >= 0.0) || !(f <= 1.0))
        throw std::invalid_argument("expanding_h_internal: f outside [0,1]");
    const double n = spec.n;
    if (spec.n == 1) return 0.0;  // single shell, nothing slides
    const double rl = spec.inner_radius() / spec.L;
    return 2.0 * std::numbers::pi * (1.0 - f) * (n - 1.0) / (n * n * n)
           * ((n - 2.0) + (n + 2.0) * rl);
}

/**
 * h_internal of the single-sided probe:
 *   pi (1-f) / (n-1) [ (n-2) s/L + 2 r/L ],
 * normalized by k L^2 ((n-1) L fdot)^2.
 */
inline double probe_h_internal(const ProbeSpec& spec, double f) {
    if (!(f >= 0.0) || !(f <= 1.0))
        throw std::invalid_argument("probe_h_internal: f outside [0,1]");
    const double n = spec.n;
    return std::numbers::pi * (1.0 - f) / (n - 1.0)
           * ((n - 2.0) * spec.s / spec.L + 2.0 * spec.r / spec.L);
}

/// How the tread-sphere internal loss is accounted.
enum class TreadInternalModel {
    band_only,   ///< bearing area = the tread band itself
    calibrated   ///< effective constant including the drive mechanism
};

/// Calibrated effective h_internal of the treadmill drive.
inline constexpr double tread_calibrated_h_internal = 19.6;

/**
 * h_internal of a treadmill sphere (d0 = a, v0 = v_tread).
 *
 * band_only charges the sliding stress over the band area 4 pi a^2 fraction,
 * giving 4 pi fraction; calibrated returns the effective constant used for
 * the energy tables, which also accounts for the internal drive.
 */
inline double tread_h_internal(TreadInternalModel model, double band_area_fraction = 0.5) {
    if (!(band_area_fraction > 0.0) || !(band_area_fraction < 1.0))
        throw std::invalid_argument("tread_h_internal: band fraction must be in (0,1)");
    switch (model) {
        case TreadInternalModel::band_only:
            return 4.0 * std::numbers::pi * band_area_fraction;
        case TreadInternalModel::calibrated:
            return tread_calibrated_h_internal;
    }
    throw std::invalid_argument("tread_h_internal: unknown model");
}

}  // namespace morphflow

#endif  // MORPHFLOW_FRICTION_HPP
