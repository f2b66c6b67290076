/**
 * @file elliptic.hpp
 * @brief Complete elliptic integrals and azimuthal ring moments.
 *
 * The axisymmetric reduction of the free-space Stokes kernels leads to
 * integrals
 *
 *   G^nu_p(m) = int_0^{pi/2} sin^{2p}(psi) (m1 + m sin^2 psi)^{-nu/2} dpsi,
 *
 * with m = 4 s s0 / r2^2 and m1 = 1 - m = r1^2 / r2^2 supplied separately so
 * the near-singular limit m1 -> 0 keeps full precision. All moments here are
 * positive, so the kernel assembly downstream is free of catastrophic
 * cancellation.
 */
#ifndef MORPHFLOW_ELLIPTIC_HPP
#define MORPHFLOW_ELLIPTIC_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/special_functions/ellint_rg.hpp>

namespace morphflow::detail {

struct EllipticKE {
    double K;
    double E;
};

/**
 * Complete elliptic integrals K(m), E(m) in the parameter convention
 * (m = k^2), through the Carlson forms K = RF(0, m1, 1), E = 2 RG(0, m1, 1).
 * m1 = 1 - m must be passed exactly: the modulus form K(sqrt(m)) would
 * square the rounded sqrt and lose m1 near the logarithmic singularity,
 * while the Carlson forms take the complement directly and stay a few ulp
 * accurate for arbitrarily small m1.
 */
inline EllipticKE elliptic_KE(double m, double m1) {
    if (!(m >= 0.0) || !(m1 > 0.0))
        throw std::domain_error("elliptic_KE: need m >= 0 and m1 > 0");
    return {boost::math::ellint_rf(0.0, m1, 1.0),
            2.0 * boost::math::ellint_rg(0.0, m1, 1.0)};
}

/**
 * The nine ring moments used by the kernels: nu = 1 (p <= 1), nu = 3
 * (p <= 2) and nu = 5 (p <= 3), plus K and E.
 */
struct RingMoments {
    double K = 0.0, E = 0.0;
    double g1[2] = {0, 0};
    double g3[3] = {0, 0, 0};
    double g5[4] = {0, 0, 0, 0};
};

/// Hypergeometric series for G^nu_p, accurate for small m (used for m < 0.4).
inline double moment_series(int nu, int p, double m) {
    double c = 1.0;  // Wallis factor (2p-1)!!/(2p)!!
    for (int i = 1; i <= p; ++i) c *= (2.0 * i - 1.0) / (2.0 * i);
    double sum = 0.0, mj = 1.0;
    for (int j = 0; j < 64; ++j) {
        const double term = c * mj;
        sum += term;
        if (term < 1e-17 * sum) break;
        c *= (0.5 * nu + j) * (2.0 * j + 1.0) / ((j + 1.0) * (2.0 * j + 2.0 * p + 2.0));
        mj *= m;
    }
    return 0.5 * std::numbers::pi * sum;
}

// Below the switch the binomial reduction for p >= 1 cancels severely (the
// amplification grows like m^-p), so the series takes over well before that.
inline RingMoments ring_moments(double m, double m1) {
    RingMoments mom;
    if (m < 0.4) {
        for (int p = 0; p < 2; ++p) mom.g1[p] = moment_series(1, p, m);
        for (int p = 0; p < 3; ++p) mom.g3[p] = moment_series(3, p, m);
        for (int p = 0; p < 4; ++p) mom.g5[p] = moment_series(5, p, m);
        const auto ke = elliptic_KE(m, m1);
        mom.K = ke.K;
        mom.E = ke.E;
        return mom;
    }
    const auto ke = elliptic_KE(m, m1);
    const double K = ke.K, E = ke.E;
    // T_nu = G^nu_0 chain; binomial reduction for p >= 1:
    // G^nu_p = m^-p sum_l C(p,l) (-m1)^l T_{nu-2p+2l}
    const double T3 = E / m1;
    const double T5 = (2.0 * (2.0 - m) * T3 - K) / (3.0 * m1);
    const double inv_m = 1.0 / m;
    mom.K = K;
    mom.E = E;
    mom.g1[0] = K;
    mom.g1[1] = (E - m1 * K) * inv_m;
    mom.g3[0] = T3;
    mom.g3[1] = (K - E) * inv_m;
    mom.g3[2] = (E * (1.0 + m1) - 2.0 * m1 * K) * inv_m * inv_m;
    mom.g5[0] = T5;
    mom.g5[1] = (T3 - m1 * T5) * inv_m;
    mom.g5[2] = (K - 2.0 * E + m1 * m1 * T5) * inv_m * inv_m;
    mom.g5[3] = (E * (1.0 + 3.0 * m1) - 3.0 * m1 * K - m1 * m1 * m1 * T5) * inv_m * inv_m * inv_m;
    return mom;
}

}  // namespace morphflow::detail

#endif  // MORPHFLOW_ELLIPTIC_HPP
