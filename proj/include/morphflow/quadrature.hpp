/**
 * @file quadrature.hpp
 * @brief Fixed Gauss-Legendre rule and a vector-valued adaptive integrator.
 *
 * The 10-point rule is the only one used in the package; panel integrals
 * either take it whole (well separated pairs) or drive it adaptively by
 * bisection. Nodes and weights are frozen to 19 significant digits so
 * results are bit-stable across platforms and library versions.
 */
#ifndef MORPHFLOW_QUADRATURE_HPP
#define MORPHFLOW_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace morphflow::detail {

inline constexpr int gl10_n = 10;

inline constexpr double gl10_nodes[gl10_n] = {
    -0.973906528517171720078, -0.8650633666889845107321, -0.6794095682990244062343,
    -0.4333953941292471907993, -0.1488743389816312108848, 0.1488743389816312108848,
    0.4333953941292471907993,  0.6794095682990244062343,  0.8650633666889845107321,
    0.973906528517171720078};

inline constexpr double gl10_weights[gl10_n] = {
    0.06667134430868813759357, 0.1494513491505805931458, 0.2190863625159820439955,
    0.2692667193099963550912,  0.2955242247147528701739, 0.2955242247147528701739,
    0.2692667193099963550912,  0.2190863625159820439955, 0.1494513491505805931458,
    0.06667134430868813759357};

/// One 10-point Gauss pass of a vector-valued integrand over [a, b].
template <std::size_t N, class F>
inline std::array<double, N> gauss10(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::array<double, N> acc{};
    for (int q = 0; q < gl10_n; ++q) {
        const std::array<double, N> v = f(mid + half * gl10_nodes[q]);
        for (std::size_t i = 0; i < N; ++i) acc[i] += gl10_weights[q] * v[i];
    }
    for (std::size_t i = 0; i < N; ++i) acc[i] *= half;
    return acc;
}

namespace impl {

template <std::size_t N, class F>
void adapt_rec(F& f, double a, double b, const std::array<double, N>& whole,
               double tol, int depth, int max_depth, std::array<double, N>& out) {
    const double mid = 0.5 * (a + b);
    const auto left = gauss10<N>(f, a, mid);
    const auto right = gauss10<N>(f, mid, b);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        err = std::max(err, std::abs(whole[i] - (left[i] + right[i])));
    if (err <= tol || depth >= max_depth) {
        for (std::size_t i = 0; i < N; ++i) out[i] += left[i] + right[i];
        return;
    }
    adapt_rec<N>(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
    adapt_rec<N>(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace impl

/**
 * Adaptive bisection on top of the 10-point rule. The error indicator for a
 * subinterval is the worst component difference between its one-shot value
 * and the sum of its halves; tolerance is budgeted proportionally to length,
 * so the absolute error of the result is about abs_tol. Generous depth cap;
 * integrable endpoint singularities converge well before reaching it.
 */
template <std::size_t N, class F>
inline std::array<double, N> integrate_adaptive(F&& f, double a, double b,
                                                double abs_tol, int max_depth = 32) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: abs_tol must be > 0");
    const auto whole = gauss10<N>(f, a, b);
    std::array<double, N> out{};
    impl::adapt_rec<N>(f, a, b, whole, abs_tol, 0, max_depth, out);
    return out;
}

/**
 * Scalar adaptive integral with a relative tolerance: a first whole-interval
 * pass sets the absolute error budget. Intended for smooth positive
 * integrands (costs, mobilities); a genuinely zero integral returns the
 * first-pass value unrefined.
 */
template <class F>
inline double integrate_scalar(F&& f, double a, double b, double rel_tol, int max_depth = 32) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_scalar: rel_tol must be > 0");
    auto wrap = [&](double x) { return std::array<double, 1>{f(x)}; };
    const auto first = gauss10<1>(wrap, a, b);
    const double tol = rel_tol * std::abs(first[0]);
    if (tol == 0.0) return first[0];
    return integrate_adaptive<1>(wrap, a, b, tol, max_depth)[0];
}

}  // namespace morphflow::detail

#endif  // MORPHFLOW_QUADRATURE_HPP
