/**
 * @file interp.hpp
 * @brief Shape-preserving piecewise-cubic interpolation of sampled curves.
 *
 * Monotone data yields a monotone interpolant (Fritsch-Carlson tangent
 * limiting), so interpolation never fabricates oscillations in sampled
 * dissipation or mobility curves. Outside the sample range the curve
 * continues linearly with the boundary tangent, which is the documented
 * extrapolation used for the small-extension endpoint of f-sweeps.
 */
#ifndef MORPHFLOW_INTERP_HPP
#define MORPHFLOW_INTERP_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace morphflow {

class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw std::invalid_argument("MonotoneCubic: need >= 2 matching samples");
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
                throw std::invalid_argument("MonotoneCubic: non-finite sample");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("MonotoneCubic: x not strictly increasing");
        m_.resize(n);
        std::vector<double> h(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            d[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            m_[0] = m_[1] = d[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        m_[0] = edge_tangent(h[0], h[1], d[0], d[1]);
        m_[n - 1] = edge_tangent(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

    /// Hermite evaluation inside the range, linear continuation outside.
    double operator()(double x) const {
        if (x <= x_.front()) return y_.front() + m_.front() * (x - x_.front());
        if (x >= x_.back()) return y_.back() + m_.back() * (x - x_.back());
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[k + 1] - x_[k];
        const double t = (x - x_[k]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * y_[k] + (t3 - 2.0 * t2 + t) * h * m_[k] +
               (-2.0 * t3 + 3.0 * t2) * y_[k + 1] + (t3 - t2) * h * m_[k + 1];
    }

  private:
    // Three-point one-sided tangent, clipped to preserve local monotonicity.
    static double edge_tangent(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (d0 * d1 <= 0.0 && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return m;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace morphflow

#endif  // MORPHFLOW_INTERP_HPP
