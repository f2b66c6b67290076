/**
 * @file optimizer.hpp
 * @brief Shape-change energetics: cost assembly, uniform and constant-power
 *        schedules, and the savings between them.
 *
 * A shape change described by one parameter f dissipates P = k(f) fdot^2,
 * so the energy of a schedule over [0, T] is E = int k fdot^2 dt. For fixed
 * endpoints and duration the minimizer has fdot proportional to 1/sqrt(k),
 * which makes the power constant; by Cauchy-Schwarz its energy
 * (int sqrt(k) df)^2 / T never exceeds the uniform-rate energy.
 */
#ifndef MORPHFLOW_OPTIMIZER_HPP
#define MORPHFLOW_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "morphflow/interp.hpp"
#include "morphflow/quadrature.hpp"
#include "morphflow/scenarios.hpp"

namespace morphflow {

struct DissipationSample {
    double f;
    double h_fluid;
    double h_internal;
};

/// Sampled drag and internal-friction coefficients over the extension range,
/// together with the scenario they were computed in.
struct DissipationCurve {
    std::vector<DissipationSample> samples;
    FluidScenario fluid;
    CharacteristicScales scales;

    void validate(std::size_t min_samples = 8) const {
        if (samples.size() < min_samples)
            throw std::invalid_argument("DissipationCurve: fewer samples than required");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto& s = samples[i];
            if (!std::isfinite(s.f) || !(s.h_fluid >= 0.0) || !(s.h_internal >= 0.0))
                throw std::invalid_argument("DissipationCurve: bad sample values");
            if (i > 0 && !(samples[i - 1].f < s.f))
                throw std::invalid_argument("DissipationCurve: f not strictly increasing");
        }
    }
};

/**
 * k(f) = c^2 (eta d0 h_fluid(f) + k_friction d0^2 h_internal(f)) where c
 * converts the extension rate fdot to the characteristic speed (c = dv0/dfdot).
 * Sampled coefficients are continued by monotone cubics, linearly beyond the
 * sampled range so curves starting at a small f_min cover f = 0.
 */
class CostFunction {
  public:
    CostFunction(const DissipationCurve& curve, double k_friction, double c)
        : hf_(make_interp(curve, &DissipationSample::h_fluid)),
          hi_(make_interp(curve, &DissipationSample::h_internal)),
          fluid_coef_(c * c * curve.fluid.dynamic_viscosity * curve.scales.d0),
          internal_coef_(c * c * k_friction * curve.scales.d0 * curve.scales.d0) {
        if (!(k_friction >= 0.0) || !(c > 0.0))
            throw std::invalid_argument("CostFunction: bad k_friction or conversion factor");
    }

    double fluid_part(double f) const { return fluid_coef_ * hf_(f); }
    double internal_part(double f) const { return internal_coef_ * hi_(f); }
    double operator()(double f) const { return fluid_part(f) + internal_part(f); }

  private:
    static MonotoneCubic make_interp(const DissipationCurve& curve,
                                     double DissipationSample::*field) {
        curve.validate(2);
        std::vector<double> x(curve.samples.size()), y(curve.samples.size());
        for (std::size_t i = 0; i < curve.samples.size(); ++i) {
            x[i] = curve.samples[i].f;
            y[i] = curve.samples[i].*field;
        }
        return MonotoneCubic(std::move(x), std::move(y));
    }

    MonotoneCubic hf_, hi_;
    double fluid_coef_, internal_coef_;
};

inline CostFunction assemble_cost(const DissipationCurve& curve, double k_friction, double c) {
    curve.validate();
    return CostFunction(curve, k_friction, c);
}

/// Energy of the uniform schedule f(t) = (F/T) t: E = (F/T) int_0^F k df.
template <class K>
double uniform_energy(K&& k, double F, double T) {
    if (!(T > 0.0) || !(F > 0.0)) throw std::invalid_argument("uniform_energy: need F, T > 0");
    return (F / T) * detail::integrate_scalar(k, 0.0, F, 1e-8);
}

struct EnergySplit {
    double fluid = 0.0;
    double internal = 0.0;
    double total() const { return fluid + internal; }
    double fluid_share() const { return fluid / (fluid + internal); }
};

/// Uniform-schedule energy separated into drag and internal-friction parts.
inline EnergySplit uniform_energy_split(const CostFunction& k, double F, double T) {
    if (!(T > 0.0) || !(F > 0.0))
        throw std::invalid_argument("uniform_energy_split: need F, T > 0");
    EnergySplit e;
    e.fluid = (F / T) * detail::integrate_scalar([&](double f) { return k.fluid_part(f); }, 0.0,
                                                 F, 1e-8);
    e.internal = (F / T) * detail::integrate_scalar(
                               [&](double f) { return k.internal_part(f); }, 0.0, F, 1e-8);
    return e;
}

namespace detail {

template <class K>
double sqrt_cost(K& k, double x) {
    const double v = k(x);
    if (!(v > 0.0)) throw std::domain_error("optimal schedule: nonpositive cost encountered");
    return std::sqrt(v);
}

}  // namespace detail

/// Energy of the constant-power schedule between x0 and x1 in time T.
template <class K>
double constant_power_energy(K&& k, double x0, double x1, double T) {
    if (!(T > 0.0) || !(x1 > x0))
        throw std::invalid_argument("constant_power_energy: need x1 > x0, T > 0");
    const double S =
        detail::integrate_scalar([&](double x) { return detail::sqrt_cost(k, x); }, x0, x1, 1e-8);
    return S * S / T;
}

template <class K>
double optimal_energy(K&& k, double F, double T) {
    return constant_power_energy(k, 0.0, F, T);
}

struct SpeedProfile {
    std::vector<double> t;
    std::vector<double> f;
    std::vector<double> fdot;
    std::vector<double> power;
    double energy = 0.0;
    double peak_power = 0.0;
};

/**
 * Constant-power schedule: fdot(f) = C/sqrt(k(f)) with C = (1/T) int sqrt(k),
 * recovered on a uniform f grid by accumulating dt = sqrt(k) df / C.
 * Boundary values t(0) = 0 and t(F) = T hold exactly by construction.
 */
template <class K>
SpeedProfile optimal_profile(K&& k, double F, double T, int n_steps = 800) {
    if (!(T > 0.0) || !(F > 0.0)) throw std::invalid_argument("optimal_profile: need F, T > 0");
    if (n_steps < 2) throw std::invalid_argument("optimal_profile: need at least 2 steps");
    const auto sq = [&](double x) { return detail::sqrt_cost(k, x); };
    std::vector<double> seg(static_cast<std::size_t>(n_steps));
    double S = 0.0;
    for (int i = 0; i < n_steps; ++i) {
        const double a = F * i / n_steps, b = F * (i + 1) / n_steps;
        seg[static_cast<std::size_t>(i)] = detail::integrate_scalar(sq, a, b, 1e-8);
        S += seg[static_cast<std::size_t>(i)];
    }
    const double C = S / T;
    SpeedProfile p;
    p.t.resize(static_cast<std::size_t>(n_steps) + 1);
    p.f.resize(p.t.size());
    p.fdot.resize(p.t.size());
    p.power.resize(p.t.size());
    double acc = 0.0;
    for (int i = 0; i <= n_steps; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        p.f[u] = F * i / n_steps;
        p.t[u] = i == 0 ? 0.0 : (acc += seg[u - 1]) / C;
        p.fdot[u] = C / sq(p.f[u]);
        p.power[u] = k(p.f[u]) * p.fdot[u] * p.fdot[u];
    }
    p.t.back() = T;
    p.f.back() = F;
    p.energy = S * S / T;
    p.peak_power = *std::max_element(p.power.begin(), p.power.end());
    return p;
}

/// Uniform schedule f(t) = (F/T) t on the same grid, for peak-power comparison.
template <class K>
SpeedProfile uniform_profile(K&& k, double F, double T, int n_steps = 800) {
    if (!(T > 0.0) || !(F > 0.0)) throw std::invalid_argument("uniform_profile: need F, T > 0");
    if (n_steps < 2) throw std::invalid_argument("uniform_profile: need at least 2 steps");
    SpeedProfile p;
    const double rate = F / T;
    p.t.resize(static_cast<std::size_t>(n_steps) + 1);
    p.f.resize(p.t.size());
    p.fdot.assign(p.t.size(), rate);
    p.power.resize(p.t.size());
    for (int i = 0; i <= n_steps; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        p.f[u] = F * i / n_steps;
        p.t[u] = T * i / n_steps;
        p.power[u] = k(p.f[u]) * rate * rate;
    }
    p.energy = uniform_energy(k, F, T);
    p.peak_power = *std::max_element(p.power.begin(), p.power.end());
    return p;
}

/// Fraction of the uniform-schedule energy saved by the constant-power
/// schedule; quadrature noise on constant costs is clamped to zero.
template <class K>
double savings(K&& k, double F, double T) {
    const double eu = uniform_energy(k, F, T);
    const double eo = optimal_energy(k, F, T);
    return std::max(0.0, 1.0 - eo / eu);
}

}  // namespace morphflow

#endif  // MORPHFLOW_OPTIMIZER_HPP
