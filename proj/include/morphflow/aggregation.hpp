/**
 * @file aggregation.hpp
 * @brief Treadmill-sphere approach: mobility curves, trajectory integration,
 *        and tread-speed optimization.
 *
 * The driven sphere moves quasi-statically, so its approach speed is
 * u = h_loc(delta) * v_tread and its dissipated power follows the same
 * curve lookup. Per-distance coefficients come from force-free solves on a
 * geometric delta grid; the trajectory is then integrated on the monotone
 * interpolants. Curves are never evaluated below their smallest solved
 * delta: the thin-gap resistance diverges there and extrapolation would be
 * unphysical.
 */
#ifndef MORPHFLOW_AGGREGATION_HPP
#define MORPHFLOW_AGGREGATION_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "morphflow/bem.hpp"
#include "morphflow/geometry.hpp"
#include "morphflow/interp.hpp"
#include "morphflow/optimizer.hpp"
#include "morphflow/quadrature.hpp"

namespace morphflow {

struct MobilitySample {
    double delta;
    double h_loc;
    double h_fluid;
};

/// Locomotion and drag coefficients versus normalized distance, sorted
/// ascending in delta.
struct MobilityCurve {
    TreadCase kind = TreadCase::wall;
    double a = 0.0;
    std::vector<MobilitySample> samples;

    void validate(std::size_t min_samples = 2) const {
        if (samples.size() < min_samples)
            throw std::invalid_argument("MobilityCurve: fewer samples than required");
        if (!(a > 0.0)) throw std::invalid_argument("MobilityCurve: radius must be positive");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto& s = samples[i];
            if (!(s.delta > 1.0) || !(s.h_loc > 0.0) || !(s.h_loc < 1.0) || !(s.h_fluid > 0.0))
                throw std::invalid_argument("MobilityCurve: sample out of physical range");
            if (i > 0 && !(samples[i - 1].delta < s.delta))
                throw std::invalid_argument("MobilityCurve: delta not strictly increasing");
        }
    }

    double min_delta() const { return samples.front().delta; }
    double max_delta() const { return samples.back().delta; }
};

/// Grid geometrically graded toward contact (uniform in log(delta - 1)).
inline std::vector<double> default_delta_grid(double delta_min = 1.02, double delta_max = 8.0,
                                              int n = 16) {
    if (!(delta_min > 1.0) || !(delta_max > delta_min) || n < 2)
        throw std::invalid_argument("default_delta_grid: bad range");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double ratio = std::pow((delta_max - 1.0) / (delta_min - 1.0), 1.0 / (n - 1));
    double step = delta_min - 1.0;
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = 1.0 + step;
        step *= ratio;
    }
    g.back() = delta_max;
    return g;
}

/**
 * One force-free solve per grid distance. h_loc and h_fluid are pure
 * geometry, so the solves run at unit viscosity; the two-sphere case solves
 * the full mirror pair and averages the per-sphere values. Grid points are
 * distributed over options.jobs threads (each solve then runs single
 * threaded); the assembled curve does not depend on the thread count.
 */
inline MobilityCurve mobility_curve(const TreadSphereSpec& spec, const std::vector<double>& grid,
                                    int level = 1, const SolverOptions& options = {},
                                    double wall_extent = 30.0) {
    if (grid.size() < 10) throw std::invalid_argument("mobility_curve: need >= 10 grid points");
    for (double d : grid)
        if (!(d > 1.005))
            throw std::invalid_argument("mobility_curve: gap too small to resolve");
    if (!(spec.v_tread > 0.0))
        throw std::invalid_argument("mobility_curve: tread speed must be positive");

    MobilityCurve curve;
    curve.kind = spec.geometry;
    curve.a = spec.a;
    curve.samples.resize(grid.size());

    const auto solve_one = [&](std::size_t i, int solver_jobs) {
        TreadSphereSpec s = spec;
        s.delta = grid[i];
        const auto tm = tread_sphere_mesh(s, level, wall_extent);
        SolverOptions opt = options;
        opt.jobs = solver_jobs;
        opt.free_bodies = tm.free_bodies;
        const auto sol = solve_traction(tm.mesh, tm.bc, 1.0, opt);
        double u = 0.0, p_one = 0.0;
        if (spec.geometry == TreadCase::wall) {
            u = -sol.free_body_velocity[0];  // slip drives the sphere toward -z
            p_one = sol.power;
        } else {
            u = 0.5 * (sol.free_body_velocity[1] - sol.free_body_velocity[0]);
            p_one = 0.5 * sol.power;
        }
        curve.samples[i] = {grid[i], u / spec.v_tread,
                            p_one / (spec.a * spec.v_tread * spec.v_tread)};
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || grid.size() < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i) solve_one(i, options.jobs);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        std::vector<std::string> errors(grid.size());
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
                    try {
                        solve_one(i, 1);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (!errors[i].empty())
                throw std::runtime_error("mobility_curve: solve at delta=" +
                                         std::to_string(grid[i]) + " failed: " + errors[i]);
    }
    std::sort(curve.samples.begin(), curve.samples.end(),
              [](const MobilitySample& l, const MobilitySample& r) { return l.delta < r.delta; });
    curve.validate();
    return curve;
}

struct TracePoint {
    double t;
    double delta;
    double u;
    double P_fluid;
    double P_internal;
};

struct ApproachResult {
    double T = 0.0;
    double E = 0.0;
    double E_fluid = 0.0;
    double E_internal = 0.0;
    std::vector<TracePoint> trace;
};

inline double stopping_distance(TreadCase kind, double a, double gap) {
    if (!(a > 0.0) || !(gap > 0.0))
        throw std::invalid_argument("stopping_distance: need a, gap > 0");
    return kind == TreadCase::wall ? 1.0 + gap / a : 1.0 + gap / (2.0 * a);
}

namespace detail {

struct ApproachFrame {
    MonotoneCubic h_loc;
    MonotoneCubic h_fluid;
    double lo, hi;

    double loc(double d) const {
        const double v = h_loc(d);
        if (!(v > 0.0))
            throw std::domain_error("approach: nonpositive locomotion coefficient in range");
        return v;
    }
};

inline ApproachFrame make_frame(const MobilityCurve& curve, double delta0, double delta1) {
    curve.validate();
    if (!(delta0 >= delta1)) throw std::invalid_argument("approach: need delta0 >= delta1");
    if (delta1 < curve.min_delta() || delta0 > curve.max_delta())
        throw std::invalid_argument("approach: [delta1, delta0] outside the sampled curve");
    std::vector<double> x(curve.samples.size()), yl(x.size()), yf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = curve.samples[i].delta;
        yl[i] = curve.samples[i].h_loc;
        yf[i] = curve.samples[i].h_fluid;
    }
    return {MonotoneCubic(x, yl), MonotoneCubic(x, yf), delta1, delta0};
}

}  // namespace detail

/**
 * Integrates the approach from delta0 down to delta1 at constant tread
 * speed. The motion time and fluid energy come from closed-form quadrature
 * over delta (the kinematics separate); the returned trace is an
 * independent adaptive integration of d(delta)/dt = -(v/a) h_loc used as a
 * cross-check of the same numbers, with the final step bisected onto
 * delta1. Internal friction adds the constant power
 * h_int * k_friction * a^2 * v^2.
 */
inline ApproachResult integrate_approach(const MobilityCurve& curve, double delta0, double delta1,
                                         double v_tread, const FluidScenario& fluid,
                                         double k_friction, double tread_h_internal) {
    if (!(v_tread > 0.0)) throw std::invalid_argument("integrate_approach: need v_tread > 0");
    if (!(k_friction >= 0.0) || !(tread_h_internal >= 0.0))
        throw std::invalid_argument("integrate_approach: negative friction parameters");
    const auto frame = detail::make_frame(curve, delta0, delta1);
    const double a = curve.a, eta = fluid.dynamic_viscosity;
    const double p_int = tread_h_internal * k_friction * a * a * v_tread * v_tread;
    ApproachResult out;
    if (delta0 == delta1) {
        out.trace.push_back({0.0, delta0, frame.loc(delta0) * v_tread,
                             frame.h_fluid(delta0) * eta * a * v_tread * v_tread, p_int});
        return out;
    }

    out.T = (a / v_tread) *
            detail::integrate_scalar([&](double d) { return 1.0 / frame.loc(d); }, delta1, delta0,
                                     1e-8);
    out.E_fluid = eta * a * v_tread * v_tread * (a / v_tread) *
                  detail::integrate_scalar([&](double d) { return frame.h_fluid(d) / frame.loc(d); },
                                           delta1, delta0, 1e-8);
    out.E_internal = p_int * out.T;
    out.E = out.E_fluid + out.E_internal;

    namespace ode = boost::numeric::odeint;
    const auto rhs = [&](const double& d, double& dddt, double) {
        dddt = -(v_tread / a) * frame.loc(std::clamp(d, frame.lo, frame.hi));
    };
    const auto record = [&](double t, double d) {
        const double u = frame.loc(std::clamp(d, frame.lo, frame.hi)) * v_tread;
        out.trace.push_back({t, d,
                             u, frame.h_fluid(std::clamp(d, frame.lo, frame.hi)) * eta * a *
                                    v_tread * v_tread,
                             p_int});
    };
    auto stepper =
        ode::make_controlled(1e-12, 1e-6, ode::runge_kutta_cash_karp54<double>());
    double t = 0.0, d = delta0;
    double dt = out.T / 256.0;
    const double dt_max = out.T / 64.0;
    record(t, d);
    while (d > delta1) {
        const double t_prev = t, d_prev = d;
        dt = std::min(dt, dt_max);
        while (stepper.try_step(rhs, d, t, dt) == ode::fail) {
        }
        if (d <= delta1) {
            // bisect the final step length so the trace ends exactly at delta1
            double lo_dt = 0.0, hi_dt = t - t_prev;
            ode::runge_kutta_cash_karp54<double> plain;
            for (int it = 0; it < 80 && hi_dt - lo_dt > 1e-15 * out.T; ++it) {
                const double mid = 0.5 * (lo_dt + hi_dt);
                double dm = d_prev, tm = t_prev;
                plain.do_step(rhs, dm, tm, mid);
                (dm > delta1 ? lo_dt : hi_dt) = mid;
            }
            t = t_prev + 0.5 * (lo_dt + hi_dt);
            d = delta1;
        }
        record(t, d);
        if (out.trace.size() > 100000)
            throw std::runtime_error("integrate_approach: trajectory failed to terminate");
    }
    if (!(std::abs(out.trace.back().t - out.T) <= 1e-3 * out.T))
        throw std::runtime_error("integrate_approach: trajectory time disagrees with quadrature");
    return out;
}

/**
 * Savings available from modulating the tread speed along the approach at
 * fixed endpoints and total time. With position x = a*delta and approach
 * speed u as the rate, the power is k(delta) u^2 with
 * k = (eta a h_fluid + k_friction a^2 h_int)/h_loc^2, so the optimizer's
 * constant-power bound applies directly; the uniform reference is the
 * constant-tread-speed trajectory of integrate_approach.
 */
inline double optimal_tread_schedule(const MobilityCurve& curve, double delta0, double delta1,
                                     double v_tread, const FluidScenario& fluid,
                                     double k_friction, double tread_h_internal) {
    const auto frame = detail::make_frame(curve, delta0, delta1);
    if (!(delta0 > delta1))
        throw std::invalid_argument("optimal_tread_schedule: need delta0 > delta1");
    const auto unif =
        integrate_approach(curve, delta0, delta1, v_tread, fluid, k_friction, tread_h_internal);
    const double a = curve.a, eta = fluid.dynamic_viscosity;
    const auto sqrt_cost = [&](double d) {
        const double hl = frame.loc(d);
        return std::sqrt(eta * a * frame.h_fluid(d) +
                         k_friction * a * a * tread_h_internal) /
               hl;
    };
    const double S = a * detail::integrate_scalar(sqrt_cost, delta1, delta0, 1e-8);
    const double e_opt = S * S / unif.T;
    return std::max(0.0, 1.0 - e_opt / unif.E);
}

/// CSV export of a mobility curve: header row, 17 significant digits, LF.
inline void write_mobility_csv(const MobilityCurve& curve, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_mobility_csv: cannot open " + path);
    os << "delta,h_loc,h_fluid\n";
    os.precision(17);
    for (const auto& s : curve.samples)
        os << s.delta << ',' << s.h_loc << ',' << s.h_fluid << '\n';
    if (!os) throw std::runtime_error("write_mobility_csv: write failed for " + path);
}

/// Reads samples written by write_mobility_csv; kind and radius describe the
/// context the file was produced in and are supplied by the caller.
inline MobilityCurve read_mobility_csv(const std::string& path, TreadCase kind, double a) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_mobility_csv: cannot open " + path);
    MobilityCurve curve;
    curve.kind = kind;
    curve.a = a;
    std::string line;
    if (!std::getline(is, line) || line != "delta,h_loc,h_fluid")
        throw std::runtime_error("read_mobility_csv: bad header in " + path);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        MobilitySample s{};
        char c1 = 0, c2 = 0;
        if (!(ls >> s.delta >> c1 >> s.h_loc >> c2 >> s.h_fluid) || c1 != ',' || c2 != ',')
            throw std::runtime_error("read_mobility_csv: bad row in " + path + ": " + line);
        curve.samples.push_back(s);
    }
    curve.validate();
    return curve;
}

}  // namespace morphflow

#endif  // MORPHFLOW_AGGREGATION_HPP
