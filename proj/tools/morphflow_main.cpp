// Command-line front end: scenario tables, coefficient curves, schedule
// optimization, solver validation, and mobility-curve cache management.
// Exit codes: 0 success, 1 validation failure, 2 config error, 3 solver
// failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morphflow/morphflow.hpp"

namespace mf = morphflow;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "table";
    double refine = 0.0;
    int jobs = 1;
};

struct RunSetup {
    mf::Config cfg;
    std::string geometry;  // expanding | probe | tread
    std::vector<mf::FluidScenario> fluids;
    int level = 1;
    double wall_extent = 30.0;
    double refine_tol = 0.0;
    int jobs = 1;
    double f_min = 0.02;
    int f_samples = 13;
    double delta_min = 1.02;
    double delta_max = 8.0;
    int delta_samples = 16;
    double k_friction = mf::default_sliding_friction;
    double glucose_energy = mf::default_glucose_energy;
    double glucose_efficiency = mf::default_glucose_efficiency;
};

bool parse_bool(const mf::Config& cfg, const std::string& sec, const std::string& key,
                bool fallback) {
    const std::string v = cfg.get_string(sec, key, fallback ? "true" : "false");
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw mf::ConfigError("config: key '" + sec + "." + key + "' is not a boolean: " + v);
}

RunSetup load_setup(const CommonOpts& opts) {
    if (opts.config_path.empty()) throw mf::ConfigError("missing --config");
    RunSetup s;
    s.cfg = mf::Config::from_file(opts.config_path);

    const int n_geo = int(s.cfg.has_section("expanding")) + int(s.cfg.has_section("probe")) +
                      int(s.cfg.has_section("tread"));
    if (n_geo != 1)
        throw mf::ConfigError(s.cfg.origin() +
                              ": exactly one geometry section required "
                              "([expanding], [probe], or [tread])");
    s.geometry = s.cfg.has_section("expanding") ? "expanding"
                 : s.cfg.has_section("probe")   ? "probe"
                                                : "tread";

    const std::string sel = s.cfg.get_string("fluid", "scenario", "both");
    if (sel == "both") {
        s.fluids = {mf::low_viscosity_scenario(), mf::high_viscosity_scenario()};
    } else if (sel == "low") {
        s.fluids = {mf::low_viscosity_scenario()};
    } else if (sel == "high") {
        s.fluids = {mf::high_viscosity_scenario()};
    } else if (sel == "custom") {
        s.fluids = {mf::FluidScenario(s.cfg.require_double("fluid", "density"),
                                      s.cfg.require_double("fluid", "viscosity"), "custom")};
    } else {
        throw mf::ConfigError("config: fluid.scenario must be low, high, both, or custom");
    }

    s.level = s.cfg.get_int("solver", "level", 1);
    s.wall_extent = s.cfg.get_double("solver", "wall_extent", 30.0);
    s.refine_tol = opts.refine > 0.0 ? opts.refine : s.cfg.get_double("solver", "refine", 0.0);
    s.jobs = opts.jobs > 1 ? opts.jobs : s.cfg.get_int("solver", "jobs", 1);
    s.f_min = s.cfg.get_double("solver", "f_min", 0.02);
    s.f_samples = s.cfg.get_int("solver", "f_samples", 13);
    s.delta_min = s.cfg.get_double("solver", "delta_min", 1.02);
    s.delta_max = s.cfg.get_double("solver", "delta_max", 8.0);
    s.delta_samples = s.cfg.get_int("solver", "delta_samples", 16);
    s.k_friction = s.cfg.get_double("friction", "k", mf::default_sliding_friction);
    s.glucose_energy =
        s.cfg.get_double("friction", "glucose_energy", mf::default_glucose_energy);
    s.glucose_efficiency =
        s.cfg.get_double("friction", "glucose_efficiency", mf::default_glucose_efficiency);
    if (s.level < 0 || s.level > 4) throw mf::ConfigError("config: solver.level out of [0,4]");
    if (s.f_samples < 8) throw mf::ConfigError("config: solver.f_samples must be >= 8");
    if (s.delta_samples < 10)
        throw mf::ConfigError("config: solver.delta_samples must be >= 10");
    return s;
}

// ---- display helpers -------------------------------------------------------

std::string fmt_time(double t) {
    char buf[48];
    if (t >= 1.0)
        std::snprintf(buf, sizeof buf, "%s s", mf::display_number(t).c_str());
    else if (t >= 1e-3)
        std::snprintf(buf, sizeof buf, "%s ms", mf::display_number(t * 1e3).c_str());
    else if (t >= 1e-6)
        std::snprintf(buf, sizeof buf, "%s us", mf::display_number(t * 1e6).c_str());
    else
        std::snprintf(buf, sizeof buf, "%s ns", mf::display_number(t * 1e9).c_str());
    return buf;
}

std::string fmt_speed(double v) {
    char buf[48];
    if (v >= 1e-3)
        std::snprintf(buf, sizeof buf, "%s mm/s", mf::display_number(v * 1e3).c_str());
    else
        std::snprintf(buf, sizeof buf, "%s um/s", mf::display_number(v * 1e6).c_str());
    return buf;
}

std::string fmt_pw(double watts) {
    return mf::display_number(watts * 1e12) + std::string(" pW");
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(opts.out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + opts.out_path);
    os << text;
    if (!os) throw std::runtime_error("write failed for " + opts.out_path);
}

// ---- shape-change curves ---------------------------------------------------

struct ShapeRun {
    double F = 0.5;
    double T_low = 1e-3;
    double T_high = 1.0;
    double d0 = 0.0;
    double conversion = 0.0;  // c = dv0/dfdot
    bool body_radius_sensitivity = false;
    std::optional<mf::ExpandingRobotSpec> expanding;
    std::optional<mf::ProbeSpec> probe;

    double T_for(const mf::FluidScenario& f) const {
        return f.name == "high" ? T_high : T_low;
    }
};

ShapeRun load_shape(const RunSetup& s) {
    ShapeRun r;
    const std::string& g = s.geometry;
    r.F = s.cfg.get_double(g, "F", 0.5);
    r.T_low = s.cfg.get_double(g, "T_low", 1e-3);
    r.T_high = s.cfg.get_double(g, "T_high", 1.0);
    if (!(r.F > 0.0) || !(r.F <= 1.0)) throw mf::ConfigError("config: F must be in (0, 1]");
    const double fdot = r.F / r.T_low;  // meshing rate; coefficients are rate independent
    if (g == "expanding") {
        mf::ExpandingRobotSpec spec(s.cfg.get_double(g, "L", 1e-6), s.cfg.get_int(g, "n", 5),
                                    s.cfg.get_double(g, "s", 0.05e-6), fdot);
        r.d0 = spec.L;
        r.conversion = spec.n * spec.L;
        r.expanding = spec;
    } else {
        mf::ProbeSpec spec(s.cfg.get_double(g, "L", 1e-6), s.cfg.get_int(g, "n", 5),
                           s.cfg.get_double(g, "r", 50e-9), s.cfg.get_double(g, "s", 20e-9),
                           s.cfg.get_double(g, "R_body", 1e-6), fdot);
        r.d0 = spec.L;
        r.conversion = (spec.n - 1) * spec.L;
        r.probe = spec;
        r.body_radius_sensitivity = parse_bool(s.cfg, g, "R_body_sensitivity", false);
    }
    return r;
}

// One BEM solve per f sample at unit viscosity; h values are geometric.
// With an error sink, failed grid points are recorded and skipped so callers
// can emit partial output; without one, the first failure aborts the sweep.
std::vector<mf::DissipationSample> shape_samples(const RunSetup& s, const ShapeRun& r,
                                                 std::vector<std::string>* errors = nullptr) {
    std::vector<mf::DissipationSample> out;
    mf::SolverOptions sopt;
    sopt.jobs = s.jobs;
    for (int i = 0; i < s.f_samples; ++i) {
        const double f = s.f_min + (r.F - s.f_min) * i / (s.f_samples - 1);
        try {
            const auto build = [&](int level) {
                return r.expanding ? mf::expanding_robot_mesh(*r.expanding, f, level)
                                   : mf::probe_mesh(*r.probe, f, level);
            };
            const double v0 = r.expanding ? r.expanding->tip_speed() : r.probe->tip_speed();
            double power = 0.0;
            if (s.refine_tol > 0.0) {
                power = mf::refine_power_until([&](int level) { return build(level); }, 1.0,
                                               sopt, s.refine_tol, s.level, s.level + 3)
                            .solution.power;
            } else {
                const auto [mesh, bc] = build(s.level);
                power = mf::solve_traction(mesh, bc, 1.0, sopt).power;
            }
            const double h_fluid = power / (r.d0 * v0 * v0);
            const double h_internal = r.expanding ? mf::expanding_h_internal(*r.expanding, f)
                                                  : mf::probe_h_internal(*r.probe, f);
            out.push_back({f, h_fluid, h_internal});
        } catch (const std::exception& e) {
            char fb[32];
            std::snprintf(fb, sizeof fb, "%.6g", f);
            const std::string msg = std::string("solve failed at f=") + fb + ": " + e.what();
            if (!errors) throw std::runtime_error(msg);
            errors->push_back(msg);
        }
    }
    return out;
}

mf::DissipationCurve curve_for(const std::vector<mf::DissipationSample>& samples,
                               const ShapeRun& r, const mf::FluidScenario& fluid) {
    const double T = r.T_for(fluid);
    return {samples, fluid, mf::CharacteristicScales(r.d0, r.conversion * r.F / T, T)};
}

// ---- tread mobility --------------------------------------------------------

struct TreadRun {
    mf::TreadSphereSpec wall_spec{1e-6, 1.0, 5.0, mf::TreadCase::wall};
    mf::TreadSphereSpec pair_spec{1e-6, 1.0, 5.0, mf::TreadCase::two_spheres};
    double a = 1e-6;
    double v_low = 1e-3;
    double v_high = 1e-5;
    double delta0 = 5.0;
    double gap = 50e-9;
    mf::TreadInternalModel internal_model = mf::TreadInternalModel::calibrated;
    std::string selected_case = "wall";

    double v_for(const mf::FluidScenario& f) const {
        return f.name == "high" ? v_high : v_low;
    }
};

TreadRun load_tread(const RunSetup& s) {
    TreadRun r;
    r.a = s.cfg.get_double("tread", "a", 1e-6);
    r.v_low = s.cfg.get_double("tread", "v_tread_low", 1e-3);
    r.v_high = s.cfg.get_double("tread", "v_tread_high", 1e-5);
    r.delta0 = s.cfg.get_double("tread", "delta0", 5.0);
    r.gap = s.cfg.get_double("tread", "gap", 50e-9);
    const double band = s.cfg.get_double("tread", "band_area_fraction", 0.5);
    const double ramp = s.cfg.get_double("tread", "ramp_width", 50e-9);
    const std::string model = s.cfg.get_string("tread", "internal_model", "calibrated");
    if (model == "calibrated")
        r.internal_model = mf::TreadInternalModel::calibrated;
    else if (model == "band-only")
        r.internal_model = mf::TreadInternalModel::band_only;
    else
        throw mf::ConfigError("config: tread.internal_model must be calibrated or band-only");
    r.selected_case = s.cfg.get_string("tread", "case", "wall");
    if (r.selected_case != "wall" && r.selected_case != "two-spheres")
        throw mf::ConfigError("config: tread.case must be wall or two-spheres");
    // curves are solved at unit tread speed: coefficients do not depend on it
    r.wall_spec = mf::TreadSphereSpec(r.a, 1.0, r.delta0, mf::TreadCase::wall, band, ramp);
    r.pair_spec = mf::TreadSphereSpec(r.a, 1.0, r.delta0, mf::TreadCase::two_spheres, band, ramp);
    return r;
}

mf::MobilityCurve tread_curve(const RunSetup& s, const mf::TreadSphereSpec& spec,
                              bool* from_cache = nullptr) {
    const auto grid = mf::default_delta_grid(s.delta_min, s.delta_max, s.delta_samples);
    const auto key = mf::mobility_cache_key(spec, grid, s.level, s.wall_extent);
    mf::MobilityCurve curve;
    if (mf::cache_lookup(key, spec.geometry, spec.a, &curve)) {
        if (from_cache) *from_cache = true;
        return curve;
    }
    mf::SolverOptions sopt;
    sopt.jobs = s.jobs;
    curve = mf::mobility_curve(spec, grid, s.level, sopt, s.wall_extent);
    mf::cache_store(key, curve);
    if (from_cache) *from_cache = false;
    return curve;
}

// ---- table/json rendering ---------------------------------------------------

struct Report {
    std::vector<std::string> columns;                       // scenario names
    std::vector<std::pair<std::string, std::string>> meta;  // shared rows
    // label -> per-column (display, raw SI)
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> rows;

    void add(const std::string& label, std::vector<std::pair<std::string, double>> cells) {
        rows.push_back({label, std::move(cells)});
    }

    std::string render_table(const std::string& title) const {
        std::ostringstream os;
        os << title << '\n';
        for (const auto& [k, v] : meta) os << "  " << k << ": " << v << '\n';
        std::vector<std::string> hdr{"quantity"};
        hdr.insert(hdr.end(), columns.begin(), columns.end());
        mf::TextTable t(hdr);
        for (const auto& [label, cells] : rows) {
            std::vector<std::string> disp;
            for (const auto& c : cells) disp.push_back(c.first);
            t.add_row(label, disp);
        }
        t.render(os);
        return os.str();
    }

    std::string render_json(const std::string& command, const std::string& geometry) const {
        ordered_json j;
        j["command"] = command;
        j["geometry"] = geometry;
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            ordered_json col;
            for (const auto& [label, cells] : rows) col[label] = cells[c].second;
            j["scenarios"][columns[c]] = col;
        }
        return j.dump(2) + "\n";
    }

    std::string render_csv() const {
        std::ostringstream os;
        os << "quantity";
        for (const auto& c : columns) os << ',' << c;
        os << '\n';
        for (const auto& [label, cells] : rows) {
            os << label;
            for (const auto& c : cells) os << ',' << mf::full_precision(c.second);
            os << '\n';
        }
        return os.str();
    }

    std::string render(const CommonOpts& opts, const std::string& command,
                       const std::string& geometry, const std::string& title) const {
        if (opts.format == "json") return render_json(command, geometry);
        if (opts.format == "csv") return render_csv();
        return render_table(title);
    }
};

// ---- subcommands ------------------------------------------------------------

int cmd_scenario_table(const CommonOpts& opts) {
    RunSetup s = load_setup(opts);
    Report rep;
    for (const auto& f : s.fluids) rep.columns.push_back(f.name);

    if (s.geometry == "expanding" || s.geometry == "probe") {
        const ShapeRun shape = load_shape(s);
        s.cfg.require_all_consumed();
        const auto samples = shape_samples(s, shape);
        std::vector<std::pair<std::string, double>> re, wom, pf, pi, tt, vv, en, share, glu;
        for (const auto& fluid : s.fluids) {
            const auto curve = curve_for(samples, shape, fluid);
            const auto& sc = curve.scales;
            const auto k = mf::assemble_cost(curve, s.k_friction, shape.conversion);
            const auto split = mf::uniform_energy_split(k, shape.F, sc.T);
            re.push_back({mf::display_number(mf::reynolds(sc, fluid)),
                          mf::reynolds(sc, fluid)});
            wom.push_back({mf::display_number(mf::womersley(sc, fluid)),
                           mf::womersley(sc, fluid)});
            pf.push_back({fmt_pw(mf::fluid_power_factor(sc, fluid)),
                          mf::fluid_power_factor(sc, fluid)});
            pi.push_back({fmt_pw(mf::internal_power_factor(sc, s.k_friction)),
                          mf::internal_power_factor(sc, s.k_friction)});
            tt.push_back({fmt_time(sc.T), sc.T});
            vv.push_back({fmt_speed(sc.v0), sc.v0});
            en.push_back({mf::display_number(split.total()), split.total()});
            share.push_back({mf::display_number(split.fluid_share()), split.fluid_share()});
            const double g =
                mf::glucose_equivalent(split.total(), s.glucose_energy, s.glucose_efficiency);
            glu.push_back({mf::display_number(g), g});
        }
        rep.add("motion time", tt);
        rep.add("speed v0", vv);
        rep.add("Reynolds number", re);
        rep.add("Womersley number", wom);
        rep.add("fluid power factor", pf);
        rep.add("internal power factor", pi);
        rep.add("energy [J]", en);
        rep.add("fluid energy share", share);
        rep.add("glucose molecules", glu);
        emit(opts, rep.render(opts, "scenario-table", s.geometry,
                              s.geometry == "expanding" ? "Expanding robot" : "Probe extension"));
        return 0;
    }

    const TreadRun tr = load_tread(s);
    s.cfg.require_all_consumed();
    const auto wall = tread_curve(s, tr.wall_spec);
    const auto pair = tread_curve(s, tr.pair_spec);
    const double h_int = mf::tread_h_internal(tr.internal_model, tr.wall_spec.band_area_fraction);
    std::vector<std::pair<std::string, double>> re, wom, pf, pi, dd;
    for (const auto& fluid : s.fluids) {
        const double v = tr.v_for(fluid);
        const mf::CharacteristicScales sc(tr.a, v, tr.a / v);
        re.push_back({mf::display_number(mf::reynolds(sc, fluid)), mf::reynolds(sc, fluid)});
        wom.push_back({mf::display_number(mf::womersley(sc, fluid)), mf::womersley(sc, fluid)});
        pf.push_back({fmt_pw(mf::fluid_power_factor(sc, fluid)),
                      mf::fluid_power_factor(sc, fluid)});
        pi.push_back({fmt_pw(mf::internal_power_factor(sc, s.k_friction)),
                      mf::internal_power_factor(sc, s.k_friction)});
        const double D = mf::stokes_einstein_diffusion(tr.a, fluid);
        dd.push_back({mf::display_number(D), D});
    }
    rep.add("Reynolds number", re);
    rep.add("Womersley number", wom);
    rep.add("fluid power factor", pf);
    rep.add("internal power factor", pi);
    rep.add("diffusion coefficient [m^2/s]", dd);
    for (const auto* pc : {&wall, &pair}) {
        const std::string tag = pc->kind == mf::TreadCase::wall ? "wall" : "two-spheres";
        const double d1 = mf::stopping_distance(pc->kind, tr.a, tr.gap);
        std::vector<std::pair<std::string, double>> rd1, rt, re_, rsh, rg, rb;
        for (const auto& fluid : s.fluids) {
            const double v = tr.v_for(fluid);
            const auto res =
                mf::integrate_approach(*pc, tr.delta0, d1, v, fluid, s.k_friction, h_int);
            const double g =
                mf::glucose_equivalent(res.E, s.glucose_energy, s.glucose_efficiency);
            const double bd =
                mf::brownian_displacement(mf::stokes_einstein_diffusion(tr.a, fluid), res.T);
            rd1.push_back({mf::display_number(d1, 4), d1});
            rt.push_back({fmt_time(res.T), res.T});
            re_.push_back({mf::display_number(res.E), res.E});
            rsh.push_back({mf::display_number(res.E_fluid / res.E), res.E_fluid / res.E});
            rg.push_back({mf::display_number(g), g});
            rb.push_back({mf::display_number(bd), bd});
        }
        rep.add(tag + ": stop distance delta1", rd1);
        rep.add(tag + ": motion time", rt);
        rep.add(tag + ": energy [J]", re_);
        rep.add(tag + ": fluid energy share", rsh);
        rep.add(tag + ": glucose molecules", rg);
        rep.add(tag + ": Brownian displacement [m]", rb);
    }
    emit(opts, rep.render(opts, "scenario-table", "tread", "Treadmill spheres"));
    return 0;
}

int cmd_curve(const CommonOpts& opts) {
    RunSetup s = load_setup(opts);
    std::ostringstream os;
    if (s.geometry == "expanding" || s.geometry == "probe") {
        const ShapeRun shape = load_shape(s);
        s.cfg.require_all_consumed();
        std::vector<std::string> errors;
        const auto samples = shape_samples(s, shape, &errors);
        if (opts.format == "json") {
            ordered_json rows = ordered_json::array();
            for (const auto& p : samples)
                rows.push_back({{"f", p.f}, {"h_fluid", p.h_fluid},
                                {"h_internal", p.h_internal}});
            os << ordered_json{{"command", "curve"}, {"geometry", s.geometry},
                               {"partial", !errors.empty()}, {"samples", rows}}
                      .dump(2)
               << "\n";
        } else {
            os << "f,h_fluid,h_internal\n";
            for (const auto& p : samples)
                os << mf::full_precision(p.f) << ',' << mf::full_precision(p.h_fluid) << ','
                   << mf::full_precision(p.h_internal) << '\n';
        }
        emit(opts, os.str());
        if (!errors.empty()) {
            for (const auto& m : errors) std::cerr << "curve: " << m << "\n";
            std::cerr << "partial output: " << samples.size() << " of "
                      << samples.size() + errors.size() << " grid points\n";
            return 3;
        }
        return 0;
    }
    const TreadRun tr = load_tread(s);
    s.cfg.require_all_consumed();
    const auto curve = tread_curve(
        s, tr.selected_case == "wall" ? tr.wall_spec : tr.pair_spec);
    if (opts.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& p : curve.samples)
            rows.push_back({{"delta", p.delta}, {"h_loc", p.h_loc}, {"h_fluid", p.h_fluid}});
        os << ordered_json{{"command", "curve"}, {"geometry", "tread"},
                           {"case", tr.selected_case}, {"samples", rows}}
                  .dump(2)
           << "\n";
    } else {
        os << "delta,h_loc,h_fluid\n";
        for (const auto& p : curve.samples)
            os << mf::full_precision(p.delta) << ',' << mf::full_precision(p.h_loc) << ','
               << mf::full_precision(p.h_fluid) << '\n';
    }
    emit(opts, os.str());
    return 0;
}

void write_profile_csv(const mf::SpeedProfile& p, const std::string& path) {
    mf::CsvWriter w(path);
    w.header({"t", "f", "fdot", "power"});
    for (std::size_t i = 0; i < p.t.size(); ++i) w.row({p.t[i], p.f[i], p.fdot[i], p.power[i]});
    w.close();
}

std::string profile_path(const std::string& base, const std::string& scenario, bool multi) {
    if (!multi) return base;
    const auto dot = base.rfind('.');
    if (dot == std::string::npos) return base + "-" + scenario;
    return base.substr(0, dot) + "-" + scenario + base.substr(dot);
}

int cmd_optimize(const CommonOpts& opts) {
    RunSetup s = load_setup(opts);
    Report rep;
    for (const auto& f : s.fluids) rep.columns.push_back(f.name);

    if (s.geometry == "expanding" || s.geometry == "probe") {
        const ShapeRun shape = load_shape(s);
        const bool sens = shape.body_radius_sensitivity;
        s.cfg.require_all_consumed();
        const auto samples = shape_samples(s, shape);
        std::vector<std::pair<std::string, double>> eu, eo, sv, ratio, peak;
        std::vector<std::string> csv_paths;
        for (const auto& fluid : s.fluids) {
            const auto curve = curve_for(samples, shape, fluid);
            const auto k = mf::assemble_cost(curve, s.k_friction, shape.conversion);
            const double T = curve.scales.T;
            const auto opt = mf::optimal_profile(k, shape.F, T);
            const auto unif = mf::uniform_profile(k, shape.F, T);
            const double save = std::max(0.0, 1.0 - opt.energy / unif.energy);
            const double speed_ratio = opt.fdot.front() / opt.fdot.back();
            const double peak_cut = 1.0 - opt.peak_power / unif.peak_power;
            eu.push_back({mf::display_number(unif.energy, 3), unif.energy});
            eo.push_back({mf::display_number(opt.energy, 3), opt.energy});
            sv.push_back({mf::display_number(save, 3), save});
            ratio.push_back({mf::display_number(speed_ratio, 3), speed_ratio});
            peak.push_back({mf::display_number(peak_cut, 3), peak_cut});
            if (!opts.out_path.empty()) {
                const auto path =
                    profile_path(opts.out_path, fluid.name, s.fluids.size() > 1);
                write_profile_csv(opt, path);
                csv_paths.push_back(path);
            }
        }
        rep.add("uniform energy [J]", eu);
        rep.add("optimal energy [J]", eo);
        rep.add("savings fraction", sv);
        rep.add("initial/final speed ratio", ratio);
        rep.add("peak power reduction", peak);
        if (sens) {
            for (const double rb : {0.5e-6, 1e-6, 2e-6}) {
                RunSetup s2 = s;
                ShapeRun alt = shape;
                alt.probe = mf::ProbeSpec(shape.probe->L, shape.probe->n, shape.probe->r,
                                          shape.probe->s, rb, shape.probe->fdot);
                const auto alt_samples = shape_samples(s2, alt);
                std::vector<std::pair<std::string, double>> row;
                for (const auto& fluid : s.fluids) {
                    const auto curve = curve_for(alt_samples, alt, fluid);
                    const auto k = mf::assemble_cost(curve, s.k_friction, alt.conversion);
                    const double save = mf::savings(k, alt.F, curve.scales.T);
                    row.push_back({mf::display_number(save, 3), save});
                }
                rep.add("savings at R_body=" + mf::display_number(rb * 1e6, 2) + " um", row);
            }
        }
        const std::string out = rep.render(opts, "optimize", s.geometry, "Schedule optimization");
        std::cout << out;
        for (const auto& path : csv_paths) std::cout << "profile CSV written to " << path << "\n";
        return 0;
    }

    const TreadRun tr = load_tread(s);
    s.cfg.require_all_consumed();
    const double h_int = mf::tread_h_internal(tr.internal_model, tr.wall_spec.band_area_fraction);
    for (const auto* spec : {&tr.wall_spec, &tr.pair_spec}) {
        const auto curve = tread_curve(s, *spec);
        const std::string tag =
            spec->geometry == mf::TreadCase::wall ? "wall" : "two-spheres";
        std::vector<std::pair<std::string, double>> row;
        for (const auto& fluid : s.fluids) {
            const double d1 = mf::stopping_distance(spec->geometry, tr.a, tr.gap);
            const double save = mf::optimal_tread_schedule(curve, tr.delta0, d1, tr.v_for(fluid),
                                                           fluid, s.k_friction, h_int);
            row.push_back({mf::display_number(save, 3), save});
        }
        rep.add(tag + ": tread-speed savings", row);
    }
    emit(opts, rep.render(opts, "optimize", "tread", "Tread-speed optimization"));
    return 0;
}

struct CheckReport {
    bool all_pass = true;

    void line(bool pass, const std::string& name, double observed, double expected, double tol) {
        all_pass = all_pass && pass;
        std::printf("%s %s: observed %.6g, expected %.6g (rel tol %g)\n",
                    pass ? "PASS" : "FAIL", name.c_str(), observed, expected, tol);
    }
};

int cmd_validate(bool fault_injection, int jobs) {
    constexpr double pi = 3.14159265358979323846;
    mf::SolverOptions sopt;
    sopt.jobs = jobs;
    if (fault_injection) sopt.kernel_perturbation = 0.2;
    CheckReport rep;

    // towed rigid sphere, unit radius/viscosity/speed
    const auto drag_at = [&](int panels) {
        const auto mesh = mf::sphere_mesh(1.0, 0.0, panels);
        auto bc = mf::SurfaceVelocityBC::zero(mesh.elements.size());
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) bc.set_constant(e, 1.0, 0.0);
        return mf::solve_traction(mesh, bc, 1.0, sopt);
    };
    const auto sol128 = drag_at(128);
    const double drag_err = std::abs(sol128.body_force_z[0] + 6.0 * pi) / (6.0 * pi);
    rep.line(drag_err < 0.01, "sphere-drag", sol128.body_force_z[0], -6.0 * pi, 0.01);
    const double power_err = std::abs(sol128.power - 6.0 * pi) / (6.0 * pi);
    rep.line(power_err < 0.01, "sphere-power", sol128.power, 6.0 * pi, 0.01);

    const double e64 = std::abs(drag_at(64).body_force_z[0] + 6.0 * pi);
    const double e256 = std::abs(drag_at(256).body_force_z[0] + 6.0 * pi);
    rep.line(e256 < e64, "drag-convergence", e256 / (6.0 * pi), 0.0, 0.0);

    // squirmer with unit first slip coefficient
    {
        const auto mesh = mf::sphere_mesh(1.0, 0.0, 128);
        auto bc = mf::SurfaceVelocityBC::zero(mesh.elements.size());
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
            const auto& el = mesh.elements[e];
            bc.panels[e] = mf::tangential_panel(
                mesh.nodes[static_cast<std::size_t>(el.n0)],
                mesh.nodes[static_cast<std::size_t>(el.n1)], 0.0,
                [](double th) { return std::sin(th); });
        }
        mf::SolverOptions fopt = sopt;
        fopt.free_bodies = {0};
        const auto sol = mf::solve_traction(mesh, bc, 1.0, fopt);
        const double U = sol.free_body_velocity[0];
        rep.line(std::abs(U - 2.0 / 3.0) < 0.02 * (2.0 / 3.0), "squirmer-speed", U, 2.0 / 3.0,
                 0.02);
        const double p_ref = 16.0 * pi / 3.0;
        rep.line(std::abs(sol.power - p_ref) < 0.02 * p_ref, "squirmer-power", sol.power, p_ref,
                 0.02);
    }

    // reciprocity between towing and squirming on one mesh
    {
        const auto mesh = mf::sphere_mesh(1.0, 0.0, 96);
        auto bc1 = mf::SurfaceVelocityBC::zero(mesh.elements.size());
        auto bc2 = mf::SurfaceVelocityBC::zero(mesh.elements.size());
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
            bc1.set_constant(e, 1.0, 0.0);
            const auto& el = mesh.elements[e];
            bc2.panels[e] = mf::tangential_panel(
                mesh.nodes[static_cast<std::size_t>(el.n0)],
                mesh.nodes[static_cast<std::size_t>(el.n1)], 0.0,
                [](double th) { return std::sin(th); });
        }
        const auto s1 = mf::solve_traction(mesh, bc1, 1.0, sopt);
        const auto s2 = mf::solve_traction(mesh, bc2, 1.0, sopt);
        double ab = 0.0, ba = 0.0;
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
            const auto g = mesh.panel(e);
            double u1z, u1s, u2z, u2s;
            bc1.midpoint(e, u1z, u1s);
            bc2.midpoint(e, u2z, u2s);
            ab += (u2z * s1.traction[e].tz + u2s * s1.traction[e].ts) * g.area;
            ba += (u1z * s2.traction[e].tz + u1s * s2.traction[e].ts) * g.area;
        }
        const double rel = std::abs(ab - ba) / std::max(std::abs(ab), std::abs(ba));
        rep.line(rel < 0.01, "reciprocity", rel, 0.0, 0.01);
    }

    // wall drag correction at two radii distance
    {
        const auto [mesh, bc] = mf::towed_sphere_near_wall(1.0, 2.0, 1.0, 1);
        const auto sol = mf::solve_traction(mesh, bc, 1.0, sopt);
        const double lambda = sol.body_force_z[0] / (6.0 * pi);
        const double lambda_ref = 2.1255355667600402;  // two radii from the wall
        rep.line(std::abs(lambda - lambda_ref) < 0.03 * lambda_ref, "wall-correction", lambda,
                 lambda_ref, 0.03);
    }

    std::printf("%s\n", rep.all_pass ? "all checks passed" : "some checks FAILED");
    return rep.all_pass ? 0 : 1;
}

int cmd_cache(const std::string& action) {
    if (action == "list") {
        std::cout << "cache directory: " << mf::cache_dir().string() << "\n";
        for (const auto& key : mf::cache_list()) std::cout << key << "\n";
        return 0;
    }
    const std::size_t n = mf::cache_clear();
    std::cout << "removed " << n << " cache entries\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "morphflow: energy dissipation of shape-changing microscopic robots "
        "in viscous fluid"};
    app.require_subcommand(1);
    app.footer(
        "Config file keys (SI units):\n"
        "  [fluid]     scenario = low|high|both|custom;\n"
        "              density [kg/m^3], viscosity [Pa s]  (custom only)\n"
        "  [expanding] L [m], n, s [m], F, T_low [s], T_high [s]\n"
        "  [probe]     L [m], n, r [m], s [m], R_body [m], F, T_low [s], T_high [s],\n"
        "              R_body_sensitivity = true|false\n"
        "  [tread]     a [m], case = wall|two-spheres, v_tread_low [m/s],\n"
        "              v_tread_high [m/s], delta0, gap [m], band_area_fraction,\n"
        "              ramp_width [m], internal_model = calibrated|band-only\n"
        "  [solver]    level, wall_extent, jobs, refine, f_min, f_samples,\n"
        "              delta_min, delta_max, delta_samples\n"
        "  [friction]  k [kg/(m^2 s)], glucose_energy [J], glucose_efficiency\n"
        "Exactly one geometry section per config. Unknown keys are rejected.\n"
        "Cache directory override: MORPHFLOW_CACHE_DIR");

    CommonOpts table_o, curve_o, opt_o;
    bool fault_injection = false;
    int validate_jobs = 1;
    std::string cache_action;

    const auto add_common = [](CLI::App* sub, CommonOpts& o,
                               const std::string& default_format) {
        o.format = default_format;
        sub->add_option("--config", o.config_path, "run configuration file")->required();
        sub->add_option("--out", o.out_path, "output path (default: stdout)");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json", "table"}));
        sub->add_option("--refine", o.refine,
                        "refine meshes until relative power change is below this");
        sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* t = app.add_subcommand("scenario-table",
                                 "dimensionless numbers, power factors, energy, and glucose "
                                 "equivalents for the configured geometry");
    add_common(t, table_o, "table");
    auto* c = app.add_subcommand("curve",
                                 "coefficient curves: (f, h_fluid, h_internal) for shape "
                                 "changes, (delta, h_loc, h_fluid) for treadmill spheres");
    add_common(c, curve_o, "csv");
    auto* o = app.add_subcommand("optimize",
                                 "uniform vs constant-power schedules: energies, savings, "
                                 "speed ratio, peak power; writes the profile CSV to --out");
    add_common(o, opt_o, "table");
    auto* v = app.add_subcommand("validate", "run the solver oracle checks");
    v->add_flag("--fault-injection", fault_injection,
                "perturb the kernel to demonstrate that the checks catch defects");
    v->add_option("--jobs", validate_jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* k = app.add_subcommand("cache", "manage the mobility-curve cache");
    k->add_option("action", cache_action, "list or clear")
        ->required()
        ->check(CLI::IsMember({"list", "clear"}));

    try {
        app.parse(argc, argv);
        if (t->parsed()) return cmd_scenario_table(table_o);
        if (c->parsed()) return cmd_curve(curve_o);
        if (o->parsed()) return cmd_optimize(opt_o);
        if (v->parsed()) return cmd_validate(fault_injection, validate_jobs);
        return cmd_cache(cache_action);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
}
