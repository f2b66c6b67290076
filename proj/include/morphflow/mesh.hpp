/**
 * @file mesh.hpp
 * @brief Meridian-plane surface meshes for axisymmetric Stokes flow.
 *
 * A surface of revolution is described by its meridian curve in the (z, s)
 * half plane, s >= 0. The curve is discretized into straight panels; each
 * panel sweeps a conical ring. Element node order fixes the orientation:
 * with unit tangent t = (p1 - p0)/h the outward normal is n = (-t_s, t_z),
 * so closed bodies are traversed with the fluid on the normal side
 * (a sphere runs from south pole to north pole).
 *
 * A body is a connected chain of panels sharing one body id. A chain whose
 * two ends both touch the axis is a closed surface; anything else is an
 * open screen (used for a no-slip wall of finite extent).
 */
#ifndef MORPHFLOW_MESH_HPP
#define MORPHFLOW_MESH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace morphflow {

struct RingMesh {
    struct Node {
        double z = 0.0;
        double s = 0.0;
    };
    /// Panel between two nodes; node order encodes the outward normal.
    struct Element {
        int n0 = -1;
        int n1 = -1;
        int body = 0;
    };

    std::vector<Node> nodes;
    std::vector<Element> elements;

    int body_count() const {
        int m = -1;
        for (const auto& e : elements) m = std::max(m, e.body);
        return m + 1;
    }

    /// Largest coordinate magnitude; the natural length scale of the mesh.
    double extent() const {
        double m = 0.0;
        for (const auto& n : nodes) m = std::max({m, std::abs(n.z), std::abs(n.s)});
        return m;
    }

    struct PanelGeometry {
        double z0, s0;  // midpoint
        double h;       // panel length in the meridian plane
        double tz, ts;  // unit tangent
        double nz, ns;  // outward unit normal
        double area;    // swept ring area, 2 pi s_mid h
    };

    PanelGeometry panel(std::size_t i) const {
        const Element& e = elements.at(i);
        const Node& a = nodes.at(static_cast<std::size_t>(e.n0));
        const Node& b = nodes.at(static_cast<std::size_t>(e.n1));
        PanelGeometry g;
        const double dz = b.z - a.z, ds = b.s - a.s;
        g.h = std::hypot(dz, ds);
        g.z0 = 0.5 * (a.z + b.z);
        g.s0 = 0.5 * (a.s + b.s);
        g.tz = dz / g.h;
        g.ts = ds / g.h;
        g.nz = -g.ts;
        g.ns = g.tz;
        g.area = 2.0 * std::numbers::pi * g.s0 * g.h;
        return g;
    }

    /// Nodes used exactly once inside a body: the ends of its meridian chain.
    std::vector<int> chain_ends(int body) const {
        std::map<int, int> degree;
        for (const auto& e : elements)
            if (e.body == body) {
                ++degree[e.n0];
                ++degree[e.n1];
            }
        std::vector<int> ends;
        for (const auto& [node, d] : degree)
            if (d == 1) ends.push_back(node);
        return ends;
    }

    /// True when both chain ends sit on the axis, i.e. the swept surface is closed.
    bool body_is_closed(int body) const {
        const auto ends = chain_ends(body);
        if (ends.size() != 2) return false;
        const double tol = 1e-12 * std::max(extent(), 1e-300);
        return nodes[static_cast<std::size_t>(ends[0])].s <= tol &&
               nodes[static_cast<std::size_t>(ends[1])].s <= tol;
    }

    /**
     * Axis point halfway between the chain ends of a closed body. For the
     * body families built here this always lies strictly inside the body;
     * it anchors the interior pressure condition of the solver.
     */
    Node interior_axis_point(int body) const {
        if (!body_is_closed(body))
            throw std::invalid_argument("interior_axis_point: body is not closed");
        const auto ends = chain_ends(body);
        return {0.5 * (nodes[static_cast<std::size_t>(ends[0])].z +
                       nodes[static_cast<std::size_t>(ends[1])].z),
                0.0};
    }

    /**
     * Append a polyline as consecutive panels of one body. A polyline
     * endpoint that coincides with an existing node of the same body reuses
     * that node, so a body assembled from several chains still registers as
     * a single closed chain. The weld tolerance is 1e-9 of the mesh scale,
     * capped at a quarter of the incoming chain's shortest segment so that
     * chains with very short panels never weld to a neighbor of the shared
     * breakpoint; among candidates the nearest node wins.
     */
    void add_chain(const std::vector<Node>& pts, int body) {
        if (pts.size() < 2) throw std::invalid_argument("add_chain: need at least 2 points");
        double scale = 0.0;
        for (const auto& p : pts) scale = std::max({scale, std::abs(p.z), p.s});
        for (const auto& n : nodes) scale = std::max({scale, std::abs(n.z), n.s});
        double h_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            h_min = std::min(h_min, std::hypot(pts[i + 1].z - pts[i].z, pts[i + 1].s - pts[i].s));
        const double tol = std::min(1e-9 * std::max(scale, 1e-300), 0.25 * h_min);
        const auto weld = [&](const Node& p) -> int {
            int best = -1;
            double best_d = tol;
            for (const auto& e : elements) {
                if (e.body != body) continue;
                for (int ni : {e.n0, e.n1}) {
                    const auto& q = nodes[static_cast<std::size_t>(ni)];
                    const double dd = std::hypot(q.z - p.z, q.s - p.s);
                    if (dd <= best_d) {
                        best = ni;
                        best_d = dd;
                    }
                }
            }
            return best;
        };
        std::vector<int> idx(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const bool endpoint = i == 0 || i + 1 == pts.size();
            int found = endpoint ? weld(pts[i]) : -1;
            if (found < 0) {
                found = static_cast<int>(nodes.size());
                nodes.push_back(pts[i]);
            }
            idx[i] = found;
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            elements.push_back({idx[i], idx[i + 1], body});
    }

    /// Throws std::invalid_argument describing the first defect found.
    void validate() const {
        if (elements.empty()) throw std::invalid_argument("mesh: no elements");
        const double scale = extent();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (!(nodes[i].s >= -1e-14 * scale) || !std::isfinite(nodes[i].z) ||
                !std::isfinite(nodes[i].s))
                throw std::invalid_argument("mesh: node " + std::to_string(i) +
                                            " outside the meridian half plane");
        std::vector<bool> seen(static_cast<std::size_t>(body_count()), false);
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const auto& e = elements[i];
            if (e.n0 < 0 || e.n1 < 0 || e.n0 >= static_cast<int>(nodes.size()) ||
                e.n1 >= static_cast<int>(nodes.size()) || e.n0 == e.n1)
                throw std::invalid_argument("mesh: element " + std::to_string(i) +
                                            " has bad node indices");
            if (e.body < 0)
                throw std::invalid_argument("mesh: element " + std::to_string(i) +
                                            " has negative body id");
            seen[static_cast<std::size_t>(e.body)] = true;
            const auto g = panel(i);
            if (!(g.h > 0.0))
                throw std::invalid_argument("mesh: element " + std::to_string(i) +
                                            " has zero length");
            if (!(g.s0 > 0.0))
                throw std::invalid_argument("mesh: element " + std::to_string(i) +
                                            " collapses onto the axis");
        }
        for (std::size_t b = 0; b < seen.size(); ++b)
            if (!seen[b])
                throw std::invalid_argument("mesh: body ids not contiguous, missing " +
                                            std::to_string(b));
    }
};

/// Boundary velocity, linear on each panel (endpoint values in panel order).
struct SurfaceVelocityBC {
    struct PanelVelocity {
        double uz0 = 0.0, us0 = 0.0;
        double uz1 = 0.0, us1 = 0.0;
    };
    std::vector<PanelVelocity> panels;

    static SurfaceVelocityBC zero(std::size_t n_elements) {
        SurfaceVelocityBC bc;
        bc.panels.resize(n_elements);
        return bc;
    }

    void set_constant(std::size_t element, double uz, double us) {
        panels.at(element) = {uz, us, uz, us};
    }

    /// Value at the panel midpoint.
    void midpoint(std::size_t element, double& uz, double& us) const {
        const auto& p = panels.at(element);
        uz = 0.5 * (p.uz0 + p.uz1);
        us = 0.5 * (p.us0 + p.us1);
    }
};

/// Result of a traction solve. Tractions are exerted by the surface on the
/// fluid, so the rate of work sum_e (u . t) A_e is the dissipated power.
struct TractionSolution {
    struct PanelTraction {
        double tz = 0.0, ts = 0.0;
    };
    std::vector<PanelTraction> traction;
    std::vector<double> body_force_z;      // hydrodynamic axial force on each body
    std::vector<double> body_power;        // per-body rate of work on the fluid
    double power = 0.0;                    // total dissipated power
    std::vector<double> null_strength;     // bordered unknowns, one per closed body
    std::vector<double> free_body_velocity;  // rigid speeds from force-free solves
};

/// Debug dump: one line per panel with geometry, boundary velocity and traction.
inline void write_mesh_csv(const RingMesh& mesh, const SurfaceVelocityBC* bc,
                           const TractionSolution* sol, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_mesh_csv: cannot open " + path);
    out << "body_id,z0,s0,z1,s1,u_z,u_s,t_z,t_s\n";
    out.precision(17);
    for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
        const auto& e = mesh.elements[i];
        const auto& a = mesh.nodes[static_cast<std::size_t>(e.n0)];
        const auto& b = mesh.nodes[static_cast<std::size_t>(e.n1)];
        double uz = 0.0, us = 0.0;
        if (bc) bc->midpoint(i, uz, us);
        double tz = 0.0, ts = 0.0;
        if (sol && i < sol->traction.size()) {
            tz = sol->traction[i].tz;
            ts = sol->traction[i].ts;
        }
        out << e.body << ',' << a.z << ',' << a.s << ',' << b.z << ',' << b.s << ','
            << uz << ',' << us << ',' << tz << ',' << ts << '\n';
    }
}

}  // namespace morphflow

#endif  // MORPHFLOW_MESH_HPP
