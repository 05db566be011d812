// metasurf/geometry.hpp
//
// Unit-cell geometry, incident-wave parameters, the assumption checks all
// solvers gate on, and the boundary discretization.

#pragma once

#include <string>
#include <vector>

#include "metasurf/types.hpp"

namespace metasurf {

// Rectangular resonator with interior (xi - l/2, xi + l/2) x (0, h) and a
// centered ceiling aperture of half-length eps.
struct Resonator {
    double h = 0.0;
    double l = 0.0;
    double xi = 0.0;
    double eps = 0.0;
    double area() const { return l * h; }
    double perimeter() const { return 2.0 * (l + h); }
};

struct UnitCell {
    double delta = 1.0;
    std::vector<Resonator> resonators;

    // Structural invariants: positive sizes, eps < l/2, resonators inside the
    // cell and pairwise disjoint.  Throws Error(validation) on violation.
    void check_structure() const;
};

struct WaveParams {
    double k = 0.0;      // wavenumber, > 0
    double theta = 0.0;  // incidence angle in (0, pi)
    double intensity = 1.0;

    double k1() const;  // -k cos(theta)
    double k2() const;  // -k sin(theta), < 0
    void check_structure() const;
};

// Everything downstream works in the microscopic view: lengths divided by
// delta (period becomes 1) and the wave vector multiplied by delta.
struct ScaledProblem {
    UnitCell cell;  // delta == 1
    double dk = 0.0, dk1 = 0.0, dk2 = 0.0;
    double intensity = 1.0;
};

ScaledProblem scale_problem(const UnitCell& cell, const WaveParams& wave);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double margin = 0.0;  // signed distance to the failure boundary
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    std::string to_text() const;
};

// Assumption checks (in the scaled view):
//   (a) dk below the first Neumann-Laplace eigenvalue bound min(pi/l_i, pi/h_i)
//   (b) dk < 2 pi - |dk1| (single propagating mode)
//   (c) (dk)^2 stays a relative margin away from every rectangle Neumann
//       eigenvalue pi^2 (m^2/l^2 + n^2/h^2)
//   (d) (dk)^2 < inf_{n != 0} |2 pi n - dk1|^2, plus the Wood-anomaly band
//       |dk - |2 pi n - dk1|| >= band * dk
ValidationReport validate_assumptions(const UnitCell& cell, const WaveParams& wave,
                                      double eig_margin_rel = 1e-3,
                                      double wood_band_rel = 1e-2);

// Boundary discretization: midpoint nodes of uniform panels per side, corners
// never carry nodes.  Sides are indexed bottom = 0, right = 1, top = 2,
// left = 3 with outward normals.
struct MeshNode {
    Point2 pos;
    Point2 normal;
    double weight = 0.0;
    int resonator = -1;
    int side = -1;
    double s = 0.0;  // arclength position along the side
};

struct MeshSide {
    int resonator = -1;
    int side = -1;
    int first = 0;  // index of the side's first node
    int count = 0;
    double length = 0.0;
    Point2 origin;   // corner where s = 0
    Point2 tangent;  // unit, direction of increasing s
    Point2 normal;   // outward
};

struct BoundaryMesh {
    std::vector<MeshNode> nodes;
    std::vector<MeshSide> sides;
    std::vector<int> resonator_first;  // first node index per resonator
    std::vector<int> resonator_count;

    int total() const { return static_cast<int>(nodes.size()); }
    // Node indices on sides exposed to the exterior domain (right, top, left;
    // the bottom lies on the ground line).
    std::vector<int> exposed_nodes() const;
    double min_panel() const;
    double max_panel() const;
    const MeshSide& ceiling(int resonator) const;
};

// Distributes nodes_total over resonators proportionally to perimeter and
// over the four sides of each rectangle proportionally to side length, at
// least 4 per side.  Refuses when nodes_total is too small for that.
BoundaryMesh build_mesh(const UnitCell& cell, int nodes_total);

}  // namespace metasurf
