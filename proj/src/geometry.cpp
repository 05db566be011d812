// geometry.cpp

#include "metasurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace metasurf {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void UnitCell::check_structure() const {
    if (!(delta > 0.0))
        fail(ErrorKind::validation, "delta > 0", "cell period must be positive");
    for (size_t i = 0; i < resonators.size(); ++i) {
        const Resonator& r = resonators[i];
        const std::string tag = "resonator " + std::to_string(i + 1);
        if (!(r.h > 0.0) || !(r.l > 0.0))
            fail(ErrorKind::validation, "h > 0 and l > 0", tag + ": sizes must be positive");
        if (!(r.eps > 0.0))
            fail(ErrorKind::validation, "eps > 0", tag + ": aperture half-length must be positive");
        if (!(r.eps < 0.5 * r.l))
            fail(ErrorKind::validation, "eps < l/2",
                 tag + ": aperture must lie inside the ceiling (eps < l/2)");
        if (!(r.xi > -0.5 * delta + 0.5 * r.l && r.xi < 0.5 * delta - 0.5 * r.l))
            fail(ErrorKind::validation, "xi inside (-delta/2 + l/2, delta/2 - l/2)",
                 tag + ": sides must not touch the cell walls");
    }
    for (size_t i = 0; i < resonators.size(); ++i)
        for (size_t j = i + 1; j < resonators.size(); ++j) {
            const Resonator& a = resonators[i];
            const Resonator& b = resonators[j];
            const bool overlap_x =
                a.xi - 0.5 * a.l <= b.xi + 0.5 * b.l && b.xi - 0.5 * b.l <= a.xi + 0.5 * a.l;
            if (overlap_x)
                fail(ErrorKind::validation, "resonator closures disjoint",
                     "resonators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " overlap or touch");
        }
}

double WaveParams::k1() const { return -k * std::cos(theta); }
double WaveParams::k2() const { return -k * std::sin(theta); }

void WaveParams::check_structure() const {
    if (!(k > 0.0)) fail(ErrorKind::validation, "k > 0", "wavenumber must be positive");
    if (!(theta > 0.0 && theta < M_PI))
        fail(ErrorKind::validation, "theta in (0, pi)",
             "incidence angle must lie in (0, pi) so that k2 < 0");
}

ScaledProblem scale_problem(const UnitCell& cell, const WaveParams& wave) {
    cell.check_structure();
    wave.check_structure();
    ScaledProblem sp;
    sp.cell.delta = 1.0;
    sp.cell.resonators.reserve(cell.resonators.size());
    for (const Resonator& r : cell.resonators)
        sp.cell.resonators.push_back(
            {r.h / cell.delta, r.l / cell.delta, r.xi / cell.delta, r.eps / cell.delta});
    sp.dk = cell.delta * wave.k;
    sp.dk1 = cell.delta * wave.k1();
    sp.dk2 = cell.delta * wave.k2();
    sp.intensity = wave.intensity;
    return sp;
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const ValidationCheck& c : checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  margin=" << fmt(c.margin) << "  " << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

ValidationReport validate_assumptions(const UnitCell& cell, const WaveParams& wave,
                                      double eig_margin_rel, double wood_band_rel) {
    const ScaledProblem sp = scale_problem(cell, wave);
    const double dk = sp.dk;
    const double dk1 = sp.dk1;
    ValidationReport report;

    for (size_t i = 0; i < sp.cell.resonators.size(); ++i) {
        const Resonator& r = sp.cell.resonators[i];
        const double bound = std::min(M_PI / r.l, M_PI / r.h);
        ValidationCheck c;
        c.name = "delta*k < min(pi/l_" + std::to_string(i + 1) + ", pi/h_" + std::to_string(i + 1) + ")";
        c.margin = bound - dk;
        c.passed = c.margin > 0.0;
        c.detail = "delta*k=" + fmt(dk) + " bound=" + fmt(bound);
        report.checks.push_back(std::move(c));
    }

    {
        ValidationCheck c;
        c.name = "delta*k < 2*pi - |delta*k1|";
        c.margin = 2.0 * M_PI - std::abs(dk1) - dk;
        c.passed = c.margin > 0.0;
        c.detail = "|delta*k1|=" + fmt(std::abs(dk1));
        report.checks.push_back(std::move(c));
    }

    for (size_t i = 0; i < sp.cell.resonators.size(); ++i) {
        const Resonator& r = sp.cell.resonators[i];
        // Rectangle Neumann eigenvalues pi^2 (m^2/l^2 + n^2/h^2).
        double worst = 1e300;
        int wm = 0, wn = 0;
        const int m_max = static_cast<int>(std::ceil(2.0 * dk * r.l / M_PI)) + 1;
        const int n_max = static_cast<int>(std::ceil(2.0 * dk * r.h / M_PI)) + 1;
        for (int m = 0; m <= m_max; ++m)
            for (int n = 0; n <= n_max; ++n) {
                if (m == 0 && n == 0) continue;
                const double lam =
                    M_PI * M_PI * (m * m / (r.l * r.l) + n * n / (r.h * r.h));
                const double dist = std::abs(dk * dk - lam);
                if (dist < worst) {
                    worst = dist;
                    wm = m;
                    wn = n;
                }
            }
        ValidationCheck c;
        c.name = "(delta*k)^2 away from Neumann eigenvalues of resonator " + std::to_string(i + 1);
        c.margin = worst / (dk * dk) - eig_margin_rel;
        c.passed = c.margin > 0.0;
        c.detail = "nearest (m,n)=(" + std::to_string(wm) + "," + std::to_string(wn) + ")";
        report.checks.push_back(std::move(c));
    }

    {
        // Condition k^2 < inf_{n != 0} |2 pi n - k1|^2 in the scaled view.
        double inf_val = 1e300;
        for (int n = -3; n <= 3; ++n) {
            if (n == 0) continue;
            inf_val = std::min(inf_val, std::abs(2.0 * M_PI * n - dk1));
        }
        ValidationCheck c;
        c.name = "(delta*k)^2 < inf_{n!=0} |2*pi*n - delta*k1|^2";
        c.margin = inf_val - dk;
        c.passed = c.margin > 0.0;
        report.checks.push_back(std::move(c));

        double wood = 1e300;
        for (int n = -3; n <= 3; ++n) {
            if (n == 0) continue;
            wood = std::min(wood, std::abs(dk - std::abs(2.0 * M_PI * n - dk1)));
        }
        ValidationCheck w;
        w.name = "outside Wood-anomaly band |delta*k - |2*pi*n - delta*k1|| >= band";
        w.margin = wood / dk - wood_band_rel;
        w.passed = w.margin > 0.0;
        w.detail = "nearest anomaly distance " + fmt(wood);
        report.checks.push_back(std::move(w));
    }
    return report;
}

namespace {

// Largest-remainder allocation of total into weighted shares with floors.
std::vector<int> allocate(int total, const std::vector<double>& share,
                          const std::vector<int>& floor_count) {
    const int n = static_cast<int>(share.size());
    const double sum = std::accumulate(share.begin(), share.end(), 0.0);
    std::vector<int> out(n);
    std::vector<std::pair<double, int>> rem(n);
    int used = 0;
    for (int i = 0; i < n; ++i) {
        const double exact = total * share[i] / sum;
        out[i] = std::max(floor_count[i], static_cast<int>(std::floor(exact)));
        rem[i] = {exact - std::floor(exact), i};
        used += out[i];
    }
    std::sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first; });
    int idx = 0;
    while (used < total && idx < n) {
        out[rem[idx].second] += 1;
        ++used;
        ++idx;
        if (idx == n) idx = 0;  // keep topping up largest remainders round-robin
    }
    return out;
}

}  // namespace

BoundaryMesh build_mesh(const UnitCell& cell, int nodes_total) {
    cell.check_structure();
    const int nres = static_cast<int>(cell.resonators.size());
    BoundaryMesh mesh;
    if (nres == 0) return mesh;

    if (nodes_total < 16 * nres)
        fail(ErrorKind::invalid_argument, "at least 4 nodes per resonator side",
             "mesh needs at least " + std::to_string(16 * nres) + " nodes for " +
                 std::to_string(nres) + " resonator(s), got " + std::to_string(nodes_total));

    std::vector<double> perim(nres);
    std::vector<int> floor16(nres, 16);
    for (int i = 0; i < nres; ++i) perim[i] = cell.resonators[i].perimeter();
    const std::vector<int> per_res = allocate(nodes_total, perim, floor16);

    mesh.resonator_first.resize(nres);
    mesh.resonator_count.resize(nres);

    for (int i = 0; i < nres; ++i) {
        const Resonator& r = cell.resonators[i];
        const double x_left = r.xi - 0.5 * r.l;
        const double x_right = r.xi + 0.5 * r.l;
        const std::vector<double> side_len = {r.l, r.h, r.l, r.h};
        const std::vector<int> per_side =
            allocate(per_res[i], side_len, std::vector<int>(4, 4));

        // Counterclockwise traversal: bottom, right, top, left.
        const Point2 origins[4] = {{x_left, 0.0}, {x_right, 0.0}, {x_right, r.h}, {x_left, r.h}};
        const Point2 tangents[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        const Point2 normals[4] = {{0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};

        mesh.resonator_first[i] = mesh.total();
        for (int side = 0; side < 4; ++side) {
            MeshSide ms;
            ms.resonator = i;
            ms.side = side;
            ms.first = mesh.total();
            ms.count = per_side[side];
            ms.length = side_len[side];
            ms.origin = origins[side];
            ms.tangent = tangents[side];
            ms.normal = normals[side];
            const double hp = ms.length / ms.count;
            for (int j = 0; j < ms.count; ++j) {
                MeshNode node;
                node.s = (j + 0.5) * hp;
                node.pos = {ms.origin.x1 + ms.tangent.x1 * node.s,
                            ms.origin.x2 + ms.tangent.x2 * node.s};
                node.normal = ms.normal;
                node.weight = hp;
                node.resonator = i;
                node.side = side;
                mesh.nodes.push_back(node);
            }
            mesh.sides.push_back(ms);
        }
        mesh.resonator_count[i] = mesh.total() - mesh.resonator_first[i];
    }
    return mesh;
}

std::vector<int> BoundaryMesh::exposed_nodes() const {
    std::vector<int> idx;
    idx.reserve(nodes.size());
    for (int i = 0; i < total(); ++i)
        if (nodes[i].side != 0) idx.push_back(i);
    return idx;
}

double BoundaryMesh::min_panel() const {
    double m = 1e300;
    for (const MeshNode& n : nodes) m = std::min(m, n.weight);
    return m;
}

double BoundaryMesh::max_panel() const {
    double m = 0.0;
    for (const MeshNode& n : nodes) m = std::max(m, n.weight);
    return m;
}

const MeshSide& BoundaryMesh::ceiling(int resonator) const {
    for (const MeshSide& s : sides)
        if (s.resonator == resonator && s.side == 2) return s;
    fail(ErrorKind::invalid_argument, "resonator index in range", "no such resonator in mesh");
}

}  // namespace metasurf
