#include "belts/power_guides.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace belts {

namespace {

struct LabeledPoly {
    std::vector<Point> pts;
    std::vector<int> lab;  // label of the edge starting at pts[k]
};

// Sutherland-Hodgman clip against half-plane f(p) = k - dot(g, p) >= 0,
// labeling the new cut edge with `who`.
void clip(LabeledPoly& poly, Point g, double k, int who) {
    LabeledPoly out;
    size_t m = poly.pts.size();
    if (m == 0) return;
    auto f = [&](Point p) { return k - dot(g, p); };
    for (size_t i = 0; i < m; ++i) {
        Point a = poly.pts[i], b = poly.pts[(i + 1) % m];
        int lab = poly.lab[i];
        double fa = f(a), fb = f(b);
        bool ain = fa >= 0, bin = fb >= 0;
        if (ain) {
            out.pts.push_back(a);
            out.lab.push_back(lab);
        }
        if (ain != bin) {
            double t = fa / (fa - fb);
            Point ip = a + t * (b - a);
            out.pts.push_back(ip);
            out.lab.push_back(ain ? who : lab);
        }
    }
    poly = std::move(out);
}

void dedupe(LabeledPoly& poly, double eps) {
    LabeledPoly out;
    size_t m = poly.pts.size();
    for (size_t i = 0; i < m; ++i) {
        size_t j = (i + 1) % m;
        if (dist(poly.pts[i], poly.pts[j]) <= eps) continue;  // drop zero edge
        out.pts.push_back(poly.pts[i]);
        out.lab.push_back(poly.lab[i]);
    }
    poly = std::move(out);
}

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

Point edge_midpoint(const DiagramEdge& e) { return 0.5 * (e.a + e.b); }

}  // namespace

int min_power_disk(const std::vector<Disk>& disks, Point p) {
    int best = 0;
    double bv = power_distance(p, disks[0]);
    for (size_t i = 1; i < disks.size(); ++i) {
        double v = power_distance(p, disks[i]);
        if (v < bv) {
            bv = v;
            best = static_cast<int>(i);
        }
    }
    return best;
}

PowerDiagram power_diagram(const std::vector<Disk>& disks, const Tolerance& tol) {
    int n = static_cast<int>(disks.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(disks[i].c, disks[j].c) <= tol.eps &&
                std::abs(disks[i].r - disks[j].r) <= tol.eps)
                throw GeomError("DegenerateInput", "identical disks");

    PowerDiagram pd;
    pd.disks = disks;
    if (n == 0) return pd;

    Point lo = disks[0].c, hi = disks[0].c;
    for (const Disk& d : disks) {
        lo.x = std::min(lo.x, d.c.x - d.r);
        lo.y = std::min(lo.y, d.c.y - d.r);
        hi.x = std::max(hi.x, d.c.x + d.r);
        hi.y = std::max(hi.y, d.c.y + d.r);
    }
    double spread = std::max({hi.x - lo.x, hi.y - lo.y, 1.0});
    pd.clip_center = 0.5 * (lo + hi);
    pd.clip_radius = 3.0 * spread;
    Point c0 = pd.clip_center;
    double R = pd.clip_radius;

    for (int i = 0; i < n; ++i) {
        LabeledPoly poly;
        poly.pts = {{c0.x - R, c0.y - R}, {c0.x + R, c0.y - R}, {c0.x + R, c0.y + R},
                    {c0.x - R, c0.y + R}};
        poly.lab = {-1, -1, -1, -1};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            // power_i(p) <= power_j(p)  <=>  dot(2(cj-ci), p) <= k
            Point g = 2.0 * (disks[j].c - disks[i].c);
            double k = dot(disks[j].c, disks[j].c) - dot(disks[i].c, disks[i].c) -
                       disks[j].r * disks[j].r + disks[i].r * disks[i].r;
            clip(poly, g, k, j);
        }
        dedupe(poly, 1e-9);
        PowerCell cell;
        cell.disk = i;
        cell.poly = std::move(poly.pts);
        cell.neighbor = std::move(poly.lab);
        pd.cells.push_back(std::move(cell));
    }

    // Adjacency edges from the lower-indexed cell's boundary.
    auto on_box = [&](Point p) {
        return std::abs(std::abs(p.x - c0.x) - R) < 1e-6 ||
               std::abs(std::abs(p.y - c0.y) - R) < 1e-6;
    };
    std::map<std::pair<int, int>, size_t> seen;
    for (int i = 0; i < n; ++i) {
        const PowerCell& cell = pd.cells[i];
        size_t m = cell.poly.size();
        for (size_t k = 0; k < m; ++k) {
            int j = cell.neighbor[k];
            if (j < 0 || j < i) continue;
            Point a = cell.poly[k], b = cell.poly[(k + 1) % m];
            auto key = std::make_pair(i, j);
            if (seen.count(key)) continue;  // keep one segment per pair
            seen[key] = pd.edges.size();
            pd.edges.push_back({i, j, a, b, !(on_box(a) || on_box(b))});
        }
    }
    for (const PowerCell& cell : pd.cells)
        for (Point p : cell.poly)
            if (!on_box(p)) pd.vertices.push_back(p);
    return pd;
}

DualTree dual_spanning_tree(const PowerDiagram& pd) {
    int n = static_cast<int>(pd.cells.size());
    std::vector<int> order(pd.edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto weight = [&](int e) {
        const DiagramEdge& de = pd.edges[e];
        Point m = edge_midpoint(de);
        return dist(pd.disks[de.cell_a].c, m) + dist(m, pd.disks[de.cell_b].c);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight(a) < weight(b); });
    DualTree tree;
    DSU dsu(n);
    for (int e : order)
        if (dsu.unite(pd.edges[e].cell_a, pd.edges[e].cell_b)) tree.edges.push_back(e);
    if (static_cast<int>(tree.edges.size()) != n - 1)
        throw GeomError("DegenerateInput", "power diagram dual graph is disconnected");
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

std::vector<TourStep> outside_tour(const PowerDiagram& pd, const DualTree& tree) {
    int n = static_cast<int>(pd.cells.size());
    std::vector<TourStep> S;
    if (n <= 1) return S;
    std::vector<std::vector<int>> inc(n);
    for (int e : tree.edges) {
        inc[pd.edges[e].cell_a].push_back(e);
        inc[pd.edges[e].cell_b].push_back(e);
    }
    auto other = [&](int e, int v) {
        return pd.edges[e].cell_a == v ? pd.edges[e].cell_b : pd.edges[e].cell_a;
    };
    auto edge_angle = [&](int v, int e) {
        return angle_of(edge_midpoint(pd.edges[e]) - pd.disks[v].c);
    };
    // Walk with the tree on the left: at each cell continue with the next
    // incident tree edge in ccw rotation after the incoming one.
    std::function<void(int, int)> visit = [&](int v, int ein) {
        double base = ein < 0 ? 0.0 : edge_angle(v, ein);
        std::vector<int> es;
        for (int e : inc[v])
            if (e != ein) es.push_back(e);
        std::sort(es.begin(), es.end(), [&](int a, int b) {
            double da = normalize_angle(edge_angle(v, a) - base);
            double db = normalize_angle(edge_angle(v, b) - base);
            return da != db ? da < db : a < b;
        });
        for (int e : es) {
            S.push_back({v, e});
            visit(other(e, v), e);
        }
        if (ein >= 0) S.push_back({v, ein});
    };
    visit(0, -1);
    return S;
}

namespace {

struct Placement {
    double rho;    // guide radius
    double delta;  // radial offset outside the originals
    double side;   // lateral offset distinguishing the two edge traversals
};

// Builds the tour belt for fixed parameters; one_touch selects the detour
// variant. Returns the plan without verification.
GuidePlan build_plan(const std::vector<Disk>& disks, const PowerDiagram& pd,
                     const std::vector<TourStep>& tour, const Placement& pl, bool one_touch) {
    GuidePlan plan;
    plan.tour = tour;
    plan.all_disks = disks;
    plan.belt.mode = one_touch ? BeltMode::one_touch : BeltMode::multi_touch;

    int next_id = 0;
    for (const Disk& d : disks) next_id = std::max(next_id, d.id + 1);
    auto add_guide = [&](Point c, GuideRole role, int step, Orientation o) {
        Disk g{next_id++, c, pl.rho};
        plan.guides.push_back({g, role, step});
        plan.all_disks.push_back(g);
        plan.belt.contacts.push_back({g.id, o});
    };

    int m = static_cast<int>(tour.size());
    std::vector<bool> detour_at(m, false);
    {
        std::vector<bool> touched(disks.size(), false);
        for (int k = 0; k < m; ++k) {
            int v = tour[k].disk;
            detour_at[k] = one_touch && touched[v];
            touched[v] = true;
        }
    }
    std::vector<double> gap(disks.size(), std::numeric_limits<double>::max());
    for (size_t i = 0; i < disks.size(); ++i)
        for (size_t j = 0; j < disks.size(); ++j)
            if (j != i)
                gap[i] = std::min(gap[i], dist(disks[i].c, disks[j].c) - disks[i].r -
                                              disks[j].r);
    for (int k = 0; k < m; ++k) {
        int v = tour[k].disk;
        const Disk& dv = disks[v];
        const DiagramEdge& e = pd.edges[tour[k].edge];
        int u = e.cell_a == v ? e.cell_b : e.cell_a;
        const Disk& du = disks[u];
        Point y = edge_midpoint(e);

        if (!detour_at[k]) {
            plan.belt.contacts.push_back({dv.id, Orientation::plus});
        } else {
            // Route around v with guide disks instead of touching it again.
            const DiagramEdge& pe = pd.edges[tour[(k + m - 1) % m].edge];
            Point y_prev = edge_midpoint(pe);
            double a_in = angle_of(y_prev - dv.c);
            double a_out = angle_of(y - dv.c);
            double span = normalize_angle(a_out - a_in);
            // The detour ring sits well outside the disk (offset ~r/2,
            // bounded by the local gap and by the corridor scale) so a few
            // guides suffice: a ring hugging the disk at the corridor offset
            // would need Theta(sqrt(r/delta)) of them.
            double dring = std::max(
                pl.delta, std::min({0.5 * dv.r, 0.4 * gap[v] - 2.0 * pl.rho, 64.0 * pl.delta}));
            double rg = dv.r + dring + pl.rho;
            // The z-guide of the previous step and the x-guide below act as
            // the ring's endpoints. Interior ring guides share the belt's
            // outer tangent line, so their chords must clear the disk by
            // delta/2 (angular gap beta). The end gaps connect a minus guide
            // near the disk to a plus guide on the ring: that bitangent runs
            // 2*rho closer in and starts at the corridor radius, so the end
            // gaps get a tighter bound beta_end evaluated there.
            auto gap_of = [&](double cos_max) {
                return std::max(1e-3, 2.0 * std::acos(std::clamp(cos_max, 0.0, 1.0)));
            };
            double beta = gap_of((dv.r + 0.5 * pl.delta - pl.rho) / rg);
            double beta_end =
                gap_of((dv.r + 0.5 * pl.delta + pl.rho) / (dv.r + pl.delta + pl.rho));
            if (span > beta_end) {
                double inner = span - beta_end;
                int cnt = std::max(1, static_cast<int>(std::ceil(inner / beta)) + 1);
                for (int t = 0; t < cnt; ++t) {
                    double a = cnt == 1 ? a_in + 0.5 * span
                                        : a_in + 0.5 * beta_end + inner * t / (cnt - 1);
                    add_guide(dv.c + rg * Point{std::cos(a), std::sin(a)}, GuideRole::routing,
                              k, Orientation::plus);
                }
            }
        }

        Point dir1 = normalized(y - dv.c);
        Point dir2 = normalized(du.c - y);
        Point dirz = normalized(y - du.c);
        // Guides sit slightly to the right of the polyline (the traversal's
        // own side, so the two traversals of an edge get disjoint guides);
        // the belt runs just outside them. Flattening from a disk arc onto
        // the corridor is a concave (right) turn, so x and z contacts are
        // minus; the y contact follows the bend direction of the polyline.
        add_guide(dv.c + (dv.r + pl.delta + pl.rho) * dir1 - pl.side * rot90(dir1),
                  GuideRole::x_point, k, Orientation::minus);
        Point ydir = normalized(dir1 + dir2);
        Orientation oy = cross(dir1, dir2) > 0 ? Orientation::plus : Orientation::minus;
        add_guide(y - pl.side * rot90(ydir), GuideRole::y_point, k, oy);
        add_guide(du.c + (du.r + pl.delta + pl.rho) * dirz + pl.side * rot90(dirz),
                  GuideRole::z_point, k, Orientation::minus);
    }
    return plan;
}

GuidePlan make_plan(const std::vector<Disk>& disks, const PowerDiagram& pd,
                    const std::vector<TourStep>& tour, bool one_touch, const Tolerance& tol) {
    GuidePlan plan;
    if (disks.size() == 1) {
        plan.tour = tour;
        plan.all_disks = disks;
        plan.belt.mode = one_touch ? BeltMode::one_touch : BeltMode::multi_touch;
        plan.belt.contacts.push_back({disks[0].id, Orientation::plus});
        return plan;
    }
    if (tour.empty()) throw GeomError("PlacementFailed", "empty tour");

    // Initial clearance: how much room the tightest tour step leaves. Detour
    // rings extend beyond their disk, so the smallest gap between any two
    // disks bounds the clearance as well.
    double clear = std::numeric_limits<double>::max();
    for (size_t i = 0; i < disks.size(); ++i)
        for (size_t j = i + 1; j < disks.size(); ++j)
            clear = std::min(clear,
                             dist(disks[i].c, disks[j].c) - disks[i].r - disks[j].r);
    for (const TourStep& s : tour) {
        const DiagramEdge& e = pd.edges[s.edge];
        Point y = edge_midpoint(e);
        clear = std::min({clear, dist(y, disks[e.cell_a].c) - disks[e.cell_a].r,
                          dist(y, disks[e.cell_b].c) - disks[e.cell_b].r,
                          0.5 * dist(e.a, e.b)});
    }
    Placement pl{clear / 8.0, clear / 8.0, clear / 4.0};
    std::string last_fail = "no attempt";
    for (int attempt = 0; attempt < 8; ++attempt) {
        plan = build_plan(disks, pd, tour, pl, one_touch);
        try {
            BeltCurve curve = realize(plan.belt, plan.all_disks, tol);
            VerificationReport rep = verify(curve, plan.all_disks, plan.belt.mode, tol);
            if (rep.valid) return plan;
            last_fail = rep.failures.front().detail + " (piece " +
                        std::to_string(rep.failures.front().piece_a) + ")";
        } catch (const GeomError& e) {
            last_fail = e.what();
        }
        pl.rho *= 0.5;
        pl.delta *= 0.5;
        pl.side *= 0.5;
    }
    throw GeomError("PlacementFailed", "guide placement failed after retries: " + last_fail);
}

}  // namespace

GuidePlan place_guides(const std::vector<Disk>& disks, const PowerDiagram& pd,
                       const std::vector<TourStep>& tour, const Tolerance& tol) {
    return make_plan(disks, pd, tour, false, tol);
}

GuidePlan augment_one_touch(const std::vector<Disk>& disks, const PowerDiagram& pd,
                            const std::vector<TourStep>& tour, const Tolerance& tol) {
    return make_plan(disks, pd, tour, true, tol);
}

LowerBoundInstance lower_bound_instance(int n) {
    if (n < 4) throw GeomError("DegenerateInput", "need n >= 4");
    LowerBoundInstance inst;
    int k = n - 1;
    double R = 10.0;
    double theta = kTau / k;
    double rs = R * (1.0 - std::cos(theta / 2)) / 4.0;
    double rc = R * (1.0 + std::cos(theta / 2)) / 2.0;
    for (int i = 0; i < k; ++i) {
        double a = theta * i;
        inst.disks.push_back({i, {R * std::cos(a), R * std::sin(a)}, rs});
    }
    inst.disks.push_back({k, {0, 0}, rc});
    inst.center = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool all_blocked = true;
            for (const TangentSegment& s : bitangents(inst.disks[i], inst.disks[j]))
                if (!is_blocked(s, inst.disks)) all_blocked = false;
            if (all_blocked) inst.blocked_pairs.emplace_back(i, j);
        }
    return inst;
}

}  // namespace belts
