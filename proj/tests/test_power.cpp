#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "belts/power_guides.hpp"
#include "belts/solver.hpp"

using namespace belts;

namespace {

std::vector<Disk> unit_row(std::initializer_list<Point> centers) {
    std::vector<Disk> out;
    int id = 0;
    for (Point p : centers) out.push_back({id++, p, 1.0});
    return out;
}

// Disjoint disks with mixed radii via rejection sampling.
std::vector<Disk> gen_mixed(std::mt19937_64& rng, int n, double extent = 25.0) {
    std::uniform_real_distribution<double> pos(0.0, extent), rad(0.3, 1.6);
    std::vector<Disk> out;
    while (static_cast<int>(out.size()) < n) {
        Disk d{static_cast<int>(out.size()), {pos(rng), pos(rng)}, rad(rng)};
        bool ok = true;
        for (const Disk& e : out)
            if (dist(d.c, e.c) < d.r + e.r + 0.2) ok = false;
        if (ok) out.push_back(d);
    }
    return out;
}

bool in_convex_poly(const std::vector<Point>& poly, Point p, double eps = 1e-9) {
    size_t m = poly.size();
    if (m < 3) return false;
    for (size_t i = 0; i < m; ++i) {
        Point a = poly[i], b = poly[(i + 1) % m];
        if (cross(b - a, p - a) < -eps) return false;
    }
    return true;
}

bool plan_verifies(const GuidePlan& plan, const Tolerance& tol = {}) {
    BeltCurve curve = realize(plan.belt, plan.all_disks, tol);
    return verify(curve, plan.all_disks, plan.belt.mode, tol).valid;
}

GuidePlan run_pipeline(const std::vector<Disk>& disks, bool one_touch) {
    PowerDiagram pd = power_diagram(disks);
    DualTree tree = dual_spanning_tree(pd);
    auto tour = outside_tour(pd, tree);
    return one_touch ? augment_one_touch(disks, pd, tour) : place_guides(disks, pd, tour);
}

}  // namespace

TEST_CASE("power diagram separators on axis-aligned pairs") {
    SUBCASE("equal radii bisect") {
        auto pd = power_diagram(unit_row({{0, 0}, {4, 0}}));
        REQUIRE(pd.edges.size() == 1);
        CHECK(pd.edges[0].cell_a == 0);
        CHECK(pd.edges[0].cell_b == 1);
        CHECK(pd.edges[0].a.x == doctest::Approx(2.0));
        CHECK(pd.edges[0].b.x == doctest::Approx(2.0));
        CHECK_FALSE(pd.edges[0].bounded);
    }
    SUBCASE("unequal radii shift toward the small disk") {
        // 12x = 6^2 - 2^2 + 1^2 so the separator sits at x = 33/12.
        std::vector<Disk> disks = {{0, {0, 0}, 1.0}, {1, {6, 0}, 2.0}};
        auto pd = power_diagram(disks);
        REQUIRE(pd.edges.size() == 1);
        CHECK(pd.edges[0].a.x == doctest::Approx(33.0 / 12.0));
        CHECK(pd.edges[0].b.x == doctest::Approx(33.0 / 12.0));
    }
    SUBCASE("identical disks are rejected") {
        std::vector<Disk> twice = {{0, {1, 2}, 1.0}, {1, {1, 2}, 1.0}};
        CHECK_THROWS_AS(power_diagram(twice), GeomError);
    }
}

TEST_CASE("power cells partition the plane by minimum power distance") {
    std::mt19937_64 rng(321);
    auto disks = gen_mixed(rng, 50, 60.0);
    auto pd = power_diagram(disks);
    REQUIRE(pd.cells.size() == disks.size());
    // Cells are convex, ccw, and every sample point lands in the cell of its
    // minimum-power disk.
    std::uniform_real_distribution<double> s(-5.0, 65.0);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        Point p{s(rng), s(rng)};
        int best = min_power_disk(disks, p);
        double bv = power_distance(p, disks[best]);
        bool tie = false;
        for (const Disk& d : disks)
            if (d.id != best && power_distance(p, d) - bv < 1e-7) tie = true;
        if (tie) continue;  // points on cell boundaries can land either side
        ++checked;
        for (size_t i = 0; i < pd.cells.size(); ++i)
            CHECK(in_convex_poly(pd.cells[i].poly, p, 1e-7) == (static_cast<int>(i) == best));
    }
    CHECK(checked > 900);
    // Each disjoint disk lies inside its own cell.
    for (size_t i = 0; i < disks.size(); ++i) {
        CHECK(in_convex_poly(pd.cells[i].poly, disks[i].c));
        for (int k = 0; k < 8; ++k) {
            double a = kTau * k / 8;
            Point q = disks[i].c + 0.99 * disks[i].r * Point{std::cos(a), std::sin(a)};
            CHECK(min_power_disk(disks, q) == static_cast<int>(i));
        }
    }
    // Planarity keeps the edge count linear.
    CHECK(pd.edges.size() <= 3 * disks.size());
    for (const DiagramEdge& e : pd.edges) CHECK(e.cell_a < e.cell_b);
}

TEST_CASE("dual spanning tree structure") {
    SUBCASE("two disks, one edge") {
        auto pd = power_diagram(unit_row({{0, 0}, {5, 0}}));
        auto tree = dual_spanning_tree(pd);
        CHECK(tree.edges == std::vector<int>{0});
    }
    SUBCASE("three collinear disks form a path") {
        auto pd = power_diagram(unit_row({{0, 0}, {4, 0}, {8, 0}}));
        auto tree = dual_spanning_tree(pd);
        REQUIRE(tree.edges.size() == 2);
        std::set<std::pair<int, int>> got;
        for (int e : tree.edges) got.insert({pd.edges[e].cell_a, pd.edges[e].cell_b});
        CHECK(got == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
    }
    SUBCASE("always n-1 edges and spanning") {
        std::mt19937_64 rng(7);
        for (int n : {4, 9, 16}) {
            auto disks = gen_mixed(rng, n);
            auto pd = power_diagram(disks);
            auto tree = dual_spanning_tree(pd);
            REQUIRE(static_cast<int>(tree.edges.size()) == n - 1);
            std::vector<int> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> find = [&](int x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (int e : tree.edges) parent[find(pd.edges[e].cell_a)] = find(pd.edges[e].cell_b);
            for (int v = 1; v < n; ++v) CHECK(find(v) == find(0));
        }
    }
}

TEST_CASE("outside tour walks every tree edge twice") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3, 6, 12}) {
        auto disks = gen_mixed(rng, n);
        auto pd = power_diagram(disks);
        auto tree = dual_spanning_tree(pd);
        auto tour = outside_tour(pd, tree);
        REQUIRE(static_cast<int>(tour.size()) == 2 * (n - 1));
        std::map<int, int> edge_uses, disk_uses, degree;
        for (int e : tree.edges) {
            degree[pd.edges[e].cell_a]++;
            degree[pd.edges[e].cell_b]++;
        }
        for (const TourStep& s : tour) {
            edge_uses[s.edge]++;
            disk_uses[s.disk]++;
            // The traversed edge is incident to the visited disk.
            CHECK((pd.edges[s.edge].cell_a == s.disk || pd.edges[s.edge].cell_b == s.disk));
        }
        for (int e : tree.edges) CHECK(edge_uses[e] == 2);
        for (int v = 0; v < n; ++v) CHECK(disk_uses[v] == degree[v]);
        // Consecutive steps are joined by the traversed edge.
        int m = static_cast<int>(tour.size());
        for (int k = 0; k < m; ++k) {
            const DiagramEdge& e = pd.edges[tour[k].edge];
            int next = tour[(k + 1) % m].disk;
            CHECK((e.cell_a == tour[k].disk ? e.cell_b : e.cell_a) == next);
        }
    }
}

TEST_CASE("guide placement produces verified belts") {
    SUBCASE("single disk needs no guides") {
        std::vector<Disk> one = {{0, {2, 3}, 1.5}};
        auto pd = power_diagram(one);
        GuidePlan plan = place_guides(one, pd, {});
        CHECK(plan.guides.empty());
        CHECK(plan.belt.contacts.size() == 1);
        CHECK(plan_verifies(plan));
    }
    SUBCASE("two disks use three guides per traversal") {
        auto disks = unit_row({{0, 0}, {6, 1}});
        GuidePlan plan = run_pipeline(disks, false);
        CHECK(plan.guides.size() == 6);
        CHECK(plan_verifies(plan));
    }
    SUBCASE("mixed radii") {
        std::mt19937_64 rng(23);
        auto disks = gen_mixed(rng, 10);
        GuidePlan plan = run_pipeline(disks, false);
        CHECK(plan.guides.size() == 3 * plan.tour.size());
        CHECK(plan.guides.size() <= 6 * disks.size());
        CHECK(plan_verifies(plan));
        // Guides never overlap the originals.
        for (const GuideDisk& g : plan.guides)
            for (const Disk& d : disks) CHECK(dist(g.disk.c, d.c) > g.disk.r + d.r);
    }
}

TEST_CASE("one-touch augmentation touches every disk exactly once") {
    SUBCASE("three collinear disks reroute the middle revisit") {
        auto disks = unit_row({{0, 0}, {4, 0}, {8, 0}});
        GuidePlan plan = run_pipeline(disks, true);
        CHECK(plan.belt.mode == BeltMode::one_touch);
        CHECK(plan_verifies(plan));
        int middle = 0;
        for (const Contact& c : plan.belt.contacts)
            if (c.disk == 1) ++middle;
        CHECK(middle == 1);
    }
    SUBCASE("star hub visited once despite five tree edges") {
        std::vector<Disk> disks = {{0, {0, 0}, 1.0}};
        for (int k = 0; k < 5; ++k) {
            double a = kTau * k / 5;
            disks.push_back({k + 1, {5 * std::cos(a), 5 * std::sin(a)}, 0.8});
        }
        GuidePlan plan = run_pipeline(disks, true);
        CHECK(plan_verifies(plan));
        std::map<int, int> uses;
        for (const Contact& c : plan.belt.contacts) uses[c.disk]++;
        for (const Disk& d : disks) CHECK(uses[d.id] == 1);
    }
    SUBCASE("two disks have no revisits, matching the plain placement") {
        auto disks = unit_row({{0, 0}, {6, 1}});
        GuidePlan plan = run_pipeline(disks, true);
        CHECK(plan.guides.size() == 6);
        CHECK(plan_verifies(plan));
    }
}

TEST_CASE("guide counts grow linearly") {
    std::mt19937_64 rng(99);
    for (int n = 5; n <= 50; n += 9) {
        auto disks = gen_mixed(rng, n, 2.0 * n);
        GuidePlan multi = run_pipeline(disks, false);
        CHECK(multi.guides.size() <= 6 * size_t(n));
        GuidePlan one = run_pipeline(disks, true);
        CHECK(one.guides.size() <= 12 * size_t(n));
        CHECK(plan_verifies(multi));
        CHECK(plan_verifies(one));
    }
}

TEST_CASE("blocked-visibility family defeats search but not augmentation") {
    LowerBoundInstance inst = lower_bound_instance(5);
    REQUIRE(inst.disks.size() == 5);
    CHECK(inst.center == 4);
    // Disks are pairwise disjoint.
    for (size_t i = 0; i < inst.disks.size(); ++i)
        for (size_t j = i + 1; j < inst.disks.size(); ++j)
            CHECK(dist(inst.disks[i].c, inst.disks[j].c) >
                  inst.disks[i].r + inst.disks[j].r);
    // Every pair of small disks is certified blocked.
    CHECK(inst.blocked_pairs.size() == 6);
    for (auto [i, j] : inst.blocked_pairs)
        for (const TangentSegment& s : bitangents(inst.disks[i], inst.disks[j]))
            CHECK(is_blocked(s, inst.disks));
    // Exhaustive search finds no plain belt that touches each disk once.
    CHECK_FALSE(solve_one_touch(inst.disks).has_value());
    // Adding guide disks restores a single-contact belt.
    GuidePlan plan = run_pipeline(inst.disks, true);
    CHECK(plan_verifies(plan));
}

TEST_CASE("random end-to-end placement in both modes") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(2, 14);
    for (int it = 0; it < 50; ++it) {
        int n = size(rng);
        auto disks = gen_mixed(rng, n, 3.0 * n);
        CAPTURE(it);
        CAPTURE(n);
        GuidePlan multi = run_pipeline(disks, false);
        CHECK(plan_verifies(multi));
        GuidePlan one = run_pipeline(disks, true);
        CHECK(plan_verifies(one));
    }
}
