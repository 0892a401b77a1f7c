#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "belts/packing.hpp"
#include "belts/solver.hpp"

using namespace belts;

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

EdgeSet edge_set(const PlanarTriangulation& t) {
    EdgeSet es;
    for (const auto& f : t.faces)
        for (int i = 0; i < 3; ++i) es.insert(ordered(f[i], f[(i + 1) % 3]));
    return es;
}

EdgeSet outer_pair_set(const PlanarTriangulation& t) {
    EdgeSet es;
    const auto& f = t.faces[t.outer_face];
    for (int i = 0; i < 3; ++i) es.insert(ordered(f[i], f[(i + 1) % 3]));
    return es;
}

Graph skeleton(const PlanarTriangulation& t) {
    Graph g;
    g.n = t.n;
    for (auto e : edge_set(t)) g.edges.push_back(e);
    return g;
}

// 3-cube rotation system: vertex v is a bit triple, neighbors flip one bit,
// ordered so each face traces a 4-cycle.
CubicPlanarGraph cube() {
    CubicPlanarGraph g;
    g.n = 8;
    g.rotation = {{1, 3, 4}, {0, 5, 2}, {1, 6, 3}, {2, 7, 0},
                  {0, 7, 5}, {4, 6, 1}, {5, 7, 2}, {6, 4, 3}};
    return g;
}

CubicPlanarGraph tetrahedron() {
    CubicPlanarGraph g;
    g.n = 4;
    g.rotation = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    return g;
}

PlanarTriangulation k4_triangulation() {
    PlanarTriangulation t;
    t.n = 4;
    t.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    t.outer_face = 0;
    return t;
}

PlanarTriangulation octahedron() {
    PlanarTriangulation t;
    t.n = 6;
    t.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
               {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
    t.outer_face = 0;
    return t;
}

bool graphs_isomorphic(int n, const EdgeSet& a, const EdgeSet& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a)
            if (!b.count(ordered(perm[u], perm[v]))) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Count unblocked bitangents between two disks by kind, independent of the
// library's internal audit.
std::pair<int, int> free_bitangents(const std::vector<Disk>& disks, int a, int b) {
    int inner = 0, outer = 0;
    for (const auto& s : bitangents(disks[a], disks[b]))
        if (!is_blocked(s, disks)) {
            if (s.kind == TangentKind::inner_a || s.kind == TangentKind::inner_b)
                ++inner;
            else
                ++outer;
        }
    return {inner, outer};
}

// Bitangent discipline of a reduction instance, checked against the source
// triangulation: every edge passable, outer pairs get exactly the hull
// tangent, everything else sealed. `require_inner` is relaxed for outer pairs
// of multi-touch instances, whose gap is plugged.
void check_bitangent_discipline(const ReductionInstance& inst, bool plugged_outer) {
    EdgeSet es = edge_set(inst.graph);
    EdgeSet outer = outer_pair_set(inst.graph);
    for (int a = 0; a < inst.graph.n; ++a)
        for (int b = a + 1; b < inst.graph.n; ++b) {
            auto [inner, out] = free_bitangents(inst.disks, a, b);
            bool edge = es.count({a, b}) != 0;
            bool is_outer = outer.count({a, b}) != 0;
            CAPTURE(a);
            CAPTURE(b);
            if (!edge) {
                CHECK(inner + out == 0);
                continue;
            }
            CHECK(out == (is_outer ? 1 : 0));
            if (!(is_outer && plugged_outer)) CHECK(inner >= 1);
        }
}

// Hamiltonian-cycle weight for belt counting on a shrunk packing: a cycle
// using both hull sides adjacent to its outer edges twice admits two belts,
// otherwise one. Empirically: weight 2 iff the cycle uses exactly two outer
// pairs.
long weighted_cycle_count(const PlanarTriangulation& t) {
    EdgeSet outer = outer_pair_set(t);
    long sum = 0;
    for (const auto& hc : hamiltonian_cycles(skeleton(t))) {
        int k = 0;
        for (size_t i = 0; i < hc.size(); ++i)
            if (outer.count(ordered(hc[i], hc[(i + 1) % hc.size()]))) ++k;
        sum += k == 2 ? 2 : 1;
    }
    return sum;
}

// Disk order traversed by a belt curve, rotated/reflected into the canonical
// form used by hamiltonian_cycles (starts at 0, second < last).
std::vector<int> canonical_disk_order(const BeltCurve& c) {
    std::vector<int> order;
    for (const auto& p : c.pieces)
        if (p.is_arc()) order.push_back(p.arc().disk);
    auto it = std::find(order.begin(), order.end(), 0);
    REQUIRE(it != order.end());
    std::rotate(order.begin(), it, order.end());
    if (order.size() > 2 && order[1] > order.back())
        std::reverse(order.begin() + 1, order.end());
    return order;
}

std::set<int> touched_disks(const BeltCurve& c) {
    std::set<int> s;
    for (const auto& p : c.pieces)
        if (p.is_arc()) s.insert(p.arc().disk);
    return s;
}

BeltSpec spec_of(std::initializer_list<std::pair<int, char>> seq, BeltMode mode) {
    BeltSpec spec;
    spec.mode = mode;
    for (auto [d, o] : seq)
        spec.contacts.push_back({d, o == '+' ? Orientation::plus : Orientation::minus});
    return spec;
}

// Triangle gadget: three mutually tangent unit disks shrunk by `d` plus a
// small disk of radius `rm` at their radical center.
std::vector<Disk> triangle_gadget(double d, double rm) {
    return {{0, {0, 0}, 1 - d},
            {1, {2, 0}, 1 - d},
            {2, {1, std::sqrt(3.0)}, 1 - d},
            {3, {1, 1 / std::sqrt(3.0)}, rm}};
}

// Triangle gadget with two extra plug disks just outside the (0,1) and (1,2)
// tangency gaps; hairpins around a plug send a double ply through its gap.
std::vector<Disk> plugged_triangle_gadget() {
    auto disks = triangle_gadget(0.05, 0.06);
    Point center{1, 1 / std::sqrt(3.0)};
    auto plug = [&](int id, Point a, Point b) {
        Point mid = 0.5 * (a + b);
        disks.push_back({id, mid + 0.10 * normalized(mid - center), 0.05});
    };
    plug(4, disks[0].c, disks[1].c);
    plug(5, disks[1].c, disks[2].c);
    return disks;
}

// Strands through each tangency gap of the triangle gadget: belt segments
// crossing the open segment between the two big-disk centers, sorted
// descending.
std::array<int, 3> strand_pattern(const BeltCurve& c, const std::vector<Disk>& disks) {
    std::array<std::pair<int, int>, 3> gaps = {{{0, 1}, {1, 2}, {0, 2}}};
    std::array<int, 3> s{0, 0, 0};
    for (const auto& p : c.pieces) {
        if (p.is_arc()) continue;
        for (int g = 0; g < 3; ++g)
            if (!segment_segment_intersect(p.seg().p1, p.seg().p2, disks[gaps[g].first].c,
                                           disks[gaps[g].second].c)
                     .empty())
                ++s[g];
    }
    std::sort(s.begin(), s.end(), std::greater<int>());
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("dual of the cube is the octahedron") {
    PlanarTriangulation t = dual_graph(cube());
    CHECK(t.n == 6);
    CHECK(t.faces.size() == 8);
    EdgeSet es = edge_set(t);
    CHECK(es.size() == 12);
    std::vector<int> deg(6, 0);
    for (auto [a, b] : es) ++deg[a], ++deg[b];
    for (int v = 0; v < 6; ++v) CHECK(deg[v] == 4);  // unique such maximal planar graph
    // The three non-edges form a perfect matching (antipodal vertex pairs).
    std::vector<int> mate(6, -1);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (!es.count({a, b})) {
                CHECK(mate[a] == -1);
                CHECK(mate[b] == -1);
                mate[a] = b;
                mate[b] = a;
            }
    for (int v = 0; v < 6; ++v) CHECK(mate[v] != -1);
    CHECK(t.outer_face == 0);
}

TEST_CASE("dual of the tetrahedron graph is the stacked triangulation on 4 vertices") {
    PlanarTriangulation t = dual_graph(tetrahedron());
    CHECK(t.n == 4);
    CHECK(t.faces.size() == 4);
    CHECK(edge_set(t).size() == 6);  // K4: every pair adjacent
}

TEST_CASE("dual round trip preserves the triangulation") {
    for (const PlanarTriangulation& t : {k4_triangulation(), octahedron()}) {
        CubicPlanarGraph g = dual_graph(t);
        CHECK(g.n == static_cast<int>(t.faces.size()));
        for (const auto& rot : g.rotation) {
            std::set<int> nb(rot.begin(), rot.end());
            CHECK(nb.size() == 3);
        }
        PlanarTriangulation back = dual_graph(g);
        CHECK(back.n == t.n);
        CHECK(graphs_isomorphic(t.n, edge_set(t), edge_set(back)));
    }
}

TEST_CASE("dual graph input validation") {
    SUBCASE("repeated neighbor is not cubic") {
        CubicPlanarGraph g = cube();
        g.rotation[0] = {1, 1, 3};
        try {
            dual_graph(g);
            FAIL("expected GeomError");
        } catch (const GeomError& e) {
            CHECK(e.code() == "NotCubic");
        }
    }
    SUBCASE("two-vertex cut is rejected") {
        // Two K4-minus-an-edge blocks joined by a 2-edge bridge pair.
        CubicPlanarGraph g;
        g.n = 8;
        g.rotation = {{2, 3, 4}, {2, 3, 5}, {0, 1, 3}, {0, 1, 2},
                      {6, 7, 0}, {6, 7, 1}, {4, 5, 7}, {4, 5, 6}};
        try {
            dual_graph(g);
            FAIL("expected GeomError");
        } catch (const GeomError& e) {
            CHECK(e.code() == "NotThreeConnected");
        }
    }
    SUBCASE("flipped rotation at one vertex is not an embedding") {
        CubicPlanarGraph g = cube();
        std::reverse(g.rotation[0].begin(), g.rotation[0].end());
        try {
            dual_graph(g);
            FAIL("expected GeomError");
        } catch (const GeomError& e) {
            CHECK(e.code() == "InvalidEmbedding");
        }
    }
}

TEST_CASE("triangulation enumeration matches known isomorphism-class counts") {
    const std::pair<int, size_t> expected[] = {{4, 1}, {5, 1}, {6, 2}, {7, 5}, {8, 14}};
    for (auto [n, classes] : expected) {
        auto ts = enumerate_triangulations(n);
        CHECK(ts.size() == classes);
        for (const auto& t : ts) {
            CHECK(t.n == n);
            CHECK(t.faces.size() == size_t(2 * n - 4));
            CHECK(edge_set(t).size() == size_t(3 * n - 6));
        }
    }
    // The two 6-vertex classes are the octahedron (4-regular) and the stacked
    // triangulation (has a degree-3 vertex); they are not isomorphic.
    auto ts6 = enumerate_triangulations(6);
    REQUIRE(ts6.size() == 2);
    CHECK(!graphs_isomorphic(6, edge_set(ts6[0]), edge_set(ts6[1])));
    int regular = 0;
    for (const auto& t : ts6) {
        std::vector<int> deg(6, 0);
        for (auto [a, b] : edge_set(t)) ++deg[a], ++deg[b];
        if (*std::min_element(deg.begin(), deg.end()) == 4) ++regular;
    }
    CHECK(regular == 1);

    CHECK_THROWS_AS(enumerate_triangulations(3), GeomError);
    CHECK_THROWS_AS(enumerate_triangulations(9), GeomError);
}

TEST_CASE("circle packing of K4 matches the closed-form interior radius") {
    CirclePacking p = circle_pack(k4_triangulation());
    CHECK(p.max_residual <= 1e-10);
    // Outer triple pinned to unit disks at the canonical positions.
    CHECK(dist(p.centers[p.outer[0]], {0, 0}) <= 1e-12);
    CHECK(dist(p.centers[p.outer[1]], {2, 0}) <= 1e-12);
    CHECK(dist(p.centers[p.outer[2]], {1, std::sqrt(3.0)}) <= 1e-12);
    for (int v : p.outer) CHECK(p.radii[v] == doctest::Approx(1.0).epsilon(1e-12));
    // The disk inscribed between three mutually tangent unit disks has radius
    // 2/sqrt(3) - 1 = 1/(3 + 2*sqrt(3)).
    double inner = 1.0 / (3.0 + 2.0 * std::sqrt(3.0));
    std::set<int> outer(p.outer.begin(), p.outer.end());
    for (int v = 0; v < 4; ++v)
        if (!outer.count(v)) {
            CHECK(std::abs(p.radii[v] - inner) <= 1e-6);
            CHECK(dist(p.centers[v], {1, 1 / std::sqrt(3.0)}) <= 1e-6);
        }
}

TEST_CASE("circle packings are tangency-faithful across the enumeration corpus") {
    for (int n = 4; n <= 8; ++n)
        for (const auto& t : enumerate_triangulations(n)) {
            CirclePacking p = circle_pack(t);
            CHECK(p.max_residual <= 1e-10);
            EdgeSet es = edge_set(t);
            double worst = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    double gap = dist(p.centers[a], p.centers[b]) - (p.radii[a] + p.radii[b]);
                    if (es.count({a, b}))
                        worst = std::max(worst, std::abs(gap));
                    else
                        CHECK(gap > 1e-3);  // strict separation for non-edges
                }
            CHECK(worst <= 1e-10);  // residual recomputed independently
            CHECK(worst == doctest::Approx(p.max_residual).epsilon(1e-9));
        }
}

TEST_CASE("radical center has equal power to all three disks") {
    SUBCASE("symmetric tangent unit disks") {
        Disk a{0, {0, 0}, 1}, b{1, {2, 0}, 1}, c{2, {1, std::sqrt(3.0)}, 1};
        Point rc = radical_center(a, b, c);
        CHECK(rc.x == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rc.y == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
    }
    SUBCASE("generic radii") {
        Disk a{0, {0, 0}, 1}, b{1, {3, 0.5}, 0.8}, c{2, {1, 2.5}, 1.2};
        Point rc = radical_center(a, b, c);
        double pa = power_distance(rc, a);
        CHECK(pa == doctest::Approx(power_distance(rc, b)).epsilon(1e-9));
        CHECK(pa == doctest::Approx(power_distance(rc, c)).epsilon(1e-9));
    }
    SUBCASE("collinear centers rejected") {
        Disk a{0, {0, 0}, 1}, b{1, {2, 0}, 1}, c{2, {5, 0}, 0.5};
        try {
            radical_center(a, b, c);
            FAIL("expected GeomError");
        } catch (const GeomError& e) {
            CHECK(e.code() == "CollinearCenters");
        }
    }
}

TEST_CASE("shrunk packings expose exactly the triangulation edges") {
    for (int n : {4, 6, 8})
        for (const auto& t : enumerate_triangulations(n)) {
            ReductionInstance inst = one_touch_instance(t);
            CHECK(inst.delta > 0);
            CHECK(inst.delta <= ReductionConfig{}.delta_max);
            CHECK(EdgeSet(inst.unblocked_pairs.begin(), inst.unblocked_pairs.end()) ==
                  edge_set(t));
            check_bitangent_discipline(inst, /*plugged_outer=*/false);
        }
}

TEST_CASE("one-touch solutions follow Hamiltonian cycles") {
    PlanarTriangulation t = octahedron();
    ReductionInstance inst = one_touch_instance(t);
    auto hcs = hamiltonian_cycles(skeleton(t));
    REQUIRE(hcs.size() == 16);

    auto t0 = std::chrono::steady_clock::now();
    auto belt = solve_one_touch(inst.disks);
    CHECK(seconds_since(t0) < 10.0);
    REQUIRE(belt.has_value());
    CHECK(verify(*belt, inst.disks, BeltMode::one_touch).valid);
    auto order = canonical_disk_order(*belt);
    CHECK(std::find(hcs.begin(), hcs.end(), order) != hcs.end());

    // Conversely, every Hamiltonian cycle is realizable as a belt.
    for (const auto& hc : hcs) {
        BeltSpec spec = belt_from_hamiltonian_cycle(hc, inst, BeltMode::one_touch);
        REQUIRE(spec.contacts.size() == 6);
        for (int i = 0; i < 6; ++i) CHECK(spec.contacts[i].disk == hc[i]);
        BeltCurve curve = realize(spec, inst.disks);
        CHECK(verify(curve, inst.disks, BeltMode::one_touch).valid);
    }
}

TEST_CASE("solver and cycle enumeration agree on solvability across the corpus") {
    for (int n : {4, 6, 8})
        for (const auto& t : enumerate_triangulations(n)) {
            ReductionInstance inst = one_touch_instance(t);
            auto hcs = hamiltonian_cycles(skeleton(t));
            auto belt = solve_one_touch(inst.disks);
            CHECK(belt.has_value() == !hcs.empty());
            if (belt)
                CHECK(std::find(hcs.begin(), hcs.end(), canonical_disk_order(*belt)) !=
                      hcs.end());
        }
}

TEST_CASE("belt count equals the weighted Hamiltonian cycle count") {
    // Two independent paths to the same number: exhaustive canonical belt
    // search versus cycle enumeration with hull-side multiplicities.
    PlanarTriangulation oct = octahedron();
    CHECK(weighted_cycle_count(oct) == 25);  // 9 cycles x2 + 7 cycles x1
    CHECK(count_one_touch(one_touch_instance(oct).disks) == 25);
    CHECK(weighted_cycle_count(k4_triangulation()) == 6);
    CHECK(count_one_touch(one_touch_instance(k4_triangulation()).disks) == 6);

    for (int n : {4, 6, 8})
        for (const auto& t : enumerate_triangulations(n))
            CHECK(count_one_touch(one_touch_instance(t).disks) == weighted_cycle_count(t));
}

TEST_CASE("belt_from_hamiltonian_cycle rejects bad cycles") {
    ReductionInstance inst = one_touch_instance(octahedron());
    auto expect_code = [&](const std::vector<int>& cycle, const char* code) {
        try {
            belt_from_hamiltonian_cycle(cycle, inst, BeltMode::one_touch);
            FAIL("expected GeomError");
        } catch (const GeomError& e) {
            CHECK(e.code() == code);
        }
    };
    expect_code({0, 1, 2, 3, 4, 5}, "NotHamiltonian");  // 2-3 is a non-edge
    expect_code({0, 1, 2}, "NotHamiltonian");           // wrong length
    expect_code({0, 1, 2, 1, 4, 5}, "NotHamiltonian");  // repeated vertex

    // Odd cycles cannot alternate orientations.
    PlanarTriangulation t5 = enumerate_triangulations(5)[0];
    ReductionInstance inst5 = one_touch_instance(t5);
    auto hcs5 = hamiltonian_cycles(skeleton(t5));
    REQUIRE(!hcs5.empty());
    try {
        belt_from_hamiltonian_cycle(hcs5[0], inst5, BeltMode::one_touch);
        FAIL("expected GeomError");
    } catch (const GeomError& e) {
        CHECK(e.code() == "OddCycleLength");
    }
}

TEST_CASE("multi-touch instance of the cube") {
    ReductionInstance inst = multi_touch_instance(cube());
    REQUIRE(inst.disks.size() == 16);  // 6 vertices + 7 interior faces + 3 plugs
    for (size_t i = 0; i < inst.disks.size(); ++i) {
        CHECK(inst.disks[i].id == static_cast<int>(i));
        CHECK(inst.disks[i].r > 0);
        for (size_t j = i + 1; j < inst.disks.size(); ++j)
            CHECK(dist(inst.disks[i].c, inst.disks[j].c) >
                  inst.disks[i].r + inst.disks[j].r);
    }
    CHECK(inst.source.n == 8);
    REQUIRE(inst.face_disk.size() == inst.graph.faces.size());
    std::set<int> added;
    for (size_t f = 0; f < inst.face_disk.size(); ++f) {
        if (static_cast<int>(f) == inst.graph.outer_face) {
            CHECK(inst.face_disk[f] == -1);
        } else {
            CHECK(inst.face_disk[f] >= inst.graph.n);
            CHECK(added.insert(inst.face_disk[f]).second);
        }
    }
    for (int g : inst.outer_gadgets) {
        CHECK(g >= inst.graph.n);
        CHECK(added.insert(g).second);
    }
    CHECK(added.size() == 10);
    check_bitangent_discipline(inst, /*plugged_outer=*/true);
}

TEST_CASE("every cube face cycle threads into a verified belt") {
    CubicPlanarGraph source = cube();
    ReductionInstance inst = multi_touch_instance(source);
    Graph g;
    g.n = 8;
    EdgeSet es;
    for (int v = 0; v < 8; ++v)
        for (int w : source.rotation[v]) es.insert(ordered(v, w));
    for (auto e : es) g.edges.push_back(e);
    auto hcs = hamiltonian_cycles(g);
    REQUIRE(hcs.size() == 6);
    for (const auto& hc : hcs) {
        BeltSpec spec = belt_from_hamiltonian_cycle(hc, inst, BeltMode::multi_touch);
        CHECK(spec.contacts.size() == 18);
        BeltCurve curve = realize(spec, inst.disks);
        CHECK(verify(curve, inst.disks, BeltMode::multi_touch).valid);
        CHECK(touched_disks(curve).size() == 16);  // a belt must touch every disk
        // Determinism: the same cycle threads to the same spec.
        CHECK(belt_from_hamiltonian_cycle(hc, inst, BeltMode::multi_touch).contacts ==
              spec.contacts);
    }
}

TEST_CASE("ply patterns through triangle tangency gaps") {
    auto check_pattern = [](const std::vector<Disk>& disks, const BeltSpec& spec,
                            std::array<int, 3> want) {
        BeltCurve curve = realize(spec, disks);
        REQUIRE(verify(curve, disks, BeltMode::multi_touch).valid);
        CHECK(strand_pattern(curve, disks) == want);
    };
    SUBCASE("one double-ply dip") {
        check_pattern(triangle_gadget(0.05, 0.05),
                      spec_of({{0, '+'}, {1, '+'}, {2, '+'}, {3, '-'}}, BeltMode::multi_touch),
                      {2, 0, 0});
    }
    SUBCASE("double-ply dip with a single-ply crossing pair") {
        check_pattern(triangle_gadget(0.05, 0.05),
                      spec_of({{0, '+'}, {1, '-'}, {2, '+'}, {3, '-'}}, BeltMode::multi_touch),
                      {2, 1, 1});
    }
    SUBCASE("two single-ply crossings") {
        check_pattern(triangle_gadget(0.004, 0.07),
                      spec_of({{0, '+'}, {1, '-'}, {2, '+'}, {3, '-'}}, BeltMode::multi_touch),
                      {1, 1, 0});
    }
    SUBCASE("two double-ply crossings via hairpins around the plugs") {
        check_pattern(
            plugged_triangle_gadget(),
            spec_of({{0, '+'}, {1, '+'}, {2, '+'}, {5, '-'}, {3, '+'}, {4, '-'}},
                    BeltMode::multi_touch),
            {2, 2, 0});
    }
    SUBCASE("mixed single/double chain never verifies") {
        // Visiting the center disk twice between single crossings forces a
        // self-intersection for every orientation assignment.
        auto disks = triangle_gadget(0.05, 0.05);
        const int order[5] = {0, 3, 1, 3, 2};
        for (int mask = 0; mask < 32; ++mask) {
            BeltSpec spec;
            spec.mode = BeltMode::multi_touch;
            for (int i = 0; i < 5; ++i)
                spec.contacts.push_back(
                    {order[i], mask >> i & 1 ? Orientation::minus : Orientation::plus});
            bool valid = false;
            try {
                BeltCurve curve = realize(spec, disks);
                valid = verify(curve, disks, BeltMode::multi_touch).valid;
            } catch (const GeomError&) {
            }
            CAPTURE(mask);
            CHECK(!valid);
        }
    }
}
