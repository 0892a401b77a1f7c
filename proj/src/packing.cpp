#include "belts/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "belts/solver.hpp"

namespace belts {

namespace {

using Face = std::array<int, 3>;

std::set<std::pair<int, int>> edge_set(const PlanarTriangulation& t) {
    std::set<std::pair<int, int>> edges;
    for (const Face& f : t.faces)
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return edges;
}

void validate_triangulation(const PlanarTriangulation& t) {
    if (t.n < 4) throw GeomError("DegenerateInput", "triangulation needs >= 4 vertices");
    if (static_cast<int>(t.faces.size()) != 2 * t.n - 4)
        throw GeomError("InvalidEmbedding", "face count violates Euler's formula");
    if (t.outer_face < 0 || t.outer_face >= static_cast<int>(t.faces.size()))
        throw GeomError("InvalidEmbedding", "outer face index out of range");
    std::map<std::pair<int, int>, int> edge_uses;
    for (const Face& f : t.faces) {
        for (int v : f)
            if (v < 0 || v >= t.n)
                throw GeomError("InvalidEmbedding", "face vertex out of range");
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw GeomError("InvalidEmbedding", "degenerate face");
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            edge_uses[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [e, uses] : edge_uses)
        if (uses != 2) throw GeomError("InvalidEmbedding", "edge not shared by two faces");
}

// Flip faces so adjacent faces traverse their shared edge in opposite
// directions (spherical consistency).
std::vector<Face> orient_faces(const PlanarTriangulation& t) {
    std::vector<Face> faces = t.faces;
    int fc = static_cast<int>(faces.size());
    // undirected edge -> incident face indices
    std::map<std::pair<int, int>, std::vector<int>> inc;
    for (int f = 0; f < fc; ++f)
        for (int k = 0; k < 3; ++k) {
            int a = faces[f][k], b = faces[f][(k + 1) % 3];
            inc[{std::min(a, b), std::max(a, b)}].push_back(f);
        }
    auto has_directed = [&](int f, int a, int b) {
        for (int k = 0; k < 3; ++k)
            if (faces[f][k] == a && faces[f][(k + 1) % 3] == b) return true;
        return false;
    };
    std::vector<int> state(fc, 0);  // 0 unseen, 1 done
    std::vector<int> queue = {0};
    state[0] = 1;
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (int k = 0; k < 3; ++k) {
            int a = faces[f][k], b = faces[f][(k + 1) % 3];
            for (int g : inc[{std::min(a, b), std::max(a, b)}]) {
                if (g == f || state[g]) continue;
                if (has_directed(g, a, b)) std::swap(faces[g][0], faces[g][1]);
                state[g] = 1;
                queue.push_back(g);
            }
        }
    }
    return faces;
}

bool graph_connected(int n, const std::vector<std::vector<int>>& adj,
                     const std::vector<bool>& removed) {
    int start = -1, want = 0;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) {
            if (start < 0) start = v;
            ++want;
        }
    if (start < 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {start};
    seen[start] = true;
    int got = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!removed[w] && !seen[w]) {
                seen[w] = true;
                ++got;
                stack.push_back(w);
            }
    }
    return got == want;
}

void validate_cubic(const CubicPlanarGraph& g) {
    if (g.n < 4 || static_cast<int>(g.rotation.size()) != g.n)
        throw GeomError("NotCubic", "rotation system size mismatch");
    std::vector<std::vector<int>> adj(g.n);
    for (int v = 0; v < g.n; ++v) {
        const auto& r = g.rotation[v];
        if (r[0] == r[1] || r[1] == r[2] || r[0] == r[2] || r[0] == v || r[1] == v || r[2] == v)
            throw GeomError("NotCubic", "invalid neighbor list");
        for (int w : r) {
            if (w < 0 || w >= g.n) throw GeomError("NotCubic", "neighbor out of range");
            adj[v].push_back(w);
        }
    }
    for (int v = 0; v < g.n; ++v)
        for (int w : adj[v])
            if (std::find(adj[w].begin(), adj[w].end(), v) == adj[w].end())
                throw GeomError("NotCubic", "asymmetric adjacency");
    std::vector<bool> removed(g.n, false);
    if (!graph_connected(g.n, adj, removed))
        throw GeomError("NotThreeConnected", "graph is disconnected");
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            removed.assign(g.n, false);
            removed[a] = removed[b] = true;
            if (!graph_connected(g.n, adj, removed))
                throw GeomError("NotThreeConnected", "2-vertex cut found");
        }
}

}  // namespace

PlanarTriangulation dual_graph(const CubicPlanarGraph& g) {
    validate_cubic(g);
    // Trace faces of the rotation system: after arriving at v from u, leave
    // along the successor of u in v's rotation.
    auto idx_of = [&](int v, int u) {
        for (int k = 0; k < 3; ++k)
            if (g.rotation[v][k] == u) return k;
        throw GeomError("NotCubic", "broken rotation");
    };
    std::map<std::pair<int, int>, int> face_of;  // directed edge -> face id
    int fc = 0;
    for (int v = 0; v < g.n; ++v)
        for (int w : g.rotation[v]) {
            if (face_of.count({v, w})) continue;
            int a = v, b = w;
            while (!face_of.count({a, b})) {
                face_of[{a, b}] = fc;
                int c = g.rotation[b][(idx_of(b, a) + 1) % 3];
                a = b;
                b = c;
            }
            ++fc;
        }
    if (fc != g.n / 2 + 2)
        throw GeomError("InvalidEmbedding", "rotation system is not a planar embedding");

    PlanarTriangulation t;
    t.n = fc;
    for (int v = 0; v < g.n; ++v) {
        Face f = {face_of[{v, g.rotation[v][0]}], face_of[{v, g.rotation[v][1]}],
                  face_of[{v, g.rotation[v][2]}]};
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw GeomError("NotThreeConnected", "repeated face around a vertex");
        t.faces.push_back(f);
    }
    t.outer_face = 0;
    validate_triangulation(t);
    return t;
}

CubicPlanarGraph dual_graph(const PlanarTriangulation& t) {
    validate_triangulation(t);
    auto faces = orient_faces(t);
    std::map<std::pair<int, int>, int> face_of;  // directed edge -> face id
    for (size_t f = 0; f < faces.size(); ++f)
        for (int k = 0; k < 3; ++k)
            face_of[{faces[f][k], faces[f][(k + 1) % 3]}] = static_cast<int>(f);
    CubicPlanarGraph g;
    g.n = static_cast<int>(faces.size());
    for (const Face& f : faces)
        g.rotation.push_back({face_of.at({f[1], f[0]}), face_of.at({f[2], f[1]}),
                              face_of.at({f[0], f[2]})});
    return g;
}

namespace {

uint64_t adjacency_mask(int n, const std::set<std::pair<int, int>>& edges,
                        const std::vector<int>& perm) {
    uint64_t m = 0;
    for (auto [a, b] : edges) {
        int pa = perm[a], pb = perm[b];
        m |= uint64_t(1) << (pa * n + pb);
        m |= uint64_t(1) << (pb * n + pa);
    }
    return m;
}

uint64_t canonical_graph_key(const PlanarTriangulation& t) {
    auto edges = edge_set(t);
    std::vector<int> perm(t.n);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t best = ~uint64_t(0);
    do {
        best = std::min(best, adjacency_mask(t.n, edges, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<PlanarTriangulation> enumerate_triangulations(int n) {
    if (n < 4 || n > 8)
        throw GeomError("DegenerateInput", "enumeration supported for 4..8 vertices");
    PlanarTriangulation base;
    base.n = n;
    base.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    for (int v = 4; v < n; ++v) {
        Face f = base.faces[0];
        base.faces[0] = {f[0], f[1], v};
        base.faces.push_back({f[1], f[2], v});
        base.faces.push_back({f[2], f[0], v});
    }
    base.outer_face = 0;
    validate_triangulation(base);

    std::vector<PlanarTriangulation> out;
    std::set<uint64_t> seen;
    std::vector<PlanarTriangulation> queue = {base};
    seen.insert(canonical_graph_key(base));
    out.push_back(base);
    while (!queue.empty()) {
        PlanarTriangulation cur = queue.back();
        queue.pop_back();
        auto edges = edge_set(cur);
        std::map<std::pair<int, int>, std::pair<int, int>> owner;  // directed edge -> (face, pos)
        for (size_t f = 0; f < cur.faces.size(); ++f)
            for (int k = 0; k < 3; ++k)
                owner[{cur.faces[f][k], cur.faces[f][(k + 1) % 3]}] = {static_cast<int>(f), k};
        for (auto [a, b] : edges) {
            auto [f1, k1] = owner.at({a, b});
            auto [f2, k2] = owner.at({b, a});
            int c = cur.faces[f1][(k1 + 2) % 3];
            int d = cur.faces[f2][(k2 + 2) % 3];
            if (c == d || edges.count({std::min(c, d), std::max(c, d)})) continue;
            PlanarTriangulation next = cur;
            next.faces[f1] = {a, d, c};
            next.faces[f2] = {d, b, c};
            uint64_t key = canonical_graph_key(next);
            if (seen.insert(key).second) {
                out.push_back(next);
                queue.push_back(next);
            }
        }
    }
    return out;
}

CirclePacking circle_pack(const PlanarTriangulation& t, const ReductionConfig& cfg) {
    validate_triangulation(t);
    auto faces = orient_faces(t);
    Face outer = faces[t.outer_face];
    std::vector<bool> is_outer(t.n, false);
    for (int v : outer) is_outer[v] = true;

    std::vector<std::vector<int>> inc(t.n);  // incident interior faces
    for (size_t f = 0; f < faces.size(); ++f) {
        if (static_cast<int>(f) == t.outer_face) continue;
        for (int v : faces[f]) inc[v].push_back(static_cast<int>(f));
    }

    std::vector<double> r(t.n, 0.5);
    for (int v : outer) r[v] = 1.0;
    auto vertex_angle = [&](int v, const Face& f) {
        int u = -1, w = -1;
        for (int x : f)
            if (x != v) (u < 0 ? u : w) = x;
        double a = r[v] + r[u], b = r[v] + r[w], c = r[u] + r[w];
        double cosang = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
        return std::acos(cosang);
    };
    double atol = std::max(1e-15, cfg.tol_pack * 1e-4);
    bool converged = false;
    double worst = 0;
    for (long it = 0; it < 1000000; ++it) {
        worst = 0;
        for (int v = 0; v < t.n; ++v) {
            if (is_outer[v]) continue;
            double theta = 0;
            for (int f : inc[v]) theta += vertex_angle(v, faces[f]);
            worst = std::max(worst, std::abs(theta - kTau));
            double k = static_cast<double>(inc[v].size());
            double s = std::sin(theta / (2.0 * k));
            double rhat = r[v] * s / (1.0 - s);
            double u = std::sin(kPi / k);
            r[v] = rhat * (1.0 - u) / u;
        }
        if (worst <= atol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw GeomError("NoConvergence",
                        "angle sums did not converge; worst residual " + std::to_string(worst));

    auto edges = edge_set(t);
    CirclePacking best;
    double best_res = std::numeric_limits<double>::max();
    for (int sgn : {1, -1}) {
        std::vector<Point> c(t.n);
        std::vector<bool> placed(t.n, false);
        c[outer[0]] = {0, 0};
        c[outer[1]] = {2, 0};
        c[outer[2]] = {1, std::sqrt(3.0)};
        placed[outer[0]] = placed[outer[1]] = placed[outer[2]] = true;
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t fi = 0; fi < faces.size(); ++fi) {
                if (static_cast<int>(fi) == t.outer_face) continue;
                const Face& f = faces[fi];
                int unk = -1, cnt = 0;
                for (int k = 0; k < 3; ++k)
                    if (!placed[f[k]]) {
                        unk = k;
                        ++cnt;
                    }
                if (cnt != 1) continue;
                int w = f[unk], u = f[(unk + 1) % 3], v = f[(unk + 2) % 3];
                double d = dist(c[u], c[v]);
                double a = r[u] + r[w], b = r[v] + r[w];
                double x = (d * d + a * a - b * b) / (2.0 * d);
                double h = std::sqrt(std::max(0.0, a * a - x * x));
                Point e = normalized(c[v] - c[u]);
                c[w] = c[u] + x * e + (sgn * h) * rot90(e);
                placed[w] = true;
                progress = true;
            }
        }
        bool all = std::all_of(placed.begin(), placed.end(), [](bool b) { return b; });
        if (!all) continue;
        double res = 0;
        for (auto [a, b] : edges) res = std::max(res, std::abs(dist(c[a], c[b]) - r[a] - r[b]));
        for (int i = 0; i < t.n && res < best_res; ++i)
            for (int j = i + 1; j < t.n; ++j) {
                if (edges.count({i, j})) continue;
                if (dist(c[i], c[j]) <= r[i] + r[j])
                    res = std::numeric_limits<double>::max();  // overlap: wrong side
            }
        if (res < best_res) {
            best_res = res;
            best.centers = c;
            best.radii = r;
        }
    }
    if (best_res > cfg.tol_pack)
        throw GeomError("NoConvergence",
                        "layout residual " + std::to_string(best_res) + " above tolerance");
    best.outer = outer;
    best.max_residual = best_res;
    return best;
}

namespace {

std::vector<Disk> shrunk_disks(const CirclePacking& p, double delta) {
    std::vector<Disk> disks;
    for (size_t i = 0; i < p.centers.size(); ++i)
        disks.push_back({static_cast<int>(i), p.centers[i], p.radii[i] * (1.0 - delta)});
    return disks;
}

bool is_inner(TangentKind k) { return k == TangentKind::inner_a || k == TangentKind::inner_b; }

// True iff the unblocked-bitangent structure after shrinking by delta is
// exactly: inner bitangents for every edge, one outer tangent (the hull
// side) for each outer pair, nothing else. The per-kind discipline is what
// makes belt counts follow the Hamiltonian-cycle weights.
bool shrink_audit(const CirclePacking& p, const std::set<std::pair<int, int>>& edges,
                  const std::set<std::pair<int, int>>& outer_pairs, double delta) {
    std::vector<Disk> disks = shrunk_disks(p, delta);
    int n = static_cast<int>(disks.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int inner_free = 0, outer_free = 0;
            try {
                for (const TangentSegment& s : bitangents(disks[i], disks[j])) {
                    if (is_blocked(s, disks)) continue;
                    ++(is_inner(s.kind) ? inner_free : outer_free);
                }
            } catch (const GeomError&) {
                return false;  // overlapping/degenerate pair
            }
            bool e = edges.count({i, j}) != 0;
            if (e && inner_free == 0) return false;
            if (!e && inner_free + outer_free > 0) return false;
            if (outer_free != (outer_pairs.count({i, j}) ? 1 : 0)) return false;
        }
    return true;
}

std::set<std::pair<int, int>> outer_pair_set(const CirclePacking& p) {
    std::set<std::pair<int, int>> out;
    for (int k = 0; k < 3; ++k) {
        int a = p.outer[k], b = p.outer[(k + 1) % 3];
        out.insert({std::min(a, b), std::max(a, b)});
    }
    return out;
}

}  // namespace

double choose_delta(const CirclePacking& p, const PlanarTriangulation& t,
                    const ReductionConfig& cfg) {
    auto edges = edge_set(t);
    auto outer_pairs = outer_pair_set(p);
    auto audit = [&](double d) { return shrink_audit(p, edges, outer_pairs, d); };
    double pass = -1, fail = cfg.delta_max;
    if (audit(cfg.delta_max)) {
        pass = cfg.delta_max;
    } else {
        for (double d = cfg.delta_max / 2.0; d > 1e-12; d /= 2.0) {
            if (audit(d)) {
                pass = d;
                break;
            }
            fail = d;
        }
        if (pass < 0)
            throw GeomError("NoValidDelta", "no shrink factor passes the bitangent audit");
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (pass + fail);
            (audit(mid) ? pass : fail) = mid;
        }
    }
    // Step back from the threshold, but only as far as the audit still holds.
    return audit(pass / 2.0) ? pass / 2.0 : pass;
}

ReductionInstance one_touch_instance(const PlanarTriangulation& t, const ReductionConfig& cfg) {
    ReductionInstance inst;
    inst.graph = t;
    inst.packing = circle_pack(t, cfg);
    inst.delta = choose_delta(inst.packing, t, cfg);
    inst.disks = shrunk_disks(inst.packing, inst.delta);
    for (auto [a, b] : edge_set(t)) inst.unblocked_pairs.emplace_back(a, b);
    return inst;
}

Point radical_center(const Disk& a, const Disk& b, const Disk& c) {
    // Equal power to all three: two linear equations 2(cj-ci).p = kj - ki
    // with ki = |ci|^2 - ri^2.
    Point g1 = 2.0 * (b.c - a.c), g2 = 2.0 * (c.c - a.c);
    double k1 = dot(b.c, b.c) - b.r * b.r - dot(a.c, a.c) + a.r * a.r;
    double k2 = dot(c.c, c.c) - c.r * c.r - dot(a.c, a.c) + a.r * a.r;
    double det = cross(g1, g2);
    double scale = norm(g1) * norm(g2);
    if (std::abs(det) <= 1e-12 * std::max(scale, 1.0))
        throw GeomError("CollinearCenters", "radical center undefined for collinear centers");
    return {(k1 * g2.y - k2 * g1.y) / det, (g1.x * k2 - g2.x * k1) / det};
}

ReductionInstance multi_touch_instance(const CubicPlanarGraph& g, const ReductionConfig& cfg) {
    PlanarTriangulation t = dual_graph(g);
    ReductionInstance inst = one_touch_instance(t, cfg);
    inst.source = g;
    inst.face_disk.assign(t.faces.size(), -1);
    int next = t.n;
    auto room_at = [&](Point p) {
        double room = std::numeric_limits<double>::max();
        for (const Disk& d : inst.disks) room = std::min(room, dist(p, d.c) - d.r);
        return room;
    };
    for (size_t f = 0; f < t.faces.size(); ++f) {
        if (static_cast<int>(f) == t.outer_face) continue;
        const Face& fc = t.faces[f];
        Point p = radical_center(inst.disks[fc[0]], inst.disks[fc[1]], inst.disks[fc[2]]);
        double room = room_at(p);
        if (room <= 0)
            throw GeomError("PlacementFailed", "no room at a triangle's radical center");
        inst.disks.push_back({next, p, cfg.eta * room});
        inst.face_disk[f] = next++;
    }
    const Face& outer = t.faces[t.outer_face];
    for (int k = 0; k < 3; ++k) {
        int u = outer[k], v = outer[(k + 1) % 3];
        double ru = inst.packing.radii[u], rv = inst.packing.radii[v];
        Point T = inst.packing.centers[u] +
                  (ru / (ru + rv)) * (inst.packing.centers[v] - inst.packing.centers[u]);
        double room = room_at(T);
        if (room <= 0) throw GeomError("PlacementFailed", "no room at an outer tangency gap");
        inst.disks.push_back({next, T, cfg.eta * room});
        inst.outer_gadgets[k] = next++;
    }
    return inst;
}

namespace {

void check_hamiltonian(const std::vector<int>& cycle, int n,
                       const std::set<std::pair<int, int>>& edges) {
    if (static_cast<int>(cycle.size()) != n)
        throw GeomError("NotHamiltonian", "cycle length differs from vertex count");
    std::vector<bool> seen(n, false);
    for (int v : cycle) {
        if (v < 0 || v >= n || seen[v])
            throw GeomError("NotHamiltonian", "cycle is not a permutation of the vertices");
        seen[v] = true;
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
        int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        if (!edges.count({std::min(a, b), std::max(a, b)}))
            throw GeomError("NotHamiltonian", "consecutive cycle vertices are not adjacent");
    }
}

std::optional<BeltSpec> try_spec(const std::vector<Contact>& contacts, BeltMode mode,
                                 const std::vector<Disk>& disks, const Tolerance& tol) {
    BeltSpec spec;
    spec.contacts = contacts;
    spec.mode = mode;
    try {
        BeltCurve curve = realize(spec, disks, tol);
        if (verify(curve, disks, mode, tol).valid) return spec;
    } catch (const GeomError&) {
    }
    return std::nullopt;
}

// One slot of the threaded multi-touch belt: a fixed position in the cyclic
// contact sequence with a small set of (disk, orientation) options.
struct Slot {
    std::vector<Contact> options;
};

std::optional<BeltSpec> thread_slots(const std::vector<Slot>& slots,
                                     const std::vector<Disk>& disks,
                                     const AdjacencyOracle& oracle, const Tolerance& tol,
                                     long& budget) {
    size_t m = slots.size();
    // For coverage pruning: the last slot at which each disk can still be
    // touched.
    std::vector<int> last_chance(disks.size(), -1);
    for (size_t s = 0; s < m; ++s)
        for (const Contact& c : slots[s].options) last_chance[c.disk] = static_cast<int>(s);
    for (size_t d = 0; d < disks.size(); ++d)
        if (last_chance[d] < 0) return std::nullopt;  // untouchable disk

    std::vector<Contact> chosen(m);
    std::vector<int> touch_count(disks.size(), 0);
    std::optional<BeltSpec> found;
    std::function<bool(size_t)> rec = [&](size_t pos) {
        if (--budget < 0) return true;  // out of budget: unwind
        if (pos == m) {
            if (chosen.back().disk == chosen.front().disk ||
                !oracle.unblocked(chosen.back().disk, chosen.back().orientation,
                                  chosen.front().disk, chosen.front().orientation))
                return false;
            found = try_spec(chosen, BeltMode::multi_touch, disks, tol);
            return found.has_value();
        }
        for (const Contact& c : slots[pos].options) {
            if (pos > 0) {
                const Contact& prev = chosen[pos - 1];
                if (prev.disk == c.disk) continue;
                if (!oracle.unblocked(prev.disk, prev.orientation, c.disk, c.orientation))
                    continue;
            }
            chosen[pos] = c;
            ++touch_count[c.disk];
            bool dead = false;
            for (size_t d = 0; d < disks.size() && !dead; ++d)
                if (touch_count[d] == 0 && last_chance[d] <= static_cast<int>(pos)) dead = true;
            if (!dead && rec(pos + 1)) return true;
            --touch_count[c.disk];
        }
        return false;
    };
    rec(0);
    return found;
}

}  // namespace

BeltSpec belt_from_hamiltonian_cycle(const std::vector<int>& cycle,
                                     const ReductionInstance& inst, BeltMode mode,
                                     const Tolerance& tol) {
    if (mode == BeltMode::one_touch) {
        check_hamiltonian(cycle, inst.graph.n, edge_set(inst.graph));
        if (cycle.size() % 2 != 0)
            throw GeomError("OddCycleLength", "alternating orientations need an even cycle");
        for (int rev = 0; rev < 2; ++rev)
            for (int phase = 0; phase < 2; ++phase) {
                std::vector<Contact> contacts;
                for (size_t i = 0; i < cycle.size(); ++i) {
                    int v = rev ? cycle[cycle.size() - 1 - i] : cycle[i];
                    contacts.push_back({v, (i + phase) % 2 == 0 ? Orientation::plus
                                                                : Orientation::minus});
                }
                if (auto s = try_spec(contacts, BeltMode::one_touch, inst.disks, tol)) return *s;
            }
        throw GeomError("NoValidBelt", "no alternating orientation assignment verifies");
    }

    // Multi-touch: the cycle runs over the cubic graph's vertices (faces of
    // the triangulation).
    const CubicPlanarGraph& g = inst.source;
    if (g.n == 0) throw GeomError("NotHamiltonian", "instance has no cubic source graph");
    std::set<std::pair<int, int>> gedges;
    for (int v = 0; v < g.n; ++v)
        for (int w : g.rotation[v]) gedges.insert({std::min(v, w), std::max(v, w)});
    check_hamiltonian(cycle, g.n, gedges);

    const Face& outer = inst.graph.faces[inst.graph.outer_face];
    auto gadget_of = [&](int a, int b) {
        for (int k = 0; k < 3; ++k) {
            int u = outer[k], v = outer[(k + 1) % 3];
            if ((u == a && v == b) || (u == b && v == a)) return inst.outer_gadgets[k];
        }
        throw GeomError("NotHamiltonian", "outer crossing does not use an outer pair");
    };
    auto shared_pair = [&](int f1, int f2) {
        std::vector<int> common;
        for (int a : inst.graph.faces[f1])
            for (int b : inst.graph.faces[f2])
                if (a == b) common.push_back(a);
        if (common.size() != 2)
            throw GeomError("NotHamiltonian", "adjacent faces share no edge");
        return std::pair<int, int>(common[0], common[1]);
    };

    AdjacencyOracle oracle(inst.disks, tol);
    long budget = 5000000;
    std::vector<int> cyc = cycle;
    auto zero = std::find(cyc.begin(), cyc.end(), 0);
    std::rotate(cyc.begin(), zero, cyc.end());
    for (int rev = 0; rev < 2; ++rev) {
        if (rev) {
            std::reverse(cyc.begin() + 1, cyc.end());  // keep the outer face first
        }
        int n = g.n;
        // Cyclic contact skeleton: exit crossing into the first interior
        // face, then alternating region centers and crossings, then the
        // entry crossing back to the outer region and the exterior walk.
        auto exit_pair = shared_pair(cyc[0], cyc[1]);
        auto entry_pair = shared_pair(cyc[n - 1], cyc[0]);
        int shared_disk = -1;
        for (int a : {exit_pair.first, exit_pair.second})
            for (int b : {entry_pair.first, entry_pair.second})
                if (a == b) shared_disk = a;
        int far_exit = exit_pair.first == shared_disk ? exit_pair.second : exit_pair.first;
        int far_entry = entry_pair.first == shared_disk ? entry_pair.second : entry_pair.first;
        int unused_gadget = -1;
        for (int k = 0; k < 3; ++k) {
            int u = outer[k], v = outer[(k + 1) % 3];
            std::set<int> pr = {u, v};
            if (pr != std::set<int>{exit_pair.first, exit_pair.second} &&
                pr != std::set<int>{entry_pair.first, entry_pair.second})
                unused_gadget = inst.outer_gadgets[k];
        }

        auto both = [](std::initializer_list<int> ids) {
            Slot s;
            for (int id : ids)
                for (Orientation o : {Orientation::plus, Orientation::minus})
                    s.options.push_back({id, o});
            return s;
        };
        for (int route = 0; route < 2; ++route) {
            std::vector<Slot> slots;
            slots.push_back(both({gadget_of(exit_pair.first, exit_pair.second)}));
            for (int k = 1; k < n; ++k) {
                slots.push_back(both({inst.face_disk[cyc[k]]}));
                if (k < n - 1) {
                    auto [p, q] = shared_pair(cyc[k], cyc[k + 1]);
                    slots.push_back(both({p, q}));
                } else {
                    slots.push_back(both({gadget_of(entry_pair.first, entry_pair.second)}));
                }
            }
            if (route == 0) {
                // Around the outside the long way, past the unused gap.
                slots.push_back(both({far_entry}));
                slots.push_back(both({unused_gadget}));
                slots.push_back(both({far_exit}));
            } else {
                slots.push_back(both({shared_disk}));
            }
            if (auto s = thread_slots(slots, inst.disks, oracle, tol, budget)) return *s;
            if (budget < 0)
                throw GeomError("NoValidBelt", "search budget exhausted before a belt verified");
        }
    }
    throw GeomError("NoValidBelt", "no crossing assignment verifies");
}

}  // namespace belts
