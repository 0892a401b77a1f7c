#include "belts/monotone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace belts {

namespace {

bool x_sorted(const std::vector<Disk>& disks) {
    for (size_t i = 1; i < disks.size(); ++i)
        if (disks[i].c.x <= disks[i - 1].c.x) return false;
    return true;
}

void require_unit(const std::vector<Disk>& disks, const Tolerance& tol) {
    for (const Disk& d : disks)
        if (std::abs(d.r - 1.0) > tol.eps)
            throw GeomError("NotUnitRadii", "predicate requires unit disks");
}

}  // namespace

SeparatedSequence make_separated_sequence(std::vector<Disk> disks, const Tolerance& tol) {
    std::sort(disks.begin(), disks.end(),
              [](const Disk& a, const Disk& b) { return a.c.x < b.c.x; });
    for (size_t i = 1; i < disks.size(); ++i)
        if (disks[i].c.x - disks[i - 1].c.x <= tol.eps)
            throw GeomError("NotSeparated", "tied center x-coordinates");
    for (size_t i = 0; i < disks.size(); ++i)
        for (size_t j = i + 1; j < disks.size(); ++j) {
            if (disks[j].c.x - disks[i].c.x > disks[i].r + disks[j].r) break;
            if (dist(disks[i].c, disks[j].c) <= disks[i].r + disks[j].r - tol.eps)
                throw GeomError("NotSeparated", "overlapping disks");
        }
    SeparatedSequence seq;
    seq.unit_radius = true;
    for (const Disk& d : disks)
        if (std::abs(d.r - 1.0) > tol.eps) seq.unit_radius = false;
    seq.disks = std::move(disks);
    return seq;
}

bool is_xy_monotone(const std::vector<Disk>& disks, const Tolerance& tol) {
    require_unit(disks, tol);
    if (!x_sorted(disks)) return false;
    bool up = true, down = true;
    for (size_t i = 1; i < disks.size(); ++i) {
        double dy = disks[i].c.y - disks[i - 1].c.y;
        if (dy < -tol.eps) up = false;
        if (dy > tol.eps) down = false;
    }
    return up || down;
}

bool is_x_separated(const std::vector<Disk>& disks, const Tolerance& tol) {
    require_unit(disks, tol);
    for (size_t i = 1; i < disks.size(); ++i)
        if (disks[i].c.x - disks[i - 1].c.x < 2.0 - tol.eps) return false;
    return true;
}

bool is_monotonically_separated(const std::vector<Disk>& disks, const Tolerance& tol) {
    size_t n = disks.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                if (!disjoint_from_hull(disks[k], disks[i], disks[j], tol)) return false;
                if (!disjoint_from_hull(disks[i], disks[j], disks[k], tol)) return false;
            }
    return true;
}

namespace {

// Signed distance of disk q's center above the outer tangent line of p and n
// taken on the given side (plus = lower tangent, minus = upper tangent),
// plus q's radius: > 0 means q pokes past the line on that side.
double hull_excess(const Disk& p, const Disk& q, const Disk& n, Orientation side,
                   const Tolerance& tol) {
    TangentSegment s = select_bitangent(p, side, n, side, tol);
    Point d = normalized(s.p2 - s.p1);
    double h = cross(d, q.c - s.p1);  // > 0: center left of travel
    // Upper tangent travels left-to-right with minus orientation, so "past
    // the line" means above (left); lower tangent means below (right).
    return (side == Orientation::minus ? h : -h) + q.r;
}

std::vector<int> half_hull(const std::vector<Disk>& disks, Orientation side,
                           const Tolerance& tol) {
    std::vector<int> st;
    for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
        while (st.size() >= 2 &&
               hull_excess(disks[st[st.size() - 2]], disks[st.back()], disks[i], side, tol) <
                   -tol.eps)
            st.pop_back();
        st.push_back(i);
    }
    return st;
}

}  // namespace

UpperHullIndex upper_hull(const std::vector<Disk>& disks, const Tolerance& tol) {
    UpperHullIndex idx;
    int n = static_cast<int>(disks.size());
    if (n <= 2) {
        for (int i = 0; i < n; ++i) idx.rest.push_back(i);
        return idx;
    }
    std::vector<int> scan = half_hull(disks, Orientation::minus, tol);
    std::vector<bool> on_hull(n, false);
    for (size_t i = 1; i + 1 < scan.size(); ++i) on_hull[scan[i]] = true;
    for (int i = 0; i < n; ++i) (on_hull[i] ? idx.hull : idx.rest).push_back(i);
    return idx;
}

HullContext make_hull_context(const SeparatedSequence& seq, const Tolerance& tol) {
    HullContext ctx;
    ctx.disks = seq.disks;
    ctx.idx = upper_hull(ctx.disks, tol);
    return ctx;
}

namespace {

void check_unblocked(const TangentSegment& s, const std::vector<Disk>& disks,
                     const std::vector<int>& cand, const Tolerance& tol) {
    for (int h : cand) {
        const Disk& d = disks[h];
        if (d.id == s.from_disk || d.id == s.to_disk) continue;
        if (segment_circle_interior_intersect(s.p1, s.p2, d, tol))
            throw GeomError("NotSeparated", "required bitangent is blocked by disk " +
                                                std::to_string(d.id));
    }
}

Arc make_arc(const Disk& d, Point in_pt, Point out_pt, Orientation o) {
    Arc a;
    a.disk = d.id;
    a.center = d.c;
    a.radius = d.r;
    a.start_angle = normalize_angle(angle_of(in_pt - d.c));
    a.end_angle = normalize_angle(angle_of(out_pt - d.c));
    a.dir = o == Orientation::plus ? ArcDir::ccw : ArcDir::cw;
    return a;
}

// Rotating-ray sweep between rest[i] and rest[i+1]. The ray stays tangent to
// the current apex disk; tangency events with intermediate hull disks shift
// the apex, tangency events with the destination report a partial belt.
std::pair<PartialBelt, PartialBelt> sweep_pair(int i, const HullContext& ctx, Orientation start_o,
                                               const Tolerance& tol) {
    const auto& disks = ctx.disks;
    const Disk& A = disks[ctx.idx.rest[i]];
    const Disk& B = disks[ctx.idx.rest[i + 1]];
    std::vector<int> cand;
    for (int h : ctx.idx.hull)
        if (disks[h].c.x > A.c.x && disks[h].c.x < B.c.x) cand.push_back(h);

    TangentSegment s0 = select_bitangent(A, Orientation::plus, B, Orientation::plus, tol);
    double psi = angle_of(s0.p2 - s0.p1);
    if (start_o == Orientation::minus) psi += kPi;

    std::vector<Contact> via;
    std::vector<Point> via_in;           // arrival tangency per via contact
    std::vector<BeltPiece> chain;        // pieces shared by later reports
    std::vector<bool> used(cand.size(), false);
    const Disk* X = &A;
    Orientation sigma = start_o;

    std::optional<PartialBelt> lower, upper;
    auto report = [&](const TangentSegment& s, Orientation ob) {
        PartialBelt pb;
        pb.kind = lower ? PartialKind::upper : PartialKind::lower;
        pb.from_disk = A.id;
        pb.to_disk = B.id;
        pb.from_o = start_o;
        pb.to_o = ob;
        pb.via = via;
        pb.pieces = chain;
        if (X != &A) pb.pieces.push_back({make_arc(*X, via_in.back(), s.p1, sigma)});
        pb.pieces.push_back({s});
        pb.entry_point = pb.pieces.front().seg().p1;
        pb.exit_point = s.p2;
        (lower ? upper : lower) = std::move(pb);
    };

    if (start_o == Orientation::plus) {
        // The initial ray lies on the lower bitangent, tangent to the
        // destination from the start: that bitangent alone is the lower belt.
        check_unblocked(s0, disks, cand, tol);
        PartialBelt pb;
        pb.kind = PartialKind::lower;
        pb.from_disk = A.id;
        pb.to_disk = B.id;
        pb.from_o = Orientation::plus;
        pb.to_o = Orientation::plus;
        pb.entry_point = s0.p1;
        pb.exit_point = s0.p2;
        pb.pieces.push_back({s0});
        lower = std::move(pb);
    }

    int guard = 2 * static_cast<int>(cand.size()) + 8;
    while (!(lower && upper)) {
        if (--guard < 0) throw GeomError("NotSeparated", "ray sweep did not terminate");
        // Earliest tangency event in ccw ray order.
        double best_delta = kTau + 1.0;
        bool best_is_dest = false;
        size_t best_cand = 0;
        Orientation best_o = Orientation::plus;
        TangentSegment best_seg;
        auto consider = [&](const Disk& Y, Orientation oy, bool is_dest, size_t ci) {
            TangentSegment s = select_bitangent(*X, sigma, Y, oy, tol);
            double delta = normalize_angle(angle_of(s.p2 - s.p1) - psi);
            if (delta < 1e-7) delta = kTau;  // just fired / initial position
            bool better = delta < best_delta - 1e-9;
            if (!better && delta < best_delta + 1e-9) {
                // Simultaneous events: prefer hull disks, then smaller x.
                if (best_is_dest && !is_dest) better = true;
                else if (best_is_dest == is_dest && !is_dest &&
                         Y.c.x < disks[cand[best_cand]].c.x)
                    better = true;
            }
            if (better) {
                best_delta = delta;
                best_is_dest = is_dest;
                best_cand = ci;
                best_o = oy;
                best_seg = s;
            }
        };
        for (size_t ci = 0; ci < cand.size(); ++ci) {
            if (used[ci]) continue;
            for (Orientation oy : {Orientation::plus, Orientation::minus})
                consider(disks[cand[ci]], oy, false, ci);
        }
        for (Orientation oy : {Orientation::plus, Orientation::minus})
            consider(B, oy, true, 0);

        check_unblocked(best_seg, disks, cand, tol);
        psi = normalize_angle(psi + best_delta);
        if (best_is_dest) {
            report(best_seg, best_o);
        } else {
            if (X != &A) chain.push_back({make_arc(*X, via_in.back(), best_seg.p1, sigma)});
            chain.push_back({best_seg});
            used[best_cand] = true;
            via.push_back({disks[cand[best_cand]].id, best_o});
            via_in.push_back(best_seg.p2);
            X = &disks[cand[best_cand]];
            sigma = best_o;
        }
    }
    return {std::move(*lower), std::move(*upper)};
}

}  // namespace

std::pair<PartialBelt, PartialBelt> wind(int i, const HullContext& ctx, const Tolerance& tol) {
    return sweep_pair(i, ctx, Orientation::plus, tol);
}

std::pair<PartialBelt, PartialBelt> unwind(int i, const HullContext& ctx, const Tolerance& tol) {
    return sweep_pair(i, ctx, Orientation::minus, tol);
}

namespace {

// Sweep of the contact arc on d from in_pt to out_pt traversed with
// orientation o.
double contact_sweep(const Disk& d, Point in_pt, Point out_pt, Orientation o) {
    double phi_in = angle_of(in_pt - d.c);
    double phi_out = angle_of(out_pt - d.c);
    double s = o == Orientation::plus ? normalize_angle(phi_out - phi_in)
                                      : normalize_angle(phi_in - phi_out);
    if (s > kTau - 1e-6) s = 0.0;
    return s;
}

// Paste admissibility at d between its chain neighbors: the contact arc
// (from in_pt to out_pt with orientation o) must cover all of d's boundary
// except the parts facing prev and next, i.e. the untraversed arc must stay
// inside the union of the two facing arcs. The facing arc toward a neighbor
// is bounded by the outer-tangent touch points and is exactly the part of
// d's boundary interior to the hull of d and that neighbor; the rest of the
// boundary has to be swept or the joined chain would cut a corner across it.
bool paste_admissible(const Disk& d, const Disk& prev, const Disk& next, Point in_pt,
                      Point out_pt, Orientation o) {
    const double eps = 1e-9;
    double sweep = contact_sweep(d, in_pt, out_pt, o);
    double len = kTau - sweep;  // untraversed arc length
    if (len <= 2.0 * eps) return true;
    double phi_in = angle_of(in_pt - d.c);
    double phi_out = angle_of(out_pt - d.c);
    // The untraversed arc runs ccw from the traversed arc's ccw end.
    double a0 = o == Orientation::plus ? phi_out : phi_in;
    auto facing = [&](const Disk& nb) -> std::pair<double, double> {
        double beta =
            std::acos(std::clamp((d.r - nb.r) / dist(d.c, nb.c), -1.0, 1.0));
        double th = angle_of(nb.c - d.c);
        return {th - beta, th + beta};
    };
    std::array<std::pair<double, double>, 2> cover = {facing(prev), facing(next)};
    // Greedy interval cover of [a0, a0 + len] on the circle.
    double a = normalize_angle(a0 + eps);
    double rem = len - 2.0 * eps;
    for (int iter = 0; iter < 8 && rem > 0.0; ++iter) {
        double adv = 0.0;
        for (auto [lo, hi] : cover) {
            double t = normalize_angle(a - lo);
            if (t <= hi - lo + eps) adv = std::max(adv, hi - lo - t);
        }
        if (adv <= 0.0) return false;
        a = normalize_angle(a + adv);
        rem -= adv;
    }
    return rem <= 0.0;
}

BeltSpec hull_boundary_spec(const std::vector<Disk>& disks, const Tolerance& tol) {
    BeltSpec spec;
    spec.mode = BeltMode::multi_touch;
    std::vector<int> lower = half_hull(disks, Orientation::plus, tol);
    std::vector<int> upper = half_hull(disks, Orientation::minus, tol);
    for (int i : lower) spec.contacts.push_back({disks[i].id, Orientation::plus});
    // Upper hull right-to-left, interior only: both endpoints are already in
    // the lower chain.
    for (size_t j = upper.size() - 1; j >= 2; --j)
        spec.contacts.push_back({disks[upper[j - 1]].id, Orientation::plus});
    return spec;
}

}  // namespace

BeltSpec build_belt_spec(const SeparatedSequence& seq, const Tolerance& tol) {
    const auto& disks = seq.disks;
    BeltSpec spec;
    spec.mode = BeltMode::multi_touch;
    size_t n = disks.size();
    if (n == 0) return spec;
    if (n == 1) {
        spec.contacts.push_back({disks[0].id, Orientation::plus});
        return spec;
    }
    HullContext ctx = make_hull_context(seq, tol);
    const auto& rest = ctx.idx.rest;
    if (rest.size() <= 2) return hull_boundary_spec(disks, tol);

    // One sweep variant per step: the DP state is which variant connects
    // rest[i] to rest[i+1]. Tracking the variant (not just its arrival
    // orientation) matters because the feasibility of the next paste depends
    // on the exact arrival tangency point; parent pointers keep it linear.
    struct Variant {
        Orientation from_o, to_o;
        Point entry, exit;
        TangentSegment first_seg, last_seg;
        std::vector<Contact> via;
    };
    int k = static_cast<int>(rest.size()) - 1;
    std::vector<std::array<Variant, 4>> steps(k);
    for (int i = 0; i < k; ++i) {
        auto [wl, wu] = wind(i, ctx, tol);
        auto [ul, uu] = unwind(i, ctx, tol);
        const PartialBelt* parts[4] = {&wl, &wu, &ul, &uu};
        for (int p = 0; p < 4; ++p)
            steps[i][p] = {parts[p]->from_o,           parts[p]->to_o,
                           parts[p]->entry_point,      parts[p]->exit_point,
                           parts[p]->pieces.front().seg(), parts[p]->pieces.back().seg(),
                           parts[p]->via};
    }

    // ok[o0][p]: a chain up to the current step exists that departs the
    // leftmost disk with orientation o0 and uses variant p for its last sweep.
    auto oi = [](Orientation o) { return o == Orientation::plus ? 0 : 1; };
    std::array<std::array<bool, 4>, 2> ok{};
    std::vector<std::array<std::array<int8_t, 4>, 2>> parent(k);
    for (int p = 0; p < 4; ++p) ok[oi(steps[0][p].from_o)][p] = true;
    for (int i = 1; i < k; ++i) {
        const Disk& Di = disks[rest[i]];
        std::array<std::array<bool, 4>, 2> next{};
        for (int p = 0; p < 4; ++p)
            for (int o0 = 0; o0 < 2; ++o0) {
                parent[i][o0][p] = -1;
                for (int q = 0; q < 4; ++q) {
                    if (!ok[o0][q] || steps[i - 1][q].to_o != steps[i][p].from_o) continue;
                    if (!paste_admissible(Di, disks[rest[i - 1]], disks[rest[i + 1]],
                                          steps[i - 1][q].exit, steps[i][p].entry,
                                          steps[i][p].from_o))
                        continue;
                    // The tangent segments flanking the pasted arc must not
                    // cross each other (they can when the arc wraps past pi).
                    const TangentSegment& ls = steps[i - 1][q].last_seg;
                    const TangentSegment& rs = steps[i][p].first_seg;
                    if (!segment_segment_intersect(ls.p1, ls.p2, rs.p1, rs.p2, tol).empty())
                        continue;
                    next[o0][p] = true;
                    parent[i][o0][p] = static_cast<int8_t>(q);
                    break;
                }
            }
        ok = next;
    }

    // Tangent to the lower sides of both ends: plus departure at the leftmost
    // disk and plus arrival at the rightmost.
    int last = -1;
    for (int p = 0; p < 4 && last < 0; ++p)
        if (ok[0][p] && steps[k - 1][p].to_o == Orientation::plus) last = p;
    if (last < 0) throw GeomError("NotSeparated", "no lower-tangent belt at both ends");
    std::vector<int> chosen(k);
    chosen[k - 1] = last;
    for (int i = k - 1; i > 0; --i) chosen[i - 1] = parent[i][0][chosen[i]];

    spec.contacts.push_back({disks[rest[0]].id, Orientation::plus});
    for (int i = 0; i < k; ++i) {
        const Variant& v = steps[i][chosen[i]];
        if (i > 0) spec.contacts.push_back({disks[rest[i]].id, v.from_o});
        spec.contacts.insert(spec.contacts.end(), v.via.begin(), v.via.end());
    }
    spec.contacts.push_back({disks[rest[k]].id, Orientation::plus});
    for (auto it = ctx.idx.hull.rbegin(); it != ctx.idx.hull.rend(); ++it)
        spec.contacts.push_back({disks[*it].id, Orientation::plus});
    return spec;
}

BeltCurve build_belt(const SeparatedSequence& seq, const Tolerance& tol) {
    return realize(build_belt_spec(seq, tol), seq.disks, tol);
}

bool is_bitonic_x(const BeltSpec& spec, const std::vector<Disk>& disks) {
    std::map<int, double> x;
    for (const Disk& d : disks) x[d.id] = d.c.x;
    std::vector<double> xs;
    for (const Contact& c : spec.contacts) xs.push_back(x.at(c.disk));
    // Strip cyclically-adjacent duplicates.
    std::vector<double> s;
    for (double v : xs)
        if (s.empty() || v != s.back()) s.push_back(v);
    while (s.size() > 1 && s.front() == s.back()) s.pop_back();
    size_t m = s.size();
    if (m <= 2) return true;
    int changes = 0;
    for (size_t i = 0; i < m; ++i) {
        double d1 = s[(i + 1) % m] - s[i];
        double d2 = s[(i + 2) % m] - s[(i + 1) % m];
        if ((d1 > 0) != (d2 > 0)) ++changes;
    }
    return changes == 2;
}

std::optional<BeltSpec> bitonic_dp(const std::vector<Disk>& disks_in, const Tolerance& tol) {
    std::vector<Disk> disks = disks_in;
    std::sort(disks.begin(), disks.end(),
              [](const Disk& a, const Disk& b) { return a.c.x < b.c.x; });
    int n = static_cast<int>(disks.size());
    if (n == 0) return std::nullopt;
    if (n == 1) {
        BeltSpec spec;
        spec.contacts.push_back({disks[0].id, Orientation::plus});
        return spec;
    }

    // State at layer j (last assigned disk): the other chain ends at i with
    // orientation oi; disk j has orientation oj and sits on chain cj
    // (0 = traversed in +x direction, 1 = in -x direction).
    struct Node {
        int j, i;
        int oi, oj, cj;
        bool operator<(const Node& o) const {
            return std::tie(j, i, oi, oj, cj) < std::tie(o.j, o.i, o.oi, o.oj, o.cj);
        }
    };
    auto as_o = [](int v) { return v == 0 ? Orientation::plus : Orientation::minus; };
    auto edge_ok = [&](int p, int op, int q, int oq, int chain) {
        // p < q; ascending chain traverses p->q, descending q->p.
        try {
            TangentSegment s =
                chain == 0 ? select_bitangent(disks[p], as_o(op), disks[q], as_o(oq), tol)
                           : select_bitangent(disks[q], as_o(oq), disks[p], as_o(op), tol);
            return !is_blocked(s, disks, tol);
        } catch (const GeomError&) {
            return false;
        }
    };

    std::map<Node, std::vector<Node>> parents;
    std::vector<std::set<Node>> layer(n);
    for (int o0 = 0; o0 < 2; ++o0)
        for (int o1 = 0; o1 < 2; ++o1)
            for (int c1 = 0; c1 < 2; ++c1)
                if (edge_ok(0, o0, 1, o1, c1)) {
                    Node nd{1, 0, o0, o1, c1};
                    layer[1].insert(nd);
                    parents[nd];
                }
    for (int j = 1; j + 1 < n; ++j) {
        int q = j + 1;
        for (const Node& nd : layer[j]) {
            for (int oq = 0; oq < 2; ++oq) {
                if (edge_ok(nd.j, nd.oj, q, oq, nd.cj)) {
                    Node c{q, nd.i, nd.oi, oq, nd.cj};
                    layer[q].insert(c);
                    parents[c].push_back(nd);
                }
                if (edge_ok(nd.i, nd.oi, q, oq, 1 - nd.cj)) {
                    Node c{q, nd.j, nd.oj, oq, 1 - nd.cj};
                    layer[q].insert(c);
                    parents[c].push_back(nd);
                }
            }
        }
    }

    // Enumerate completion paths, realize and verify until one passes.
    long budget = 20000;
    std::vector<Node> path;
    auto emit = [&]() -> std::optional<BeltSpec> {
        // path runs from layer n-1 down to layer 1.
        std::vector<int> chain_of(n, 0), o_of(n, 0);
        for (const Node& nd : path) {
            chain_of[nd.j] = nd.cj;
            o_of[nd.j] = nd.oj;
        }
        const Node& first = path.back();
        o_of[0] = first.oi;
        BeltSpec spec;
        spec.contacts.push_back({disks[0].id, as_o(o_of[0])});
        for (int d = 1; d + 1 < n; ++d)
            if (chain_of[d] == 0) spec.contacts.push_back({disks[d].id, as_o(o_of[d])});
        spec.contacts.push_back({disks[n - 1].id, as_o(o_of[n - 1])});
        for (int d = n - 2; d >= 1; --d)
            if (chain_of[d] == 1) spec.contacts.push_back({disks[d].id, as_o(o_of[d])});
        try {
            BeltCurve curve = realize(spec, disks, tol);
            if (verify(curve, disks, BeltMode::one_touch, tol).valid) return spec;
        } catch (const GeomError&) {
        }
        return std::nullopt;
    };

    std::optional<BeltSpec> found;
    std::function<void(const Node&)> dfs = [&](const Node& nd) {
        if (found || budget <= 0) return;
        path.push_back(nd);
        if (nd.j == 1) {
            --budget;
            found = emit();
        } else {
            for (const Node& p : parents[nd]) {
                dfs(p);
                if (found || budget <= 0) break;
            }
        }
        path.pop_back();
    };
    for (const Node& nd : layer[n - 1]) {
        // Close the other chain directly into the rightmost disk.
        if (!edge_ok(nd.i, nd.oi, n - 1, nd.oj, 1 - nd.cj)) continue;
        dfs(nd);
        if (found) break;
    }
    return found;
}

}  // namespace belts
