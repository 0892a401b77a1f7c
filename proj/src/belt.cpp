#include "belts/belt.hpp"

#include <algorithm>
#include <map>

namespace belts {

const char* to_string(FailureCode c) {
    switch (c) {
        case FailureCode::NOT_SIMPLE: return "NOT_SIMPLE";
        case FailureCode::NOT_C1: return "NOT_C1";
        case FailureCode::INTERIOR_HIT: return "INTERIOR_HIT";
        case FailureCode::MISSED_DISK: return "MISSED_DISK";
        case FailureCode::MULTI_TOUCH_IN_ONE_TOUCH_MODE: return "MULTI_TOUCH_IN_ONE_TOUCH_MODE";
        case FailureCode::BLOCKED_BITANGENT: return "BLOCKED_BITANGENT";
        case FailureCode::BROKEN_CHAIN: return "BROKEN_CHAIN";
    }
    return "?";
}

Point piece_start(const BeltPiece& p) {
    return p.is_arc() ? arc_start(p.arc()) : p.seg().p1;
}
Point piece_end(const BeltPiece& p) {
    return p.is_arc() ? arc_end(p.arc()) : p.seg().p2;
}
Point piece_start_dir(const BeltPiece& p) {
    return p.is_arc() ? arc_start_dir(p.arc()) : normalized(p.seg().p2 - p.seg().p1);
}
Point piece_end_dir(const BeltPiece& p) {
    return p.is_arc() ? arc_end_dir(p.arc()) : normalized(p.seg().p2 - p.seg().p1);
}

bool piece_is_degenerate(const BeltPiece& p, double eps) {
    if (p.is_arc()) {
        const Arc& a = p.arc();
        if (a.full_circle) return false;
        return arc_sweep(a) * a.radius <= eps;
    }
    return dist(p.seg().p1, p.seg().p2) <= eps;
}

TangentSegment select_bitangent(const Disk& a, Orientation oa, const Disk& b, Orientation ob,
                                const Tolerance& tol) {
    auto four = bitangents(a, b, tol);
    auto want_dir = [](const Disk& d, Orientation o, Point p) {
        Point t = rot90(normalized(p - d.c));
        return o == Orientation::plus ? t : Point{-t.x, -t.y};
    };
    const TangentSegment* best = nullptr;
    double best_score = -2.0;
    for (const TangentSegment& s : four) {
        Point dir = normalized(s.p2 - s.p1);
        double sa = dot(dir, want_dir(a, oa, s.p1));
        double sb = dot(dir, want_dir(b, ob, s.p2));
        double score = std::min(sa, sb);
        if (score > best_score) {
            best_score = score;
            best = &s;
        }
    }
    if (!best || best_score < 0.5)
        throw GeomError("AmbiguousDegenerate", "no orientation-consistent bitangent");
    return *best;
}

BeltCurve realize(const BeltSpec& spec, const std::vector<Disk>& disks, const Tolerance& tol) {
    std::map<int, Disk> by_id;
    for (const Disk& d : disks) by_id[d.id] = d;
    auto get = [&](int id) -> const Disk& {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw GeomError("UnknownDisk", "contact references unknown disk id");
        return it->second;
    };

    BeltCurve curve;
    size_t n = spec.contacts.size();
    if (n == 0) return curve;
    if (n == 1) {
        const Disk& d = get(spec.contacts[0].disk);
        Arc a;
        a.disk = d.id;
        a.center = d.c;
        a.radius = d.r;
        a.dir = spec.contacts[0].orientation == Orientation::plus ? ArcDir::ccw : ArcDir::cw;
        a.full_circle = true;
        curve.pieces.push_back({a});
        return curve;
    }

    std::vector<TangentSegment> segs(n);
    for (size_t i = 0; i < n; ++i) {
        const Contact& ca = spec.contacts[i];
        const Contact& cb = spec.contacts[(i + 1) % n];
        if (ca.disk == cb.disk)
            throw GeomError("AmbiguousDegenerate", "consecutive contacts on the same disk");
        segs[i] = select_bitangent(get(ca.disk), ca.orientation, get(cb.disk), cb.orientation, tol);
    }
    for (size_t i = 0; i < n; ++i) {
        const Contact& c = spec.contacts[i];
        const Disk& d = get(c.disk);
        Point q_in = segs[(i + n - 1) % n].p2;
        Point q_out = segs[i].p1;
        Arc a;
        a.disk = d.id;
        a.center = d.c;
        a.radius = d.r;
        a.start_angle = normalize_angle(angle_of(q_in - d.c));
        a.end_angle = normalize_angle(angle_of(q_out - d.c));
        a.dir = c.orientation == Orientation::plus ? ArcDir::ccw : ArcDir::cw;
        curve.pieces.push_back({a});
        curve.pieces.push_back({segs[i]});
    }
    return curve;
}

namespace {

struct Box {
    double x0, y0, x1, y1;
    bool overlaps(const Box& o, double eps) const {
        return x0 <= o.x1 + eps && o.x0 <= x1 + eps && y0 <= o.y1 + eps && o.y0 <= y1 + eps;
    }
};

Box piece_box(const BeltPiece& p) {
    if (!p.is_arc()) {
        const auto& s = p.seg();
        return {std::min(s.p1.x, s.p2.x), std::min(s.p1.y, s.p2.y),
                std::max(s.p1.x, s.p2.x), std::max(s.p1.y, s.p2.y)};
    }
    const Arc& a = p.arc();
    if (a.full_circle)
        return {a.center.x - a.radius, a.center.y - a.radius,
                a.center.x + a.radius, a.center.y + a.radius};
    Point s = arc_start(a), e = arc_end(a);
    Box b{std::min(s.x, e.x), std::min(s.y, e.y), std::max(s.x, e.x), std::max(s.y, e.y)};
    // Extend to axis extremes covered by the arc.
    const double axes[4] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    for (double th : axes) {
        if (angle_on_arc(a, th)) {
            Point q = arc_point(a, th);
            b.x0 = std::min(b.x0, q.x);
            b.y0 = std::min(b.y0, q.y);
            b.x1 = std::max(b.x1, q.x);
            b.y1 = std::max(b.y1, q.y);
        }
    }
    return b;
}

IntersectionReport piece_intersect(const BeltPiece& a, const BeltPiece& b, const Tolerance& tol) {
    if (a.is_arc() && b.is_arc()) return arc_arc_intersect(a.arc(), b.arc(), tol);
    if (!a.is_arc() && !b.is_arc())
        return segment_segment_intersect(a.seg().p1, a.seg().p2, b.seg().p1, b.seg().p2, tol);
    const BeltPiece& seg = a.is_arc() ? b : a;
    const BeltPiece& arc = a.is_arc() ? a : b;
    return segment_arc_intersect(seg.seg().p1, seg.seg().p2, arc.arc(), tol);
}

}  // namespace

VerificationReport verify(const BeltCurve& curve, const std::vector<Disk>& disks, BeltMode mode,
                          const Tolerance& tol) {
    VerificationReport rep;
    auto fail = [&](FailureCode code, std::string detail, int i = -1, int j = -1) {
        rep.valid = false;
        rep.failures.push_back({code, std::move(detail), i, j});
    };

    const auto& pieces = curve.pieces;
    int m = static_cast<int>(pieces.size());
    if (m == 0) {
        fail(FailureCode::BROKEN_CHAIN, "empty curve");
        return rep;
    }

    std::vector<bool> degen(m);
    for (int i = 0; i < m; ++i) degen[i] = piece_is_degenerate(pieces[i], tol.eps);

    // Chain continuity. The shared junction point is used by later checks.
    double chain_eps = std::max(tol.eps, 1e-9);
    if (m > 1) {
        for (int i = 0; i < m; ++i) {
            int j = (i + 1) % m;
            if (dist(piece_end(pieces[i]), piece_start(pieces[j])) > chain_eps)
                fail(FailureCode::BROKEN_CHAIN, "consecutive pieces do not share an endpoint", i, j);
        }
    }

    // C1 smoothness across junctions; degenerate pieces are transparent.
    if (m > 1) {
        for (int i = 0; i < m; ++i) {
            if (degen[i]) continue;
            // Find the next non-degenerate piece.
            int j = (i + 1) % m;
            while (j != i && degen[j]) j = (j + 1) % m;
            if (j == i) break;
            Point u = piece_end_dir(pieces[i]);
            Point v = piece_start_dir(pieces[j]);
            double misalign = std::atan2(std::abs(cross(u, v)), dot(u, v));
            if (!(misalign <= tol.eps_ang))
                fail(FailureCode::NOT_C1, "tangent directions differ at junction", i, j);
        }
    }

    // Simplicity. Pieces separated only by degenerate pieces count as
    // adjacent and may meet at the shared junction point only.
    std::vector<Box> boxes(m);
    for (int i = 0; i < m; ++i) boxes[i] = piece_box(pieces[i]);
    auto adjacency_gap = [&](int i, int j) -> std::optional<Point> {
        // Returns the junction point if j follows i with only degenerate
        // pieces in between (in one cyclic direction).
        int k = (i + 1) % m;
        while (k != j && degen[k]) k = (k + 1) % m;
        if (k == j) return piece_end(pieces[i]);
        k = (j + 1) % m;
        while (k != i && degen[k]) k = (k + 1) % m;
        if (k == i) return piece_end(pieces[j]);
        return std::nullopt;
    };
    double touch_eps = std::max(tol.eps * 10, 1e-7);
    for (int i = 0; i < m; ++i) {
        if (degen[i]) continue;
        for (int j = i + 1; j < m; ++j) {
            if (degen[j]) continue;
            if (!boxes[i].overlaps(boxes[j], touch_eps)) continue;
            auto junction = adjacency_gap(i, j);
            IntersectionReport x = piece_intersect(pieces[i], pieces[j], tol);
            if (x.empty()) continue;
            if (!junction) {
                fail(FailureCode::NOT_SIMPLE, "non-consecutive pieces intersect", i, j);
                continue;
            }
            if (x.overlap) {
                fail(FailureCode::NOT_SIMPLE, "consecutive pieces overlap", i, j);
                continue;
            }
            bool all_at_junction = true;
            // Both cyclic gaps may be degenerate (e.g. a two-piece belt);
            // accept either junction point.
            Point j1 = *junction;
            Point j2 = piece_end(pieces[j]);
            Point j3 = piece_end(pieces[i]);
            for (const Point& p : x.points) {
                if (dist(p, j1) > touch_eps && dist(p, j2) > touch_eps && dist(p, j3) > touch_eps)
                    all_at_junction = false;
            }
            if (!all_at_junction)
                fail(FailureCode::NOT_SIMPLE, "consecutive pieces intersect away from junction", i,
                     j);
        }
    }

    // Interior disjointness.
    for (int i = 0; i < m; ++i) {
        if (degen[i]) continue;
        const BeltPiece& p = pieces[i];
        for (const Disk& d : disks) {
            Box db{d.c.x - d.r, d.c.y - d.r, d.c.x + d.r, d.c.y + d.r};
            if (!boxes[i].overlaps(db, tol.eps)) continue;
            if (!p.is_arc()) {
                const auto& s = p.seg();
                if (d.id == s.from_disk || d.id == s.to_disk) continue;
                if (segment_circle_interior_intersect(s.p1, s.p2, d, tol))
                    fail(FailureCode::BLOCKED_BITANGENT,
                         "bitangent passes through disk " + std::to_string(d.id), i);
            } else {
                const Arc& a = p.arc();
                if (d.id == a.disk) continue;
                if (point_arc_distance(d.c, a) < d.r - tol.eps)
                    fail(FailureCode::INTERIOR_HIT,
                         "arc enters interior of disk " + std::to_string(d.id), i);
            }
        }
    }

    // Coverage: every disk touched; merge runs of arcs on one disk that are
    // separated only by degenerate pieces.
    {
        std::vector<std::pair<int, int>> touches;  // (disk, first piece index)
        for (int i = 0; i < m; ++i)
            if (pieces[i].is_arc()) touches.push_back({pieces[i].arc().disk, i});
        auto gap_degenerate = [&](int pa, int pb) {
            int k = (pa + 1) % m;
            while (k != pb) {
                if (!degen[k]) return false;
                k = (k + 1) % m;
            }
            return true;
        };
        std::vector<std::pair<int, int>> merged;
        for (auto& t : touches) {
            if (!merged.empty() && merged.back().first == t.first &&
                gap_degenerate(merged.back().second, t.second)) {
                merged.back().second = t.second;
                continue;
            }
            merged.push_back(t);
        }
        if (merged.size() > 1 && merged.front().first == merged.back().first &&
            gap_degenerate(merged.back().second, merged.front().second)) {
            merged.pop_back();
        }
        std::map<int, int> count;
        for (auto& t : merged) count[t.first]++;
        for (const Disk& d : disks) {
            auto it = count.find(d.id);
            if (it == count.end())
                fail(FailureCode::MISSED_DISK, "disk " + std::to_string(d.id) + " not touched");
            else if (mode == BeltMode::one_touch && it->second > 1)
                fail(FailureCode::MULTI_TOUCH_IN_ONE_TOUCH_MODE,
                     "disk " + std::to_string(d.id) + " touched " + std::to_string(it->second) +
                         " times");
        }
    }

    std::stable_sort(rep.failures.begin(), rep.failures.end(),
                     [](const Failure& a, const Failure& b) { return a.piece_a < b.piece_a; });
    return rep;
}

BeltSpec polygonalization_belt(const std::vector<Disk>& disks, const Tolerance& tol) {
    size_t n = disks.size();
    BeltSpec spec;
    spec.mode = BeltMode::one_touch;
    if (n == 0) return spec;
    if (n == 1) {
        spec.contacts.push_back({disks[0].id, Orientation::plus});
        return spec;
    }

    // Pivot: bottom-most center (a hull vertex), remaining centers in radial
    // order around it.
    size_t pivot = 0;
    for (size_t i = 1; i < n; ++i) {
        if (disks[i].c.y < disks[pivot].c.y ||
            (disks[i].c.y == disks[pivot].c.y && disks[i].c.x < disks[pivot].c.x))
            pivot = i;
    }
    std::vector<size_t> order;
    for (size_t i = 0; i < n; ++i)
        if (i != pivot) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        double aa = angle_of(disks[a].c - disks[pivot].c);
        double ab = angle_of(disks[b].c - disks[pivot].c);
        if (aa != ab) return aa < ab;
        return norm(disks[a].c - disks[pivot].c) < norm(disks[b].c - disks[pivot].c);
    });
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        Point u = disks[order[i]].c - disks[pivot].c;
        Point v = disks[order[i + 1]].c - disks[pivot].c;
        if (std::abs(cross(normalized(u), normalized(v))) <= tol.eps)
            throw GeomError("CollinearCenters", "three centers are collinear");
    }

    std::vector<size_t> poly;
    poly.push_back(pivot);
    for (size_t i : order) poly.push_back(i);

    for (size_t i = 0; i < poly.size(); ++i) {
        Point prev = disks[poly[(i + poly.size() - 1) % poly.size()]].c;
        Point cur = disks[poly[i]].c;
        Point next = disks[poly[(i + 1) % poly.size()]].c;
        double turn = cross(cur - prev, next - cur);
        if (n > 2 && std::abs(turn) <= tol.eps * norm(cur - prev) * norm(next - cur))
            throw GeomError("CollinearCenters", "degenerate turn in polygonalization");
        Orientation o = (n == 2 || turn > 0) ? Orientation::plus : Orientation::minus;
        spec.contacts.push_back({disks[poly[i]].id, o});
    }
    return spec;
}

BeltSpec canonicalize(const BeltSpec& spec) {
    size_t n = spec.contacts.size();
    if (n <= 1) return spec;
    auto key = [](const Contact& c) {
        return std::pair<int, int>(c.disk, c.orientation == Orientation::plus ? 0 : 1);
    };
    auto less = [&](const std::vector<Contact>& a, const std::vector<Contact>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            auto ka = key(a[i]), kb = key(b[i]);
            if (ka != kb) return ka < kb;
        }
        return false;
    };
    // Quotient by cyclic rotation, sequence reversal, and global orientation
    // flip (and their composition): reversal-with-flip is the same curve
    // traversed backward, and the global flip is normalized away so that
    // counting matches the sign-pattern accounting.
    std::vector<Contact> variants[4];
    variants[0] = spec.contacts;
    variants[1].assign(spec.contacts.rbegin(), spec.contacts.rend());
    for (int v = 0; v < 2; ++v) {
        variants[v + 2] = variants[v];
        for (Contact& c : variants[v + 2]) c.orientation = flipped(c.orientation);
    }
    std::vector<Contact> best;
    for (const auto& base : variants) {
        for (size_t r = 0; r < n; ++r) {
            std::vector<Contact> cand(n);
            for (size_t i = 0; i < n; ++i) cand[i] = base[(r + i) % n];
            if (best.empty() || less(cand, best)) best = std::move(cand);
        }
    }
    BeltSpec out;
    out.contacts = std::move(best);
    out.mode = spec.mode;
    return out;
}

}  // namespace belts
