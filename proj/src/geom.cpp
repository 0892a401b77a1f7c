#include "belts/geom.hpp"

#include <algorithm>

namespace belts {

const char* to_string(TangentKind k) {
    switch (k) {
        case TangentKind::upper: return "upper";
        case TangentKind::lower: return "lower";
        case TangentKind::inner_a: return "inner_a";
        case TangentKind::inner_b: return "inner_b";
    }
    return "?";
}

double arc_sweep(const Arc& a) {
    if (a.full_circle) return kTau;
    double s = a.dir == ArcDir::ccw ? a.end_angle - a.start_angle : a.start_angle - a.end_angle;
    s = std::fmod(s, kTau);
    if (s < 0) s += kTau;
    return s;
}

bool angle_on_arc(const Arc& a, double angle, double ang_eps) {
    if (a.full_circle) return true;
    double off = a.dir == ArcDir::ccw ? angle - a.start_angle : a.start_angle - angle;
    off = std::fmod(off, kTau);
    if (off < 0) off += kTau;
    double sweep = arc_sweep(a);
    return off <= sweep + ang_eps || off >= kTau - ang_eps;
}

Point arc_start_dir(const Arc& a) {
    Point radial = normalized(arc_start(a) - a.center);
    Point t = rot90(radial);
    return a.dir == ArcDir::ccw ? t : Point{-t.x, -t.y};
}

Point arc_end_dir(const Arc& a) {
    Point radial = normalized(arc_end(a) - a.center);
    Point t = rot90(radial);
    return a.dir == ArcDir::ccw ? t : Point{-t.x, -t.y};
}

std::array<TangentSegment, 4> bitangents(const Disk& d1, const Disk& d2, const Tolerance& tol) {
    double d = dist(d1.c, d2.c);
    if (d + std::min(d1.r, d2.r) <= std::max(d1.r, d2.r) + tol.eps)
        throw GeomError("Containment", "one disk contains the other");
    if (d <= d1.r + d2.r + tol.eps)
        throw GeomError("OverlappingDisks", "disks are not disjoint");

    Point u = normalized(d2.c - d1.c);
    Point v = rot90(u);

    std::array<TangentSegment, 4> out{};
    int idx = 0;
    // Outer pair: unit normal n with n.(c2-c1) = r1 - r2, tangency c_i + r_i n.
    {
        double cosphi = (d1.r - d2.r) / d;
        double sinphi = std::sqrt(std::max(0.0, 1.0 - cosphi * cosphi));
        for (double s : {+1.0, -1.0}) {
            Point n = cosphi * u + (s * sinphi) * v;
            TangentSegment seg;
            seg.from_disk = d1.id;
            seg.to_disk = d2.id;
            seg.p1 = d1.c + d1.r * n;
            seg.p2 = d2.c + d2.r * n;
            double side = cross(d2.c - d1.c, seg.p1 - d1.c);
            seg.kind = side > 0 ? TangentKind::upper : TangentKind::lower;
            out[idx++] = seg;
        }
    }
    // Inner pair: n.(c2-c1) = r1 + r2, tangency c1 + r1 n and c2 - r2 n.
    {
        double cosphi = (d1.r + d2.r) / d;
        double sinphi = std::sqrt(std::max(0.0, 1.0 - cosphi * cosphi));
        for (double s : {+1.0, -1.0}) {
            Point n = cosphi * u + (s * sinphi) * v;
            TangentSegment seg;
            seg.from_disk = d1.id;
            seg.to_disk = d2.id;
            seg.p1 = d1.c + d1.r * n;
            seg.p2 = d2.c - d2.r * n;
            double side = cross(d2.c - d1.c, seg.p1 - d1.c);
            seg.kind = side > 0 ? TangentKind::inner_b : TangentKind::inner_a;
            out[idx++] = seg;
        }
    }
    // Fixed order: upper, lower, inner_a, inner_b.
    std::sort(out.begin(), out.end(), [](const TangentSegment& a, const TangentSegment& b) {
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return out;
}

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

bool is_blocked(const TangentSegment& seg, const std::vector<Disk>& disks, const Tolerance& tol) {
    for (const Disk& d : disks) {
        if (d.id == seg.from_disk || d.id == seg.to_disk) continue;
        if (point_segment_distance(d.c, seg.p1, seg.p2) < d.r - tol.eps) return true;
    }
    return false;
}

double hull_signed_distance(Point p, const Disk& a, const Disk& b) {
    Point dc = b.c - a.c;
    double dr = b.r - a.r;
    auto f = [&](double t) { return dist(p, a.c + t * dc) - (a.r + t * dr); };
    // f is convex in t; golden-section search on [0,1].
    double lo = 0.0, hi = 1.0;
    const double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo); f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo); f2 = f(x2);
        }
    }
    return std::min({f(lo), f1, f2, f(hi)});
}

bool disjoint_from_hull(const Disk& d, const Disk& a, const Disk& b, const Tolerance& tol) {
    return hull_signed_distance(d.c, a, b) >= d.r - tol.eps;
}

double point_arc_distance(Point p, const Arc& a) {
    Point rel = p - a.center;
    double rho = norm(rel);
    if (rho < 1e-300) return a.radius;
    double theta = normalize_angle(angle_of(rel));
    if (angle_on_arc(a, theta)) return std::abs(rho - a.radius);
    return std::min(dist(p, arc_start(a)), dist(p, arc_end(a)));
}

namespace {

void push_unique(std::vector<Point>& pts, Point p, double eps) {
    for (const Point& q : pts)
        if (dist(p, q) <= eps) return;
    pts.push_back(p);
}

}  // namespace

IntersectionReport segment_segment_intersect(Point a1, Point a2, Point b1, Point b2,
                                             const Tolerance& tol) {
    IntersectionReport rep;
    Point da = a2 - a1, db = b2 - b1;
    double denom = cross(da, db);
    double la = norm(da), lb = norm(db);
    double scale = std::max({la, lb, 1.0});

    if (std::abs(denom) > 1e-12 * la * lb) {
        // Proper line crossing.
        double t = cross(b1 - a1, db) / denom;
        double u = cross(b1 - a1, da) / denom;
        double slack_a = la > 0 ? tol.eps / la : 0.0;
        double slack_b = lb > 0 ? tol.eps / lb : 0.0;
        if (t >= -slack_a && t <= 1 + slack_a && u >= -slack_b && u <= 1 + slack_b) {
            push_unique(rep.points, a1 + t * da, tol.eps);
        }
    } else {
        // Nearly parallel. Check for collinear overlap.
        double off = la > 0 ? std::abs(cross(da, b1 - a1)) / la : dist(a1, b1);
        if (off <= tol.eps) {
            double t1 = la > 0 ? dot(b1 - a1, da) / (la * la) : 0.0;
            double t2 = la > 0 ? dot(b2 - a1, da) / (la * la) : 0.0;
            double lo = std::max(0.0, std::min(t1, t2));
            double hi = std::min(1.0, std::max(t1, t2));
            if (hi - lo > tol.eps / std::max(la, 1e-300)) {
                rep.overlap = true;
                rep.points.push_back(a1 + lo * da);
                rep.points.push_back(a1 + hi * da);
                return rep;
            }
        }
    }
    // Near-touches at endpoints (covers tangential contacts the line solve misses).
    for (Point p : {b1, b2})
        if (point_segment_distance(p, a1, a2) <= tol.eps) push_unique(rep.points, p, tol.eps);
    for (Point p : {a1, a2})
        if (point_segment_distance(p, b1, b2) <= tol.eps) push_unique(rep.points, p, tol.eps);
    (void)scale;
    return rep;
}

IntersectionReport segment_arc_intersect(Point a, Point b, const Arc& arc, const Tolerance& tol) {
    IntersectionReport rep;
    Point d = b - a;
    double len = norm(d);
    if (len < 1e-300) {
        if (std::abs(dist(a, arc.center) - arc.radius) <= tol.eps &&
            angle_on_arc(arc, angle_of(a - arc.center), 1e-7))
            rep.points.push_back(a);
        return rep;
    }
    Point u = {d.x / len, d.y / len};
    Point rel = arc.center - a;
    double proj = dot(rel, u);
    double perp = cross(u, rel);  // signed distance from line to center
    double r2 = arc.radius * arc.radius - perp * perp;
    if (r2 > -tol.eps * arc.radius) {
        double h = std::sqrt(std::max(0.0, r2));
        for (double s : {-1.0, +1.0}) {
            double t = proj + s * h;
            if (t < -tol.eps || t > len + tol.eps) continue;
            Point p = a + t * u;
            double theta = angle_of(p - arc.center);
            if (angle_on_arc(arc, theta, tol.eps / std::max(arc.radius, 1e-12)))
                push_unique(rep.points, p, tol.eps);
            if (h < 1e-12) break;  // tangent line, single point
        }
    }
    // Arc endpoints lying on the segment.
    if (!arc.full_circle) {
        for (Point p : {arc_start(arc), arc_end(arc)})
            if (point_segment_distance(p, a, b) <= tol.eps) push_unique(rep.points, p, tol.eps);
    }
    return rep;
}

IntersectionReport arc_arc_intersect(const Arc& a, const Arc& b, const Tolerance& tol) {
    IntersectionReport rep;
    double d = dist(a.center, b.center);
    bool same_circle = d <= tol.eps && std::abs(a.radius - b.radius) <= tol.eps;
    if (same_circle) {
        // Angular interval overlap on a common circle.
        auto interval = [](const Arc& x) {
            double s = x.dir == ArcDir::ccw ? x.start_angle : x.end_angle;
            return std::pair<double, double>{s, arc_sweep(x)};
        };
        auto [sa, wa] = interval(a);
        auto [sb, wb] = interval(b);
        if (a.full_circle) { wa = kTau; }
        if (b.full_circle) { wb = kTau; }
        // Overlap length of [sa, sa+wa] and [sb, sb+wb] on the circle.
        double best = 0.0;
        for (double shift : {0.0, kTau, -kTau}) {
            double lo = std::max(sa, sb + shift);
            double hi = std::min(sa + wa, sb + shift + wb);
            best = std::max(best, hi - lo);
        }
        double ang_eps = tol.eps / std::max(a.radius, 1e-12);
        if (best > ang_eps) {
            rep.overlap = true;
            return rep;
        }
        if (best > -ang_eps) {
            // Endpoint touch.
            for (Point p : {arc_start(a), arc_end(a)}) {
                double th = angle_of(p - b.center);
                if (std::abs(dist(p, b.center) - b.radius) <= tol.eps &&
                    angle_on_arc(b, th, ang_eps))
                    push_unique(rep.points, p, tol.eps);
            }
        }
        return rep;
    }
    if (d < 1e-300) return rep;  // concentric distinct radii
    double r1 = a.radius, r2 = b.radius;
    if (d > r1 + r2 + tol.eps || d < std::abs(r1 - r2) - tol.eps) {
        // Circles may still nearly touch; handled by the clamp below.
    }
    double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    double y2 = r1 * r1 - x * x;
    if (y2 < -2 * tol.eps * r1) {
        // No circle intersection; check endpoint proximity.
    } else {
        double y = std::sqrt(std::max(0.0, y2));
        Point u = normalized(b.center - a.center);
        Point v = rot90(u);
        for (double s : {+1.0, -1.0}) {
            Point p = a.center + x * u + (s * y) * v;
            double ta = angle_of(p - a.center), tb = angle_of(p - b.center);
            double ea = tol.eps / std::max(r1, 1e-12), eb = tol.eps / std::max(r2, 1e-12);
            if (angle_on_arc(a, ta, ea) && angle_on_arc(b, tb, eb))
                push_unique(rep.points, p, tol.eps);
            if (y < 1e-12) break;
        }
    }
    // Endpoint of one arc on the other arc.
    auto try_endpoint = [&](Point p, const Arc& other) {
        if (std::abs(dist(p, other.center) - other.radius) <= tol.eps &&
            angle_on_arc(other, angle_of(p - other.center),
                         tol.eps / std::max(other.radius, 1e-12)))
            push_unique(rep.points, p, tol.eps);
    };
    if (!a.full_circle) {
        try_endpoint(arc_start(a), b);
        try_endpoint(arc_end(a), b);
    }
    if (!b.full_circle) {
        try_endpoint(arc_start(b), a);
        try_endpoint(arc_end(b), a);
    }
    return rep;
}

bool segment_circle_interior_intersect(Point a, Point b, const Disk& d, const Tolerance& tol) {
    return point_segment_distance(d.c, a, b) < d.r - tol.eps;
}

}  // namespace belts
