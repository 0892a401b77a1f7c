#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace belts {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTau = 2.0 * kPi;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(b - a); }
inline Point normalized(Point p) {
    double n = norm(p);
    return n > 0 ? Point{p.x / n, p.y / n} : Point{0, 0};
}
// Rotate by +90 degrees.
inline Point rot90(Point p) { return {-p.y, p.x}; }
inline double angle_of(Point p) { return std::atan2(p.y, p.x); }

// Normalize an angle into [0, 2*pi).
inline double normalize_angle(double a) {
    a = std::fmod(a, kTau);
    if (a < 0) a += kTau;
    return a;
}

struct Disk {
    int id = 0;
    Point c;
    double r = 1.0;
};

struct Tolerance {
    double eps = 1e-9;
    double eps_ang = 1e-7;  // angular tolerance for C1 checks, radians
};

class GeomError : public std::runtime_error {
  public:
    GeomError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

enum class TangentKind : uint8_t { upper, lower, inner_a, inner_b };

const char* to_string(TangentKind k);

struct TangentSegment {
    int from_disk = 0;
    int to_disk = 0;
    Point p1;  // tangency on from_disk
    Point p2;  // tangency on to_disk
    TangentKind kind = TangentKind::upper;
};

enum class ArcDir : uint8_t { ccw, cw };

struct Arc {
    int disk = 0;
    Point center;
    double radius = 1.0;
    double start_angle = 0.0;  // in [0, 2*pi)
    double end_angle = 0.0;    // in [0, 2*pi)
    ArcDir dir = ArcDir::ccw;
    bool full_circle = false;
};

inline Point arc_point(const Arc& a, double angle) {
    return {a.center.x + a.radius * std::cos(angle), a.center.y + a.radius * std::sin(angle)};
}
inline Point arc_start(const Arc& a) { return arc_point(a, a.start_angle); }
inline Point arc_end(const Arc& a) { return arc_point(a, a.end_angle); }

// Swept angle, always >= 0. Zero-length arcs report 0 unless full_circle.
double arc_sweep(const Arc& a);
// True if the direction `angle` lies on the arc, within angular slack.
bool angle_on_arc(const Arc& a, double angle, double ang_eps = 1e-9);
// Traversal velocity direction at the start / end of the arc.
Point arc_start_dir(const Arc& a);
Point arc_end_dir(const Arc& a);

// The four bitangent segments between two disjoint disks.
// Throws GeomError("OverlappingDisks") / GeomError("Containment").
std::array<TangentSegment, 4> bitangents(const Disk& d1, const Disk& d2,
                                         const Tolerance& tol = {});

// True iff the open segment passes through the interior of any disk in the
// configuration. Endpoint tangencies do not count; the segment's own two
// disks are skipped.
bool is_blocked(const TangentSegment& seg, const std::vector<Disk>& disks,
                const Tolerance& tol = {});

inline double power_distance(Point p, const Disk& d) {
    double dx = p.x - d.c.x, dy = p.y - d.c.y;
    return dx * dx + dy * dy - d.r * d.r;
}

// Signed distance from p to the convex hull of disks a and b
// (negative inside). The hull is the union over t in [0,1] of disks
// interpolating center and radius.
double hull_signed_distance(Point p, const Disk& a, const Disk& b);

// True iff disk d is disjoint from the convex hull of a and b.
bool disjoint_from_hull(const Disk& d, const Disk& a, const Disk& b,
                        const Tolerance& tol = {});

double point_segment_distance(Point p, Point a, Point b);
double point_arc_distance(Point p, const Arc& a);

struct IntersectionReport {
    bool overlap = false;            // 1-dimensional overlap (collinear / same circle)
    std::vector<Point> points;       // discrete intersection points
    bool empty() const { return !overlap && points.empty(); }
};

IntersectionReport segment_segment_intersect(Point a1, Point a2, Point b1, Point b2,
                                             const Tolerance& tol = {});
IntersectionReport segment_arc_intersect(Point a, Point b, const Arc& arc,
                                         const Tolerance& tol = {});
IntersectionReport arc_arc_intersect(const Arc& a, const Arc& b, const Tolerance& tol = {});

// Open segment vs open disk interior.
bool segment_circle_interior_intersect(Point a, Point b, const Disk& d,
                                       const Tolerance& tol = {});

}  // namespace belts
