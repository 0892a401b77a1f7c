#pragma once

#include "belts/belt.hpp"

namespace belts {

// One cell of the power diagram, clipped to a large bounding box. Vertices
// are in ccw order; neighbor[k] is the cell index across edge
// poly[k] -> poly[(k+1) % size], or -1 when the edge lies on the clip box
// (i.e. the true cell is unbounded there).
struct PowerCell {
    int disk = 0;
    std::vector<Point> poly;
    std::vector<int> neighbor;
};

struct DiagramEdge {
    int cell_a = 0, cell_b = 0;  // cell_a < cell_b
    Point a, b;                  // shared boundary segment (clipped if unbounded)
    bool bounded = true;         // false when the true edge is a ray or line
};

struct PowerDiagram {
    std::vector<Disk> disks;
    std::vector<PowerCell> cells;
    std::vector<DiagramEdge> edges;
    std::vector<Point> vertices;
    double clip_radius = 0;  // half-extent of the clip box around the centroid
    Point clip_center;
};

// Minimum-power subdivision via half-plane clipping (O(n^2), fine at desk
// scale). Throws GeomError("DegenerateInput") if two disks coincide.
PowerDiagram power_diagram(const std::vector<Disk>& disks, const Tolerance& tol = {});

// Index of the disk whose power distance to p is smallest.
int min_power_disk(const std::vector<Disk>& disks, Point p);

struct DualTree {
    std::vector<int> edges;  // indices into PowerDiagram::edges, n-1 entries
};

// Deterministic spanning tree of the cell-adjacency graph: minimum total
// center-to-edge-midpoint polyline length, index tie-breaks.
DualTree dual_spanning_tree(const PowerDiagram& pd);

// One stop of the walk around the outside of the spanning tree: visit the
// cell's disk, then traverse the tree edge.
struct TourStep {
    int disk = 0;  // cell index
    int edge = 0;  // index into PowerDiagram::edges
};

// Closed walk around the spanning tree in ccw rotation order; every tree edge
// is traversed exactly twice and every disk appears at least once (deg times).
std::vector<TourStep> outside_tour(const PowerDiagram& pd, const DualTree& tree);

enum class GuideRole : uint8_t { x_point, y_point, z_point, routing };

struct GuideDisk {
    Disk disk;
    GuideRole role = GuideRole::routing;
    int tour_step = 0;  // which tour step placed it
};

struct GuidePlan {
    std::vector<TourStep> tour;
    std::vector<GuideDisk> guides;
    std::vector<Disk> all_disks;  // originals followed by the guide disks
    BeltSpec belt;                // over all_disks
};

// Multi-touch augmentation: three guide disks per tree-edge traversal (at the
// x, y and z points of the polyline representation), belt traces the outside
// of the tree. Placement radii/offsets are halved and retried until the belt
// verifies; throws GeomError("PlacementFailed") after the retry cap.
GuidePlan place_guides(const std::vector<Disk>& disks, const PowerDiagram& pd,
                       const std::vector<TourStep>& tour, const Tolerance& tol = {});

// One-touch augmentation: repeated visits to an original disk are replaced by
// chains of routing guides around that disk, so every disk (original or
// guide) is contacted exactly once.
GuidePlan augment_one_touch(const std::vector<Disk>& disks, const PowerDiagram& pd,
                            const std::vector<TourStep>& tour, const Tolerance& tol = {});

// n-1 small disks on a regular polygon around one large central disk sized so
// that no two small disks can see each other: every bitangent between small
// disks is blocked. blocked_pairs is the verified certificate.
struct LowerBoundInstance {
    std::vector<Disk> disks;  // small disks 0..n-2, central disk last
    int center = 0;           // index of the central disk
    std::vector<std::pair<int, int>> blocked_pairs;
};

LowerBoundInstance lower_bound_instance(int n);

}  // namespace belts
