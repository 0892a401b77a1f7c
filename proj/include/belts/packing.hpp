#pragma once

#include <array>

#include "belts/belt.hpp"

namespace belts {

// Combinatorial triangulation of the sphere: every face is a triangle,
// including the designated outer one. Faces are consistently oriented
// ordered triples.
struct PlanarTriangulation {
    int n = 0;
    std::vector<std::array<int, 3>> faces;  // 2n-4 triples
    int outer_face = 0;                     // index into faces
};

// 3-regular planar graph given by its rotation system (cyclic neighbor
// order per vertex).
struct CubicPlanarGraph {
    int n = 0;
    std::vector<std::array<int, 3>> rotation;
};

// Tangency-faithful disk layout of a triangulation: adjacent vertices get
// tangent disks, non-adjacent vertices get strictly separated disks. The
// outer triple is normalized to mutually tangent unit disks at (0,0), (2,0),
// (1, sqrt(3)).
struct CirclePacking {
    std::vector<Point> centers;
    std::vector<double> radii;
    std::array<int, 3> outer{};
    double max_residual = 0;  // worst |dist - (r_u + r_v)| over edges
};

struct ReductionConfig {
    double tol_pack = 1e-10;  // tangency residual target
    double delta_max = 0.05;  // shrink-factor search ceiling
    double eta = 0.5;         // added-disk radius as a fraction of local room
};

// Dual of a cubic planar graph: its faces become triangulation vertices,
// its vertices become triangles. Face i of the result corresponds to vertex
// i of g; the outer face is the one of vertex 0.
// Throws GeomError("NotCubic") / GeomError("NotThreeConnected") /
// GeomError("InvalidEmbedding").
PlanarTriangulation dual_graph(const CubicPlanarGraph& g);

// Dual of a triangulation: one cubic vertex per face, adjacent when the
// faces share an edge, rotation order following each face's edge order.
CubicPlanarGraph dual_graph(const PlanarTriangulation& t);

// One consistently-oriented embedding per isomorphism class of maximal
// planar graphs on n vertices, enumerated by flip search from a stacked
// triangulation.
std::vector<PlanarTriangulation> enumerate_triangulations(int n);

// Iterative angle-sum packing with the outer triple pinned to radius 1.
// Throws GeomError("NoConvergence") with the worst residual on failure.
CirclePacking circle_pack(const PlanarTriangulation& t, const ReductionConfig& cfg = {});

// Shrink factor delta <= delta_max (found by bisection from delta_max, then
// halved if the halved value still audits) such that after shrinking every
// disk by 1-delta the unblocked bitangents are exactly: an inner bitangent
// per triangulation edge, plus one outer tangent (the hull side) per outer
// pair, and nothing else. Throws GeomError("NoValidDelta") if no probe
// passes.
double choose_delta(const CirclePacking& p, const PlanarTriangulation& t,
                    const ReductionConfig& cfg = {});

// A disk configuration compiled from a graph, with its audit metadata.
struct ReductionInstance {
    std::vector<Disk> disks;  // disk i is vertex i; added disks follow
    PlanarTriangulation graph;
    CirclePacking packing;
    double delta = 0;
    std::vector<std::pair<int, int>> unblocked_pairs;  // audited, == edges

    // Filled by multi_touch_instance only.
    CubicPlanarGraph source;               // the cubic graph (faces of `graph`)
    std::vector<int> face_disk;            // per face: center disk id, -1 for outer
    std::array<int, 3> outer_gadgets{-1, -1, -1};  // ids, one per outer pair
};

// Shrunk circle packing of the triangulation; a belt touching each disk
// exactly once must follow a Hamiltonian cycle of the graph.
ReductionInstance one_touch_instance(const PlanarTriangulation& t,
                                     const ReductionConfig& cfg = {});

// The point with equal power distance to all three disks.
// Throws GeomError("CollinearCenters").
Point radical_center(const Disk& a, const Disk& b, const Disk& c);

// Shrunk packing of the dual triangulation plus a small disk at each
// interior triangle's radical center and three plugs at the outer tangency
// gaps; any belt must visit every triangle region, tracing a Hamiltonian
// cycle of g.
ReductionInstance multi_touch_instance(const CubicPlanarGraph& g,
                                       const ReductionConfig& cfg = {});

// Belt realizing a Hamiltonian cycle on a reduction instance. In one_touch
// mode the cycle runs over triangulation vertices and orientations alternate
// (|cycle| must be even; GeomError("OddCycleLength") otherwise). In
// multi_touch mode the cycle runs over the cubic graph's vertices and the
// belt threads the triangle regions with single-ply crossings. Throws
// GeomError("NotHamiltonian") for invalid cycles and
// GeomError("NoValidBelt") if no orientation assignment verifies.
BeltSpec belt_from_hamiltonian_cycle(const std::vector<int>& cycle,
                                     const ReductionInstance& inst, BeltMode mode,
                                     const Tolerance& tol = {});

}  // namespace belts
