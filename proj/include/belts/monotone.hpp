#pragma once

#include <optional>
#include <utility>

#include "belts/belt.hpp"

namespace belts {

// Unit-radius (or mixed) disks sorted by strictly increasing center x.
struct SeparatedSequence {
    std::vector<Disk> disks;
    bool unit_radius = true;
};

// Sorts by center x and checks strictness and pairwise disjointness.
// Throws GeomError("NotSeparated") on tied x or overlapping disks.
SeparatedSequence make_separated_sequence(std::vector<Disk> disks, const Tolerance& tol = {});

// Predicates on unit disks sorted by x. Throw GeomError("NotUnitRadii") if
// any radius differs from 1.
bool is_xy_monotone(const std::vector<Disk>& disks, const Tolerance& tol = {});
bool is_x_separated(const std::vector<Disk>& disks, const Tolerance& tol = {});

// Every ordered triple i<j<k: disk k disjoint from hull(i, j) and disk i
// disjoint from hull(j, k). Radius-agnostic, O(n^3).
bool is_monotonically_separated(const std::vector<Disk>& disks, const Tolerance& tol = {});

// Disks partitioned into the ones touching the upper convex hull strictly
// between the leftmost and rightmost disk (`hull`) and the complementary
// sequence (`rest`), which starts at the leftmost and ends at the rightmost
// disk. Both are index lists into the input, sorted by x.
struct UpperHullIndex {
    std::vector<int> hull;
    std::vector<int> rest;
};

UpperHullIndex upper_hull(const std::vector<Disk>& disks, const Tolerance& tol = {});

struct HullContext {
    std::vector<Disk> disks;  // sorted by x
    UpperHullIndex idx;
};

HullContext make_hull_context(const SeparatedSequence& seq, const Tolerance& tol = {});

enum class PartialKind : uint8_t { lower, upper };

// Open chain from one non-hull disk to the next, possibly routed over
// intermediate hull disks.
struct PartialBelt {
    PartialKind kind = PartialKind::lower;
    int from_disk = 0;
    int to_disk = 0;
    Orientation from_o = Orientation::plus;  // departure orientation on from_disk
    Orientation to_o = Orientation::plus;    // arrival orientation on to_disk
    Point entry_point;                       // departure tangency on from_disk
    Point exit_point;                        // arrival tangency on to_disk
    std::vector<Contact> via;                // intermediate hull-disk contacts
    std::vector<BeltPiece> pieces;           // seg (arc seg)* open chain
};

// Rotating-ray sweep between consecutive non-hull disks rest[i], rest[i+1].
// wind departs with plus orientation, unwind with minus. Throws
// GeomError("NotSeparated") when a required bitangent is blocked.
std::pair<PartialBelt, PartialBelt> wind(int i, const HullContext& ctx, const Tolerance& tol = {});
std::pair<PartialBelt, PartialBelt> unwind(int i, const HullContext& ctx,
                                           const Tolerance& tol = {});

// Linear-time belt construction for monotonically separated sequences.
// The returned spec touches every disk at least once (multi-touch mode).
BeltSpec build_belt_spec(const SeparatedSequence& seq, const Tolerance& tol = {});
BeltCurve build_belt(const SeparatedSequence& seq, const Tolerance& tol = {});

// True iff the cyclic x-coordinate sequence of the contacts has exactly one
// local maximum and one local minimum.
bool is_bitonic_x(const BeltSpec& spec, const std::vector<Disk>& disks);

// Dynamic program over bitonic one-touch belts; returns the first candidate
// that passes verification, or none.
std::optional<BeltSpec> bitonic_dp(const std::vector<Disk>& disks, const Tolerance& tol = {});

}  // namespace belts
