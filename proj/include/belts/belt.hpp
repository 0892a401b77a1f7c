#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "belts/geom.hpp"

namespace belts {

enum class Orientation : uint8_t { plus, minus };

inline Orientation flipped(Orientation o) {
    return o == Orientation::plus ? Orientation::minus : Orientation::plus;
}

struct Contact {
    int disk = 0;
    Orientation orientation = Orientation::plus;
    bool operator==(const Contact&) const = default;
};

enum class BeltMode : uint8_t { one_touch, multi_touch };

struct BeltSpec {
    std::vector<Contact> contacts;  // cyclic
    BeltMode mode = BeltMode::one_touch;
};

// Cyclic alternating sequence of arcs and bitangent segments.
// pieces[2k] is the arc for contacts[k], pieces[2k+1] the segment from
// contacts[k] to contacts[k+1]. A single full-circle arc (one piece) is the
// belt of a lone disk.
struct BeltPiece {
    std::variant<Arc, TangentSegment> geo;
    bool is_arc() const { return geo.index() == 0; }
    const Arc& arc() const { return std::get<Arc>(geo); }
    const TangentSegment& seg() const { return std::get<TangentSegment>(geo); }
};

struct BeltCurve {
    std::vector<BeltPiece> pieces;
};

Point piece_start(const BeltPiece& p);
Point piece_end(const BeltPiece& p);
Point piece_start_dir(const BeltPiece& p);
Point piece_end_dir(const BeltPiece& p);
// Zero-length pieces carry no extent (zero-sweep arc or coincident segment).
bool piece_is_degenerate(const BeltPiece& p, double eps);

enum class FailureCode : uint8_t {
    NOT_SIMPLE,
    NOT_C1,
    INTERIOR_HIT,
    MISSED_DISK,
    MULTI_TOUCH_IN_ONE_TOUCH_MODE,
    BLOCKED_BITANGENT,
    BROKEN_CHAIN,
};

const char* to_string(FailureCode c);

struct Failure {
    FailureCode code;
    std::string detail;
    int piece_a = -1;
    int piece_b = -1;
};

struct VerificationReport {
    bool valid = true;
    std::vector<Failure> failures;
};

// Geometric realization of a spec: local, deterministic, no global checks.
BeltCurve realize(const BeltSpec& spec, const std::vector<Disk>& disks,
                  const Tolerance& tol = {});

// The orientation-consistent bitangent between two oriented contacts,
// traversed from a to b: the segment direction matches the arc traversal
// direction on both disks.
TangentSegment select_bitangent(const Disk& a, Orientation oa, const Disk& b, Orientation ob,
                                const Tolerance& tol = {});

VerificationReport verify(const BeltCurve& curve, const std::vector<Disk>& disks, BeltMode mode,
                          const Tolerance& tol = {});

// Example 2.2 construction: radially sorted simple polygonalization of
// centers, orientations from turn directions. Throws
// GeomError("CollinearCenters") when general position fails.
BeltSpec polygonalization_belt(const std::vector<Disk>& disks, const Tolerance& tol = {});

// Least representative under cyclic rotation, sequence reversal, and global
// orientation flip.
BeltSpec canonicalize(const BeltSpec& spec);

}  // namespace belts
