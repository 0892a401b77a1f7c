#pragma once

#include <optional>
#include <string>

#include "belts/belt.hpp"
#include "belts/packing.hpp"

namespace belts {

struct InstanceMeta {
    std::string name;
    std::string source = "manual";  // manual | generator | reduction
    std::vector<std::string> tags;
    bool operator==(const InstanceMeta&) const = default;
};

// Disk configuration with provenance metadata; the on-disk JSON form is
// {"disks": [{"id", "x", "y", "r"}], "meta": {"name", "source", "tags"}}.
struct InstanceFile {
    std::vector<Disk> disks;
    InstanceMeta meta;
};

// Belt certificate: the contact spec, optionally the realized curve and the
// verification report for it.
struct BeltFile {
    BeltSpec spec;
    std::optional<BeltCurve> curve;
    std::optional<VerificationReport> report;
};

// Graph input: {"faces": [[a,b,c],...], "outer": i} for triangulations or
// {"rotation": [[..3 neighbors..],...]} for cubic planar graphs.
struct GraphFile {
    std::optional<PlanarTriangulation> triangulation;
    std::optional<CubicPlanarGraph> cubic;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

// Serialization. Numbers round-trip bit-exactly; output is deterministic.
std::string to_json(const InstanceFile& f);
std::string to_json(const BeltFile& f);
std::string to_json(const VerificationReport& r);

// Parsers throw GeomError("ParseError") on malformed input (including
// duplicate disk ids and inconsistent sizes).
InstanceFile parse_instance(const std::string& text);
BeltFile parse_belt(const std::string& text);
GraphFile parse_graph(const std::string& text);

// SVG 1.1 document: disks as filled circles, belt arcs in blue, bitangent
// segments in red. Pass nullptr to render the instance alone.
std::string render_svg(const std::vector<Disk>& disks, const BeltCurve* curve);

}  // namespace belts
