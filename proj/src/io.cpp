#include "belts/io.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

namespace belts {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw GeomError("ParseError", what); }

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) bad("invalid JSON");
    return j;
}

double get_num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) bad(std::string("missing number: ") + key);
    return j[key].get<double>();
}

int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        bad(std::string("missing integer: ") + key);
    return j[key].get<int>();
}

std::string get_str(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) bad(std::string("missing string: ") + key);
    return j[key].get<std::string>();
}

const char* orientation_name(Orientation o) { return o == Orientation::plus ? "plus" : "minus"; }

Orientation parse_orientation(const std::string& s) {
    if (s == "plus") return Orientation::plus;
    if (s == "minus") return Orientation::minus;
    bad("orientation must be plus or minus");
}

const char* mode_name(BeltMode m) {
    return m == BeltMode::one_touch ? "one_touch" : "multi_touch";
}

BeltMode parse_mode(const std::string& s) {
    if (s == "one_touch") return BeltMode::one_touch;
    if (s == "multi_touch") return BeltMode::multi_touch;
    bad("mode must be one_touch or multi_touch");
}

TangentKind parse_kind(const std::string& s) {
    for (TangentKind k : {TangentKind::upper, TangentKind::lower, TangentKind::inner_a,
                          TangentKind::inner_b})
        if (s == to_string(k)) return k;
    bad("unknown tangent kind: " + s);
}

FailureCode parse_failure_code(const std::string& s) {
    for (int c = 0; c <= static_cast<int>(FailureCode::BROKEN_CHAIN); ++c)
        if (s == to_string(static_cast<FailureCode>(c))) return static_cast<FailureCode>(c);
    bad("unknown failure code: " + s);
}

json piece_to_json(const BeltPiece& p) {
    json j;
    if (p.is_arc()) {
        const Arc& a = p.arc();
        j["type"] = "arc";
        j["disk"] = a.disk;
        j["cx"] = a.center.x;
        j["cy"] = a.center.y;
        j["r"] = a.radius;
        j["start"] = a.start_angle;
        j["end"] = a.end_angle;
        j["dir"] = a.dir == ArcDir::ccw ? "ccw" : "cw";
        j["full"] = a.full_circle;
    } else {
        const TangentSegment& s = p.seg();
        j["type"] = "segment";
        j["from"] = s.from_disk;
        j["to"] = s.to_disk;
        j["x1"] = s.p1.x;
        j["y1"] = s.p1.y;
        j["x2"] = s.p2.x;
        j["y2"] = s.p2.y;
        j["kind"] = to_string(s.kind);
    }
    return j;
}

BeltPiece piece_from_json(const json& j) {
    BeltPiece p;
    std::string type = get_str(j, "type");
    if (type == "arc") {
        Arc a;
        a.disk = get_int(j, "disk");
        a.center = {get_num(j, "cx"), get_num(j, "cy")};
        a.radius = get_num(j, "r");
        a.start_angle = get_num(j, "start");
        a.end_angle = get_num(j, "end");
        std::string dir = get_str(j, "dir");
        if (dir != "ccw" && dir != "cw") bad("arc dir must be ccw or cw");
        a.dir = dir == "ccw" ? ArcDir::ccw : ArcDir::cw;
        if (!j.contains("full") || !j["full"].is_boolean()) bad("missing boolean: full");
        a.full_circle = j["full"].get<bool>();
        p.geo = a;
    } else if (type == "segment") {
        TangentSegment s;
        s.from_disk = get_int(j, "from");
        s.to_disk = get_int(j, "to");
        s.p1 = {get_num(j, "x1"), get_num(j, "y1")};
        s.p2 = {get_num(j, "x2"), get_num(j, "y2")};
        s.kind = parse_kind(get_str(j, "kind"));
        p.geo = s;
    } else {
        bad("piece type must be arc or segment");
    }
    return p;
}

json report_to_json(const VerificationReport& r) {
    json j;
    j["valid"] = r.valid;
    j["failures"] = json::array();
    for (const Failure& f : r.failures)
        j["failures"].push_back({{"code", to_string(f.code)},
                                 {"detail", f.detail},
                                 {"piece_a", f.piece_a},
                                 {"piece_b", f.piece_b}});
    return j;
}

VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    if (!j.contains("valid") || !j["valid"].is_boolean()) bad("missing boolean: valid");
    r.valid = j["valid"].get<bool>();
    if (j.contains("failures")) {
        if (!j["failures"].is_array()) bad("failures must be an array");
        for (const json& fj : j["failures"]) {
            Failure f;
            f.code = parse_failure_code(get_str(fj, "code"));
            f.detail = get_str(fj, "detail");
            f.piece_a = get_int(fj, "piece_a");
            f.piece_b = get_int(fj, "piece_b");
            r.failures.push_back(std::move(f));
        }
    }
    return r;
}

}  // namespace

std::string to_json(const InstanceFile& f) {
    json j;
    j["disks"] = json::array();
    for (const Disk& d : f.disks)
        j["disks"].push_back({{"id", d.id}, {"x", d.c.x}, {"y", d.c.y}, {"r", d.r}});
    j["meta"] = {{"name", f.meta.name}, {"source", f.meta.source}, {"tags", f.meta.tags}};
    return j.dump(2) + "\n";
}

InstanceFile parse_instance(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("disks") || !j["disks"].is_array())
        bad("instance needs a disks array");
    InstanceFile f;
    std::set<int> ids;
    for (const json& dj : j["disks"]) {
        Disk d;
        d.id = get_int(dj, "id");
        d.c = {get_num(dj, "x"), get_num(dj, "y")};
        d.r = get_num(dj, "r");
        if (d.r <= 0) bad("disk radius must be positive");
        if (!ids.insert(d.id).second) bad("duplicate disk id");
        f.disks.push_back(d);
    }
    if (j.contains("meta")) {
        const json& m = j["meta"];
        if (!m.is_object()) bad("meta must be an object");
        if (m.contains("name")) f.meta.name = get_str(m, "name");
        if (m.contains("source")) {
            f.meta.source = get_str(m, "source");
            if (f.meta.source != "manual" && f.meta.source != "generator" &&
                f.meta.source != "reduction")
                bad("meta.source must be manual, generator or reduction");
        }
        if (m.contains("tags")) {
            if (!m["tags"].is_array()) bad("meta.tags must be an array");
            for (const json& t : m["tags"]) {
                if (!t.is_string()) bad("meta.tags entries must be strings");
                f.meta.tags.push_back(t.get<std::string>());
            }
        }
    }
    return f;
}

std::string to_json(const VerificationReport& r) { return report_to_json(r).dump(2) + "\n"; }

std::string to_json(const BeltFile& f) {
    json j;
    j["mode"] = mode_name(f.spec.mode);
    j["contacts"] = json::array();
    for (const Contact& c : f.spec.contacts)
        j["contacts"].push_back({{"disk", c.disk}, {"orientation", orientation_name(c.orientation)}});
    if (f.curve) {
        j["curve"] = json::array();
        for (const BeltPiece& p : f.curve->pieces) j["curve"].push_back(piece_to_json(p));
    }
    if (f.report) j["verification"] = report_to_json(*f.report);
    return j.dump(2) + "\n";
}

BeltFile parse_belt(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("contacts") || !j["contacts"].is_array())
        bad("belt needs a contacts array");
    BeltFile f;
    f.spec.mode = parse_mode(get_str(j, "mode"));
    for (const json& cj : j["contacts"])
        f.spec.contacts.push_back(
            {get_int(cj, "disk"), parse_orientation(get_str(cj, "orientation"))});
    if (j.contains("curve")) {
        if (!j["curve"].is_array()) bad("curve must be an array");
        BeltCurve curve;
        for (const json& pj : j["curve"]) curve.pieces.push_back(piece_from_json(pj));
        // Contacts must be consistent with the curve's arc sequence.
        std::vector<int> arc_disks;
        for (const BeltPiece& p : curve.pieces)
            if (p.is_arc()) arc_disks.push_back(p.arc().disk);
        std::vector<int> contact_disks;
        for (const Contact& c : f.spec.contacts) contact_disks.push_back(c.disk);
        if (arc_disks != contact_disks) bad("curve arcs disagree with contacts");
        f.curve = std::move(curve);
    }
    if (j.contains("verification")) f.report = report_from_json(j["verification"]);
    return f;
}

GraphFile parse_graph(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object()) bad("graph file must be a JSON object");
    GraphFile g;
    if (j.contains("faces")) {
        PlanarTriangulation t;
        if (!j["faces"].is_array()) bad("faces must be an array of triples");
        int max_vertex = -1;
        for (const json& fj : j["faces"]) {
            if (!fj.is_array() || fj.size() != 3) bad("faces must be an array of triples");
            std::array<int, 3> face{};
            for (int i = 0; i < 3; ++i) {
                if (!fj[i].is_number_integer()) bad("face vertices must be integers");
                face[i] = fj[i].get<int>();
                max_vertex = std::max(max_vertex, face[i]);
            }
            t.faces.push_back(face);
        }
        t.n = max_vertex + 1;
        t.outer_face = j.contains("outer") ? get_int(j, "outer") : 0;
        g.triangulation = std::move(t);
    } else if (j.contains("rotation")) {
        CubicPlanarGraph c;
        if (!j["rotation"].is_array()) bad("rotation must be an array of triples");
        for (const json& rj : j["rotation"]) {
            if (!rj.is_array() || rj.size() != 3) bad("rotation entries must be triples");
            std::array<int, 3> rot{};
            for (int i = 0; i < 3; ++i) {
                if (!rj[i].is_number_integer()) bad("rotation entries must be integers");
                rot[i] = rj[i].get<int>();
            }
            c.rotation.push_back(rot);
        }
        c.n = static_cast<int>(c.rotation.size());
        g.cubic = std::move(c);
    } else {
        bad("graph file needs faces (triangulation) or rotation (cubic graph)");
    }
    return g;
}

namespace {

// SVG coordinates flip y so the document reads in math orientation.
std::string svg_point(Point p) { return format_double(p.x) + " " + format_double(-p.y); }

}  // namespace

std::string render_svg(const std::vector<Disk>& disks, const BeltCurve* curve) {
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    bool first = true;
    auto grow = [&](Point p, double r) {
        if (first) {
            lo_x = p.x - r, hi_x = p.x + r, lo_y = p.y - r, hi_y = p.y + r;
            first = false;
        } else {
            lo_x = std::min(lo_x, p.x - r);
            hi_x = std::max(hi_x, p.x + r);
            lo_y = std::min(lo_y, p.y - r);
            hi_y = std::max(hi_y, p.y + r);
        }
    };
    for (const Disk& d : disks) grow(d.c, d.r);
    if (curve)
        for (const BeltPiece& p : curve->pieces)
            if (p.is_arc()) grow(p.arc().center, p.arc().radius);
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    double margin = 0.05 * span + 0.1;
    double sw = span / 300 + 1e-6;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
           format_double(lo_x - margin) + " " + format_double(-hi_y - margin) + " " +
           format_double(hi_x - lo_x + 2 * margin) + " " +
           format_double(hi_y - lo_y + 2 * margin) + "\" width=\"800\" height=\"" +
           format_double(800 * (hi_y - lo_y + 2 * margin) / (hi_x - lo_x + 2 * margin)) +
           "\">\n";
    for (const Disk& d : disks)
        out += "  <circle cx=\"" + format_double(d.c.x) + "\" cy=\"" + format_double(-d.c.y) +
               "\" r=\"" + format_double(d.r) +
               "\" fill=\"#e8e8e8\" stroke=\"#555555\" stroke-width=\"" + format_double(sw) +
               "\"/>\n";
    if (curve) {
        std::string blue = "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" +
                           format_double(2 * sw) + "\"";
        std::string red = "stroke=\"#d62728\" stroke-width=\"" + format_double(2 * sw) + "\"";
        for (const BeltPiece& p : curve->pieces) {
            if (piece_is_degenerate(p, 1e-12)) continue;  // zero extent, nothing to draw
            if (p.is_arc()) {
                const Arc& a = p.arc();
                if (a.full_circle) {
                    out += "  <circle cx=\"" + format_double(a.center.x) + "\" cy=\"" +
                           format_double(-a.center.y) + "\" r=\"" + format_double(a.radius) +
                           "\" " + blue + "/>\n";
                    continue;
                }
                // After the y flip a ccw arc runs in SVG's negative-angle
                // direction (sweep flag 0).
                std::string r = format_double(a.radius);
                out += "  <path d=\"M " + svg_point(arc_start(a)) + " A " + r + " " + r +
                       " 0 " + (arc_sweep(a) > kPi ? "1" : "0") + " " +
                       (a.dir == ArcDir::ccw ? "0" : "1") + " " + svg_point(arc_end(a)) +
                       "\" " + blue + "/>\n";
            } else {
                const TangentSegment& s = p.seg();
                out += "  <line x1=\"" + format_double(s.p1.x) + "\" y1=\"" +
                       format_double(-s.p1.y) + "\" x2=\"" + format_double(s.p2.x) +
                       "\" y2=\"" + format_double(-s.p2.y) + "\" " + red + "/>\n";
            }
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace belts
