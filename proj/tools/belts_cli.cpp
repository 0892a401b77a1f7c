// Command-line front end: file formats in, kernel calls, JSON/SVG out.
// Exit codes: 0 ok/valid, 1 invalid/none, 2 usage error, 3 numeric failure.
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "belts/io.hpp"
#include "belts/monotone.hpp"
#include "belts/power_guides.hpp"
#include "belts/solver.hpp"

using namespace belts;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(const GeomError& e) {
    if (e.code() == "ParseError") return kExitUsage;
    if (e.code() == "NoConvergence" || e.code() == "PlacementFailed" ||
        e.code() == "NoValidDelta")
        return kExitNumeric;
    return kExitInvalid;
}

void print_error(const std::string& code, const std::string& message) {
    json j{{"error", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GeomError("ParseError", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GeomError("ParseError", "cannot write " + path);
    out << text;
}

BeltFile make_belt_file(const BeltSpec& spec, const std::vector<Disk>& disks, BeltMode mode) {
    BeltFile f;
    f.spec = spec;
    f.curve = realize(spec, disks);
    f.report = verify(*f.curve, disks, mode);
    return f;
}

std::vector<Disk> sorted_by_x(std::vector<Disk> disks) {
    std::sort(disks.begin(), disks.end(),
              [](const Disk& a, const Disk& b) { return a.c.x < b.c.x; });
    return disks;
}

int cmd_check_separated(const std::string& instance_path) {
    auto disks = sorted_by_x(parse_instance(read_file(instance_path)).disks);
    auto probe = [&](auto&& pred) {
        try {
            return pred();
        } catch (const GeomError&) {
            return false;
        }
    };
    json j;
    j["xy_monotone"] = probe([&] { return is_xy_monotone(disks); });
    j["x_separated"] = probe([&] { return is_x_separated(disks); });
    j["monotonically_separated"] = probe([&] { return is_monotonically_separated(disks); });
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_build_monotone(const std::string& instance_path, const std::string& out_path,
                       const std::string& render_path) {
    auto inst = parse_instance(read_file(instance_path));
    SeparatedSequence seq = make_separated_sequence(inst.disks);
    BeltFile belt = make_belt_file(build_belt_spec(seq), seq.disks, BeltMode::multi_touch);
    write_output(out_path, to_json(belt));
    if (!render_path.empty()) write_output(render_path, render_svg(seq.disks, &*belt.curve));
    return belt.report->valid ? kExitOk : kExitInvalid;
}

int cmd_verify(const std::string& instance_path, const std::string& belt_path,
               const std::string& mode_flag) {
    auto inst = parse_instance(read_file(instance_path));
    BeltFile belt = parse_belt(read_file(belt_path));
    BeltMode mode = belt.spec.mode;
    if (mode_flag == "one") mode = BeltMode::one_touch;
    if (mode_flag == "multi") mode = BeltMode::multi_touch;
    BeltCurve curve = belt.curve ? *belt.curve : realize(belt.spec, inst.disks);
    VerificationReport report = verify(curve, inst.disks, mode);
    std::cout << to_json(report);
    return report.valid ? kExitOk : kExitInvalid;
}

int cmd_solve(const std::string& instance_path, bool multi, int cap, bool count,
              double time_budget, const std::string& out_path) {
    auto inst = parse_instance(read_file(instance_path));
    SearchLimits limits;
    limits.time_budget = time_budget;
    limits.max_contacts_per_disk = cap;
    if (count) {
        long n = count_one_touch(inst.disks, limits);
        json j{{"count", n}};
        write_output(out_path, j.dump(2) + "\n");
        return n > 0 ? kExitOk : kExitInvalid;
    }
    auto curve =
        multi ? solve_multi_touch(inst.disks, limits) : solve_one_touch(inst.disks, limits);
    if (!curve) {
        write_output(out_path, json{{"result", "none"}}.dump(2) + "\n");
        return kExitInvalid;
    }
    BeltMode mode = multi ? BeltMode::multi_touch : BeltMode::one_touch;
    BeltFile belt;
    for (const BeltPiece& p : curve->pieces)
        if (p.is_arc())
            belt.spec.contacts.push_back({p.arc().disk, p.arc().dir == ArcDir::ccw
                                                            ? Orientation::plus
                                                            : Orientation::minus});
    belt.spec.mode = mode;
    belt.curve = *curve;
    belt.report = verify(*curve, inst.disks, mode);
    write_output(out_path, to_json(belt));
    return kExitOk;
}

int cmd_bitonic(const std::string& instance_path, const std::string& out_path) {
    auto inst = parse_instance(read_file(instance_path));
    auto spec = bitonic_dp(inst.disks);
    if (!spec) {
        write_output(out_path, json{{"result", "none"}}.dump(2) + "\n");
        return kExitInvalid;
    }
    write_output(out_path, to_json(make_belt_file(*spec, inst.disks, BeltMode::one_touch)));
    return kExitOk;
}

int cmd_augment(const std::string& instance_path, bool one_touch, const std::string& out_path,
                const std::string& render_path) {
    auto inst = parse_instance(read_file(instance_path));
    PowerDiagram pd = power_diagram(inst.disks);
    DualTree tree = dual_spanning_tree(pd);
    auto tour = outside_tour(pd, tree);
    GuidePlan plan = one_touch ? augment_one_touch(inst.disks, pd, tour)
                               : place_guides(inst.disks, pd, tour);
    BeltFile belt = make_belt_file(plan.belt, plan.all_disks, BeltMode::multi_touch);

    InstanceFile augmented;
    augmented.disks = plan.all_disks;
    augmented.meta.name = inst.meta.name.empty() ? "augmented" : inst.meta.name + "-augmented";
    augmented.meta.source = "generator";
    augmented.meta.tags = {one_touch ? "augment-one-touch" : "augment-multi-touch"};
    json j = json::parse(to_json(augmented));
    j["belt"] = json::parse(to_json(belt));
    j["guide_count"] = plan.guides.size();
    write_output(out_path, j.dump(2) + "\n");
    if (!render_path.empty())
        write_output(render_path, render_svg(plan.all_disks, &*belt.curve));
    return belt.report->valid ? kExitOk : kExitInvalid;
}

int cmd_gen_lower_bound(int n, const std::string& out_path) {
    LowerBoundInstance lb = lower_bound_instance(n);
    InstanceFile f;
    f.disks = lb.disks;
    f.meta.name = "lower-bound-n" + std::to_string(n);
    f.meta.source = "generator";
    f.meta.tags = {"lower-bound"};
    write_output(out_path, to_json(f));
    return kExitOk;
}

int cmd_gen_random(int n, uint64_t seed, bool mixed, bool xy_monotone, bool x_separated,
                   const std::string& out_path) {
    std::mt19937_64 rng(seed);
    InstanceFile f;
    if (xy_monotone) {
        std::uniform_real_distribution<double> dx(0.35, 3.0), dy(0.0, 3.0), extra(0.0, 0.6);
        Point cur{0, 0};
        f.disks.push_back({0, cur, 1.0});
        for (int i = 1; i < n; ++i) {
            double gx = dx(rng), gy = dy(rng);
            if (gx * gx + gy * gy < 2.05 * 2.05)
                gy = std::sqrt(std::max(0.0, 2.05 * 2.05 - gx * gx)) + extra(rng);
            cur = cur + Point{gx, gy};
            f.disks.push_back({i, cur, 1.0});
        }
        f.meta.tags.push_back("xy-monotone");
    } else if (x_separated) {
        std::uniform_real_distribution<double> gap(0.05, 1.5), y(-6.0, 6.0);
        double x = 0;
        for (int i = 0; i < n; ++i) {
            f.disks.push_back({i, {x, y(rng)}, 1.0});
            x += 2.0 + gap(rng);
        }
        f.meta.tags.push_back("x-separated");
    } else {
        std::uniform_real_distribution<double> jit(-0.4, 0.4), rad(0.5, 1.5);
        int cols = static_cast<int>(std::ceil(std::sqrt(double(n))));
        double spacing = mixed ? 3.6 : 3.0;
        for (int i = 0; i < n; ++i) {
            Point c{spacing * (i % cols) + jit(rng), spacing * (i / cols) + jit(rng)};
            f.disks.push_back({i, c, mixed ? rad(rng) : 1.0});
        }
        f.meta.tags.push_back("scatter");
    }
    f.meta.tags.insert(f.meta.tags.begin(), mixed ? "mixed" : "unit");
    f.meta.name = "random-n" + std::to_string(n) + "-seed" + std::to_string(seed);
    f.meta.source = "generator";
    write_output(out_path, to_json(f));
    return kExitOk;
}

int cmd_reduce(bool multi, const std::string& graph_path, const std::string& out_path) {
    GraphFile g = parse_graph(read_file(graph_path));
    ReductionInstance inst;
    if (multi) {
        CubicPlanarGraph cubic = g.cubic ? *g.cubic : dual_graph(*g.triangulation);
        inst = multi_touch_instance(cubic);
    } else {
        PlanarTriangulation t = g.triangulation ? *g.triangulation : dual_graph(*g.cubic);
        inst = one_touch_instance(t);
    }
    InstanceFile f;
    f.disks = inst.disks;
    f.meta.name = multi ? "reduce-multi-touch" : "reduce-one-touch";
    f.meta.source = "reduction";
    f.meta.tags = {multi ? "multi-touch" : "one-touch"};
    json j = json::parse(to_json(f));
    json meta;
    meta["delta"] = inst.delta;
    meta["packing_residual"] = inst.packing.max_residual;
    meta["unblocked_pairs"] = json::array();
    for (auto [a, b] : inst.unblocked_pairs) meta["unblocked_pairs"].push_back({a, b});
    if (multi) {
        meta["face_disk"] = inst.face_disk;
        meta["outer_gadgets"] = inst.outer_gadgets;
    }
    j["reduction"] = meta;
    write_output(out_path, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_render(const std::string& instance_path, const std::string& belt_path,
               const std::string& out_path) {
    auto inst = parse_instance(read_file(instance_path));
    std::optional<BeltCurve> curve;
    if (!belt_path.empty()) {
        BeltFile belt = parse_belt(read_file(belt_path));
        curve = belt.curve ? *belt.curve : realize(belt.spec, inst.disks);
    }
    write_output(out_path, render_svg(inst.disks, curve ? &*curve : nullptr));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conveyor belt toolkit: build, solve, verify and render belts on disks"};
    app.require_subcommand(1);

    std::string instance_path, belt_path, graph_path, out_path, render_path, mode_flag;
    int n = 0, cap = 2;
    uint64_t seed = 0;
    double time_budget = 30.0;
    bool multi = false, one_touch = false, count = false, mixed = false, xy_monotone = false,
         x_separated = false;

    auto* check = app.add_subcommand("check-separated", "Print separation predicate verdicts");
    check->add_option("instance", instance_path)->required();

    auto* build = app.add_subcommand("build-monotone",
                                     "Construct a belt for a monotonically separated instance");
    build->add_option("instance", instance_path)->required();
    build->add_option("-o,--output", out_path);
    build->add_option("--render", render_path);

    auto* ver = app.add_subcommand("verify", "Verify a belt against an instance");
    ver->add_option("instance", instance_path)->required();
    ver->add_option("belt", belt_path)->required();
    ver->add_option("--mode", mode_flag)->check(CLI::IsMember({"one", "multi"}));

    auto* solve = app.add_subcommand("solve", "Exhaustive belt search");
    solve->add_option("instance", instance_path)->required();
    auto* multi_flag = solve->add_flag("--multi", multi, "multi-touch search");
    solve->add_flag("--one-touch", "one-touch search (default)")->excludes(multi_flag);
    solve->add_option("--cap", cap, "max contacts per disk (multi-touch)");
    solve->add_flag("--count", count, "count distinct one-touch belts");
    solve->add_option("--time-budget", time_budget, "seconds");
    solve->add_option("-o,--output", out_path);

    auto* bit = app.add_subcommand("bitonic", "Bitonic one-touch dynamic program");
    bit->add_option("instance", instance_path)->required();
    bit->add_option("-o,--output", out_path);

    auto* aug = app.add_subcommand("augment", "Add guide disks so a belt exists");
    aug->add_option("instance", instance_path)->required();
    aug->add_flag("--one-touch", one_touch, "every disk touched exactly once");
    aug->add_option("-o,--output", out_path);
    aug->add_option("--render", render_path);

    auto* gen = app.add_subcommand("gen", "Instance generators");
    gen->require_subcommand(1);
    auto* gen_lb = gen->add_subcommand("lower-bound", "Blocked-visibility family");
    gen_lb->add_option("--n", n)->required()->check(CLI::Range(3, 1000));
    gen_lb->add_option("-o,--output", out_path);
    auto* gen_rand = gen->add_subcommand("random", "Seeded random instances");
    gen_rand->add_option("--n", n)->required()->check(CLI::Range(1, 1000000));
    gen_rand->add_option("--seed", seed)->required();
    auto* unit_flag = gen_rand->add_flag("--unit", "unit radii (default)");
    gen_rand->add_flag("--mixed", mixed, "radii in [0.5, 1.5]")->excludes(unit_flag);
    auto* xy_flag = gen_rand->add_flag("--xy-monotone", xy_monotone, "xy-monotone unit disks");
    gen_rand->add_flag("--x-separated", x_separated, "x-separated unit disks")
        ->excludes(xy_flag);
    gen_rand->add_option("-o,--output", out_path);

    auto* red = app.add_subcommand("reduce", "Compile a graph into a disk instance");
    red->require_subcommand(1);
    auto* red_one = red->add_subcommand("one-touch", "Shrunk circle packing");
    red_one->add_option("graph", graph_path)->required();
    red_one->add_option("-o,--output", out_path);
    auto* red_multi = red->add_subcommand("multi-touch", "Packing with gadget disks");
    red_multi->add_option("graph", graph_path)->required();
    red_multi->add_option("-o,--output", out_path);

    auto* rend = app.add_subcommand("render", "Render an instance (and belt) as SVG");
    rend->add_option("instance", instance_path)->required();
    rend->add_option("belt", belt_path);
    rend->add_option("-o,--output", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) return cmd_check_separated(instance_path);
        if (*build) return cmd_build_monotone(instance_path, out_path, render_path);
        if (*ver) return cmd_verify(instance_path, belt_path, mode_flag);
        if (*solve) return cmd_solve(instance_path, multi, cap, count, time_budget, out_path);
        if (*bit) return cmd_bitonic(instance_path, out_path);
        if (*aug) return cmd_augment(instance_path, one_touch, out_path, render_path);
        if (*gen_lb) return cmd_gen_lower_bound(n, out_path);
        if (*gen_rand)
            return cmd_gen_random(n, seed, mixed, xy_monotone, x_separated, out_path);
        if (*red_one) return cmd_reduce(false, graph_path, out_path);
        if (*red_multi) return cmd_reduce(true, graph_path, out_path);
        if (*rend) return cmd_render(instance_path, belt_path, out_path);
    } catch (const GeomError& e) {
        print_error(e.code(), e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return kExitNumeric;
    }
    return kExitUsage;
}
