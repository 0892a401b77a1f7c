#include "belts/solver.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace belts {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point at;
    void check() const {
        if (Clock::now() > at) throw GeomError("BudgetExceeded", "search time budget exhausted");
    }
};

Deadline make_deadline(const SearchLimits& limits) {
    return {Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(limits.time_budget))};
}

void require_size(const std::vector<Disk>& disks, const SearchLimits& limits) {
    if (static_cast<int>(disks.size()) > limits.max_disks)
        throw GeomError("TooManyDisks", "instance exceeds max_disks");
}

Orientation as_o(int v) { return v == 0 ? Orientation::plus : Orientation::minus; }

}  // namespace

AdjacencyOracle::AdjacencyOracle(const std::vector<Disk>& disks, const Tolerance& tol)
    : n_(static_cast<int>(disks.size())), ok_(static_cast<size_t>(n_) * n_ * 4, 0) {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            if (a == b) continue;
            for (int oa = 0; oa < 2; ++oa)
                for (int ob = 0; ob < 2; ++ob) {
                    bool ok = false;
                    try {
                        TangentSegment s =
                            select_bitangent(disks[a], as_o(oa), disks[b], as_o(ob), tol);
                        ok = !is_blocked(s, disks, tol);
                    } catch (const GeomError&) {
                    }
                    ok_[((static_cast<size_t>(a) * n_ + b) * 2 + oa) * 2 + ob] = ok;
                }
        }
}

bool AdjacencyOracle::unblocked(int a, Orientation oa, int b, Orientation ob) const {
    return ok_[((static_cast<size_t>(a) * n_ + b) * 2 + (oa == Orientation::minus)) * 2 +
               (ob == Orientation::minus)] != 0;
}

namespace {

// Shared enumeration of canonical one-touch candidates: disk 0 first with
// plus orientation (rotation and reversal-with-flip each leave exactly one
// representative), remaining order and orientations free. The visitor gets
// each surviving candidate spec; returning true stops the enumeration.
template <typename Visit>
void enumerate_one_touch(const std::vector<Disk>& disks, const SearchLimits& limits,
                         const Deadline& dl, const Tolerance& tol, Visit visit) {
    int n = static_cast<int>(disks.size());
    AdjacencyOracle oracle;
    if (limits.prune) oracle = AdjacencyOracle(disks, tol);

    std::vector<int> perm{0};
    std::vector<int> ori{0};
    std::vector<bool> used(n, false);
    used[0] = true;
    bool stop = false;

    auto emit = [&]() {
        BeltSpec spec;
        spec.mode = BeltMode::one_touch;
        for (int p = 0; p < n; ++p) spec.contacts.push_back({disks[perm[p]].id, as_o(ori[p])});
        stop = visit(spec);
    };

    std::function<void(int)> rec = [&](int pos) {
        if (stop) return;
        dl.check();
        if (pos == n) {
            if (limits.prune &&
                !oracle.unblocked(perm[n - 1], as_o(ori[n - 1]), 0, Orientation::plus))
                return;
            emit();
            return;
        }
        for (int d = 1; d < n && !stop; ++d) {
            if (used[d]) continue;
            for (int o = 0; o < 2 && !stop; ++o) {
                if (limits.prune &&
                    !oracle.unblocked(perm[pos - 1], as_o(ori[pos - 1]), d, as_o(o)))
                    continue;
                used[d] = true;
                perm.push_back(d);
                ori.push_back(o);
                rec(pos + 1);
                used[d] = false;
                perm.pop_back();
                ori.pop_back();
            }
        }
    };
    if (n == 1) {
        emit();
        return;
    }
    rec(1);
}

std::optional<BeltCurve> try_realize(const BeltSpec& spec, const std::vector<Disk>& disks,
                                     BeltMode mode, const Tolerance& tol) {
    try {
        BeltCurve curve = realize(spec, disks, tol);
        if (verify(curve, disks, mode, tol).valid) return curve;
    } catch (const GeomError& e) {
        if (e.code() == "BudgetExceeded") throw;
    }
    return std::nullopt;
}

}  // namespace

std::optional<BeltCurve> solve_one_touch(const std::vector<Disk>& disks,
                                         const SearchLimits& limits, const Tolerance& tol) {
    require_size(disks, limits);
    if (disks.empty()) return std::nullopt;
    Deadline dl = make_deadline(limits);
    std::optional<BeltCurve> found;
    enumerate_one_touch(disks, limits, dl, tol, [&](const BeltSpec& spec) {
        found = try_realize(spec, disks, BeltMode::one_touch, tol);
        return found.has_value();
    });
    return found;
}

long count_one_touch(const std::vector<Disk>& disks, const SearchLimits& limits,
                     const Tolerance& tol) {
    require_size(disks, limits);
    if (disks.empty()) return 0;
    Deadline dl = make_deadline(limits);
    std::set<std::vector<std::pair<int, int>>> seen;
    enumerate_one_touch(disks, limits, dl, tol, [&](const BeltSpec& spec) {
        if (try_realize(spec, disks, BeltMode::one_touch, tol)) {
            BeltSpec canon = canonicalize(spec);
            std::vector<std::pair<int, int>> key;
            for (const Contact& c : canon.contacts)
                key.emplace_back(c.disk, c.orientation == Orientation::minus);
            seen.insert(std::move(key));
        }
        return false;
    });
    return static_cast<long>(seen.size());
}

std::optional<BeltCurve> solve_multi_touch(const std::vector<Disk>& disks,
                                          const SearchLimits& limits, const Tolerance& tol) {
    require_size(disks, limits);
    int n = static_cast<int>(disks.size());
    if (n == 0) return std::nullopt;
    if (n == 1) {
        BeltSpec spec;
        spec.mode = BeltMode::multi_touch;
        spec.contacts.push_back({disks[0].id, Orientation::plus});
        return try_realize(spec, disks, BeltMode::multi_touch, tol);
    }
    Deadline dl = make_deadline(limits);
    AdjacencyOracle oracle;
    if (limits.prune) oracle = AdjacencyOracle(disks, tol);
    int cap = limits.max_contacts_per_disk;

    std::vector<std::pair<int, int>> seq{{0, 0}};  // (disk index, orientation)
    std::vector<int> cnt(n, 0);
    cnt[0] = 1;
    int covered = 1;
    int target_len = n;
    std::optional<BeltCurve> found;

    // Iterative deepening on the total contact count: each pass enumerates
    // exactly the sequences of length target_len, so shorter belts are found
    // first and candidates are never retried at a later pass.
    std::function<void()> rec = [&]() {
        if (found) return;
        dl.check();
        auto [last, lo] = seq.back();
        if (static_cast<int>(seq.size()) == target_len) {
            if (covered == n && last != 0 &&
                (!limits.prune || oracle.unblocked(last, as_o(lo), 0, Orientation::plus))) {
                BeltSpec spec;
                spec.mode = BeltMode::multi_touch;
                for (auto [d, o] : seq) spec.contacts.push_back({disks[d].id, as_o(o)});
                found = try_realize(spec, disks, BeltMode::multi_touch, tol);
            }
            return;
        }
        // Not enough room left to cover every disk: prune.
        if (n - covered > target_len - static_cast<int>(seq.size())) return;
        for (int d = 0; d < n && !found; ++d) {
            if (d == last || cnt[d] >= cap) continue;
            for (int o = 0; o < 2 && !found; ++o) {
                if (limits.prune && !oracle.unblocked(last, as_o(lo), d, as_o(o))) continue;
                seq.emplace_back(d, o);
                if (++cnt[d] == 1) ++covered;
                rec();
                if (--cnt[d] == 0) --covered;
                seq.pop_back();
            }
        }
    };
    for (target_len = n; target_len <= n * cap && !found; ++target_len) rec();
    return found;
}

std::vector<std::vector<int>> hamiltonian_cycles(const Graph& g) {
    std::vector<std::vector<int>> out;
    int n = g.n;
    if (n < 3) return out;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [a, b] : g.edges) {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    std::vector<int> path{0};
    std::vector<bool> used(n, false);
    used[0] = true;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(path.size()) == n) {
            if (adj[path.back()][0] && path[1] < path.back()) out.push_back(path);
            return;
        }
        for (int v = 1; v < n; ++v) {
            if (used[v] || !adj[path.back()][v]) continue;
            used[v] = true;
            path.push_back(v);
            rec();
            path.pop_back();
            used[v] = false;
        }
    };
    rec();
    return out;
}

}  // namespace belts
