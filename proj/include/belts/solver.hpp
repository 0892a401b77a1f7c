#pragma once

#include <optional>

#include "belts/belt.hpp"

namespace belts {

struct SearchLimits {
    int max_disks = 12;
    int max_contacts_per_disk = 2;  // multi-touch only
    double time_budget = 30.0;      // seconds
    bool prune = true;              // adjacency pruning; results are identical either way
};

// Precomputed feasibility of every ordered oriented bitangent: entry (a, oa,
// b, ob) is true iff the selected bitangent from contact (a, oa) to (b, ob)
// exists and is unblocked.
class AdjacencyOracle {
public:
    AdjacencyOracle() = default;
    AdjacencyOracle(const std::vector<Disk>& disks, const Tolerance& tol = {});
    bool unblocked(int a, Orientation oa, int b, Orientation ob) const;

private:
    int n_ = 0;
    std::vector<uint8_t> ok_;
};

// Exhaustive search over canonical cyclic contact orders (disk 0 fixed first
// with plus orientation to quotient rotation and reversal symmetry). Returns
// the first verified belt in lexicographic candidate order, which is the
// lexicographically least verified belt, or none. Complete within limits.
// Throws GeomError("BudgetExceeded") when the time budget runs out and
// GeomError("TooManyDisks") when n exceeds limits.max_disks.
std::optional<BeltCurve> solve_one_touch(const std::vector<Disk>& disks,
                                         const SearchLimits& limits = {},
                                         const Tolerance& tol = {});

// Number of distinct verified one-touch belts, deduplicated by canonicalize.
long count_one_touch(const std::vector<Disk>& disks, const SearchLimits& limits = {},
                     const Tolerance& tol = {});

// Search over contact sequences where each disk appears between once and
// limits.max_contacts_per_disk times and consecutive contacts differ.
// Complete only relative to the cap: "none" means no belt under the cap.
std::optional<BeltCurve> solve_multi_touch(const std::vector<Disk>& disks,
                                          const SearchLimits& limits = {},
                                          const Tolerance& tol = {});

// Simple undirected graph given by an edge list on vertices 0..n-1.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// All Hamiltonian cycles, each reported once in canonical form: starts at
// vertex 0 and the second vertex is smaller than the last (reflection
// representative). Exhaustive backtracking; intended for n <= 16.
std::vector<std::vector<int>> hamiltonian_cycles(const Graph& g);

}  // namespace belts
