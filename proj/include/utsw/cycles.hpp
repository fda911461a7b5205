#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "utsw/graph.hpp"

namespace utsw {

// An ordered 4-cycle (v1,v2,v3,v4) on distinct vertices whose consecutive
// pairs (including v4-v1) are edges; v1 is the root of the search that
// produced it.
struct FourCycle {
    std::array<VertexId, 4> v;
    friend bool operator==(const FourCycle&, const FourCycle&) = default;
};

// Direction-deduplicated cycles rooted at one vertex. `visited` counts the
// vertices touched by the bounded search that produced the set.
struct CycleSet {
    VertexId root = -1;
    std::vector<FourCycle> cycles;
    long visited = 0;
};

// Depth-4 search: every closed walk u -> a -> b -> c -> u on distinct
// vertices, reported in both directions. Neighbor lists are iterated in
// ascending id order, so output order is deterministic.
inline std::vector<FourCycle> raw_four_cycles(const GraphView& g, VertexId u, long* visited = nullptr) {
    std::vector<FourCycle> out;
    long touched = 1;
    for (VertexId a : g.neighbors(u)) {
        ++touched;
        for (VertexId b : g.neighbors(a)) {
            if (b == u || b == a) continue;
            ++touched;
            for (VertexId c : g.neighbors(b)) {
                if (c == u || c == a || c == b) continue;
                ++touched;
                if (g.has_edge(c, u)) out.push_back(FourCycle{{u, a, b, c}});
            }
        }
    }
    if (visited) *visited = touched;
    return out;
}

// Keeps the first-encountered direction of each cycle: a tuple is dropped when
// its reversal (v1,v4,v3,v2) is already present.
inline CycleSet remove_duplicates(const std::vector<FourCycle>& raw) {
    CycleSet cs;
    if (!raw.empty()) cs.root = raw[0].v[0];
    for (const auto& c : raw) {
        if (c.v[0] != cs.root) throw std::invalid_argument("cycles must share the root vertex");
        FourCycle rev{{c.v[0], c.v[3], c.v[2], c.v[1]}};
        bool present = false;
        for (const auto& kept : cs.cycles)
            if (kept == rev || kept == c) {
                present = true;
                break;
            }
        if (!present) cs.cycles.push_back(c);
    }
    return cs;
}

inline CycleSet four_cycles_search(const GraphView& g, VertexId u) {
    long visited = 0;
    auto raw = raw_four_cycles(g, u, &visited);
    CycleSet cs = remove_duplicates(raw);
    cs.root = u;
    cs.visited = visited;
    return cs;
}

namespace detail {

inline bool seen_contains(const std::array<VertexId, 9>& seen, int count, VertexId v) {
    for (int i = 0; i < count; ++i)
        if (seen[i] == v) return true;
    return false;
}

// Chains cycles k..3 by shared root edges. Backtracks over the successor
// choice since several cycles may share a root edge with a_{k-1}.
inline bool chain_cycles(std::span<const FourCycle> cycles, bool used[4],
                         std::array<VertexId, 9>& seen, int seenCount,
                         VertexId aPrev, VertexId closing, int k) {
    if (k == 4) return aPrev == closing;
    for (int j = 1; j < 4; ++j) {
        if (used[j]) continue;
        const FourCycle& c = cycles[j];
        for (int o = 0; o < 2; ++o) {
            VertexId c2 = o ? c.v[3] : c.v[1];
            VertexId c4 = o ? c.v[1] : c.v[3];
            if (c2 != aPrev) continue;
            VertexId aNext = c4;
            VertexId b = c.v[2];
            if (seen_contains(seen, seenCount, aNext) || seen_contains(seen, seenCount, b)) continue;
            seen[seenCount] = aNext;
            seen[seenCount + 1] = b;
            used[j] = true;
            if (chain_cycles(cycles, used, seen, seenCount + 2, aNext, closing, k + 1)) return true;
            used[j] = false;
        }
    }
    return false;
}

} // namespace detail

// True iff the four cycles admit a cyclic arrangement (C0,C1,C2,C3) where
// consecutive cycles share a distinct root edge {u,a_k} and the nine vertices
// u, a_0..a_3, b_0..b_3 are pairwise distinct. The first cycle is fixed (any
// valid arrangement can be rotated to start there) and both handednesses of
// its orientation are tried.
inline bool is_lattice_pattern(std::span<const FourCycle> cycles) {
    if (cycles.size() != 4) throw std::invalid_argument("lattice pattern check needs exactly four cycles");
    const VertexId u = cycles[0].v[0];
    for (const auto& c : cycles) {
        if (c.v[0] != u) throw std::invalid_argument("lattice pattern cycles must share the root");
        if (c.v[0] == c.v[1] || c.v[0] == c.v[2] || c.v[0] == c.v[3] || c.v[1] == c.v[2] ||
            c.v[1] == c.v[3] || c.v[2] == c.v[3])
            throw std::invalid_argument("lattice pattern cycles must have distinct vertices");
    }
    const FourCycle& c0 = cycles[0];
    for (int flip = 0; flip < 2; ++flip) {
        VertexId a0 = flip ? c0.v[1] : c0.v[3];
        VertexId closing = flip ? c0.v[3] : c0.v[1]; // a_3 must meet the other root edge of C0
        std::array<VertexId, 9> seen{u, c0.v[2], a0};
        bool used[4] = {true, false, false, false};
        if (detail::chain_cycles(cycles, used, seen, 3, a0, closing, 1)) return true;
    }
    return false;
}

} // namespace utsw
