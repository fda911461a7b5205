#pragma once

#include <cassert>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "utsw/cycles.hpp"
#include "utsw/graph.hpp"
#include "utsw/rng.hpp"
#include "utsw/torus.hpp"

namespace utsw {

struct LabelingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Detection enumerates all 4-subsets of a root's cycle set; a root whose set
// exceeds this cap is treated as not detected instead of stalling.
inline constexpr int kDetectionCycleCap = 64;

// The graph left after long-range edge removal: every detected vertex kept
// exactly its four torus edges.
struct AlmostTorus {
    GraphView graph;
    std::vector<char> detected;
};

// Partial vertex -> label map. `conflicts` counts attempts to relabel a vertex
// with a different value; it stays zero on consistent runs.
struct Labeling {
    VertexId origin = -1;
    std::vector<std::optional<Position>> labels;
    long conflicts = 0;

    long labeled_count() const {
        long c = 0;
        for (const auto& l : labels)
            if (l) ++c;
        return c;
    }
};

// Breadth-first search state threaded through the cross-labeling calls.
struct LabelingState {
    std::deque<VertexId> queue;
    std::vector<char> enqueued; // enqueued implies detected and labeled
    Labeling labeling;
};

// For every vertex u: union the u-incident edges of every 4-cycle combination
// that forms a lattice pattern. If the union has exactly 4 edges they are u's
// torus edges; u is detected and its remaining incident edges are dropped.
// An edge is dropped when either endpoint flags it.
inline AlmostTorus remove_long_range_edges(const GraphView& g) {
    require_labeling_size(g.n());
    const int count = g.vertex_count();
    std::vector<char> detected((size_t)count, 0);
    std::vector<std::vector<VertexId>> dropped((size_t)count);

    for (VertexId u = 0; u < (VertexId)count; ++u) {
        CycleSet cs = four_cycles_search(g, u);
        const auto& cycles = cs.cycles;
        const int m = (int)cycles.size();
        if (m < 4 || m > kDetectionCycleCap) continue;

        std::vector<VertexId> cross; // endpoints of the u-incident pattern edges
        bool overflow = false;
        auto note = [&](VertexId v) {
            for (VertexId w : cross)
                if (w == v) return;
            cross.push_back(v);
            if (cross.size() > 4) overflow = true;
        };
        for (int i = 0; i < m && !overflow; ++i)
            for (int j = i + 1; j < m && !overflow; ++j)
                for (int k = j + 1; k < m && !overflow; ++k)
                    for (int l = k + 1; l < m && !overflow; ++l) {
                        std::array<FourCycle, 4> combo{cycles[(size_t)i], cycles[(size_t)j],
                                                       cycles[(size_t)k], cycles[(size_t)l]};
                        if (!is_lattice_pattern(combo)) continue;
                        for (const auto& c : combo) {
                            note(c.v[1]);
                            note(c.v[3]);
                            if (overflow) break;
                        }
                    }
        if (overflow || cross.size() != 4) continue;

        detected[(size_t)u] = 1;
        for (VertexId v : g.neighbors(u)) {
            bool keep = false;
            for (VertexId w : cross)
                if (w == v) {
                    keep = true;
                    break;
                }
            if (!keep) dropped[(size_t)u].push_back(v); // already sorted: neighbors are
        }
    }

    std::vector<std::vector<VertexId>> adj((size_t)count);
    auto flagged = [&](VertexId a, VertexId b) {
        const auto& d = dropped[(size_t)a];
        return std::binary_search(d.begin(), d.end(), b);
    };
    for (VertexId u = 0; u < (VertexId)count; ++u)
        for (VertexId v : g.neighbors(u))
            if (!flagged(u, v) && !flagged(v, u)) adj[(size_t)u].push_back(v);

    return {GraphView(g.n(), std::move(adj)), std::move(detected)};
}

namespace detail {

// Walks the lattice pattern's cycles: the next cross endpoint is the other
// root-neighbor of a cycle containing prev, excluding the step back to
// prevPrev. Both stored orientations are accepted.
inline std::optional<VertexId> next_cross_vertex(std::span<const FourCycle> pattern,
                                                 VertexId prev, VertexId prevPrev) {
    for (const auto& c : pattern) {
        if (c.v[1] == prev && c.v[3] != prevPrev) return c.v[3];
        if (c.v[3] == prev && c.v[1] != prevPrev) return c.v[1];
    }
    return std::nullopt;
}

inline void assign_label(LabelingState& st, VertexId v, Position p) {
    auto& slot = st.labeling.labels[(size_t)v];
    if (!slot) {
        slot = p;
        return;
    }
    if (*slot != p) {
        ++st.labeling.conflicts; // keep the first label
        assert(false && "conflicting relabel");
    }
}

} // namespace detail

// Orders the four cross vertices of a clean origin by chaining its cycle set:
// o1 = c2 and o2 = c4 of the first cycle, then each next vertex shares a cycle
// with its predecessor. Requires an origin whose closed neighborhood is
// detected, which guarantees exactly four cycles.
inline std::array<VertexId, 4> reference_system_vertices(const GraphView& t, VertexId o) {
    CycleSet cs = four_cycles_search(t, o);
    if (cs.cycles.size() != 4) throw LabelingError("origin does not have a clean cross");
    std::array<VertexId, 4> out{};
    out[0] = cs.cycles[0].v[1];
    out[1] = cs.cycles[0].v[3];
    for (int i = 2; i < 4; ++i) {
        auto next = detail::next_cross_vertex(cs.cycles, out[(size_t)(i - 1)], out[(size_t)(i - 2)]);
        if (!next) throw LabelingError("reference system chaining failed");
        out[(size_t)i] = *next;
    }
    return out;
}

// Picks a random origin whose closed neighborhood in T' is all-detected,
// labels it (0,0) and its cross (0,1),(1,0),(0,n-1),(n-1,0), and enqueues the
// four cross vertices.
inline LabelingState label_reference_system(const AlmostTorus& t, SplitMix64& rng,
                                            long maxAttempts = 0) {
    const int n = t.graph.n();
    require_labeling_size(n);
    const long count = t.graph.vertex_count();
    if (maxAttempts <= 0) maxAttempts = 64 * count;

    LabelingState st;
    st.labeling.labels.assign((size_t)count, std::nullopt);
    st.enqueued.assign((size_t)count, 0);

    VertexId origin = -1;
    for (long attempt = 0; attempt < maxAttempts; ++attempt) {
        auto cand = (VertexId)rng.bounded((std::uint64_t)count);
        if (!t.detected[(size_t)cand]) continue;
        bool ok = true;
        for (VertexId v : t.graph.neighbors(cand))
            if (!t.detected[(size_t)v]) {
                ok = false;
                break;
            }
        if (ok) {
            origin = cand;
            break;
        }
    }
    if (origin < 0) throw LabelingError("no origin");

    st.labeling.origin = origin;
    st.labeling.labels[(size_t)origin] = Position{0, 0};
    auto cross = reference_system_vertices(t.graph, origin);
    st.labeling.labels[(size_t)cross[0]] = Position{0, 1};
    st.labeling.labels[(size_t)cross[1]] = Position{1, 0};
    st.labeling.labels[(size_t)cross[2]] = Position{0, n - 1};
    st.labeling.labels[(size_t)cross[3]] = Position{n - 1, 0};
    st.enqueued[(size_t)origin] = 1;
    for (VertexId v : cross) {
        st.queue.push_back(v);
        st.enqueued[(size_t)v] = 1;
    }
    return st;
}

// Labels the cross rooted at a detected, labeled vertex u. Scans u's lattice
// patterns for a cycle bearing a reference: a perpendicular pair of labeled
// unit edges (c2,c4 around u; or u-c2 with c2-c3; or u-c4 with c4-c3, the
// latter two requiring a detected witness). The remaining cross labels follow
// by vector arithmetic mod n, and newly labeled detected vertices are
// enqueued. Perpendicularity is verified on the labels themselves, which
// rejects cycles that close through a surviving long-range edge.
inline void label_cross(const AlmostTorus& t, VertexId u, LabelingState& st) {
    const int n = t.graph.n();
    auto& labels = st.labeling.labels;
    if (!labels[(size_t)u]) throw LabelingError("cross root is unlabeled");
    const Position lu = *labels[(size_t)u];

    CycleSet cs = four_cycles_search(t.graph, u);
    const auto& cycles = cs.cycles;
    const int m = (int)cycles.size();
    if (m < 4 || m > kDetectionCycleCap) throw LabelingError("unlabelable cross");

    auto isUnit = [n](Position d) {
        return d == Position{0, 1} || d == Position{1, 0} || d == Position{0, n - 1} ||
               d == Position{n - 1, 0};
    };
    auto perpendicular = [n](Position a, Position b) {
        return a != b && a != label_sub(n, Position{0, 0}, b);
    };

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                for (int l = k + 1; l < m; ++l) {
                    std::array<FourCycle, 4> pattern{cycles[(size_t)i], cycles[(size_t)j],
                                                     cycles[(size_t)k], cycles[(size_t)l]};
                    if (!is_lattice_pattern(pattern)) continue;
                    for (const FourCycle& cyc : pattern) {
                        for (int o = 0; o < 2; ++o) {
                            const VertexId c2 = o ? cyc.v[3] : cyc.v[1];
                            const VertexId c3 = cyc.v[2];
                            const VertexId c4 = o ? cyc.v[1] : cyc.v[3];

                            bool hit = false;
                            std::optional<Position> newU1, newU2;
                            if (labels[(size_t)c2] && labels[(size_t)c4]) {
                                Position d2 = label_sub(n, *labels[(size_t)c2], lu);
                                Position d4 = label_sub(n, *labels[(size_t)c4], lu);
                                hit = isUnit(d2) && isUnit(d4) && perpendicular(d2, d4);
                            }
                            if (!hit && (t.detected[(size_t)c2] || t.detected[(size_t)c3]) &&
                                labels[(size_t)c2] && labels[(size_t)c3]) {
                                Position d2 = label_sub(n, *labels[(size_t)c2], lu);
                                Position dd = label_sub(n, *labels[(size_t)c3], *labels[(size_t)c2]);
                                if (isUnit(d2) && isUnit(dd) && perpendicular(d2, dd)) {
                                    newU2 = label_sub(n, label_add(n, lu, *labels[(size_t)c3]),
                                                      *labels[(size_t)c2]);
                                    hit = true;
                                }
                            }
                            if (!hit && (t.detected[(size_t)c3] || t.detected[(size_t)c4]) &&
                                labels[(size_t)c3] && labels[(size_t)c4]) {
                                Position d4 = label_sub(n, *labels[(size_t)c4], lu);
                                Position dd = label_sub(n, *labels[(size_t)c3], *labels[(size_t)c4]);
                                if (isUnit(d4) && isUnit(dd) && perpendicular(d4, dd)) {
                                    newU1 = label_sub(n, label_add(n, lu, *labels[(size_t)c3]),
                                                      *labels[(size_t)c4]);
                                    hit = true;
                                }
                            }
                            if (!hit) continue;

                            const VertexId u1 = c2;
                            const VertexId u2 = c4;
                            auto u3 = detail::next_cross_vertex(pattern, u2, u1);
                            if (!u3) continue;
                            auto u4 = detail::next_cross_vertex(pattern, *u3, u2);
                            if (!u4) continue;

                            if (newU1) detail::assign_label(st, u1, *newU1);
                            if (newU2) detail::assign_label(st, u2, *newU2);
                            const Position twoU = label_add(n, lu, lu);
                            detail::assign_label(st, *u3, label_sub(n, twoU, *labels[(size_t)u1]));
                            detail::assign_label(st, *u4, label_sub(n, twoU, *labels[(size_t)u2]));

                            const VertexId crossVerts[4] = {u1, u2, *u3, *u4};
                            for (VertexId w : crossVerts)
                                if (t.detected[(size_t)w] && !st.enqueued[(size_t)w]) {
                                    st.queue.push_back(w);
                                    st.enqueued[(size_t)w] = 1;
                                }
                            return;
                        }
                    }
                }
    throw LabelingError("unlabelable cross");
}

struct PipelineResult {
    AlmostTorus torus;
    Labeling labeling;
};

// Edge removal, reference system, then the breadth-first search over detected
// vertices. Vertices unreachable from the origin through detected local paths
// stay unlabeled.
inline PipelineResult run_labeling_pipeline(const GraphView& g, std::uint64_t seed) {
    require_labeling_size(g.n());
    AlmostTorus torus = remove_long_range_edges(g);
    SplitMix64 rng(seed);
    LabelingState st = label_reference_system(torus, rng);
    while (!st.queue.empty()) {
        VertexId u = st.queue.front();
        st.queue.pop_front();
        label_cross(torus, u, st);
    }
    return {std::move(torus), std::move(st.labeling)};
}

inline Labeling label_graph(const GraphView& g, std::uint64_t seed) {
    return run_labeling_pipeline(g, seed).labeling;
}

} // namespace utsw
