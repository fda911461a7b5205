#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "utsw/rng.hpp"
#include "utsw/torus.hpp"

namespace utsw {

using VertexId = std::int32_t;

enum class EdgeKind : std::uint8_t { Local, LongRange };

// Canonical encoding: id = x*n + y. The generator places vertex id at this
// position, so it doubles as the ground-truth position of the vertex.
inline VertexId vertex_id(int n, Position p) { return (VertexId)(p.x * n + p.y); }

inline Position vertex_position(int n, VertexId v) { return {(int)(v / n), (int)(v % n)}; }

// Adjacency-only view of a graph over the n x n vertex set. This is what the
// labeling pipeline receives: no edge kinds, no generator positions.
class GraphView {
public:
    GraphView() = default;
    GraphView(int n, std::vector<std::vector<VertexId>> adj) : n_(n), adj_(std::move(adj)) {
        if ((long)adj_.size() != (long)n_ * n_)
            throw std::invalid_argument("adjacency size does not match n^2");
    }

    int n() const { return n_; }
    int vertex_count() const { return n_ * n_; }

    const std::vector<VertexId>& neighbors(VertexId u) const { return adj_[(size_t)u]; }

    bool has_edge(VertexId u, VertexId v) const {
        const auto& nb = adj_[(size_t)u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    long edge_count() const {
        long total = 0;
        for (const auto& nb : adj_) total += (long)nb.size();
        return total / 2;
    }

private:
    int n_ = 0;
    std::vector<std::vector<VertexId>> adj_; // each list sorted ascending
};

struct Neighbor {
    VertexId id;
    EdgeKind kind;
};

// A generated UTSW graph: the 2n^2-edge spanning torus plus at most one
// long-range edge per vertex. Edge kinds and the canonical positions are
// generator ground truth, retained for verification only.
class UtswGraph {
public:
    int n = 0;
    std::uint64_t seed = 0;
    // number of long-range choices skipped because the edge already existed;
    // -1 when unknown (e.g. graph loaded from a file)
    int suppressed_collisions = -1;
    std::vector<std::vector<Neighbor>> adj; // sorted by neighbor id

    int vertex_count() const { return n * n; }

    Position truth_position(VertexId v) const { return vertex_position(n, v); }

    int degree(VertexId u) const {
        check_vertex(u);
        return (int)adj[(size_t)u].size();
    }

    bool has_edge(VertexId u, VertexId v) const {
        const auto& nb = adj[(size_t)u];
        auto it = std::lower_bound(nb.begin(), nb.end(), v,
                                   [](const Neighbor& a, VertexId b) { return a.id < b; });
        return it != nb.end() && it->id == v;
    }

    EdgeKind edge_kind(VertexId u, VertexId v) const {
        const auto& nb = adj[(size_t)u];
        auto it = std::lower_bound(nb.begin(), nb.end(), v,
                                   [](const Neighbor& a, VertexId b) { return a.id < b; });
        if (it == nb.end() || it->id != v) throw std::invalid_argument("no such edge");
        return it->kind;
    }

    void add_edge(VertexId u, VertexId v, EdgeKind kind) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("loops are not allowed");
        if (has_edge(u, v)) throw std::invalid_argument("parallel edges are not allowed");
        insert_sorted(u, v, kind);
        insert_sorted(v, u, kind);
    }

    long edge_count() const {
        long total = 0;
        for (const auto& nb : adj) total += (long)nb.size();
        return total / 2;
    }

    long long_range_edge_count() const {
        long total = 0;
        for (const auto& nb : adj)
            for (const auto& e : nb)
                if (e.kind == EdgeKind::LongRange) ++total;
        return total / 2;
    }

    GraphView view() const {
        std::vector<std::vector<VertexId>> plain(adj.size());
        for (size_t u = 0; u < adj.size(); ++u) {
            plain[u].reserve(adj[u].size());
            for (const auto& e : adj[u]) plain[u].push_back(e.id);
        }
        return GraphView(n, std::move(plain));
    }

private:
    void check_vertex(VertexId u) const {
        if (u < 0 || u >= (VertexId)vertex_count()) throw std::invalid_argument("vertex id out of range");
    }

    void insert_sorted(VertexId u, VertexId v, EdgeKind kind) {
        auto& nb = adj[(size_t)u];
        auto it = std::lower_bound(nb.begin(), nb.end(), v,
                                   [](const Neighbor& a, VertexId b) { return a.id < b; });
        nb.insert(it, Neighbor{v, kind});
    }
};

// The 2n^2-edge torus: vertex (i,j) connects to (i,(j+1) mod n) and
// ((i+1) mod n, j).
inline UtswGraph generate_torus(int n) {
    require_model_size(n);
    UtswGraph g;
    g.n = n;
    g.seed = 0;
    g.suppressed_collisions = 0;
    g.adj.assign((size_t)n * n, {});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            VertexId u = vertex_id(n, {x, y});
            g.add_edge(u, vertex_id(n, {x, mod_n(y + 1, n)}), EdgeKind::Local);
            g.add_edge(u, vertex_id(n, {mod_n(x + 1, n), y}), EdgeKind::Local);
        }
    return g;
}

// Exact sampler for the inverse-square target distribution: pick the ring at
// distance i with probability Z * |ring_i| * i^-2 (double-precision CDF;
// a draw equal to a boundary value selects the next ring), then a uniform
// member of that ring. The result is Pr(v) = Z * d(u,v)^-2 for every v != u.
class LongRangeSampler {
public:
    explicit LongRangeSampler(int n) : n_(n) {
        require_model_size(n);
        int maxd = 2 * (n / 2);
        rings_.resize((size_t)maxd + 1);
        cdf_.assign((size_t)maxd + 1, 0.0);
        double total = 0.0;
        for (int i = 1; i <= maxd; ++i) {
            rings_[(size_t)i] = ring_members(n, {0, 0}, i);
            total += (double)rings_[(size_t)i].size() / ((double)i * (double)i);
        }
        double running = 0.0;
        for (int i = 1; i <= maxd; ++i) {
            running += (double)rings_[(size_t)i].size() / ((double)i * (double)i);
            cdf_[(size_t)i] = running / total;
        }
        cdf_[(size_t)maxd] = 1.0;
        z_ = 1.0 / total;
    }

    double z() const { return z_; }

    VertexId sample(VertexId u, SplitMix64& rng) const {
        double r = rng.unit();
        auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), r);
        size_t i = (size_t)(it - cdf_.begin());
        if (i >= cdf_.size()) i = cdf_.size() - 1;
        const auto& ring = rings_[i];
        Position off = ring[rng.bounded(ring.size())];
        return vertex_id(n_, label_add(n_, vertex_position(n_, u), off));
    }

private:
    int n_;
    double z_ = 0.0;
    std::vector<double> cdf_;                 // cdf_[i] = Pr(distance <= i)
    std::vector<std::vector<Position>> rings_; // offsets from the origin
};

// Torus plus one long-range choice per vertex, in ascending id order. A choice
// whose edge already exists (a local edge, or the reverse choice of an earlier
// vertex) is skipped without resampling.
inline UtswGraph generate_utsw(int n, std::uint64_t seed) {
    UtswGraph g = generate_torus(n);
    g.seed = seed;
    LongRangeSampler sampler(n);
    SplitMix64 rng(seed);
    const VertexId count = (VertexId)g.vertex_count();
    for (VertexId u = 0; u < count; ++u) {
        VertexId v = sampler.sample(u, rng);
        if (g.has_edge(u, v)) {
            ++g.suppressed_collisions;
            continue;
        }
        g.add_edge(u, v, EdgeKind::LongRange);
    }
    return g;
}

} // namespace utsw
