#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "utsw/graph.hpp"
#include "utsw/labeling.hpp"
#include "utsw/rng.hpp"

namespace utsw {

// One row per incident edge: the neighbor's label (nil when unlabeled) and the
// port directing a message onto that edge. Ports index the adjacency list.
struct RoutingRow {
    std::optional<Position> label;
    int port = 0;
};

using RoutingTable = std::vector<RoutingRow>;

struct RoutingTables {
    int n = 0;
    std::vector<RoutingTable> tables;
};

enum class RouteStatus { Delivered, Stuck, HopLimit, Unroutable };

struct RouteResult {
    RouteStatus status = RouteStatus::Unroutable;
    long hops = 0;
    std::vector<VertexId> path; // visited vertices, starting at the source
    std::vector<int> ports;     // port taken at each forwarding step
};

inline RoutingTables build_routing_tables(const GraphView& g, const Labeling& labeling) {
    if ((long)labeling.labels.size() != (long)g.vertex_count())
        throw std::invalid_argument("labeling does not match the graph");
    RoutingTables rt;
    rt.n = g.n();
    rt.tables.resize((size_t)g.vertex_count());
    for (VertexId u = 0; u < (VertexId)g.vertex_count(); ++u) {
        const auto& nb = g.neighbors(u);
        auto& table = rt.tables[(size_t)u];
        table.resize(nb.size());
        for (int p = 0; p < (int)nb.size(); ++p)
            table[(size_t)p] = RoutingRow{labeling.labels[(size_t)nb[(size_t)p]], p};
    }
    return rt;
}

// Greedy forwarding on labels: move to the labeled neighbor that strictly
// decreases the label distance to the target, lowest port on ties. Stuck when
// no neighbor improves; unlabeled neighbors never participate.
inline RouteResult myopic_route(const GraphView& g, const RoutingTables& rt,
                                const Labeling& labeling, VertexId s, VertexId t,
                                long hopLimit) {
    if (hopLimit < 1) throw std::invalid_argument("hop limit must be >= 1");
    RouteResult res;
    if (!labeling.labels[(size_t)s] || !labeling.labels[(size_t)t]) {
        res.status = RouteStatus::Unroutable;
        return res;
    }
    const int n = g.n();
    const Position target = *labeling.labels[(size_t)t];
    res.path.push_back(s);
    VertexId cur = s;
    while (true) {
        if (cur == t) {
            res.status = RouteStatus::Delivered;
            res.hops = (long)res.path.size() - 1;
            return res;
        }
        if ((long)res.path.size() - 1 >= hopLimit) {
            res.status = RouteStatus::HopLimit;
            res.hops = (long)res.path.size() - 1;
            return res;
        }
        int curDist = label_distance(n, *labeling.labels[(size_t)cur], target);
        int bestDist = curDist;
        int bestPort = -1;
        for (const RoutingRow& row : rt.tables[(size_t)cur]) {
            if (!row.label) continue;
            int d = label_distance(n, *row.label, target);
            if (d < bestDist) {
                bestDist = d;
                bestPort = row.port;
            }
        }
        if (bestPort < 0) {
            res.status = RouteStatus::Stuck;
            res.hops = (long)res.path.size() - 1;
            return res;
        }
        cur = g.neighbors(cur)[(size_t)bestPort];
        res.ports.push_back(bestPort);
        res.path.push_back(cur);
    }
}

inline long label_bits(int n) {
    long bits = 0;
    long v = 1;
    while (v < n) {
        v <<= 1;
        ++bits;
    }
    return 2 * bits; // two coordinates
}

inline long table_bits(int n, const RoutingTable& table) {
    long portBits = 1;
    while ((1L << portBits) < (long)table.size()) ++portBits;
    return (long)table.size() * (label_bits(n) + portBits);
}

// Mean storage per vertex: its own label plus its routing table.
inline double mean_storage_bits(const RoutingTables& rt) {
    double total = 0.0;
    for (const auto& table : rt.tables) total += (double)(label_bits(rt.n) + table_bits(rt.n, table));
    return total / (double)rt.tables.size();
}

struct RoutingStats {
    long pairs = 0;
    double delivery_rate = 0.0;
    double mean_hops = 0.0;   // over delivered pairs
    long p50_hops = 0;
    long p99_hops = 0;
    double mean_distance = 0.0; // label distance over sampled pairs
    double mean_stretch = 0.0;  // hops / distance over delivered pairs
};

// Samples uniform ordered pairs of distinct labeled vertices and routes them.
inline RoutingStats routing_stats(const GraphView& g, const RoutingTables& rt,
                                  const Labeling& labeling, long pairs, SplitMix64& rng,
                                  long hopLimit = 0) {
    if (pairs < 1) throw std::invalid_argument("pair count must be >= 1");
    if (hopLimit <= 0) hopLimit = 4L * g.n();
    std::vector<VertexId> labeled;
    for (VertexId v = 0; v < (VertexId)g.vertex_count(); ++v)
        if (labeling.labels[(size_t)v]) labeled.push_back(v);
    if (labeled.size() < 2) throw std::invalid_argument("no labeled pairs to sample");

    RoutingStats stats;
    stats.pairs = pairs;
    long delivered = 0;
    double hopSum = 0.0, distSum = 0.0, stretchSum = 0.0;
    long stretchCount = 0;
    std::vector<long> hopSamples;
    hopSamples.reserve((size_t)pairs);
    const int n = g.n();
    for (long i = 0; i < pairs; ++i) {
        auto si = (size_t)rng.bounded(labeled.size());
        auto ti = (size_t)rng.bounded(labeled.size() - 1);
        if (ti >= si) ++ti;
        VertexId s = labeled[si], t = labeled[ti];
        int dist = label_distance(n, *labeling.labels[(size_t)s], *labeling.labels[(size_t)t]);
        distSum += dist;
        RouteResult r = myopic_route(g, rt, labeling, s, t, hopLimit);
        if (r.status == RouteStatus::Delivered) {
            ++delivered;
            hopSum += (double)r.hops;
            hopSamples.push_back(r.hops);
            if (dist > 0) {
                stretchSum += (double)r.hops / (double)dist;
                ++stretchCount;
            }
        }
    }
    stats.delivery_rate = (double)delivered / (double)pairs;
    stats.mean_distance = distSum / (double)pairs;
    if (delivered > 0) {
        stats.mean_hops = hopSum / (double)delivered;
        std::sort(hopSamples.begin(), hopSamples.end());
        stats.p50_hops = hopSamples[(size_t)((double)(hopSamples.size() - 1) * 0.5)];
        stats.p99_hops = hopSamples[(size_t)((double)(hopSamples.size() - 1) * 0.99)];
    }
    if (stretchCount > 0) stats.mean_stretch = stretchSum / (double)stretchCount;
    return stats;
}

} // namespace utsw
