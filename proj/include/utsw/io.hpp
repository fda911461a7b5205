#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "utsw/graph.hpp"
#include "utsw/labeling.hpp"

namespace utsw {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int lineNo, const std::string& what)
        : std::runtime_error("line " + std::to_string(lineNo) + ": " + what), line(lineNo) {}
};

// Graph file: line 1 "utsw <n> <seed>", then one line per undirected edge
// "<u> <v> <L|R>" with u < v, sorted lexicographically. The format is
// canonical: read/write round-trips are byte-exact and the reader rejects
// anything the writer would not emit.
inline void write_graph(const UtswGraph& g, std::ostream& os) {
    os << "utsw " << g.n << ' ' << g.seed << '\n';
    for (VertexId u = 0; u < (VertexId)g.vertex_count(); ++u)
        for (const Neighbor& e : g.adj[(size_t)u])
            if (e.id > u)
                os << u << ' ' << e.id << ' ' << (e.kind == EdgeKind::Local ? 'L' : 'R') << '\n';
}

inline UtswGraph read_graph(std::istream& is) {
    std::string line;
    int lineNo = 0;

    if (!std::getline(is, line)) throw ParseError(1, "missing header");
    ++lineNo;
    std::istringstream header(line);
    std::string tag;
    long n = 0;
    std::uint64_t seed = 0;
    if (!(header >> tag >> n >> seed) || tag != "utsw" || (header >> std::ws, !header.eof()))
        throw ParseError(lineNo, "expected header 'utsw <n> <seed>'");
    if (n < 3) throw ParseError(lineNo, "torus size must be >= 3");

    UtswGraph g;
    g.n = (int)n;
    g.seed = seed;
    g.suppressed_collisions = -1;
    g.adj.assign((size_t)(n * n), {});
    const long count = n * n;

    long prevU = -1, prevV = -1;
    while (std::getline(is, line)) {
        ++lineNo;
        std::istringstream ls(line);
        long u = 0, v = 0;
        char kind = 0;
        if (!(ls >> u >> v >> kind) || (ls >> std::ws, !ls.eof()))
            throw ParseError(lineNo, "expected '<u> <v> <L|R>'");
        {
            // canonical rendering check: exactly one space between fields
            std::ostringstream canon;
            canon << u << ' ' << v << ' ' << kind;
            if (canon.str() != line) throw ParseError(lineNo, "non-canonical edge line");
        }
        if (kind != 'L' && kind != 'R') throw ParseError(lineNo, "edge kind must be L or R");
        if (u < 0 || u >= count || v < 0 || v >= count)
            throw ParseError(lineNo, "vertex id out of range");
        if (u >= v) throw ParseError(lineNo, "edge endpoints must satisfy u < v");
        if (u < prevU || (u == prevU && v <= prevV))
            throw ParseError(lineNo, "edges must be sorted and unique");
        prevU = u;
        prevV = v;
        int dist = torus_distance((int)n, vertex_position((int)n, (VertexId)u),
                                  vertex_position((int)n, (VertexId)v));
        if (kind == 'L' && dist != 1) throw ParseError(lineNo, "local edge endpoints are not adjacent on the torus");
        if (kind == 'R' && dist < 2) throw ParseError(lineNo, "long-range edge endpoints are torus-adjacent");
        g.add_edge((VertexId)u, (VertexId)v, kind == 'L' ? EdgeKind::Local : EdgeKind::LongRange);
    }

    long localEdges = g.edge_count() - g.long_range_edge_count();
    if (localEdges != 2 * count) throw ParseError(lineNo + 1, "local edges do not form the full torus");
    if (g.long_range_edge_count() > count) throw ParseError(lineNo + 1, "more long-range edges than vertices");
    return g;
}

inline void write_graph_file(const UtswGraph& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_graph(g, os);
}

inline UtswGraph read_graph_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_graph(is);
}

// Label file: CSV with header "vertex,x,y", one row per vertex in id order;
// unlabeled vertices emit empty coordinate fields.
inline void write_labels(const Labeling& labeling, std::ostream& os) {
    os << "vertex,x,y\n";
    for (size_t v = 0; v < labeling.labels.size(); ++v) {
        os << v << ',';
        if (labeling.labels[v]) os << labeling.labels[v]->x << ',' << labeling.labels[v]->y;
        else os << ',';
        os << '\n';
    }
}

inline Labeling read_labels(std::istream& is, int n) {
    require_model_size(n);
    const long count = (long)n * n;
    std::string line;
    int lineNo = 0;
    if (!std::getline(is, line)) throw ParseError(1, "missing header");
    ++lineNo;
    if (line != "vertex,x,y") throw ParseError(lineNo, "expected header 'vertex,x,y'");

    Labeling out;
    out.labels.assign((size_t)count, std::nullopt);
    long expected = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (expected >= count) throw ParseError(lineNo, "more rows than vertices");
        size_t firstComma = line.find(',');
        size_t secondComma = firstComma == std::string::npos ? std::string::npos
                                                             : line.find(',', firstComma + 1);
        if (secondComma == std::string::npos) throw ParseError(lineNo, "expected '<vertex>,<x>,<y>'");
        std::string idField = line.substr(0, firstComma);
        std::string xField = line.substr(firstComma + 1, secondComma - firstComma - 1);
        std::string yField = line.substr(secondComma + 1);

        long id = 0;
        try {
            size_t used = 0;
            id = std::stol(idField, &used);
            if (used != idField.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(lineNo, "bad vertex id");
        }
        if (id != expected) throw ParseError(lineNo, "rows must cover vertex ids in order");
        ++expected;

        if (xField.empty() != yField.empty()) throw ParseError(lineNo, "half-empty label");
        if (xField.empty()) continue;
        long x = 0, y = 0;
        try {
            size_t ux = 0, uy = 0;
            x = std::stol(xField, &ux);
            y = std::stol(yField, &uy);
            if (ux != xField.size() || uy != yField.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(lineNo, "bad label coordinates");
        }
        if (x < 0 || x >= n || y < 0 || y >= n) throw ParseError(lineNo, "label coordinate out of range");
        out.labels[(size_t)id] = Position{(int)x, (int)y};
    }
    if (expected != count) throw ParseError(lineNo + 1, "fewer rows than vertices");
    return out;
}

inline void write_labels_file(const Labeling& labeling, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_labels(labeling, os);
}

inline Labeling read_labels_file(const std::string& path, int n) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_labels(is, n);
}

} // namespace utsw
