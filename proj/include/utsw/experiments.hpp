#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "utsw/bounds.hpp"
#include "utsw/graph.hpp"
#include "utsw/io.hpp"
#include "utsw/labeling.hpp"
#include "utsw/routing.hpp"

namespace utsw {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
    std::vector<int> n_list;
    int seeds = 30;
    std::uint64_t base_seed = 1;
    long trials = 2000; // sampled roots per graph (eu experiment)
    long pairs = 2000;  // routed pairs per cell (routing experiment)
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<Json> rows;
};

inline void require_experiment_sizes(const ExperimentConfig& cfg, int minN) {
    if (cfg.n_list.empty()) throw std::invalid_argument("n list must not be empty");
    if (cfg.seeds < 1) throw std::invalid_argument("seed count must be >= 1");
    for (int n : cfg.n_list)
        if (n < minN)
            throw std::invalid_argument("torus size " + std::to_string(n) + " is below the minimum " +
                                        std::to_string(minN) + " for this experiment");
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd r;
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / (double)xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.sd = std::sqrt(ss / (double)(xs.size() - 1));
    }
    return r;
}

struct RateEstimate {
    double rate = 0.0;
    double ci_lo = 0.0; // 95% Wilson interval
    double ci_hi = 0.0;
    long hits = 0;
    long samples = 0;
};

inline RateEstimate wilson_interval(long hits, long samples) {
    RateEstimate r;
    r.hits = hits;
    r.samples = samples;
    if (samples <= 0) return r;
    const double z = 1.959963985;
    double p = (double)hits / (double)samples;
    double z2 = z * z;
    double denom = 1.0 + z2 / (double)samples;
    double center = (p + z2 / (2.0 * (double)samples)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / (double)samples +
                                z2 / (4.0 * (double)samples * (double)samples)) /
                  denom;
    r.rate = p;
    r.ci_lo = std::max(0.0, center - half);
    r.ci_hi = std::min(1.0, center + half);
    return r;
}

// Fraction of roots whose 4-cycle set uses at least one long-range edge,
// judged against the generator's edge kinds.
inline long count_forbidden_roots(const UtswGraph& g, const std::vector<VertexId>& roots) {
    GraphView view = g.view();
    long hits = 0;
    for (VertexId u : roots) {
        CycleSet cs = four_cycles_search(view, u);
        bool forbidden = false;
        for (const FourCycle& c : cs.cycles) {
            for (int e = 0; e < 4 && !forbidden; ++e)
                if (g.edge_kind(c.v[(size_t)e], c.v[(size_t)((e + 1) % 4)]) == EdgeKind::LongRange)
                    forbidden = true;
            if (forbidden) break;
        }
        if (forbidden) ++hits;
    }
    return hits;
}

inline RateEstimate estimate_forbidden_cycle_rate(int n, int seeds, long sampleRoots,
                                                  std::uint64_t baseSeed) {
    require_labeling_size(n);
    long hits = 0, samples = 0;
    for (int s = 0; s < seeds; ++s) {
        UtswGraph g = generate_utsw(n, derive_seed(baseSeed, (std::uint64_t)n, (std::uint64_t)s));
        std::vector<VertexId> roots;
        const long count = g.vertex_count();
        if (sampleRoots >= count) {
            roots.resize((size_t)count);
            for (long v = 0; v < count; ++v) roots[(size_t)v] = (VertexId)v;
        } else {
            SplitMix64 rng(derive_seed(baseSeed ^ 0x726f6f74ull, (std::uint64_t)n, (std::uint64_t)s));
            roots.reserve((size_t)sampleRoots);
            for (long i = 0; i < sampleRoots; ++i) roots.push_back((VertexId)rng.bounded((std::uint64_t)count));
        }
        hits += count_forbidden_roots(g, roots);
        samples += (long)roots.size();
    }
    return wilson_interval(hits, samples);
}

// columns: n, z, lower, upper, pass, bound_ratio
inline Table verify_z_bounds(const std::vector<int>& nList) {
    if (nList.empty()) throw std::invalid_argument("n list must not be empty");
    Table t;
    t.name = "zbounds";
    t.columns = {"n", "z", "lower", "upper", "pass", "bound_ratio"};
    for (int n : nList) {
        require_model_size(n);
        double z = normalizing_factor(n);
        double lo = z_lower_bound(n);
        double hi = z_upper_bound(n);
        Json row;
        row["n"] = n;
        row["z"] = z;
        row["lower"] = lo;
        row["upper"] = hi;
        row["pass"] = (lo < z && z < hi);
        row["bound_ratio"] = hi / lo;
        t.rows.push_back(std::move(row));
    }
    return t;
}

// columns: n, seeds, detected_mean, detected_sd, labeled_mean, labeled_sd,
// detection_floor (the closed-form 1 - 4*Pr(E_u) lower bound, clamped at 0)
inline Table run_detection_experiment(const ExperimentConfig& cfg) {
    require_experiment_sizes(cfg, 5);
    Table t;
    t.name = "detection";
    t.columns = {"n", "seeds", "detected_mean", "detected_sd", "labeled_mean", "labeled_sd",
                 "detection_floor"};
    for (int n : cfg.n_list) {
        std::vector<double> detected, labeled;
        for (int s = 0; s < cfg.seeds; ++s) {
            UtswGraph g = generate_utsw(n, derive_seed(cfg.base_seed, (std::uint64_t)n, (std::uint64_t)s));
            PipelineResult pr = run_labeling_pipeline(
                g.view(), derive_seed(cfg.base_seed + 1, (std::uint64_t)n, (std::uint64_t)s));
            long det = 0;
            for (char d : pr.torus.detected) det += d ? 1 : 0;
            detected.push_back((double)det / (double)g.vertex_count());
            labeled.push_back((double)pr.labeling.labeled_count() / (double)g.vertex_count());
        }
        MeanSd dm = mean_sd(detected), lm = mean_sd(labeled);
        Json row;
        row["n"] = n;
        row["seeds"] = cfg.seeds;
        row["detected_mean"] = dm.mean;
        row["detected_sd"] = dm.sd;
        row["labeled_mean"] = lm.mean;
        row["labeled_sd"] = lm.sd;
        row["detection_floor"] = std::max(0.0, 1.0 - 4.0 * theoretical_eu_bound(n));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// columns: n, seeds, mean_size, sd, bound (closed-form expected-size bound)
inline Table run_cycle_size_experiment(const ExperimentConfig& cfg) {
    require_experiment_sizes(cfg, 5);
    Table t;
    t.name = "cycles";
    t.columns = {"n", "seeds", "mean_size", "sd", "bound"};
    for (int n : cfg.n_list) {
        std::vector<double> perGraph;
        double total = 0.0;
        long roots = 0;
        for (int s = 0; s < cfg.seeds; ++s) {
            UtswGraph g = generate_utsw(n, derive_seed(cfg.base_seed, (std::uint64_t)n, (std::uint64_t)s));
            GraphView view = g.view();
            double sum = 0.0;
            for (VertexId u = 0; u < (VertexId)g.vertex_count(); ++u)
                sum += (double)four_cycles_search(view, u).cycles.size();
            perGraph.push_back(sum / (double)g.vertex_count());
            total += sum;
            roots += g.vertex_count();
        }
        Json row;
        row["n"] = n;
        row["seeds"] = cfg.seeds;
        row["mean_size"] = total / (double)roots;
        row["sd"] = mean_sd(perGraph).sd;
        row["bound"] = expected_cycle_set_size_bound(n);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// columns: n, model, pairs, delivery_rate, mean_hops, p50_hops, p99_hops,
// mean_distance, mean_stretch, bits_per_vertex. Each n gets a pure-torus
// control row and a UTSW row.
inline Table run_routing_experiment(const ExperimentConfig& cfg) {
    require_experiment_sizes(cfg, 5);
    Table t;
    t.name = "routing";
    t.columns = {"n",         "model",        "pairs",    "delivery_rate", "mean_hops",
                 "p50_hops",  "p99_hops",     "mean_distance", "mean_stretch", "bits_per_vertex"};
    for (int n : cfg.n_list) {
        for (int model = 0; model < 2; ++model) {
            UtswGraph g = model == 0
                              ? generate_torus(n)
                              : generate_utsw(n, derive_seed(cfg.base_seed, (std::uint64_t)n, 0));
            GraphView view = g.view();
            Labeling lab = label_graph(view, derive_seed(cfg.base_seed + 1, (std::uint64_t)n,
                                                         (std::uint64_t)model));
            RoutingTables rt = build_routing_tables(view, lab);
            SplitMix64 rng(derive_seed(cfg.base_seed + 2, (std::uint64_t)n, (std::uint64_t)model));
            RoutingStats rs = routing_stats(view, rt, lab, cfg.pairs, rng);
            Json row;
            row["n"] = n;
            row["model"] = model == 0 ? "torus" : "utsw";
            row["pairs"] = rs.pairs;
            row["delivery_rate"] = rs.delivery_rate;
            row["mean_hops"] = rs.mean_hops;
            row["p50_hops"] = rs.p50_hops;
            row["p99_hops"] = rs.p99_hops;
            row["mean_distance"] = rs.mean_distance;
            row["mean_stretch"] = rs.mean_stretch;
            row["bits_per_vertex"] = mean_storage_bits(rt);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

// columns: n, samples, rate, ci_lo, ci_hi, bound, below_bound
inline Table run_eu_experiment(const ExperimentConfig& cfg) {
    require_experiment_sizes(cfg, 5);
    Table t;
    t.name = "eu";
    t.columns = {"n", "samples", "rate", "ci_lo", "ci_hi", "bound", "below_bound"};
    for (int n : cfg.n_list) {
        RateEstimate est = estimate_forbidden_cycle_rate(n, cfg.seeds, cfg.trials, cfg.base_seed);
        double bound = theoretical_eu_bound(n);
        Json row;
        row["n"] = n;
        row["samples"] = est.samples;
        row["rate"] = est.rate;
        row["ci_lo"] = est.ci_lo;
        row["ci_hi"] = est.ci_hi;
        row["bound"] = bound;
        row["below_bound"] = est.rate <= bound;
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string format_cell(const Json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
        return buf;
    }
    return v.get<std::string>();
}

inline void write_table_csv(const Table& t, std::ostream& os) {
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const Json& row : t.rows) {
        for (size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << format_cell(row.at(t.columns[i]));
        os << '\n';
    }
}

inline void write_table_json(const Table& t, std::ostream& os) {
    Json doc;
    doc["format"] = 1;
    doc["experiment"] = t.name;
    doc["rows"] = Json::array();
    for (const Json& row : t.rows) doc["rows"].push_back(row);
    os << doc.dump(2) << '\n';
}

} // namespace utsw
