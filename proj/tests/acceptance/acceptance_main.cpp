// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria. Everything is single-threaded and seeded, so two runs
// produce identical results (criterion 9 measures wall time and is the only
// machine-sensitive check).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "utsw/bounds.hpp"
#include "utsw/experiments.hpp"
#include "utsw/graph.hpp"
#include "utsw/io.hpp"
#include "utsw/labeling.hpp"
#include "utsw/routing.hpp"

using namespace utsw;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// ---- criterion 1: exact Z inside both bounds for n in 5..512, Z(3)=0.2 ----

void criterion_z_bounds() {
    auto start = Clock::now();
    bool pass = true;
    std::string why;
    for (int n = 5; n <= 512 && pass; ++n) {
        double z = normalizing_factor(n);
        if (!(z_lower_bound(n) < z && z < z_upper_bound(n))) {
            pass = false;
            why = fmt("bound violated at n=%d", n);
        }
    }
    double z3 = normalizing_factor(3);
    if (std::abs(z3 - 0.2) > 1e-15 || std::abs(oracle::bf_normalizing_factor(3) - 0.2) > 1e-15) {
        pass = false;
        why = "Z(3) != 1/5";
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 1.0) {
        pass = false;
        why = fmt("took %.2fs (budget 1s)", elapsed);
    }
    report(1, pass,
           pass ? fmt("Z strictly inside ((4(ln n+1))^-1, (4 ln(n/2))^-1) for n=5..512, Z(3)=0.2, %.3fs", elapsed)
                : why);
}

// ---- criteria 2+3: cycle-set sizes and detection rates over 30 seeds ----

struct SweepCell {
    double meanCycles = 0.0;
    double meanDetected = 0.0;
    double meanLabeled = 0.0;
};

SweepCell sweep_cell(int n, int seeds, std::uint64_t base) {
    SweepCell cell;
    double cycleSum = 0.0;
    long roots = 0;
    double detectedSum = 0.0, labeledSum = 0.0;
    for (int s = 0; s < seeds; ++s) {
        UtswGraph g = generate_utsw(n, derive_seed(base, (std::uint64_t)n, (std::uint64_t)s));
        GraphView view = g.view();
        for (VertexId u = 0; u < (VertexId)g.vertex_count(); ++u)
            cycleSum += (double)four_cycles_search(view, u).cycles.size();
        roots += g.vertex_count();
        PipelineResult pr =
            run_labeling_pipeline(view, derive_seed(base + 1, (std::uint64_t)n, (std::uint64_t)s));
        long det = 0;
        for (char d : pr.torus.detected) det += d ? 1 : 0;
        detectedSum += (double)det / (double)g.vertex_count();
        labeledSum += (double)pr.labeling.labeled_count() / (double)g.vertex_count();
    }
    cell.meanCycles = cycleSum / (double)roots;
    cell.meanDetected = detectedSum / (double)seeds;
    cell.meanLabeled = labeledSum / (double)seeds;
    return cell;
}

void criteria_cycles_and_detection() {
    const int seeds = 30;
    const std::uint64_t base = 100;
    struct Target {
        int n;
        double cycles, cyclesTol;
        double detected, detectedTol;
    };
    const std::vector<Target> targets{
        {10, 7.48, 0.5, 0.88, 0.02},
        {100, 5.42, 0.3, 0.9604, 0.02},
        {150, 5.24, 0.3, 0.9635, 0.02},
    };
    bool cyclesPass = true, detectPass = true;
    std::string cyclesDetail, detectDetail;
    for (const Target& t : targets) {
        SweepCell cell = sweep_cell(t.n, seeds, base);
        cyclesDetail += fmt("n=%d mean=%.3f (target %.2f+-%.1f) ", t.n, cell.meanCycles, t.cycles,
                            t.cyclesTol);
        detectDetail += fmt("n=%d detected=%.4f (target %.4f+-%.2f) ", t.n, cell.meanDetected,
                            t.detected, t.detectedTol);
        if (std::abs(cell.meanCycles - t.cycles) > t.cyclesTol) cyclesPass = false;
        if (std::abs(cell.meanDetected - t.detected) > t.detectedTol) detectPass = false;
        if (cell.meanCycles < 4.0) cyclesPass = false;
        double floor = std::max(0.0, 1.0 - 4.0 * theoretical_eu_bound(t.n));
        if (cell.meanDetected < floor) detectPass = false;
    }
    report(2, cyclesPass, cyclesDetail + fmt("(%d seeds)", seeds));
    report(3, detectPass, detectDetail + fmt("(%d seeds)", seeds));
}

// ---- criterion 4: oracle equivalence for 4CS and LPRA ----

void criterion_oracles() {
    bool pass = true;
    std::string why;
    long rootsChecked = 0;

    for (int n = 3; n <= 8 && pass; ++n) {
        GraphView view = generate_torus(n).view();
        for (VertexId u = 0; u < (VertexId)view.vertex_count(); ++u, ++rootsChecked)
            if (oracle::canonical_set(four_cycles_search(view, u)) != oracle::bf_four_cycles(view, u)) {
                pass = false;
                why = fmt("4CS mismatch on the plain torus n=%d root=%d", n, (int)u);
                break;
            }
    }
    for (int variant = 0; variant < 100 && pass; ++variant) {
        int n = 5 + variant % 4;
        UtswGraph g = oracle::make_augmented_torus(n, n * n / 2, derive_seed(400, (std::uint64_t)variant, 0));
        GraphView view = g.view();
        for (VertexId u = 0; u < (VertexId)view.vertex_count(); ++u, ++rootsChecked)
            if (oracle::canonical_set(four_cycles_search(view, u)) != oracle::bf_four_cycles(view, u)) {
                pass = false;
                why = fmt("4CS mismatch on augmented variant %d root=%d", variant, (int)u);
                break;
            }
    }

    long quadsChecked = 0;
    SplitMix64 rng(405);
    for (int trial = 0; quadsChecked < 700 && trial < 4000 && pass; ++trial) {
        UtswGraph g = oracle::make_augmented_torus(6, 18, derive_seed(401, (std::uint64_t)trial, 0));
        GraphView view = g.view();
        auto u = (VertexId)rng.bounded((std::uint64_t)g.vertex_count());
        CycleSet cs = four_cycles_search(view, u);
        if (cs.cycles.size() < 4) continue;
        for (int rep = 0; rep < 4 && quadsChecked < 700; ++rep) {
            std::set<size_t> idx;
            while (idx.size() < 4) idx.insert((size_t)rng.bounded(cs.cycles.size()));
            std::array<FourCycle, 4> quad{};
            int slot = 0;
            for (size_t i : idx) quad[(size_t)slot++] = cs.cycles[i];
            if (is_lattice_pattern(quad) != oracle::bf_lattice_pattern(quad)) {
                pass = false;
                why = "LPRA mismatch on a sampled quadruple";
                break;
            }
            ++quadsChecked;
        }
    }
    // synthetic quadruples on distinct vertices (structure-only recognizer input)
    for (int trial = 0; trial < 300 && pass; ++trial) {
        std::array<FourCycle, 4> quad{};
        VertexId pool = 12;
        bool ok = true;
        for (int c = 0; c < 4; ++c) {
            std::set<VertexId> used{0};
            std::array<VertexId, 4> tuple{0, 0, 0, 0};
            for (int i = 1; i < 4; ++i) {
                VertexId v;
                int guard = 0;
                do {
                    v = (VertexId)(1 + rng.bounded((std::uint64_t)pool));
                } while (used.count(v) && ++guard < 100);
                if (used.count(v)) ok = false;
                used.insert(v);
                tuple[(size_t)i] = v;
            }
            quad[(size_t)c] = FourCycle{tuple};
        }
        if (!ok) continue;
        ++quadsChecked;
        if (is_lattice_pattern(quad) != oracle::bf_lattice_pattern(quad)) {
            pass = false;
            why = "LPRA mismatch on a synthetic quadruple";
        }
    }

    report(4, pass,
           pass ? fmt("4CS == brute force on %ld roots; LPRA == definition checker on %ld quadruples",
                      rootsChecked, quadsChecked)
                : why);
}

// ---- criteria 5+6: labeling correctness and detection soundness ----

void criteria_labeling_and_soundness() {
    bool labelPass = true, soundPass = true;
    std::string labelWhy, soundWhy;
    long pairsChecked = 0, graphsAudited = 0;

    auto audit_soundness = [&](const UtswGraph& g, const GraphView& view, const PipelineResult& pr) {
        ++graphsAudited;
        for (VertexId u = 0; u < (VertexId)g.vertex_count() && soundPass; ++u) {
            for (VertexId v : view.neighbors(u))
                if (!pr.torus.graph.has_edge(u, v) && g.edge_kind(u, v) == EdgeKind::Local) {
                    soundPass = false;
                    soundWhy = fmt("local edge removed at n=%d", g.n);
                    break;
                }
            if (pr.torus.detected[(size_t)u] && pr.torus.graph.neighbors(u).size() != 4) {
                soundPass = false;
                soundWhy = fmt("detected vertex with degree %zu at n=%d",
                               pr.torus.graph.neighbors(u).size(), g.n);
            }
        }
    };

    for (int n = 5; n <= 15 && labelPass; ++n) {
        for (int s = 0; s < 10 && labelPass; ++s) {
            UtswGraph g = generate_utsw(n, derive_seed(500, (std::uint64_t)n, (std::uint64_t)s));
            GraphView view = g.view();
            PipelineResult pr =
                run_labeling_pipeline(view, derive_seed(501, (std::uint64_t)n, (std::uint64_t)s));
            if (pr.labeling.conflicts != 0) {
                labelPass = false;
                labelWhy = fmt("label conflicts at n=%d seed=%d", n, s);
                break;
            }
            audit_soundness(g, view, pr);
            std::vector<VertexId> labeled;
            for (VertexId v = 0; v < (VertexId)g.vertex_count(); ++v)
                if (pr.labeling.labels[(size_t)v]) labeled.push_back(v);
            for (size_t i = 0; i < labeled.size() && labelPass; ++i)
                for (size_t j = i + 1; j < labeled.size(); ++j) {
                    VertexId a = labeled[i], b = labeled[j];
                    ++pairsChecked;
                    if (label_distance(n, *pr.labeling.labels[(size_t)a], *pr.labeling.labels[(size_t)b]) !=
                        torus_distance(n, g.truth_position(a), g.truth_position(b))) {
                        labelPass = false;
                        labelWhy = fmt("distance violated at n=%d seed=%d", n, s);
                        break;
                    }
                }
        }
    }

    // n = 50: sampled pairs
    for (int s = 0; s < 3 && labelPass; ++s) {
        UtswGraph g = generate_utsw(50, derive_seed(510, 50, (std::uint64_t)s));
        GraphView view = g.view();
        PipelineResult pr = run_labeling_pipeline(view, derive_seed(511, 50, (std::uint64_t)s));
        if (pr.labeling.conflicts != 0) {
            labelPass = false;
            labelWhy = fmt("label conflicts at n=50 seed=%d", s);
            break;
        }
        audit_soundness(g, view, pr);
        std::vector<VertexId> labeled;
        for (VertexId v = 0; v < (VertexId)g.vertex_count(); ++v)
            if (pr.labeling.labels[(size_t)v]) labeled.push_back(v);
        SplitMix64 rng(derive_seed(512, 50, (std::uint64_t)s));
        for (long i = 0; i < 100000 && labelPass; ++i) {
            VertexId a = labeled[(size_t)rng.bounded(labeled.size())];
            VertexId b = labeled[(size_t)rng.bounded(labeled.size())];
            ++pairsChecked;
            if (label_distance(50, *pr.labeling.labels[(size_t)a], *pr.labeling.labels[(size_t)b]) !=
                torus_distance(50, g.truth_position(a), g.truth_position(b))) {
                labelPass = false;
                labelWhy = fmt("distance violated at n=50 seed=%d", s);
            }
        }
    }

    report(5, labelPass,
           labelPass ? fmt("distance preservation on %ld labeled pairs (n=5..15 x10 seeds, n=50 sampled), zero conflicts",
                           pairsChecked)
                     : labelWhy);
    report(6, soundPass,
           soundPass ? fmt("no local edge removed and detected degree=4 across %ld audited graphs",
                           graphsAudited)
                     : soundWhy);
}

// ---- criterion 7: routing ----

void criterion_routing() {
    bool pass = true;
    std::string why;

    // pure-torus control: stretch exactly 1
    {
        GraphView view = generate_torus(16).view();
        Labeling lab = label_graph(view, 3);
        RoutingTables rt = build_routing_tables(view, lab);
        SplitMix64 rng(700);
        RoutingStats stats = routing_stats(view, rt, lab, 4000, rng);
        if (stats.mean_stretch != 1.0 || stats.delivery_rate != 1.0) {
            pass = false;
            why = fmt("torus control stretch=%.6f delivery=%.4f", stats.mean_stretch,
                      stats.delivery_rate);
        }
    }

    // fully labeled UTSW graphs at n = 32, 64, 128
    std::vector<double> fittedC;
    for (int n : {32, 64, 128}) {
        if (!pass) break;
        double hopSum = 0.0;
        long hopPairs = 0;
        int found = 0;
        for (int s = 0; s < 200 && found < 2; ++s) {
            UtswGraph g = generate_utsw(n, derive_seed(701, (std::uint64_t)n, (std::uint64_t)s));
            GraphView view = g.view();
            Labeling lab = label_graph(view, derive_seed(702, (std::uint64_t)n, (std::uint64_t)s));
            if (lab.labeled_count() != g.vertex_count()) continue;
            ++found;
            RoutingTables rt = build_routing_tables(view, lab);
            SplitMix64 rng(derive_seed(703, (std::uint64_t)n, (std::uint64_t)s));
            const long pairs = 3000;
            for (long i = 0; i < pairs; ++i) {
                auto a = (VertexId)rng.bounded((std::uint64_t)g.vertex_count());
                auto b = (VertexId)rng.bounded((std::uint64_t)(g.vertex_count() - 1));
                if (b >= a) ++b;
                RouteResult res = myopic_route(view, rt, lab, a, b, 4L * n);
                int dist = torus_distance(n, g.truth_position(a), g.truth_position(b));
                if (res.status != RouteStatus::Delivered) {
                    pass = false;
                    why = fmt("undelivered pair on fully labeled n=%d", n);
                    break;
                }
                if (res.hops > dist) {
                    pass = false;
                    why = fmt("hops %ld exceed distance %d at n=%d", res.hops, dist, n);
                    break;
                }
                hopSum += (double)res.hops;
                ++hopPairs;
            }
            if (!pass) break;
        }
        if (pass && found == 0) {
            pass = false;
            why = fmt("no fully labeled graph found at n=%d within 200 seeds", n);
        }
        if (pass) {
            double logn = std::log((double)n);
            fittedC.push_back(hopSum / (double)hopPairs / (logn * logn));
        }
    }
    if (pass) {
        for (size_t i = 1; i < fittedC.size(); ++i)
            if (fittedC[i] > fittedC[i - 1]) {
                pass = false;
                why = fmt("fitted c increases: c=%.3f/%.3f/%.3f", fittedC[0], fittedC[1], fittedC[2]);
            }
    }
    report(7, pass,
           pass ? fmt("torus stretch 1.0; hops<=distance and 100%% delivery on fully labeled graphs; "
                      "c fit %.3f/%.3f/%.3f non-increasing",
                      fittedC[0], fittedC[1], fittedC[2])
                : why);
}

// ---- criterion 8: forbidden-cycle probability vs the closed-form bound ----

void criterion_forbidden_cycles() {
    bool pass = true;
    std::string why;
    std::vector<RateEstimate> estimates;
    std::vector<int> ns{10, 50, 100, 150};
    for (int n : ns) {
        RateEstimate est = estimate_forbidden_cycle_rate(n, 8, 2500, 800);
        estimates.push_back(est);
        if (est.rate > theoretical_eu_bound(n)) {
            pass = false;
            why = fmt("estimate %.4f above bound %.4f at n=%d", est.rate, theoretical_eu_bound(n), n);
        }
    }
    if (pass) {
        const RateEstimate& a = estimates.front(); // n=10
        const RateEstimate& b = estimates.back();  // n=150
        double p1 = a.rate, p2 = b.rate;
        double se = std::sqrt(p1 * (1 - p1) / (double)a.samples + p2 * (1 - p2) / (double)b.samples);
        double z = (p1 - p2) / se;
        if (z < 1.645) {
            pass = false;
            why = fmt("decay not significant: rate(10)=%.4f rate(150)=%.4f z=%.2f", p1, p2, z);
        } else {
            why = fmt("rates %.4f/%.4f/%.4f/%.4f all below bounds; decay z=%.1f", estimates[0].rate,
                      estimates[1].rate, estimates[2].rate, estimates[3].rate, z);
        }
    }
    report(8, pass, why);
}

// ---- criterion 9: linear scaling of the labeling pipeline ----

void criterion_scaling() {
    auto time_label = [](int n) {
        std::vector<double> samples;
        for (int rep = 0; rep < 3; ++rep) {
            UtswGraph g = generate_utsw(n, derive_seed(900, (std::uint64_t)n, (std::uint64_t)rep));
            GraphView view = g.view();
            auto start = Clock::now();
            Labeling lab = label_graph(view, derive_seed(901, (std::uint64_t)n, (std::uint64_t)rep));
            double t = seconds_since(start);
            if (lab.labeled_count() <= 0) std::abort();
            samples.push_back(t);
        }
        std::sort(samples.begin(), samples.end());
        return samples[1]; // median of three
    };
    double t75 = time_label(75);
    double t150 = time_label(150);
    double ratio = t150 / t75;
    bool pass = ratio >= 2.5 && ratio <= 6.0;
    report(9, pass, fmt("label_graph median %.3fs @n=75, %.3fs @n=150, ratio %.2f (want [2.5, 6])", t75, t150, ratio));
}

// ---- criterion 10: byte-identical artifacts across repeated runs ----

void criterion_determinism() {
    bool pass = true;
    std::string why;

    auto graph_bytes = [](int n, std::uint64_t seed) {
        std::ostringstream os;
        write_graph(generate_utsw(n, seed), os);
        return os.str();
    };
    if (graph_bytes(50, 7) != graph_bytes(50, 7)) {
        pass = false;
        why = "graph files differ";
    }

    auto label_bytes = [](int n, std::uint64_t gseed, std::uint64_t lseed) {
        UtswGraph g = generate_utsw(n, gseed);
        std::ostringstream os;
        write_labels(label_graph(g.view(), lseed), os);
        return os.str();
    };
    if (pass && label_bytes(20, 7, 9) != label_bytes(20, 7, 9)) {
        pass = false;
        why = "label files differ";
    }

    if (pass) {
        ExperimentConfig cfg;
        cfg.n_list = {10};
        cfg.seeds = 3;
        cfg.base_seed = 77;
        cfg.trials = 100;
        cfg.pairs = 200;
        auto run = [&cfg]() {
            std::ostringstream os;
            Table t = run_detection_experiment(cfg);
            write_table_csv(t, os);
            write_table_json(t, os);
            Table r = run_routing_experiment(cfg);
            write_table_csv(r, os);
            return os.str();
        };
        if (run() != run()) {
            pass = false;
            why = "experiment outputs differ";
        }
    }
    report(10, pass, pass ? "graph, label and experiment outputs byte-identical across repeated runs" : why);
}

} // namespace

int main() {
    auto start = Clock::now();
    criterion_z_bounds();
    criteria_cycles_and_detection();
    criterion_oracles();
    criteria_labeling_and_soundness();
    criterion_routing();
    criterion_forbidden_cycles();
    criterion_scaling();
    criterion_determinism();
    std::printf("acceptance finished in %.1fs with %d failure(s)\n", seconds_since(start), g_failures);
    return g_failures;
}
