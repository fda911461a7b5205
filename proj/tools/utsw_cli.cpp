// Command-line front end: graph generation, labeling, greedy routing and the
// experiment tables. Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "utsw/experiments.hpp"
#include "utsw/graph.hpp"
#include "utsw/io.hpp"
#include "utsw/labeling.hpp"
#include "utsw/routing.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_n_list(const std::string& raw) {
    std::vector<int> out;
    std::string cur;
    std::istringstream is(raw);
    while (std::getline(is, cur, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(cur, &used);
            if (used != cur.size()) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad n list entry: '" + cur + "'");
        }
    }
    if (out.empty()) throw UsageError("empty n list");
    return out;
}

void emit_table(const utsw::Table& table, const std::string& format, const std::string& outPath) {
    std::ostringstream buf;
    if (format == "csv") utsw::write_table_csv(table, buf);
    else if (format == "json") utsw::write_table_json(table, buf);
    else throw UsageError("format must be csv or json");
    if (outPath.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream os(outPath, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open for writing: " + outPath);
        os << buf.str();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"undirected toroidal small-world graphs: generation, labeling, routing"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a UTSW graph file");
    int genN = 0;
    std::uint64_t genSeed = 0;
    std::string genOut;
    gen->add_option("--n", genN, "torus side length (>= 3)")->required();
    gen->add_option("--seed", genSeed, "generator seed")->required();
    gen->add_option("--out", genOut, "output graph file")->required();

    // label
    auto* lbl = app.add_subcommand("label", "run the labeling pipeline on a graph file");
    std::string lblIn, lblOut;
    std::uint64_t lblSeed = 0;
    lbl->add_option("--in", lblIn, "input graph file")->required();
    lbl->add_option("--seed", lblSeed, "origin-sampling seed")->required();
    lbl->add_option("--out", lblOut, "output label CSV")->required();

    // route
    auto* rt = app.add_subcommand("route", "greedy-route one pair over labels");
    std::string rtIn, rtLabels;
    long rtSrc = -1, rtDst = -1, rtHopLimit = 0;
    bool rtTrace = false;
    rt->add_option("--in", rtIn, "input graph file")->required();
    rt->add_option("--labels", rtLabels, "label CSV produced by 'label'")->required();
    rt->add_option("--src", rtSrc, "source vertex id")->required();
    rt->add_option("--dst", rtDst, "target vertex id")->required();
    rt->add_option("--hop-limit", rtHopLimit, "hop limit (default 4n)");
    rt->add_flag("--trace", rtTrace, "print one line per hop");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run an experiment table");
    std::string expKind, expNL, expFormat = "csv", expOut;
    int expSeeds = 30;
    std::uint64_t expBase = 1;
    long expTrials = 2000, expPairs = 2000;
    exp->add_option("kind", expKind, "detection|cycles|routing|zbounds|eu")->required();
    exp->add_option("--n-list", expNL, "comma-separated torus sizes");
    exp->add_option("--seeds", expSeeds, "graphs per size (default 30)");
    exp->add_option("--base-seed", expBase, "base seed (default 1)");
    exp->add_option("--trials", expTrials, "sampled roots per graph (eu)");
    exp->add_option("--pairs", expPairs, "routed pairs per cell (routing)");
    exp->add_option("--format", expFormat, "csv|json (default csv)");
    exp->add_option("--out", expOut, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            utsw::write_graph_file(utsw::generate_utsw(genN, genSeed), genOut);
        } else if (*lbl) {
            utsw::UtswGraph g = utsw::read_graph_file(lblIn);
            utsw::Labeling lab = utsw::label_graph(g.view(), lblSeed);
            utsw::write_labels_file(lab, lblOut);
        } else if (*rt) {
            utsw::UtswGraph g = utsw::read_graph_file(rtIn);
            utsw::GraphView view = g.view();
            utsw::Labeling lab = utsw::read_labels_file(rtLabels, g.n);
            if (rtSrc < 0 || rtSrc >= g.vertex_count() || rtDst < 0 || rtDst >= g.vertex_count())
                throw UsageError("src/dst out of range");
            long hopLimit = rtHopLimit > 0 ? rtHopLimit : 4L * g.n;
            utsw::RoutingTables tables = utsw::build_routing_tables(view, lab);
            utsw::RouteResult res = utsw::myopic_route(view, tables, lab, (utsw::VertexId)rtSrc,
                                                       (utsw::VertexId)rtDst, hopLimit);
            if (rtTrace) {
                for (size_t i = 0; i < res.ports.size(); ++i) {
                    utsw::VertexId v = res.path[i];
                    const utsw::Position& p = *lab.labels[(size_t)v];
                    std::cout << v << ' ' << p.x << ' ' << p.y << ' ' << res.ports[i] << '\n';
                }
            }
            utsw::Json summary;
            summary["delivered"] = res.status == utsw::RouteStatus::Delivered;
            summary["hops"] = res.hops;
            if (res.status != utsw::RouteStatus::Unroutable) {
                int dist = utsw::label_distance(g.n, *lab.labels[(size_t)rtSrc],
                                                *lab.labels[(size_t)rtDst]);
                summary["distance"] = dist;
                if (res.status == utsw::RouteStatus::Delivered)
                    summary["stretch"] = dist > 0 ? (double)res.hops / dist : 1.0;
                else
                    summary["stretch"] = nullptr;
            } else {
                summary["distance"] = nullptr;
                summary["stretch"] = nullptr;
            }
            std::cout << summary.dump() << '\n';
        } else if (*exp) {
            utsw::ExperimentConfig cfg;
            cfg.seeds = expSeeds;
            cfg.base_seed = expBase;
            cfg.trials = expTrials;
            cfg.pairs = expPairs;
            utsw::Table table;
            try {
                if (expKind == "zbounds") {
                    std::vector<int> ns;
                    if (!expNL.empty()) ns = parse_n_list(expNL);
                    else
                        for (int n = 5; n <= 512; ++n) ns.push_back(n);
                    table = utsw::verify_z_bounds(ns);
                } else {
                    if (!expNL.empty()) cfg.n_list = parse_n_list(expNL);
                    if (expKind == "detection") {
                        if (cfg.n_list.empty()) cfg.n_list = {10, 100, 150};
                        table = utsw::run_detection_experiment(cfg);
                    } else if (expKind == "cycles") {
                        if (cfg.n_list.empty()) cfg.n_list = {10, 100, 150};
                        table = utsw::run_cycle_size_experiment(cfg);
                    } else if (expKind == "routing") {
                        if (cfg.n_list.empty()) cfg.n_list = {32, 64, 128};
                        table = utsw::run_routing_experiment(cfg);
                    } else if (expKind == "eu") {
                        if (cfg.n_list.empty()) cfg.n_list = {10, 50, 100, 150};
                        table = utsw::run_eu_experiment(cfg);
                    } else {
                        throw UsageError("unknown experiment: " + expKind);
                    }
                }
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            emit_table(table, expFormat, expOut);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
