// altkit command-line driver: generation, preprocessing, training,
// benchmarking, diagnostics, and the statistical battery.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "altkit/bench.hpp"
#include "altkit/cdh.hpp"
#include "altkit/graph.hpp"
#include "altkit/heuristic.hpp"
#include "altkit/landmarks.hpp"
#include "altkit/search.hpp"
#include "altkit/selector.hpp"
#include "altkit/sssp.hpp"
#include "altkit/stats.hpp"

namespace fs = std::filesystem;
using namespace altkit;

namespace {

constexpr const char* kVersion = "altkit 0.1.0";

// FNV-1a over the canonical configuration string; stamped into every output.
std::uint64_t config_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string provenance(const std::string& config, std::uint64_t seed) {
    std::ostringstream os;
    os << kVersion << "; manifest_hash=" << config_hash(config) << "; seed=" << seed;
    return os.str();
}

// Graph source: a generator spec ("sbm:5x2000", "ba:10000x5", "path:7") or a
// file path (.gr is DIMACS directed; anything else is a plain edge list).
struct GraphSpec {
    std::string spec;
    bool directed_edges = false;  // for edge-list files
    double p_in = 0.05, p_out = 0.001;
    double w_lo = 1.0, w_hi = 10.0;
    std::uint64_t gen_seed = 42;
};

Graph load_graph(const GraphSpec& gs) {
    const std::string& s = gs.spec;
    auto starts_with = [&](const char* p) { return s.rfind(p, 0) == 0; };
    if (starts_with("sbm:")) {
        const auto x = s.find('x', 4);
        if (x == std::string::npos)
            throw std::runtime_error("sbm spec: want sbm:<blocks>x<size>");
        return gen_sbm(std::stoull(s.substr(4, x - 4)), std::stoull(s.substr(x + 1)), gs.p_in,
                       gs.p_out, gs.w_lo, gs.w_hi, gs.gen_seed);
    }
    if (starts_with("ba:")) {
        const auto x = s.find('x', 3);
        if (x == std::string::npos) throw std::runtime_error("ba spec: want ba:<n>x<m_attach>");
        return gen_ba(std::stoull(s.substr(3, x - 3)), std::stoull(s.substr(x + 1)), gs.w_lo,
                      gs.w_hi, gs.gen_seed);
    }
    if (starts_with("path:")) return gen_path(std::stoull(s.substr(5)));
    std::ifstream in(s);
    if (!in) throw std::runtime_error("cannot open graph file: " + s);
    if (s.size() >= 3 && s.substr(s.size() - 3) == ".gr") return parse_dimacs_gr(in, &std::cerr);
    return parse_edge_list(in, gs.directed_edges, 0, &std::cerr);
}

std::string graph_id_of(const GraphSpec& gs) {
    std::string id = gs.spec;
    for (char& c : id)
        if (c == ':' || c == '/' || c == '\\' || c == '.') c = '_';
    return id;
}

QueryMode mode_from_string(const std::string& m) {
    if (m == "uniform") return QueryMode::uniform;
    if (m == "hotspot") return QueryMode::hotspot;
    if (m == "powerlaw") return QueryMode::powerlaw;
    throw std::runtime_error("unknown query mode: " + m);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write: " + path);
    return os;
}

// Relative cache paths resolve under $ALTKIT_CACHE_DIR when it is set.
std::string cache_path(const std::string& path) {
    const char* dir = std::getenv("ALTKIT_CACHE_DIR");
    if (dir == nullptr || path.empty() || fs::path(path).is_absolute()) return path;
    fs::create_directories(dir);
    return (fs::path(dir) / path).string();
}

// Plain-text key-value manifest: `key = value` lines, `#` comments.
std::map<std::string, std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            const auto a = v.find_first_not_of(" \t");
            const auto b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : v.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

template <typename T>
std::vector<T> parse_list(const std::string& csv) {
    std::vector<T> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<T>(std::stoull(item)));
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_gen(const GraphSpec& gs, const std::string& out_path, const std::string& format) {
    const Graph g = load_graph(gs);
    auto os = open_out(out_path);
    os << "# " << provenance(gs.spec, gs.gen_seed) << '\n';
    if (format == "gr") {
        write_dimacs_gr(g, os);
    } else {
        write_edge_list(g, os);
    }
    std::cerr << "wrote " << g.num_vertices() << " vertices, " << g.num_edges() << " edges to "
              << out_path << '\n';
    return 0;
}

int cmd_labels(const GraphSpec& gs, std::size_t k0, std::uint64_t seed,
               const std::string& labels_out, const std::string& pool_out) {
    const Graph g = load_graph(gs);
    const TeacherContext ctx = make_teacher_context(g, k0, seed);
    {
        const std::string resolved = cache_path(labels_out);
        std::ofstream os(resolved, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write: " + resolved);
        write_label_cache(ctx.labels, os, graph_content_hash(g),
                          pool_content_hash(ctx.pool.ids));
    }
    if (!pool_out.empty()) {
        auto os = open_out(pool_out);
        os << "# " << provenance(gs.spec + "/k0=" + std::to_string(k0), seed) << '\n';
        write_pool(ctx.pool, os);
    }
    std::cerr << "labels: K0=" << ctx.labels.pool_size() << " V=" << ctx.labels.num_vertices()
              << (ctx.labels.directed() ? " directed" : " undirected") << " -> " << labels_out
              << '\n';
    return 0;
}

int cmd_train(const GraphSpec& gs, std::size_t k0, std::size_t m, TrainConfig cfg,
              const std::vector<std::size_t>& checkpoints, const std::string& selector_out,
              const std::string& report_out, const std::string& checkpoint_dir,
              const std::string& labels_cache) {
    const Graph g = load_graph(gs);
    LabelTable labels;
    if (!labels_cache.empty()) {
        const std::string resolved = cache_path(labels_cache);
        std::ifstream is(resolved, std::ios::binary);
        if (!is) throw std::runtime_error("cannot open label cache: " + resolved);
        LabelCache cache = read_label_cache_keyed(is);
        if (cache.graph_hash != 0 && cache.graph_hash != graph_content_hash(g))
            throw std::runtime_error("label cache was built for a different graph");
        if (cache.table.pool_size() < k0)
            throw std::runtime_error("label cache pool smaller than the requested K0");
        labels = std::move(cache.table);
        if (labels.pool_size() > k0) labels = slice_labels(labels, k0);
    } else {
        labels = make_teacher_context(g, k0, cfg.seed).labels;
    }
    const ComponentReport comps = components(g);
    auto [sel, report] = train(labels, m, cfg, comps.query_component(g.directed()), checkpoints);
    if (report.diverged)
        std::cerr << "training diverged at epoch " << report.diverged_epoch
                  << " (deployed form remains admissible)\n";
    {
        std::ofstream os(selector_out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write: " + selector_out);
        write_selector_checkpoint(sel, cfg.epochs, cfg.seed, os);
    }
    if (!checkpoint_dir.empty()) {
        fs::create_directories(checkpoint_dir);
        for (const auto& [epoch, snapshot] : report.checkpoints) {
            std::ofstream os(
                fs::path(checkpoint_dir) / ("selector_ep" + std::to_string(epoch) + ".bin"),
                std::ios::binary);
            write_selector_checkpoint(snapshot, epoch, cfg.seed, os);
        }
    }
    if (!report_out.empty()) {
        auto os = open_out(report_out);
        os << "# " << provenance(gs.spec + "/train", cfg.seed) << '\n';
        os << "epoch,loss,unique_ratio\n";
        for (std::size_t e = 0; e < report.epoch_loss.size(); ++e)
            os << (e + 1) << ',' << report.epoch_loss[e] << ',' << report.epoch_unique_ratio[e]
               << '\n';
    }
    std::cerr << "trained m=" << m << " from K0=" << k0
              << "; unique_ratio=" << report.final_unique_ratio << " -> " << selector_out
              << '\n';
    return report.diverged ? 2 : 0;
}

int cmd_bench(const GraphSpec& gs, const std::vector<std::size_t>& budgets,
              const std::vector<std::string>& methods, const std::vector<std::uint64_t>& seeds,
              std::size_t n_queries, const std::string& mode_name, std::size_t epochs,
              const std::string& out_dir, std::size_t jobs) {
    const Graph g = load_graph(gs);
    const std::string graph_id = graph_id_of(gs);
    const QueryMode mode = mode_from_string(mode_name);
    // Queries sampled once (seed 42) and shared across all methods.
    const QuerySet queries = sample_queries(g, n_queries, mode, 42);
    fs::create_directories(out_dir);

    std::vector<MethodConfig> method_cfgs;
    for (const std::string& name : methods) {
        const auto m = bench_method_from_string(name);
        if (!m) throw std::runtime_error("unknown method: " + name);
        MethodConfig mc;
        mc.method = *m;
        mc.train.epochs = epochs;
        method_cfgs.push_back(mc);
    }

    // Teacher pool large enough for every arm at the largest budget, shared
    // per seed across cells.
    std::size_t max_pool = BudgetSpec::cdh_pool();
    for (std::size_t b : budgets) max_pool = std::max(max_pool, b);
    const ComponentReport comps = components(g);
    max_pool = std::min(max_pool, comps.query_component(g.directed()).size());

    struct Cell {
        std::size_t budget;
        std::size_t method_idx;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t b : budgets)
        for (std::size_t mi = 0; mi < method_cfgs.size(); ++mi)
            for (std::uint64_t s : seeds) cells.push_back({b, mi, s});

    std::map<std::uint64_t, TeacherContext> contexts;
    for (std::uint64_t s : seeds) contexts.emplace(s, make_teacher_context(g, max_pool, s));

    std::vector<BenchRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, cells.size()));
    std::vector<std::future<void>> futures;
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                const Cell& c = cells[i];
                const BudgetSpec budget{c.budget, g.directed()};
                try {
                    records[i] = run_cell(g, graph_id, method_cfgs[c.method_idx], budget,
                                          queries, c.seed, &contexts.at(c.seed));
                } catch (const std::exception& e) {
                    // A failed cell is recorded, not fatal to the sweep.
                    records[i].graph_id = graph_id;
                    records[i].method = to_string(method_cfgs[c.method_idx].method);
                    records[i].budget = c.budget;
                    records[i].seed = c.seed;
                    records[i].query_hash = queries.content_hash();
                    records[i].error = e.what();
                }
            }
        }));
    }
    for (auto& f : futures) f.get();

    const std::string config = gs.spec + "/bench/" + mode_name;
    auto summary = open_out((fs::path(out_dir) / "bench_summary.csv").string());
    summary << "# " << provenance(config, 42) << '\n';
    summary << "graph_id,method,budget,seed,query_hash,mean_expansions,"
               "mean_dijkstra_expansions,reduction_pct,violations,suboptimal_count\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const BenchRecord& rec = records[i];
        std::ostringstream name;
        name << "cell_" << graph_id << '_' << rec.method << "_B" << rec.budget << "_s"
             << rec.seed << ".csv";
        auto os = open_out((fs::path(out_dir) / name.str()).string());
        write_cell_csv(rec, os, provenance(config, rec.seed));
        summary << rec.graph_id << ',' << rec.method << ',' << rec.budget << ',' << rec.seed
                << ',' << rec.query_hash << ',' << rec.mean_expansions << ','
                << rec.mean_dijkstra_expansions << ',' << rec.reduction_pct << ','
                << rec.violations << ',' << rec.suboptimal_count << '\n';
    }
    std::cerr << "wrote " << cells.size() << " cell records to " << out_dir << '\n';
    return 0;
}

int cmd_drift(const GraphSpec& gs, std::size_t k0, std::size_t m,
              const std::vector<std::size_t>& epochs, const std::vector<std::uint64_t>& seeds,
              std::size_t n_queries, const std::string& init_name,
              const std::string& out_path) {
    const Graph g = load_graph(gs);
    const QuerySet queries = sample_queries(g, n_queries, QueryMode::uniform, 42);
    const InitScheme init = init_name == "identity_first_m" ? InitScheme::identity_first_m
                                                            : InitScheme::block_sparse;
    const auto rows = drift_diagnostic(g, k0, m, epochs, seeds, queries, init);
    auto os = open_out(out_path);
    os << "# " << provenance(gs.spec + "/drift", seeds.empty() ? 0 : seeds[0]) << '\n';
    os << "configuration,mean_expansions,reduction_pct\n";
    for (const DriftRow& r : rows)
        os << r.configuration << ',' << r.mean_expansions << ',' << r.reduction_pct << '\n';
    std::cerr << "wrote drift table (" << rows.size() << " rows) to " << out_path << '\n';
    return 0;
}

int cmd_audit(const GraphSpec& gs, const std::string& method_name, std::size_t budget,
              std::size_t n_queries, std::uint64_t seed, std::size_t epochs,
              const std::string& out_path) {
    const Graph g = load_graph(gs);
    const QuerySet queries = sample_queries(g, n_queries, QueryMode::uniform, 42);
    const auto method = bench_method_from_string(method_name);
    if (!method) throw std::runtime_error("unknown method: " + method_name);
    MethodConfig mc;
    mc.method = *method;
    mc.train.epochs = epochs;
    const BudgetSpec spec{budget, g.directed()};
    const BenchRecord rec = run_cell(g, graph_id_of(gs), mc, spec, queries, seed);

    if (!out_path.empty()) {
        auto os = open_out(out_path);
        os << "# " << provenance(gs.spec + "/audit/" + method_name, seed) << '\n';
        os << "query_id,s,t,dijkstra_cost,method_cost,expansions_method,expansions_dijkstra,"
              "violations\n";
        for (std::size_t i = 0; i < rec.rows.size(); ++i) {
            const PerQueryRow& r = rec.rows[i];
            os << i << ',' << r.query.s << ',' << r.query.t << ',' << r.dijkstra_cost << ','
               << r.method_cost << ',' << r.expansions_method << ',' << r.expansions_dijkstra
               << ',' << r.violations << '\n';
        }
    }
    std::cerr << method_name << " B=" << budget << ": reduction " << rec.reduction_pct
              << "%, violations " << rec.violations << ", suboptimal " << rec.suboptimal_count
              << '\n';
    return (rec.violations > 0 || rec.suboptimal_count > 0) ? 3 : 0;
}

int cmd_stats(const std::vector<std::string>& cell_files, const std::string& method_a,
              const std::string& method_b, double delta, double alpha, double q,
              const std::string& out_path) {
    struct Key {
        std::string graph;
        std::size_t budget;
        bool operator<(const Key& o) const {
            return graph != o.graph ? graph < o.graph : budget < o.budget;
        }
    };
    std::map<Key, std::map<std::uint64_t, std::map<std::string, BenchRecord>>> groups;
    for (const std::string& path : cell_files) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open cell csv: " + path);
        BenchRecord rec = read_cell_csv(is);
        if (rec.method != method_a && rec.method != method_b) continue;
        groups[{rec.graph_id, rec.budget}][rec.seed][rec.method] = std::move(rec);
    }
    if (groups.empty()) throw std::runtime_error("no cell records for the requested methods");

    struct Row {
        Key key;
        std::size_t n_seeds;
        double fisher_p, stouffer_p, median_p;
        TostResult tost;
    };
    std::vector<Row> rows;
    for (const auto& [key, by_seed] : groups) {
        std::vector<double> seed_ps;
        std::vector<int> directions;
        std::vector<double> reduction_diffs;
        for (const auto& [seed, by_method] : by_seed) {
            const auto ita = by_method.find(method_a);
            const auto itb = by_method.find(method_b);
            if (ita == by_method.end() || itb == by_method.end()) continue;
            const BenchRecord& a = ita->second;
            const BenchRecord& b = itb->second;
            if (a.rows.empty() || a.rows.size() != b.rows.size()) continue;  // failed cells
            if (a.query_hash != b.query_hash)
                throw std::runtime_error("shared-query discipline violated for " + key.graph);
            PairedSamples samples;
            double mean_diff = 0.0;
            for (std::size_t i = 0; i < a.rows.size(); ++i) {
                samples.a.push_back(static_cast<double>(a.rows[i].expansions_method));
                samples.b.push_back(static_cast<double>(b.rows[i].expansions_method));
                mean_diff += samples.a.back() - samples.b.back();
            }
            mean_diff /= static_cast<double>(a.rows.size());
            const TestResult w = wilcoxon_signed_rank(samples);
            seed_ps.push_back(w.p_value);
            // Direction from the per-seed mean difference in expansions.
            directions.push_back(mean_diff >= 0.0 ? 1 : -1);
            reduction_diffs.push_back(a.reduction_pct - b.reduction_pct);
        }
        if (seed_ps.empty()) continue;
        Row row;
        row.key = key;
        row.n_seeds = seed_ps.size();
        row.fisher_p = combine_fisher(seed_ps).p_value;
        row.stouffer_p = combine_stouffer(seed_ps, directions).p_value;
        std::vector<double> sorted = seed_ps;
        std::sort(sorted.begin(), sorted.end());
        row.median_p = sorted.size() % 2 == 1
                           ? sorted[sorted.size() / 2]
                           : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        row.tost =
            reduction_diffs.size() >= 2 ? tost_paired(reduction_diffs, delta, alpha) : TostResult{};
        rows.push_back(row);
    }

    // FDR across cells on the Fisher-combined p-values.
    std::vector<double> fisher_ps;
    for (const Row& r : rows) fisher_ps.push_back(r.fisher_p);
    const std::vector<bool> fdr = bh_fdr(fisher_ps, q);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
    }
    *os << "# " << provenance(method_a + "-vs-" + method_b, 0) << '\n';
    *os << "graph_id,budget,n_seeds,fisher_p,stouffer_p,median_p,fdr_flag,"
           "tost_mean_diff,tost_p_lower,tost_p_upper,tost_accept\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        *os << r.key.graph << ',' << r.key.budget << ',' << r.n_seeds << ',' << r.fisher_p
            << ',' << r.stouffer_p << ',' << r.median_p << ',' << (fdr[i] ? 1 : 0) << ','
            << r.tost.mean_diff << ',' << r.tost.p_lower << ',' << r.tost.p_upper << ','
            << (r.tost.accepted ? 1 : 0) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landmark-heuristic toolkit: ALT, learned compression, CDH, matched-memory "
                 "benchmarking, and the accompanying statistical tests"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GraphSpec gs;
    auto add_graph_opts = [&](CLI::App* cmd) {
        cmd->add_option("--graph", gs.spec,
                        "graph source: sbm:<b>x<s>, ba:<n>x<m>, path:<n>, or a file "
                        "(.gr DIMACS, otherwise edge list)")
            ->required();
        cmd->add_option("--gseed", gs.gen_seed, "generator seed");
        cmd->add_flag("--directed", gs.directed_edges, "treat edge-list files as directed");
        cmd->add_option("--pin", gs.p_in, "SBM intra-block probability");
        cmd->add_option("--pout", gs.p_out, "SBM inter-block probability");
        cmd->add_option("--wlo", gs.w_lo, "minimum edge weight");
        cmd->add_option("--whi", gs.w_hi, "maximum edge weight");
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate or convert a graph");
    std::string gen_out = "graph.edges", gen_format = "edges";
    add_graph_opts(gen);
    gen->add_option("--out", gen_out, "output path");
    gen->add_option("--format", gen_format, "edges|gr")->check(CLI::IsMember({"edges", "gr"}));

    // labels
    auto* labels = app.add_subcommand("labels", "FPS pool + teacher label tables");
    std::size_t k0 = 64;
    std::uint64_t seed = 42;
    std::string labels_out = "labels.bin", pool_out;
    add_graph_opts(labels);
    labels->add_option("--k0", k0, "teacher pool size");
    labels->add_option("--seed", seed, "experiment seed (FPS start vertex)");
    labels->add_option("--out", labels_out, "label cache path");
    labels->add_option("--pool-out", pool_out, "landmark pool text file");

    // train
    auto* tr = app.add_subcommand("train", "train the row-stochastic selector");
    std::size_t m = 16;
    TrainConfig tcfg;
    std::string ckpt_csv = "1,5,10,50,200", selector_out = "selector.bin",
                report_out = "train_report.csv", checkpoint_dir, init_name = "block_sparse",
                labels_cache;
    add_graph_opts(tr);
    tr->add_option("--k0", k0, "teacher pool size");
    tr->add_option("--m", m, "compressed dimensions");
    tr->add_option("--epochs", tcfg.epochs, "training epochs");
    tr->add_option("--lr", tcfg.learning_rate, "Adam learning rate");
    tr->add_option("--batch", tcfg.batch_size, "queries per epoch");
    tr->add_option("--lambda-cond", tcfg.lambda_cond, "row-entropy weight");
    tr->add_option("--lambda-uniq", tcfg.lambda_uniq, "duplicate-overlap weight");
    tr->add_option("--lambda-cov", tcfg.lambda_cov, "soft covering-radius weight");
    tr->add_option("--seed", tcfg.seed, "training seed");
    tr->add_option("--init", init_name, "block_sparse|identity_first_m")
        ->check(CLI::IsMember({"block_sparse", "identity_first_m"}));
    tr->add_option("--checkpoints", ckpt_csv, "comma-separated checkpoint epochs");
    tr->add_option("--out", selector_out, "final selector checkpoint");
    tr->add_option("--report", report_out, "per-epoch CSV report");
    tr->add_option("--checkpoint-dir", checkpoint_dir, "directory for epoch checkpoints");
    tr->add_option("--labels", labels_cache, "reuse a label cache instead of recomputing");

    // bench
    auto* bench = app.add_subcommand("bench", "matched-memory benchmark cells");
    std::string budgets_csv = "32,64,128", methods_csv = "alt,aac,cdh",
                seeds_csv = "42,123,456,789,1024", mode_name = "uniform",
                out_dir = "bench_out", manifest_path;
    std::size_t n_queries = 100, epochs = 200, jobs = 1;
    bench->add_option("--graph", gs.spec, "graph source (or set in --manifest)");
    bench->add_option("--gseed", gs.gen_seed, "generator seed");
    bench->add_flag("--directed", gs.directed_edges, "treat edge-list files as directed");
    bench->add_option("--pin", gs.p_in, "SBM intra-block probability");
    bench->add_option("--pout", gs.p_out, "SBM inter-block probability");
    bench->add_option("--wlo", gs.w_lo, "minimum edge weight");
    bench->add_option("--whi", gs.w_hi, "maximum edge weight");
    bench->add_option("--budgets", budgets_csv, "bytes/vertex list");
    bench->add_option("--methods", methods_csv,
                      "dijkstra,alt,aac,cdh,cdh_sub,cdh_sub_bpmx,hybrid");
    bench->add_option("--seeds", seeds_csv, "experiment seeds");
    bench->add_option("--queries", n_queries, "queries per cell");
    bench->add_option("--mode", mode_name, "uniform|hotspot|powerlaw");
    bench->add_option("--epochs", epochs, "selector training epochs");
    bench->add_option("--out", out_dir, "output directory");
    bench->add_option("--jobs", jobs, "concurrent cells");
    bench->add_option("--manifest", manifest_path, "key=value manifest supplying the above");

    // drift
    auto* drift = app.add_subcommand("drift", "forced-first-m vs trained diagnostic");
    std::string drift_epochs_csv = "0,50,200,500,1000", drift_seeds_csv = "42,123,456",
                drift_out = "drift.csv";
    add_graph_opts(drift);
    drift->add_option("--k0", k0, "teacher pool size");
    drift->add_option("--m", m, "compressed dimensions");
    drift->add_option("--epochs", drift_epochs_csv, "checkpoint epoch list");
    drift->add_option("--seeds", drift_seeds_csv, "experiment seeds");
    drift->add_option("--queries", n_queries, "benchmark queries");
    drift->add_option("--init", init_name, "block_sparse|identity_first_m")
        ->check(CLI::IsMember({"block_sparse", "identity_first_m"}));
    drift->add_option("--out", drift_out, "output CSV");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "admissibility / optimality audit");
    std::string audit_method = "alt", audit_out;
    std::size_t audit_budget = 32;
    add_graph_opts(audit_cmd);
    audit_cmd->add_option("--method", audit_method, "method arm to audit");
    audit_cmd->add_option("--budget", audit_budget, "bytes/vertex");
    audit_cmd->add_option("--queries", n_queries, "audit queries");
    audit_cmd->add_option("--seed", seed, "experiment seed");
    audit_cmd->add_option("--epochs", epochs, "selector training epochs");
    audit_cmd->add_option("--out", audit_out, "per-query audit CSV");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Wilcoxon/Fisher/Stouffer/FDR/TOST battery");
    std::vector<std::string> cell_files;
    std::string method_a = "aac", method_b = "alt", stats_out;
    double delta = 1.0, alpha = 0.05, fdr_q = 0.05;
    stats_cmd->add_option("--cells", cell_files, "cell CSV files")->required()->expected(-1);
    stats_cmd->add_option("--method-a", method_a, "first method");
    stats_cmd->add_option("--method-b", method_b, "second method (paired baseline)");
    stats_cmd->add_option("--delta", delta, "TOST equivalence margin (pp)");
    stats_cmd->add_option("--alpha", alpha, "TOST level");
    stats_cmd->add_option("--q", fdr_q, "BH-FDR rate");
    stats_cmd->add_option("--out", stats_out, "summary CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gs, gen_out, gen_format);
        if (labels->parsed()) return cmd_labels(gs, k0, seed, labels_out, pool_out);
        if (tr->parsed()) {
            tcfg.init = init_name == "identity_first_m" ? InitScheme::identity_first_m
                                                        : InitScheme::block_sparse;
            return cmd_train(gs, k0, m, tcfg, parse_list<std::size_t>(ckpt_csv), selector_out,
                             report_out, checkpoint_dir, labels_cache);
        }
        if (bench->parsed()) {
            if (!manifest_path.empty()) {
                const auto kv = read_manifest(manifest_path);
                auto maybe = [&](const char* key, std::string& target) {
                    const auto it = kv.find(key);
                    if (it != kv.end()) target = it->second;
                };
                maybe("graph", gs.spec);
                maybe("budgets", budgets_csv);
                maybe("methods", methods_csv);
                maybe("seeds", seeds_csv);
                maybe("mode", mode_name);
                maybe("out", out_dir);
                if (kv.count("queries")) n_queries = std::stoull(kv.at("queries"));
                if (kv.count("epochs")) epochs = std::stoull(kv.at("epochs"));
                if (kv.count("gseed")) gs.gen_seed = std::stoull(kv.at("gseed"));
            }
            if (gs.spec.empty())
                throw std::runtime_error("bench needs --graph (or a manifest with graph=...)");
            std::vector<std::string> methods;
            std::istringstream ms(methods_csv);
            std::string item;
            while (std::getline(ms, item, ',')) methods.push_back(item);
            return cmd_bench(gs, parse_list<std::size_t>(budgets_csv), methods,
                             parse_list<std::uint64_t>(seeds_csv), n_queries, mode_name, epochs,
                             out_dir, jobs);
        }
        if (drift->parsed())
            return cmd_drift(gs, k0, m, parse_list<std::size_t>(drift_epochs_csv),
                             parse_list<std::uint64_t>(drift_seeds_csv), n_queries, init_name,
                             drift_out);
        if (audit_cmd->parsed())
            return cmd_audit(gs, audit_method, audit_budget, n_queries, seed, epochs, audit_out);
        if (stats_cmd->parsed())
            return cmd_stats(cell_files, method_a, method_b, delta, alpha, fdr_q, stats_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
