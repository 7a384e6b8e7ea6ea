#include "altkit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "altkit/rng.hpp"

namespace altkit {

void BudgetSpec::validate() const {
    if (bytes_per_vertex == 0 || bytes_per_vertex % 4 != 0)
        throw std::invalid_argument("BudgetSpec: bytes/vertex must be a positive multiple of 4");
    if (aac_m() < 1 || alt_k() < 1 || cdh_r() < 1)
        throw std::invalid_argument("BudgetSpec: budget too small for a derived method count");
}

const char* to_string(QueryMode m) {
    switch (m) {
        case QueryMode::uniform: return "uniform";
        case QueryMode::hotspot: return "hotspot";
        case QueryMode::powerlaw: return "powerlaw";
    }
    return "?";
}

const char* to_string(BenchMethod m) {
    switch (m) {
        case BenchMethod::dijkstra: return "dijkstra";
        case BenchMethod::alt: return "alt";
        case BenchMethod::aac: return "aac";
        case BenchMethod::cdh: return "cdh";
        case BenchMethod::cdh_sub: return "cdh_sub";
        case BenchMethod::cdh_sub_bpmx: return "cdh_sub_bpmx";
        case BenchMethod::hybrid: return "hybrid";
    }
    return "?";
}

std::optional<BenchMethod> bench_method_from_string(const std::string& name) {
    for (BenchMethod m :
         {BenchMethod::dijkstra, BenchMethod::alt, BenchMethod::aac, BenchMethod::cdh,
          BenchMethod::cdh_sub, BenchMethod::cdh_sub_bpmx, BenchMethod::hybrid})
        if (name == to_string(m)) return m;
    return std::nullopt;
}

std::uint64_t QuerySet::content_hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (const Query& q : pairs) {
        mix(q.s);
        mix(q.t);
    }
    return h;
}

QuerySet sample_queries(const Graph& g, std::size_t n, QueryMode mode, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_queries: n must be positive");
    const ComponentReport comps = components(g);
    const std::vector<VertexId>& comp = comps.query_component(g.directed());
    if (comp.size() < 2)
        throw std::invalid_argument("sample_queries: component has fewer than 2 vertices");

    Rng rng(seed);
    QuerySet qs;
    qs.mode = mode;
    qs.seed = seed;
    qs.pairs.reserve(n);

    // Endpoint sampler per mode.
    std::vector<VertexId> hotspot_set;
    std::vector<double> cumulative;  // powerlaw prefix sums
    if (mode == QueryMode::hotspot) {
        // Top-1% of the component by degree ("small high-degree cluster");
        // ties broken by lower vertex id, at least one vertex.
        std::vector<VertexId> by_degree(comp);
        std::stable_sort(by_degree.begin(), by_degree.end(), [&](VertexId a, VertexId b) {
            return g.degree(a) > g.degree(b);
        });
        const std::size_t count = std::max<std::size_t>(1, comp.size() / 100);
        hotspot_set.assign(by_degree.begin(),
                           by_degree.begin() + static_cast<std::ptrdiff_t>(count));
    } else if (mode == QueryMode::powerlaw) {
        cumulative.resize(comp.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            acc += std::pow(static_cast<double>(g.degree(comp[i])), 1.5);
            cumulative[i] = acc;
        }
    }

    auto draw_endpoint = [&]() -> VertexId {
        switch (mode) {
            case QueryMode::uniform:
                return comp[rng.next_below(comp.size())];
            case QueryMode::hotspot:
                if (rng.next_double() < 0.9)
                    return hotspot_set[rng.next_below(hotspot_set.size())];
                return comp[rng.next_below(comp.size())];
            case QueryMode::powerlaw: {
                const double total = cumulative.back();
                const double u = rng.next_double() * total;
                const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
                return comp[static_cast<std::size_t>(it - cumulative.begin())];
            }
        }
        return comp[0];
    };

    while (qs.pairs.size() < n) {
        const VertexId s = draw_endpoint();
        const VertexId t = draw_endpoint();
        if (s == t) continue;  // no self-pairs
        qs.pairs.push_back({s, t});
    }
    return qs;
}

TeacherContext make_teacher_context(const Graph& g, std::size_t max_pool, std::uint64_t seed) {
    const ComponentReport comps = components(g);
    const std::vector<VertexId>& comp = comps.query_component(g.directed());
    Rng rng(seed ^ 0x464d5053ull);  // FPS start stream, separate from queries
    const VertexId start = comp[rng.next_below(comp.size())];
    TeacherContext ctx;
    ctx.start_vertex = start;
    ctx.pool = fps_select(g, max_pool, start);
    ctx.pool.seed = seed;
    ctx.labels = build_labels(g, ctx.pool);
    return ctx;
}

LabelTable slice_labels(const LabelTable& table, std::size_t k) {
    if (k > table.pool_size()) throw std::invalid_argument("slice_labels: prefix too long");
    std::vector<VertexId> ids(table.landmark_ids().begin(), table.landmark_ids().begin() + k);
    std::vector<std::vector<double>> d_out, d_in;
    for (std::size_t i = 0; i < k; ++i)
        d_out.emplace_back(table.d_out(i).begin(), table.d_out(i).end());
    if (table.directed())
        for (std::size_t i = 0; i < k; ++i)
            d_in.emplace_back(table.d_in(i).begin(), table.d_in(i).end());
    return LabelTable(std::move(ids), table.directed(), table.num_vertices(), std::move(d_out),
                      std::move(d_in));
}

namespace {

constexpr double kFloat32Eps = 5.9604644775390625e-08;  // 2^-24

std::vector<std::size_t> prefix_indices(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

// Narrow stored CDH distances through float32 (the 4-byte deployment charge);
// the off-budget pivot-pivot side table stays float64.
void narrow_cdh(CdhLabels& labels, double& max_abs) {
    max_abs = 0.0;
    auto narrow = [&max_abs](std::vector<std::vector<CdhLabels::Entry>>& table) {
        for (auto& row : table)
            for (auto& e : row) {
                e.dist = static_cast<double>(static_cast<float>(e.dist));
                max_abs = std::max(max_abs, std::abs(e.dist));
            }
    };
    narrow(labels.fwd);
    narrow(labels.bwd);
}

BenchRecord aggregate(const Graph& g, const std::string& graph_id, const std::string& method,
                      std::size_t budget, std::uint64_t seed, const QuerySet& queries,
                      const Heuristic& h, const AuditOptions& opt) {
    BenchRecord rec;
    rec.graph_id = graph_id;
    rec.method = method;
    rec.budget = budget;
    rec.seed = seed;
    rec.query_hash = queries.content_hash();
    rec.rows.resize(queries.pairs.size());

    // Queries fan out across threads; each lands in its own slot, so the
    // aggregation order is deterministic.
    const std::size_t workers = std::max<std::size_t>(
        1, std::min<std::size_t>(queries.pairs.size(), std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= queries.pairs.size()) return;
                const AuditRecord a = audit_one(g, queries.pairs[i], h, opt);
                rec.rows[i] = PerQueryRow{a.query,
                                          a.dijkstra_cost,
                                          a.method_cost,
                                          a.method_expansions,
                                          a.dijkstra_expansions,
                                          a.heuristic_violations,
                                          a.suboptimal};
            }
        }));
    }
    for (auto& f : futures) f.get();

    double sum_m = 0.0, sum_d = 0.0;
    for (const PerQueryRow& r : rec.rows) {
        sum_m += static_cast<double>(r.expansions_method);
        sum_d += static_cast<double>(r.expansions_dijkstra);
        rec.violations += r.violations;
        rec.suboptimal_count += r.suboptimal ? 1 : 0;
    }
    const double nq = static_cast<double>(rec.rows.size());
    rec.mean_expansions = sum_m / nq;
    rec.mean_dijkstra_expansions = sum_d / nq;
    rec.reduction_pct = rec.mean_dijkstra_expansions > 0.0
                            ? 100.0 * (1.0 - rec.mean_expansions / rec.mean_dijkstra_expansions)
                            : 0.0;
    return rec;
}

}  // namespace

BenchRecord run_cell(const Graph& g, const std::string& graph_id, const MethodConfig& method,
                     const BudgetSpec& budget, const QuerySet& queries, std::uint64_t seed,
                     const TeacherContext* ctx) {
    budget.validate();
    if (budget.graph_directed != g.directed())
        throw std::invalid_argument("run_cell: budget directedness does not match graph");

    const ComponentReport comps = components(g);
    const std::vector<VertexId>& comp = comps.query_component(g.directed());

    // Pool needed by this arm.
    std::size_t need = 0;
    switch (method.method) {
        case BenchMethod::dijkstra: need = 0; break;
        case BenchMethod::alt: need = budget.alt_k(); break;
        case BenchMethod::aac: need = budget.aac_k0(); break;
        case BenchMethod::cdh:
        case BenchMethod::cdh_sub:
        case BenchMethod::cdh_sub_bpmx:
            need = std::min(BudgetSpec::cdh_pool(), comp.size());
            break;
        case BenchMethod::hybrid: need = budget.bytes_per_vertex / 2; break;
    }

    TeacherContext local;
    const TeacherContext* use = ctx;
    if (need > 0 && (use == nullptr || use->pool.ids.size() < need)) {
        local = make_teacher_context(g, need, seed);
        use = &local;
    }

    const std::string name = to_string(method.method);
    switch (method.method) {
        case BenchMethod::dijkstra: {
            ZeroHeuristic zero;
            return aggregate(g, graph_id, name, budget.bytes_per_vertex, seed, queries, zero, {});
        }
        case BenchMethod::alt: {
            const std::size_t k = budget.alt_k();
            const auto idx = prefix_indices(k);
            DeployedLabels labels = narrow_to_float32(
                gather_labels(use->labels, idx, g.directed() ? idx : std::vector<std::size_t>{}));
            CompressedHeuristic h(labels);
            AuditOptions opt;
            opt.violation_slack = 4.0 * kFloat32Eps * labels.max_abs_label();
            return aggregate(g, graph_id, name, budget.bytes_per_vertex, seed, queries, h, opt);
        }
        case BenchMethod::aac: {
            const LabelTable teacher = slice_labels(use->labels, budget.aac_k0());
            TrainConfig cfg = method.train;
            cfg.seed = seed;
            auto [sel, report] = train(teacher, budget.aac_m(), cfg, comp);
            DeployedLabels labels = narrow_to_float32(deploy(sel, teacher));
            CompressedHeuristic h(labels);
            AuditOptions opt;
            opt.violation_slack = 4.0 * kFloat32Eps * labels.max_abs_label();
            return aggregate(g, graph_id, name, budget.bytes_per_vertex, seed, queries, h, opt);
        }
        case BenchMethod::cdh:
        case BenchMethod::cdh_sub:
        case BenchMethod::cdh_sub_bpmx: {
            const LabelTable pivots = slice_labels(use->labels, need);
            CdhLabels labels = build_cdh(pivots, budget.cdh_r());
            double max_abs = 0.0;
            narrow_cdh(labels, max_abs);
            const CdhMode mode =
                method.method == BenchMethod::cdh ? CdhMode::strict : CdhMode::substitution;
            CdhHeuristic h(labels, mode);
            AuditOptions opt;
            opt.bpmx = method.method == BenchMethod::cdh_sub_bpmx;
            opt.violation_slack = 4.0 * kFloat32Eps * max_abs;
            return aggregate(g, graph_id, name, budget.bytes_per_vertex, seed, queries, h, opt);
        }
        case BenchMethod::hybrid: {
            // Half/half split: compressed arm and ALT arm each at B/2.
            BudgetSpec half{budget.bytes_per_vertex / 2, budget.graph_directed};
            half.validate();
            const LabelTable teacher = slice_labels(use->labels, half.aac_k0());
            TrainConfig cfg = method.train;
            cfg.seed = seed;
            auto [sel, report] = train(teacher, half.aac_m(), cfg, comp);
            DeployedLabels aac_labels = narrow_to_float32(deploy(sel, teacher));
            const auto idx = prefix_indices(half.alt_k());
            DeployedLabels alt_labels = narrow_to_float32(
                gather_labels(use->labels, idx, g.directed() ? idx : std::vector<std::size_t>{}));
            CompressedHeuristic ha(aac_labels);
            CompressedHeuristic hb(alt_labels);
            HybridMaxHeuristic h(ha, hb);
            AuditOptions opt;
            opt.violation_slack =
                4.0 * kFloat32Eps *
                std::max(aac_labels.max_abs_label(), alt_labels.max_abs_label());
            return aggregate(g, graph_id, name, budget.bytes_per_vertex, seed, queries, h, opt);
        }
    }
    throw std::logic_error("run_cell: unreachable");
}

std::vector<DriftRow> drift_diagnostic(const Graph& g, std::size_t k0, std::size_t m,
                                       const std::vector<std::size_t>& epoch_checkpoints,
                                       const std::vector<std::uint64_t>& seeds,
                                       const QuerySet& queries, InitScheme init) {
    if (k0 < m) throw std::invalid_argument("drift_diagnostic: K0 must be >= m");
    if (seeds.empty()) throw std::invalid_argument("drift_diagnostic: need at least one seed");
    if (g.directed() && m % 2 != 0)
        throw std::invalid_argument(
            "drift_diagnostic: directed graphs need even m for the K = m/2 identity");
    const std::size_t alt_k = g.directed() ? m / 2 : m;

    struct Accum {
        double sum = 0.0;
        void add(double v) { sum += v; }
    };
    Accum dij, fps_alt, forced;
    std::vector<Accum> trained(epoch_checkpoints.size());

    const ComponentReport comps = components(g);
    const std::vector<VertexId>& comp = comps.query_component(g.directed());

    auto mean_expansions = [&](const Heuristic& h) {
        double sum = 0.0;
        for (const Query& q : queries.pairs)
            sum += static_cast<double>(astar(g, q.s, q.t, h).expansions);
        return sum / static_cast<double>(queries.pairs.size());
    };

    for (std::uint64_t seed : seeds) {
        const TeacherContext ctx = make_teacher_context(g, k0, seed);
        ZeroHeuristic zero;
        dij.add(mean_expansions(zero));

        // FPS-ALT at matched memory (K = m undirected, m/2 directed); the
        // pool prefix IS the K-step FPS result.
        const auto alt_idx = prefix_indices(alt_k);
        const DeployedLabels alt_labels = gather_labels(
            ctx.labels, alt_idx, g.directed() ? alt_idx : std::vector<std::size_t>{});
        CompressedHeuristic h_alt_arm(alt_labels);
        fps_alt.add(mean_expansions(h_alt_arm));

        // Forced one-hot on the first m pool indices, no training.
        const Selector identity =
            init_logits(k0, m, g.directed(), InitScheme::identity_first_m, seed);
        const DeployedLabels forced_labels = deploy(identity, ctx.labels);
        CompressedHeuristic h_forced(forced_labels);
        forced.add(mean_expansions(h_forced));

        // Trained selector, same pool, checkpointed.
        TrainConfig cfg;
        cfg.seed = seed;
        cfg.init = init;
        const std::size_t max_epoch =
            *std::max_element(epoch_checkpoints.begin(), epoch_checkpoints.end());
        cfg.epochs = max_epoch;
        auto [sel, report] = train(ctx.labels, m, cfg, comp, epoch_checkpoints);
        for (std::size_t ci = 0; ci < epoch_checkpoints.size(); ++ci) {
            const auto it = report.checkpoints.find(epoch_checkpoints[ci]);
            const Selector& at = it != report.checkpoints.end() ? it->second : sel;
            const DeployedLabels labels = deploy(at, ctx.labels);
            CompressedHeuristic h(labels);
            trained[ci].add(mean_expansions(h));
        }
    }

    const double ns = static_cast<double>(seeds.size());
    const double dij_mean = dij.sum / ns;
    auto row = [&](std::string name, double sum) {
        const double mean = sum / ns;
        return DriftRow{std::move(name), mean,
                        dij_mean > 0.0 ? 100.0 * (1.0 - mean / dij_mean) : 0.0};
    };
    std::vector<DriftRow> rows;
    rows.push_back(row("fps_alt_k=" + std::to_string(alt_k), fps_alt.sum));
    rows.push_back(row("forced_first_m", forced.sum));
    for (std::size_t ci = 0; ci < epoch_checkpoints.size(); ++ci)
        rows.push_back(row("trained_epochs=" + std::to_string(epoch_checkpoints[ci]),
                           trained[ci].sum));
    rows.push_back(row("dijkstra", dij.sum));
    return rows;
}

std::pair<BenchRecord, BenchRecord> first_m_pool_arm(const Graph& g, std::size_t k0,
                                                     std::size_t m, const QuerySet& queries,
                                                     std::uint64_t seed) {
    if (m > k0) throw std::invalid_argument("first_m_pool_arm: m must be <= K0");
    const std::size_t k = g.directed() ? m / 2 : m;  // directional matched-memory rule
    const TeacherContext ctx = make_teacher_context(g, k0, seed);

    const auto idx = prefix_indices(k);
    AltSubsetHeuristic prefix_h(ctx.labels, idx, g.directed() ? idx : std::vector<std::size_t>{});
    BenchRecord prefix = aggregate(g, "first_m_pool", "alt_pool_first_m", 0, seed, queries,
                                   prefix_h, {});

    const LandmarkPool canonical_pool = fps_select(g, k, ctx.start_vertex);
    const LabelTable canonical_labels = build_labels(g, canonical_pool);
    const auto all = prefix_indices(k);
    AltSubsetHeuristic canonical_h(canonical_labels, all,
                                   g.directed() ? all : std::vector<std::size_t>{});
    BenchRecord canonical = aggregate(g, "first_m_pool", "fps_alt", 0, seed, queries,
                                      canonical_h, {});
    return {std::move(prefix), std::move(canonical)};
}

// ---------------------------------------------------------------------------
// CSV

void write_cell_csv(const BenchRecord& rec, std::ostream& os, const std::string& provenance) {
    os << "# altkit cell record v1\n";
    if (!provenance.empty()) os << "# " << provenance << '\n';
    if (!rec.error.empty()) os << "# error: " << rec.error << '\n';
    os << "# expansions = closed-set pops that trigger successor relaxation,"
          " excluding stale heap entries and the goal pop\n";
    os << "graph_id,method,budget,seed,query_hash,mean_expansions,mean_dijkstra_expansions,"
          "reduction_pct,violations,suboptimal_count\n";
    os << rec.graph_id << ',' << rec.method << ',' << rec.budget << ',' << rec.seed << ','
       << rec.query_hash << ',' << rec.mean_expansions << ',' << rec.mean_dijkstra_expansions
       << ',' << rec.reduction_pct << ',' << rec.violations << ',' << rec.suboptimal_count
       << '\n';
    os << "query_index,s,t,dijkstra_cost,method_cost,expansions_method,expansions_dijkstra,"
          "violations,suboptimal\n";
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const PerQueryRow& r = rec.rows[i];
        char cost_buf[64], mcost_buf[64];
        std::snprintf(cost_buf, sizeof cost_buf, "%.17g", r.dijkstra_cost);
        std::snprintf(mcost_buf, sizeof mcost_buf, "%.17g", r.method_cost);
        os << i << ',' << r.query.s << ',' << r.query.t << ',' << cost_buf << ',' << mcost_buf
           << ',' << r.expansions_method << ',' << r.expansions_dijkstra << ',' << r.violations
           << ',' << (r.suboptimal ? 1 : 0) << '\n';
    }
}

BenchRecord read_cell_csv(std::istream& is) {
    BenchRecord rec;
    std::string line;
    int section = 0;  // 0: preamble, 1: summary row, 2: per-query rows
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("graph_id,", 0) == 0) {
            section = 1;
            continue;
        }
        if (line.rfind("query_index,", 0) == 0) {
            section = 2;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        auto next = [&]() {
            if (!std::getline(ls, field, ',')) throw std::runtime_error("cell csv: short row");
            return field;
        };
        if (section == 1) {
            rec.graph_id = next();
            rec.method = next();
            rec.budget = std::stoull(next());
            rec.seed = std::stoull(next());
            rec.query_hash = std::stoull(next());
            rec.mean_expansions = std::stod(next());
            rec.mean_dijkstra_expansions = std::stod(next());
            rec.reduction_pct = std::stod(next());
            rec.violations = std::stoull(next());
            rec.suboptimal_count = std::stoull(next());
        } else if (section == 2) {
            PerQueryRow r;
            next();  // query index
            r.query.s = static_cast<VertexId>(std::stoul(next()));
            r.query.t = static_cast<VertexId>(std::stoul(next()));
            r.dijkstra_cost = std::stod(next());
            r.method_cost = std::stod(next());
            r.expansions_method = std::stoull(next());
            r.expansions_dijkstra = std::stoull(next());
            r.violations = std::stoull(next());
            r.suboptimal = next() == "1";
            rec.rows.push_back(r);
        }
    }
    return rec;
}

}  // namespace altkit
