// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Run standalone or filter with `acceptance <num> [<num>...]`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "altkit/bench.hpp"
#include "altkit/cdh.hpp"
#include "altkit/graph.hpp"
#include "altkit/heuristic.hpp"
#include "altkit/landmarks.hpp"
#include "altkit/search.hpp"
#include "altkit/selector.hpp"
#include "altkit/sssp.hpp"
#include "altkit/stats.hpp"
#include "oracles.hpp"

using namespace altkit;

namespace {

std::vector<std::size_t> all_indices(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

// Exact distances d(s, *) for every source, via the library Dijkstra (cross
// checked against Bellman-Ford in the unit suite).
std::vector<std::vector<double>> apsp(const Graph& g) {
    std::vector<std::vector<double>> d(g.num_vertices());
    for (std::size_t s = 0; s < g.num_vertices(); ++s)
        d[s] = dijkstra_sssp(g, static_cast<VertexId>(s));
    return d;
}

std::vector<Query> component_queries(const std::vector<VertexId>& comp, std::size_t n,
                                     std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Query> qs;
    while (qs.size() < n) {
        const VertexId s = comp[rng.next_below(comp.size())];
        const VertexId t = comp[rng.next_below(comp.size())];
        if (s != t) qs.push_back({s, t});
    }
    return qs;
}

double mean_expansions(const Graph& g, const std::vector<Query>& queries, const Heuristic& h,
                       bool bpmx = false) {
    double sum = 0.0;
    for (const Query& q : queries)
        sum += static_cast<double>(astar(g, q.s, q.t, h, bpmx).expansions);
    return sum / static_cast<double>(queries.size());
}

struct Criterion {
    int number;
    std::string description;
    std::function<bool(std::string&)> run;
};

// --------------------------------------------------------------------------
// 1. Admissibility property suite: h_A <= h_ALT <= d on all pairs of >= 50
//    random graphs with >= 20 random row-stochastic selectors each.
bool criterion_1(std::string& detail) {
    std::size_t graphs = 0, selectors = 0, pairs_checked = 0, violations = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const bool directed = seed % 2 == 1;
        const std::size_t n = 40 + (seed * 7) % 160;  // <= 200 nodes
        const Graph g = testing_oracles::random_graph(n, 3 * n, directed, 10000 + seed);
        const ComponentReport comps = components(g);
        const auto& comp = comps.query_component(directed);
        const std::size_t k0 = std::min<std::size_t>(6, comp.size());
        const LandmarkPool pool = fps_select(g, k0, comp[0]);
        const LabelTable labels = build_labels(g, pool);
        const auto d = apsp(g);
        ++graphs;

        Rng rng(seed * 31 + 7);
        for (int sel = 0; sel < 20; ++sel) {
            ++selectors;
            Matrix a_fwd, a_bwd;
            if (directed) {
                a_fwd = testing_oracles::random_row_stochastic(2, k0, rng);
                a_bwd = testing_oracles::random_row_stochastic(2, k0, rng);
            } else {
                a_fwd = testing_oracles::random_row_stochastic(3, k0, rng);
            }
            const DeployedLabels dep = mix_labels(labels, a_fwd, a_bwd);
            for (VertexId u : comp) {
                for (VertexId t : comp) {
                    if (d[u][t] == kUnreachable) continue;
                    const double h_teacher = h_alt_full(labels, u, t);
                    const double h_a = h_compressed(dep, u, t);
                    ++pairs_checked;
                    if (h_a > h_teacher * (1.0 + 1e-9) + 1e-12) ++violations;
                    if (h_teacher > d[u][t] * (1.0 + 1e-9) + 1e-12) ++violations;
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu graphs, %zu selectors, %zu pair checks, %zu violations",
                  graphs, selectors, pairs_checked, violations);
    detail = buf;
    return violations == 0;
}

// --------------------------------------------------------------------------
// 2. Special-case identities: (a) A = I bitwise, (b) forced-first-m equals
//    FPS-ALT expansion counts on SBM 5x2000, (c) FPS prefix property.
bool criterion_2(std::string& detail) {
    // (a) identity selector is bitwise the full-pool teacher on 1000 pairs.
    {
        const Graph g = testing_oracles::random_graph(200, 700, /*directed=*/false, 2222);
        const ComponentReport comps = components(g);
        const LandmarkPool pool = fps_select(g, 8, comps.largest_weak[0]);
        const LabelTable labels = build_labels(g, pool);
        const Selector identity = init_logits(8, 8, false, InitScheme::identity_first_m, 0);
        const DeployedLabels dep = deploy(identity, labels);
        Rng rng(5);
        for (int i = 0; i < 1000; ++i) {
            const auto u = static_cast<VertexId>(rng.next_below(200));
            const auto t = static_cast<VertexId>(rng.next_below(200));
            if (h_compressed(dep, u, t) != h_alt_full(labels, u, t)) {
                detail = "identity selector deviated from the full-pool teacher";
                return false;
            }
        }
    }

    // (b) + (c) on the benchmark-shaped SBM instance.
    const Graph sbm = gen_sbm(5, 2000, 0.05, 0.001, 1.0, 10.0, 42);
    const QuerySet qs = sample_queries(sbm, 100, QueryMode::uniform, 42);

    const TeacherContext ctx = make_teacher_context(sbm, 64, 42);
    // (c) prefix property at (32, 8) and (64, 16).
    for (auto [k0, k] : {std::pair<std::size_t, std::size_t>{32, 8}, {64, 16}}) {
        const LandmarkPool small = fps_select(sbm, k, ctx.start_vertex);
        if (!std::equal(small.ids.begin(), small.ids.end(), ctx.pool.ids.begin())) {
            detail = "FPS prefix property failed at K=" + std::to_string(k);
            return false;
        }
        (void)k0;
    }

    // (b) forced one-hot on the first 8 indices of the K0=32 pool vs ALT K=8.
    const LabelTable teacher32 = slice_labels(ctx.labels, 32);
    const auto alt_idx = all_indices(8);
    const DeployedLabels alt_labels = gather_labels(ctx.labels, alt_idx, {});
    CompressedHeuristic h_alt_arm(alt_labels);
    const Selector forced = init_logits(32, 8, false, InitScheme::identity_first_m, 42);
    const DeployedLabels forced_labels = deploy(forced, teacher32);
    CompressedHeuristic h_forced(forced_labels);

    for (const Query& q : qs.pairs) {
        const std::size_t ea = astar(sbm, q.s, q.t, h_alt_arm).expansions;
        const std::size_t ef = astar(sbm, q.s, q.t, h_forced).expansions;
        if (ea != ef) {
            detail = "forced-first-m expansions diverged from FPS-ALT on a query";
            return false;
        }
    }
    detail = "identity bitwise on 1000 pairs; forced-first-m == FPS-ALT on 100 queries; "
             "prefix property at (32,8),(64,16)";
    return true;
}

// --------------------------------------------------------------------------
// 3. Covering-radius bound and the Gonzalez 2-approximation.
bool criterion_3(std::string& detail) {
    std::size_t graphs = 0, bound_checks = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const bool directed = seed % 2 == 1;
        const std::size_t n = 50 + (seed * 11) % 150;
        const Graph g = testing_oracles::random_graph(n, 3 * n, directed, 30000 + seed);
        const ComponentReport comps = components(g);
        const auto& comp = comps.query_component(directed);
        const LandmarkPool pool = fps_select(g, std::min<std::size_t>(8, comp.size()), comp[0]);
        const LabelTable labels = build_labels(g, pool);
        const auto d = apsp(g);
        ++graphs;

        Rng rng(seed);
        for (int trial = 0; trial < 3; ++trial) {
            // random nonempty subset of the pool
            std::vector<std::size_t> subset;
            for (std::size_t k = 0; k < labels.pool_size(); ++k)
                if (rng.next_double() < 0.5) subset.push_back(k);
            if (subset.empty()) subset.push_back(rng.next_below(labels.pool_size()));
            const double r = covering_radius(labels, subset, directed).r_m;
            for (VertexId u : comp)
                for (VertexId t : comp) {
                    if (d[u][t] == kUnreachable) continue;
                    const double h = h_alt(labels, subset, subset, u, t);
                    ++bound_checks;
                    if (d[u][t] - h > 2.0 * r + 1e-9) {
                        detail = "covering-radius bound violated";
                        return false;
                    }
                }
        }
    }

    // Gonzalez: r_fps <= 2 r* by exhaustive m-center enumeration, m <= 3.
    std::size_t gonzalez_checks = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const bool directed = seed >= 3;
        const std::size_t n = 18 + (seed % 3) * 6;  // <= 30 nodes
        const Graph g = testing_oracles::random_graph(n, 3 * n, directed, 40000 + seed);
        const ComponentReport comps = components(g);
        const auto& comp = comps.query_component(directed);
        const auto d = apsp(g);
        auto metric = [&](std::size_t l, std::size_t v) {
            if (!directed) return d[l][v];
            if (d[l][v] == kUnreachable || d[v][l] == kUnreachable) return kUnreachable;
            return std::max(d[l][v], d[v][l]);
        };
        for (std::size_t m = 1; m <= 3; ++m) {
            if (m > comp.size()) continue;
            const LandmarkPool pool = fps_select(g, m, comp[0]);
            const LabelTable labels = build_labels(g, pool);
            const double r_fps = covering_radius(labels, all_indices(m), directed).r_m;
            // exhaustive optimum over all m-subsets of V
            double r_star = kUnreachable;
            std::vector<std::size_t> idx(m);
            for (std::size_t i = 0; i < m; ++i) idx[i] = i;
            for (;;) {
                double worst = 0.0;
                for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                    double nearest = kUnreachable;
                    for (std::size_t c : idx) nearest = std::min(nearest, metric(c, v));
                    if (nearest == kUnreachable) continue;
                    worst = std::max(worst, nearest);
                }
                r_star = std::min(r_star, worst);
                std::size_t pos = m;
                while (pos > 0 && idx[pos - 1] == g.num_vertices() - m + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (std::size_t j = pos; j < m; ++j) idx[j] = idx[j - 1] + 1;
            }
            ++gonzalez_checks;
            if (r_fps > 2.0 * r_star + 1e-9) {
                detail = "Gonzalez 2-approximation violated";
                return false;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu graphs, %zu gap checks, %zu Gonzalez checks", graphs,
                  bound_checks, gonzalez_checks);
    detail = buf;
    return true;
}

// --------------------------------------------------------------------------
// 4. P7 closed form, exact integer arithmetic.
bool criterion_4(std::string& detail) {
    const Graph p7 = gen_path(7);
    LandmarkPool pool;
    pool.ids = {0, 2, 4, 6};
    const LabelTable labels = build_labels(p7, pool);
    const auto d = apsp(p7);

    const std::vector<std::size_t> s_gap{0, 3};  // landmarks {0, 6}
    const std::vector<std::size_t> s_cov{1, 2};  // landmarks {2, 4}

    double gap_sum_gap = 0.0, gap_sum_cov = 0.0;
    std::size_t failing_cov = 0;
    for (VertexId s = 1; s <= 5; ++s)
        for (VertexId t = 1; t <= 5; ++t) {
            if (s == t) continue;  // 20 interior ordered queries
            const double g1 = d[s][t] - h_alt(labels, s_gap, s, t);
            const double g2 = d[s][t] - h_alt(labels, s_cov, s, t);
            gap_sum_gap += g1;
            gap_sum_cov += g2;
            if (g2 > 0.0) {
                ++failing_cov;
                const bool is_15 = (s == 1 && t == 5) || (s == 5 && t == 1);
                if (!is_15 || g2 != 2.0) {
                    detail = "unexpected failing query for S={2,4}";
                    return false;
                }
            }
        }
    const double r_cov = covering_radius(labels, s_cov, false).r_m;
    const double r_gap = covering_radius(labels, s_gap, false).r_m;

    const bool ok = gap_sum_gap == 0.0 && gap_sum_cov / 20.0 == 0.2 && failing_cov == 2 &&
                    r_cov == 2.0 && r_gap == 3.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "mean gap {0,6}=%g, {2,4}=%g (2 failing queries), r2: %g vs %g",
                  gap_sum_gap / 20.0, gap_sum_cov / 20.0, r_cov, r_gap);
    detail = buf;
    return ok;
}

// --------------------------------------------------------------------------
// 5. Gradient correctness: finite differences and the gradient identity.
bool criterion_5(std::string& detail) {
    const Graph g = testing_oracles::random_graph(10, 18, /*directed=*/false, 321);
    const ComponentReport comps = components(g);
    const auto& comp = comps.largest_weak;
    const LandmarkPool pool = fps_select(g, 4, comp[0]);
    const LabelTable labels = build_labels(g, pool);

    Selector sel = init_logits(4, 2, false, InitScheme::block_sparse, 2718);
    Rng nudger(99);
    for (double& w : sel.w_fwd.data) w += nudger.uniform(-0.3, 0.3);

    const auto batch = component_queries(comp, 12, 8);
    const auto teacher = teacher_heuristic(labels, batch);
    TrainConfig cfg;
    const double tau = 1.0;
    auto loss_at = [&](const Selector& s) {
        Rng rng(0);
        const SampledSelection sm = sample_selection(s, tau, rng, /*with_noise=*/false);
        return loss_and_grad(s, labels, batch, teacher, tau, cfg, LossMode::soft, sm).loss;
    };
    Rng rng(0);
    const SampledSelection sm = sample_selection(sel, tau, rng, /*with_noise=*/false);
    const LossGrad lg = loss_and_grad(sel, labels, batch, teacher, tau, cfg, LossMode::soft, sm);

    const double h = 1e-6;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < sel.w_fwd.data.size(); ++i) {
        Selector plus = sel, minus = sel;
        plus.w_fwd.data[i] += h;
        minus.w_fwd.data[i] -= h;
        const double fd = (loss_at(plus) - loss_at(minus)) / (2.0 * h);
        const double denom = std::max({std::abs(fd), std::abs(lg.grad_fwd.data[i]), 1e-8});
        max_rel = std::max(max_rel, std::abs(fd - lg.grad_fwd.data[i]) / denom);
    }

    // Gradient identity: gap-to-distance vs gap-to-teacher.
    const auto d = apsp(g);
    std::vector<double> teacher_dist(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) teacher_dist[i] = d[batch[i].s][batch[i].t];
    const LossGrad g_teacher =
        loss_and_grad(sel, labels, batch, teacher, tau, cfg, LossMode::soft, sm);
    const LossGrad g_dist =
        loss_and_grad(sel, labels, batch, teacher_dist, tau, cfg, LossMode::soft, sm);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < g_teacher.grad_fwd.data.size(); ++i)
        max_abs = std::max(max_abs,
                           std::abs(g_teacher.grad_fwd.data[i] - g_dist.grad_fwd.data[i]));

    char buf[160];
    std::snprintf(buf, sizeof buf, "FD max rel err %.3g (<= 1e-4), identity max |diff| %.3g"
                  " (<= 1e-10)", max_rel, max_abs);
    detail = buf;
    return max_rel <= 1e-4 && max_abs <= 1e-10;
}

// --------------------------------------------------------------------------
// 6. Search optimality for every admissible arm on 100 queries x 3 graphs.
//    The graph trio mirrors the families the reference CDH benchmark runs
//    on: one undirected community graph plus two directed graphs.
bool criterion_6(std::string& detail) {
    std::vector<Graph> graphs;
    graphs.push_back(gen_sbm(3, 60, 0.15, 0.02, 1.0, 10.0, 1));
    graphs.push_back(testing_oracles::random_graph(150, 500, /*directed=*/true, 3));
    graphs.push_back(testing_oracles::random_graph(250, 900, /*directed=*/true, 4));

    std::size_t runs = 0, suboptimal = 0;
    for (const Graph& g : graphs) {
        const ComponentReport comps = components(g);
        const auto& comp = comps.query_component(g.directed());
        const LandmarkPool pool = fps_select(g, 16, comp[0]);
        const LabelTable labels = build_labels(g, pool);
        const LandmarkPool cdh_pool =
            fps_select(g, std::min<std::size_t>(64, comp.size()), comp[0]);
        const LabelTable cdh_labels = build_labels(g, cdh_pool);
        const auto queries = component_queries(comp, 100, 42);

        // Per-query reference costs.
        std::vector<double> ref(queries.size());
        ZeroHeuristic zero;
        for (std::size_t i = 0; i < queries.size(); ++i)
            ref[i] = astar(g, queries[i].s, queries[i].t, zero).cost;

        struct Arm {
            const Heuristic* h;
            bool bpmx;
        };
        std::vector<std::unique_ptr<Heuristic>> owned;
        std::vector<Arm> arms;

        // ALT on a 4-landmark subset.
        owned.push_back(std::make_unique<AltSubsetHeuristic>(
            labels, all_indices(4), g.directed() ? all_indices(4) : std::vector<std::size_t>{}));
        arms.push_back({owned.back().get(), false});

        // Compressed selector at every early-stopping checkpoint.
        TrainConfig cfg;
        cfg.epochs = 200;
        cfg.seed = 7;
        auto [sel, report] = train(labels, 4, cfg, comp, {1, 5, 10, 50, 200});
        std::vector<DeployedLabels> checkpoints;
        checkpoints.reserve(report.checkpoints.size());
        for (const auto& [epoch, snapshot] : report.checkpoints)
            checkpoints.push_back(deploy(snapshot, labels));
        for (const DeployedLabels& dep : checkpoints) {
            owned.push_back(std::make_unique<CompressedHeuristic>(dep));
            arms.push_back({owned.back().get(), false});
        }

        // CDH strict / substitution / substitution + BPMX on the P=64 pool.
        const CdhLabels cdh = build_cdh(cdh_labels, 3);
        owned.push_back(std::make_unique<CdhHeuristic>(cdh, CdhMode::strict));
        arms.push_back({owned.back().get(), false});
        owned.push_back(std::make_unique<CdhHeuristic>(cdh, CdhMode::substitution));
        arms.push_back({owned.back().get(), false});
        arms.push_back({owned.back().get(), true});  // +BPMX

        // Hybrid of the final selector and the ALT subset.
        owned.push_back(std::make_unique<HybridMaxHeuristic>(*arms[0].h, *arms[1].h));
        arms.push_back({owned.back().get(), false});

        for (const Arm& arm : arms) {
            for (std::size_t i = 0; i < queries.size(); ++i) {
                const SearchResult res =
                    astar(g, queries[i].s, queries[i].t, *arm.h, arm.bpmx);
                ++runs;
                if (!res.found || res.cost > ref[i] * (1.0 + 1e-9)) ++suboptimal;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu searches across 3 graphs, %zu suboptimal", runs,
                  suboptimal);
    detail = buf;
    return suboptimal == 0;
}

// --------------------------------------------------------------------------
// 7. Desk-scale SBM reproduction at B=32 (distributional).
bool criterion_7(std::string& detail) {
    const Graph sbm = gen_sbm(5, 2000, 0.05, 0.001, 1.0, 10.0, 42);
    const QuerySet qs = sample_queries(sbm, 100, QueryMode::uniform, 42);
    const ComponentReport comps = components(sbm);
    const auto& comp = comps.largest_weak;
    const std::vector<std::uint64_t> seeds{42, 123, 456, 789, 1024};
    const std::vector<std::size_t> checkpoints{1, 5, 10, 50, 200};

    ZeroHeuristic zero;
    const double dij = mean_expansions(sbm, qs.pairs, zero);

    double alt_red_sum = 0.0, forced_red_sum = 0.0, trained_red_sum = 0.0;
    std::map<std::size_t, double> identity_red_sum;
    for (std::uint64_t seed : seeds) {
        const TeacherContext ctx = make_teacher_context(sbm, 32, seed);

        const auto idx8 = all_indices(8);
        const DeployedLabels alt_labels = gather_labels(ctx.labels, idx8, {});
        CompressedHeuristic h_alt_arm(alt_labels);
        const double alt_mean = mean_expansions(sbm, qs.pairs, h_alt_arm);
        alt_red_sum += 100.0 * (1.0 - alt_mean / dij);

        const Selector forced = init_logits(32, 8, false, InitScheme::identity_first_m, seed);
        const DeployedLabels forced_labels = deploy(forced, ctx.labels);
        CompressedHeuristic h_forced(forced_labels);
        const double forced_mean = mean_expansions(sbm, qs.pairs, h_forced);
        forced_red_sum += 100.0 * (1.0 - forced_mean / dij);

        // Block-sparse default training, 200 epochs.
        TrainConfig cfg;
        cfg.seed = seed;
        auto [sel, report] = train(ctx.labels, 8, cfg, comp);
        const DeployedLabels trained_labels = deploy(sel, ctx.labels);
        CompressedHeuristic h_trained(trained_labels);
        trained_red_sum += 100.0 * (1.0 - mean_expansions(sbm, qs.pairs, h_trained) / dij);

        // Identity-init training with early-stopping checkpoints.
        TrainConfig icfg;
        icfg.seed = seed;
        icfg.init = InitScheme::identity_first_m;
        auto [isel, ireport] = train(ctx.labels, 8, icfg, comp, checkpoints);
        for (const auto& [epoch, snapshot] : ireport.checkpoints) {
            const DeployedLabels dep = deploy(snapshot, ctx.labels);
            CompressedHeuristic h(dep);
            identity_red_sum[epoch] += 100.0 * (1.0 - mean_expansions(sbm, qs.pairs, h) / dij);
        }
    }
    const double ns = static_cast<double>(seeds.size());
    const double alt_red = alt_red_sum / ns;
    const double forced_red = forced_red_sum / ns;
    const double trained_red = trained_red_sum / ns;

    bool ok = alt_red >= 89.95 - 3.0 && alt_red <= 89.95 + 3.0;
    ok = ok && trained_red <= forced_red;
    double worst_identity_gap = 0.0;
    for (const auto& [epoch, sum] : identity_red_sum)
        worst_identity_gap = std::max(worst_identity_gap, std::abs(forced_red - sum / ns));
    ok = ok && worst_identity_gap <= 0.1;

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "FPS-ALT red %.2f%% (target 89.95 +/- 3), trained %.2f%% <= forced %.2f%%, "
                  "identity-init worst checkpoint gap %.3f pp (<= 0.1)",
                  alt_red, trained_red, forced_red, worst_identity_gap);
    detail = buf;
    return ok;
}

// --------------------------------------------------------------------------
// 8. CDH dominance direction at B in {32, 64, 128} on the same SBM.
bool criterion_8(std::string& detail) {
    const Graph sbm = gen_sbm(5, 2000, 0.05, 0.001, 1.0, 10.0, 42);
    const QuerySet qs = sample_queries(sbm, 100, QueryMode::uniform, 42);
    const TeacherContext ctx = make_teacher_context(sbm, 64, 42);
    ZeroHeuristic zero;
    const double dij = mean_expansions(sbm, qs.pairs, zero);

    std::string summary;
    for (std::size_t budget : {32u, 64u, 128u}) {
        const BudgetSpec spec{budget, false};
        const std::size_t k = spec.alt_k();
        const TeacherContext* use = &ctx;
        TeacherContext bigger;
        if (k > ctx.pool.ids.size()) {
            bigger = make_teacher_context(sbm, k, 42);
            use = &bigger;
        }
        const auto idx = all_indices(k);
        const DeployedLabels alt_labels = gather_labels(use->labels, idx, {});
        CompressedHeuristic h_alt_arm(alt_labels);
        const double alt_red = 100.0 * (1.0 - mean_expansions(sbm, qs.pairs, h_alt_arm) / dij);

        const CdhLabels cdh = build_cdh(ctx.labels, spec.cdh_r());
        CdhHeuristic strict(cdh, CdhMode::strict);
        CdhHeuristic sub(cdh, CdhMode::substitution);
        const double red_strict =
            100.0 * (1.0 - mean_expansions(sbm, qs.pairs, strict) / dij);
        const double red_sub = 100.0 * (1.0 - mean_expansions(sbm, qs.pairs, sub) / dij);
        const double red_bpmx =
            100.0 * (1.0 - mean_expansions(sbm, qs.pairs, sub, /*bpmx=*/true) / dij);

        char line[120];
        std::snprintf(line, sizeof line, " B=%zu: ALT %.1f vs CDH %.1f/%.1f/%.1f;", budget,
                      alt_red, red_strict, red_sub, red_bpmx);
        summary += line;
        if (red_strict >= alt_red || red_sub >= alt_red || red_bpmx >= alt_red) {
            detail = "a CDH arm matched or beat FPS-ALT at B=" + std::to_string(budget);
            return false;
        }

        // Pointwise dominance of substitution over strict on audit pairs.
        Rng rng(budget);
        const ComponentReport comps = components(sbm);
        for (int i = 0; i < 2000; ++i) {
            const auto& comp = comps.largest_weak;
            const VertexId u = comp[rng.next_below(comp.size())];
            const VertexId t = comp[rng.next_below(comp.size())];
            if (h_cdh(cdh, u, t, CdhMode::substitution) <
                h_cdh(cdh, u, t, CdhMode::strict) - 1e-12) {
                detail = "substitution fell below strict intersection";
                return false;
            }
        }
    }
    detail = summary;
    return true;
}

// --------------------------------------------------------------------------
// 9. Smooth surrogates: two-sided smooth-max bound and smooth-min bound.
bool criterion_9(std::string& detail) {
    Rng rng(99);
    std::size_t checks = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t m = 1 + rng.next_below(8);
        std::vector<double> x(m);
        for (double& v : x) v = rng.uniform(-100.0, 100.0);
        const double hard_max = *std::max_element(x.begin(), x.end());
        const double hard_min = *std::min_element(x.begin(), x.end());
        const double temp = 0.1 + 10.0 * rng.next_double();
        const double mt = smooth_max(x, temp);
        const double sm = smooth_min(x, temp);
        ++checks;
        if (mt > hard_max + 1e-12) {
            detail = "smooth max exceeded the hard max";
            return false;
        }
        if (mt < hard_max - std::log(static_cast<double>(m)) / temp - 1e-12) {
            detail = "smooth max fell below the log(m)/T band";
            return false;
        }
        if (sm > hard_min + 1e-12) {
            detail = "smooth min exceeded the hard min";
            return false;
        }
    }
    detail = std::to_string(checks) + " random vectors within bounds at 1e-12";
    return true;
}

// --------------------------------------------------------------------------
// 10. Statistics oracle equivalence on frozen fixtures.
bool criterion_10(std::string& detail) {
    int failures = 0;
    auto expect = [&](double got, double want, double tol) {
        if (std::abs(got - want) > tol) ++failures;
    };

    // Wilcoxon fixtures (reference implementation values).
    {
        PairedSamples s;
        s.a = {10.002, 10.597, 9.452, 8.219, 9.091, 8.017, 10.12, 12.68, 9.016, 8.759,
               10.98,  10.714, 10.211, 8.139, 9.941, 11.391, 7.312, 9.085, 6.198, 7.421};
        s.b = {8.96,  11.162, 8.985, 9.29,  10.048, 8.63,  8.403, 12.941, 9.767, 9.672,
               10.25, 11.036, 10.032, 8.13, 11.802, 11.383, 8.079, 10.769, 6.414, 8.109};
        expect(wilcoxon_signed_rank(s).p_value, 0.0893877005991, 1e-6);
    }
    {
        PairedSamples s;
        s.a = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        s.b = {2, 1, 4, 3, 7, 4, 9, 6, 12, 8, 14, 10};
        expect(wilcoxon_signed_rank(s).p_value, 0.779820414857, 1e-6);
    }
    {
        PairedSamples s;
        for (int i = 1; i <= 15; ++i) {
            s.a.push_back(i);
            s.b.push_back(i + 0.5 + 2.5 * (i - 1) / 14.0);
        }
        expect(wilcoxon_signed_rank(s).p_value, 0.000726513880058, 1e-6);
    }
    {
        PairedSamples s;
        s.a = {3, 5, 1, 9, 2, 8, 4, 7, 6, 6};
        s.b = {3, 4, 2, 5, 2, 9, 1, 3, 8, 6};
        expect(wilcoxon_signed_rank(s).p_value, 0.348201679413, 1e-6);
    }
    {
        PairedSamples s;
        for (int i = 1; i <= 12; ++i) {
            s.a.push_back(i);
            s.b.push_back(i + (i % 2 == 1 ? 1.5 : -1.5));
        }
        expect(wilcoxon_signed_rank(s).p_value, 1.0, 1e-9);
    }

    // Fisher fixtures.
    const std::vector<std::pair<std::vector<double>, double>> fisher{
        {{0.5, 0.5, 0.5, 0.5, 0.5}, 0.73189821413},
        {{0.01, 0.04, 0.20}, 0.0043943034711},
        {{0.9, 0.8, 0.95, 0.7}, 0.993148066105},
        {{1e-5, 0.03}, 4.80584500869e-06},
        {{0.5}, 0.5}};
    for (const auto& [ps, want] : fisher) expect(combine_fisher(ps).p_value, want, 1e-6);

    // Stouffer fixtures.
    {
        const std::vector<double> ps{0.5, 0.5, 0.5, 0.5, 0.5};
        const std::vector<int> dir{1, 1, 1, 1, 1};
        expect(combine_stouffer(ps, dir).p_value, 0.131502085519, 1e-6);
    }
    {
        const std::vector<double> ps{0.01, 0.04, 0.20};
        const std::vector<int> dir{1, 1, 1};
        expect(combine_stouffer(ps, dir).p_value, 0.000643009121988, 1e-6);
    }
    {
        const std::vector<double> ps{0.05, 0.05};
        const std::vector<int> dir{1, -1};
        expect(combine_stouffer(ps, dir).p_value, 1.0, 1e-9);
    }
    {
        const std::vector<double> ps{0.02, 0.3, 0.6};
        const std::vector<int> dir{1, 1, -1};
        expect(combine_stouffer(ps, dir).p_value, 0.101267442509, 1e-6);
    }
    {
        const std::vector<double> ps{0.5};
        const std::vector<int> dir{1};
        expect(combine_stouffer(ps, dir).p_value, 0.5, 1e-9);
    }

    // BH-FDR step-up fixtures.
    {
        const std::vector<double> ps{0.01, 0.02, 0.2, 0.9};
        if (bh_fdr(ps, 0.05) != std::vector<bool>{true, true, false, false}) ++failures;
        const std::vector<double> one{0.01};
        if (bh_fdr(one, 0.05) != std::vector<bool>{true}) ++failures;
        const std::vector<double> ones{1.0, 1.0};
        if (bh_fdr(ones, 0.05) != std::vector<bool>{false, false}) ++failures;
        const std::vector<double> mixed{0.04, 0.9, 0.03, 0.5};
        if (bh_fdr(mixed, 0.1) != std::vector<bool>{true, false, true, false}) ++failures;
        const std::vector<double> none{0.2, 0.3};
        if (bh_fdr(none, 0.05) != std::vector<bool>{false, false}) ++failures;
    }

    // TOST fixtures, including the -1.26 rejection pattern.
    {
        const std::vector<double> d1{0.1, -0.2, 0.05, 0.12, -0.04};
        const TostResult r1 = tost_paired(d1, 1.0, 0.05);
        expect(r1.p_lower, 3.34237380197e-05, 1e-6);
        expect(r1.p_upper, 3.50483104022e-05, 1e-6);
        if (!r1.accepted) ++failures;

        const std::vector<double> d2{-1.26, -1.31, -1.22, -1.27, -1.24};
        const TostResult r2 = tost_paired(d2, 1.0, 0.05);
        expect(r2.p_lower, 0.999966045578, 1e-6);
        if (r2.accepted) ++failures;

        const std::vector<double> d3{0.6, 0.7, 0.65, 0.65, 0.62};
        const TostResult r3 = tost_paired(d3, 1.0, 0.05);
        expect(r3.p_upper, 1.50503889912e-05, 1e-6);
        if (!r3.accepted) ++failures;

        const std::vector<double> d4{0.0, 0.01, -0.01, 0.005, -0.02};
        const TostResult r4 = tost_paired(d4, 0.5, 0.05);
        expect(r4.p_lower, 4.13191949081e-08, 1e-9);
        if (!r4.accepted) ++failures;

        const std::vector<double> d5{2.0, 2.1, 1.9, 2.05, 1.95};
        const TostResult r5 = tost_paired(d5, 1.0, 0.05);
        expect(r5.p_upper, 0.999995351308, 1e-6);
        if (r5.accepted) ++failures;
    }

    detail = failures == 0 ? "wilcoxon/fisher/stouffer/bh/tost all match to 1e-6"
                           : std::to_string(failures) + " fixture mismatches";
    return failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria{
        {1, "admissibility chain h_A <= h_ALT <= d (50 graphs x 20 selectors)", criterion_1},
        {2, "special-case identities (A=I bitwise, forced-first-m, FPS prefix)", criterion_2},
        {3, "covering-radius bound and Gonzalez 2-approximation", criterion_3},
        {4, "P7 closed form (exact)", criterion_4},
        {5, "gradient vs finite differences and gradient identity", criterion_5},
        {6, "search optimality for every admissible arm", criterion_6},
        {7, "desk-scale SBM reproduction at B=32", criterion_7},
        {8, "CDH dominance direction at B in {32,64,128}", criterion_8},
        {9, "smooth surrogate bounds (10^4 vectors)", criterion_9},
        {10, "statistics oracle equivalence", criterion_10},
    };

    std::set<int> filter;
    for (int i = 1; i < argc; ++i) filter.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const Criterion& c : criteria) {
        if (!filter.empty() && filter.count(c.number) == 0) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", c.number,
                    c.description.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    return failed;
}
