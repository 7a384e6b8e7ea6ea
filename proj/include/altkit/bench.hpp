#pragma once
// Matched-memory accounting, query sampling, experiment cells, and the
// training-drift / forced-first-m diagnostics.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "altkit/cdh.hpp"
#include "altkit/graph.hpp"
#include "altkit/landmarks.hpp"
#include "altkit/search.hpp"
#include "altkit/selector.hpp"
#include "altkit/sssp.hpp"

namespace altkit {

// Matched deployed-label memory at B bytes/vertex (float32 deployment):
// compressed selection stores m = B/4 floats; ALT stores 2K floats on
// directed graphs (K = B/8) and K on undirected (K = B/4); CDH entries charge
// 4 bytes distance + 4 bytes index + 1 byte padding, so r = floor(B/9).
struct BudgetSpec {
    std::size_t bytes_per_vertex = 0;
    bool graph_directed = false;

    std::size_t aac_m() const { return bytes_per_vertex / 4; }
    std::size_t aac_k0() const { return bytes_per_vertex; }  // teacher pool K0 = 4m
    std::size_t alt_k() const {
        return graph_directed ? bytes_per_vertex / 8 : bytes_per_vertex / 4;
    }
    std::size_t cdh_r() const { return bytes_per_vertex / 9; }
    static constexpr std::size_t cdh_pool() { return 64; }  // P

    void validate() const;  // B divisible by 4, derived counts >= 1
};

enum class QueryMode { uniform, hotspot, powerlaw };
const char* to_string(QueryMode m);

struct QuerySet {
    QueryMode mode = QueryMode::uniform;
    std::vector<Query> pairs;  // s != t, both inside the query component
    std::uint64_t seed = 0;
    std::uint64_t content_hash() const;  // shared-query discipline check
};

// uniform: i.i.d. endpoints from the largest component. hotspot: 90% of
// endpoints from the top-1%-by-degree vertices of the component, 10%
// uniform. powerlaw: endpoint probability proportional to degree^1.5.
// Deterministic given seed.
QuerySet sample_queries(const Graph& g, std::size_t n, QueryMode mode, std::uint64_t seed);

enum class BenchMethod { dijkstra, alt, aac, cdh, cdh_sub, cdh_sub_bpmx, hybrid };
const char* to_string(BenchMethod m);
std::optional<BenchMethod> bench_method_from_string(const std::string& name);

struct MethodConfig {
    BenchMethod method = BenchMethod::alt;
    TrainConfig train;  // compressed-selection arms (aac, hybrid)
};

struct PerQueryRow {
    Query query;
    double dijkstra_cost = 0.0;
    double method_cost = 0.0;
    std::size_t expansions_method = 0;
    std::size_t expansions_dijkstra = 0;
    std::size_t violations = 0;
    bool suboptimal = false;
};

// One (graph, method, budget, seed) benchmark cell.
struct BenchRecord {
    std::string graph_id;
    std::string method;
    std::size_t budget = 0;
    std::uint64_t seed = 0;
    std::uint64_t query_hash = 0;
    double mean_expansions = 0.0;
    double mean_dijkstra_expansions = 0.0;
    double reduction_pct = 0.0;  // 100 * (1 - mean_exp / mean_dijkstra_exp)
    std::size_t violations = 0;
    std::size_t suboptimal_count = 0;
    std::string error;  // nonempty when the cell failed; rows are then empty
    std::vector<PerQueryRow> rows;
};

// Teacher pool and labels shared by every method inside a cell group: one
// FPS run at the largest pool size any arm needs, sliced by prefix.
struct TeacherContext {
    VertexId start_vertex = 0;
    LandmarkPool pool;
    LabelTable labels;
};
TeacherContext make_teacher_context(const Graph& g, std::size_t max_pool, std::uint64_t seed);

// Copy of the first k pool rows (prefix slices of an FPS pool are FPS pools).
LabelTable slice_labels(const LabelTable& table, std::size_t k);

// Full pipeline for one cell: pool -> labels -> select/train -> deploy
// (float32) -> A* per query -> audit. Reuses `ctx` when it is large enough.
BenchRecord run_cell(const Graph& g, const std::string& graph_id, const MethodConfig& method,
                     const BudgetSpec& budget, const QuerySet& queries, std::uint64_t seed,
                     const TeacherContext* ctx = nullptr);

struct DriftRow {
    std::string configuration;
    double mean_expansions = 0.0;
    double reduction_pct = 0.0;
};

// Forced-first-m vs trained comparison (mean over seeds): FPS-ALT at matched
// memory, the forced one-hot on the first m pool indices (no training), and
// the trained selector at each epoch checkpoint. The first two rows are
// identical by the FPS prefix property.
std::vector<DriftRow> drift_diagnostic(const Graph& g, std::size_t k0, std::size_t m,
                                       const std::vector<std::size_t>& epoch_checkpoints,
                                       const std::vector<std::uint64_t>& seeds,
                                       const QuerySet& queries,
                                       InitScheme init = InitScheme::block_sparse);

// ALT on the first-m prefix of the K0 teacher pool vs canonical FPS-ALT at
// matched memory (first record: prefix arm; second: canonical).
std::pair<BenchRecord, BenchRecord> first_m_pool_arm(const Graph& g, std::size_t k0,
                                                     std::size_t m, const QuerySet& queries,
                                                     std::uint64_t seed);

// Cell CSV: provenance header, one summary row, then per-query rows.
void write_cell_csv(const BenchRecord& rec, std::ostream& os,
                    const std::string& provenance = {});
BenchRecord read_cell_csv(std::istream& is);

}  // namespace altkit
