#pragma once
// Landmark pool construction (farthest-point sampling and variants) and
// covering-radius computation.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "altkit/graph.hpp"
#include "altkit/sssp.hpp"

namespace altkit {

struct Query {
    VertexId s = 0;
    VertexId t = 0;
};

enum class SelectionMethod { fps, fps_random_restart, random_subset, greedy_max, explicit_list };

const char* to_string(SelectionMethod m);

// Ordered landmark sequence with provenance. For method fps the list order is
// the FPS selection order; prefix slices of an FPS pool are themselves FPS
// pools (greedy-incremental).
struct LandmarkPool {
    std::vector<VertexId> ids;
    SelectionMethod method = SelectionMethod::explicit_list;
    VertexId start_vertex = 0;
    std::uint64_t seed = 0;
};

// Greedy farthest-point sampling under the shortest-path metric (symmetrized
// max(d(l,v), d(v,l)) on directed graphs). The first pick is the vertex
// farthest from start_vertex, NOT start_vertex itself; ties break to the
// lowest vertex id. Deterministic given (graph, K, start_vertex).
LandmarkPool fps_select(const Graph& g, std::size_t k, VertexId start_vertex);

// FPS from `restarts` random start vertices; each candidate pool is scored by
// mean ALT expansion reduction over the validation queries and the best pool
// wins (ties to the lowest start id).
LandmarkPool fps_random_restart(const Graph& g, std::size_t k, std::size_t restarts,
                                const std::vector<Query>& validation_queries,
                                std::uint64_t seed);

// Uniform random distinct landmarks from the largest component.
LandmarkPool random_subset(const Graph& g, std::size_t k, std::uint64_t seed);

// Query-adaptive greedy oracle: repeatedly add the pool landmark that
// maximizes the mean ALT bound over `queries` given the already-chosen set.
// Returns pool-landmark vertex ids in marginal-gain order.
LandmarkPool greedy_max_oracle(const LabelTable& table, std::size_t m,
                               const std::vector<Query>& queries);

struct CoveringReport {
    double r_m = 0.0;           // max over covered vertices of min landmark distance
    VertexId witness_vertex = 0;  // attains r_m
    bool symmetrized = false;
    std::size_t excluded_vertices = 0;  // unreachable from every subset landmark
};

// Covering radius of a pool subset: r = max_{v in V_reach} min_{l} dist,
// where dist is d(l,v) (plain) or max(d(l,v), d(v,l)) (symmetrized).
// Vertices unreachable from every subset landmark are excluded and counted.
CoveringReport covering_radius(const LabelTable& table, const std::vector<std::size_t>& subset,
                               bool symmetrized);

// One landmark id per line with a provenance header.
void write_pool(const LandmarkPool& pool, std::ostream& os);
LandmarkPool read_pool(std::istream& is);

}  // namespace altkit
