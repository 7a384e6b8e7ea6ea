#pragma once
// A* without reopenings, expansion accounting, and the admissibility /
// path-optimality auditor.

#include <cstdint>
#include <vector>

#include "altkit/graph.hpp"
#include "altkit/heuristic.hpp"
#include "altkit/landmarks.hpp"

namespace altkit {

struct SearchResult {
    bool found = false;
    double cost = 0.0;
    std::vector<VertexId> path;      // s..t when found
    std::size_t expansions = 0;      // closed-set pops that trigger relaxation
    std::size_t heap_pushes = 0;
    std::vector<VertexId> expanded;  // expansion order (excludes the goal pop)
};

// Closed-set A* ordered by f = g + h; no reopenings; early exit when t pops.
// f-ties break toward larger g, then lower vertex id, so expansion counts are
// reproducible. bpmx=true applies one-step bidirectional pathmax between the
// expanded vertex and its successors (parent lifts only across existing
// reverse arcs on directed graphs).
SearchResult astar(const Graph& g, VertexId s, VertexId t, const Heuristic& h, bool bpmx = false);

struct AuditRecord {
    Query query;
    double dijkstra_cost = 0.0;
    double method_cost = 0.0;
    std::size_t method_expansions = 0;
    std::size_t dijkstra_expansions = 0;
    std::size_t heuristic_violations = 0;
    bool suboptimal = false;  // method_cost > dijkstra_cost * (1 + 1e-9)
};

struct AuditOptions {
    bool bpmx = false;
    // Absolute slack added on top of the 1e-9 relative tolerance when
    // counting h(v,t) > d(v,t); nonzero only when auditing float32-narrowed
    // deployment labels.
    double violation_slack = 0.0;
};

// Per query: reference Dijkstra cost/expansions, method cost/expansions,
// heuristic violations sampled against exact d(v,t) (all vertices on graphs
// <= 200 nodes, otherwise every vertex the method expanded), and the
// suboptimality flag.
AuditRecord audit_one(const Graph& g, Query q, const Heuristic& h, const AuditOptions& opt = {});
std::vector<AuditRecord> audit(const Graph& g, const std::vector<Query>& queries,
                               const Heuristic& h, const AuditOptions& opt = {});

}  // namespace altkit
