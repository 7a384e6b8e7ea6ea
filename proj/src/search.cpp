#include "altkit/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "altkit/sssp.hpp"

namespace altkit {

namespace {

struct HeapItem {
    double f;
    double g;
    VertexId v;
};

// Min-f order; f-ties prefer larger g (deeper nodes), then lower vertex id.
struct HeapOrder {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.v > b.v;
    }
};

// Minimum weight of an arc child -> parent, if one exists (for the BPMX
// parent lift on directed graphs; undirected graphs always have it).
double reverse_arc_weight(const Graph& g, VertexId parent, VertexId child) {
    double w = std::numeric_limits<double>::infinity();
    for (const Arc& a : g.in(parent))
        if (a.to == child) w = std::min(w, a.weight);
    return w;
}

}  // namespace

SearchResult astar(const Graph& g, VertexId s, VertexId t, const Heuristic& h, bool bpmx) {
    const std::size_t n = g.num_vertices();
    if (s >= n || t >= n) throw std::invalid_argument("astar: endpoint out of range");

    SearchResult res;
    std::vector<double> dist(n, kUnreachable);
    std::vector<VertexId> parent(n, std::numeric_limits<VertexId>::max());
    std::vector<bool> closed(n, false);
    // Heuristic cache; BPMX lifts persist here for later pushes of the same
    // vertex.
    std::vector<double> hval(n, -1.0);
    auto h_of = [&](VertexId v) {
        if (hval[v] < 0.0) hval[v] = h.estimate(v, t);
        return hval[v];
    };

    std::priority_queue<HeapItem, std::vector<HeapItem>, HeapOrder> heap;
    dist[s] = 0.0;
    heap.push({h_of(s), 0.0, s});
    ++res.heap_pushes;

    while (!heap.empty()) {
        const HeapItem top = heap.top();
        heap.pop();
        const VertexId u = top.v;
        if (closed[u]) continue;  // stale entry
        closed[u] = true;
        if (u == t) {
            res.found = true;
            res.cost = dist[u];
            break;
        }
        ++res.expansions;
        res.expanded.push_back(u);

        const auto arcs = g.out(u);
        if (bpmx) {
            // One-step bidirectional pathmax: lift the expanded vertex from
            // its successors, then successors from the lifted value. Parent
            // lifts cross only existing reverse arcs on directed graphs.
            double lifted = h_of(u);
            for (const Arc& a : arcs) {
                const double w_back =
                    g.directed() ? reverse_arc_weight(g, u, a.to) : a.weight;
                if (std::isinf(w_back)) continue;
                lifted = std::max(lifted, h_of(a.to) - w_back);
            }
            hval[u] = lifted;
            for (const Arc& a : arcs)
                hval[a.to] = std::max(h_of(a.to), lifted - a.weight);
        }

        for (const Arc& a : arcs) {
            if (closed[a.to]) continue;  // no reopenings
            const double nd = dist[u] + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                parent[a.to] = u;
                heap.push({nd + h_of(a.to), nd, a.to});
                ++res.heap_pushes;
            }
        }
    }

    if (res.found) {
        std::vector<VertexId> rev;
        for (VertexId v = t;; v = parent[v]) {
            rev.push_back(v);
            if (v == s) break;
        }
        res.path.assign(rev.rbegin(), rev.rend());
    }
    return res;
}

AuditRecord audit_one(const Graph& g, Query q, const Heuristic& h, const AuditOptions& opt) {
    AuditRecord rec;
    rec.query = q;

    ZeroHeuristic zero;
    const SearchResult base = astar(g, q.s, q.t, zero, /*bpmx=*/false);
    const SearchResult run = astar(g, q.s, q.t, h, opt.bpmx);
    rec.dijkstra_cost = base.found ? base.cost : kUnreachable;
    rec.dijkstra_expansions = base.expansions;
    rec.method_cost = run.found ? run.cost : kUnreachable;
    rec.method_expansions = run.expansions;
    if (base.found != run.found) {
        rec.suboptimal = true;
    } else if (base.found) {
        rec.suboptimal = run.cost > base.cost * (1.0 + 1e-9);
    }

    // Sample h(v, t) against exact d(v, t): every vertex on small graphs,
    // otherwise the vertices whose h the method actually consumed.
    const std::vector<double> dist_to_t = dijkstra_sssp(g, q.t, /*reversed=*/true);
    auto check = [&](VertexId v) {
        const double d = dist_to_t[v];
        if (d == kUnreachable) return;
        const double hv = h.estimate(v, q.t);
        if (hv > d * (1.0 + 1e-9) + opt.violation_slack) ++rec.heuristic_violations;
    };
    if (g.num_vertices() <= 200) {
        for (std::size_t v = 0; v < g.num_vertices(); ++v) check(static_cast<VertexId>(v));
    } else {
        // Every vertex on the reference Dijkstra tree (the settled set of the
        // baseline run) plus everything the method itself expanded, deduped.
        std::vector<VertexId> sample{q.s, q.t};
        sample.insert(sample.end(), base.expanded.begin(), base.expanded.end());
        sample.insert(sample.end(), run.expanded.begin(), run.expanded.end());
        std::sort(sample.begin(), sample.end());
        sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
        for (VertexId v : sample) check(v);
    }
    return rec;
}

std::vector<AuditRecord> audit(const Graph& g, const std::vector<Query>& queries,
                               const Heuristic& h, const AuditOptions& opt) {
    std::vector<AuditRecord> records;
    records.reserve(queries.size());
    for (const Query& q : queries) records.push_back(audit_one(g, q, h, opt));
    return records;
}

}  // namespace altkit
