#pragma once
// Graph representation, DIMACS/edge-list parsing, synthetic generators, and
// connectivity analysis.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace altkit {

using VertexId = std::uint32_t;

// Unreachable marker for distance tables. Masking always compares for exact
// equality with this value, never against a threshold.
constexpr double kUnreachable = 1e18;

struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    double weight = 0.0;
};

struct Arc {
    VertexId to = 0;
    double weight = 0.0;
};

// Immutable weighted graph with dense 0-based vertex ids and reverse
// adjacency derived on construction. Undirected edges are stored once and
// traversed both ways. Safe to share across concurrent readers.
class Graph {
public:
    Graph() = default;

    // Validates ids and positive weights; drops self-loops (never on a
    // shortest path with positive weights) with a warning to `warnings`.
    // Parallel edges are kept.
    static Graph build(std::size_t num_vertices, bool directed, std::vector<Edge> edges,
                       std::string weight_unit = {}, std::ostream* warnings = nullptr);

    std::size_t num_vertices() const { return num_vertices_; }
    std::size_t num_edges() const { return edges_.size(); }
    bool directed() const { return directed_; }
    const std::string& weight_unit() const { return weight_unit_; }
    std::size_t dropped_self_loops() const { return dropped_self_loops_; }

    // Outgoing arcs of v (for undirected graphs: all incident arcs).
    std::span<const Arc> out(VertexId v) const {
        return {out_arcs_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
    }

    // Incoming arcs of v; on undirected graphs identical to out(v).
    std::span<const Arc> in(VertexId v) const {
        if (!directed_) return out(v);
        return {in_arcs_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
    }

    std::size_t out_degree(VertexId v) const { return out(v).size(); }
    // Total degree used by degree-biased query sampling: out+in when directed.
    std::size_t degree(VertexId v) const { return out(v).size() + (directed_ ? in(v).size() : 0); }

    // Edge list as stored (undirected edges once each).
    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::size_t num_vertices_ = 0;
    bool directed_ = false;
    std::string weight_unit_;
    std::size_t dropped_self_loops_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_offsets_;
    std::vector<Arc> out_arcs_;
    std::vector<std::size_t> in_offsets_;  // directed only
    std::vector<Arc> in_arcs_;             // directed only
};

struct ComponentReport {
    // Weak components cover every vertex; ids are dense from 0.
    std::vector<std::uint32_t> weak_component_id;
    std::vector<VertexId> largest_weak;  // sorted vertex ids
    // Strong components (directed graphs; equal to weak on undirected).
    std::vector<std::uint32_t> strong_component_id;
    std::vector<VertexId> largest_strong;  // sorted vertex ids

    // Component every query/landmark is restricted to: largest strong
    // component when directed, largest weak component otherwise.
    const std::vector<VertexId>& query_component(bool directed) const {
        return directed ? largest_strong : largest_weak;
    }
};

// Weak components always; strong components via Tarjan when directed.
ComponentReport components(const Graph& g);

// 9th DIMACS Challenge `.gr` reader: `p sp <n> <m>` header, `a <u> <v> <w>`
// arcs with 1-based ids, `c` comment lines. Ids are shifted to 0-based.
// Malformed input raises std::runtime_error naming the line number.
Graph parse_dimacs_gr(std::istream& is, std::ostream* warnings = nullptr);
void write_dimacs_gr(const Graph& g, std::ostream& os);

// Plain edge list: `u v w` per line, 0-based ids, `#` comments. Vertex count
// is max id + 1 unless a larger `n` is given.
Graph parse_edge_list(std::istream& is, bool directed, std::size_t min_vertices = 0,
                      std::ostream* warnings = nullptr);
void write_edge_list(const Graph& g, std::ostream& os);

// Stochastic block model: `blocks` communities of `block_size` vertices,
// intra-block edge probability p_in, inter-block p_out, weights uniform in
// [w_lo, w_hi]. Undirected; bit-reproducible given seed.
Graph gen_sbm(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
              double w_lo, double w_hi, std::uint64_t seed);

// Barabasi-Albert preferential attachment: seed clique on m_attach+1
// vertices, every later vertex attaches to m_attach distinct targets with
// probability proportional to degree. Undirected; weights uniform in
// [w_lo, w_hi]; bit-reproducible given seed.
Graph gen_ba(std::size_t n, std::size_t m_attach, double w_lo, double w_hi, std::uint64_t seed);

// Unit-weight undirected path 0-1-...-(n-1).
Graph gen_path(std::size_t n);

}  // namespace altkit
