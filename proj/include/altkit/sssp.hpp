#pragma once
// Single-source shortest paths and the per-landmark label tables that back
// every heuristic in the library.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "altkit/graph.hpp"

namespace altkit {

// Exact SSSP distances in float64; unreachable entries are kUnreachable.
// Binary-heap Dijkstra with lazy deletion, O(|V| log |V| + |E|).
// reversed=true runs on the transposed graph (distances *to* source).
std::vector<double> dijkstra_sssp(const Graph& g, VertexId source, bool reversed = false);

struct LandmarkPool;  // landmarks.hpp

// Teacher labels: forward rows d_out[k][v] = d(l_k, v) and backward rows
// d_in[k][v] = d(v, l_k). On undirected graphs the backward table aliases the
// forward one. Immutable after construction.
class LabelTable {
public:
    LabelTable() = default;
    LabelTable(std::vector<VertexId> landmark_ids, bool directed, std::size_t num_vertices,
               std::vector<std::vector<double>> d_out, std::vector<std::vector<double>> d_in);

    std::size_t pool_size() const { return landmark_ids_.size(); }  // K0
    std::size_t num_vertices() const { return num_vertices_; }
    bool directed() const { return directed_; }
    const std::vector<VertexId>& landmark_ids() const { return landmark_ids_; }

    std::span<const double> d_out(std::size_t k) const { return d_out_[k]; }
    std::span<const double> d_in(std::size_t k) const {
        return directed_ ? std::span<const double>(d_in_[k]) : std::span<const double>(d_out_[k]);
    }
    // True when d_in(k) is literally the d_out(k) storage (undirected).
    bool d_in_aliases_d_out() const { return !directed_; }

private:
    std::vector<VertexId> landmark_ids_;
    bool directed_ = false;
    std::size_t num_vertices_ = 0;
    std::vector<std::vector<double>> d_out_;  // K0 x V
    std::vector<std::vector<double>> d_in_;   // K0 x V, empty when undirected
};

// Runs the K0 (or 2*K0 when directed) SSSPs, concurrently. Every pool
// landmark must lie inside the graph's largest (strongly, if directed)
// connected component; violating landmarks poison coverage and raise
// std::invalid_argument.
LabelTable build_labels(const Graph& g, const LandmarkPool& pool);

// Binary cache: magic, key (graph hash, pool hash), K0, V, directed flag,
// landmark ids, then row-major little-endian float64 matrices (d_out, then
// d_in when directed).
void write_label_cache(const LabelTable& t, std::ostream& os, std::uint64_t graph_hash = 0,
                       std::uint64_t pool_hash = 0);
struct LabelCache {
    LabelTable table;
    std::uint64_t graph_hash = 0;
    std::uint64_t pool_hash = 0;
};
LabelCache read_label_cache_keyed(std::istream& is);
LabelTable read_label_cache(std::istream& is);

// Content hashes used as the cache key.
std::uint64_t graph_content_hash(const Graph& g);
std::uint64_t pool_content_hash(const std::vector<VertexId>& landmark_ids);

}  // namespace altkit
