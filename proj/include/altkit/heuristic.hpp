#pragma once
// Admissible heuristic evaluation for all method families: ALT on landmark
// subsets, compressed (row-stochastic) labels, and the hybrid pointwise max.
// Every evaluation is a pure function over immutable tables, reentrant under
// concurrent queries, with no per-query allocation.

#include <cstdint>
#include <span>
#include <vector>

#include "altkit/matrix.hpp"
#include "altkit/sssp.hpp"

namespace altkit {

// ALT triangle-inequality lower bound over explicit pool subsets:
//   max( max_{k in fwd} d_out[k][t] - d_out[k][u],
//        max_{k in bwd} d_in[k][u]  - d_in[k][t],  0 ).
// Terms touching a sentinel entry are masked out (skip-term, never clamp);
// an all-masked evaluation returns 0 (Dijkstra fallback). On undirected
// tables passing the same subset to both sides collapses the expression to
// max_k |d(l_k,u) - d(l_k,t)|.
double h_alt(const LabelTable& table, std::span<const std::size_t> subset_fwd,
             std::span<const std::size_t> subset_bwd, VertexId u, VertexId t);

// Same subset on both bound sides.
double h_alt(const LabelTable& table, std::span<const std::size_t> subset, VertexId u, VertexId t);

// Full-pool teacher heuristic.
double h_alt_full(const LabelTable& table, VertexId u, VertexId t);

// Deployed compressed labels: m floats per vertex, materialized once.
// Undirected tables use a single block (m_bwd == 0). `narrowed` means the
// values have been rounded through float32 (deployment storage); arithmetic
// stays in float64 either way.
struct DeployedLabels {
    bool directed = false;
    std::size_t num_vertices = 0;
    std::size_t m_fwd = 0;
    std::size_t m_bwd = 0;
    bool narrowed = false;
    std::vector<double> y_fwd;  // vertex-major V x m_fwd
    std::vector<double> y_bwd;  // vertex-major V x m_bwd

    double fwd(VertexId v, std::size_t i) const { return y_fwd[v * m_fwd + i]; }
    double bwd(VertexId v, std::size_t i) const { return y_bwd[v * m_bwd + i]; }
    std::size_t floats_per_vertex() const { return m_fwd + m_bwd; }
    std::size_t bytes_per_vertex() const { return floats_per_vertex() * (narrowed ? 4u : 8u); }
    // Largest finite |label|, for float32-aware audit slack.
    double max_abs_label() const;
};

// Hard selection: gather teacher rows (no arithmetic, bitwise copies).
// Duplicate selections are permitted. Undirected tables: pass the selection
// in rows_fwd and leave rows_bwd empty.
DeployedLabels gather_labels(const LabelTable& table, const std::vector<std::size_t>& rows_fwd,
                             const std::vector<std::size_t>& rows_bwd);

// Soft selection: y = A * d(v) per vertex with row-stochastic A. A compressed
// entry mixing any sentinel teacher entry is itself the sentinel (masking
// only ever removes terms from the max). Undirected: pass a_bwd empty.
DeployedLabels mix_labels(const LabelTable& table, const Matrix& a_fwd, const Matrix& a_bwd);

// Round every label through float32 (deployment storage width).
DeployedLabels narrow_to_float32(DeployedLabels labels);

// Compressed heuristic:
//   max(0, max_i y_bwd_i(u) - y_bwd_i(t), max_i y_fwd_i(t) - y_fwd_i(u))
// with sentinel-touching terms masked. With one-hot selections this equals
// h_alt on the selected subset exactly.
double h_compressed(const DeployedLabels& labels, VertexId u, VertexId t);

// Engine-facing heuristic interface.
class Heuristic {
public:
    virtual ~Heuristic() = default;
    virtual double estimate(VertexId u, VertexId t) const = 0;
};

class ZeroHeuristic final : public Heuristic {
public:
    double estimate(VertexId, VertexId) const override { return 0.0; }
};

class AltSubsetHeuristic final : public Heuristic {
public:
    AltSubsetHeuristic(const LabelTable& table, std::vector<std::size_t> subset_fwd,
                       std::vector<std::size_t> subset_bwd)
        : table_(table), fwd_(std::move(subset_fwd)), bwd_(std::move(subset_bwd)) {}
    double estimate(VertexId u, VertexId t) const override { return h_alt(table_, fwd_, bwd_, u, t); }

private:
    const LabelTable& table_;
    std::vector<std::size_t> fwd_, bwd_;
};

class CompressedHeuristic final : public Heuristic {
public:
    explicit CompressedHeuristic(const DeployedLabels& labels) : labels_(labels) {}
    double estimate(VertexId u, VertexId t) const override { return h_compressed(labels_, u, t); }

private:
    const DeployedLabels& labels_;
};

// Pointwise max of two admissible heuristics is admissible.
class HybridMaxHeuristic final : public Heuristic {
public:
    HybridMaxHeuristic(const Heuristic& a, const Heuristic& b) : a_(a), b_(b) {}
    double estimate(VertexId u, VertexId t) const override {
        const double ha = a_.estimate(u, t);
        const double hb = b_.estimate(u, t);
        return ha > hb ? ha : hb;
    }

private:
    const Heuristic& a_;
    const Heuristic& b_;
};

// Inflates an inner heuristic; inadmissible for factor > 1. Negative-control
// arm for the violation auditor.
class ScaledHeuristic final : public Heuristic {
public:
    ScaledHeuristic(const Heuristic& inner, double factor) : inner_(inner), factor_(factor) {}
    double estimate(VertexId u, VertexId t) const override { return factor_ * inner_.estimate(u, t); }

private:
    const Heuristic& inner_;
    double factor_;
};

// Smooth surrogates (log-sum-exp forms).
//   smooth_max: M_T(x) = (1/T) log sum exp(T x_i) - log(m)/T, so that
//               max(x) - log(m)/T <= M_T(x) <= max(x).
//   smooth_min: -(1/beta) log sum exp(-beta x_i) <= min(x).
double smooth_max(std::span<const double> values, double temperature);
double smooth_min(std::span<const double> values, double beta);

}  // namespace altkit
