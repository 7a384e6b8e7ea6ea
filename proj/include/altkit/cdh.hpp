#pragma once
// Reference Compressed Differential Heuristic: per-vertex pivot-subset
// storage with the top-r-farthest selection rule, strict-intersection
// evaluation, Goldenberg-style bound substitution through a P x P
// pivot-pivot side table, and the one-step BPMX hook.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "altkit/heuristic.hpp"
#include "altkit/matrix.hpp"
#include "altkit/sssp.hpp"

namespace altkit {

struct CdhLabels {
    struct Entry {
        std::uint32_t pivot = 0;  // index into the P-sized pool
        double dist = 0.0;        // copied verbatim from the teacher labels
    };

    std::size_t pool_size = 0;  // P
    bool directed = false;
    std::size_t num_vertices = 0;
    std::size_t r = 0;      // requested per-vertex retained count
    std::size_t r_fwd = 0;  // directed split: r_fwd = floor(r/2), r_bwd = r - r_fwd
    std::size_t r_bwd = 0;
    std::vector<VertexId> landmark_ids;

    // Per-vertex entries sorted by pivot index. fwd stores d(l_p, v); bwd
    // stores d(v, l_p) (directed only; undirected keeps a single fwd table).
    std::vector<std::vector<Entry>> fwd;
    std::vector<std::vector<Entry>> bwd;

    // P x P side table pivot_out(i, j) = d(l_i, l_j); off the per-vertex
    // budget. Symmetric with zero diagonal on undirected graphs.
    Matrix pivot_out;

    std::size_t bytes_per_vertex() const { return r * 9; }  // 4 dist + 4 index + 1 pad
};

// Keep, per vertex and direction, the r pivots with the largest finite
// distance (ties to the lowest pivot index).
CdhLabels build_cdh(const LabelTable& table, std::size_t r);

enum class CdhMode { strict, substitution };

// strict: ALT bound over pivots stored at both endpoints (per direction).
// substitution: additionally, pivots stored at exactly one endpoint
// contribute through pivot-pivot bounds on the missing distance. Never below
// zero; no shared pivots yields 0.
double h_cdh(const CdhLabels& labels, VertexId u, VertexId t, CdhMode mode);

// One-step bidirectional pathmax: returns the lifted (parent, child) pair
//   (max(h_parent, h_child - w), max(h_child, h_parent - w)).
std::pair<double, double> bpmx_adjust(double h_parent, double h_child, double edge_weight);

class CdhHeuristic final : public Heuristic {
public:
    CdhHeuristic(const CdhLabels& labels, CdhMode mode) : labels_(labels), mode_(mode) {}
    double estimate(VertexId u, VertexId t) const override { return h_cdh(labels_, u, t, mode_); }

private:
    const CdhLabels& labels_;
    CdhMode mode_;
};

// Binary cache mirroring the label-table cache plus per-vertex index lists.
void write_cdh_cache(const CdhLabels& labels, std::ostream& os);
CdhLabels read_cdh_cache(std::istream& is);

}  // namespace altkit
