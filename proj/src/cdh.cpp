#include "altkit/cdh.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace altkit {

namespace {

// Top-r-farthest: keep the r pivots with largest finite distance, ties to
// the lowest pivot index; entries come back sorted by pivot index.
std::vector<CdhLabels::Entry> select_entries(const LabelTable& table, bool backward,
                                             std::size_t v, std::size_t r) {
    std::vector<CdhLabels::Entry> all;
    all.reserve(table.pool_size());
    for (std::size_t k = 0; k < table.pool_size(); ++k) {
        const double d = backward ? table.d_in(k)[v] : table.d_out(k)[v];
        if (d == kUnreachable) continue;
        all.push_back({static_cast<std::uint32_t>(k), d});
    }
    const std::size_t keep = std::min(r, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      [](const CdhLabels::Entry& a, const CdhLabels::Entry& b) {
                          if (a.dist != b.dist) return a.dist > b.dist;
                          return a.pivot < b.pivot;
                      });
    all.resize(keep);
    std::sort(all.begin(), all.end(),
              [](const CdhLabels::Entry& a, const CdhLabels::Entry& b) {
                  return a.pivot < b.pivot;
              });
    return all;
}

}  // namespace

CdhLabels build_cdh(const LabelTable& table, std::size_t r) {
    if (r < 1) throw std::invalid_argument("build_cdh: r must be >= 1");
    if (r > table.pool_size()) throw std::invalid_argument("build_cdh: r exceeds pool size P");

    CdhLabels labels;
    labels.pool_size = table.pool_size();
    labels.directed = table.directed();
    labels.num_vertices = table.num_vertices();
    labels.r = r;
    labels.landmark_ids = table.landmark_ids();
    if (labels.directed) {
        labels.r_fwd = r / 2;
        labels.r_bwd = r - labels.r_fwd;
    } else {
        labels.r_fwd = r;
        labels.r_bwd = 0;
    }

    labels.fwd.resize(labels.num_vertices);
    if (labels.directed) labels.bwd.resize(labels.num_vertices);
    for (std::size_t v = 0; v < labels.num_vertices; ++v) {
        labels.fwd[v] = select_entries(table, /*backward=*/false, v, labels.r_fwd);
        if (labels.directed)
            labels.bwd[v] = select_entries(table, /*backward=*/true, v, labels.r_bwd);
    }

    // P x P pivot-pivot side table from the teacher labels (off-budget).
    // Undirected tables are symmetrized from the upper triangle; two
    // independent SSSP runs can disagree in the last ulp.
    const std::size_t p = labels.pool_size;
    labels.pivot_out = Matrix(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            labels.pivot_out.at(i, j) = table.d_out(i)[table.landmark_ids()[j]];
    if (!labels.directed)
        for (std::size_t i = 0; i < p; ++i) {
            labels.pivot_out.at(i, i) = 0.0;
            for (std::size_t j = i + 1; j < p; ++j)
                labels.pivot_out.at(j, i) = labels.pivot_out.at(i, j);
        }
    return labels;
}

namespace {

// Merge-walk over pivot-sorted entry lists; shared pivots feed the strict
// bound, single-endpoint pivots feed the substitution candidates.
template <typename Shared, typename OnlyU, typename OnlyT>
void walk(const std::vector<CdhLabels::Entry>& eu, const std::vector<CdhLabels::Entry>& et,
          Shared&& on_shared, OnlyU&& on_u, OnlyT&& on_t) {
    std::size_t i = 0, j = 0;
    while (i < eu.size() && j < et.size()) {
        if (eu[i].pivot == et[j].pivot) {
            on_shared(eu[i], et[j]);
            ++i;
            ++j;
        } else if (eu[i].pivot < et[j].pivot) {
            on_u(eu[i]);
            ++i;
        } else {
            on_t(et[j]);
            ++j;
        }
    }
    for (; i < eu.size(); ++i) on_u(eu[i]);
    for (; j < et.size(); ++j) on_t(et[j]);
}

}  // namespace

double h_cdh(const CdhLabels& labels, VertexId u, VertexId t, CdhMode mode) {
    if (u == t) return 0.0;
    const Matrix& pp = labels.pivot_out;
    double best = 0.0;
    const bool sub = mode == CdhMode::substitution;

    if (!labels.directed) {
        const auto& eu = labels.fwd[u];
        const auto& et = labels.fwd[t];
        walk(
            eu, et,
            [&](const CdhLabels::Entry& a, const CdhLabels::Entry& b) {
                best = std::max(best, std::abs(a.dist - b.dist));
            },
            [&](const CdhLabels::Entry& a) {
                if (!sub) return;
                // d(p, t) unknown; bound it through t's stored pivots q:
                //   lower L = max_q |d(p,q) - d(q,t)|, upper U = min_q d(p,q)+d(q,t).
                double lo = 0.0, hi = kUnreachable;
                bool any = false;
                for (const CdhLabels::Entry& q : et) {
                    const double pq = pp.at(a.pivot, q.pivot);
                    if (pq == kUnreachable) continue;
                    lo = std::max(lo, std::abs(pq - q.dist));
                    hi = std::min(hi, pq + q.dist);
                    any = true;
                }
                if (!any) return;
                best = std::max(best, lo - a.dist);  // d(u,t) >= d(p,t) - d(p,u) >= L - d(p,u)
                best = std::max(best, a.dist - hi);  // d(u,t) >= d(p,u) - d(p,t) >= d(p,u) - U
            },
            [&](const CdhLabels::Entry& b) {
                if (!sub) return;
                double lo = 0.0, hi = kUnreachable;
                bool any = false;
                for (const CdhLabels::Entry& q : eu) {
                    const double pq = pp.at(b.pivot, q.pivot);
                    if (pq == kUnreachable) continue;
                    lo = std::max(lo, std::abs(pq - q.dist));
                    hi = std::min(hi, pq + q.dist);
                    any = true;
                }
                if (!any) return;
                best = std::max(best, lo - b.dist);
                best = std::max(best, b.dist - hi);
            });
        return best;
    }

    // Directed: forward bound d(l_p,t) - d(l_p,u) over fwd tables, backward
    // bound d(u,l_p) - d(t,l_p) over bwd tables. Substitution bounds the
    // missing term through same-direction stored pivots and the oriented
    // pivot-pivot entries.
    walk(
        labels.fwd[u], labels.fwd[t],
        [&](const CdhLabels::Entry& a, const CdhLabels::Entry& b) {
            best = std::max(best, b.dist - a.dist);
        },
        [&](const CdhLabels::Entry& a) {
            if (!sub) return;
            // Have d(l_p, u); missing d(l_p, t) >= max_q d(l_q,t) - d(l_q,l_p).
            double lo = -kUnreachable;
            bool any = false;
            for (const CdhLabels::Entry& q : labels.fwd[t]) {
                const double pq = pp.at(q.pivot, a.pivot);
                if (pq == kUnreachable) continue;
                lo = std::max(lo, q.dist - pq);
                any = true;
            }
            if (any) best = std::max(best, lo - a.dist);
        },
        [&](const CdhLabels::Entry& b) {
            if (!sub) return;
            // Have d(l_p, t); missing d(l_p, u) <= min_q d(l_p,l_q) + d(l_q,u).
            double hi = kUnreachable;
            bool any = false;
            for (const CdhLabels::Entry& q : labels.fwd[u]) {
                const double pq = pp.at(b.pivot, q.pivot);
                if (pq == kUnreachable) continue;
                hi = std::min(hi, pq + q.dist);
                any = true;
            }
            if (any) best = std::max(best, b.dist - hi);
        });
    walk(
        labels.bwd[u], labels.bwd[t],
        [&](const CdhLabels::Entry& a, const CdhLabels::Entry& b) {
            best = std::max(best, a.dist - b.dist);
        },
        [&](const CdhLabels::Entry& a) {
            if (!sub) return;
            // Have d(u, l_p); missing d(t, l_p) <= min_q d(t,l_q) + d(l_q,l_p).
            double hi = kUnreachable;
            bool any = false;
            for (const CdhLabels::Entry& q : labels.bwd[t]) {
                const double pq = pp.at(q.pivot, a.pivot);
                if (pq == kUnreachable) continue;
                hi = std::min(hi, q.dist + pq);
                any = true;
            }
            if (any) best = std::max(best, a.dist - hi);
        },
        [&](const CdhLabels::Entry& b) {
            if (!sub) return;
            // Have d(t, l_p); missing d(u, l_p) >= max_q d(u,l_q) - d(l_p,l_q).
            double lo = -kUnreachable;
            bool any = false;
            for (const CdhLabels::Entry& q : labels.bwd[u]) {
                const double pq = pp.at(b.pivot, q.pivot);
                if (pq == kUnreachable) continue;
                lo = std::max(lo, q.dist - pq);
                any = true;
            }
            if (any) best = std::max(best, lo - b.dist);
        });
    return best;
}

std::pair<double, double> bpmx_adjust(double h_parent, double h_child, double edge_weight) {
    return {std::max(h_parent, h_child - edge_weight),
            std::max(h_child, h_parent - edge_weight)};
}

// ---------------------------------------------------------------------------
// Binary cache

namespace {

constexpr std::uint64_t kCdhMagic = 0x414c544b43444831ull;  // "ALTKCDH1"

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("cdh cache: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_double(std::ostream& os, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(os, bits);
}

double get_double(std::istream& is) {
    const std::uint64_t bits = get_u64(is);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
}

void put_entries(std::ostream& os, const std::vector<std::vector<CdhLabels::Entry>>& table) {
    for (const auto& row : table) {
        put_u64(os, row.size());
        for (const auto& e : row) {
            put_u64(os, e.pivot);
            put_double(os, e.dist);
        }
    }
}

std::vector<std::vector<CdhLabels::Entry>> get_entries(std::istream& is, std::size_t n) {
    std::vector<std::vector<CdhLabels::Entry>> table(n);
    for (auto& row : table) {
        row.resize(get_u64(is));
        for (auto& e : row) {
            e.pivot = static_cast<std::uint32_t>(get_u64(is));
            e.dist = get_double(is);
        }
    }
    return table;
}

}  // namespace

void write_cdh_cache(const CdhLabels& labels, std::ostream& os) {
    put_u64(os, kCdhMagic);
    put_u64(os, labels.pool_size);
    put_u64(os, labels.num_vertices);
    put_u64(os, labels.directed ? 1 : 0);
    put_u64(os, labels.r);
    for (VertexId id : labels.landmark_ids) put_u64(os, id);
    for (double d : labels.pivot_out.data) put_double(os, d);
    put_entries(os, labels.fwd);
    if (labels.directed) put_entries(os, labels.bwd);
}

CdhLabels read_cdh_cache(std::istream& is) {
    if (get_u64(is) != kCdhMagic) throw std::runtime_error("cdh cache: bad magic");
    CdhLabels labels;
    labels.pool_size = get_u64(is);
    labels.num_vertices = get_u64(is);
    labels.directed = get_u64(is) != 0;
    labels.r = get_u64(is);
    labels.r_fwd = labels.directed ? labels.r / 2 : labels.r;
    labels.r_bwd = labels.directed ? labels.r - labels.r_fwd : 0;
    labels.landmark_ids.resize(labels.pool_size);
    for (auto& id : labels.landmark_ids) id = static_cast<VertexId>(get_u64(is));
    labels.pivot_out = Matrix(labels.pool_size, labels.pool_size);
    for (double& d : labels.pivot_out.data) d = get_double(is);
    labels.fwd = get_entries(is, labels.num_vertices);
    if (labels.directed) labels.bwd = get_entries(is, labels.num_vertices);
    return labels;
}

}  // namespace altkit
