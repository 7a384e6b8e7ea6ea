#include "altkit/sssp.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <future>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>

#include "altkit/landmarks.hpp"

namespace altkit {

std::vector<double> dijkstra_sssp(const Graph& g, VertexId source, bool reversed) {
    const std::size_t n = g.num_vertices();
    if (source >= n) throw std::invalid_argument("dijkstra_sssp: source out of range");

    std::vector<double> dist(n, kUnreachable);
    std::vector<bool> settled(n, false);

    struct Item {
        double d;
        VertexId v;
        bool operator>(const Item& o) const { return d > o.d || (d == o.d && v > o.v); }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const Item top = heap.top();
        heap.pop();
        if (settled[top.v]) continue;  // lazy deletion
        settled[top.v] = true;
        const auto arcs = reversed ? g.in(top.v) : g.out(top.v);
        for (const Arc& a : arcs) {
            const double nd = top.d + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    return dist;
}

LabelTable::LabelTable(std::vector<VertexId> landmark_ids, bool directed,
                       std::size_t num_vertices, std::vector<std::vector<double>> d_out,
                       std::vector<std::vector<double>> d_in)
    : landmark_ids_(std::move(landmark_ids)),
      directed_(directed),
      num_vertices_(num_vertices),
      d_out_(std::move(d_out)),
      d_in_(std::move(d_in)) {
    if (d_out_.size() != landmark_ids_.size())
        throw std::invalid_argument("LabelTable: d_out row count != pool size");
    if (directed_ && d_in_.size() != landmark_ids_.size())
        throw std::invalid_argument("LabelTable: d_in row count != pool size");
    if (!directed_ && !d_in_.empty())
        throw std::invalid_argument("LabelTable: undirected table must alias d_in to d_out");
}

LabelTable build_labels(const Graph& g, const LandmarkPool& pool) {
    const ComponentReport comps = components(g);
    const std::vector<VertexId>& allowed = comps.query_component(g.directed());
    for (VertexId l : pool.ids) {
        if (!std::binary_search(allowed.begin(), allowed.end(), l))
            throw std::invalid_argument(
                "build_labels: landmark outside the largest connected component");
    }

    const std::size_t k0 = pool.ids.size();
    std::vector<std::vector<double>> d_out(k0), d_in;

    // Independent SSSP runs fan out across threads; results land in
    // preassigned slots so the table is deterministic.
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(k0, std::thread::hardware_concurrency()));
    auto run_rows = [&](std::vector<std::vector<double>>& rows, bool reversed) {
        rows.resize(k0);
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        std::atomic<std::size_t> next{0};
        for (std::size_t w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= k0) return;
                    rows[k] = dijkstra_sssp(g, pool.ids[k], reversed);
                }
            }));
        }
        for (auto& f : futures) f.get();
    };
    run_rows(d_out, /*reversed=*/false);
    if (g.directed()) run_rows(d_in, /*reversed=*/true);

    return LabelTable(pool.ids, g.directed(), g.num_vertices(), std::move(d_out), std::move(d_in));
}

// ---------------------------------------------------------------------------
// Binary cache

namespace {

constexpr std::uint64_t kLabelCacheMagic = 0x414c544b4c424c32ull;  // "ALTKLBL2"

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("label cache: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_rows(std::ostream& os, const std::vector<std::vector<double>>& rows) {
    static_assert(sizeof(double) == 8);
    for (const auto& row : rows) {
        for (double d : row) {
            std::uint64_t bits;
            std::memcpy(&bits, &d, 8);
            put_u64(os, bits);
        }
    }
}

std::vector<std::vector<double>> get_rows(std::istream& is, std::size_t k, std::size_t v) {
    std::vector<std::vector<double>> rows(k, std::vector<double>(v));
    for (auto& row : rows) {
        for (double& d : row) {
            const std::uint64_t bits = get_u64(is);
            std::memcpy(&d, &bits, 8);
        }
    }
    return rows;
}

}  // namespace

std::uint64_t graph_content_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv_mix(h, g.num_vertices());
    h = fnv_mix(h, g.directed() ? 1 : 0);
    for (const Edge& e : g.edges()) {
        h = fnv_mix(h, e.from);
        h = fnv_mix(h, e.to);
        std::uint64_t bits;
        std::memcpy(&bits, &e.weight, 8);
        h = fnv_mix(h, bits);
    }
    return h;
}

std::uint64_t pool_content_hash(const std::vector<VertexId>& landmark_ids) {
    std::uint64_t h = 1469598103934665603ull;
    for (VertexId id : landmark_ids) h = fnv_mix(h, id);
    return h;
}

void write_label_cache(const LabelTable& t, std::ostream& os, std::uint64_t graph_hash,
                       std::uint64_t pool_hash) {
    put_u64(os, kLabelCacheMagic);
    put_u64(os, graph_hash);
    put_u64(os, pool_hash);
    put_u64(os, t.pool_size());
    put_u64(os, t.num_vertices());
    put_u64(os, t.directed() ? 1 : 0);
    for (VertexId l : t.landmark_ids()) put_u64(os, l);
    std::vector<std::vector<double>> d_out;
    for (std::size_t k = 0; k < t.pool_size(); ++k)
        d_out.emplace_back(t.d_out(k).begin(), t.d_out(k).end());
    put_rows(os, d_out);
    if (t.directed()) {
        std::vector<std::vector<double>> d_in;
        for (std::size_t k = 0; k < t.pool_size(); ++k)
            d_in.emplace_back(t.d_in(k).begin(), t.d_in(k).end());
        put_rows(os, d_in);
    }
}

LabelCache read_label_cache_keyed(std::istream& is) {
    if (get_u64(is) != kLabelCacheMagic) throw std::runtime_error("label cache: bad magic");
    LabelCache cache;
    cache.graph_hash = get_u64(is);
    cache.pool_hash = get_u64(is);
    const std::size_t k0 = get_u64(is);
    const std::size_t v = get_u64(is);
    const bool directed = get_u64(is) != 0;
    std::vector<VertexId> ids(k0);
    for (auto& id : ids) id = static_cast<VertexId>(get_u64(is));
    auto d_out = get_rows(is, k0, v);
    std::vector<std::vector<double>> d_in;
    if (directed) d_in = get_rows(is, k0, v);
    if (!is) throw std::runtime_error("label cache: truncated matrix data");
    cache.table = LabelTable(std::move(ids), directed, v, std::move(d_out), std::move(d_in));
    return cache;
}

LabelTable read_label_cache(std::istream& is) { return read_label_cache_keyed(is).table; }

}  // namespace altkit
