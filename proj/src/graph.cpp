#include "altkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "altkit/rng.hpp"

namespace altkit {

Graph Graph::build(std::size_t num_vertices, bool directed, std::vector<Edge> edges,
                   std::string weight_unit, std::ostream* warnings) {
    Graph g;
    g.num_vertices_ = num_vertices;
    g.directed_ = directed;
    g.weight_unit_ = std::move(weight_unit);

    g.edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.from >= num_vertices || e.to >= num_vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (!(e.weight > 0.0))
            throw std::invalid_argument("edge weight must be positive");
        if (e.from == e.to) {
            ++g.dropped_self_loops_;
            continue;
        }
        g.edges_.push_back(e);
    }
    if (g.dropped_self_loops_ > 0 && warnings)
        *warnings << "warning: dropped " << g.dropped_self_loops_ << " self-loop(s)\n";

    // CSR out-adjacency (undirected: both directions share the array).
    std::vector<std::size_t> out_count(num_vertices, 0);
    for (const Edge& e : g.edges_) {
        ++out_count[e.from];
        if (!directed) ++out_count[e.to];
    }
    g.out_offsets_.assign(num_vertices + 1, 0);
    for (std::size_t v = 0; v < num_vertices; ++v)
        g.out_offsets_[v + 1] = g.out_offsets_[v] + out_count[v];
    g.out_arcs_.resize(g.out_offsets_[num_vertices]);
    {
        std::vector<std::size_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
        for (const Edge& e : g.edges_) {
            g.out_arcs_[cursor[e.from]++] = Arc{e.to, e.weight};
            if (!directed) g.out_arcs_[cursor[e.to]++] = Arc{e.from, e.weight};
        }
    }

    if (directed) {
        std::vector<std::size_t> in_count(num_vertices, 0);
        for (const Edge& e : g.edges_) ++in_count[e.to];
        g.in_offsets_.assign(num_vertices + 1, 0);
        for (std::size_t v = 0; v < num_vertices; ++v)
            g.in_offsets_[v + 1] = g.in_offsets_[v] + in_count[v];
        g.in_arcs_.resize(g.in_offsets_[num_vertices]);
        std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (const Edge& e : g.edges_)
            g.in_arcs_[cursor[e.to]++] = Arc{e.from, e.weight};
    }
    return g;
}

// ---------------------------------------------------------------------------
// Connectivity

namespace {

std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> weak_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(n, kUnset);
    std::vector<VertexId> stack;
    std::uint32_t next_id = 0;
    std::vector<std::size_t> sizes;

    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != kUnset) continue;
        comp[s] = next_id;
        std::size_t size = 0;
        stack.push_back(static_cast<VertexId>(s));
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++size;
            for (const Arc& a : g.out(v))
                if (comp[a.to] == kUnset) { comp[a.to] = next_id; stack.push_back(a.to); }
            for (const Arc& a : g.in(v))
                if (comp[a.to] == kUnset) { comp[a.to] = next_id; stack.push_back(a.to); }
        }
        sizes.push_back(size);
        ++next_id;
    }

    return {std::move(comp), std::move(sizes)};
}

// Among equally-sized components, the one containing the smallest vertex id
// wins (deterministic across traversal orders).
std::uint32_t pick_largest(const std::vector<std::uint32_t>& comp,
                           const std::vector<std::size_t>& sizes) {
    std::uint32_t best = 0;
    bool have = false;
    std::size_t best_size = 0;
    for (std::size_t v = 0; v < comp.size(); ++v) {  // v ascending: first hit wins ties
        const std::uint32_t c = comp[v];
        if (!have || sizes[c] > best_size) {
            best = c;
            best_size = sizes[c];
            have = true;
        }
    }
    return best;
}

// Iterative Tarjan SCC.
std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> strong_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnset), lowlink(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexId> scc_stack;
    std::uint32_t next_index = 0, next_comp = 0;
    std::vector<std::size_t> sizes;

    struct Frame {
        VertexId v;
        std::size_t arc;
    };
    std::vector<Frame> call_stack;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call_stack.push_back({static_cast<VertexId>(root), 0});
        while (!call_stack.empty()) {
            Frame& f = call_stack.back();
            VertexId v = f.v;
            if (f.arc == 0) {
                index[v] = lowlink[v] = next_index++;
                scc_stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            auto arcs = g.out(v);
            while (f.arc < arcs.size()) {
                VertexId w = arcs[f.arc].to;
                ++f.arc;
                if (index[w] == kUnset) {
                    call_stack.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::size_t size = 0;
                for (;;) {
                    VertexId w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    ++size;
                    if (w == v) break;
                }
                sizes.push_back(size);
                ++next_comp;
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                VertexId parent = call_stack.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }

    return {std::move(comp), std::move(sizes)};
}

std::vector<VertexId> members_of(const std::vector<std::uint32_t>& comp, std::uint32_t id) {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < comp.size(); ++v)
        if (comp[v] == id) out.push_back(static_cast<VertexId>(v));
    return out;
}

}  // namespace

ComponentReport components(const Graph& g) {
    ComponentReport r;
    auto [wc, wsizes] = weak_components(g);
    r.weak_component_id = std::move(wc);
    r.largest_weak = members_of(r.weak_component_id,
                                pick_largest(r.weak_component_id, wsizes));
    if (g.directed()) {
        auto [sc, ssizes] = strong_components(g);
        r.strong_component_id = std::move(sc);
        r.largest_strong = members_of(r.strong_component_id,
                                      pick_largest(r.strong_component_id, ssizes));
    } else {
        r.strong_component_id = r.weak_component_id;
        r.largest_strong = r.largest_weak;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Parsing / serialization

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    std::ostringstream os;
    os << "parse error at line " << line_no << ": " << what;
    throw std::runtime_error(os.str());
}

void format_weight(std::ostream& os, double w) {
    if (w == std::floor(w) && std::abs(w) < 1e15) {
        os << static_cast<long long>(w);
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", w);
        os << buf;
    }
}

}  // namespace

Graph parse_dimacs_gr(std::istream& is, std::ostream* warnings) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    std::vector<Edge> edges;

    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        char tag = 0;
        ls >> tag;
        if (!ls || tag == 'c') continue;
        if (tag == 'p') {
            std::string kind;
            long long pn = -1, pm = -1;
            ls >> kind >> pn >> pm;
            if (!ls || kind != "sp" || pn < 0 || pm < 0)
                parse_fail(line_no, "malformed problem header (want `p sp <n> <m>`)");
            if (have_header) parse_fail(line_no, "duplicate problem header");
            have_header = true;
            n = static_cast<std::size_t>(pn);
            m = static_cast<std::size_t>(pm);
            edges.reserve(m);
        } else if (tag == 'a') {
            if (!have_header) parse_fail(line_no, "arc before problem header");
            long long u = 0, v = 0;
            double w = 0.0;
            ls >> u >> v >> w;
            if (!ls) parse_fail(line_no, "malformed arc line (want `a <u> <v> <w>`)");
            if (u < 1 || static_cast<std::size_t>(u) > n)
                parse_fail(line_no, "arc tail vertex out of range");
            if (v < 1 || static_cast<std::size_t>(v) > n)
                parse_fail(line_no, "arc head vertex out of range");
            if (!(w > 0.0)) parse_fail(line_no, "non-positive arc weight");
            edges.push_back(Edge{static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
        } else {
            parse_fail(line_no, std::string("unknown line tag `") + tag + "`");
        }
    }
    if (!have_header) parse_fail(line_no == 0 ? 1 : line_no, "missing `p sp` header");
    return Graph::build(n, /*directed=*/true, std::move(edges), "meters", warnings);
}

void write_dimacs_gr(const Graph& g, std::ostream& os) {
    os << "p sp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) {
        os << "a " << (e.from + 1) << ' ' << (e.to + 1) << ' ';
        format_weight(os, e.weight);
        os << '\n';
    }
}

Graph parse_edge_list(std::istream& is, bool directed, std::size_t min_vertices,
                      std::ostream* warnings) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<Edge> edges;
    std::size_t n = min_vertices;

    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u = -1, v = -1;
        double w = 0.0;
        ls >> u >> v >> w;
        if (!ls || u < 0 || v < 0) parse_fail(line_no, "malformed edge line (want `u v w`)");
        if (!(w > 0.0)) parse_fail(line_no, "non-positive edge weight");
        edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v), w});
        n = std::max({n, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1});
    }
    return Graph::build(n, directed, std::move(edges), {}, warnings);
}

void write_edge_list(const Graph& g, std::ostream& os) {
    os << "# " << (g.directed() ? "directed" : "undirected") << ' ' << g.num_vertices()
       << " vertices " << g.num_edges() << " edges\n";
    for (const Edge& e : g.edges()) {
        os << e.from << ' ' << e.to << ' ';
        format_weight(os, e.weight);
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Synthetic generators

namespace {

// Visits each candidate index of [0, total) independently with probability p,
// in increasing order, via geometric skips.
template <typename Fn>
void bernoulli_scan(std::size_t total, double p, Rng& rng, Fn&& on_hit) {
    if (p <= 0.0 || total == 0) return;
    if (p >= 1.0) {
        for (std::size_t i = 0; i < total; ++i) on_hit(i);
        return;
    }
    const double log1mp = std::log1p(-p);
    std::size_t i = 0;
    for (;;) {
        double u = rng.next_double();
        while (u <= 0.0) u = rng.next_double();
        const double skip = std::floor(std::log(u) / log1mp);
        if (skip >= static_cast<double>(total - i)) return;
        i += static_cast<std::size_t>(skip);
        on_hit(i);
        if (++i >= total) return;
    }
}

}  // namespace

Graph gen_sbm(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
              double w_lo, double w_hi, std::uint64_t seed) {
    if (blocks == 0 || block_size == 0)
        throw std::invalid_argument("gen_sbm: blocks and block_size must be positive");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("gen_sbm: probabilities must lie in [0,1]");
    if (!(w_lo > 0.0) || w_hi < w_lo)
        throw std::invalid_argument("gen_sbm: need 0 < w_lo <= w_hi");

    const std::size_t n = blocks * block_size;
    Rng rng(seed);
    std::vector<Edge> edges;

    // Intra-block pairs, canonical (i<j) order per block.
    const std::size_t s = block_size;
    const std::size_t intra_pairs = s * (s - 1) / 2;
    for (std::size_t b = 0; b < blocks; ++b) {
        const VertexId base = static_cast<VertexId>(b * s);
        bernoulli_scan(intra_pairs, p_in, rng, [&](std::size_t t) {
            // Unrank t to (i, j), i < j: f(i) = #pairs with first element < i.
            std::size_t lo = 0, hi = s - 1;
            while (lo < hi) {
                const std::size_t mid = (lo + hi + 1) / 2;
                const std::size_t f = mid * (2 * s - mid - 1) / 2;
                if (f <= t) lo = mid; else hi = mid - 1;
            }
            const std::size_t i = lo;
            const std::size_t f = i * (2 * s - i - 1) / 2;
            const std::size_t j = i + 1 + (t - f);
            edges.push_back(Edge{static_cast<VertexId>(base + i), static_cast<VertexId>(base + j),
                                 rng.uniform(w_lo, w_hi)});
        });
    }
    // Inter-block pairs, block pairs (a < b) in order, then row-major.
    for (std::size_t a = 0; a + 1 < blocks; ++a) {
        for (std::size_t b = a + 1; b < blocks; ++b) {
            const VertexId base_a = static_cast<VertexId>(a * s);
            const VertexId base_b = static_cast<VertexId>(b * s);
            bernoulli_scan(s * s, p_out, rng, [&](std::size_t t) {
                edges.push_back(Edge{static_cast<VertexId>(base_a + t / s),
                                     static_cast<VertexId>(base_b + t % s),
                                     rng.uniform(w_lo, w_hi)});
            });
        }
    }
    return Graph::build(n, /*directed=*/false, std::move(edges), {}, nullptr);
}

Graph gen_ba(std::size_t n, std::size_t m_attach, double w_lo, double w_hi, std::uint64_t seed) {
    if (m_attach < 1 || n <= m_attach)
        throw std::invalid_argument("gen_ba: need n > m_attach >= 1");
    if (!(w_lo > 0.0) || w_hi < w_lo)
        throw std::invalid_argument("gen_ba: need 0 < w_lo <= w_hi");

    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<VertexId> endpoints;  // degree-proportional sampling pool

    auto add_edge = [&](VertexId u, VertexId v) {
        edges.push_back(Edge{u, v, rng.uniform(w_lo, w_hi)});
        endpoints.push_back(u);
        endpoints.push_back(v);
    };

    // Seed clique on m_attach + 1 vertices.
    const std::size_t m0 = m_attach + 1;
    for (std::size_t i = 0; i < m0; ++i)
        for (std::size_t j = i + 1; j < m0; ++j)
            add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));

    std::vector<VertexId> targets;
    for (std::size_t v = m0; v < n; ++v) {
        targets.clear();
        while (targets.size() < m_attach) {
            const VertexId cand = endpoints[rng.next_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                targets.push_back(cand);
        }
        for (VertexId t : targets) add_edge(static_cast<VertexId>(v), t);
    }
    return Graph::build(n, /*directed=*/false, std::move(edges), {}, nullptr);
}

Graph gen_path(std::size_t n) {
    if (n < 2) throw std::invalid_argument("gen_path: need n >= 2");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back(Edge{static_cast<VertexId>(i), static_cast<VertexId>(i + 1), 1.0});
    return Graph::build(n, /*directed=*/false, std::move(edges), {}, nullptr);
}

}  // namespace altkit
