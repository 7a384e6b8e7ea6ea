#include "altkit/landmarks.hpp"

#include <algorithm>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "altkit/heuristic.hpp"
#include "altkit/rng.hpp"
#include "altkit/search.hpp"

namespace altkit {

const char* to_string(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::fps: return "fps";
        case SelectionMethod::fps_random_restart: return "fps_random_restart";
        case SelectionMethod::random_subset: return "random_subset";
        case SelectionMethod::greedy_max: return "greedy_max";
        case SelectionMethod::explicit_list: return "explicit";
    }
    return "?";
}

namespace {

SelectionMethod method_from_string(const std::string& s) {
    if (s == "fps") return SelectionMethod::fps;
    if (s == "fps_random_restart") return SelectionMethod::fps_random_restart;
    if (s == "random_subset") return SelectionMethod::random_subset;
    if (s == "greedy_max") return SelectionMethod::greedy_max;
    return SelectionMethod::explicit_list;
}

// Distance from landmark l to every vertex under the FPS metric: plain
// shortest-path distance on undirected graphs, symmetrized
// max(d(l,v), d(v,l)) on directed ones.
std::vector<double> fps_metric_from(const Graph& g, VertexId l) {
    std::vector<double> d = dijkstra_sssp(g, l, /*reversed=*/false);
    if (g.directed()) {
        const std::vector<double> back = dijkstra_sssp(g, l, /*reversed=*/true);
        for (std::size_t v = 0; v < d.size(); ++v) {
            d[v] = (d[v] == kUnreachable || back[v] == kUnreachable)
                       ? kUnreachable
                       : std::max(d[v], back[v]);
        }
    }
    return d;
}

// Largest component the pool must live in; sorted vertex ids.
std::vector<VertexId> pool_component(const Graph& g) {
    return components(g).query_component(g.directed());
}

}  // namespace

LandmarkPool fps_select(const Graph& g, std::size_t k, VertexId start_vertex) {
    const std::vector<VertexId> comp = pool_component(g);
    if (!std::binary_search(comp.begin(), comp.end(), start_vertex))
        throw std::invalid_argument("fps_select: start vertex outside the largest component");
    if (k > comp.size())
        throw std::invalid_argument("fps_select: K exceeds the component size");

    LandmarkPool pool;
    pool.method = SelectionMethod::fps;
    pool.start_vertex = start_vertex;

    // Distances from start_vertex seed only the FIRST pick (the vertex
    // farthest from it, not start_vertex itself); afterwards min_dist tracks
    // the chosen set alone.
    std::vector<double> min_dist = fps_metric_from(g, start_vertex);
    std::vector<bool> chosen(g.num_vertices(), false);

    for (std::size_t step = 0; step < k; ++step) {
        VertexId best = comp.front();
        double best_d = -1.0;
        for (VertexId v : comp) {
            if (chosen[v]) continue;
            const double d = min_dist[v] == kUnreachable ? -1.0 : min_dist[v];
            if (d > best_d) {  // ties fall to the lowest id (scan order)
                best_d = d;
                best = v;
            }
        }
        pool.ids.push_back(best);
        chosen[best] = true;
        const std::vector<double> d = fps_metric_from(g, best);
        if (step == 0) {
            min_dist = d;
        } else {
            for (VertexId v : comp) min_dist[v] = std::min(min_dist[v], d[v]);
        }
    }
    return pool;
}

LandmarkPool random_subset(const Graph& g, std::size_t k, std::uint64_t seed) {
    const std::vector<VertexId> comp = pool_component(g);
    if (k > comp.size())
        throw std::invalid_argument("random_subset: K exceeds the component size");
    Rng rng(seed);
    std::vector<VertexId> order(comp);
    // Partial Fisher-Yates: first k entries.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.next_below(order.size() - i);
        std::swap(order[i], order[j]);
    }
    LandmarkPool pool;
    pool.method = SelectionMethod::random_subset;
    pool.seed = seed;
    pool.ids.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    return pool;
}

LandmarkPool fps_random_restart(const Graph& g, std::size_t k, std::size_t restarts,
                                const std::vector<Query>& validation_queries,
                                std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("fps_random_restart: restarts must be >= 1");
    if (validation_queries.empty())
        throw std::invalid_argument("fps_random_restart: empty validation set");
    const std::vector<VertexId> comp = pool_component(g);
    if (restarts > comp.size())
        throw std::invalid_argument("fps_random_restart: more restarts than component vertices");

    Rng rng(seed);
    std::vector<VertexId> starts;
    while (starts.size() < restarts) {
        const VertexId cand = comp[rng.next_below(comp.size())];
        if (std::find(starts.begin(), starts.end(), cand) == starts.end())
            starts.push_back(cand);
    }

    // Shared Dijkstra baseline across restarts.
    ZeroHeuristic zero;
    double dij_mean = 0.0;
    for (const Query& q : validation_queries)
        dij_mean += static_cast<double>(astar(g, q.s, q.t, zero).expansions);
    dij_mean /= static_cast<double>(validation_queries.size());

    // Candidates evaluate concurrently; selection is by score with ties to
    // the lowest start id.
    std::vector<LandmarkPool> pools(starts.size());
    std::vector<double> scores(starts.size());
    std::vector<std::future<void>> futures;
    futures.reserve(starts.size());
    for (std::size_t r = 0; r < starts.size(); ++r) {
        futures.push_back(std::async(std::launch::async, [&, r] {
            pools[r] = fps_select(g, k, starts[r]);
            const LabelTable labels = build_labels(g, pools[r]);
            std::vector<std::size_t> all(pools[r].ids.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            AltSubsetHeuristic h(labels, all, all);
            double mean = 0.0;
            for (const Query& q : validation_queries)
                mean += static_cast<double>(astar(g, q.s, q.t, h).expansions);
            mean /= static_cast<double>(validation_queries.size());
            scores[r] = dij_mean > 0.0 ? 100.0 * (1.0 - mean / dij_mean) : 0.0;
        }));
    }
    for (auto& f : futures) f.get();

    std::size_t best = 0;
    for (std::size_t r = 1; r < starts.size(); ++r) {
        const bool wins = scores[r] > scores[best] ||
                          (scores[r] == scores[best] && starts[r] < starts[best]);
        if (wins) best = r;
    }
    LandmarkPool best_pool = std::move(pools[best]);
    best_pool.method = SelectionMethod::fps_random_restart;
    best_pool.seed = seed;
    return best_pool;
}

LandmarkPool greedy_max_oracle(const LabelTable& table, std::size_t m,
                               const std::vector<Query>& queries) {
    if (m > table.pool_size()) throw std::invalid_argument("greedy_max_oracle: m > pool size");
    if (queries.empty()) throw std::invalid_argument("greedy_max_oracle: empty query set");

    std::vector<std::size_t> chosen;
    std::vector<bool> used(table.pool_size(), false);
    // Running best bound per query under the chosen set.
    std::vector<double> best_bound(queries.size(), 0.0);

    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best_k = table.pool_size();
        double best_mean = -1.0;
        for (std::size_t k = 0; k < table.pool_size(); ++k) {
            if (used[k]) continue;
            double mean = 0.0;
            const std::size_t idx[1] = {k};
            for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                const double with_k =
                    std::max(best_bound[qi], h_alt(table, idx, idx, queries[qi].s, queries[qi].t));
                mean += with_k;
            }
            mean /= static_cast<double>(queries.size());
            if (mean > best_mean) {  // ties: lowest pool index via scan order
                best_mean = mean;
                best_k = k;
            }
        }
        used[best_k] = true;
        chosen.push_back(best_k);
        const std::size_t idx[1] = {best_k};
        for (std::size_t qi = 0; qi < queries.size(); ++qi)
            best_bound[qi] =
                std::max(best_bound[qi], h_alt(table, idx, idx, queries[qi].s, queries[qi].t));
    }

    LandmarkPool pool;
    pool.method = SelectionMethod::greedy_max;
    for (std::size_t k : chosen) pool.ids.push_back(table.landmark_ids()[k]);
    return pool;
}

CoveringReport covering_radius(const LabelTable& table, const std::vector<std::size_t>& subset,
                               bool symmetrized) {
    if (subset.empty()) throw std::invalid_argument("covering_radius: empty subset");
    for (std::size_t k : subset)
        if (k >= table.pool_size())
            throw std::invalid_argument("covering_radius: subset index out of range");

    CoveringReport rep;
    rep.symmetrized = symmetrized;
    double worst = -1.0;
    for (std::size_t v = 0; v < table.num_vertices(); ++v) {
        double nearest = kUnreachable;
        for (std::size_t k : subset) {
            const double out = table.d_out(k)[v];
            double d;
            if (symmetrized) {
                const double in = table.d_in(k)[v];
                d = (out == kUnreachable || in == kUnreachable) ? kUnreachable
                                                                : std::max(out, in);
            } else {
                d = out;
            }
            nearest = std::min(nearest, d);
        }
        if (nearest == kUnreachable) {
            ++rep.excluded_vertices;  // unreachable from every subset landmark
            continue;
        }
        if (nearest > worst) {
            worst = nearest;
            rep.witness_vertex = static_cast<VertexId>(v);
        }
    }
    rep.r_m = std::max(worst, 0.0);
    return rep;
}

void write_pool(const LandmarkPool& pool, std::ostream& os) {
    os << "# landmark pool\n";
    os << "# method " << to_string(pool.method) << '\n';
    os << "# start_vertex " << pool.start_vertex << '\n';
    os << "# seed " << pool.seed << '\n';
    for (VertexId id : pool.ids) os << id << '\n';
}

LandmarkPool read_pool(std::istream& is) {
    LandmarkPool pool;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "method") {
                std::string v;
                ls >> v;
                pool.method = method_from_string(v);
            } else if (key == "start_vertex") {
                ls >> pool.start_vertex;
            } else if (key == "seed") {
                ls >> pool.seed;
            }
            continue;
        }
        pool.ids.push_back(static_cast<VertexId>(std::stoul(line)));
    }
    return pool;
}

}  // namespace altkit
