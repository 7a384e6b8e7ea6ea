#include "altkit/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace altkit {

double h_alt(const LabelTable& table, std::span<const std::size_t> subset_fwd,
             std::span<const std::size_t> subset_bwd, VertexId u, VertexId t) {
    double best = 0.0;
    for (std::size_t k : subset_fwd) {
        const auto row = table.d_out(k);
        const double dt = row[t], du = row[u];
        if (dt == kUnreachable || du == kUnreachable) continue;  // masked term
        best = std::max(best, dt - du);
    }
    for (std::size_t k : subset_bwd) {
        const auto row = table.d_in(k);
        const double du = row[u], dt = row[t];
        if (du == kUnreachable || dt == kUnreachable) continue;
        best = std::max(best, du - dt);
    }
    return best;
}

double h_alt(const LabelTable& table, std::span<const std::size_t> subset, VertexId u,
             VertexId t) {
    return h_alt(table, subset, subset, u, t);
}

double h_alt_full(const LabelTable& table, VertexId u, VertexId t) {
    double best = 0.0;
    for (std::size_t k = 0; k < table.pool_size(); ++k) {
        const auto out_row = table.d_out(k);
        if (out_row[t] != kUnreachable && out_row[u] != kUnreachable)
            best = std::max(best, out_row[t] - out_row[u]);
        const auto in_row = table.d_in(k);
        if (in_row[u] != kUnreachable && in_row[t] != kUnreachable)
            best = std::max(best, in_row[u] - in_row[t]);
    }
    return best;
}

double DeployedLabels::max_abs_label() const {
    double best = 0.0;
    for (double y : y_fwd)
        if (y != kUnreachable) best = std::max(best, std::abs(y));
    for (double y : y_bwd)
        if (y != kUnreachable) best = std::max(best, std::abs(y));
    return best;
}

DeployedLabels gather_labels(const LabelTable& table, const std::vector<std::size_t>& rows_fwd,
                             const std::vector<std::size_t>& rows_bwd) {
    if (!table.directed() && !rows_bwd.empty())
        throw std::invalid_argument("gather_labels: undirected tables take a single selection");
    DeployedLabels out;
    out.directed = table.directed();
    out.num_vertices = table.num_vertices();
    out.m_fwd = rows_fwd.size();
    out.m_bwd = rows_bwd.size();
    out.y_fwd.resize(out.num_vertices * out.m_fwd);
    out.y_bwd.resize(out.num_vertices * out.m_bwd);
    for (std::size_t v = 0; v < out.num_vertices; ++v) {
        for (std::size_t i = 0; i < out.m_fwd; ++i)
            out.y_fwd[v * out.m_fwd + i] = table.d_out(rows_fwd[i])[v];
        for (std::size_t i = 0; i < out.m_bwd; ++i)
            out.y_bwd[v * out.m_bwd + i] = table.d_in(rows_bwd[i])[v];
    }
    return out;
}

namespace {

void mix_block(const LabelTable& table, const Matrix& a, bool backward, std::size_t v,
               double* out) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        double acc = 0.0;
        bool poisoned = false;
        const double* w = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (w[k] == 0.0) continue;
            const double d = backward ? table.d_in(k)[v] : table.d_out(k)[v];
            if (d == kUnreachable) {
                poisoned = true;
                break;
            }
            acc += w[k] * d;
        }
        out[i] = poisoned ? kUnreachable : acc;
    }
}

}  // namespace

DeployedLabels mix_labels(const LabelTable& table, const Matrix& a_fwd, const Matrix& a_bwd) {
    if (a_fwd.cols != table.pool_size() || (!a_bwd.empty() && a_bwd.cols != table.pool_size()))
        throw std::invalid_argument("mix_labels: matrix width must equal the pool size");
    if (!table.directed() && !a_bwd.empty())
        throw std::invalid_argument("mix_labels: undirected tables take a single matrix");
    DeployedLabels out;
    out.directed = table.directed();
    out.num_vertices = table.num_vertices();
    out.m_fwd = a_fwd.rows;
    out.m_bwd = a_bwd.rows;
    out.y_fwd.resize(out.num_vertices * out.m_fwd);
    out.y_bwd.resize(out.num_vertices * out.m_bwd);
    for (std::size_t v = 0; v < out.num_vertices; ++v) {
        mix_block(table, a_fwd, /*backward=*/false, v, out.y_fwd.data() + v * out.m_fwd);
        if (out.m_bwd > 0)
            mix_block(table, a_bwd, /*backward=*/true, v, out.y_bwd.data() + v * out.m_bwd);
    }
    return out;
}

DeployedLabels narrow_to_float32(DeployedLabels labels) {
    auto narrow = [](std::vector<double>& ys) {
        for (double& y : ys)
            if (y != kUnreachable) y = static_cast<double>(static_cast<float>(y));
    };
    narrow(labels.y_fwd);
    narrow(labels.y_bwd);
    labels.narrowed = true;
    return labels;
}

double h_compressed(const DeployedLabels& labels, VertexId u, VertexId t) {
    double best = 0.0;
    if (labels.directed) {
        const double* bu = labels.y_bwd.data() + u * labels.m_bwd;
        const double* bt = labels.y_bwd.data() + t * labels.m_bwd;
        for (std::size_t i = 0; i < labels.m_bwd; ++i) {
            if (bu[i] == kUnreachable || bt[i] == kUnreachable) continue;
            best = std::max(best, bu[i] - bt[i]);
        }
        const double* fu = labels.y_fwd.data() + u * labels.m_fwd;
        const double* ft = labels.y_fwd.data() + t * labels.m_fwd;
        for (std::size_t i = 0; i < labels.m_fwd; ++i) {
            if (fu[i] == kUnreachable || ft[i] == kUnreachable) continue;
            best = std::max(best, ft[i] - fu[i]);
        }
    } else {
        const double* yu = labels.y_fwd.data() + u * labels.m_fwd;
        const double* yt = labels.y_fwd.data() + t * labels.m_fwd;
        for (std::size_t i = 0; i < labels.m_fwd; ++i) {
            if (yu[i] == kUnreachable || yt[i] == kUnreachable) continue;
            best = std::max(best, std::abs(yu[i] - yt[i]));
        }
    }
    return best;
}

double smooth_max(std::span<const double> values, double temperature) {
    if (values.empty()) throw std::invalid_argument("smooth_max: empty input");
    if (!(temperature > 0.0)) throw std::invalid_argument("smooth_max: temperature must be > 0");
    const double hi = *std::max_element(values.begin(), values.end());
    double acc = 0.0;
    for (double x : values) acc += std::exp(temperature * (x - hi));
    // (1/T) log sum exp(T x) - log(m)/T, stabilized around the max.
    return hi + (std::log(acc) - std::log(static_cast<double>(values.size()))) / temperature;
}

double smooth_min(std::span<const double> values, double beta) {
    if (values.empty()) throw std::invalid_argument("smooth_min: empty input");
    if (!(beta > 0.0)) throw std::invalid_argument("smooth_min: beta must be > 0");
    const double lo = *std::min_element(values.begin(), values.end());
    double acc = 0.0;
    for (double x : values) acc += std::exp(-beta * (x - lo));
    return lo - std::log(acc) / beta;
}

}  // namespace altkit
