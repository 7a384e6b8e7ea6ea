#include "altkit/selector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace altkit {

const char* to_string(InitScheme s) {
    switch (s) {
        case InitScheme::block_sparse: return "block_sparse";
        case InitScheme::identity_first_m: return "identity_first_m";
    }
    return "?";
}

namespace {

constexpr double kElevatedLogit = 3.0;

std::size_t row_argmax(const double* row, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (row[k] > row[best]) best = k;  // ties keep the lowest index
    return best;
}

std::vector<std::size_t> matrix_argmax(const Matrix& w) {
    std::vector<std::size_t> out(w.rows);
    for (std::size_t i = 0; i < w.rows; ++i) out[i] = row_argmax(w.row(i), w.cols);
    return out;
}

// softmax(row / tau) into `p`.
void softmax_row(const double* row, std::size_t n, double tau, double* p) {
    double hi = row[0];
    for (std::size_t k = 1; k < n; ++k) hi = std::max(hi, row[k]);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        p[k] = std::exp((row[k] - hi) / tau);
        acc += p[k];
    }
    for (std::size_t k = 0; k < n; ++k) p[k] /= acc;
}

// Backward through softmax with temperature: given dL/dp, accumulate
// dL/dW += (1/tau) * p (x) (dLdp - <p, dLdp>).
void softmax_backward(const double* p, const double* dldp, std::size_t n, double tau,
                      double* dldw) {
    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k) dot += p[k] * dldp[k];
    for (std::size_t k = 0; k < n; ++k) dldw[k] += p[k] * (dldp[k] - dot) / tau;
}

}  // namespace

std::vector<std::size_t> Selector::argmax_fwd() const { return matrix_argmax(w_fwd); }
std::vector<std::size_t> Selector::argmax_bwd() const { return matrix_argmax(w_bwd); }

Selector init_logits(std::size_t k0, std::size_t m, bool directed, InitScheme scheme,
                     std::uint64_t seed) {
    Selector sel;
    sel.pool_size = k0;
    sel.directed = directed;
    const std::size_t m_fwd = directed ? m / 2 : m;
    const std::size_t m_bwd = directed ? m - m / 2 : 0;
    if (m_fwd > k0 || m_bwd > k0)
        throw std::invalid_argument("init_logits: per-direction m exceeds pool size");

    Rng rng(seed);
    auto init_matrix = [&](std::size_t rows) {
        Matrix w(rows, k0, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            if (scheme == InitScheme::identity_first_m) {
                w.at(i, i) = kElevatedLogit;
            } else {
                const std::size_t lo = i * k0 / rows;
                const std::size_t hi = (i + 1) * k0 / rows;
                for (std::size_t k = 0; k < k0; ++k)
                    w.at(i, k) = (k >= lo && k < hi) ? kElevatedLogit : rng.gaussian(0.0, 0.01);
            }
        }
        return w;
    };
    sel.w_fwd = init_matrix(m_fwd);
    if (m_bwd > 0) sel.w_bwd = init_matrix(m_bwd);
    return sel;
}

SampledSelection sample_selection(const Selector& sel, double tau, Rng& rng, bool with_noise) {
    if (!(tau > 0.0)) throw std::invalid_argument("sample_selection: tau must be > 0");
    SampledSelection out;
    auto sample_matrix = [&](const Matrix& w, Matrix& soft, std::vector<std::size_t>& hard) {
        soft = Matrix(w.rows, w.cols);
        hard.resize(w.rows);
        std::vector<double> noisy(w.cols);
        for (std::size_t i = 0; i < w.rows; ++i) {
            const double* row = w.row(i);
            for (std::size_t k = 0; k < w.cols; ++k)
                noisy[k] = row[k] + (with_noise ? rng.gumbel() : 0.0);
            softmax_row(noisy.data(), w.cols, tau, soft.row(i));
            hard[i] = row_argmax(soft.row(i), w.cols);
        }
    };
    sample_matrix(sel.w_fwd, out.soft_fwd, out.hard_fwd);
    if (sel.m_bwd() > 0) sample_matrix(sel.w_bwd, out.soft_bwd, out.hard_bwd);
    return out;
}

std::vector<double> teacher_heuristic(const LabelTable& table, std::span<const Query> batch) {
    std::vector<double> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
        out[i] = h_alt_full(table, batch[i].s, batch[i].t);
    return out;
}

namespace {

// Per-direction compressed values of one vertex under soft or hard rows.
void eval_rows(const LabelTable& table, bool backward, const Matrix& soft,
               const std::vector<std::size_t>& hard, bool use_hard, VertexId v,
               std::vector<double>& out) {
    const std::size_t rows = soft.rows;
    out.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (use_hard) {
            out[i] = backward ? table.d_in(hard[i])[v] : table.d_out(hard[i])[v];
        } else {
            double acc = 0.0;
            const double* p = soft.row(i);
            for (std::size_t k = 0; k < soft.cols; ++k) {
                const double d = backward ? table.d_in(k)[v] : table.d_out(k)[v];
                acc += p[k] * d;
            }
            out[i] = acc;
        }
    }
}

struct CovGrad {
    double value = 0.0;
    Matrix grad_fwd, grad_bwd;  // gradients w.r.t. the SOFT rows
};

// Smooth covering radius of the soft selection and its gradient w.r.t. the
// soft rows. Metric per pool landmark k and vertex v: d_out on undirected
// tables, max(d_out, d_in) on directed ones. Vertices carrying any sentinel
// pool entry lie outside the covered component and are skipped.
CovGrad smooth_covering_radius_grad(const LabelTable& table, const Matrix& soft_fwd,
                                    const Matrix& soft_bwd, double beta, bool with_grad) {
    const std::size_t k0 = table.pool_size();
    const std::size_t m_total = soft_fwd.rows + soft_bwd.rows;
    CovGrad res;
    if (with_grad) {
        res.grad_fwd = Matrix(soft_fwd.rows, soft_fwd.cols);
        if (soft_bwd.rows > 0) res.grad_bwd = Matrix(soft_bwd.rows, soft_bwd.cols);
    }

    std::vector<double> metric(k0);
    std::vector<double> z(m_total), softmin_w(m_total);
    std::vector<double> s_values;
    std::vector<std::size_t> s_vertices;
    std::vector<std::vector<double>> q_weights;  // softmin weights per kept vertex

    for (std::size_t v = 0; v < table.num_vertices(); ++v) {
        bool skip = false;
        for (std::size_t k = 0; k < k0; ++k) {
            const double out = table.d_out(k)[v];
            const double in = table.d_in(k)[v];
            if (out == kUnreachable || in == kUnreachable) {
                skip = true;
                break;
            }
            metric[k] = table.directed() ? std::max(out, in) : out;
        }
        if (skip) continue;

        for (std::size_t i = 0; i < m_total; ++i) {
            const Matrix& soft = i < soft_fwd.rows ? soft_fwd : soft_bwd;
            const double* p = soft.row(i < soft_fwd.rows ? i : i - soft_fwd.rows);
            double acc = 0.0;
            for (std::size_t k = 0; k < k0; ++k) acc += p[k] * metric[k];
            z[i] = acc;
        }
        // smooth-min over rows with softmin weights kept for the backward.
        const double lo = *std::min_element(z.begin(), z.end());
        double acc = 0.0;
        for (std::size_t i = 0; i < m_total; ++i) {
            softmin_w[i] = std::exp(-beta * (z[i] - lo));
            acc += softmin_w[i];
        }
        s_values.push_back(lo - std::log(acc) / beta);
        if (with_grad) {
            for (double& w : softmin_w) w /= acc;
            q_weights.push_back(softmin_w);
            s_vertices.push_back(v);
        }
    }
    if (s_values.empty()) return res;

    res.value = smooth_max(s_values, beta);

    if (with_grad) {
        // Outer softmax weights over vertices.
        const double hi = *std::max_element(s_values.begin(), s_values.end());
        std::vector<double> omega(s_values.size());
        double acc = 0.0;
        for (std::size_t j = 0; j < s_values.size(); ++j) {
            omega[j] = std::exp(beta * (s_values[j] - hi));
            acc += omega[j];
        }
        for (double& w : omega) w /= acc;

        for (std::size_t j = 0; j < s_values.size(); ++j) {
            const std::size_t v = s_vertices[j];
            bool bad = false;
            for (std::size_t k = 0; k < k0 && !bad; ++k) {
                const double out = table.d_out(k)[v];
                const double in = table.d_in(k)[v];
                bad = out == kUnreachable || in == kUnreachable;
                metric[k] = table.directed() ? std::max(out, in) : out;
            }
            for (std::size_t i = 0; i < m_total; ++i) {
                const double coeff = omega[j] * q_weights[j][i];
                if (coeff == 0.0) continue;
                Matrix& grad = i < soft_fwd.rows ? res.grad_fwd : res.grad_bwd;
                double* row = grad.row(i < soft_fwd.rows ? i : i - soft_fwd.rows);
                for (std::size_t k = 0; k < k0; ++k) row[k] += coeff * metric[k];
            }
        }
    }
    return res;
}

}  // namespace

double smooth_covering_radius(const LabelTable& table, const Matrix& soft_fwd,
                              const Matrix& soft_bwd, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("smooth_covering_radius: beta must be > 0");
    return smooth_covering_radius_grad(table, soft_fwd, soft_bwd, beta, /*with_grad=*/false)
        .value;
}

double smooth_covering_radius(const LabelTable& table, const Selector& sel, double beta) {
    Rng rng(0);
    const SampledSelection s = sample_selection(sel, 1.0, rng, /*with_noise=*/false);
    return smooth_covering_radius(table, s.soft_fwd, s.soft_bwd, beta);
}

LossGrad loss_and_grad(const Selector& sel, const LabelTable& table,
                       std::span<const Query> batch, std::span<const double> teacher,
                       double tau, const TrainConfig& cfg, LossMode mode,
                       const SampledSelection& sample) {
    if (batch.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
    if (teacher.size() != batch.size())
        throw std::invalid_argument("loss_and_grad: teacher size mismatch");

    const std::size_t k0 = sel.pool_size;
    const std::size_t m_fwd = sel.m_fwd();
    const std::size_t m_bwd = sel.m_bwd();
    const bool hard = mode == LossMode::hard_st;

    LossGrad out;
    out.grad_fwd = Matrix(m_fwd, k0);
    if (m_bwd > 0) out.grad_bwd = Matrix(m_bwd, k0);
    // dL/d(soft rows), chained through the softmax at the end.
    Matrix dldp_fwd(m_fwd, k0), dldp_bwd(m_bwd, k0);

    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    std::vector<double> yu_f, yt_f, yu_b, yt_b;

    for (std::size_t qi = 0; qi < batch.size(); ++qi) {
        const VertexId u = batch[qi].s;
        const VertexId t = batch[qi].t;
        eval_rows(table, /*backward=*/false, sample.soft_fwd, sample.hard_fwd, hard, u, yu_f);
        eval_rows(table, /*backward=*/false, sample.soft_fwd, sample.hard_fwd, hard, t, yt_f);
        if (m_bwd > 0) {
            eval_rows(table, /*backward=*/true, sample.soft_bwd, sample.hard_bwd, hard, u, yu_b);
            eval_rows(table, /*backward=*/true, sample.soft_bwd, sample.hard_bwd, hard, t, yt_b);
        }

        // Terms of the outer max, backward bounds before forward; the
        // gradient routes to the single argmax term, ties to the lowest
        // index. Values below zero clamp to h = 0 with no gradient.
        double h = 0.0;
        int best_term = -1;  // encoded: [0, m_bwd) backward, [m_bwd, ...) forward
        int best_sign = 0;   // undirected absolute-value sign
        if (sel.directed) {
            for (std::size_t i = 0; i < m_bwd; ++i) {
                const double val = yu_b[i] - yt_b[i];
                if (val > h) { h = val; best_term = static_cast<int>(i); }
            }
            for (std::size_t i = 0; i < m_fwd; ++i) {
                const double val = yt_f[i] - yu_f[i];
                if (val > h) { h = val; best_term = static_cast<int>(m_bwd + i); }
            }
        } else {
            for (std::size_t i = 0; i < m_fwd; ++i) {
                const double diff = yu_f[i] - yt_f[i];
                const double val = std::abs(diff);
                if (val > h) {
                    h = val;
                    best_term = static_cast<int>(i);
                    best_sign = diff > 0.0 ? 1 : -1;
                }
            }
        }

        const double gap = teacher[qi] - h;
        out.gap_term += std::max(gap, 0.0) * inv_batch;
        if (gap <= 0.0 || best_term < 0) continue;  // positive part inactive or h == 0

        // d(loss)/d(h) = -1/batch; push into the winning term's soft row.
        if (sel.directed) {
            if (best_term < static_cast<int>(m_bwd)) {
                const std::size_t i = static_cast<std::size_t>(best_term);
                double* dldp = dldp_bwd.row(i);
                for (std::size_t k = 0; k < k0; ++k)
                    dldp[k] -= inv_batch * (table.d_in(k)[u] - table.d_in(k)[t]);
            } else {
                const std::size_t i = static_cast<std::size_t>(best_term) - m_bwd;
                double* dldp = dldp_fwd.row(i);
                for (std::size_t k = 0; k < k0; ++k)
                    dldp[k] -= inv_batch * (table.d_out(k)[t] - table.d_out(k)[u]);
            }
        } else {
            const std::size_t i = static_cast<std::size_t>(best_term);
            double* dldp = dldp_fwd.row(i);
            for (std::size_t k = 0; k < k0; ++k)
                dldp[k] -= inv_batch * best_sign * (table.d_out(k)[u] - table.d_out(k)[t]);
        }
    }
    out.loss = out.gap_term;

    // Uniqueness penalty: pairwise overlap of soft rows within a direction.
    if (cfg.lambda_uniq > 0.0) {
        auto add_uniq = [&](const Matrix& soft, Matrix& dldp) {
            double val = 0.0;
            for (std::size_t i = 0; i < soft.rows; ++i)
                for (std::size_t j = i + 1; j < soft.rows; ++j) {
                    double dot = 0.0;
                    for (std::size_t k = 0; k < k0; ++k) dot += soft.at(i, k) * soft.at(j, k);
                    val += dot;
                }
            for (std::size_t i = 0; i < soft.rows; ++i)
                for (std::size_t j = 0; j < soft.rows; ++j) {
                    if (i == j) continue;
                    double* d = dldp.row(i);
                    const double* pj = soft.row(j);
                    for (std::size_t k = 0; k < k0; ++k)
                        d[k] += cfg.lambda_uniq * pj[k];
                }
            return val;
        };
        out.loss += cfg.lambda_uniq * add_uniq(sample.soft_fwd, dldp_fwd);
        if (m_bwd > 0) out.loss += cfg.lambda_uniq * add_uniq(sample.soft_bwd, dldp_bwd);
    }

    // Soft covering-radius penalty on the soft rows.
    if (cfg.lambda_cov > 0.0) {
        const CovGrad cov = smooth_covering_radius_grad(table, sample.soft_fwd, sample.soft_bwd,
                                                        cfg.cov_beta, /*with_grad=*/true);
        out.loss += cfg.lambda_cov * cov.value;
        for (std::size_t i = 0; i < m_fwd; ++i)
            for (std::size_t k = 0; k < k0; ++k)
                dldp_fwd.at(i, k) += cfg.lambda_cov * cov.grad_fwd.at(i, k);
        for (std::size_t i = 0; i < m_bwd; ++i)
            for (std::size_t k = 0; k < k0; ++k)
                dldp_bwd.at(i, k) += cfg.lambda_cov * cov.grad_bwd.at(i, k);
    }

    // Chain dL/dp through the sampling softmax (straight-through in hard
    // mode: forward used hard rows, gradient flows through the soft ones).
    auto chain = [&](const Matrix& soft, const Matrix& dldp, Matrix& grad) {
        for (std::size_t i = 0; i < soft.rows; ++i)
            softmax_backward(soft.row(i), dldp.row(i), k0, tau, grad.row(i));
    };
    chain(sample.soft_fwd, dldp_fwd, out.grad_fwd);
    if (m_bwd > 0) chain(sample.soft_bwd, dldp_bwd, out.grad_bwd);

    // Row-entropy regularizer on the temperature-free softmax of the raw
    // logits (schedule-independent), encouraging sharp selection.
    if (cfg.lambda_cond > 0.0) {
        const std::size_t m_total = m_fwd + m_bwd;
        auto add_entropy = [&](const Matrix& w, Matrix& grad) {
            std::vector<double> q(k0);
            for (std::size_t i = 0; i < w.rows; ++i) {
                softmax_row(w.row(i), k0, 1.0, q.data());
                double ent = 0.0;
                for (std::size_t k = 0; k < k0; ++k)
                    if (q[k] > 0.0) ent -= q[k] * std::log(q[k]);
                out.loss += cfg.lambda_cond * ent / static_cast<double>(m_total);
                double* grow = grad.row(i);
                const double coeff = cfg.lambda_cond / static_cast<double>(m_total);
                for (std::size_t k = 0; k < k0; ++k) {
                    if (q[k] <= 0.0) continue;
                    grow[k] += coeff * q[k] * (-std::log(q[k]) - ent);
                }
            }
        };
        add_entropy(sel.w_fwd, out.grad_fwd);
        if (m_bwd > 0) add_entropy(sel.w_bwd, out.grad_bwd);
    }

    return out;
}

std::pair<Selector, TrainReport> train(const LabelTable& table, std::size_t m,
                                       const TrainConfig& cfg,
                                       const std::vector<VertexId>& query_support,
                                       const std::vector<std::size_t>& checkpoint_epochs) {
    if (query_support.size() < 2)
        throw std::invalid_argument("train: query support needs at least two vertices");
    if (!(cfg.tau_start > 0.0) || !(cfg.tau_end > 0.0) || cfg.tau_end >= cfg.tau_start)
        throw std::invalid_argument("train: tau schedule must be strictly decreasing");
    if (cfg.lambda_cond < 0.0 || cfg.lambda_uniq < 0.0 || cfg.lambda_cov < 0.0)
        throw std::invalid_argument("train: regularizer weights must be nonnegative");
    if (cfg.batch_size == 0) throw std::invalid_argument("train: batch size must be positive");

    Selector sel = init_logits(table.pool_size(), m, table.directed(), cfg.init, cfg.seed);
    TrainReport report;

    auto record_unique = [&]() {
        const double ur = unique_ratio(sel.argmax_fwd(), sel.argmax_bwd());
        report.epoch_unique_ratio.push_back(ur);
        return ur;
    };
    auto want_checkpoint = [&](std::size_t e) {
        return std::find(checkpoint_epochs.begin(), checkpoint_epochs.end(), e) !=
               checkpoint_epochs.end();
    };
    if (want_checkpoint(0)) report.checkpoints.emplace(0, sel);

    // Adam state.
    Matrix m1_f(sel.m_fwd(), table.pool_size()), m2_f(sel.m_fwd(), table.pool_size());
    Matrix m1_b(sel.m_bwd(), table.pool_size()), m2_b(sel.m_bwd(), table.pool_size());

    const Rng base(cfg.seed);
    std::vector<Query> batch(cfg.batch_size);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Exponential tau annealing: tau_e = tau_start*(tau_end/tau_start)^(e/E).
        const double tau =
            cfg.tau_start * std::pow(cfg.tau_end / cfg.tau_start,
                                     static_cast<double>(epoch) / static_cast<double>(cfg.epochs));

        Rng rng = base.fork(epoch + 1);  // per-epoch derived seed
        for (Query& q : batch) {
            q.s = query_support[rng.next_below(query_support.size())];
            do {
                q.t = query_support[rng.next_below(query_support.size())];
            } while (q.t == q.s);
        }
        const std::vector<double> teacher = teacher_heuristic(table, batch);
        const SampledSelection sample = sample_selection(sel, tau, rng, /*with_noise=*/true);
        const LossGrad lg =
            loss_and_grad(sel, table, batch, teacher, tau, cfg, LossMode::hard_st, sample);

        if (!std::isfinite(lg.loss)) {
            report.diverged = true;
            report.diverged_epoch = epoch + 1;
            break;  // deployed form stays admissible regardless
        }
        report.epoch_loss.push_back(lg.loss);

        const double t_step = static_cast<double>(epoch + 1);
        const double bc1 = 1.0 - std::pow(cfg.adam_beta1, t_step);
        const double bc2 = 1.0 - std::pow(cfg.adam_beta2, t_step);
        auto adam_update = [&](Matrix& w, const Matrix& g, Matrix& m1, Matrix& m2) {
            for (std::size_t i = 0; i < w.data.size(); ++i) {
                m1.data[i] = cfg.adam_beta1 * m1.data[i] + (1.0 - cfg.adam_beta1) * g.data[i];
                m2.data[i] =
                    cfg.adam_beta2 * m2.data[i] + (1.0 - cfg.adam_beta2) * g.data[i] * g.data[i];
                const double mhat = m1.data[i] / bc1;
                const double vhat = m2.data[i] / bc2;
                w.data[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
            }
        };
        adam_update(sel.w_fwd, lg.grad_fwd, m1_f, m2_f);
        if (sel.m_bwd() > 0) adam_update(sel.w_bwd, lg.grad_bwd, m1_b, m2_b);

        record_unique();
        if (want_checkpoint(epoch + 1)) report.checkpoints.emplace(epoch + 1, sel);
    }

    report.selected_fwd = sel.argmax_fwd();
    report.selected_bwd = sel.argmax_bwd();
    report.final_unique_ratio = unique_ratio(report.selected_fwd, report.selected_bwd);
    return {std::move(sel), std::move(report)};
}

DeployedLabels deploy(const Selector& sel, const LabelTable& table) {
    return gather_labels(table, sel.argmax_fwd(), sel.argmax_bwd());
}

double unique_ratio(const std::vector<std::size_t>& hard_fwd,
                    const std::vector<std::size_t>& hard_bwd) {
    const std::size_t m = hard_fwd.size() + hard_bwd.size();
    if (m == 0) return 1.0;
    auto distinct = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    return static_cast<double>(distinct(hard_fwd) + distinct(hard_bwd)) /
           static_cast<double>(m);
}

// ---------------------------------------------------------------------------
// Checkpoint serialization

namespace {

constexpr std::uint64_t kSelectorMagic = 0x414c544b53454c31ull;  // "ALTKSEL1"

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("selector checkpoint: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_matrix(std::ostream& os, const Matrix& m) {
    for (double d : m.data) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        put_u64(os, bits);
    }
}

Matrix get_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (double& d : m.data) {
        const std::uint64_t bits = get_u64(is);
        std::memcpy(&d, &bits, 8);
    }
    return m;
}

}  // namespace

void write_selector_checkpoint(const Selector& sel, std::size_t epoch, std::uint64_t seed,
                               std::ostream& os) {
    put_u64(os, kSelectorMagic);
    put_u64(os, sel.pool_size);
    put_u64(os, sel.m_fwd());
    put_u64(os, sel.m_bwd());
    put_u64(os, epoch);
    put_u64(os, seed);
    put_u64(os, sel.directed ? 1 : 0);
    put_matrix(os, sel.w_fwd);
    if (sel.m_bwd() > 0) put_matrix(os, sel.w_bwd);
}

SelectorCheckpoint read_selector_checkpoint(std::istream& is) {
    if (get_u64(is) != kSelectorMagic)
        throw std::runtime_error("selector checkpoint: bad magic");
    SelectorCheckpoint cp;
    cp.selector.pool_size = get_u64(is);
    const std::size_t m_fwd = get_u64(is);
    const std::size_t m_bwd = get_u64(is);
    cp.epoch = get_u64(is);
    cp.seed = get_u64(is);
    cp.selector.directed = get_u64(is) != 0;
    cp.selector.w_fwd = get_matrix(is, m_fwd, cp.selector.pool_size);
    if (m_bwd > 0) cp.selector.w_bwd = get_matrix(is, m_bwd, cp.selector.pool_size);
    return cp;
}

}  // namespace altkit
