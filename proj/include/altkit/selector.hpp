#pragma once
// The differentiable row-stochastic selector: Gumbel-softmax subset sampling,
// gap-to-teacher training with hand-derived gradients, regularizers,
// initialization schemes, and hard-argmax deployment.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "altkit/heuristic.hpp"
#include "altkit/landmarks.hpp"
#include "altkit/matrix.hpp"
#include "altkit/rng.hpp"
#include "altkit/sssp.hpp"

namespace altkit {

enum class InitScheme { block_sparse, identity_first_m };

const char* to_string(InitScheme s);

// Learnable logit matrices over the K0 teacher pool. Directed graphs hold a
// forward and a backward matrix with m_fwd = floor(m/2), m_bwd = m - m_fwd;
// undirected graphs hold a single m x K0 matrix in w_fwd.
struct Selector {
    std::size_t pool_size = 0;  // K0
    bool directed = false;
    Matrix w_fwd;
    Matrix w_bwd;

    std::size_t m_fwd() const { return w_fwd.rows; }
    std::size_t m_bwd() const { return w_bwd.rows; }
    std::size_t m_total() const { return m_fwd() + m_bwd(); }

    // Deployment form: hard argmax per row (ties to the lowest pool index).
    std::vector<std::size_t> argmax_fwd() const;
    std::vector<std::size_t> argmax_bwd() const;
};

// block_sparse: row i carries logit +b on the contiguous pool block
// [floor(i*K0/m), floor((i+1)*K0/m)) and N(0, 0.01) noise elsewhere.
// identity_first_m: row i carries logit +b on pool index i, zero elsewhere.
// b = 3.0 in both schemes.
Selector init_logits(std::size_t k0, std::size_t m, bool directed, InitScheme scheme,
                     std::uint64_t seed);

struct TrainConfig {
    double learning_rate = 1e-3;
    std::size_t epochs = 200;
    std::size_t batch_size = 256;
    double lambda_cond = 0.01;  // row-entropy regularizer weight
    double lambda_uniq = 0.0;   // pairwise-overlap (duplicate) penalty weight
    double lambda_cov = 0.0;    // soft covering-radius penalty weight
    double cov_beta = 10.0;     // sharpness of the soft covering radius
    double tau_start = 1.0;
    double tau_end = 0.1;
    InitScheme init = InitScheme::block_sparse;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 42;
};

// One Gumbel-softmax draw per row: p = softmax((W_row + g)/tau) with
// g_j = -log(-log U_j); hard = one-hot(argmax p). The straight-through
// estimator evaluates forward passes on `hard` and routes gradients through
// `soft`. with_noise=false drops g (deterministic soft relaxation).
struct SampledSelection {
    Matrix soft_fwd, soft_bwd;
    std::vector<std::size_t> hard_fwd, hard_bwd;
};
SampledSelection sample_selection(const Selector& sel, double tau, Rng& rng,
                                  bool with_noise = true);

enum class LossMode {
    hard_st,  // forward on hard one-hot rows, gradient through soft rows
    soft      // forward and gradient both on soft rows (finite-difference mode)
};

struct LossGrad {
    double loss = 0.0;
    double gap_term = 0.0;  // mean positive-part gap before regularizers
    Matrix grad_fwd, grad_bwd;
};

// Batch loss
//   mean_(s,t) (teacher(s,t) - h_A(s,t))_+ + lambda_cond*R_ent
//   + lambda_uniq*R_uniq + lambda_cov*r_tilde
// and its analytic gradient. `teacher` carries one frozen target per batch
// query (the full-pool ALT value, or the true distance: by the admissibility
// chain both yield identical gradients). Subgradient conventions: the outer
// max routes to its single argmax term (ties to the lowest index, backward
// bounds before forward); the positive part passes gradient iff gap > 0.
LossGrad loss_and_grad(const Selector& sel, const LabelTable& table,
                       std::span<const Query> batch, std::span<const double> teacher,
                       double tau, const TrainConfig& cfg, LossMode mode,
                       const SampledSelection& sample);

// Frozen full-pool teacher values for a batch.
std::vector<double> teacher_heuristic(const LabelTable& table, std::span<const Query> batch);

struct TrainReport {
    std::vector<double> epoch_loss;
    std::vector<double> epoch_unique_ratio;
    double final_unique_ratio = 1.0;  // distinct selected landmarks / m
    std::vector<std::size_t> selected_fwd, selected_bwd;
    std::map<std::size_t, Selector> checkpoints;  // keyed by epochs completed
    bool diverged = false;
    std::size_t diverged_epoch = 0;
};

// Adam over `epochs` single-batch steps with exponential tau annealing
// tau_e = tau_start * (tau_end/tau_start)^(e/E). Query pairs are resampled
// uniformly from `query_support` each epoch with a per-epoch derived seed.
// Deterministic given cfg.seed. A NaN loss aborts with report.diverged set;
// admissibility of the deployed form is unaffected by training state.
std::pair<Selector, TrainReport> train(const LabelTable& table, std::size_t m,
                                       const TrainConfig& cfg,
                                       const std::vector<VertexId>& query_support,
                                       const std::vector<std::size_t>& checkpoint_epochs = {});

// Hard-argmax deployment: gather (not matrix-multiply) of teacher rows.
DeployedLabels deploy(const Selector& sel, const LabelTable& table);

// Differentiable covering-radius surrogate: smooth-max over vertices of the
// smooth-min over compressed dimensions of the expected landmark distance
// under the soft rows (symmetrized on directed tables). Approaches the exact
// covering radius of the selected subset as beta grows with one-hot rows.
// Vertices with any sentinel pool entry (outside the covered component) are
// skipped.
double smooth_covering_radius(const LabelTable& table, const Matrix& soft_fwd,
                              const Matrix& soft_bwd, double beta);
double smooth_covering_radius(const LabelTable& table, const Selector& sel, double beta);

// Unique-ratio of a hard selection: distinct chosen pool indices per
// direction, summed, divided by m.
double unique_ratio(const std::vector<std::size_t>& hard_fwd,
                    const std::vector<std::size_t>& hard_bwd);

// Checkpoint serialization: header (K0, m_fwd, m_bwd, epoch, seed) + row-major
// float64 logits.
void write_selector_checkpoint(const Selector& sel, std::size_t epoch, std::uint64_t seed,
                               std::ostream& os);
struct SelectorCheckpoint {
    Selector selector;
    std::size_t epoch = 0;
    std::uint64_t seed = 0;
};
SelectorCheckpoint read_selector_checkpoint(std::istream& is);

}  // namespace altkit
