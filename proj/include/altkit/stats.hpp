#pragma once
// Statistical protocol: paired Wilcoxon signed-rank, Fisher and Stouffer
// p-combination, Benjamini-Hochberg FDR, and paired TOST equivalence.
// Pure functions, fully reentrant.

#include <span>
#include <string>
#include <vector>

namespace altkit {

struct PairedSamples {
    std::vector<double> a;
    std::vector<double> b;  // paired by index (same query)
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;
    double z = 0.0;         // auxiliary normal deviate where applicable
    int direction = 0;      // sign of the effect (a - b), 0 when degenerate
    bool degenerate = false;
};

// Paired Wilcoxon signed-rank on a - b: zero differences dropped, average
// ranks on ties, normal approximation with tie correction and continuity
// correction. Requires n >= 6 surviving pairs; all-zero differences return
// the degenerate p = 1. statistic = min(R+, R-).
TestResult wilcoxon_signed_rank(const PairedSamples& samples, bool two_sided = true);

// Fisher: chi2 = -2 sum ln p on 2k degrees of freedom. Zero p-values are
// clamped to the smallest positive double with a warning flag in `method`.
TestResult combine_fisher(std::span<const double> p_values);

// Stouffer: z_i = dir_i * Phi^{-1}(1 - p_i / 2), Z = sum z_i / sqrt(k),
// two-sided p.
TestResult combine_stouffer(std::span<const double> p_values, std::span<const int> directions);

// Benjamini-Hochberg step-up at rate q; returns per-input rejection flags.
std::vector<bool> bh_fdr(std::span<const double> p_values, double q);

struct TostResult {
    double p_lower = 1.0;   // H0: mu <= -delta
    double p_upper = 1.0;   // H0: mu >= +delta
    double mean_diff = 0.0;
    bool accepted = false;  // both one-sided p < alpha
    bool degenerate = false;
};

// Paired TOST on per-seed mean differences against the margin +/-delta at
// level alpha. Zero-variance inputs accept when |mean| < delta and reject
// otherwise, flagged degenerate.
TostResult tost_paired(std::span<const double> per_seed_diffs, double delta, double alpha);

// Special functions backing the tests; exposed for oracle validation.
double normal_cdf(double x);
double normal_sf(double x);
double normal_isf(double p);                 // inverse survival function
double chi2_sf(double x, double dof);
double student_t_cdf(double t, double dof);
double student_t_sf(double t, double dof);

}  // namespace altkit
