#include "altkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace altkit {

// ---------------------------------------------------------------------------
// Special functions. Incomplete gamma/beta via the standard series /
// continued-fraction pair (Lentz); validated against frozen oracle tables in
// the unit tests.

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 500;

double gammln(double x) { return std::lgamma(x); }

// Regularized lower incomplete gamma P(a, x) by series.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gammln(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / 1e-300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - gammln(a)) * h;
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

// Continued fraction for the regularized incomplete beta.
double betacf(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < 1e-300) d = 1e-300;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double betainc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        gammln(a + b) - gammln(a) - gammln(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;  // symmetry relation
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730950488); }
double normal_sf(double x) { return 0.5 * std::erfc(x / 1.4142135623730950488); }

double normal_isf(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        if (p == 0.0) return std::numeric_limits<double>::infinity();
        if (p == 1.0) return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("normal_isf: p outside [0,1]");
    }
    // Acklam's rational approximation for the quantile, then one Halley
    // refinement through erfc; accurate to ~1e-15.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double q = 1.0 - p;  // quantile argument: Phi^{-1}(q), q = 1 - p
    double x;
    if (q < 0.02425) {
        const double r = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((dd[0] * r + dd[1]) * r + dd[2]) * r + dd[3]) * r + 1.0);
    } else if (q > 1.0 - 0.02425) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - q));
        x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((dd[0] * r + dd[1]) * r + dd[2]) * r + dd[3]) * r + 1.0);
    } else {
        const double r = q - 0.5;
        const double s = r * r;
        x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
            (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
    }
    // Two Newton steps on f(x) = sf(x) - p; the survival function keeps full
    // relative precision in the tail where the cdf would cancel.
    for (int step = 0; step < 2; ++step) {
        const double pdf = std::exp(-0.5 * x * x) / 2.5066282746310005024;
        if (pdf <= 0.0) break;
        x += (normal_sf(x) - p) / pdf;
    }
    return x;
}

double chi2_sf(double x, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("chi2_sf: dof must be > 0");
    if (x <= 0.0) return 1.0;
    return gamma_q(dof / 2.0, x / 2.0);
}

double student_t_cdf(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("student_t_cdf: dof must be > 0");
    const double x = dof / (dof + t * t);
    const double half_tail = 0.5 * betainc(dof / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double student_t_sf(double t, double dof) { return student_t_cdf(-t, dof); }

// ---------------------------------------------------------------------------
// Tests

TestResult wilcoxon_signed_rank(const PairedSamples& samples, bool two_sided) {
    if (samples.a.size() != samples.b.size())
        throw std::invalid_argument("wilcoxon: sample lengths differ");

    std::vector<double> diffs;
    diffs.reserve(samples.a.size());
    for (std::size_t i = 0; i < samples.a.size(); ++i) {
        const double d = samples.a[i] - samples.b[i];
        if (d != 0.0) diffs.push_back(d);  // zero differences dropped
    }

    TestResult res;
    res.method = "wilcoxon_signed_rank";
    if (diffs.empty()) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }
    const std::size_t n = diffs.size();
    if (n < 6)
        throw std::invalid_argument(
            "wilcoxon: need >= 6 nonzero differences for the normal approximation");

    // Average ranks of |d| with tie bookkeeping.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(diffs[i]) < std::abs(diffs[j]);
    });
    std::vector<double> rank(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        const double t = static_cast<double>(j - i + 1);
        if (t > 1.0) tie_term += t * t * t - t;
        i = j + 1;
    }

    double r_plus = 0.0, r_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        (diffs[i] > 0.0 ? r_plus : r_minus) += rank[i];

    const double nn = static_cast<double>(n);
    const double mn = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double se = std::sqrt(var);
    res.statistic = std::min(r_plus, r_minus);
    res.direction = r_plus > r_minus ? 1 : (r_plus < r_minus ? -1 : 0);
    if (se == 0.0) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }
    // Continuity correction toward the mean.
    const double sign = r_plus > mn ? 1.0 : (r_plus < mn ? -1.0 : 0.0);
    res.z = (r_plus - mn - 0.5 * sign) / se;
    if (two_sided) {
        res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(res.z)));
    } else {
        res.p_value = normal_sf(res.z);  // alternative: differences shifted positive
    }
    return res;
}

TestResult combine_fisher(std::span<const double> p_values) {
    if (p_values.empty()) throw std::invalid_argument("combine_fisher: empty input");
    TestResult res;
    res.method = "fisher";
    double chi2 = 0.0;
    for (double p : p_values) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("combine_fisher: p outside [0,1]");
        if (p == 0.0) {
            p = std::numeric_limits<double>::min();  // clamp with warning tag
            res.method = "fisher(clamped_zero_p)";
        }
        chi2 += -2.0 * std::log(p);
    }
    res.statistic = chi2;
    res.p_value = chi2_sf(chi2, 2.0 * static_cast<double>(p_values.size()));
    return res;
}

TestResult combine_stouffer(std::span<const double> p_values, std::span<const int> directions) {
    if (p_values.empty()) throw std::invalid_argument("combine_stouffer: empty input");
    if (p_values.size() != directions.size())
        throw std::invalid_argument("combine_stouffer: direction count mismatch");
    TestResult res;
    res.method = "stouffer";
    double zsum = 0.0;
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        double p = p_values[i];
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("combine_stouffer: p outside [0,1]");
        if (p == 0.0) {
            p = std::numeric_limits<double>::min();
            res.method = "stouffer(clamped_zero_p)";
        }
        const double z = normal_isf(p / 2.0);  // two-sided p -> |z|
        zsum += (directions[i] >= 0 ? 1.0 : -1.0) * z;
    }
    res.z = zsum / std::sqrt(static_cast<double>(p_values.size()));
    res.statistic = res.z;
    res.direction = res.z > 0.0 ? 1 : (res.z < 0.0 ? -1 : 0);
    res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(res.z)));
    return res;
}

std::vector<bool> bh_fdr(std::span<const double> p_values, double q) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("bh_fdr: q outside (0,1)");
    const std::size_t n = p_values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });
    // Step-up: largest i with p_(i) <= q * i / n; reject that prefix.
    std::size_t cutoff = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double thresh = q * static_cast<double>(i + 1) / static_cast<double>(n);
        if (p_values[order[i]] <= thresh) cutoff = i + 1;
    }
    std::vector<bool> reject(n, false);
    for (std::size_t i = 0; i < cutoff; ++i) reject[order[i]] = true;
    return reject;
}

TostResult tost_paired(std::span<const double> per_seed_diffs, double delta, double alpha) {
    if (per_seed_diffs.size() < 2) throw std::invalid_argument("tost_paired: need >= 2 seeds");
    if (!(delta > 0.0)) throw std::invalid_argument("tost_paired: delta must be > 0");

    TostResult res;
    const double n = static_cast<double>(per_seed_diffs.size());
    double mean = 0.0;
    for (double d : per_seed_diffs) mean += d;
    mean /= n;
    res.mean_diff = mean;
    double ss = 0.0;
    for (double d : per_seed_diffs) ss += (d - mean) * (d - mean);
    const double sd = std::sqrt(ss / (n - 1.0));

    if (sd == 0.0) {
        // Zero spread: equivalence is decided by the mean alone.
        res.degenerate = true;
        res.accepted = std::abs(mean) < delta;
        res.p_lower = res.accepted ? 0.0 : (mean <= -delta ? 1.0 : 0.0);
        res.p_upper = res.accepted ? 0.0 : (mean >= delta ? 1.0 : 0.0);
        return res;
    }

    const double se = sd / std::sqrt(n);
    const double t_lower = (mean + delta) / se;  // H0: mu <= -delta
    const double t_upper = (mean - delta) / se;  // H0: mu >= +delta
    res.p_lower = student_t_sf(t_lower, n - 1.0);
    res.p_upper = student_t_cdf(t_upper, n - 1.0);
    res.accepted = res.p_lower < alpha && res.p_upper < alpha;
    return res;
}

}  // namespace altkit
