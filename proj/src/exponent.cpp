#include "schurweyl/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "schurweyl/schur.hpp"

namespace schurweyl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Normalized log2 weights of the tilt q(beta); entries for p_i = 0 are -inf.
std::vector<double> tilt_log2(const SchmidtSpectrum& p, double beta) {
    std::vector<double> w(static_cast<size_t>(p.d()), -kInf);
    double peak = -kInf;
    for (int i = 0; i < p.d(); ++i)
        if (p[i] > 0.0) {
            w[static_cast<size_t>(i)] = beta * std::log2(p[i]);
            peak = std::max(peak, w[static_cast<size_t>(i)]);
        }
    double z = 0.0;
    for (double v : w)
        if (v != -kInf) z += std::exp2(v - peak);
    const double log2z = peak + std::log2(z);
    for (double& v : w)
        if (v != -kInf) v -= log2z;
    return w;
}

double entropy_of_log2_weights(const std::vector<double>& w) {
    double h = 0.0;
    for (double l : w)
        if (l != -kInf) h -= std::exp2(l) * l;
    return h;
}

SchmidtSpectrum spectrum_of_log2_weights(const std::vector<double>& w) {
    std::vector<double> q(w.size());
    for (size_t i = 0; i < w.size(); ++i) q[i] = w[i] == -kInf ? 0.0 : std::exp2(w[i]);
    return SchmidtSpectrum(std::move(q));
}

double entropy_at_tilt(const SchmidtSpectrum& p, double beta) {
    return entropy_of_log2_weights(tilt_log2(p, beta));
}

// Two-level spectrum on the flat top block of p with entropy exactly R:
// q = (a, b, ..., b) on m entries, bisected on a in [1/m, 1].
SchmidtSpectrum top_block_spectrum(const SchmidtSpectrum& p, double target_entropy) {
    const int m = p.top_multiplicity();
    auto entry_entropy = [&](double a) {
        if (m == 1) return 0.0;
        return binary_entropy(a) + (1.0 - a) * std::log2(static_cast<double>(m - 1));
    };
    double lo = 1.0 / m, hi = 1.0;  // entropy log2 m at lo, 0 at hi
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (entry_entropy(mid) > target_entropy ? lo : hi) = mid;
    }
    const double a = 0.5 * (lo + hi);
    std::vector<double> q(static_cast<size_t>(p.d()), 0.0);
    q[0] = a;
    for (int i = 1; i < m; ++i) q[static_cast<size_t>(i)] = (1.0 - a) / (m - 1);
    return SchmidtSpectrum(std::move(q));
}

}  // namespace

SchmidtSpectrum tilted_spectrum(const SchmidtSpectrum& p, double beta) {
    if (beta < 0.0 || !std::isfinite(beta))
        throw std::invalid_argument("tilted_spectrum: tilt must be finite and nonnegative");
    return spectrum_of_log2_weights(tilt_log2(p, beta));
}

ExponentResult exponent_rate(double rate_bits, const SchmidtSpectrum& p) {
    const double max_rate = std::log2(static_cast<double>(p.d()));
    if (rate_bits < 0.0 || rate_bits > max_rate + 1e-12)
        throw std::invalid_argument("exponent_rate: rate outside [0, log2 d]");

    ExponentResult out{rate_bits, 0.0, p, 1.0, {}};
    const double hp = p.entropy_bits();
    if (rate_bits >= hp) {
        out.value = 0.0;
        out.q_star = p;
        out.beta_star = 1.0;
        out.solver.method = "constraint_inactive";
        return out;
    }

    const double top_entropy = std::log2(static_cast<double>(p.top_multiplicity()));
    if (rate_bits <= top_entropy + 1e-12) {
        // Minimizer supported on the maximal entries of p; D reduces to
        // -log2 p_1 - H(q) with H(q) pinned at R.
        out.q_star = top_block_spectrum(p, rate_bits);
        out.value = -std::log2(p[0]) - rate_bits;
        out.beta_star = kInf;
        out.solver.method = "support_boundary";
        out.solver.residual = std::abs(out.q_star.entropy_bits() - rate_bits);
        return out;
    }

    // H(q(beta)) decreases strictly from H(p) at beta = 1 toward the top-block
    // entropy; bracket the target, then bisect.
    double lo = 1.0, hi = 2.0;
    int iterations = 0;
    while (entropy_at_tilt(p, hi) > rate_bits) {
        lo = hi;
        hi *= 2.0;
        if (++iterations > 200)
            throw std::runtime_error("exponent_rate: failed to bracket the tilt");
    }
    double residual = kInf;
    double beta = hi;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h = entropy_at_tilt(p, mid);
        ++iterations;
        if (std::abs(h - rate_bits) < residual) {
            residual = std::abs(h - rate_bits);
            beta = mid;
        }
        if (residual <= 1e-12) break;
        (h > rate_bits ? lo : hi) = mid;
    }
    out.q_star = tilted_spectrum(p, beta);
    out.value = relative_entropy(out.q_star.probs(), p.probs());
    out.beta_star = beta;
    out.solver.iterations = iterations;
    out.solver.residual = residual;
    out.solver.method = "tilt_bisection";
    return out;
}

double empirical_exponent(int n, const SchmidtSpectrum& p, double rate_bits,
                          const DistributionOptions& opt) {
    const double l = failure_probability_log2(n, p, rate_threshold(n, rate_bits), opt);
    return l == -kInf ? kInf : -l / n;
}

double distribution_relative_entropy(int n, const SchmidtSpectrum& p_first,
                                     const SchmidtSpectrum& p_second,
                                     const DistributionOptions& opt) {
    if (p_first.d() != p_second.d())
        throw std::invalid_argument("distribution_relative_entropy: dimension mismatch");
    if (n < 1) throw std::invalid_argument("distribution_relative_entropy: need n >= 1");
    const int d = p_first.d();
    if (partition_count(n, d, opt.budget + 1) > opt.budget)
        throw budget_error("distribution_relative_entropy: partition count exceeds budget");

    SchurEvaluator eval_first(p_first, n), eval_second(p_second, n);
    double total = 0.0, comp = 0.0;
    for_each_partition(n, d, [&](const Partition& lam) {
        const double lf = log2_multiplicity_dim(lam);
        const double la = lf + eval_first.log2(lam);
        if (la == -kInf) return true;
        const double lb = lf + eval_second.log2(lam);
        const double term = std::exp2(la) * (la - lb);  // +inf if lb is -inf
        const double t = total + term;
        comp += std::abs(total) >= std::abs(term) ? (total - t) + term : (term - t) + total;
        total = t;
        return true;
    });
    return std::max(0.0, total + comp);
}

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ns,
                                              const SchmidtSpectrum& p, double rate_bits,
                                              const DistributionOptions& opt) {
    const double analytic = exponent_rate(rate_bits, p).value;
    std::vector<ConvergenceRow> rows;
    rows.reserve(ns.size());
    for (int n : ns) {
        ConvergenceRow row;
        row.n = n;
        row.rate = rate_bits;
        row.failure_prob_log2 = failure_probability_log2(n, p, rate_threshold(n, rate_bits), opt);
        row.empirical = row.failure_prob_log2 == -kInf ? kInf : -row.failure_prob_log2 / n;
        row.analytic = analytic;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ProbeRow> strong_converse_probe(const std::vector<int>& ns, const SchmidtSpectrum& p,
                                            double rate_bits, const DistributionOptions& opt) {
    std::vector<ProbeRow> rows;
    rows.reserve(ns.size());
    for (int n : ns) {
        ProbeRow row;
        row.n = n;
        row.threshold = rate_threshold(n, rate_bits);
        row.failure_prob_log2 = failure_probability_log2(n, p, row.threshold, opt);
        row.failure_prob = std::min(1.0, std::exp2(row.failure_prob_log2));
        rows.push_back(row);
    }
    return rows;
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

BahadurCheck bahadur_finite_n_check(int n, const SchmidtSpectrum& p_vanishing,
                                    const SchmidtSpectrum& p_other, double rate_bits,
                                    const DistributionOptions& opt) {
    BahadurCheck out;
    out.n = n;
    out.rate = rate_bits;
    const BigInt S = rate_threshold(n, rate_bits);
    const double log2_pn = failure_probability_log2(n, p_vanishing, S, opt);
    const double pn = std::min(1.0, std::exp2(log2_pn));
    const double qn = failure_probability(n, p_other, S, opt);
    if (qn <= 0.0)
        throw std::domain_error("bahadur_finite_n_check: contrasting failure probability is zero");

    out.lhs = log2_pn == -kInf ? kInf : -log2_pn / n;
    out.divergence_rate = distribution_relative_entropy(n, p_other, p_vanishing, opt) / n;
    const double success_term = pn < 1.0 ? (1.0 - qn) * std::log1p(-pn) / std::numbers::ln2 : 0.0;
    out.slack = (binary_entropy(qn) + success_term) / (static_cast<double>(n) * qn);
    out.rhs = out.divergence_rate / qn + out.slack;
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

}  // namespace schurweyl
