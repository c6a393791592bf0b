#pragma once

#include <string>
#include <vector>

#include "schurweyl/measure.hpp"
#include "schurweyl/spectrum.hpp"

namespace schurweyl {

// Entropy-constrained tilt of a spectrum: q_i proportional to p_i^beta,
// computed in log domain. Zero entries of p stay zero for every beta.
SchmidtSpectrum tilted_spectrum(const SchmidtSpectrum& p, double beta);

struct SolverDiagnostics {
    int iterations = 0;
    double residual = 0.0;  // |H(q_star) - R|, when the constraint is active
    std::string method;     // "constraint_inactive", "tilt_bisection" or "support_boundary"
};

struct ExponentResult {
    double rate;   // R, bits
    double value;  // min D(q || p) subject to H(q) <= R, bits
    SchmidtSpectrum q_star;
    double beta_star;  // +infinity on the support boundary
    SolverDiagnostics solver;
};

// Optimal failure exponent at rate R. For R >= H(p) the constraint is
// inactive and the value is 0. For R below the entropy of the flat top block
// of p the tilt family no longer reaches the constraint and the minimizer
// lives on that block, where the value is -log2(p_1) - R in closed form.
// In between, bisection on beta solves H(q(beta)) = R.
ExponentResult exponent_rate(double rate_bits, const SchmidtSpectrum& p);

// Finite-n exponent -(1/n) log2 of the failure probability at S = ceil(2^{nR}).
// +infinity when the failure probability is exactly zero.
double empirical_exponent(int n, const SchmidtSpectrum& p, double rate_bits,
                          const DistributionOptions& opt = {});

// Relative entropy between the two outcome laws at the same n, in bits.
double distribution_relative_entropy(int n, const SchmidtSpectrum& p_first,
                                     const SchmidtSpectrum& p_second,
                                     const DistributionOptions& opt = {});

struct ConvergenceRow {
    int n = 0;
    double rate = 0.0;
    double failure_prob_log2 = 0.0;
    double empirical = 0.0;
    double analytic = 0.0;
};

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ns,
                                              const SchmidtSpectrum& p, double rate_bits,
                                              const DistributionOptions& opt = {});

struct ProbeRow {
    int n = 0;
    BigInt threshold;
    double failure_prob = 0.0;
    double failure_prob_log2 = 0.0;
};

// Failure probability along an n grid at fixed rate; heads to 0 below the
// entropy and to 1 above it.
std::vector<ProbeRow> strong_converse_probe(const std::vector<int>& ns, const SchmidtSpectrum& p,
                                            double rate_bits, const DistributionOptions& opt = {});

double binary_entropy(double x);

struct BahadurCheck {
    int n = 0;
    double rate = 0.0;
    double lhs = 0.0;              // -(1/n) log2 of the vanishing failure probability
    double rhs = 0.0;              // divergence rate plus finite-n slack, scaled by 1/q_n
    double divergence_rate = 0.0;  // (1/n) D over outcome laws, contrasting spectrum first
    double slack = 0.0;            // h(q_n)/(n q_n) and the residual success term
    bool holds = false;
};

// Finite-n inequality behind the optimality argument: with H(p_other) < R <
// H(p_vanishing), the failure event under p_vanishing has probability p_n and
// under p_other probability q_n, and
//   -(1/n) log2 p_n  <=  [ D(Q_other || Q_vanishing) + h(q_n)
//                          + (1 - q_n) log2(1 - p_n) ] / (n q_n).
BahadurCheck bahadur_finite_n_check(int n, const SchmidtSpectrum& p_vanishing,
                                    const SchmidtSpectrum& p_other, double rate_bits,
                                    const DistributionOptions& opt = {});

}  // namespace schurweyl
