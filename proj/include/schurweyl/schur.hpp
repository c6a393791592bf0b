#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"

namespace schurweyl {

// Complete homogeneous symmetric polynomial h_k evaluated on the spectrum.
double complete_homogeneous(int k, const SchmidtSpectrum& p);
BigRational complete_homogeneous_exact(int k, const RationalSpectrum& p);

// Counters for the precision ladder behind the floating-point Schur values.
struct SchurEvalStats {
    std::uint64_t closed_form = 0;   // one- and two-point spectra, flat spectra
    std::uint64_t level_double = 0;
    std::uint64_t level_extended = 0;  // 80-bit hardware floats
    std::uint64_t level_mp[3] = {0, 0, 0};
    std::uint64_t level_exact = 0;
};

// Evaluates log2 of Schur polynomials of a fixed spectrum for many shapes.
//
// The workhorse is the ratio-of-alternants determinant on the support of p,
// scaled into [0,1] and eliminated without pivoting; total positivity keeps
// every intermediate quantity positive, so a running error bound is cheap to
// carry. Shapes whose bound exceeds the accuracy target are retried at higher
// precision and, as a last resort, in exact integer arithmetic (the h-matrix
// determinant over a common power-of-two denominator). Spectra with repeated
// entries skip the alternant (its denominator vanishes) and go straight to
// the h-matrix route. Construction is O(d * max_weight); evaluation is
// O(d^3) per shape in the common case. Thread-safe after construction.
class SchurEvaluator {
  public:
    SchurEvaluator(SchmidtSpectrum p, int max_weight, double rel_tol = 1e-13);
    ~SchurEvaluator();
    SchurEvaluator(const SchurEvaluator&) = delete;
    SchurEvaluator& operator=(const SchurEvaluator&) = delete;

    // log2 s_lambda(p); -infinity when the value is exactly zero.
    double log2(const Partition& lambda) const;

    const SchmidtSpectrum& spectrum() const { return p_; }
    SchurEvalStats stats() const;

  private:
    struct Impl;
    SchmidtSpectrum p_;
    std::unique_ptr<Impl> impl_;
};

// One-shot helpers; build a SchurEvaluator for repeated evaluation.
double schur_polynomial(const Partition& lambda, const SchmidtSpectrum& p);
double schur_polynomial_log2(const Partition& lambda, const SchmidtSpectrum& p);

// Exact value as a rational number; cost grows quickly with the weight.
BigRational schur_polynomial_exact(const Partition& lambda, const RationalSpectrum& p);

namespace detail {
// Order-insensitive evaluation used to exercise symmetry in tests.
double schur_polynomial_log2_unsorted(const Partition& lambda, std::span<const double> probs);
}  // namespace detail

}  // namespace schurweyl
