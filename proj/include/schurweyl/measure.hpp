#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schurweyl/bigint.hpp"
#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"

namespace schurweyl {

// Thrown when an operation would enumerate more partitions than allowed.
class budget_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DistributionEntry {
    Partition shape;
    BigInt output_dim;        // dimension of the concentrated maximally entangled state
    double log2_output_dim = 0.0;
    double log2_prob = 0.0;   // may be -inf for unreachable shapes
    double prob = 0.0;
    double rate = 0.0;        // log2_output_dim / n
};

struct DistributionOptions {
    std::uint64_t budget = 1'000'000;  // max partitions enumerated per call
    int threads = 0;                   // 0: honor SCHURWEYL_THREADS, default 1
};

// Outcome law of the shape measurement on n copies: one entry per partition
// of n with at most d rows, probability output_dim * s_shape(p).
class SchurWeylDistribution {
  public:
    SchurWeylDistribution(int n, SchmidtSpectrum p, std::vector<DistributionEntry> entries);

    int n() const { return n_; }
    int d() const { return p_.d(); }
    const SchmidtSpectrum& p() const { return p_; }
    const std::vector<DistributionEntry>& entries() const { return entries_; }

    double total_probability() const { return total_; }
    double normalization_defect() const { return std::abs(total_ - 1.0); }
    const DistributionEntry* find(const Partition& shape) const;

  private:
    int n_;
    SchmidtSpectrum p_;
    std::vector<DistributionEntry> entries_;
    double total_;
};

SchurWeylDistribution distribution(int n, const SchmidtSpectrum& p,
                                   const DistributionOptions& opt = {});

// Exact-rational law for cross-checks; probabilities sum to exactly one.
std::vector<std::pair<Partition, BigRational>> distribution_exact(
    int n, const RationalSpectrum& p, const DistributionOptions& opt = {});

// |sum of probabilities - 1| without materializing entries.
double normalization_defect(int n, const SchmidtSpectrum& p, const DistributionOptions& opt = {});

// Threshold dimension for a rate: ceil(2^{n R}).
BigInt rate_threshold(int n, double rate_bits);

// Probability that the output dimension comes out strictly below S. Outcomes
// with dimension exactly S count as success.
double failure_probability(int n, const SchmidtSpectrum& p, const BigInt& S,
                           const DistributionOptions& opt = {});
// log2 of the same quantity, usable far below the double underflow floor.
double failure_probability_log2(int n, const SchmidtSpectrum& p, const BigInt& S,
                                const DistributionOptions& opt = {});

// Draws one outcome by inserting an i.i.d. word from p; exact sampler for the
// distribution above.
Partition sample_outcome(int n, const SchmidtSpectrum& p, std::mt19937_64& rng);

// (1/n) log2 of the output dimension: the protocol's entropy estimate.
double entropy_estimate(const Partition& shape, int n);

struct DimBoundMargin {
    double lhs = 0.0;    // |entropy_estimate - H(shape/n)|
    double bound = 0.0;  // (d^2 + 2d)/(2n) * log2(n + d)
    bool holds = false;
};

DimBoundMargin dim_bound_margin(const Partition& shape, int n, int d);

// The bound above evaluated on its own.
double dim_bound_value(int n, int d);

// Finite-n tail exponent: -(1/n) log2 of the total probability of shapes
// whose normalized profile shape/n lies in the region. Empty region gives
// +infinity.
double tail_probability_exponent_check(int n, const SchmidtSpectrum& p,
                                       const std::function<bool(std::span<const double>)>& region,
                                       const DistributionOptions& opt = {});

}  // namespace schurweyl
