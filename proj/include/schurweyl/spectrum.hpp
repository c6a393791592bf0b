#pragma once

#include <span>
#include <vector>

#include "schurweyl/bigint.hpp"

namespace schurweyl {

// Squared Schmidt coefficients of a pure bipartite state: a probability
// vector, stored sorted descending and renormalized to unit sum.
class SchmidtSpectrum {
  public:
    // Requires entries >= 0 and |sum - 1| <= 1e-12; sorts and renormalizes.
    explicit SchmidtSpectrum(std::vector<double> probs);

    // Accepts any nonnegative vector with positive sum and scales it to one.
    static SchmidtSpectrum from_unnormalized(std::vector<double> weights);

    static SchmidtSpectrum uniform(int d);

    int d() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    const std::vector<double>& probs() const { return p_; }
    int support_size() const;
    // Multiplicity of the largest entry (exact double ties).
    int top_multiplicity() const;
    double entropy_bits() const;

    bool operator==(const SchmidtSpectrum&) const = default;

  private:
    SchmidtSpectrum() = default;
    std::vector<double> p_;
};

// Exact-arithmetic counterpart used by the slow reference paths.
class RationalSpectrum {
  public:
    // Entries must be nonnegative and sum to exactly one.
    explicit RationalSpectrum(std::vector<BigRational> probs);

    static RationalSpectrum from_fractions(
        const std::vector<std::pair<long long, long long>>& fractions);

    int d() const { return static_cast<int>(p_.size()); }
    const BigRational& operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    const std::vector<BigRational>& probs() const { return p_; }

    // Numerators over the shared denominator, largest first.
    std::pair<std::vector<BigInt>, BigInt> common_denominator_form() const;
    SchmidtSpectrum to_double() const;

  private:
    std::vector<BigRational> p_;
};

// Shannon entropy in bits of a probability vector (not necessarily sorted).
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(const SchmidtSpectrum& p);

// Relative entropy D(q||p) in bits; +infinity when supp(q) is not in supp(p).
double relative_entropy(std::span<const double> q, std::span<const double> p);
double relative_entropy(const SchmidtSpectrum& q, const SchmidtSpectrum& p);

}  // namespace schurweyl
