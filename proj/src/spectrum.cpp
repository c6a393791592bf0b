#include "schurweyl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace schurweyl {

namespace {

void sort_and_scale(std::vector<double>& p) {
    std::sort(p.begin(), p.end(), std::greater<>());
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= sum;
}

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("SchmidtSpectrum: empty spectrum");
    double sum = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0)) throw std::invalid_argument("SchmidtSpectrum: negative or NaN entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("SchmidtSpectrum: probabilities must sum to 1 within 1e-12");
    sort_and_scale(p_);
}

SchmidtSpectrum SchmidtSpectrum::from_unnormalized(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("SchmidtSpectrum: empty spectrum");
    double sum = 0.0;
    for (double x : weights) {
        if (!(x >= 0.0)) throw std::invalid_argument("SchmidtSpectrum: negative or NaN entry");
        sum += x;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("SchmidtSpectrum: zero total weight");
    SchmidtSpectrum out;
    out.p_ = std::move(weights);
    sort_and_scale(out.p_);
    return out;
}

SchmidtSpectrum SchmidtSpectrum::uniform(int d) {
    if (d <= 0) throw std::invalid_argument("SchmidtSpectrum: d must be positive");
    return SchmidtSpectrum(std::vector<double>(static_cast<size_t>(d), 1.0 / d));
}

int SchmidtSpectrum::support_size() const {
    return static_cast<int>(std::count_if(p_.begin(), p_.end(), [](double x) { return x > 0.0; }));
}

int SchmidtSpectrum::top_multiplicity() const {
    int m = 1;
    while (m < d() && p_[static_cast<size_t>(m)] == p_[0]) ++m;
    return m;
}

double SchmidtSpectrum::entropy_bits() const { return shannon_entropy(p_); }

RationalSpectrum::RationalSpectrum(std::vector<BigRational> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("RationalSpectrum: empty spectrum");
    BigRational sum = 0;
    for (const auto& x : p_) {
        if (x < 0) throw std::invalid_argument("RationalSpectrum: negative entry");
        sum += x;
    }
    if (sum != 1) throw std::invalid_argument("RationalSpectrum: probabilities must sum to 1");
    std::sort(p_.begin(), p_.end(), std::greater<>());
}

RationalSpectrum RationalSpectrum::from_fractions(
    const std::vector<std::pair<long long, long long>>& fractions) {
    std::vector<BigRational> probs;
    probs.reserve(fractions.size());
    for (auto [num, den] : fractions) probs.emplace_back(BigInt(num), BigInt(den));
    return RationalSpectrum(std::move(probs));
}

std::pair<std::vector<BigInt>, BigInt> RationalSpectrum::common_denominator_form() const {
    BigInt den = 1;
    for (const auto& x : p_) den = boost::multiprecision::lcm(den, denominator(x));
    std::vector<BigInt> nums;
    nums.reserve(p_.size());
    for (const auto& x : p_) nums.push_back(numerator(x) * (den / denominator(x)));
    return {std::move(nums), std::move(den)};
}

SchmidtSpectrum RationalSpectrum::to_double() const {
    std::vector<double> probs;
    probs.reserve(p_.size());
    for (const auto& x : p_) probs.push_back(x.convert_to<double>());
    return SchmidtSpectrum::from_unnormalized(std::move(probs));
}

double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double x : probs) {
        if (x < 0.0) throw std::invalid_argument("shannon_entropy: negative probability");
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

double shannon_entropy(const SchmidtSpectrum& p) { return shannon_entropy(p.probs()); }

double relative_entropy(std::span<const double> q, std::span<const double> p) {
    if (q.size() != p.size())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    double d = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 0.0 || p[i] < 0.0)
            throw std::invalid_argument("relative_entropy: negative probability");
        if (q[i] == 0.0) continue;
        if (p[i] == 0.0) return std::numeric_limits<double>::infinity();
        d += q[i] * std::log2(q[i] / p[i]);
    }
    return std::max(d, 0.0);
}

double relative_entropy(const SchmidtSpectrum& q, const SchmidtSpectrum& p) {
    return relative_entropy(std::span<const double>(q.probs()),
                            std::span<const double>(p.probs()));
}

}  // namespace schurweyl
