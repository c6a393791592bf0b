#include "schurweyl/bigint.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace schurweyl {

double log2_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log2_big: argument must be positive");
    const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
    if (bits <= 62) return std::log2(static_cast<double>(x.convert_to<std::uint64_t>()));
    const unsigned shift = static_cast<unsigned>(bits) - 62;
    const double top = static_cast<double>((x >> shift).convert_to<std::uint64_t>());
    return std::log2(top) + static_cast<double>(shift);
}

BigInt factorial(unsigned n) {
    static std::mutex mu;
    static std::vector<BigInt> cache{1, 1};
    std::lock_guard lock(mu);
    while (cache.size() <= n) cache.push_back(cache.back() * static_cast<unsigned>(cache.size()));
    return cache[n];
}

}  // namespace schurweyl
