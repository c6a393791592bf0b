#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurweyl/bigint.hpp"

namespace schurweyl {

// Integer partition with weakly decreasing nonnegative parts. Trailing zeros
// are stripped on construction, so (2,0) and (2) compare equal; padded(d)
// restores a fixed-width view when one is needed.
class Partition {
  public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }
    int part(int i) const { return i < length() ? parts_[static_cast<size_t>(i)] : 0; }
    std::vector<int> padded(int d) const;
    Partition conjugate() const;
    std::string to_string() const;

    bool operator==(const Partition&) const = default;
    // Lexicographic on the padded part sequence; enumeration emits decreasing order.
    std::strong_ordering operator<=>(const Partition& other) const;

  private:
    std::vector<int> parts_;
    int weight_ = 0;
};

// Conjugacy class of the symmetric group, named by its cycle lengths.
struct CycleType {
    Partition cycles;
    int degree() const { return cycles.weight(); }
};

// All partitions of n with at most d parts, lexicographically decreasing:
// (4,0),(3,1),(2,2) for n=4, d=2.
std::vector<Partition> enumerate_partitions(int n, int d);

// Streaming variant; stops early if the callback returns false.
void for_each_partition(int n, int d, const std::function<bool(const Partition&)>& fn);

namespace detail {

template <class F>
bool partition_span_rec(std::vector<int>& buf, int pos, int remaining, int max_part, int d,
                        F& fn) {
    if (remaining == 0) {
        std::fill(buf.begin() + pos, buf.end(), 0);
        return fn(std::span<const int>(buf.data(), static_cast<size_t>(d)));
    }
    if (pos == d) return true;
    const int slots = d - pos;
    const int lo = (remaining + slots - 1) / slots;
    for (int k = std::min(max_part, remaining); k >= lo; --k) {
        buf[static_cast<size_t>(pos)] = k;
        if (!partition_span_rec(buf, pos + 1, remaining - k, k, d, fn)) return false;
    }
    return true;
}

// Cached log2(k!) and log2(k) lookups backing the large dimension sweeps.
double log2_factorial(int k);
double log2_int(int k);

}  // namespace detail

// Allocation-free sweep over the same sequence as enumerate_partitions. The
// callback receives the parts padded to d entries in a buffer reused between
// visits; return false to stop early.
template <class F>
void for_each_partition_span(int n, int d, F&& fn) {
    if (n < 0 || d < 0) throw std::invalid_argument("for_each_partition_span: negative argument");
    if (n > 0 && d == 0) return;
    std::vector<int> buf(static_cast<size_t>(d), 0);
    detail::partition_span_rec(buf, 0, n, n, d, fn);
}

// Number of partitions of n with at most d parts, saturating at cap.
std::uint64_t partition_count(int n, int d, std::uint64_t cap = UINT64_MAX);

// Dimension of the symmetric-group irrep for shape lambda (count of standard
// tableaux), exact. Grows past 64 bits around n = 20.
BigInt multiplicity_dim(const Partition& lambda);
double log2_multiplicity_dim(const Partition& lambda);
// Span overload for hot loops; accepts padded parts (trailing zeros fine).
double log2_multiplicity_dim(std::span<const int> parts);

// Dimension of the GL(d) irrep for shape lambda (count of semistandard
// tableaux with entries <= d), exact. Rejects shapes with more than d rows.
BigInt weyl_dim(const Partition& lambda, int d);
double log2_weyl_dim(const Partition& lambda, int d);

// Symmetric-group character value chi_lambda(mu), exact (Murnaghan-Nakayama).
BigInt sn_character(const Partition& lambda, const CycleType& mu);

// Order of the conjugacy class with the given cycle type.
BigInt conjugacy_class_size(const CycleType& mu);

// Shape of the two-tableau correspondence under row insertion of the word.
// Letters must lie in {1,...,d}.
Partition rsk_shape(std::span<const int> word, int d);

}  // namespace schurweyl

template <>
struct std::hash<schurweyl::Partition> {
    size_t operator()(const schurweyl::Partition& p) const noexcept {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (int part : p.parts()) h = h * 1099511628211ull + static_cast<size_t>(part);
        return h;
    }
};
