#include "schurweyl/schur.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace schurweyl {

namespace {

using boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_bin_float_50;
using Float250 =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double to_dbl(double x) { return x; }
double to_dbl(long double x) { return static_cast<double>(x); }
template <class T>
double to_dbl(const T& x) {
    return x.template convert_to<double>();
}

double log2_of(double x) { return std::log2(x); }
double log2_of(long double x) { return static_cast<double>(std::log2(x)); }
template <class T>
double log2_of(const T& x) {
    const int e = static_cast<int>(ilogb(x));
    const T mant = scalbn(x, -e);
    return static_cast<double>(e) + std::log2(mant.template convert_to<double>());
}

template <class T>
T pow_int(const T& base, int e) {
    return pow(base, e);
}

struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct DetOutcome {
    bool ok = false;
    double log2_det = 0.0;
    double rel_bound = 0.0;
};

// Elimination without pivoting for matrices with all leading minors positive.
// err carries a first-order rounding bound alongside each entry; the routine
// bails out once a pivot can no longer be certified positive, which is the
// signal that the working precision has been exhausted by cancellation.
template <class T>
DetOutcome positive_minor_log2_det(std::vector<T>& a, std::vector<T>& err, int m, double unit) {
    using std::abs;
    double log2det = 0.0;
    double rel = unit * m;
    for (int k = 0; k < m; ++k) {
        const T& piv = a[static_cast<size_t>(k * m + k)];
        const T& epiv = err[static_cast<size_t>(k * m + k)];
        if (!(piv > 0) || !(epiv < piv * T(0.25))) return {};
        rel += to_dbl(T(epiv / piv));
        log2det += log2_of(piv);
        for (int i = k + 1; i < m; ++i) {
            const T l = a[static_cast<size_t>(i * m + k)] / piv;
            const T el = (err[static_cast<size_t>(i * m + k)] + l * epiv) / piv + T(unit) * l;
            for (int j = k + 1; j < m; ++j) {
                const T prod = l * a[static_cast<size_t>(k * m + j)];
                T& t = a[static_cast<size_t>(i * m + j)];
                t -= prod;
                err[static_cast<size_t>(i * m + j)] +=
                    l * err[static_cast<size_t>(k * m + j)] +
                    el * a[static_cast<size_t>(k * m + j)] +
                    T(unit) * (prod + abs(t));
            }
        }
    }
    return {true, log2det, rel};
}

// Pivoted variant for sign-indefinite matrices (the h-matrix determinant).
// Returns only when the computed sign is positive: the target values are
// nonnegative, so a negative determinant means the result is below noise.
template <class T>
DetOutcome pivoted_log2_det(std::vector<T>& a, std::vector<T>& err, int m, double unit) {
    using std::abs;
    double log2det = 0.0;
    double rel = unit * m;
    int sign = 1;
    for (int k = 0; k < m; ++k) {
        int pr = k;
        T best = abs(a[static_cast<size_t>(k * m + k)]);
        for (int i = k + 1; i < m; ++i) {
            T v = abs(a[static_cast<size_t>(i * m + k)]);
            if (v > best) {
                best = v;
                pr = i;
            }
        }
        if (pr != k) {
            for (int j = 0; j < m; ++j) {
                std::swap(a[static_cast<size_t>(k * m + j)], a[static_cast<size_t>(pr * m + j)]);
                std::swap(err[static_cast<size_t>(k * m + j)],
                          err[static_cast<size_t>(pr * m + j)]);
            }
            sign = -sign;
        }
        const T piv = a[static_cast<size_t>(k * m + k)];
        const T apiv = abs(piv);
        const T epiv = err[static_cast<size_t>(k * m + k)];
        if (!(apiv > 0) || !(epiv < apiv * T(0.25))) return {};
        if (piv < 0) sign = -sign;
        rel += to_dbl(T(epiv / apiv));
        log2det += log2_of(apiv);
        for (int i = k + 1; i < m; ++i) {
            const T l = a[static_cast<size_t>(i * m + k)] / piv;
            const T al = abs(l);
            const T el = (err[static_cast<size_t>(i * m + k)] + al * epiv) / apiv + T(unit) * al;
            for (int j = k + 1; j < m; ++j) {
                const T prod = l * a[static_cast<size_t>(k * m + j)];
                T& t = a[static_cast<size_t>(i * m + j)];
                t -= prod;
                err[static_cast<size_t>(i * m + j)] +=
                    al * err[static_cast<size_t>(k * m + j)] +
                    el * abs(a[static_cast<size_t>(k * m + j)]) + T(unit) * (abs(prod) + abs(t));
            }
        }
    }
    if (sign <= 0) return {};
    return {true, log2det, rel};
}

// Exact pieces: numerators of h_k over a shared denominator c, so that
// h_k = H[k] / c^k. Order of the variables does not matter.
std::vector<BigInt> h_numerators(std::span<const BigInt> nums, int kmax) {
    std::vector<BigInt> h(static_cast<size_t>(kmax) + 1);
    h[0] = 1;
    for (const BigInt& x : nums)
        for (int k = 1; k <= kmax; ++k) h[static_cast<size_t>(k)] += x * h[static_cast<size_t>(k) - 1];
    return h;
}

BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
    const int m = static_cast<int>(a.size());
    if (m == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < m; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int pr = -1;
            for (int i = k + 1; i < m; ++i)
                if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(pr)]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign * a[static_cast<size_t>(m) - 1][static_cast<size_t>(m) - 1];
}

// det[h_{lambda_i - i + j}] over the exact h-numerators; s_lambda = result / c^n.
// Every surviving permutation term carries total degree n, hence the single
// common denominator power.
BigInt exact_h_matrix_numerator(const Partition& lambda, std::span<const BigInt> nums) {
    const int m = lambda.length();
    if (m == 0) return 1;
    const int kmax = lambda.part(0) + m - 1;
    const auto h = h_numerators(nums, kmax);
    std::vector mat(static_cast<size_t>(m), std::vector<BigInt>(static_cast<size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int k = lambda.part(i) - i + j;
            if (k >= 0) mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = h[static_cast<size_t>(k)];
        }
    return bareiss_det(std::move(mat));
}

struct DyadicForm {
    std::vector<BigInt> num;
    long bits = 0;  // common denominator 2^bits
};

DyadicForm dyadic_form(std::span<const double> xs) {
    DyadicForm out;
    std::vector<std::pair<long long, long>> mant;
    mant.reserve(xs.size());
    for (double x : xs) {
        int e = 0;
        const double m = std::frexp(x, &e);
        mant.emplace_back(std::llround(std::ldexp(m, 53)), 53L - e);
        out.bits = std::max(out.bits, mant.back().second);
    }
    for (auto [mi, shift] : mant) out.num.push_back(BigInt(mi) << (out.bits - shift));
    return out;
}

// Stable two-point closed form: s_(a,b)(x,y) = (xy)^b h_{a-b}(x,y) with
// h_k(x,y) = (x^{k+1} - y^{k+1}) / (x - y).
double two_point_log2(int a, int b, double x, double y) {
    const int k = a - b;
    double log2h;
    if (x == y) {
        log2h = std::log2(static_cast<double>(k + 1)) + k * std::log2(x);
    } else {
        const double lt = std::log(y / x);  // < 0
        log2h = k * std::log2(x) +
                (std::log1p(-std::exp((k + 1) * lt)) - std::log1p(-(y / x))) / std::numbers::ln2;
    }
    return b * (std::log2(x) + std::log2(y)) + log2h;
}

}  // namespace

double complete_homogeneous(int k, const SchmidtSpectrum& p) {
    if (k < 0) throw std::invalid_argument("complete_homogeneous: negative degree");
    std::vector<double> h(static_cast<size_t>(k) + 1, 0.0);
    h[0] = 1.0;
    for (int i = 0; i < p.d(); ++i) {
        const double x = p[i];
        if (x == 0.0) continue;
        for (int j = 1; j <= k; ++j) h[static_cast<size_t>(j)] += x * h[static_cast<size_t>(j) - 1];
    }
    return h[static_cast<size_t>(k)];
}

BigRational complete_homogeneous_exact(int k, const RationalSpectrum& p) {
    if (k < 0) throw std::invalid_argument("complete_homogeneous_exact: negative degree");
    auto [nums, den] = p.common_denominator_form();
    const auto h = h_numerators(nums, k);
    BigInt dk = 1;
    for (int i = 0; i < k; ++i) dk *= den;
    return BigRational(h[static_cast<size_t>(k)], dk);
}

struct SchurEvaluator::Impl {
    int d_total = 0;
    int m = 0;  // support size
    int max_weight = 0;
    double rel_tol = 1e-13;
    std::vector<double> x;  // support, ascending
    bool tied = false;
    bool flat = false;

    // Scaled power tables for the hardware-float alternants.
    std::vector<std::vector<double>> rpow;  // rpow[i][k] = (x[i]/x[m-1])^k
    std::vector<std::vector<long double>> rpow_ld;
    std::vector<double> log2x;
    double log2_vandermonde = 0.0;

    DyadicForm dyadic;

    mutable std::atomic<std::uint64_t> stat_closed{0}, stat_double{0}, stat_extended{0},
        stat_exact{0};
    mutable std::atomic<std::uint64_t> stat_mp0{0}, stat_mp1{0}, stat_mp2{0};

    // ---- level implementations ----

    double assemble_log2(const std::vector<int>& exps, double log2_det) const {
        const int base = exps[0];
        NeumaierSum s;
        for (int i = 0; i < m; ++i) s.add(base * log2x[static_cast<size_t>(i)]);
        for (int j = 0; j < m; ++j)
            s.add((exps[static_cast<size_t>(j)] - base) * log2x[static_cast<size_t>(m) - 1]);
        s.add(log2_det);
        s.add(-log2_vandermonde);
        return s.value();
    }

    std::optional<double> alternant_double(const std::vector<int>& exps) const {
        const int mm = m;
        const int base = exps[0];
        thread_local std::vector<double> a, err;
        a.assign(static_cast<size_t>(mm * mm), 0.0);
        err.assign(static_cast<size_t>(mm * mm), 0.0);
        constexpr double unit = 0x1p-53;
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j) {
                const int e = exps[static_cast<size_t>(j)] - base;
                const double v = rpow[static_cast<size_t>(i)][static_cast<size_t>(e)];
                if (v != 0.0 && v < 1e-290) return std::nullopt;  // denormal territory
                a[static_cast<size_t>(i * mm + j)] = v;
                err[static_cast<size_t>(i * mm + j)] = v * unit * (e + 2);
            }
        auto det = positive_minor_log2_det(a, err, mm, unit);
        if (!det.ok || det.rel_bound > rel_tol) return std::nullopt;
        return assemble_log2(exps, det.log2_det);
    }

    std::optional<double> alternant_extended(const std::vector<int>& exps) const {
        const int mm = m;
        const int base = exps[0];
        thread_local std::vector<long double> a, err;
        a.assign(static_cast<size_t>(mm * mm), 0.0L);
        err.assign(static_cast<size_t>(mm * mm), 0.0L);
        const double unit = static_cast<double>(std::numeric_limits<long double>::epsilon());
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j) {
                const int e = exps[static_cast<size_t>(j)] - base;
                const long double v = rpow_ld[static_cast<size_t>(i)][static_cast<size_t>(e)];
                a[static_cast<size_t>(i * mm + j)] = v;
                err[static_cast<size_t>(i * mm + j)] = v * static_cast<long double>(unit * (e + 2));
            }
        auto det = positive_minor_log2_det(a, err, mm, unit);
        if (!det.ok || det.rel_bound > rel_tol) return std::nullopt;
        return assemble_log2(exps, det.log2_det);
    }

    template <class T>
    std::optional<double> alternant_mp(const std::vector<int>& exps) const {
        const int mm = m;
        const double unit = to_dbl(T(std::numeric_limits<T>::epsilon()));
        std::vector<T> a(static_cast<size_t>(mm * mm));
        std::vector<T> err(static_cast<size_t>(mm * mm));
        for (int i = 0; i < mm; ++i) {
            const T xi(x[static_cast<size_t>(i)]);
            for (int j = 0; j < mm; ++j) {
                const int e = exps[static_cast<size_t>(j)];
                const T v = pow_int(xi, e);
                a[static_cast<size_t>(i * mm + j)] = v;
                err[static_cast<size_t>(i * mm + j)] = v * T(unit * (std::log2(e + 2.0) + 2.0));
            }
        }
        auto det = positive_minor_log2_det(a, err, mm, unit);
        if (!det.ok || det.rel_bound > rel_tol) return std::nullopt;
        NeumaierSum s;
        s.add(det.log2_det);
        for (int i = 0; i < mm; ++i)
            for (int j = i + 1; j < mm; ++j)
                s.add(-log2_of(T(T(x[static_cast<size_t>(j)]) - T(x[static_cast<size_t>(i)]))));
        return s.value();
    }

    template <class T>
    std::optional<double> h_matrix_mp(const Partition& lambda) const {
        const int mm = lambda.length();
        const double unit = to_dbl(T(std::numeric_limits<T>::epsilon()));
        const int kmax = lambda.part(0) + mm - 1;
        std::vector<T> h(static_cast<size_t>(kmax) + 1, T(0));
        h[0] = T(1);
        for (int i = 0; i < m; ++i) {
            const T xi(x[static_cast<size_t>(i)]);
            for (int k = 1; k <= kmax; ++k)
                h[static_cast<size_t>(k)] += xi * h[static_cast<size_t>(k) - 1];
        }
        std::vector<T> a(static_cast<size_t>(mm * mm), T(0));
        std::vector<T> err(static_cast<size_t>(mm * mm), T(0));
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j) {
                const int k = lambda.part(i) - i + j;
                if (k < 0) continue;
                a[static_cast<size_t>(i * mm + j)] = h[static_cast<size_t>(k)];
                err[static_cast<size_t>(i * mm + j)] =
                    h[static_cast<size_t>(k)] * T(unit * (k + m + 2));
            }
        auto det = pivoted_log2_det(a, err, mm, unit);
        if (!det.ok || det.rel_bound > rel_tol) return std::nullopt;
        return det.log2_det;
    }

    double exact_log2(const Partition& lambda) const {
        const BigInt d0 = exact_h_matrix_numerator(lambda, dyadic.num);
        if (d0 == 0) return kNegInf;
        if (d0 < 0) throw std::logic_error("schur: exact determinant came out negative");
        return log2_big(d0) - static_cast<double>(dyadic.bits) * lambda.weight();
    }
};

SchurEvaluator::SchurEvaluator(SchmidtSpectrum p, int max_weight, double rel_tol)
    : p_(std::move(p)), impl_(std::make_unique<Impl>()) {
    if (max_weight < 0) throw std::invalid_argument("SchurEvaluator: negative max_weight");
    auto& im = *impl_;
    im.d_total = p_.d();
    im.max_weight = max_weight;
    im.rel_tol = rel_tol;
    for (int i = p_.d() - 1; i >= 0; --i)
        if (p_[i] > 0.0) im.x.push_back(p_[i]);  // ascending
    im.m = static_cast<int>(im.x.size());
    im.flat = im.x.front() == im.x.back();
    for (int i = 0; i + 1 < im.m; ++i)
        if (im.x[static_cast<size_t>(i)] == im.x[static_cast<size_t>(i) + 1]) im.tied = true;

    im.dyadic = dyadic_form(im.x);

    if (im.m >= 3 && !im.tied) {
        const int kmax = max_weight + im.m;
        const double top = im.x.back();
        im.rpow.resize(static_cast<size_t>(im.m));
        im.rpow_ld.resize(static_cast<size_t>(im.m));
        for (int i = 0; i < im.m; ++i) {
            auto& row = im.rpow[static_cast<size_t>(i)];
            auto& row_ld = im.rpow_ld[static_cast<size_t>(i)];
            row.resize(static_cast<size_t>(kmax) + 1);
            row_ld.resize(static_cast<size_t>(kmax) + 1);
            const double r = im.x[static_cast<size_t>(i)] / top;
            const long double r_ld = static_cast<long double>(im.x[static_cast<size_t>(i)]) /
                                     static_cast<long double>(top);
            row[0] = 1.0;
            row_ld[0] = 1.0L;
            for (int k = 1; k <= kmax; ++k) {
                row[static_cast<size_t>(k)] = row[static_cast<size_t>(k) - 1] * r;
                row_ld[static_cast<size_t>(k)] = row_ld[static_cast<size_t>(k) - 1] * r_ld;
            }
        }
        for (double v : im.x) im.log2x.push_back(std::log2(v));
        for (int i = 0; i < im.m; ++i)
            for (int j = i + 1; j < im.m; ++j)
                im.log2_vandermonde +=
                    std::log2(im.x[static_cast<size_t>(j)] - im.x[static_cast<size_t>(i)]);
    }
}

SchurEvaluator::~SchurEvaluator() = default;

SchurEvalStats SchurEvaluator::stats() const {
    SchurEvalStats s;
    s.closed_form = impl_->stat_closed.load();
    s.level_double = impl_->stat_double.load();
    s.level_extended = impl_->stat_extended.load();
    s.level_mp[0] = impl_->stat_mp0.load();
    s.level_mp[1] = impl_->stat_mp1.load();
    s.level_mp[2] = impl_->stat_mp2.load();
    s.level_exact = impl_->stat_exact.load();
    return s;
}

double SchurEvaluator::log2(const Partition& lambda) const {
    const auto& im = *impl_;
    if (lambda.length() > im.d_total)
        throw std::invalid_argument("schur: shape has more rows than the spectrum has entries");
    if (lambda.weight() > im.max_weight)
        throw std::invalid_argument("schur: shape weight exceeds evaluator capacity");
    const int n = lambda.weight();
    if (n == 0) return 0.0;
    if (lambda.length() > im.m) return kNegInf;

    if (im.flat) {
        ++im.stat_closed;
        return n * std::log2(im.x[0]) + log2_weyl_dim(lambda, im.m);
    }
    if (im.m == 1) {
        ++im.stat_closed;
        return n * std::log2(im.x[0]);
    }
    if (im.m == 2) {
        ++im.stat_closed;
        return two_point_log2(lambda.part(0), lambda.part(1), im.x[1], im.x[0]);
    }

    if (!im.tied) {
        // Ascending exponent vector lambda_j + (m-1-j), reversed.
        thread_local std::vector<int> exps;
        exps.assign(static_cast<size_t>(im.m), 0);
        for (int j = 0; j < im.m; ++j)
            exps[static_cast<size_t>(im.m - 1 - j)] = lambda.part(j) + im.m - 1 - j;
        if (auto v = im.alternant_double(exps)) {
            ++im.stat_double;
            return *v;
        }
        if (auto v = im.alternant_extended(exps)) {
            ++im.stat_extended;
            return *v;
        }
        if (auto v = im.alternant_mp<cpp_bin_float_50>(exps)) {
            ++im.stat_mp0;
            return *v;
        }
        if (auto v = im.alternant_mp<cpp_bin_float_100>(exps)) {
            ++im.stat_mp1;
            return *v;
        }
        if (auto v = im.alternant_mp<Float250>(exps)) {
            ++im.stat_mp2;
            return *v;
        }
    } else {
        if (auto v = im.h_matrix_mp<cpp_bin_float_50>(lambda)) {
            ++im.stat_mp0;
            return *v;
        }
        if (auto v = im.h_matrix_mp<cpp_bin_float_100>(lambda)) {
            ++im.stat_mp1;
            return *v;
        }
        if (auto v = im.h_matrix_mp<Float250>(lambda)) {
            ++im.stat_mp2;
            return *v;
        }
    }
    ++im.stat_exact;
    return im.exact_log2(lambda);
}

double schur_polynomial_log2(const Partition& lambda, const SchmidtSpectrum& p) {
    return SchurEvaluator(p, lambda.weight()).log2(lambda);
}

double schur_polynomial(const Partition& lambda, const SchmidtSpectrum& p) {
    return std::exp2(schur_polynomial_log2(lambda, p));
}

BigRational schur_polynomial_exact(const Partition& lambda, const RationalSpectrum& p) {
    int support = 0;
    for (const auto& v : p.probs())
        if (v > 0) ++support;
    if (lambda.length() > p.d())
        throw std::invalid_argument("schur: shape has more rows than the spectrum has entries");
    if (lambda.length() > support) return BigRational(0);
    auto [nums, den] = p.common_denominator_form();
    std::vector<BigInt> positive;
    for (auto& v : nums)
        if (v > 0) positive.push_back(std::move(v));
    const BigInt d0 = exact_h_matrix_numerator(lambda, positive);
    BigInt dn = 1;
    for (int i = 0; i < lambda.weight(); ++i) dn *= den;
    return BigRational(d0, dn);
}

namespace detail {

double schur_polynomial_log2_unsorted(const Partition& lambda, std::span<const double> probs) {
    // Plain double h-matrix determinant in the order given; used to check that
    // evaluation does not depend on how the spectrum is presented.
    const int mm = lambda.length();
    if (mm == 0) return 0.0;
    const int kmax = lambda.part(0) + mm - 1;
    std::vector<double> h(static_cast<size_t>(kmax) + 1, 0.0);
    h[0] = 1.0;
    for (double v : probs) {
        if (v == 0.0) continue;
        for (int k = 1; k <= kmax; ++k) h[static_cast<size_t>(k)] += v * h[static_cast<size_t>(k) - 1];
    }
    std::vector<double> a(static_cast<size_t>(mm * mm), 0.0);
    std::vector<double> err(static_cast<size_t>(mm * mm), 0.0);
    for (int i = 0; i < mm; ++i)
        for (int j = 0; j < mm; ++j) {
            const int k = lambda.part(i) - i + j;
            if (k >= 0) a[static_cast<size_t>(i * mm + j)] = h[static_cast<size_t>(k)];
        }
    auto det = pivoted_log2_det(a, err, mm, 0x1p-53);
    if (!det.ok) return kNegInf;
    return det.log2_det;
}

}  // namespace detail

}  // namespace schurweyl
