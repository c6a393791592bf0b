#pragma once

// Brute-force reference implementations used only by tests. Everything here
// trades speed for independence from the library code paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

namespace testsupport {

inline std::vector<int> stripped(std::vector<int> shape) {
    while (!shape.empty() && shape.back() == 0) shape.pop_back();
    return shape;
}

// Standard tableaux count by removing one corner cell at a time.
inline std::uint64_t brute_syt_count(std::vector<int> shape) {
    static std::map<std::vector<int>, std::uint64_t> memo;
    shape = stripped(std::move(shape));
    if (shape.empty()) return 1;
    const auto hit = memo.find(shape);
    if (hit != memo.end()) return hit->second;
    std::uint64_t total = 0;
    for (size_t i = 0; i < shape.size(); ++i) {
        const int below = i + 1 < shape.size() ? shape[i + 1] : 0;
        if (shape[i] > below) {
            std::vector<int> smaller = shape;
            smaller[i] -= 1;
            total += brute_syt_count(std::move(smaller));
        }
    }
    memo[shape] = total;
    return total;
}

namespace detail {

// Depth-first fill of a semistandard tableau: weakly increasing along rows,
// strictly increasing down columns, entries in 1..d. The callback sees the
// finished filling laid out row-major.
template <class F>
void ssyt_rec(const std::vector<int>& shape, std::vector<std::vector<int>>& cells, size_t row,
              int col, int d, F& fn) {
    if (row == shape.size()) {
        fn(cells);
        return;
    }
    if (col == shape[row]) {
        ssyt_rec(shape, cells, row + 1, 0, d, fn);
        return;
    }
    const int left = col > 0 ? cells[row][static_cast<size_t>(col) - 1] : 1;
    const int above = row > 0 && col < shape[row - 1] ? cells[row - 1][static_cast<size_t>(col)] + 1 : 1;
    for (int v = std::max(left, above); v <= d; ++v) {
        cells[row][static_cast<size_t>(col)] = v;
        ssyt_rec(shape, cells, row, col + 1, d, fn);
    }
}

template <class F>
void for_each_ssyt(std::vector<int> shape, int d, F fn) {
    shape = stripped(std::move(shape));
    std::vector<std::vector<int>> cells;
    for (int len : shape) cells.emplace_back(static_cast<size_t>(len), 0);
    ssyt_rec(shape, cells, 0, 0, d, fn);
}

}  // namespace detail

inline std::uint64_t brute_ssyt_count(const std::vector<int>& shape, int d) {
    std::uint64_t count = 0;
    detail::for_each_ssyt(shape, d, [&](const std::vector<std::vector<int>>&) { ++count; });
    return count;
}

// Schur polynomial as the generating function of semistandard tableaux.
inline double brute_schur(const std::vector<int>& shape, std::span<const double> x) {
    double total = 0.0;
    detail::for_each_ssyt(shape, static_cast<int>(x.size()),
                          [&](const std::vector<std::vector<int>>& cells) {
                              double term = 1.0;
                              for (const auto& row : cells)
                                  for (int v : row) term *= x[static_cast<size_t>(v) - 1];
                              total += term;
                          });
    return total;
}

// Row insertion, shape only.
inline std::vector<int> brute_rsk_shape(std::span<const int> word) {
    std::vector<std::vector<int>> rows;
    for (int letter : word) {
        int carry = letter;
        bool placed = false;
        for (auto& row : rows) {
            auto it = std::upper_bound(row.begin(), row.end(), carry);
            if (it == row.end()) {
                row.push_back(carry);
                placed = true;
                break;
            }
            std::swap(*it, carry);
        }
        if (!placed) rows.push_back({carry});
    }
    std::vector<int> shape;
    shape.reserve(rows.size());
    for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
    return shape;
}

// Longest weakly increasing subsequence, quadratic DP.
inline int brute_lwis(std::span<const int> word) {
    std::vector<int> best(word.size(), 1);
    int out = word.empty() ? 0 : 1;
    for (size_t i = 1; i < word.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (word[j] <= word[i]) best[i] = std::max(best[i], best[j] + 1);
        out = std::max(out, best[i]);
    }
    return out;
}

inline double entropy_bits_of(std::span<const double> q) {
    double h = 0.0;
    for (double v : q)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

inline double divergence_bits_of(std::span<const double> q, std::span<const double> p) {
    double dkl = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0.0) continue;
        if (p[i] == 0.0) return std::numeric_limits<double>::infinity();
        dkl += q[i] * std::log2(q[i] / p[i]);
    }
    return dkl;
}

// Entropy-constrained divergence minimization by grid refinement on the
// simplex, d in {2, 3}. Slow and dumb on purpose.
inline double grid_min_divergence(std::span<const double> p, double rate, int stages = 3,
                                  int cells = 80) {
    const size_t d = p.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> q(d, 0.0), best_q(d, 0.0);

    auto consider = [&](double q1, double q2) {
        q[0] = q1;
        if (d == 3) q[1] = q2;
        q[d - 1] = 1.0 - q1 - (d == 3 ? q2 : 0.0);
        if (q[d - 1] < -1e-12) return;
        if (q[d - 1] < 0.0) q[d - 1] = 0.0;
        if (entropy_bits_of(q) > rate + 1e-12) return;
        const double dkl = divergence_bits_of(q, p);
        if (dkl < best) {
            best = dkl;
            best_q = q;
        }
    };

    double lo1 = 0.0, hi1 = 1.0, lo2 = 0.0, hi2 = 1.0;
    for (int stage = 0; stage < stages; ++stage) {
        const double step1 = (hi1 - lo1) / cells;
        const double step2 = (hi2 - lo2) / cells;
        if (d == 2) {
            for (int i = 0; i <= cells; ++i) consider(lo1 + step1 * i, 0.0);
        } else {
            for (int i = 0; i <= cells; ++i)
                for (int j = 0; j <= cells; ++j) consider(lo1 + step1 * i, lo2 + step2 * j);
        }
        const double c1 = best_q[0], c2 = d == 3 ? best_q[1] : 0.0;
        lo1 = std::max(0.0, c1 - 2.0 * step1);
        hi1 = std::min(1.0, c1 + 2.0 * step1);
        lo2 = std::max(0.0, c2 - 2.0 * step2);
        hi2 = std::min(1.0, c2 + 2.0 * step2);
    }
    return best;
}

// Entropy-constrained divergence minimization solved one slice at a time,
// d in {2, 3}. With the first coordinate pinned, entropy is concave in the
// second and peaks at the midpoint, so the feasible set is at most two
// intervals whose ends fall out of bisection on the monotone halves, and
// divergence is convex there, so only interval ends and the clipped
// stationary point can win. Sweeping the first coordinate with a shrinking
// window handles d = 3; d = 2 is a single slice.
inline double grid_min_divergence_multi(std::span<const double> p, double rate) {
    const double inf = std::numeric_limits<double>::infinity();
    if (entropy_bits_of(p) <= rate + 1e-12) return 0.0;

    auto xlog2x = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };

    if (p.size() == 2) {
        auto dkl_at = [&](double t) {
            const std::array<double, 2> q{t, 1.0 - t};
            return divergence_bits_of(q, p);
        };
        auto h2 = [&](double t) { return -xlog2x(t) - xlog2x(1.0 - t); };
        double a = 0.0, b = 0.5;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (a + b);
            (h2(mid) < rate ? a : b) = mid;
        }
        const double t_lo = 0.5 * (a + b);
        a = 0.5, b = 1.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (a + b);
            (h2(mid) < rate ? b : a) = mid;
        }
        const double t_hi = 0.5 * (a + b);
        return std::min(std::min(dkl_at(0.0), dkl_at(1.0)), std::min(dkl_at(t_lo), dkl_at(t_hi)));
    }

    auto slice_min = [&](double q1) {
        const double m = 1.0 - q1;
        const double head = -xlog2x(q1);
        const double ends = head - xlog2x(m);
        if (ends > rate + 1e-12) return inf;

        std::array<double, 5> cand{0.0, m, 0.0, 0.0, 0.0};
        int k = 2;
        const double tail = p[1] + p[2];
        const double q2_st = tail > 0.0 ? m * p[1] / tail : 0.0;
        if (ends + m <= rate + 1e-12) {
            cand[k++] = q2_st;
        } else if (m > 0.0) {
            auto h_at = [&](double q2) { return head - xlog2x(q2) - xlog2x(m - q2); };
            double a = 0.0, b = 0.5 * m;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + b);
                (h_at(mid) < rate ? a : b) = mid;
            }
            const double root_lo = 0.5 * (a + b);
            a = 0.5 * m, b = m;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + b);
                (h_at(mid) < rate ? b : a) = mid;
            }
            const double root_hi = 0.5 * (a + b);
            cand[k++] = root_lo;
            cand[k++] = root_hi;
            if (q2_st <= root_lo || q2_st >= root_hi) cand[k++] = q2_st;
        }

        double best = inf;
        for (int i = 0; i < k; ++i) {
            const std::array<double, 3> q{q1, cand[i], std::max(0.0, m - cand[i])};
            best = std::min(best, divergence_bits_of(q, p));
        }
        return best;
    };

    const int cells = 2000;
    double lo = 0.0, hi = 1.0, best = inf, best_q1 = 0.0;
    for (int round = 0; round < 4; ++round) {
        const double step = (hi - lo) / cells;
        for (int i = 0; i <= cells; ++i) {
            const double q1 = lo + step * i;
            const double v = slice_min(q1);
            if (v < best) best = v, best_q1 = q1;
        }
        lo = std::max(0.0, best_q1 - 8.0 * step);
        hi = std::min(1.0, best_q1 + 8.0 * step);
    }
    return best;
}

// Pearson statistic against the tabulated 99% quantile; bins with a small
// expectation are pooled into the largest bin first.
struct ChiSquareOutcome {
    double statistic = 0.0;
    int dof = 0;
    double critical = 0.0;
    bool pass = false;
};

inline ChiSquareOutcome chi_square_99(std::vector<double> observed, std::vector<double> expected) {
    constexpr double kQuantile99[] = {6.635,  9.210,  11.345, 13.277, 15.086,
                                      16.812, 18.475, 20.090, 21.666, 23.209,
                                      24.725, 26.217, 27.688, 29.141, 30.578};
    size_t big = 0;
    for (size_t i = 1; i < expected.size(); ++i)
        if (expected[i] > expected[big]) big = i;
    std::vector<double> obs, exp;
    for (size_t i = 0; i < expected.size(); ++i) {
        if (i != big && expected[i] < 10.0) {
            observed[big] += observed[i];
            expected[big] += expected[i];
        } else {
            obs.push_back(observed[i]);
            exp.push_back(expected[i]);
        }
    }
    ChiSquareOutcome out;
    for (size_t i = 0; i < obs.size(); ++i)
        out.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    out.dof = static_cast<int>(obs.size()) - 1;
    if (out.dof < 1) {
        out.pass = true;
        return out;
    }
    out.critical = kQuantile99[std::min<size_t>(static_cast<size_t>(out.dof), 15) - 1];
    out.pass = out.statistic <= out.critical;
    return out;
}

}  // namespace testsupport
