#include "schurweyl/measure.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <limits>
#include <mutex>
#include <thread>

#include "schurweyl/schur.hpp"

namespace schurweyl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_threads(const DistributionOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    if (const char* env = std::getenv("SCHURWEYL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::uint64_t checked_count(int n, int d, const DistributionOptions& opt, const char* what) {
    const std::uint64_t count = partition_count(n, d, opt.budget + 1);
    if (count > opt.budget)
        throw budget_error(std::string(what) + ": partition count exceeds budget of " +
                           std::to_string(opt.budget));
    return count;
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

struct Log2SumExp {
    double peak = -kInf;
    double sum = 0.0;  // sum of 2^(l - peak)
    void add(double l) {
        if (l == -kInf) return;
        if (l <= peak) {
            sum += std::exp2(l - peak);
        } else {
            sum = sum * std::exp2(peak - l) + 1.0;
            peak = l;
        }
    }
    double value() const { return sum == 0.0 ? -kInf : peak + std::log2(sum); }
};

// Hands fixed-size chunks of the enumeration to a worker pool. Chunk indices
// follow enumeration order, so callers can merge per-chunk results by index
// and get the same answer regardless of which thread ran which chunk.
void run_chunked(int n, int d, int threads, size_t chunk_size,
                 const std::function<void(size_t, const std::vector<Partition>&)>& process) {
    if (threads <= 1) {
        std::vector<Partition> chunk;
        chunk.reserve(chunk_size);
        size_t index = 0;
        for_each_partition(n, d, [&](const Partition& lam) {
            chunk.push_back(lam);
            if (chunk.size() == chunk_size) {
                process(index++, chunk);
                chunk.clear();
            }
            return true;
        });
        if (!chunk.empty()) process(index, chunk);
        return;
    }

    struct Queue {
        std::mutex mu;
        std::condition_variable cv_push, cv_pop;
        std::deque<std::pair<size_t, std::vector<Partition>>> items;
        bool done = false;
        size_t cap = 0;
    } q;
    q.cap = static_cast<size_t>(threads) * 2;

    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::pair<size_t, std::vector<Partition>> item;
                {
                    std::unique_lock lk(q.mu);
                    q.cv_pop.wait(lk, [&] { return q.done || !q.items.empty(); });
                    if (q.items.empty()) return;
                    item = std::move(q.items.front());
                    q.items.pop_front();
                }
                q.cv_push.notify_one();
                try {
                    process(item.first, item.second);
                } catch (...) {
                    std::lock_guard lk(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }

    std::vector<Partition> chunk;
    chunk.reserve(chunk_size);
    size_t index = 0;
    auto push = [&] {
        std::unique_lock lk(q.mu);
        q.cv_push.wait(lk, [&] { return q.items.size() < q.cap; });
        q.items.emplace_back(index++, std::move(chunk));
        lk.unlock();
        q.cv_pop.notify_one();
        chunk = {};
        chunk.reserve(chunk_size);
    };
    for_each_partition(n, d, [&](const Partition& lam) {
        chunk.push_back(lam);
        if (chunk.size() == chunk_size) push();
        return true;
    });
    if (!chunk.empty()) push();
    {
        std::lock_guard lk(q.mu);
        q.done = true;
    }
    q.cv_pop.notify_all();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

constexpr size_t kChunk = 2048;

}  // namespace

SchurWeylDistribution::SchurWeylDistribution(int n, SchmidtSpectrum p,
                                             std::vector<DistributionEntry> entries)
    : n_(n), p_(std::move(p)), entries_(std::move(entries)) {
    if (n < 0) throw std::invalid_argument("SchurWeylDistribution: negative copy count");
    NeumaierSum total;
    for (const auto& e : entries_) total.add(e.prob);
    total_ = total.value();
}

const DistributionEntry* SchurWeylDistribution::find(const Partition& shape) const {
    for (const auto& e : entries_)
        if (e.shape == shape) return &e;
    return nullptr;
}

SchurWeylDistribution distribution(int n, const SchmidtSpectrum& p,
                                   const DistributionOptions& opt) {
    if (n < 1) throw std::invalid_argument("distribution: need n >= 1");
    const std::uint64_t count = checked_count(n, p.d(), opt, "distribution");
    const int threads = resolve_threads(opt);

    std::vector<DistributionEntry> entries(count);
    SchurEvaluator eval(p, n);
    std::atomic<size_t> cursor{0};

    run_chunked(n, p.d(), threads, kChunk, [&](size_t chunk_index, const std::vector<Partition>& chunk) {
        size_t pos = chunk_index * kChunk;
        for (const Partition& lam : chunk) {
            DistributionEntry e;
            e.shape = lam;
            e.output_dim = multiplicity_dim(lam);
            e.log2_output_dim = log2_multiplicity_dim(lam);
            e.log2_prob = e.log2_output_dim + eval.log2(lam);
            e.prob = std::exp2(e.log2_prob);
            e.rate = e.log2_output_dim / n;
            entries[pos++] = std::move(e);
        }
        cursor += chunk.size();
    });
    if (cursor.load() != count)
        throw std::logic_error("distribution: enumeration count mismatch");
    return SchurWeylDistribution(n, p, std::move(entries));
}

std::vector<std::pair<Partition, BigRational>> distribution_exact(int n, const RationalSpectrum& p,
                                                                  const DistributionOptions& opt) {
    if (n < 1) throw std::invalid_argument("distribution_exact: need n >= 1");
    checked_count(n, p.d(), opt, "distribution_exact");
    std::vector<std::pair<Partition, BigRational>> out;
    for_each_partition(n, p.d(), [&](const Partition& lam) {
        BigRational a = BigRational(multiplicity_dim(lam)) * schur_polynomial_exact(lam, p);
        out.emplace_back(lam, std::move(a));
        return true;
    });
    return out;
}

double normalization_defect(int n, const SchmidtSpectrum& p, const DistributionOptions& opt) {
    if (n < 1) throw std::invalid_argument("normalization_defect: need n >= 1");
    const std::uint64_t count = checked_count(n, p.d(), opt, "normalization_defect");
    const int threads = resolve_threads(opt);
    const size_t nchunks = static_cast<size_t>((count + kChunk - 1) / kChunk);

    // Shapes whose probability provably stays below 2^-64 are summed through
    // the bound instead of the evaluator; with at most `count` of them the
    // total shortfall stays under count * 2^-64, far inside the tolerance of
    // every caller. The bound uses det <= permanent on the alternant
    // numerator: s_lambda(p) <= m! * prod_i p_i^(lambda_i + m - i) / V(p),
    // valid whenever the support values are distinct.
    const auto& probs = p.probs();
    const int support = p.support_size();
    std::vector<double> log2p;
    for (int i = 0; i < support; ++i) log2p.push_back(std::log2(probs[static_cast<size_t>(i)]));
    bool distinct = true;
    for (int i = 0; i + 1 < support; ++i)
        if (probs[static_cast<size_t>(i)] == probs[static_cast<size_t>(i) + 1]) distinct = false;
    double slack = kInf;
    if (distinct && support >= 2) {
        slack = 0.0;
        for (int k = 2; k <= support; ++k) slack += std::log2(static_cast<double>(k));
        for (int i = 0; i < support; ++i) slack += (support - 1 - i) * log2p[static_cast<size_t>(i)];
        for (int i = 0; i < support; ++i)
            for (int j = i + 1; j < support; ++j)
                slack -= std::log2(probs[static_cast<size_t>(i)] - probs[static_cast<size_t>(j)]);
    }

    SchurEvaluator eval(p, n);
    std::vector<double> partial(nchunks, 0.0);
    run_chunked(n, p.d(), threads, kChunk, [&](size_t chunk_index, const std::vector<Partition>& chunk) {
        NeumaierSum acc;
        for (const Partition& lam : chunk) {
            if (lam.length() > support) continue;
            const double log2_mult = log2_multiplicity_dim(lam);
            if (slack != kInf) {
                double bound = log2_mult + slack;
                for (int i = 0; i < lam.length(); ++i)
                    bound += lam.part(i) * log2p[static_cast<size_t>(i)];
                if (bound < -64.0) continue;
            }
            acc.add(std::exp2(log2_mult + eval.log2(lam)));
        }
        partial[chunk_index] = acc.value();
    });
    NeumaierSum total;
    for (double v : partial) total.add(v);
    return std::abs(total.value() - 1.0);
}

BigInt rate_threshold(int n, double rate_bits) {
    if (n < 1) throw std::invalid_argument("rate_threshold: need n >= 1");
    if (rate_bits < 0.0 || !std::isfinite(rate_bits))
        throw std::invalid_argument("rate_threshold: rate must be finite and nonnegative");
    using BF = boost::multiprecision::cpp_bin_float_100;
    const BF value = pow(BF(2), BF(n) * BF(rate_bits));
    return ceil(value).convert_to<BigInt>();
}

double failure_probability_log2(int n, const SchmidtSpectrum& p, const BigInt& S,
                                const DistributionOptions& opt) {
    if (n < 1) throw std::invalid_argument("failure_probability: need n >= 1");
    if (S < 1) throw std::invalid_argument("failure_probability: threshold must be >= 1");
    checked_count(n, p.d(), opt, "failure_probability");

    SchurEvaluator eval(p, n);
    Log2SumExp acc;
    if (p.d() == 2) {
        // Row pair (n-b, b); output dim C(n,b) - C(n,b-1), updated incrementally.
        BigInt binom = 1, prev = 0;
        for (int b = 0; 2 * b <= n; ++b) {
            const BigInt f = binom - prev;
            if (f < S) acc.add(log2_big(f) + eval.log2(Partition{n - b, b}));
            prev = binom;
            binom = binom * (n - b) / (b + 1);
        }
        return acc.value();
    }
    for_each_partition(n, p.d(), [&](const Partition& lam) {
        const BigInt f = multiplicity_dim(lam);
        if (f < S) acc.add(log2_big(f) + eval.log2(lam));
        return true;
    });
    return acc.value();
}

double failure_probability(int n, const SchmidtSpectrum& p, const BigInt& S,
                           const DistributionOptions& opt) {
    const double l = failure_probability_log2(n, p, S, opt);
    return std::min(1.0, std::exp2(l));
}

Partition sample_outcome(int n, const SchmidtSpectrum& p, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("sample_outcome: need n >= 1");
    std::vector<double> cum(static_cast<size_t>(p.d()));
    double run = 0.0;
    for (int i = 0; i < p.d(); ++i) {
        run += p[i];
        cum[static_cast<size_t>(i)] = run;
    }
    std::vector<int> word(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        // Top 53 bits give a uniform double in [0, 1) identically on every platform.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        int letter = p.d();
        for (int i = 0; i < p.d(); ++i)
            if (u < cum[static_cast<size_t>(i)]) {
                letter = i + 1;
                break;
            }
        if (letter > p.d()) letter = p.d();  // u beyond cum due to rounding
        word[static_cast<size_t>(k)] = letter;
    }
    return rsk_shape(word, p.d());
}

double entropy_estimate(const Partition& shape, int n) {
    if (n < 1) throw std::invalid_argument("entropy_estimate: need n >= 1");
    if (shape.weight() != n)
        throw std::invalid_argument("entropy_estimate: shape weight differs from copy count");
    return log2_multiplicity_dim(shape) / n;
}

double dim_bound_value(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("dim_bound_value: need n, d >= 1");
    return (static_cast<double>(d) * d + 2.0 * d) / (2.0 * n) * std::log2(static_cast<double>(n + d));
}

DimBoundMargin dim_bound_margin(const Partition& shape, int n, int d) {
    if (shape.weight() != n)
        throw std::invalid_argument("dim_bound_margin: shape weight differs from copy count");
    if (shape.length() > d)
        throw std::invalid_argument("dim_bound_margin: shape has more than d rows");
    DimBoundMargin out;
    // H(shape/n) = log2 n - (1/n) sum_i part_i log2 part_i.
    double plogp = 0.0;
    for (int part : shape.parts())
        if (part > 0) plogp += part * detail::log2_int(part);
    const double profile_entropy = detail::log2_int(n) - plogp / n;
    out.lhs = std::abs(log2_multiplicity_dim(shape) / n - profile_entropy);
    out.bound = dim_bound_value(n, d);
    out.holds = out.lhs <= out.bound;
    return out;
}

double tail_probability_exponent_check(int n, const SchmidtSpectrum& p,
                                       const std::function<bool(std::span<const double>)>& region,
                                       const DistributionOptions& opt) {
    if (n < 1) throw std::invalid_argument("tail_probability_exponent_check: need n >= 1");
    checked_count(n, p.d(), opt, "tail_probability_exponent_check");
    SchurEvaluator eval(p, n);
    Log2SumExp acc;
    std::vector<double> profile(static_cast<size_t>(p.d()));
    for_each_partition_span(n, p.d(), [&](std::span<const int> parts) {
        for (size_t i = 0; i < profile.size(); ++i)
            profile[i] = static_cast<double>(parts[i]) / n;
        if (region(profile)) {
            Partition lam(std::vector<int>(parts.begin(), parts.end()));
            acc.add(log2_multiplicity_dim(parts) + eval.log2(lam));
        }
        return true;
    });
    const double total = acc.value();
    return total == -kInf ? kInf : -total / n;
}

}  // namespace schurweyl
