#include "schurweyl/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace schurweyl {

namespace {

void validate_parts(const std::vector<int>& parts) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) throw std::invalid_argument("Partition: negative part");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

}  // namespace

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    validate_parts(parts_);
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::padded(int d) const {
    if (length() > d) throw std::invalid_argument("Partition::padded: more parts than slots");
    std::vector<int> out(static_cast<size_t>(d), 0);
    std::copy(parts_.begin(), parts_.end(), out.begin());
    return out;
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> out(static_cast<size_t>(parts_[0]), 0);
    for (int row : parts_)
        for (int j = 0; j < row; ++j) ++out[static_cast<size_t>(j)];
    return Partition(std::move(out));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    if (parts_.empty()) os << "0";
    os << ')';
    return os.str();
}

std::strong_ordering Partition::operator<=>(const Partition& other) const {
    const int len = std::max(length(), other.length());
    for (int i = 0; i < len; ++i) {
        if (auto c = part(i) <=> other.part(i); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

namespace {

bool enumerate_rec(std::vector<int>& stack, int remaining, int slots, int max_part,
                   const std::function<bool(const Partition&)>& fn) {
    if (remaining == 0) {
        return fn(Partition(stack));
    }
    if (slots == 0) return true;
    // First part as large as possible gives lexicographically decreasing order.
    const int lo = (remaining + slots - 1) / slots;  // ceil: the rest must fit below
    for (int k = std::min(max_part, remaining); k >= lo; --k) {
        stack.push_back(k);
        const bool keep_going = enumerate_rec(stack, remaining - k, slots - 1, k, fn);
        stack.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace

void for_each_partition(int n, int d, const std::function<bool(const Partition&)>& fn) {
    if (n < 0 || d < 0) throw std::invalid_argument("for_each_partition: negative argument");
    if (n > 0 && d == 0) return;
    std::vector<int> stack;
    stack.reserve(static_cast<size_t>(d));
    enumerate_rec(stack, n, d, n, fn);
}

std::vector<Partition> enumerate_partitions(int n, int d) {
    std::vector<Partition> out;
    for_each_partition(n, d, [&](const Partition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::uint64_t partition_count(int n, int d, std::uint64_t cap) {
    if (n < 0 || d < 0) throw std::invalid_argument("partition_count: negative argument");
    if (n == 0) return 1;
    if (d == 0) return 0;
    // count[m] = partitions of m into parts of size <= current k, capped.
    std::vector<std::uint64_t> count(static_cast<size_t>(n) + 1, 0);
    count[0] = 1;
    for (int k = 1; k <= d; ++k) {
        for (int m = k; m <= n; ++m) {
            const std::uint64_t add = count[static_cast<size_t>(m - k)];
            std::uint64_t& c = count[static_cast<size_t>(m)];
            c = (c > cap - add) ? cap : c + add;
        }
    }
    return count[static_cast<size_t>(n)];
}

BigInt multiplicity_dim(const Partition& lambda) {
    const int n = lambda.weight();
    if (n == 0) return 1;
    // Two-row shapes have a short closed form used heavily by large-n sweeps.
    if (lambda.length() <= 2) {
        const int a = lambda.part(0), b = lambda.part(1);
        return factorial(static_cast<unsigned>(n)) * static_cast<unsigned>(a - b + 1) /
               (factorial(static_cast<unsigned>(b)) * factorial(static_cast<unsigned>(a + 1)));
    }
    const Partition conj = lambda.conjugate();
    BigInt hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.part(i); ++j)
            hooks *= lambda.part(i) - j + conj.part(j) - i - 1;
    return factorial(static_cast<unsigned>(n)) / hooks;
}

namespace detail {

double log2_factorial(int k) {
    thread_local std::vector<double> table;
    if (static_cast<size_t>(k) >= table.size()) {
        const size_t want = std::max<size_t>(static_cast<size_t>(k) + 1, 256);
        for (size_t i = table.size(); i < want; ++i)
            table.push_back(std::lgamma(static_cast<double>(i) + 1.0) / std::numbers::ln2);
    }
    return table[static_cast<size_t>(k)];
}

double log2_int(int k) {
    thread_local std::vector<double> table;
    if (static_cast<size_t>(k) >= table.size()) {
        const size_t want = std::max<size_t>(static_cast<size_t>(k) + 1, 256);
        for (size_t i = table.size(); i < want; ++i)
            table.push_back(std::log2(static_cast<double>(i)));
    }
    return table[static_cast<size_t>(k)];
}

}  // namespace detail

double log2_multiplicity_dim(std::span<const int> parts) {
    // Determinant form: n! * prod_{i<j}(l_i - l_j) / prod_i l_i!  with
    // l_i = lambda_i + m - i. Stable under padding with zero rows.
    const int m = static_cast<int>(parts.size());
    int n = 0;
    for (int v : parts) n += v;
    if (n == 0) return 0.0;
    double acc = detail::log2_factorial(n);
    for (int i = 0; i < m; ++i) {
        const int li = parts[static_cast<size_t>(i)] + m - 1 - i;
        acc -= detail::log2_factorial(li);
        for (int j = i + 1; j < m; ++j) {
            const int lj = parts[static_cast<size_t>(j)] + m - 1 - j;
            acc += detail::log2_int(li - lj);
        }
    }
    return acc;
}

double log2_multiplicity_dim(const Partition& lambda) {
    return log2_multiplicity_dim(std::span<const int>(lambda.parts()));
}

BigInt weyl_dim(const Partition& lambda, int d) {
    if (d <= 0) throw std::invalid_argument("weyl_dim: d must be positive");
    if (lambda.length() > d) throw std::invalid_argument("weyl_dim: shape has more than d rows");
    BigInt num = 1, den = 1;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            num *= lambda.part(i) - lambda.part(j) + j - i;
            den *= j - i;
        }
    return num / den;
}

double log2_weyl_dim(const Partition& lambda, int d) {
    if (d <= 0) throw std::invalid_argument("log2_weyl_dim: d must be positive");
    if (lambda.length() > d) throw std::invalid_argument("log2_weyl_dim: shape has more than d rows");
    double ln = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            ln += std::log(static_cast<double>(lambda.part(i) - lambda.part(j) + j - i)) -
                  std::log(static_cast<double>(j - i));
    return ln / std::numbers::ln2;
}

namespace {

// Murnaghan-Nakayama on beta-sets. Removing a border strip of length t is
// replacing some beta number b by b - t; the sign is the parity of the count
// of beta numbers passed over.
struct CharacterContext {
    std::vector<int> cycles;  // consumed from index k onward
    std::map<std::pair<std::vector<int>, size_t>, BigInt> memo;

    BigInt eval(std::vector<int> beta, size_t k) {
        std::sort(beta.begin(), beta.end(), std::greater<>());
        if (k == cycles.size()) return weight_of(beta) == 0 ? BigInt(1) : BigInt(0);
        const auto key = std::make_pair(beta, k);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const int t = cycles[k];
        BigInt total = 0;
        for (size_t i = 0; i < beta.size(); ++i) {
            const int target = beta[i] - t;
            if (target < 0) continue;
            if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
            int height = 0;
            for (int b : beta)
                if (target < b && b < beta[i]) ++height;
            std::vector<int> next = beta;
            next[i] = target;
            const BigInt sub = eval(std::move(next), k + 1);
            total += (height % 2 == 0) ? sub : -sub;
        }
        memo.emplace(key, total);
        return total;
    }

    static int weight_of(const std::vector<int>& beta) {
        int w = 0;
        const int m = static_cast<int>(beta.size());
        for (int i = 0; i < m; ++i) w += beta[static_cast<size_t>(i)];
        return w - m * (m - 1) / 2;
    }
};

}  // namespace

BigInt sn_character(const Partition& lambda, const CycleType& mu) {
    if (lambda.weight() != mu.degree())
        throw std::invalid_argument("sn_character: shape and cycle type have different sizes");
    if (lambda.weight() == 0) return 1;
    for (int c : mu.cycles.parts())
        if (c == 0) throw std::invalid_argument("sn_character: zero cycle length");
    CharacterContext ctx;
    ctx.cycles = mu.cycles.parts();
    const int m = lambda.length();
    std::vector<int> beta(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) beta[static_cast<size_t>(i)] = lambda.part(i) + m - 1 - i;
    return ctx.eval(std::move(beta), 0);
}

BigInt conjugacy_class_size(const CycleType& mu) {
    const int n = mu.degree();
    BigInt centralizer = 1;
    int run_length = 0, prev = -1;
    for (int c : mu.cycles.parts()) {
        if (c == prev) {
            ++run_length;
        } else {
            prev = c;
            run_length = 1;
        }
        centralizer *= c;
        centralizer *= run_length;  // accumulates m_c! one factor at a time
    }
    return factorial(static_cast<unsigned>(n)) / centralizer;
}

Partition rsk_shape(std::span<const int> word, int d) {
    if (d <= 0) throw std::invalid_argument("rsk_shape: d must be positive");
    std::vector<std::vector<int>> rows;
    for (int x : word) {
        if (x < 1 || x > d) throw std::out_of_range("rsk_shape: letter outside {1,...,d}");
        for (size_t r = 0;; ++r) {
            if (r == rows.size()) {
                rows.emplace_back(1, x);
                break;
            }
            auto& row = rows[r];
            auto it = std::upper_bound(row.begin(), row.end(), x);
            if (it == row.end()) {
                row.push_back(x);
                break;
            }
            std::swap(*it, x);  // bump the displaced entry into the next row
        }
    }
    std::vector<int> shape;
    shape.reserve(rows.size());
    for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
    return Partition(std::move(shape));
}

}  // namespace schurweyl
