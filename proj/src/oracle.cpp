#include "schurweyl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace schurweyl {

namespace {

std::uint64_t pow_u64(int base, int exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / static_cast<std::uint64_t>(base))
            throw budget_error("state size exceeds the amplitude budget");
        v *= static_cast<std::uint64_t>(base);
    }
    return v;
}

void check_unitary(const CMat& u, const char* name) {
    const double dev = (u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-12)
        throw std::invalid_argument(std::string(name) + ": matrix is not unitary (deviation " +
                                    std::to_string(dev) + ")");
}

std::vector<int> cycle_type_of(std::span<const int> sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> cycles;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = 1;
            j = sigma[static_cast<size_t>(j)];
            ++len;
        }
        cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end(), std::greater<>());
    return cycles;
}

double uniform_01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Single-qudit gate on the digit at position pos of a little-endian index.
void apply_gate(CVec& psi, const CMat& u, int pos, int d) {
    const Eigen::Index dim = psi.size();
    Eigen::Index stride = 1;
    for (int i = 0; i < pos; ++i) stride *= d;
    const Eigen::Index block = stride * d;
    CVec scratch(d);
    for (Eigen::Index high = 0; high < dim; high += block)
        for (Eigen::Index low = 0; low < stride; ++low) {
            const Eigen::Index base = high + low;
            for (int x = 0; x < d; ++x) {
                std::complex<double> acc = 0.0;
                for (int y = 0; y < d; ++y) acc += u(x, y) * psi[base + stride * y];
                scratch[x] = acc;
            }
            for (int x = 0; x < d; ++x) psi[base + stride * x] = scratch[x];
        }
}

}  // namespace

PureBipartiteState::PureBipartiteState(SchmidtSpectrum schmidt)
    : schmidt_(std::move(schmidt)),
      basis_a_(CMat::Identity(schmidt_.d(), schmidt_.d())),
      basis_b_(CMat::Identity(schmidt_.d(), schmidt_.d())) {}

PureBipartiteState::PureBipartiteState(SchmidtSpectrum schmidt, CMat basis_a, CMat basis_b)
    : schmidt_(std::move(schmidt)), basis_a_(std::move(basis_a)), basis_b_(std::move(basis_b)) {
    if (basis_a_.rows() != d() || basis_a_.cols() != d() || basis_b_.rows() != d() ||
        basis_b_.cols() != d())
        throw std::invalid_argument("PureBipartiteState: basis size mismatch");
    check_unitary(basis_a_, "basis_a");
    check_unitary(basis_b_, "basis_b");
}

CMat PureBipartiteState::amplitude_matrix() const {
    CVec roots(d());
    for (int i = 0; i < d(); ++i) roots[i] = std::sqrt(schmidt_[i]);
    return basis_a_ * roots.asDiagonal() * basis_b_.transpose();
}

CVec build_tensor_state(const PureBipartiteState& phi, int n, std::uint64_t amplitude_budget) {
    if (n < 1) throw std::invalid_argument("build_tensor_state: need n >= 1");
    const int d = phi.d();
    const std::uint64_t dim = pow_u64(d, 2 * n, amplitude_budget);
    const std::uint64_t half = pow_u64(d, n, amplitude_budget);
    const CMat m = phi.amplitude_matrix();

    CVec out(static_cast<Eigen::Index>(dim));
    for (std::uint64_t ib = 0; ib < half; ++ib)
        for (std::uint64_t ia = 0; ia < half; ++ia) {
            std::complex<double> amp = 1.0;
            std::uint64_t ra = ia, rb = ib;
            for (int k = 0; k < n; ++k) {
                amp *= m(static_cast<Eigen::Index>(ra % d), static_cast<Eigen::Index>(rb % d));
                ra /= d;
                rb /= d;
            }
            out[static_cast<Eigen::Index>(ia + half * ib)] = amp;
        }
    const double norm = out.norm();
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::logic_error("build_tensor_state: norm drifted from one");
    return out / norm;
}

CVec apply_site_permutation(const CVec& state, std::span<const int> sigma, int n, int d,
                            Side side) {
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("apply_site_permutation: permutation size mismatch");
    Eigen::Index half = 1;
    for (int i = 0; i < n; ++i) half *= d;
    if (state.size() % half != 0)
        throw std::invalid_argument("apply_site_permutation: state size mismatch");

    std::vector<Eigen::Index> weight(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Eigen::Index w = 1;
        for (int k = 0; k < sigma[static_cast<size_t>(i)]; ++k) w *= d;
        weight[static_cast<size_t>(i)] = w;
    }
    std::vector<Eigen::Index> map(static_cast<size_t>(half));
    for (Eigen::Index idx = 0; idx < half; ++idx) {
        Eigen::Index rest = idx, out = 0;
        for (int i = 0; i < n; ++i) {
            out += (rest % d) * weight[static_cast<size_t>(i)];
            rest /= d;
        }
        map[static_cast<size_t>(idx)] = out;
    }

    CVec result(state.size());
    const Eigen::Index other = state.size() / half;
    if (side == Side::A) {
        for (Eigen::Index hi = 0; hi < other; ++hi) {
            const Eigen::Index off = hi * half;
            for (Eigen::Index lo = 0; lo < half; ++lo)
                result[off + map[static_cast<size_t>(lo)]] = state[off + lo];
        }
    } else {
        for (Eigen::Index hi = 0; hi < other; ++hi) {
            const Eigen::Index off = map[static_cast<size_t>(hi)] * half;
            const Eigen::Index src = hi * half;
            for (Eigen::Index lo = 0; lo < half; ++lo) result[off + lo] = state[src + lo];
        }
    }
    return result;
}

IsotypicProjector::IsotypicProjector(Partition shape, int n, int d, Side side)
    : shape_(std::move(shape)), n_(n), d_(d), side_(side) {
    if (n < 1 || n > 8)
        throw budget_error("IsotypicProjector: the factorial sum is kept to n <= 8");
    if (shape_.weight() != n)
        throw std::invalid_argument("IsotypicProjector: shape weight differs from site count");
    if (shape_.length() > d)
        throw std::invalid_argument("IsotypicProjector: shape has more rows than the dimension");
    const BigInt f = multiplicity_dim(shape_);
    scale_ = f.convert_to<double>() / factorial(static_cast<unsigned>(n)).convert_to<double>();
    for (const Partition& mu : enumerate_partitions(n, n)) {
        const BigInt chi = sn_character(shape_, CycleType{mu});
        character_table_.emplace_back(mu.parts(), chi.convert_to<double>());
    }
    std::sort(character_table_.begin(), character_table_.end());
}

template <class Accum>
void IsotypicProjector::for_each_term(Accum&& accum) const {
    Eigen::Index half = 1;
    for (int i = 0; i < n_; ++i) half *= d_;
    std::vector<int> sigma(static_cast<size_t>(n_));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Eigen::Index> map(static_cast<size_t>(half));
    std::vector<Eigen::Index> weight(static_cast<size_t>(n_));
    do {
        const std::vector<int> cycles = cycle_type_of(sigma);
        const auto it = std::lower_bound(
            character_table_.begin(), character_table_.end(), cycles,
            [](const auto& entry, const std::vector<int>& key) { return entry.first < key; });
        const double chi = it->second;
        if (chi == 0.0) continue;
        for (int i = 0; i < n_; ++i) {
            Eigen::Index w = 1;
            for (int k = 0; k < sigma[static_cast<size_t>(i)]; ++k) w *= d_;
            weight[static_cast<size_t>(i)] = w;
        }
        for (Eigen::Index idx = 0; idx < half; ++idx) {
            Eigen::Index rest = idx, out = 0;
            for (int i = 0; i < n_; ++i) {
                out += (rest % d_) * weight[static_cast<size_t>(i)];
                rest /= d_;
            }
            map[static_cast<size_t>(idx)] = out;
        }
        accum(map, chi);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

CVec IsotypicProjector::apply_one_side(const CVec& v) const {
    Eigen::Index half = 1;
    for (int i = 0; i < n_; ++i) half *= d_;
    if (v.size() != half)
        throw std::invalid_argument("IsotypicProjector: one-side vector has wrong size");
    CVec out = CVec::Zero(half);
    for_each_term([&](const std::vector<Eigen::Index>& map, double chi) {
        for (Eigen::Index idx = 0; idx < half; ++idx)
            out[map[static_cast<size_t>(idx)]] += chi * v[idx];
    });
    return out * scale_;
}

CVec IsotypicProjector::apply(const CVec& state) const {
    Eigen::Index half = 1;
    for (int i = 0; i < n_; ++i) half *= d_;
    if (state.size() % half != 0)
        throw std::invalid_argument("IsotypicProjector: state size mismatch");
    const Eigen::Index other = state.size() / half;
    CVec out = CVec::Zero(state.size());
    if (side_ == Side::A) {
        for_each_term([&](const std::vector<Eigen::Index>& map, double chi) {
            for (Eigen::Index hi = 0; hi < other; ++hi) {
                const Eigen::Index off = hi * half;
                for (Eigen::Index lo = 0; lo < half; ++lo)
                    out[off + map[static_cast<size_t>(lo)]] += chi * state[off + lo];
            }
        });
    } else {
        for_each_term([&](const std::vector<Eigen::Index>& map, double chi) {
            for (Eigen::Index hi = 0; hi < other; ++hi) {
                const Eigen::Index off = map[static_cast<size_t>(hi)] * half;
                const Eigen::Index src = hi * half;
                for (Eigen::Index lo = 0; lo < half; ++lo) out[off + lo] += chi * state[src + lo];
            }
        });
    }
    return out * scale_;
}

CMat IsotypicProjector::one_side_matrix() const {
    Eigen::Index half = 1;
    for (int i = 0; i < n_; ++i) half *= d_;
    CMat out = CMat::Zero(half, half);
    for_each_term([&](const std::vector<Eigen::Index>& map, double chi) {
        for (Eigen::Index idx = 0; idx < half; ++idx)
            out(map[static_cast<size_t>(idx)], idx) += chi;
    });
    return out * scale_;
}

double outcome_probability_oracle(const PureBipartiteState& phi, int n, const Partition& shape) {
    const CVec state = build_tensor_state(phi, n);
    const IsotypicProjector proj(shape, n, phi.d(), Side::A);
    return proj.apply(state).squaredNorm();
}

double cross_block_residual(const PureBipartiteState& phi, int n, const Partition& lambda,
                            const Partition& mu) {
    if (lambda == mu) {
        const double a = outcome_probability_oracle(phi, n, lambda);
        return std::sqrt(std::max(0.0, a));
    }
    const CVec state = build_tensor_state(phi, n);
    const IsotypicProjector pa(lambda, n, phi.d(), Side::A);
    const IsotypicProjector pb(mu, n, phi.d(), Side::B);
    return pb.apply(pa.apply(state)).norm();
}

CVec post_measurement_state(const PureBipartiteState& phi, int n, const Partition& shape) {
    const CVec state = build_tensor_state(phi, n);
    const IsotypicProjector pa(shape, n, phi.d(), Side::A);
    const IsotypicProjector pb(shape, n, phi.d(), Side::B);
    CVec projected = pb.apply(pa.apply(state));
    const double a = projected.squaredNorm();
    if (a < 1e-12)
        throw std::domain_error("post_measurement_state: outcome probability is negligible");
    return projected / std::sqrt(a);
}

DistortionDiagnostics distortion_diagnostics(const PureBipartiteState& phi, int n,
                                             const Partition& shape, double grouping_tol) {
    const CVec post = post_measurement_state(phi, n, shape);
    std::vector<double> eigs = schmidt_eigenvalues(post, n, phi.d());
    // Projection noise sits many orders below genuine block eigenvalues.
    std::erase_if(eigs, [](double v) { return v < 1e-12; });

    DistortionDiagnostics out;
    const BigInt f = multiplicity_dim(shape);
    const long fl = f.convert_to<long>();
    out.v_part_entropy_bits = log2_multiplicity_dim(shape);
    out.multiplicity_ok = true;
    size_t start = 0;
    for (size_t i = 1; i <= eigs.size(); ++i) {
        if (i == eigs.size() || eigs[i - 1] - eigs[i] > grouping_tol) {
            const int count = static_cast<int>(i - start);
            double mean = 0.0;
            for (size_t k = start; k < i; ++k) mean += eigs[k];
            mean /= count;
            out.groups.emplace_back(mean, count);
            out.max_group_spread = std::max(out.max_group_spread, eigs[start] - eigs[i - 1]);
            if (count % fl != 0) out.multiplicity_ok = false;
            start = i;
        }
    }
    out.entropy_bits = shannon_entropy(std::span<const double>(eigs));
    return out;
}

CMat haar_random_unitary(int d, std::mt19937_64& rng) {
    if (d < 1) throw std::invalid_argument("haar_random_unitary: need d >= 1");
    auto gaussian_pair = [&rng](double& a, double& b) {
        const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform_01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = r * std::cos(2.0 * std::numbers::pi * u2);
        b = r * std::sin(2.0 * std::numbers::pi * u2);
    };
    CMat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double re, im;
            gaussian_pair(re, im);
            g(i, j) = std::complex<double>(re, im);
        }
    const Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const std::complex<double> rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : 1.0;
    }
    return q;
}

TwirlResult twirl_monte_carlo(const PureBipartiteState& phi, int n, int samples,
                              std::mt19937_64& rng, int error_blocks) {
    if (samples < 1) throw std::invalid_argument("twirl_monte_carlo: need samples >= 1");
    if (error_blocks < 1 || error_blocks > samples)
        throw std::invalid_argument("twirl_monte_carlo: bad error block count");
    const int d = phi.d();
    const std::uint64_t dim = pow_u64(d, 2 * n, std::uint64_t{1} << 40);
    if (dim > 256) throw budget_error("twirl_monte_carlo: density matrix side exceeds 256");

    const CVec base = build_tensor_state(phi, n);
    const Eigen::Index m = static_cast<Eigen::Index>(dim);
    std::vector<CMat> sums(static_cast<size_t>(error_blocks), CMat::Zero(m, m));
    std::vector<int> counts(static_cast<size_t>(error_blocks), 0);
    for (int k = 0; k < samples; ++k) {
        const CMat u = haar_random_unitary(d, rng);
        const CMat v = haar_random_unitary(d, rng);
        CVec psi = base;
        for (int site = 0; site < n; ++site) {
            apply_gate(psi, u, site, d);
            apply_gate(psi, v, n + site, d);
        }
        const int block = static_cast<int>(static_cast<long long>(k) * error_blocks / samples);
        sums[static_cast<size_t>(block)].noalias() += psi * psi.adjoint();
        ++counts[static_cast<size_t>(block)];
    }
    TwirlResult out;
    out.samples = samples;
    out.rho = CMat::Zero(m, m);
    for (int b = 0; b < error_blocks; ++b) {
        out.rho += sums[static_cast<size_t>(b)];
        out.block_means.push_back(sums[static_cast<size_t>(b)] / counts[static_cast<size_t>(b)]);
    }
    out.rho /= samples;
    return out;
}

CMat reduced_density_a(const CVec& state, int n, int d) {
    Eigen::Index half = 1;
    for (int i = 0; i < n; ++i) half *= d;
    if (state.size() != half * half)
        throw std::invalid_argument("reduced_density_a: state size mismatch");
    const Eigen::Map<const CMat> v(state.data(), half, half);
    return v * v.adjoint();
}

CMat partial_trace_b(const CMat& rho, int n, int d) {
    Eigen::Index half = 1;
    for (int i = 0; i < n; ++i) half *= d;
    if (rho.rows() != half * half || rho.cols() != half * half)
        throw std::invalid_argument("partial_trace_b: matrix size mismatch");
    CMat out = CMat::Zero(half, half);
    for (Eigen::Index ib = 0; ib < half; ++ib)
        out += rho.block(ib * half, ib * half, half, half);
    return out;
}

std::vector<double> schmidt_eigenvalues(const CVec& state, int n, int d) {
    Eigen::Index half = 1;
    for (int i = 0; i < n; ++i) half *= d;
    if (state.size() != half * half)
        throw std::invalid_argument("schmidt_eigenvalues: state size mismatch");
    const Eigen::Map<const CMat> v(state.data(), half, half);
    const Eigen::JacobiSVD<CMat> svd(v);
    std::vector<double> eigs(static_cast<size_t>(half));
    for (Eigen::Index i = 0; i < half; ++i) {
        const double s = svd.singularValues()[i];
        eigs[static_cast<size_t>(i)] = s * s;
    }
    return eigs;
}

}  // namespace schurweyl
