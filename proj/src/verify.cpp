#include "schurweyl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schurweyl/measure.hpp"
#include "schurweyl/oracle.hpp"
#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"

namespace schurweyl {

namespace {

SchmidtSpectrum random_spectrum(int d, std::mt19937_64& rng) {
    // Exponential spacings give a flat distribution on the simplex.
    std::vector<double> w(static_cast<size_t>(d));
    for (double& v : w) {
        const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
        v = -std::log(u);
    }
    return SchmidtSpectrum::from_unnormalized(std::move(w));
}

CVec random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
    CVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        v[i] = std::complex<double>(re, im);
    }
    return v / v.norm();
}

CheckResult make_result(std::string name, double residual, double tol) {
    return CheckResult{std::move(name), residual, tol, residual <= tol};
}

struct JackknifeStat {
    double estimate = 0.0;  // bias-corrected
    double se = 0.0;
};

JackknifeStat bias_corrected(double full, const std::vector<double>& leave_one_out) {
    const double b = static_cast<double>(leave_one_out.size());
    double mean = 0.0;
    for (double v : leave_one_out) mean += v;
    mean /= b;
    double ss = 0.0;
    for (double v : leave_one_out) ss += (v - mean) * (v - mean);
    return {b * full - (b - 1.0) * mean, std::sqrt(ss * (b - 1.0) / b)};
}

void check_oracle_sizes(const VerifyOptions& opt) {
    if (opt.n < 1 || opt.d < 2)
        throw std::invalid_argument("verify: oracle suites need n >= 1 and d >= 2");
    const double work = std::lgamma(opt.n + 1.0) + 2.0 * opt.n * std::log(opt.d);
    if (work > std::log(2e8))
        throw std::invalid_argument("verify: n! * d^(2n) too large for the oracle suites");
}

}  // namespace

std::vector<CheckResult> verify_blocks(const VerifyOptions& opt) {
    check_oracle_sizes(opt);
    std::mt19937_64 rng(opt.seed);
    const auto shapes = enumerate_partitions(opt.n, opt.d);

    Eigen::Index side = 1;
    for (int i = 0; i < opt.n; ++i) side *= opt.d;

    std::vector<IsotypicProjector> projectors;
    for (const Partition& lam : shapes) projectors.emplace_back(lam, opt.n, opt.d, Side::A);

    double cross = 0.0, completeness = 0.0, orthogonality = 0.0, idempotence = 0.0;
    for (int s = 0; s < opt.states; ++s) {
        const PureBipartiteState phi(random_spectrum(opt.d, rng),
                                     haar_random_unitary(opt.d, rng),
                                     haar_random_unitary(opt.d, rng));
        for (const Partition& lam : shapes)
            for (const Partition& mu : shapes) {
                if (lam == mu) continue;
                cross = std::max(cross, cross_block_residual(phi, opt.n, lam, mu));
            }

        const CVec v = random_unit_vector(side, rng);
        CVec sum = CVec::Zero(side);
        std::vector<CVec> images;
        for (const auto& proj : projectors) {
            images.push_back(proj.apply_one_side(v));
            sum += images.back();
        }
        completeness = std::max(completeness, (sum - v).norm());
        for (size_t i = 0; i < projectors.size(); ++i)
            for (size_t j = 0; j < projectors.size(); ++j) {
                const CVec w = projectors[i].apply_one_side(images[j]);
                if (i == j)
                    idempotence = std::max(idempotence, (w - images[j]).norm());
                else
                    orthogonality = std::max(orthogonality, w.norm());
            }
    }
    return {make_result("cross_block_residual", cross, 1e-10),
            make_result("projector_completeness", completeness, 1e-10),
            make_result("projector_orthogonality", orthogonality, 1e-10),
            make_result("projector_idempotence", idempotence, 1e-10)};
}

std::vector<CheckResult> verify_law(const VerifyOptions& opt) {
    check_oracle_sizes(opt);
    std::mt19937_64 rng(opt.seed);
    const auto shapes = enumerate_partitions(opt.n, opt.d);

    double law = 0.0, invariance = 0.0;
    for (int s = 0; s < opt.states; ++s) {
        const SchmidtSpectrum p = random_spectrum(opt.d, rng);
        const PureBipartiteState rotated(p, haar_random_unitary(opt.d, rng),
                                         haar_random_unitary(opt.d, rng));
        const PureBipartiteState plain(p);
        const SchurWeylDistribution dist = distribution(opt.n, p);
        for (const Partition& lam : shapes) {
            const double analytic = dist.find(lam)->prob;
            const double a_rotated = outcome_probability_oracle(rotated, opt.n, lam);
            const double a_plain = outcome_probability_oracle(plain, opt.n, lam);
            law = std::max(law, std::abs(analytic - a_rotated));
            invariance = std::max(invariance, std::abs(a_rotated - a_plain));
        }
    }
    return {make_result("law_equivalence", law, 1e-9),
            make_result("basis_invariance", invariance, 1e-9)};
}

std::vector<CheckResult> verify_distortion(const VerifyOptions& opt) {
    check_oracle_sizes(opt);
    std::mt19937_64 rng(opt.seed);
    const auto shapes = enumerate_partitions(opt.n, opt.d);

    int multiplicity_failures = 0;
    double spread = 0.0, entropy_split = 0.0, worst_infidelity = 0.0;
    for (int s = 0; s < opt.states; ++s) {
        const SchmidtSpectrum p = random_spectrum(opt.d, rng);
        const PureBipartiteState phi(p, haar_random_unitary(opt.d, rng),
                                     haar_random_unitary(opt.d, rng));
        const SchurWeylDistribution dist = distribution(opt.n, p);
        for (const Partition& lam : shapes) {
            if (dist.find(lam)->prob <= 1e-6) continue;
            const DistortionDiagnostics diag = distortion_diagnostics(phi, opt.n, lam);
            if (!diag.multiplicity_ok) ++multiplicity_failures;
            spread = std::max(spread, diag.max_group_spread);

            // The spectrum factors into a maximally entangled share of
            // log2(dim V) bits plus the residual carried by the group weights.
            const double f = std::exp2(diag.v_part_entropy_bits);
            double rest = 0.0;
            for (const auto& [value, count] : diag.groups) {
                const double q = value * f;
                if (q > 0.0) rest -= (count / f) * q * std::log2(q);
            }
            entropy_split = std::max(
                entropy_split,
                std::abs(diag.entropy_bits - (diag.v_part_entropy_bits + rest)));

            // Overlap with the idealized state whose groups are exactly flat.
            const CVec post = post_measurement_state(phi, opt.n, lam);
            std::vector<double> eigs = schmidt_eigenvalues(post, opt.n, opt.d);
            std::erase_if(eigs, [](double v) { return v < 1e-12; });
            std::vector<double> flat;
            for (const auto& [value, count] : diag.groups)
                flat.insert(flat.end(), static_cast<size_t>(count), value);
            double root = 0.0;
            const size_t k = std::min(eigs.size(), flat.size());
            for (size_t i = 0; i < k; ++i) root += std::sqrt(eigs[i] * flat[i]);
            worst_infidelity = std::max(worst_infidelity, std::abs(1.0 - root * root));
        }
    }
    return {make_result("distortion_multiplicity",
                        static_cast<double>(multiplicity_failures), 0.0),
            make_result("distortion_group_spread", spread, 1e-9),
            make_result("distortion_entropy_split", entropy_split, 1e-9),
            make_result("distortion_worst_infidelity", worst_infidelity, 1e-9)};
}

std::vector<CheckResult> verify_bounds(const VerifyOptions& opt) {
    if (opt.n < 1 || opt.d < 1) throw std::invalid_argument("verify: bounds need n, d >= 1");
    std::uint64_t total = 0;
    for (int n = 1; n <= opt.n && total < 500'000'000ULL; ++n)
        total += partition_count(n, opt.d, 500'000'000ULL);
    if (total >= 500'000'000ULL)
        throw std::invalid_argument("verify: bounds sweep too large; reduce n or d");

    double worst_margin = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= opt.n; ++n) {
        const double bound = dim_bound_value(n, opt.d);
        const double log2n = detail::log2_int(n);
        for_each_partition_span(n, opt.d, [&](std::span<const int> parts) {
            double plogp = 0.0;
            for (int v : parts)
                if (v > 0) plogp += v * detail::log2_int(v);
            const double profile_entropy = log2n - plogp / n;
            const double lhs = std::abs(log2_multiplicity_dim(parts) / n - profile_entropy);
            worst_margin = std::max(worst_margin, lhs - bound);
            return true;
        });
    }
    return {make_result("dim_bound_margin", worst_margin, 0.0)};
}

std::vector<CheckResult> verify_twirl(const VerifyOptions& opt) {
    if (opt.d < 2 || opt.d > 3) throw std::invalid_argument("verify: twirl needs d in {2, 3}");
    const int n = std::min(opt.n, opt.d == 2 ? 4 : 2);
    if (n < 1) throw std::invalid_argument("verify: twirl needs n >= 1");
    const int samples = std::max(100, opt.twirl_samples / 10 * 10);

    std::mt19937_64 rng(opt.seed);
    const SchmidtSpectrum p = SchmidtSpectrum::uniform(opt.d);
    const PureBipartiteState phi(p);
    const SchurWeylDistribution dist = distribution(n, p);
    const TwirlResult twirl = twirl_monte_carlo(phi, n, samples, rng);
    const CVec plain_state = build_tensor_state(phi, n);
    const int b = static_cast<int>(twirl.block_means.size());

    double weight_resid = 0.0, untwirled_resid = 0.0, marginal_z = 0.0, purity_z = 0.0;
    for (const auto& entry : dist.entries()) {
        const IsotypicProjector pa(entry.shape, n, opt.d, Side::A);
        const IsotypicProjector pb(entry.shape, n, opt.d, Side::B);
        auto project = [&](const CMat& rho) {
            CMat left(rho.rows(), rho.cols());
            for (Eigen::Index j = 0; j < rho.cols(); ++j)
                left.col(j) = pb.apply(pa.apply(rho.col(j)));
            CMat right(left.cols(), left.rows());
            const CMat adj = left.adjoint();
            for (Eigen::Index j = 0; j < adj.cols(); ++j)
                right.col(j) = pb.apply(pa.apply(adj.col(j)));
            return CMat(right.adjoint());
        };

        // Project the disjoint sub-averages once; everything downstream is
        // linear combination plus cheap matrix algebra.
        std::vector<CMat> pm;
        pm.reserve(static_cast<size_t>(b));
        for (const CMat& m : twirl.block_means) pm.push_back(project(m));
        CMat blk_full = CMat::Zero(pm[0].rows(), pm[0].cols());
        for (const CMat& m : pm) blk_full += m;
        blk_full /= static_cast<double>(b);
        std::vector<CMat> blk_loo;
        blk_loo.reserve(static_cast<size_t>(b));
        for (int i = 0; i < b; ++i)
            blk_loo.push_back(
                (static_cast<double>(b) * blk_full - pm[static_cast<size_t>(i)]) /
                static_cast<double>(b - 1));

        // Per-sample block weights are invariant under the twirl unitaries,
        // so these two comparisons are exact up to roundoff.
        const double weight = blk_full.trace().real();
        weight_resid = std::max(weight_resid, std::abs(weight - entry.prob));
        const double untwirled = pb.apply(pa.apply(plain_state)).squaredNorm();
        untwirled_resid = std::max(untwirled_resid, std::abs(weight - untwirled));

        const double dim_u = weyl_dim(entry.shape, opt.d).convert_to<double>();
        const double dim_v = entry.output_dim.convert_to<double>();

        auto marginal_of = [&](const CMat& blk) {
            return CMat(partial_trace_b(blk, n, opt.d) / blk.trace().real());
        };
        const CMat target = pa.one_side_matrix() / (dim_u * dim_v);
        const CMat m_full = marginal_of(blk_full);
        std::vector<CMat> m_loo;
        m_loo.reserve(static_cast<size_t>(b));
        for (const CMat& blk : blk_loo) m_loo.push_back(marginal_of(blk));
        std::vector<double> loo(static_cast<size_t>(b));
        for (Eigen::Index r = 0; r < m_full.rows(); ++r)
            for (Eigen::Index c = 0; c < m_full.cols(); ++c)
                for (int part = 0; part < 2; ++part) {
                    auto comp = [part](std::complex<double> z) {
                        return part == 0 ? z.real() : z.imag();
                    };
                    for (int i = 0; i < b; ++i)
                        loo[static_cast<size_t>(i)] =
                            comp(m_loo[static_cast<size_t>(i)](r, c));
                    const JackknifeStat st = bias_corrected(comp(m_full(r, c)), loo);
                    const double dev = std::abs(st.estimate - comp(target(r, c)));
                    marginal_z = std::max(marginal_z, dev / std::max(st.se, 1e-12));
                }

        auto purity_of = [](const CMat& blk) {
            const double w = blk.trace().real();
            return (blk * blk).trace().real() / (w * w);
        };
        for (int i = 0; i < b; ++i)
            loo[static_cast<size_t>(i)] = purity_of(blk_loo[static_cast<size_t>(i)]);
        const JackknifeStat st = bias_corrected(purity_of(blk_full), loo);
        purity_z = std::max(purity_z, std::abs(st.estimate - 1.0 / (dim_u * dim_u)) /
                                          std::max(st.se, 1e-12));
    }
    return {make_result("twirl_block_weights", weight_resid, 1e-9),
            make_result("twirl_untwirled_agreement", untwirled_resid, 1e-9),
            make_result("twirl_block_marginal", marginal_z, 5.0),
            make_result("twirl_block_purity", purity_z, 5.0)};
}

std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opt) {
    if (suite == "blocks") return verify_blocks(opt);
    if (suite == "law") return verify_law(opt);
    if (suite == "distortion") return verify_distortion(opt);
    if (suite == "bounds") return verify_bounds(opt);
    if (suite == "twirl") return verify_twirl(opt);
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const char* name : {"blocks", "law", "distortion", "bounds", "twirl"}) {
            auto part = verify_suite(name, opt);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace schurweyl
