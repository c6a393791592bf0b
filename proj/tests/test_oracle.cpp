#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "schurweyl/measure.hpp"
#include "schurweyl/oracle.hpp"
#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"

using namespace schurweyl;

namespace {

PureBipartiteState rotated_state(SchmidtSpectrum p, std::mt19937_64& rng) {
    const int d = p.d();
    return PureBipartiteState(std::move(p), haar_random_unitary(d, rng),
                              haar_random_unitary(d, rng));
}

}  // namespace

TEST_CASE("tensor powers are unit vectors with the advertised layout") {
    const PureBipartiteState phi(SchmidtSpectrum(std::vector<double>{0.9, 0.1}));
    const CVec one = build_tensor_state(phi, 1);
    REQUIRE(one.size() == 4);
    // Schmidt entries sit on equal A and B digits, largest first.
    CHECK(std::abs(one(0)) == doctest::Approx(std::sqrt(0.9)));
    CHECK(std::abs(one(3)) == doctest::Approx(std::sqrt(0.1)));
    CHECK(std::abs(one(1)) == 0.0);
    CHECK(std::abs(one(2)) == 0.0);

    const CVec three = build_tensor_state(phi, 3);
    REQUIRE(three.size() == 64);
    CHECK(three.norm() == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(build_tensor_state(phi, 20, 1000), budget_error);
}

TEST_CASE("amplitude matrix is diagonal in the Schmidt bases") {
    const PureBipartiteState phi(SchmidtSpectrum(std::vector<double>{0.75, 0.25}));
    const CMat m = phi.amplitude_matrix();
    CHECK(std::abs(m(0, 0) - std::sqrt(0.75)) < 1e-14);
    CHECK(std::abs(m(1, 1) - std::sqrt(0.25)) < 1e-14);
    CHECK(std::abs(m(0, 1)) < 1e-14);
    CHECK(std::abs(m(1, 0)) < 1e-14);

    std::mt19937_64 rng(5);
    const auto rot = rotated_state(SchmidtSpectrum(std::vector<double>{0.75, 0.25}), rng);
    const CMat mr = rot.amplitude_matrix();
    // Singular values survive the local rotations.
    Eigen::JacobiSVD<CMat> svd(mr);
    CHECK(svd.singularValues()(0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(svd.singularValues()(1) == doctest::Approx(std::sqrt(0.25)).epsilon(1e-12));
}

TEST_CASE("site permutations compose and preserve the norm") {
    std::mt19937_64 rng(11);
    const auto phi = rotated_state(SchmidtSpectrum(std::vector<double>{0.6, 0.4}), rng);
    const int n = 3, d = 2;
    const CVec state = build_tensor_state(phi, n);

    const std::vector<int> id{0, 1, 2};
    const CVec same = apply_site_permutation(state, id, n, d, Side::A);
    CHECK((same - state).norm() < 1e-14);

    const std::vector<int> cycle{1, 2, 0};  // sigma(i)
    const std::vector<int> cycle2{2, 0, 1};
    CVec once = apply_site_permutation(state, cycle, n, d, Side::B);
    CHECK(once.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CVec twice = apply_site_permutation(once, cycle, n, d, Side::B);
    const CVec direct = apply_site_permutation(state, cycle2, n, d, Side::B);
    CHECK((twice - direct).norm() < 1e-12);

    // A tensor power is only symmetric when both sides move together.
    const CVec both =
        apply_site_permutation(apply_site_permutation(state, cycle, n, d, Side::A), cycle,
                               n, d, Side::B);
    CHECK((both - state).norm() < 1e-12);
}

TEST_CASE("two site projectors are the symmetry split") {
    for (int d : {2, 3}) {
        const int dim = d * d;
        CMat swap = CMat::Zero(dim, dim);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) swap(a + d * b, b + d * a) = 1.0;
        const CMat sym = (CMat::Identity(dim, dim) + swap) / 2.0;
        const CMat anti = (CMat::Identity(dim, dim) - swap) / 2.0;

        const CMat psym = IsotypicProjector(Partition{2}, 2, d, Side::A).one_side_matrix();
        const CMat panti =
            IsotypicProjector(Partition{1, 1}, 2, d, Side::A).one_side_matrix();
        CHECK((psym - sym).norm() < 1e-12);
        CHECK((panti - anti).norm() < 1e-12);
    }
}

TEST_CASE("projectors are idempotent orthogonal and complete") {
    const int n = 3, d = 2;
    std::mt19937_64 rng(17);
    CVec v = CVec::Random(8);
    v.normalize();

    std::vector<CMat> blocks;
    for (const Partition& lam : enumerate_partitions(n, d))
        blocks.push_back(IsotypicProjector(lam, n, d, Side::A).one_side_matrix());

    CMat total = CMat::Zero(8, 8);
    for (const CMat& p : blocks) {
        CHECK((p * p - p).norm() < 1e-12);
        CHECK((p - p.adjoint()).norm() < 1e-12);
        total += p;
    }
    CHECK((total - CMat::Identity(8, 8)).norm() < 1e-12);
    CHECK((blocks[0] * blocks[1]).norm() < 1e-12);

    const IsotypicProjector p21(Partition{2, 1}, n, d, Side::A);
    CHECK((p21.apply_one_side(v) - blocks[1] * v).norm() < 1e-12);
}

TEST_CASE("state level probabilities match the analytic law") {
    std::mt19937_64 rng(29);
    const auto bell2 = PureBipartiteState(SchmidtSpectrum::uniform(2));
    CHECK(outcome_probability_oracle(bell2, 2, Partition{2}) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(outcome_probability_oracle(bell2, 2, Partition{1, 1}) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(outcome_probability_oracle(bell2, 3, Partition{2, 1}) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const auto rot = rotated_state(SchmidtSpectrum(std::vector<double>{0.7, 0.2, 0.1}), rng);
    const auto dist = distribution(3, rot.schmidt());
    for (const auto& row : dist.entries())
        CHECK(outcome_probability_oracle(rot, 3, row.shape) ==
              doctest::Approx(row.prob).epsilon(1e-10));
}

TEST_CASE("opposite side blocks only pair up on the same shape") {
    std::mt19937_64 rng(41);
    const auto phi = rotated_state(SchmidtSpectrum(std::vector<double>{0.5, 0.3, 0.2}), rng);
    const auto shapes = enumerate_partitions(3, 3);
    for (const Partition& lam : shapes)
        for (const Partition& mu : shapes) {
            if (lam == mu) continue;
            CHECK(cross_block_residual(phi, 3, lam, mu) < 1e-12);
        }
}

TEST_CASE("post measurement state carries an exact maximally entangled factor") {
    const auto bell = PureBipartiteState(SchmidtSpectrum::uniform(2));
    const CVec after = post_measurement_state(bell, 3, Partition{2, 1});
    CHECK(after.norm() == doctest::Approx(1.0).epsilon(1e-13));

    const auto eigs = schmidt_eigenvalues(after, 3, 2);
    // Two dimensional multiplicity space, flat spectrum on a rank 4 support.
    double h = 0.0;
    for (double e : eigs)
        if (e > 1e-12) h -= e * std::log2(e);
    CHECK(h == doctest::Approx(2.0).epsilon(1e-10));

    const auto diag = distortion_diagnostics(bell, 3, Partition{2, 1});
    CHECK(diag.multiplicity_ok);
    CHECK(diag.v_part_entropy_bits == doctest::Approx(1.0));
    CHECK(diag.entropy_bits == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(diag.max_group_spread < 1e-10);
    for (const auto& [mean, count] : diag.groups) CHECK(count % 2 == 0);

    CHECK_THROWS_AS(post_measurement_state(
                        PureBipartiteState(SchmidtSpectrum(std::vector<double>{1.0, 0.0})),
                        2, Partition{1, 1}),
                    std::domain_error);
}

TEST_CASE("skewed states keep the same certificate") {
    std::mt19937_64 rng(53);
    const auto phi = rotated_state(SchmidtSpectrum(std::vector<double>{0.8, 0.15, 0.05}), rng);
    const auto diag = distortion_diagnostics(phi, 3, Partition{2, 1});
    CHECK(diag.multiplicity_ok);
    CHECK(diag.v_part_entropy_bits == doctest::Approx(1.0));
    CHECK(diag.max_group_spread < 1e-9);
    int total = 0;
    for (const auto& [mean, count] : diag.groups) total += count;
    CHECK(total % 2 == 0);
}

TEST_CASE("haar samples are unitary and cover the group") {
    std::mt19937_64 rng(61);
    CMat sum = CMat::Zero(3, 3);
    for (int i = 0; i < 200; ++i) {
        const CMat u = haar_random_unitary(3, rng);
        CHECK((u * u.adjoint() - CMat::Identity(3, 3)).norm() < 1e-12);
        sum += u;
    }
    // Mean of Haar samples drifts to zero.
    CHECK((sum / 200.0).norm() < 0.25);
}

TEST_CASE("single copy twirl flattens to the maximally mixed state") {
    std::mt19937_64 rng(71);
    const auto phi = PureBipartiteState(SchmidtSpectrum(std::vector<double>{0.85, 0.15}));
    const auto res = twirl_monte_carlo(phi, 1, 4000, rng);
    CHECK(res.samples == 4000);
    REQUIRE(res.block_means.size() == 10);
    CHECK(std::abs(res.rho.trace().real() - 1.0) < 1e-12);
    const CMat target = CMat::Identity(4, 4) / 4.0;
    CHECK((res.rho - target).norm() < 0.05);

    CMat mean = CMat::Zero(4, 4);
    for (const CMat& b : res.block_means) mean += b;
    CHECK((mean / 10.0 - res.rho).norm() < 1e-12);
}

TEST_CASE("reduced density agrees with the generic partial trace") {
    std::mt19937_64 rng(83);
    const auto phi = rotated_state(SchmidtSpectrum(std::vector<double>{0.6, 0.4}), rng);
    const CVec state = build_tensor_state(phi, 2);
    const CMat direct = reduced_density_a(state, 2, 2);
    const CMat via = partial_trace_b(state * state.adjoint(), 2, 2);
    CHECK((direct - via).norm() < 1e-13);
    CHECK(std::abs(direct.trace().real() - 1.0) < 1e-13);
}

TEST_CASE("schmidt eigenvalues of known states") {
    const auto product = PureBipartiteState(SchmidtSpectrum(std::vector<double>{1.0, 0.0}));
    const auto eigs = schmidt_eigenvalues(build_tensor_state(product, 2), 2, 2);
    REQUIRE(eigs.size() == 4);
    CHECK(eigs[0] == doctest::Approx(1.0));
    CHECK(eigs[1] < 1e-14);

    const auto bell = PureBipartiteState(SchmidtSpectrum::uniform(2));
    const auto eb = schmidt_eigenvalues(build_tensor_state(bell, 1), 1, 2);
    CHECK(eb[0] == doctest::Approx(0.5));
    CHECK(eb[1] == doctest::Approx(0.5));
}
