#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "schurweyl/partition.hpp"
#include "schurweyl/schur.hpp"
#include "schurweyl/spectrum.hpp"
#include "support/oracles.hpp"

using namespace schurweyl;

namespace {

SchmidtSpectrum random_spectrum(int d, std::mt19937_64& rng) {
    std::vector<double> w(static_cast<size_t>(d));
    for (double& v : w) v = 1e-3 + static_cast<double>(rng() % 100000);
    return SchmidtSpectrum::from_unnormalized(std::move(w));
}

}  // namespace

TEST_CASE("complete homogeneous evaluations") {
    const auto bell = SchmidtSpectrum::uniform(2);
    CHECK(complete_homogeneous(0, bell) == doctest::Approx(1.0));
    CHECK(complete_homogeneous(2, bell) == doctest::Approx(0.75));
    const SchmidtSpectrum point(std::vector<double>{1.0});
    CHECK(complete_homogeneous(5, point) == doctest::Approx(1.0));

    const auto half = RationalSpectrum::from_fractions({{1, 2}, {1, 2}});
    CHECK(complete_homogeneous_exact(2, half) == BigRational(3, 4));
    CHECK(complete_homogeneous_exact(0, half) == BigRational(1));
    CHECK_THROWS_AS(complete_homogeneous(-1, bell), std::invalid_argument);
}

TEST_CASE("small schur values frozen by hand") {
    const SchmidtSpectrum p(std::vector<double>{0.75, 0.25});
    CHECK(schur_polynomial(Partition{1, 1}, p) == doctest::Approx(0.1875).epsilon(1e-13));
    CHECK(schur_polynomial(Partition{2}, p) == doctest::Approx(0.8125).epsilon(1e-13));
    const auto bell = SchmidtSpectrum::uniform(2);
    CHECK(schur_polynomial(Partition{2, 1}, bell) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(schur_polynomial(Partition{}, bell) == doctest::Approx(1.0));
}

TEST_CASE("schur values match tableau sums on random spectra") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        const int n = 1 + static_cast<int>(rng() % 8);
        const SchmidtSpectrum p = random_spectrum(d, rng);
        for (const Partition& lam : enumerate_partitions(n, d)) {
            const double brute = testsupport::brute_schur(lam.parts(), p.probs());
            CHECK(schur_polynomial(lam, p) == doctest::Approx(brute).epsilon(1e-11));
        }
    }
}

TEST_CASE("flat spectra reduce to a dimension ratio") {
    for (int d = 2; d <= 4; ++d) {
        const auto p = SchmidtSpectrum::uniform(d);
        SchurEvaluator eval(p, 20);
        for (int n : {1, 3, 7, 12, 20})
            for (const Partition& lam : enumerate_partitions(n, d)) {
                const double expect = log2_weyl_dim(lam, d) - n * std::log2(double(d));
                CHECK(eval.log2(lam) == doctest::Approx(expect).epsilon(1e-12));
            }
    }
}

TEST_CASE("floating ladder agrees with exact rationals") {
    const auto exact_p = RationalSpectrum::from_fractions({{1, 2}, {1, 3}, {1, 6}});
    const SchmidtSpectrum p = exact_p.to_double();
    SchurEvaluator eval(p, 12);
    for (int n : {1, 4, 8, 12})
        for (const Partition& lam : enumerate_partitions(n, 3)) {
            const BigRational exact = schur_polynomial_exact(lam, exact_p);
            const double expect =
                log2_big(numerator(exact)) - log2_big(denominator(exact));
            CHECK(eval.log2(lam) == doctest::Approx(expect).epsilon(1e-10));
        }
}

TEST_CASE("tied spectra take the h-matrix route and stay accurate") {
    const auto exact_p = RationalSpectrum::from_fractions({{2, 5}, {2, 5}, {1, 5}});
    const SchmidtSpectrum p = exact_p.to_double();
    SchurEvaluator eval(p, 10);
    for (int n : {2, 5, 10})
        for (const Partition& lam : enumerate_partitions(n, 3)) {
            const BigRational exact = schur_polynomial_exact(lam, exact_p);
            const double expect =
                log2_big(numerator(exact)) - log2_big(denominator(exact));
            CHECK(eval.log2(lam) == doctest::Approx(expect).epsilon(1e-10));
        }
    CHECK(eval.stats().closed_form + eval.stats().level_double == 0);
}

TEST_CASE("nearly tied spectra escalate without losing accuracy") {
    const SchmidtSpectrum p(std::vector<double>{0.4 + 5e-14, 0.4 - 5e-14, 0.2});
    for (int n : {3, 6})
        for (const Partition& lam : enumerate_partitions(n, 3)) {
            const double brute = testsupport::brute_schur(lam.parts(), p.probs());
            CHECK(schur_polynomial(lam, p) == doctest::Approx(brute).epsilon(1e-9));
        }
}

TEST_CASE("two point support uses the geometric closed form") {
    const auto exact_p = RationalSpectrum::from_fractions({{3, 5}, {2, 5}});
    const SchmidtSpectrum p = exact_p.to_double();
    SchurEvaluator eval(p, 30);
    for (const Partition& lam :
         {Partition{7, 3}, Partition{10}, Partition{15, 15}, Partition{29, 1}}) {
        const BigRational exact = schur_polynomial_exact(lam, exact_p);
        const double expect = log2_big(numerator(exact)) - log2_big(denominator(exact));
        CHECK(eval.log2(lam) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(eval.stats().closed_form == 4);
}

TEST_CASE("vanishing and invalid shapes") {
    const SchmidtSpectrum p(std::vector<double>{1.0, 0.0});
    CHECK(schur_polynomial(Partition{1, 1}, p) == 0.0);
    CHECK(schur_polynomial_log2(Partition{1, 1}, p) ==
          -std::numeric_limits<double>::infinity());
    CHECK(schur_polynomial(Partition{3}, p) == doctest::Approx(1.0));

    SchurEvaluator eval(SchmidtSpectrum::uniform(2), 5);
    CHECK_THROWS_AS(eval.log2(Partition{3, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(eval.log2(Partition{6}), std::invalid_argument);

    const auto exact_p = RationalSpectrum::from_fractions({{1, 1}, {0, 1}});
    CHECK(schur_polynomial_exact(Partition{1, 1}, exact_p) == BigRational(0));
}

TEST_CASE("evaluation is symmetric in the spectrum order") {
    const std::vector<double> base{0.5, 0.3, 0.2};
    const std::vector<double> perms[] = {
        {0.5, 0.3, 0.2}, {0.3, 0.5, 0.2}, {0.2, 0.3, 0.5}, {0.3, 0.2, 0.5}};
    for (const Partition& lam : {Partition{4, 2}, Partition{3, 2, 1}, Partition{5}}) {
        const double reference = detail::schur_polynomial_log2_unsorted(lam, base);
        for (const auto& q : perms)
            CHECK(detail::schur_polynomial_log2_unsorted(lam, q) ==
                  doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("large two row sweep stays normalized") {
    const auto bell = SchmidtSpectrum::uniform(2);
    const int n = 2000;
    SchurEvaluator eval(bell, n);
    double total = 0.0;
    for (int b = n / 2; b >= 0; --b) {
        const Partition lam{n - b, b};
        total += std::exp2(log2_multiplicity_dim(lam) + eval.log2(lam));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}
