#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "schurweyl/measure.hpp"
#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"

namespace schurweyl {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

enum class Side { A, B };

// Bipartite pure state in Schmidt form with optional local bases. The vector
// of one copy lives on C^d (x) C^d with index a + d*b, the A factor in the
// low digit.
class PureBipartiteState {
  public:
    explicit PureBipartiteState(SchmidtSpectrum schmidt);
    PureBipartiteState(SchmidtSpectrum schmidt, CMat basis_a, CMat basis_b);

    int d() const { return schmidt_.d(); }
    const SchmidtSpectrum& schmidt() const { return schmidt_; }
    const CMat& basis_a() const { return basis_a_; }
    const CMat& basis_b() const { return basis_b_; }

    // d x d amplitude matrix M(a, b) of one copy; vec'ing it column-major
    // gives the single-copy state.
    CMat amplitude_matrix() const;

  private:
    SchmidtSpectrum schmidt_;
    CMat basis_a_, basis_b_;
};

// |phi>^(x)n as a dense vector of d^{2n} amplitudes. Sites are little-endian
// within each side; the n A digits occupy the low positions, so the global
// index is iA + d^n * iB.
CVec build_tensor_state(const PureBipartiteState& phi, int n,
                        std::uint64_t amplitude_budget = std::uint64_t{1} << 26);

// Site permutation on one side: site sigma(i) of the image carries what site
// i carried, matching the reordering action on kets.
CVec apply_site_permutation(const CVec& state, std::span<const int> sigma, int n, int d,
                            Side side);

// Projector onto the isotypic block of a shape, acting on one side's n sites.
// Built from the character sum over all n! permutations, applied matrix-free.
class IsotypicProjector {
  public:
    IsotypicProjector(Partition shape, int n, int d, Side side);

    // Action on the joint d^{2n} state.
    CVec apply(const CVec& state) const;
    // Action on a one-side d^n vector (side is irrelevant here).
    CVec apply_one_side(const CVec& v) const;
    // Dense d^n x d^n matrix; intended for small-n checks.
    CMat one_side_matrix() const;

    const Partition& shape() const { return shape_; }
    int n() const { return n_; }
    int d() const { return d_; }
    Side side() const { return side_; }

  private:
    template <class Accum>
    void for_each_term(Accum&& accum) const;  // (sigma digits map, weight)

    Partition shape_;
    int n_, d_;
    Side side_;
    double scale_;                                        // dim V / n!
    std::vector<std::pair<std::vector<int>, double>> character_table_;  // cycle type -> value
};

// <Phi| P_shape^A (x) I |Phi>: the outcome probability computed from the
// state itself rather than from the analytic law.
double outcome_probability_oracle(const PureBipartiteState& phi, int n, const Partition& shape);

// Norm of (P_lambda^A (x) P_mu^B)|Phi> for different shapes; zero because
// tensor-power states are block diagonal.
double cross_block_residual(const PureBipartiteState& phi, int n, const Partition& lambda,
                            const Partition& mu);

// Normalized (P^A (x) P^B)|Phi> for the given outcome; rejects outcomes with
// probability below 1e-12.
CVec post_measurement_state(const PureBipartiteState& phi, int n, const Partition& shape);

struct DistortionDiagnostics {
    bool multiplicity_ok = false;   // every eigenvalue group divisible by dim V
    double entropy_bits = 0.0;      // full entanglement entropy across A|B
    double v_part_entropy_bits = 0.0;  // log2 dim V: the maximally entangled share
    double max_group_spread = 0.0;  // worst within-group eigenvalue spread
    std::vector<std::pair<double, int>> groups;  // (mean eigenvalue, count), descending
};

// Schmidt analysis of the post-measurement state. A clean grouping into
// multiples of dim V certifies the maximally entangled factor is exact.
DistortionDiagnostics distortion_diagnostics(const PureBipartiteState& phi, int n,
                                             const Partition& shape, double grouping_tol = 1e-9);

CMat haar_random_unitary(int d, std::mt19937_64& rng);

struct TwirlResult {
    CMat rho;                       // averaged density matrix, d^{2n} square
    std::vector<CMat> block_means;  // disjoint sample-block averages, for error bars
    int samples = 0;
};

// Empirical average of (U (x) V)^(x)n |Phi><Phi| over Haar pairs.
TwirlResult twirl_monte_carlo(const PureBipartiteState& phi, int n, int samples,
                              std::mt19937_64& rng, int error_blocks = 10);

// rho_A of a pure joint state (d^n square).
CMat reduced_density_a(const CVec& state, int n, int d);
// Partial trace over the B digits of a d^{2n} square density matrix.
CMat partial_trace_b(const CMat& rho, int n, int d);
// Squared singular values across the A|B cut, descending.
std::vector<double> schmidt_eigenvalues(const CVec& state, int n, int d);

}  // namespace schurweyl
