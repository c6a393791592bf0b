#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schurweyl {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    int n = 3;
    int d = 2;
    std::uint64_t seed = 1;
    int states = 5;            // random inputs per structural check
    int twirl_samples = 4000;  // Monte Carlo budget for the averaging suite
};

// Block diagonality of tensor-power states plus projector algebra.
std::vector<CheckResult> verify_blocks(const VerifyOptions& opt);
// Analytic outcome law against projective expectations, with basis changes.
std::vector<CheckResult> verify_law(const VerifyOptions& opt);
// Post-measurement Schmidt structure: the maximally entangled factor is exact.
std::vector<CheckResult> verify_distortion(const VerifyOptions& opt);
// Dimension-versus-profile-entropy bound over every shape up to opt.n.
std::vector<CheckResult> verify_bounds(const VerifyOptions& opt);
// Monte Carlo average over local unitary pairs against the analytic block form.
std::vector<CheckResult> verify_twirl(const VerifyOptions& opt);

// suite is one of blocks, law, distortion, bounds, twirl, all.
std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opt);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace schurweyl
