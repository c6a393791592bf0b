#ifndef SCHURWEYL_IO_HPP
#define SCHURWEYL_IO_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schurweyl/bigint.hpp"
#include "schurweyl/exponent.hpp"
#include "schurweyl/measure.hpp"
#include "schurweyl/partition.hpp"
#include "schurweyl/spectrum.hpp"
#include "schurweyl/verify.hpp"

namespace schurweyl::io {

enum class Format { json, csv };

// Accepts "json" or "csv"; anything else throws std::invalid_argument.
Format parse_format(const std::string& name);

// Shortest stable text for a double; infinities come out as "inf"/"-inf".
std::string format_double(double v);

struct FailProbRow {
    int n = 0;
    BigInt threshold;
    double probability = 0.0;
    double log2_probability = 0.0;
};

std::string render_distribution(const SchurWeylDistribution& dist, Format format);

std::string render_failprob(int d, const SchmidtSpectrum& p, std::optional<double> rate,
                            std::span<const FailProbRow> rows, Format format);

std::string render_exponent(const SchmidtSpectrum& p, double rate,
                            const ExponentResult& result,
                            std::span<const ConvergenceRow> convergence, bool with_convergence,
                            Format format);

std::string render_samples(int n, const SchmidtSpectrum& p, std::uint64_t seed,
                           std::span<const Partition> shapes, Format format);

std::string render_verify(const std::string& suite, const VerifyOptions& options,
                          std::span<const CheckResult> checks, Format format);

// Empty path writes to stdout; otherwise the file is replaced atomically
// enough for our purposes (truncate + write).
void write_text(const std::string& text, const std::string& path);

}  // namespace schurweyl::io

#endif
