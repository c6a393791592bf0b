#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schurweyl/exponent.hpp"
#include "schurweyl/io.hpp"
#include "schurweyl/measure.hpp"
#include "schurweyl/spectrum.hpp"
#include "schurweyl/verify.hpp"

namespace {

using namespace schurweyl;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

double parse_double(const std::string& text) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

int parse_int(const std::string& text) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

SchmidtSpectrum resolve_spectrum(const std::string& spec, std::optional<int> d_flag) {
    if (spec == "bell") {
        if (d_flag && *d_flag != 2)
            throw std::invalid_argument("--p bell fixes d = 2, conflicting with --d");
        return SchmidtSpectrum::uniform(2);
    }
    if (spec == "uniform") {
        if (!d_flag) throw std::invalid_argument("--p uniform requires --d");
        return SchmidtSpectrum::uniform(*d_flag);
    }
    std::vector<double> values;
    for (const std::string& field : split(spec, ','))
        values.push_back(parse_double(field));
    if (values.size() < 1) throw std::invalid_argument("--p needs at least one entry");
    if (d_flag && static_cast<size_t>(*d_flag) != values.size())
        throw std::invalid_argument("--d disagrees with the number of --p entries");
    double sum = 0.0;
    for (double v : values) sum += v;
    if (std::abs(sum - 1.0) > 1e-9)
        std::cerr << "warning: spectrum sums to " << io::format_double(sum)
                  << "; renormalizing\n";
    return SchmidtSpectrum::from_unnormalized(std::move(values));
}

BigInt parse_threshold(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("--S must be a positive integer");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("--S must be a positive integer, got '" + text + "'");
    BigInt s(text);
    if (s < 1) throw std::invalid_argument("--S must be at least 1");
    return s;
}

std::uint64_t auto_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct CommonArgs {
    std::string p_spec;
    std::optional<int> d_flag;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_p = true) {
    if (with_p)
        cmd->add_option("--p", args.p_spec,
                        "Schmidt spectrum: comma-separated decimals, 'bell' or 'uniform'")
            ->required();
    auto* d_opt = cmd->add_option("--d", "local dimension (inferred from --p when omitted)")
                      ->check(CLI::Range(1, 64));
    d_opt->each([&args](const std::string& v) { args.d_flag = parse_int(v); });
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur-Weyl measurement statistics and entanglement concentration toolkit"};
    app.require_subcommand(1);

    CLI::App* dist_cmd = app.add_subcommand("dist", "outcome distribution over Young indices");
    int dist_n = 0;
    CommonArgs dist_args;
    dist_cmd->add_option("--n", dist_n, "number of copies")->required()->check(CLI::Range(1, 1 << 20));
    add_common(dist_cmd, dist_args);

    CLI::App* fail_cmd = app.add_subcommand("failprob", "probability of concentrating below threshold");
    int fail_n = 0;
    CommonArgs fail_args;
    std::optional<double> fail_r;
    std::string fail_s;
    fail_cmd->add_option("--n", fail_n, "number of copies")->required()->check(CLI::Range(1, 1 << 20));
    auto* r_opt = fail_cmd->add_option("--R", "rate in bits; threshold S = ceil(2^(n R))")
                      ->check(CLI::NonNegativeNumber);
    r_opt->each([&fail_r](const std::string& v) { fail_r = parse_double(v); });
    auto* s_opt = fail_cmd->add_option("--S", fail_s, "dimension threshold (positive integer)");
    r_opt->excludes(s_opt);
    s_opt->excludes(r_opt);
    add_common(fail_cmd, fail_args);

    CLI::App* exp_cmd = app.add_subcommand("exponent", "optimal failure exponent at a given rate");
    CommonArgs exp_args;
    double exp_r = 0.0;
    std::string exp_empirical;
    exp_cmd->add_option("--R", exp_r, "rate in bits")->required()->check(CLI::NonNegativeNumber);
    exp_cmd->add_option("--empirical", exp_empirical,
                        "comma-separated n values for a finite-n convergence table");
    add_common(exp_cmd, exp_args);

    CLI::App* sample_cmd = app.add_subcommand("sample", "draw outcomes by RSK insertion");
    int sample_n = 0, sample_k = 100;
    CommonArgs sample_args;
    std::optional<std::uint64_t> sample_seed;
    sample_cmd->add_option("--n", sample_n, "number of copies")->required()->check(CLI::Range(1, 1 << 20));
    sample_cmd->add_option("--K", sample_k, "number of samples")
        ->check(CLI::Range(1, 100'000'000))
        ->capture_default_str();
    auto* seed_opt = sample_cmd->add_option("--seed", "RNG seed (auto-generated and recorded when omitted)");
    seed_opt->each([&sample_seed](const std::string& v) { sample_seed = std::stoull(v); });
    add_common(sample_cmd, sample_args);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run oracle verification suites");
    std::string verify_suite_name = "all";
    VerifyOptions verify_opt;
    std::optional<std::uint64_t> verify_seed;
    CommonArgs verify_args;
    verify_cmd->add_option("--suite", verify_suite_name, "blocks, law, distortion, bounds, twirl or all")
        ->capture_default_str();
    verify_cmd->add_option("--n", verify_opt.n, "number of copies")->capture_default_str();
    verify_cmd->add_option("--d", verify_opt.d, "local dimension")->capture_default_str();
    auto* vseed_opt = verify_cmd->add_option("--seed", "RNG seed (auto-generated and recorded when omitted)");
    vseed_opt->each([&verify_seed](const std::string& v) { verify_seed = std::stoull(v); });
    verify_cmd->add_option("--states", verify_opt.states, "random states per suite")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    verify_cmd->add_option("--twirl-samples", verify_opt.twirl_samples, "Monte Carlo twirl samples")
        ->check(CLI::Range(100, 10'000'000))
        ->capture_default_str();
    verify_cmd->add_option("--format", verify_args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    verify_cmd->add_option("--out", verify_args.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*dist_cmd) {
            const SchmidtSpectrum p = resolve_spectrum(dist_args.p_spec, dist_args.d_flag);
            const SchurWeylDistribution dist = distribution(dist_n, p);
            io::write_text(io::render_distribution(dist, io::parse_format(dist_args.format)),
                           dist_args.out);
            return 0;
        }
        if (*fail_cmd) {
            const SchmidtSpectrum p = resolve_spectrum(fail_args.p_spec, fail_args.d_flag);
            if (!fail_r && fail_s.empty())
                throw std::invalid_argument("failprob needs exactly one of --R or --S");
            const BigInt s = fail_r ? rate_threshold(fail_n, *fail_r) : parse_threshold(fail_s);
            const double log2_prob = failure_probability_log2(fail_n, p, s);
            const io::FailProbRow row{fail_n, s, std::min(1.0, std::exp2(log2_prob)), log2_prob};
            io::write_text(io::render_failprob(p.d(), p, fail_r, {&row, 1},
                                               io::parse_format(fail_args.format)),
                           fail_args.out);
            return 0;
        }
        if (*exp_cmd) {
            const SchmidtSpectrum p = resolve_spectrum(exp_args.p_spec, exp_args.d_flag);
            const ExponentResult result = exponent_rate(exp_r, p);
            std::vector<ConvergenceRow> table;
            const bool with_table = !exp_empirical.empty();
            if (with_table) {
                std::vector<int> ns;
                for (const std::string& field : split(exp_empirical, ',')) {
                    const int n = parse_int(field);
                    if (n < 1) throw std::invalid_argument("--empirical entries must be >= 1");
                    ns.push_back(n);
                }
                table = convergence_table(ns, p, exp_r);
            }
            io::write_text(io::render_exponent(p, exp_r, result, table, with_table,
                                               io::parse_format(exp_args.format)),
                           exp_args.out);
            return 0;
        }
        if (*sample_cmd) {
            const SchmidtSpectrum p = resolve_spectrum(sample_args.p_spec, sample_args.d_flag);
            const std::uint64_t seed = sample_seed ? *sample_seed : auto_seed();
            std::mt19937_64 rng(seed);
            std::vector<Partition> shapes;
            shapes.reserve(static_cast<size_t>(sample_k));
            for (int k = 0; k < sample_k; ++k) shapes.push_back(sample_outcome(sample_n, p, rng));
            io::write_text(io::render_samples(sample_n, p, seed, shapes,
                                              io::parse_format(sample_args.format)),
                           sample_args.out);
            return 0;
        }
        if (*verify_cmd) {
            verify_opt.seed = verify_seed ? *verify_seed : auto_seed();
            const std::vector<CheckResult> checks = verify_suite(verify_suite_name, verify_opt);
            io::write_text(io::render_verify(verify_suite_name, verify_opt, checks,
                                             io::parse_format(verify_args.format)),
                           verify_args.out);
            return all_pass(checks) ? 0 : 1;
        }
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
