#include "schurweyl/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace schurweyl::io {

using ordered_json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw std::invalid_argument("unknown format '" + name + "' (expected json or csv)");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string join_spectrum(const SchmidtSpectrum& p) {
    std::string out;
    for (int i = 0; i < p.d(); ++i) {
        if (i) out += ',';
        out += format_double(p[i]);
    }
    return out;
}

ordered_json spectrum_json(const SchmidtSpectrum& p) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < p.d(); ++i) arr.push_back(p[i]);
    return arr;
}

ordered_json shape_json(const Partition& shape) {
    ordered_json arr = ordered_json::array();
    for (int part : shape.parts()) arr.push_back(part);
    return arr;
}

std::string quoted_shape(const Partition& shape) { return '"' + shape.to_string() + '"'; }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string render_distribution(const SchurWeylDistribution& dist, Format format) {
    if (format == Format::json) {
        ordered_json out;
        out["command"] = "dist";
        out["n"] = dist.n();
        out["d"] = dist.d();
        out["p"] = spectrum_json(dist.p());
        out["total_probability"] = dist.total_probability();
        out["normalization_defect"] = dist.normalization_defect();
        ordered_json entries = ordered_json::array();
        for (const auto& e : dist.entries()) {
            ordered_json row;
            row["shape"] = shape_json(e.shape);
            row["probability"] = e.prob;
            row["log2_probability"] = e.log2_prob;
            row["L"] = e.output_dim.str();
            row["log2_L"] = e.log2_output_dim;
            row["rate"] = e.rate;
            entries.push_back(std::move(row));
        }
        out["entries"] = std::move(entries);
        return dump(out);
    }
    std::ostringstream out;
    out << "# command: dist\n";
    out << "# n: " << dist.n() << "\n";
    out << "# d: " << dist.d() << "\n";
    out << "# p: " << join_spectrum(dist.p()) << "\n";
    out << "# total_probability: " << format_double(dist.total_probability()) << "\n";
    out << "# normalization_defect: " << format_double(dist.normalization_defect()) << "\n";
    out << "shape,probability,log2_probability,L,log2_L,rate\n";
    for (const auto& e : dist.entries())
        out << quoted_shape(e.shape) << ',' << format_double(e.prob) << ','
            << format_double(e.log2_prob) << ',' << e.output_dim.str() << ','
            << format_double(e.log2_output_dim) << ',' << format_double(e.rate) << "\n";
    return out.str();
}

std::string render_failprob(int d, const SchmidtSpectrum& p, std::optional<double> rate,
                            std::span<const FailProbRow> rows, Format format) {
    if (format == Format::json) {
        ordered_json out;
        out["command"] = "failprob";
        out["d"] = d;
        out["p"] = spectrum_json(p);
        if (rate) out["R"] = *rate;
        ordered_json list = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["n"] = row.n;
            r["S"] = row.threshold.str();
            r["failure_probability"] = row.probability;
            r["log2_failure_probability"] = row.log2_probability;
            list.push_back(std::move(r));
        }
        out["rows"] = std::move(list);
        return dump(out);
    }
    std::ostringstream out;
    out << "# command: failprob\n";
    out << "# d: " << d << "\n";
    out << "# p: " << join_spectrum(p) << "\n";
    if (rate) out << "# R: " << format_double(*rate) << "\n";
    out << "n,S,failure_probability,log2_failure_probability\n";
    for (const auto& row : rows)
        out << row.n << ',' << row.threshold.str() << ',' << format_double(row.probability)
            << ',' << format_double(row.log2_probability) << "\n";
    return out.str();
}

std::string render_exponent(const SchmidtSpectrum& p, double rate, const ExponentResult& result,
                            std::span<const ConvergenceRow> convergence, bool with_convergence,
                            Format format) {
    if (format == Format::json) {
        ordered_json out;
        out["command"] = "exponent";
        out["d"] = p.d();
        out["p"] = spectrum_json(p);
        out["R"] = rate;
        out["value"] = result.value;
        if (std::isfinite(result.beta_star))
            out["beta"] = result.beta_star;
        else
            out["beta"] = nullptr;
        out["q"] = spectrum_json(result.q_star);
        out["method"] = result.solver.method;
        out["iterations"] = result.solver.iterations;
        out["residual"] = result.solver.residual;
        if (with_convergence) {
            ordered_json table = ordered_json::array();
            for (const auto& row : convergence) {
                ordered_json r;
                r["n"] = row.n;
                r["log2_failure_probability"] = row.failure_prob_log2;
                r["empirical_exponent"] = row.empirical;
                r["analytic_exponent"] = row.analytic;
                r["gap"] = std::abs(row.empirical - row.analytic);
                table.push_back(std::move(r));
            }
            out["convergence"] = std::move(table);
        }
        return dump(out);
    }
    std::ostringstream out;
    out << "# command: exponent\n";
    out << "# d: " << p.d() << "\n";
    out << "# p: " << join_spectrum(p) << "\n";
    out << "# R: " << format_double(rate) << "\n";
    out << "# value: " << format_double(result.value) << "\n";
    out << "# beta: " << format_double(result.beta_star) << "\n";
    out << "# q: " << join_spectrum(result.q_star) << "\n";
    out << "# method: " << result.solver.method << "\n";
    out << "# iterations: " << result.solver.iterations << "\n";
    out << "# residual: " << format_double(result.solver.residual) << "\n";
    out << "n,log2_failure_probability,empirical_exponent,analytic_exponent,gap\n";
    if (with_convergence)
        for (const auto& row : convergence)
            out << row.n << ',' << format_double(row.failure_prob_log2) << ','
                << format_double(row.empirical) << ',' << format_double(row.analytic) << ','
                << format_double(std::abs(row.empirical - row.analytic)) << "\n";
    return out.str();
}

std::string render_samples(int n, const SchmidtSpectrum& p, std::uint64_t seed,
                           std::span<const Partition> shapes, Format format) {
    if (format == Format::json) {
        ordered_json out;
        out["command"] = "sample";
        out["n"] = n;
        out["d"] = p.d();
        out["p"] = spectrum_json(p);
        out["seed"] = seed;
        out["count"] = shapes.size();
        ordered_json list = ordered_json::array();
        for (const auto& shape : shapes) list.push_back(shape_json(shape));
        out["shapes"] = std::move(list);
        return dump(out);
    }
    std::ostringstream out;
    out << "# command: sample\n";
    out << "# n: " << n << "\n";
    out << "# d: " << p.d() << "\n";
    out << "# p: " << join_spectrum(p) << "\n";
    out << "# seed: " << seed << "\n";
    out << "# count: " << shapes.size() << "\n";
    out << "index,shape\n";
    for (size_t i = 0; i < shapes.size(); ++i)
        out << i << ',' << quoted_shape(shapes[i]) << "\n";
    return out.str();
}

std::string render_verify(const std::string& suite, const VerifyOptions& options,
                          std::span<const CheckResult> checks, Format format) {
    bool ok = true;
    for (const auto& check : checks) ok = ok && check.pass;
    if (format == Format::json) {
        ordered_json out;
        out["command"] = "verify";
        out["suite"] = suite;
        out["n"] = options.n;
        out["d"] = options.d;
        out["seed"] = options.seed;
        out["states"] = options.states;
        out["twirl_samples"] = options.twirl_samples;
        ordered_json list = ordered_json::array();
        for (const auto& check : checks) {
            ordered_json row;
            row["name"] = check.name;
            row["max_residual"] = check.max_residual;
            row["tolerance"] = check.tolerance;
            row["pass"] = check.pass;
            list.push_back(std::move(row));
        }
        out["checks"] = std::move(list);
        out["pass"] = ok;
        return dump(out);
    }
    std::ostringstream out;
    out << "# command: verify\n";
    out << "# suite: " << suite << "\n";
    out << "# n: " << options.n << "\n";
    out << "# d: " << options.d << "\n";
    out << "# seed: " << options.seed << "\n";
    out << "# states: " << options.states << "\n";
    out << "# twirl_samples: " << options.twirl_samples << "\n";
    out << "# pass: " << (ok ? "true" : "false") << "\n";
    out << "name,max_residual,tolerance,pass\n";
    for (const auto& check : checks)
        out << check.name << ',' << format_double(check.max_residual) << ','
            << format_double(check.tolerance) << ',' << (check.pass ? "true" : "false") << "\n";
    return out.str();
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace schurweyl::io
