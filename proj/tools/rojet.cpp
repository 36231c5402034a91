// rojet -- ring oscillator jitter entropy toolkit, command line front end.
// All subcommands print CSV or JSON to stdout; diagnostics go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rojet/autocorr.hpp"
#include "rojet/bitio.hpp"
#include "rojet/bitpattern.hpp"
#include "rojet/entropy.hpp"
#include "rojet/fit.hpp"
#include "rojet/params.hpp"
#include "rojet/rng.hpp"
#include "rojet/simulate.hpp"
#include "rojet/stepdist.hpp"

using nlohmann::json;
using namespace rojet;

namespace {

struct ParamFlags {
    double f = 0.0;
    double d = 0.5;
    double sigma2 = 0.0;
    int m = kDefaultGridSize;
    double tau = 10.0;

    void add_source(CLI::App* cmd) {
        cmd->add_option("--f", f, "relative oscillator frequency (any real; reduced mod 1)")
            ->required();
        cmd->add_option("--d", d, "duty cycle in (0,1)")->required();
        cmd->add_option("--sigma2", sigma2, "per-sample jitter variance")->required();
    }
    void add_grid(CLI::App* cmd) {
        cmd->add_option("--m", m, "grid resolution (power of two >= 64)")
            ->default_val(kDefaultGridSize);
        cmd->add_option("--tau", tau, "tailcut radius in standard deviations")->default_val(10.0);
    }
    SourceParams params() const { return canonicalize(f, d, sigma2); }
    Tailcut tailcut() const { return Tailcut{tau}; }
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    return file;
}

json params_json(const SourceParams& p) {
    return json{{"f", p.f}, {"d", p.d}, {"sigma2", p.sigma2}};
}

double log2_or_ninf(double p) {
    return p > 0.0 ? std::log2(p) : -std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------- density

int cmd_density(const ParamFlags& pf, const std::string& out) {
    const SourceParams p = pf.params();
    const auto ext = step_extrema(std::sqrt(p.sigma2), pf.tailcut());
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "# sigma=%.10g f_min=%.6f f_max=%.6f max_dev=%.10g log2_max_dev=%.4f\n",
                  std::sqrt(p.sigma2), ext.f_min, ext.f_max, ext.max_dev, ext.log2_max_dev);
    os << buf << "x,density\n";
    for (int j = 0; j < pf.m; ++j) {
        const double x = static_cast<double>(j) / pf.m;
        std::snprintf(buf, sizeof buf, "%.8f,%.12g\n", x, step_density(p, x, pf.tailcut()));
        os << buf;
    }
    return 0;
}

// --------------------------------------------------------------- autocorr

int cmd_autocorr(const ParamFlags& pf, bool have_source, const std::string& in,
                 const std::string& format, std::optional<std::uint64_t> nbits, int k,
                 const std::string& out) {
    AutocorrVector ac;
    if (!in.empty()) {
        const BitStream bits = read_bits_file(in, parse_bit_format(format), nbits);
        ac = estimate_autocorr(bits, k);
    } else if (have_source) {
        ac = model_autocorr(pf.params(), k, pf.tailcut());
    } else {
        throw std::invalid_argument("need either --in (empirical) or --f/--d/--sigma2 (analytic)");
    }
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << "lag,value\n";
    char buf[64];
    for (int i = 0; i <= ac.k_max(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.12g\n", i, ac.values[static_cast<std::size_t>(i)]);
        os << buf;
    }
    return 0;
}

// ---------------------------------------------------------------- pattern

int cmd_pattern(const ParamFlags& pf, const std::string& pattern) {
    const auto res = pattern_probability(pf.params(), BitStream::from_string(pattern), pf.m,
                                         pf.tailcut());
    emit(json{{"pattern", res.pattern.to_string()},
              {"probability", res.probability},
              {"log2_probability", log2_or_ninf(res.probability)},
              {"m", pf.m},
              {"params", params_json(pf.params())}});
    return 0;
}

int cmd_maxpat(const ParamFlags& pf, int n, const std::string& method) {
    const SourceParams p = pf.params();
    json j{{"method", method}, {"n", n}, {"m", pf.m}, {"params", params_json(p)}};
    if (method == "greedy") {
        const auto res = maxprob_pattern_depthfirst(p, n, pf.m, pf.tailcut());
        j["pattern"] = res.pattern.to_string();
        j["probability"] = res.probability;
        j["log2_probability"] = log2_or_ninf(res.probability);
        j["ties"] = res.ties;
        j["hinf_estimate"] = -log2_or_ninf(res.probability);
        j["hinf_rate_estimate"] = -log2_or_ninf(res.probability) / n;
    } else if (method == "exhaustive") {
        const auto probs = all_patterns(p, n, pf.m, pf.tailcut());
        double max_p = 0.0;
        for (double q : probs) max_p = std::max(max_p, q);
        std::vector<std::string> arg;
        for (std::size_t i = 0; i < probs.size(); ++i)
            if (probs[i] >= max_p - 1e-9)
                arg.push_back(index_to_pattern(static_cast<std::uint32_t>(i), n).to_string());
        j["pattern"] = arg.front();
        j["max_patterns"] = arg;
        j["probability"] = max_p;
        j["log2_probability"] = log2_or_ninf(max_p);
        j["hinf"] = -log2_or_ninf(max_p);
        j["hinf_rate"] = -log2_or_ninf(max_p) / n;
    } else {
        throw std::invalid_argument("method must be greedy or exhaustive");
    }
    emit(j);
    return 0;
}

// ---------------------------------------------------------------- entropy

int cmd_entropy(const ParamFlags& pf, int n, const std::string& method) {
    EntropyMethod em;
    if (method == "exhaustive")
        em = EntropyMethod::exhaustive;
    else if (method == "greedy-maxprob" || method == "greedy")
        em = EntropyMethod::greedy_maxprob;
    else
        throw std::invalid_argument("method must be exhaustive or greedy-maxprob");
    const auto rep = entropy_report(pf.params(), n, em, pf.m, pf.tailcut());
    json j{{"n", rep.n},
           {"method", to_string(rep.method)},
           {"hinf", rep.hinf},
           {"hinf_rate", rep.hinf_rate},
           {"h1", rep.h1 ? json(*rep.h1) : json(nullptr)},
           {"h1_rate", rep.h1_rate ? json(*rep.h1_rate) : json(nullptr)},
           {"h0", rep.h0 ? json(*rep.h0) : json(nullptr)},
           {"params", params_json(pf.params())}};
    emit(j);
    return 0;
}

int cmd_bounds(double s2_min, double s2_max, int count, const std::string& out, double tau) {
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << "sigma2,p_e,h1_lb,hinf_lb,tanh_ub,baudet\n";
    char buf[200];
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        const double s2 = s2_min * std::pow(s2_max / s2_min, t);
        const auto lb = prediction_bounds(s2, Tailcut{tau});
        std::snprintf(buf, sizeof buf, "%.10g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s2, lb.p_e,
                      lb.h1_lb, lb.hinf_lb, lb.tanh_pe_ub, lb.baudet_h1_lb);
        os << buf;
    }
    return 0;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const ParamFlags& pf, std::uint64_t n, std::uint64_t seed,
                 std::optional<double> x0, std::uint64_t burn_in, const std::string& format,
                 const std::string& out) {
    SimConfig cfg;
    cfg.params = SourceParams{pf.f, pf.d, pf.sigma2};  // raw F allowed here
    cfg.n = n;
    cfg.seed = seed;
    cfg.x0 = x0;
    cfg.burn_in = burn_in;
    const BitStream bits = simulate(cfg);
    const BitFileFormat fmt = parse_bit_format(format);
    if (out.empty()) {
        write_bits(std::cout, bits, fmt);
        if (fmt == BitFileFormat::ascii01) std::cout << '\n';
    } else {
        write_bits_file(out, bits, fmt);
        std::cerr << "wrote " << bits.size() << " bits to " << out << " (" << format << ")\n";
    }
    return 0;
}

// -------------------------------------------------------------------- fit

int cmd_fit(const std::string& in, const std::string& format, std::optional<std::uint64_t> nbits,
            int k, const std::string& out_csv) {
    const BitStream bits = read_bits_file(in, parse_bit_format(format), nbits);
    const AutocorrVector measured = estimate_autocorr(bits, k);
    FitOptions opts;
    opts.stream_length = bits.size();
    const FitResult res = fit_params(measured, k, opts);

    json j{{"converged", res.converged},
           {"k_used", res.k_used},
           {"stream_length", bits.size()},
           {"params", params_json(res.params)},
           {"residual", res.residual}};
    if (res.sigma2_lower_bound) j["sigma2_lower_bound"] = *res.sigma2_lower_bound;
    json cands = json::array();
    for (const auto& c : res.candidates)
        cands.push_back(json{{"params", params_json(c.params)}, {"residual", c.residual}});
    j["candidates"] = cands;
    emit(j);

    if (!out_csv.empty()) {
        const AutocorrVector model =
            res.converged ? model_autocorr(res.params, k) : AutocorrVector{};
        std::ofstream os(out_csv);
        if (!os) throw std::runtime_error("cannot open '" + out_csv + "' for writing");
        os << "lag,measured,model\n";
        for (int i = 0; i <= k; ++i) {
            os << i << ',' << measured.values[static_cast<std::size_t>(i)] << ',';
            if (res.converged)
                os << model.values[static_cast<std::size_t>(i)];
            os << '\n';
        }
    }
    return 0;
}

// ------------------------------------------------------------------- scan

int cmd_scan(int count, int n, double s2_min, double s2_max, const std::string& f_mode,
             std::uint64_t seed, int m, bool allow_large, const std::string& out) {
    if (count > 10000 && !allow_large)
        throw std::invalid_argument("count > 10000; pass --allow-large to confirm");
    Xoshiro256pp rng(seed);
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << "sigma2,f,hinf_rate_greedy,hinf_lb,h1_lb,baudet\n";
    char buf[200];
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        const double s2 = s2_min * std::pow(s2_max / s2_min, t);
        const double f = (f_mode == "grid") ? 0.5 * (i + 0.5) / count : 0.5 * rng.uniform01();
        const SourceParams p = canonicalize(f, 0.5, s2);
        const auto greedy = maxprob_pattern_depthfirst(p, n, m);
        const double rate = -log2_or_ninf(greedy.probability) / n;
        const auto lb = prediction_bounds(s2);
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12g,%.12g,%.12g,%.12g\n", s2, p.f, rate,
                      lb.hinf_lb, lb.h1_lb, lb.baudet_h1_lb);
        os << buf;
    }
    return 0;
}

// --------------------------------------------------------------- selftest

struct Check {
    const char* name;
    double expected;
    double computed;
    double tol;
};

int cmd_selftest() {
    std::vector<Check> checks;
    const double tabi_sigma[5] = {0.10, 0.20, 0.30, 0.50, 0.75};
    const double tabi_min[5] = {0.000030, 0.175283, 0.663191, 0.985616, 0.999970};
    const double tabi_max[5] = {3.989423, 1.994726, 1.340089, 1.014384, 1.000030};
    for (int i = 0; i < 5; ++i) {
        const auto e = step_extrema(tabi_sigma[i]);
        checks.push_back({"density min", tabi_min[i], e.f_min, 1e-6});
        checks.push_back({"density max", tabi_max[i], e.f_max, 1e-6});
    }
    const double tabi_sigma2[5] = {1.0, 1.5, 2.0, 2.5, 3.0};
    const double tabi_log2[5] = {-27.47766, -63.07473, -112.9106, -176.9854, -255.2989};
    for (int i = 0; i < 5; ++i) {
        const auto e = step_extrema(tabi_sigma2[i]);
        checks.push_back({"density log2 range", tabi_log2[i], e.log2_max_dev, 0.01});
    }

    const SourceParams ref = canonicalize(0.15, 0.5, 0.04);
    const double hinf_rates[3] = {0.844807, 0.849297, 0.846341};
    const double max_probs[3] = {0.172609, 0.0949171, 0.0532267};
    for (int n = 3; n <= 5; ++n) {
        const auto probs = all_patterns(ref, n);
        double max_p = 0.0;
        for (double q : probs) max_p = std::max(max_p, q);
        checks.push_back({"min-entropy rate", hinf_rates[n - 3], -std::log2(max_p) / n, 1e-5});
        checks.push_back({"max pattern probability", max_probs[n - 3], max_p, 1e-5});
    }

    const auto p8 = all_patterns(ref, 8);
    double sum8 = 0.0;
    for (double q : p8) sum8 += q;
    checks.push_back({"pattern mass total (n=8)", 1.0, sum8, 1e-7});

    int failures = 0;
    std::printf("%-28s %16s %16s %9s  result\n", "check", "expected", "computed", "tol");
    for (const auto& c : checks) {
        const bool ok = std::abs(c.expected - c.computed) <= c.tol;
        failures += ok ? 0 : 1;
        std::printf("%-28s %16.7f %16.7f %9.0e  %s\n", c.name, c.expected, c.computed, c.tol,
                    ok ? "pass" : "FAIL");
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failures,
                checks.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rojet -- ring oscillator jitter entropy toolkit"};
    app.require_subcommand(1);

    ParamFlags pf;
    std::string out, in, format = "ascii01", pattern, method, f_mode = "random";
    std::string out_csv;
    int n = 0, k = 8, count = 0;
    std::uint64_t nsim = 0, seed = 1, burn_in = 0;
    double x0_val = -1.0;
    double s2_min = 1e-4, s2_max = 1.0;
    bool allow_large = false;

    auto* density = app.add_subcommand("density", "step density table and extrema summary");
    pf.add_source(density);
    pf.add_grid(density);
    density->add_option("--out", out, "output file (default stdout)");

    auto* autoc = app.add_subcommand("autocorr", "analytic or empirical autocorrelation");
    autoc->add_option("--f", pf.f, "relative frequency (analytic mode)");
    autoc->add_option("--d", pf.d, "duty cycle (analytic mode)");
    autoc->add_option("--sigma2", pf.sigma2, "jitter variance (analytic mode)");
    autoc->add_option("--tau", pf.tau, "tailcut radius")->default_val(10.0);
    autoc->add_option("--in", in, "bit file (empirical mode)");
    autoc->add_option("--format", format, "bit file format: ascii01|packed|byteper")
        ->default_val("ascii01");
    std::uint64_t nbits_val = 0;
    autoc->add_option("--nbits", nbits_val, "true bit count for packed input");
    autoc->add_option("--k", k, "maximum lag")->default_val(8);
    autoc->add_option("--out", out, "output file (default stdout)");

    auto* pat = app.add_subcommand("pattern", "bit pattern probability (chop-and-convolve)");
    pf.add_source(pat);
    pf.add_grid(pat);
    pat->add_option("--pattern", pattern, "bit string, e.g. 00111")->required();

    auto* maxpat = app.add_subcommand("maxpat", "maximum-probability pattern search");
    pf.add_source(maxpat);
    pf.add_grid(maxpat);
    maxpat->add_option("--n", n, "pattern length")->required();
    maxpat->add_option("--method", method, "greedy|exhaustive")->default_val("greedy");

    auto* ent = app.add_subcommand("entropy", "Shannon/min-entropy of Z_n");
    pf.add_source(ent);
    pf.add_grid(ent);
    ent->add_option("--n", n, "pattern length")->required();
    ent->add_option("--method", method, "exhaustive|greedy-maxprob")->default_val("exhaustive");

    auto* bounds = app.add_subcommand("bounds", "sigma2-parameterized entropy lower bounds");
    bounds->add_option("--sigma2", s2_min, "single sigma2 (overrides sweep)");
    bounds->add_option("--sigma2-min", s2_min, "sweep start")->default_val(1e-4);
    bounds->add_option("--sigma2-max", s2_max, "sweep end")->default_val(1.0);
    bounds->add_option("--count", count, "sweep points (log-spaced)")->default_val(50);
    bounds->add_option("--tau", pf.tau, "tailcut radius")->default_val(10.0);
    bounds->add_option("--out", out, "output file (default stdout)");

    auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo bit generation");
    pf.add_source(sim);
    sim->add_option("--n", nsim, "number of bits")->required();
    sim->add_option("--seed", seed, "64-bit seed")->default_val(1);
    sim->add_option("--x0", x0_val, "initial phase in [0,1) (default: drawn from seed)");
    sim->add_option("--burn-in", burn_in, "discarded initial samples")->default_val(0);
    sim->add_option("--format", format, "ascii01|packed|byteper")->default_val("ascii01");
    sim->add_option("--out", out, "output file (default stdout)");

    auto* fit = app.add_subcommand("fit", "recover (F,D,sigma2) from a measured bitstream");
    fit->add_option("--in", in, "bit file")->required();
    fit->add_option("--format", format, "ascii01|packed|byteper")->default_val("ascii01");
    fit->add_option("--nbits", nbits_val, "true bit count for packed input");
    fit->add_option("--k", k, "autocorrelation lags used")->default_val(8);
    fit->add_option("--out", out_csv, "also write model-vs-measured CSV here");

    auto* scan = app.add_subcommand("scan", "desk-scale bound-safety sweep (D=1/2)");
    scan->add_option("--count", count, "number of rows")->default_val(200);
    scan->add_option("--n", n, "greedy pattern length")->default_val(100);
    scan->add_option("--sigma2-min", s2_min, "sweep start")->default_val(1e-4);
    scan->add_option("--sigma2-max", s2_max, "sweep end")->default_val(1.0);
    scan->add_option("--f-mode", f_mode, "random|grid")->default_val("random");
    scan->add_option("--seed", seed, "seed for random F")->default_val(1);
    scan->add_option("--m", pf.m, "grid resolution")->default_val(kDefaultGridSize);
    scan->add_flag("--allow-large", allow_large, "permit count > 10000");
    scan->add_option("--out", out, "output file (default stdout)");

    app.add_subcommand("selftest", "golden-value self checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (density->parsed()) return cmd_density(pf, out);
        if (autoc->parsed()) {
            std::optional<std::uint64_t> nb;
            if (autoc->count("--nbits")) nb = nbits_val;
            const bool have_source = autoc->count("--f") && autoc->count("--d") &&
                                     autoc->count("--sigma2");
            return cmd_autocorr(pf, have_source, in, format, nb, k, out);
        }
        if (pat->parsed()) return cmd_pattern(pf, pattern);
        if (maxpat->parsed()) return cmd_maxpat(pf, n, method);
        if (ent->parsed()) return cmd_entropy(pf, n, method);
        if (bounds->parsed()) {
            if (bounds->count("--sigma2")) return cmd_bounds(s2_min, s2_min, 1, out, pf.tau);
            return cmd_bounds(s2_min, s2_max, count, out, pf.tau);
        }
        if (sim->parsed()) {
            std::optional<double> x0;
            if (sim->count("--x0")) x0 = x0_val;
            return cmd_simulate(pf, nsim, seed, x0, burn_in, format, out);
        }
        if (fit->parsed()) {
            std::optional<std::uint64_t> nb;
            if (fit->count("--nbits")) nb = nbits_val;
            return cmd_fit(in, format, nb, k, out_csv);
        }
        if (scan->parsed())
            return cmd_scan(count, n, s2_min, s2_max, f_mode, seed, pf.m, allow_large, out);
        return cmd_selftest();
    } catch (const std::exception& e) {
        emit(json{{"error", {{"type", "invalid_request"}, {"message", e.what()}}}});
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
