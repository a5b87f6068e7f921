#include "gdstbc/cli.hpp"

#include "gdstbc/certify.hpp"
#include "gdstbc/code_io.hpp"
#include "gdstbc/construction.hpp"
#include "gdstbc/fixtures.hpp"
#include "gdstbc/simulator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace gdstbc {
namespace {

std::string rational_str(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Accepts "17/8", "3", and plain decimals like "1.5".
Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("bad rational '" + text + "'"); };
    if (text.empty()) fail();
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(text.substr(0, slash));
            Int den(text.substr(slash + 1));
            if (den == 0) fail();
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(Int(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        Int den = 1;
        for (std::size_t i = 0; i + dot < text.size() - 1; ++i) den *= 10;
        return Rational(Int(digits), den);
    } catch (const std::exception&) {
        fail();
    }
    return {};
}

std::string complexity_str(const ComplexityOrder& c) {
    std::string s;
    if (c.coefficient != 1) s += std::to_string(c.coefficient) + "·";
    s += "2^";
    if (denominator(c.exponent) == 1)
        s += numerator(c.exponent).str();
    else
        s += "(" + rational_str(c.exponent) + ")";
    return s;
}

// Full-row-rank canonical seed: row i is e_{i mod N}, which is [I_T 0]
// when T < N.
ExactComplexMatrix canonical_seed(std::size_t t, std::size_t n) {
    ExactComplexMatrix c(t, n);
    for (std::size_t i = 0; i < t; ++i) c.at(i, i % n) = ExactComplex(1, 0);
    return c;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct ConstructArgs {
    std::size_t t = 0;
    std::size_t n = 0;
    bool balanced = false;
    bool no_refine = false;
    std::string seed_file;
    std::string name;
    std::string out_path;
};

int run_construct(const ConstructArgs& a, std::ostream& out) {
    ConstructionOptions opts;
    if (a.no_refine) {
        opts.refine_full_rank = false;
        opts.maximize_orthogonal = false;
    }

    GroupDecodableCode code;
    if (a.balanced) {
        SeedMatrix seed;
        if (!a.seed_file.empty()) {
            seed.c = load_code_file(a.seed_file).dispersion.mats.at(0);
        } else {
            if (a.t == 0 || a.n == 0)
                throw std::invalid_argument("construct needs --t and --n (or --seed-file)");
            if (a.t % 2 != 0) throw std::invalid_argument("balanced construction needs even --t");
            seed.c = canonical_seed(a.t / 2, a.n);
        }
        auto half = construct_unbalanced(seed, opts);
        code = construct_balanced(half, half);
        code.name = a.name.empty() ? "b_t" + std::to_string(code.t_len()) + "n" +
                                         std::to_string(code.n_tx())
                                   : a.name;
    } else {
        SeedMatrix seed;
        if (!a.seed_file.empty()) {
            seed.c = load_code_file(a.seed_file).dispersion.mats.at(0);
        } else {
            if (a.t == 0 || a.n == 0)
                throw std::invalid_argument("construct needs --t and --n (or --seed-file)");
            seed.c = canonical_seed(a.t, a.n);
        }
        code = construct_unbalanced(seed, opts);
        code.name = a.name.empty() ? "un_t" + std::to_string(code.t_len()) + "n" +
                                         std::to_string(code.n_tx())
                                   : a.name;
    }

    std::string text = serialize_code(code);
    if (a.out_path.empty()) {
        out << text;
    } else {
        write_text_file(a.out_path, text);
        out << "wrote " << a.out_path << "\n";
    }
    return 0;
}

int run_verify(const std::string& code_ref, std::ostream& out) {
    auto code = resolve_code(code_ref);
    auto report = verify_group_decodable(code);
    out << "name = " << code.name << "\n";
    out << "t = " << code.t_len() << "\n";
    out << "n = " << code.n_tx() << "\n";
    out << "symbols = " << code.num_symbols() << "\n";
    out << "groups = " << code.partition.groups.size() << "\n";
    out << "rate = " << rational_str(report.rate) << "\n";
    out << "symbolwise_diversity = " << report.symbolwise_diversity << "\n";
    out << "qoc = " << (report.qoc_ok ? "ok" : "violated") << "\n";
    out << "independence = " << (report.independence_ok ? "ok" : "violated") << "\n";
    for (const auto& v : report.violations) out << "violation: " << v << "\n";
    out << (report.ok() ? "clean" : "not group-decodable") << "\n";
    return report.ok() ? 0 : 2;
}

const char* regime_str(RateRegime r) {
    switch (r) {
        case RateRegime::t_ge_n: return "T >= N";
        case RateRegime::t_lt_n: return "T < N";
        case RateRegime::t_ge_2n: return "T >= 2N";
        case RateRegime::t_lt_2n: return "T < 2N";
    }
    return "?";
}

int run_rate(std::size_t t, std::size_t n, bool balanced, std::ostream& out) {
    auto pred = balanced ? max_rate_balanced(t, n) : max_rate_unbalanced(t, n);
    out << "max_rate = " << rational_str(pred.max_rate) << "\n";
    out << "second_group_size = " << pred.second_group_size << "\n";
    out << "regime = " << regime_str(pred.regime) << "\n";
    return 0;
}

struct SimulateArgs {
    std::string config_path;
    std::string seed_text;
    int workers = 0;
    bool zero_noise = false;
    std::string csv_path;
    std::string json_path;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    auto cfg = parse_simulation_config(read_text_file(a.config_path));
    if (!a.seed_text.empty()) {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(a.seed_text, &pos, 10);
        if (pos != a.seed_text.size()) throw std::invalid_argument("bad --seed value");
        cfg.seed = v;
    }
    if (a.workers > 0) cfg.workers = static_cast<std::size_t>(a.workers);
    if (a.zero_noise) cfg.zero_noise = true;

    auto res = run_ber_sweep(cfg);
    std::string csv = ber_csv(res);
    if (a.csv_path.empty())
        out << csv;
    else
        write_text_file(a.csv_path, csv);
    if (!a.json_path.empty()) write_text_file(a.json_path, ber_json(res));
    if (!a.csv_path.empty()) out << "wrote " << a.csv_path << "\n";
    return 0;
}

void print_certificate(const DiversityCertificate& cert, std::ostream& out) {
    char det[64];
    std::snprintf(det, sizeof det, "%.12g", cert.min_det);
    out << "min_rank = " << cert.min_rank << "\n";
    out << "min_det = " << det << "\n";
    out << "pairs = " << cert.pairs << "\n";
    out << "full_diversity = " << (cert.full_diversity ? "yes" : "no") << "\n";
}

struct RotateArgs {
    std::string code_ref;
    std::string plan_text;
    double step = std::numbers::pi / 400.0;
    std::string metric = "min_rank_then_det";
    std::string out_path;
};

int run_rotate(const RotateArgs& a, std::ostream& out) {
    auto code = resolve_code(a.code_ref);
    auto plan = parse_plan(a.plan_text, code.num_symbols());
    RotationSearchConfig cfg;
    cfg.step = a.step;
    if (a.metric == "min_det")
        cfg.metric = RotationMetric::min_det;
    else if (a.metric == "min_rank_then_det")
        cfg.metric = RotationMetric::min_rank_then_det;
    else
        throw std::invalid_argument("unknown metric '" + a.metric + "'");
    auto res = optimize_rotations(code, plan, cfg);
    std::string text = format_plan(res.plan);
    out << "plan = " << text << "\n";
    print_certificate(res.cert, out);
    if (!a.out_path.empty()) write_text_file(a.out_path, text + "\n");
    return 0;
}

int run_certify(const std::string& code_ref, const std::string& plan_text, double phase,
                std::ostream& out) {
    auto code = resolve_code(code_ref);
    auto plan = parse_plan(plan_text, code.num_symbols());
    print_certificate(certify_full_diversity(code, plan, phase), out);
    return 0;
}

int run_fixtures(const std::string& name, const std::string& out_dir, std::ostream& out) {
    if (!name.empty()) {
        out << serialize_code(builtin_code(name));
        return 0;
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& n : builtin_code_names()) {
            auto path = (std::filesystem::path(out_dir) / (n + ".code")).string();
            save_code_file(builtin_code(n), path);
            out << "wrote " << path << "\n";
        }
        return 0;
    }
    for (const auto& n : builtin_code_names()) out << n << "\n";
    return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"group-decodable space-time block code toolkit"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a 2-group code from a seed matrix");
    construct->add_option("--t", ca.t, "block length T");
    construct->add_option("--n", ca.n, "transmit antennas N");
    construct->add_flag("--balanced", ca.balanced, "stack two half-length codes");
    construct->add_flag("--no-refine", ca.no_refine, "skip basis refinement");
    construct->add_option("--seed-file", ca.seed_file, "code file whose first matrix seeds the build");
    construct->add_option("--name", ca.name, "name for the produced code");
    construct->add_option("--out", ca.out_path, "write the code file here instead of stdout");

    std::string verify_ref;
    auto* verify = app.add_subcommand("verify", "check group-decodability of a code");
    verify->add_option("code", verify_ref, "builtin name or code file path")->required();

    std::size_t rt = 0, rn = 0;
    bool rbal = false;
    auto* rate = app.add_subcommand("rate", "maximum achievable rate of the construction");
    rate->add_option("--t", rt, "block length T")->required();
    rate->add_option("--n", rn, "transmit antennas N")->required();
    rate->add_flag("--balanced", rbal, "balanced two-group variant");

    std::size_t cl = 0, ck = 0;
    std::string cb, cr;
    auto* complexity = app.add_subcommand("complexity", "decoding complexity order");
    complexity->add_option("--Lmax", cl, "largest group size")->required();
    complexity->add_option("--K", ck, "orthogonal symbols inside that group")->required();
    complexity->add_option("--b", cb, "bits per channel use (rational)")->required();
    complexity->add_option("--R", cr, "code rate (rational)")->required();

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "run a BER sweep from a config file");
    simulate->add_option("--config", sa.config_path, "simulation config file")->required();
    simulate->add_option("--seed", sa.seed_text, "override the RNG seed");
    simulate->add_option("--workers", sa.workers, "override the worker count");
    simulate->add_flag("--zero-noise", sa.zero_noise, "disable the noise term");
    simulate->add_option("--csv", sa.csv_path, "write CSV here instead of stdout");
    simulate->add_option("--json", sa.json_path, "also write a JSON report here");

    RotateArgs ra;
    auto* rotate = app.add_subcommand("rotate", "grid-search constellation rotations");
    rotate->add_option("--code", ra.code_ref, "builtin name or code file path")->required();
    rotate->add_option("--plan", ra.plan_text, "symbol plan")->required();
    rotate->add_option("--step", ra.step, "grid step in radians");
    rotate->add_option("--metric", ra.metric, "min_det or min_rank_then_det");
    rotate->add_option("--out", ra.out_path, "write the optimized plan here");

    std::string ce_code, ce_plan;
    double ce_phase = 0.0;
    auto* certify = app.add_subcommand("certify", "diversity certificate for a codebook");
    certify->add_option("--code", ce_code, "builtin name or code file path")->required();
    certify->add_option("--plan", ce_plan, "symbol plan")->required();
    certify->add_option("--phase", ce_phase, "global phase applied to every codeword");

    std::string fx_name, fx_dir;
    auto* fixtures = app.add_subcommand("fixtures", "list or export builtin codes");
    fixtures->add_option("--name", fx_name, "print this builtin code file");
    fixtures->add_option("--out-dir", fx_dir, "write every builtin code file here");

    std::vector<const char*> argv;
    argv.push_back("gdstbc");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (construct->parsed()) return run_construct(ca, out);
        if (verify->parsed()) return run_verify(verify_ref, out);
        if (rate->parsed()) return run_rate(rt, rn, rbal, out);
        if (complexity->parsed()) {
            out << complexity_str(complexity_order(cl, ck, parse_rational(cb), parse_rational(cr)))
                << "\n";
            return 0;
        }
        if (simulate->parsed()) return run_simulate(sa, out);
        if (rotate->parsed()) return run_rotate(ra, out);
        if (certify->parsed()) return run_certify(ce_code, ce_plan, ce_phase, out);
        if (fixtures->parsed()) return run_fixtures(fx_name, fx_dir, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace gdstbc
