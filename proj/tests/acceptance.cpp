// Acceptance gate: ten end-to-end checks, one PASS/FAIL line each. Every
// tolerance and runtime budget is pinned here, in code.

#include "gdstbc/certify.hpp"
#include "gdstbc/code_io.hpp"
#include "gdstbc/construction.hpp"
#include "gdstbc/exact_linalg.hpp"
#include "gdstbc/fixtures.hpp"
#include "gdstbc/mappings.hpp"
#include "gdstbc/simulator.hpp"
#include "gdstbc/transceiver.hpp"

#include "known_values.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gdstbc;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Accumulates failure reasons; empty means the criterion passed.
struct Check {
    std::ostringstream why;
    bool ok = true;

    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (why.tellp() > 0) why << "; ";
            why << msg;
        }
    }
};

std::vector<Rational> flat(const ExactComplexMatrix& m) { return map_g(stack_real_imag(m)); }

const char* plan_for(const std::string& name) {
    if (name == "un2" || name == "un2_reduced") return "qam8:1,5@0.0735pi qam8:2,3 pam4:4";
    if (name == "un4")
        return "pam2:1 pam2:2 pam2:3 pam2:4 pam2:5 pam2:6 pam2:7 pam2:8 pam2:9 pam2:10 pam2:11 "
               "pam2:12 pam2:13 pam2:14 pam2:15 pam2:16 pam2:17";
    if (name == "gpp3") return "pam2:1 pam2:2 pam2:3 pam2:4 pam2:5 pam2:6 pam2:7 pam2:8 pam2:9";
    if (name == "b4") return "qam4:1,6 qam4:2,7 qam4:3,8 qam4:4,9 qam4:5,10";
    if (name == "alamouti" || name == "blast2") return "qam4:1,3 qam4:2,4";
    return "qam4:1,2 qam4:3,4 qam4:5,6 qam4:7,8";  // golden
}

const std::vector<std::string> kGroupDecodableFixtures = {"un2", "un2_reduced", "un4", "gpp3",
                                                          "b4"};
const std::vector<std::string> kAllFixtures = {"un2",  "un2_reduced", "un4",    "gpp3",
                                               "b4",   "alamouti",    "blast2", "golden"};

FloatComplexMatrix rand_channel(std::mt19937& rng, std::size_t n_tx, std::size_t m_rx) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    FloatComplexMatrix h(n_tx, m_rx);
    for (auto& z : h.a) z = {g(rng), g(rng)};
    return h;
}

// Receive rows built straight from the codeword: per antenna, the block
// X * h column, split into its real then imaginary time samples.
std::vector<double> direct_receive(const FloatComplexMatrix& x, const FloatComplexMatrix& htilde,
                                   double rho) {
    std::size_t t = x.rows, m_rx = htilde.cols;
    std::vector<double> r(2 * t * m_rx, 0.0);
    double srho = std::sqrt(rho);
    for (std::size_t m = 0; m < m_rx; ++m) {
        for (std::size_t ti = 0; ti < t; ++ti) {
            std::complex<double> acc = 0.0;
            for (std::size_t n = 0; n < x.cols; ++n) acc += x.at(ti, n) * htilde.at(n, m);
            r[m * 2 * t + ti] = srho * acc.real();
            r[m * 2 * t + t + ti] = srho * acc.imag();
        }
    }
    return r;
}

std::vector<double> rand_symbols(std::mt19937& rng, const SymbolPlan& plan,
                                 std::vector<std::size_t>* points_out = nullptr) {
    std::vector<double> s(plan.symbol_count, 0.0);
    for (const auto& src : plan.sources) {
        std::uniform_int_distribution<std::size_t> pick(0, src.constellation.size - 1);
        std::size_t p = pick(rng);
        if (points_out) points_out->push_back(p);
        apply_point(src, p, s);
    }
    return s;
}

ExactComplexMatrix rand_full_rank(std::mt19937& rng, std::size_t t, std::size_t n) {
    for (;;) {
        auto c = oracle::rand_complex_matrix(rng, t, n);
        if (rank(c) == std::min(t, n)) return c;
    }
}

// --- the ten criteria ---

std::string c1_construction_fixture() {
    Check c;
    auto code = construct_unbalanced(SeedMatrix{known::seed_2x4()});
    c.expect(code.partition.groups.size() == 2, "expected two groups");
    const auto& g2 = code.partition.groups[1];
    c.expect(g2.size() == 4, "second group is not 4-dimensional");

    std::vector<std::vector<Rational>> built;
    for (std::size_t l : g2) built.push_back(flat(code.dispersion.mats[l]));
    for (const auto& y : known::second_group_2x4())
        c.expect(oracle::in_span(built, flat(y)), "frozen matrix outside the built span");
    return c.ok ? "" : c.why.str();
}

std::string c2_constraint_rank_identities() {
    Check c;
    std::mt19937 rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
        std::uniform_int_distribution<std::size_t> tn(1, 6);
        std::size_t t = tn(rng);
        std::uniform_int_distribution<std::size_t> nn(1, t);
        std::size_t n = nn(rng);
        auto seed = rand_full_rank(rng, t, n);
        auto f = build_f(seed);
        std::size_t rk = rank(f);
        c.expect(rk == n * n, "tall-seed constraint rank off at T=" + std::to_string(t) +
                                  " N=" + std::to_string(n));
        c.expect(oracle::rank(f) == rk, "rank oracle disagrees");
        if (!c.ok) break;
    }
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
        std::uniform_int_distribution<std::size_t> tt(1, 5);
        std::size_t t = tt(rng);
        std::uniform_int_distribution<std::size_t> nn(t + 1, 6);
        std::size_t n = nn(rng);
        auto sub = rand_full_rank(rng, t, t);
        ExactComplexMatrix seed(t, n);
        for (std::size_t r = 0; r < t; ++r)
            for (std::size_t k = 0; k < t; ++k) seed.at(r, k) = sub.at(r, k);
        auto f = build_f(seed);
        std::size_t rk = rank(f);
        c.expect(rk == 2 * t * n - t * t, "wide-seed constraint rank off at T=" +
                                              std::to_string(t) + " N=" + std::to_string(n));
        c.expect(oracle::rank(f) == rk, "rank oracle disagrees");
    }
    return c.ok ? "" : c.why.str();
}

std::string c3_verifier_suite() {
    Check c;
    for (const auto& name : kGroupDecodableFixtures) {
        auto report = verify_group_decodable(builtin_code(name));
        c.expect(report.ok() && report.violations.empty(), name + " fails verification");
    }

    // stack two independently built half-length codes and re-check the
    // cross-group condition pair by pair, exactly
    auto a = construct_unbalanced(SeedMatrix{known::seed_2x2()});
    ExactComplexMatrix eye(2, 2);
    eye.at(0, 0) = ExactComplex(1, 0);
    eye.at(1, 1) = ExactComplex(1, 0);
    auto b = construct_unbalanced(SeedMatrix{eye});
    auto stacked = construct_balanced(a, b);
    auto report = verify_group_decodable(stacked);
    c.expect(report.ok(), "stacked code fails verification");
    c.expect(stacked.partition.groups.size() == 2, "stacked code group count");
    const auto& g1 = stacked.partition.groups[0];
    const auto& g2 = stacked.partition.groups[1];
    c.expect(g1.size() == g2.size(), "stacked groups are unbalanced");
    for (std::size_t p : g1)
        for (std::size_t q : g2)
            c.expect(qoc_satisfied(stacked.dispersion.mats[p], stacked.dispersion.mats[q]),
                     "cross-group pair violates quasi-orthogonality");
    return c.ok ? "" : c.why.str();
}

std::string c4_complexity_tables() {
    Check c;
    struct Row {
        const char* label;
        std::size_t l_max;
        std::size_t k;
        Rational rate;
        Rational exp_per_bit;  // exponent divided by b
        double numeric_b4;     // coefficient * 2^exponent at b = 4
        bool approx;           // printed rounded to the nearest integer exponent
    };
    const Row rows[] = {
        {"2x2 orthogonal", 1, 1, Rational(1), Rational(1, 2), 4.0, false},
        {"2x2 layered", 4, 1, Rational(2), Rational(1), 16.0, false},
        {"2x2 full-rate full-diversity", 8, 1, Rational(2), Rational(2), 256.0, false},
        {"2x2 two-group", 4, 3, Rational(5, 4), Rational(4, 5), 24.0, true},
        {"4x2 orthogonal", 1, 1, Rational(3, 4), Rational(2, 3), 8.0, true},
        {"4x2 quasi-orthogonal", 2, 1, Rational(1), Rational(1), 16.0, false},
        {"4x2 full-rate", 16, 1, Rational(2), Rational(4), 65536.0, false},
        {"4x2 fast-decodable", 16, 8, Rational(2), Rational(9, 4), 4096.0, false},
        {"4x2 two-group", 15, 5, Rational(2), Rational(11, 4), 10240.0, false},
    };
    for (const Row& row : rows) {
        for (int b : {4, 10}) {
            auto ord = complexity_order(row.l_max, row.k, Rational(b), row.rate);
            c.expect(ord.coefficient == row.k, std::string(row.label) + ": coefficient");
            c.expect(ord.exponent == row.exp_per_bit * b,
                     std::string(row.label) + ": exponent at b=" + std::to_string(b));
        }
        auto ord = complexity_order(row.l_max, row.k, Rational(4), row.rate);
        double e = static_cast<double>(numerator(ord.exponent)) /
                   static_cast<double>(denominator(ord.exponent));
        if (row.approx) {
            double rounded = double(row.k) * std::pow(2.0, std::llround(e));
            c.expect(rounded == row.numeric_b4, std::string(row.label) + ": rounded numeric");
        } else {
            c.expect(denominator(ord.exponent) == 1, std::string(row.label) + ": integer power");
            c.expect(double(row.k) * std::pow(2.0, e) == row.numeric_b4,
                     std::string(row.label) + ": numeric at b=4");
        }
    }
    return c.ok ? "" : c.why.str();
}

std::string c5_rate_formulas() {
    Check c;
    c.expect(max_rate_unbalanced(2, 4).max_rate == Rational(5, 4), "unbalanced T=2 N=4");
    c.expect(max_rate_unbalanced(4, 4).max_rate == Rational(17, 8), "unbalanced T=4 N=4");
    c.expect(max_rate_unbalanced(3, 2).max_rate == Rational(3, 2), "unbalanced T=3 N=2");
    c.expect(max_rate_balanced(4, 4).max_rate == Rational(5, 4), "balanced T=4 N=4");
    return c.ok ? "" : c.why.str();
}

std::string c6_decoder_equivalence() {
    Check c;
    std::mt19937 rng(606);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    std::size_t mismatches = 0, trials_run = 0;
    for (const auto& name : kAllFixtures) {
        auto code = builtin_code(name);
        auto plan = parse_plan(plan_for(name), code.num_symbols());
        Encoder enc(code, plan);
        GroupDecoder dec(code, plan);
        std::size_t m_rx = min_receive_antennas(code);
        for (double rho : {1.0, 10.0, 100.0}) {
            for (int trial = 0; trial < 1000; ++trial) {
                ChannelRealization ch{rand_channel(rng, code.n_tx(), m_rx), rho};
                auto s = rand_symbols(rng, plan);
                auto heq = enc.real_equivalent(ch);
                auto r = direct_receive(enc.encode(s), ch.htilde, rho);
                for (auto& v : r) v += std::sqrt(0.5) * g(rng);
                auto ml = ml_decode_exhaustive(heq, r, plan);
                auto gd = dec.decode(heq, r);
                mismatches += (ml.points != gd.points);
                ++trials_run;
            }
        }
    }
    c.expect(mismatches == 0,
             std::to_string(mismatches) + " mismatches in " + std::to_string(trials_run));
    return c.ok ? "" : c.why.str();
}

std::string c7_real_equivalent_consistency() {
    Check c;
    std::mt19937 rng(707);
    for (const auto& name : kAllFixtures) {
        auto code = builtin_code(name);
        auto plan = parse_plan(plan_for(name), code.num_symbols());
        Encoder enc(code, plan);
        std::size_t m_rx = min_receive_antennas(code);
        for (int rep = 0; rep < 100; ++rep) {
            double rho = (rep % 2) ? 10.0 : 0.5;
            ChannelRealization ch{rand_channel(rng, code.n_tx(), m_rx), rho};
            auto heq = enc.real_equivalent(ch);
            auto s = rand_symbols(rng, plan);
            auto direct = direct_receive(enc.encode(s), ch.htilde, rho);
            double srho = std::sqrt(rho);
            double scale = 0.0, err = 0.0;
            for (std::size_t i = 0; i < direct.size(); ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l < plan.symbol_count; ++l)
                    acc += heq.h.at(i, l) * s[l];
                err = std::max(err, std::abs(direct[i] - srho * acc));
                scale = std::max(scale, std::abs(direct[i]));
            }
            c.expect(err <= 1e-9 * (1.0 + scale), name + ": receive paths diverge");
        }
    }

    // columns of distinct groups stay orthogonal for every channel draw
    for (const auto& name : kGroupDecodableFixtures) {
        auto code = builtin_code(name);
        auto plan = parse_plan(plan_for(name), code.num_symbols());
        Encoder enc(code, plan);
        std::size_t m_rx = min_receive_antennas(code);
        const auto& groups = code.partition.groups;
        for (int rep = 0; rep < 100; ++rep) {
            ChannelRealization ch{rand_channel(rng, code.n_tx(), m_rx), 1.0};
            auto heq = enc.real_equivalent(ch);
            for (std::size_t ga = 0; ga + 1 < groups.size(); ++ga)
                for (std::size_t gb = ga + 1; gb < groups.size(); ++gb)
                    for (std::size_t p : groups[ga])
                        for (std::size_t q : groups[gb]) {
                            double dot = 0.0, np = 0.0, nq = 0.0;
                            for (std::size_t i = 0; i < heq.h.rows; ++i) {
                                dot += heq.h.at(i, p) * heq.h.at(i, q);
                                np += heq.h.at(i, p) * heq.h.at(i, p);
                                nq += heq.h.at(i, q) * heq.h.at(i, q);
                            }
                            c.expect(std::abs(dot) <= 1e-9 * (1.0 + std::sqrt(np * nq)),
                                     name + ": cross-group columns not orthogonal");
                        }
        }
    }
    return c.ok ? "" : c.why.str();
}

std::string c8_diversity_certification() {
    Check c;
    auto code = builtin_code("un2_reduced");
    auto cert = certify_full_diversity(code, parse_plan(plan_for("un2_reduced"), 5));
    c.expect(cert.pairs == 32640, "pair count off");
    c.expect(cert.min_rank == 2, "reference rotation angles miss full diversity");
    c.expect(cert.full_diversity, "certificate flag");
    return c.ok ? "" : c.why.str();
}

std::string c9_ber_properties() {
    Check c;
    // (a) no noise, no errors
    for (const auto& name : kAllFixtures) {
        SimulationConfig cfg;
        cfg.code = name;
        cfg.plan = plan_for(name);
        cfg.receive_antennas = min_receive_antennas(builtin_code(name));
        cfg.snr_db = {10.0};
        cfg.target_bit_errors = 1;
        cfg.max_trials = 128;
        cfg.seed = 7;
        cfg.zero_noise = true;
        auto res = run_ber_sweep(cfg);
        c.expect(res.points[0].bit_errors == 0, name + ": bit errors without noise");
    }

    // (b) strictly decreasing curve with at least 200 errors behind each point
    SimulationConfig sweep;
    sweep.code = "un2_reduced";
    sweep.receive_antennas = 2;
    sweep.plan = plan_for("un2_reduced");
    sweep.snr_db = {0, 4, 8, 12, 16, 20, 24};
    sweep.target_bit_errors = 200;
    sweep.max_trials = 5000000;
    sweep.seed = 12345;
    sweep.workers = 2;
    auto curve = run_ber_sweep(sweep);
    for (const auto& p : curve.points)
        c.expect(p.bit_errors >= 200,
                 "point " + std::to_string(p.snr_db) + " dB under 200 errors");
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i)
        c.expect(curve.points[i + 1].ber < curve.points[i].ber,
                 "curve not strictly decreasing at " +
                     std::to_string(curve.points[i + 1].snr_db) + " dB");

    // (c) at 20 dB the two-group code sits strictly between the orthogonal
    // and layered references at the same 4 bits per channel use
    auto at20 = [&](const std::string& code, const std::string& plan) {
        SimulationConfig cfg;
        cfg.code = code;
        cfg.receive_antennas = 2;
        cfg.plan = plan;
        cfg.snr_db = {20.0};
        cfg.target_bit_errors = 400;
        cfg.max_trials = 5000000;
        cfg.seed = 12345;
        cfg.workers = 2;
        return run_ber_sweep(cfg).points[0];
    };
    auto mid = at20("un2_reduced", plan_for("un2_reduced"));
    auto ortho = at20("alamouti", "qam16:1,3 qam16:2,4");
    auto layered = at20("blast2", "qam4:1,3 qam4:2,4");
    auto lo = ortho.ber < layered.ber ? ortho : layered;
    auto hi = ortho.ber < layered.ber ? layered : ortho;
    c.expect(lo.ber + lo.ci_halfwidth < mid.ber - mid.ci_halfwidth,
             "lower reference interval overlaps the middle");
    c.expect(mid.ber + mid.ci_halfwidth < hi.ber - hi.ci_halfwidth,
             "upper reference interval overlaps the middle");
    return c.ok ? "" : c.why.str();
}

std::string c10_worker_determinism() {
    Check c;
    SimulationConfig cfg;
    cfg.code = "un2_reduced";
    cfg.receive_antennas = 2;
    cfg.plan = plan_for("un2_reduced");
    cfg.snr_db = {8.0, 12.0};
    cfg.target_bit_errors = 40;
    cfg.max_trials = 20000;
    cfg.seed = 5;
    cfg.workers = 1;
    auto r1 = ber_csv(run_ber_sweep(cfg));
    auto r1b = ber_csv(run_ber_sweep(cfg));
    cfg.workers = 3;
    auto r3 = ber_csv(run_ber_sweep(cfg));
    cfg.workers = 4;
    auto r4 = ber_csv(run_ber_sweep(cfg));
    c.expect(r1 == r1b, "same config twice differs");
    c.expect(r1 == r3, "worker count 3 changes the CSV");
    c.expect(r1 == r4, "worker count 4 changes the CSV");
    return c.ok ? "" : c.why.str();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        double budget_s;  // 0 = no runtime budget
        std::function<std::string()> fn;
    };
    const Criterion criteria[] = {
        {1, "unbalanced construction spans the frozen 2x4 second group", 1.0,
         c1_construction_fixture},
        {2, "constraint-matrix rank identities on random seeds", 30.0,
         c2_constraint_rank_identities},
        {3, "builtin fixtures verify; stacked halves stay cross-orthogonal", 0.0,
         c3_verifier_suite},
        {4, "decoding complexity orders match the reference systems", 0.0, c4_complexity_tables},
        {5, "rate ceilings for the reference shapes", 0.0, c5_rate_formulas},
        {6, "group decoder matches exhaustive search on noisy trials", 120.0,
         c6_decoder_equivalence},
        {7, "direct and matrix receive paths agree; cross-group columns orthogonal", 0.0,
         c7_real_equivalent_consistency},
        {8, "reference rotation angles certify full diversity", 60.0, c8_diversity_certification},
        {9, "BER: silent without noise, monotone, ordered between references", 600.0,
         c9_ber_properties},
        {10, "CSV output is invariant to the worker count", 0.0, c10_worker_determinism},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        double t0 = now_s();
        std::string why;
        try {
            why = cr.fn();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double dt = now_s() - t0;
        if (why.empty() && cr.budget_s > 0 && dt > cr.budget_s) {
            std::ostringstream b;
            b << "over budget: " << dt << "s > " << cr.budget_s << "s";
            why = b.str();
        }
        bool pass = why.empty();
        failures += !pass;
        std::printf("%s %2d %s [%.2fs]%s%s\n", pass ? "PASS" : "FAIL", cr.id, cr.label, dt,
                    pass ? "" : " - ", why.c_str());
    }
    return failures == 0 ? 0 : 1;
}
