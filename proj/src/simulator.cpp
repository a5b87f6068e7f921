#include "gdstbc/simulator.hpp"

#include "gdstbc/code_io.hpp"
#include "gdstbc/fixtures.hpp"
#include "gdstbc/rng.hpp"
#include "gdstbc/transceiver.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gdstbc {
namespace {

constexpr std::size_t kChunk = 256;  // trials per reduction unit
constexpr std::uint64_t kBuiltinSeed = 12345;

enum StreamRole : std::uint64_t { kChannel = 0, kNoise = 1, kBits = 2 };

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_fail(std::size_t line, const std::string& why) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + why);
}

std::uint64_t parse_u64(const std::string& v, std::size_t line) {
    char* end = nullptr;
    auto x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size()) config_fail(line, "bad integer '" + v + "'");
    return x;
}

double parse_double(const std::string& v, std::size_t line) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) config_fail(line, "bad number '" + v + "'");
    return x;
}

struct TrialWorkspace {
    Encoder enc;
    GroupDecoder dec;
    std::vector<std::vector<std::uint32_t>> label_to_point;  // per source
    std::size_t m_rx;
    double noise_scale;

    TrialWorkspace(const GroupDecodableCode& code, const SymbolPlan& plan,
                   std::size_t m, double nscale)
        : enc(code, plan), dec(code, plan), m_rx(m), noise_scale(nscale) {
        for (const Source& src : plan.sources) {
            std::vector<std::uint32_t> lut(src.constellation.size, 0);
            for (std::size_t p = 0; p < src.constellation.size; ++p)
                lut[src.constellation.labels[p]] = static_cast<std::uint32_t>(p);
            label_to_point.push_back(std::move(lut));
        }
    }

    // One block: fresh channel, fresh bits, fresh noise; returns bit errors.
    std::uint64_t run(std::uint64_t seed, std::size_t snr_idx, std::size_t trial,
                      double rho) const {
        const SymbolPlan& plan = enc.plan();
        const GroupDecodableCode& code = enc.code();
        double half = std::sqrt(0.5);

        CounterRng ch_rng(seed, derive_stream(snr_idx, trial, kChannel));
        ChannelRealization ch;
        ch.rho = rho;
        ch.htilde = FloatComplexMatrix(code.n_tx(), m_rx);
        for (auto& z : ch.htilde.a)
            z = {half * ch_rng.gaussian(), half * ch_rng.gaussian()};
        auto heq = enc.real_equivalent(ch);

        CounterRng bit_rng(seed, derive_stream(snr_idx, trial, kBits));
        std::vector<std::uint32_t> tx_labels(plan.sources.size());
        std::vector<double> s(plan.symbol_count, 0.0);
        for (std::size_t k = 0; k < plan.sources.size(); ++k) {
            const Source& src = plan.sources[k];
            tx_labels[k] =
                static_cast<std::uint32_t>(bit_rng.next_u64() & (src.constellation.size - 1));
            apply_point(src, label_to_point[k][tx_labels[k]], s);
        }

        CounterRng noise_rng(seed, derive_stream(snr_idx, trial, kNoise));
        double srho = std::sqrt(rho);
        std::vector<double> r(heq.h.rows, 0.0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            double acc = 0;
            for (std::size_t l = 0; l < plan.symbol_count; ++l)
                acc += heq.h.at(i, l) * s[l];
            r[i] = srho * acc + noise_scale * half * noise_rng.gaussian();
        }

        auto out = dec.decode(heq, r);
        std::uint64_t errors = 0;
        for (std::size_t k = 0; k < plan.sources.size(); ++k) {
            std::uint32_t rx = plan.sources[k].constellation.labels[out.points[k]];
            errors += std::popcount(tx_labels[k] ^ rx);
        }
        return errors;
    }
};

}  // namespace

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GDSTBC_SEED")) {
        char* end = nullptr;
        auto x = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return x;
        throw std::invalid_argument("GDSTBC_SEED is not an integer");
    }
    return kBuiltinSeed;
}

GroupDecodableCode resolve_code(const std::string& name_or_path) {
    for (const auto& name : builtin_code_names())
        if (name == name_or_path) return builtin_code(name);
    return load_code_file(name_or_path);
}

SimulationConfig parse_simulation_config(const std::string& text) {
    SimulationConfig cfg;
    std::istringstream ss(text);
    std::string raw;
    std::size_t lineno = 0;
    bool saw_snr = false;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) config_fail(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "code") {
            cfg.code = val;
        } else if (key == "receive_antennas") {
            cfg.receive_antennas = static_cast<std::size_t>(parse_u64(val, lineno));
        } else if (key == "plan") {
            cfg.plan = val;
        } else if (key == "snr_db") {
            cfg.snr_db.clear();
            std::stringstream fields(val);
            std::string f;
            while (std::getline(fields, f, ','))
                cfg.snr_db.push_back(parse_double(trim(f), lineno));
            saw_snr = true;
        } else if (key == "target_bit_errors") {
            cfg.target_bit_errors = static_cast<std::size_t>(parse_u64(val, lineno));
        } else if (key == "max_trials") {
            cfg.max_trials = static_cast<std::size_t>(parse_u64(val, lineno));
        } else if (key == "seed") {
            cfg.seed = parse_u64(val, lineno);
        } else if (key == "workers") {
            cfg.workers = static_cast<std::size_t>(parse_u64(val, lineno));
        } else if (key == "zero_noise") {
            if (val == "true" || val == "1")
                cfg.zero_noise = true;
            else if (val == "false" || val == "0")
                cfg.zero_noise = false;
            else
                config_fail(lineno, "zero_noise must be true or false");
        } else {
            config_fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (cfg.code.empty()) throw std::invalid_argument("config is missing 'code'");
    if (cfg.plan.empty()) throw std::invalid_argument("config is missing 'plan'");
    if (!saw_snr) throw std::invalid_argument("config is missing 'snr_db'");
    return cfg;
}

std::string format_simulation_config(const SimulationConfig& cfg) {
    std::ostringstream out;
    out << "code = " << cfg.code << '\n';
    out << "receive_antennas = " << cfg.receive_antennas << '\n';
    out << "plan = " << cfg.plan << '\n';
    out << "snr_db = ";
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%g", cfg.snr_db[i]);
        out << (i ? "," : "") << buf;
    }
    out << '\n';
    out << "target_bit_errors = " << cfg.target_bit_errors << '\n';
    out << "max_trials = " << cfg.max_trials << '\n';
    if (cfg.seed) out << "seed = " << *cfg.seed << '\n';
    out << "workers = " << cfg.workers << '\n';
    out << "zero_noise = " << (cfg.zero_noise ? "true" : "false") << '\n';
    return out.str();
}

BerResult run_ber_sweep(const SimulationConfig& cfg) {
    if (cfg.snr_db.empty()) throw std::invalid_argument("snr list is empty");
    if (cfg.target_bit_errors < 1)
        throw std::invalid_argument("target_bit_errors must be at least 1");
    if (cfg.max_trials < 1) throw std::invalid_argument("max_trials must be at least 1");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be at least 1");

    GroupDecodableCode code = resolve_code(cfg.code);
    SymbolPlan plan = parse_plan(cfg.plan, code.num_symbols());
    if (cfg.receive_antennas < min_receive_antennas(code))
        throw std::invalid_argument("too few receive antennas for this code");

    TrialWorkspace ws(code, plan, cfg.receive_antennas, cfg.zero_noise ? 0.0 : 1.0);
    std::uint64_t seed = cfg.seed ? *cfg.seed : default_seed();

    BerResult result;
    result.seed = seed;
    result.code_hash = fnv1a64(serialize_code(code));
    result.bits_per_block = plan.total_bits();
    SimulationConfig echo = cfg;
    echo.seed = seed;
    result.config_echo = format_simulation_config(echo);

    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
        auto t0 = std::chrono::steady_clock::now();
        double rho = std::pow(10.0, cfg.snr_db[si] / 10.0);
        std::uint64_t cum_errors = 0;
        std::size_t done = 0;
        bool stop = false;
        while (!stop && done < cfg.max_trials) {
            // one wave: `workers` chunks computed in parallel, consumed in order
            std::vector<std::pair<std::size_t, std::size_t>> ranges;
            std::size_t base = done;
            for (std::size_t w = 0; w < cfg.workers && base < cfg.max_trials; ++w) {
                std::size_t end = std::min(base + kChunk, cfg.max_trials);
                ranges.emplace_back(base, end);
                base = end;
            }
            std::vector<std::uint64_t> errs(ranges.size(), 0);
            std::vector<std::exception_ptr> oops(ranges.size());
            auto work = [&](std::size_t w) {
                try {
                    std::uint64_t acc = 0;
                    for (std::size_t t = ranges[w].first; t < ranges[w].second; ++t)
                        acc += ws.run(seed, si, t, rho);
                    errs[w] = acc;
                } catch (...) {
                    oops[w] = std::current_exception();
                }
            };
            if (ranges.size() == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < ranges.size(); ++w)
                    pool.emplace_back(work, w);
                for (auto& th : pool) th.join();
            }
            for (std::size_t w = 0; w < ranges.size(); ++w) {
                if (oops[w]) std::rethrow_exception(oops[w]);
                cum_errors += errs[w];
                done = ranges[w].second;
                if (cum_errors >= cfg.target_bit_errors) {
                    stop = true;
                    break;
                }
            }
        }
        SnrPoint pt;
        pt.snr_db = cfg.snr_db[si];
        pt.trials = done;
        pt.bit_errors = cum_errors;
        double nbits = static_cast<double>(done) * static_cast<double>(result.bits_per_block);
        pt.ber = static_cast<double>(cum_errors) / nbits;
        double p = std::clamp(pt.ber, 0.0, 1.0);
        pt.ci_halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / nbits);
        pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.points.push_back(pt);
    }

    for (std::size_t i = 0; i + 1 < result.points.size(); ++i)
        if (result.points[i + 1].ber > result.points[i].ber)
            result.monotone_nonincreasing = false;
    return result;
}

std::string ber_csv(const BerResult& r) {
    std::string out = "snr_db,trials,bit_errors,ber,ci_halfwidth\n";
    char buf[160];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof buf, "%g,%zu,%llu,%.9e,%.9e\n", p.snr_db, p.trials,
                      static_cast<unsigned long long>(p.bit_errors), p.ber,
                      p.ci_halfwidth);
        out += buf;
    }
    return out;
}

std::string ber_json(const BerResult& r) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["code_hash"] = r.code_hash;
    j["bits_per_block"] = r.bits_per_block;
    j["monotone_nonincreasing"] = r.monotone_nonincreasing;
    j["config"] = r.config_echo;
    j["points"] = nlohmann::json::array();
    for (const auto& p : r.points)
        j["points"].push_back({{"snr_db", p.snr_db},
                               {"trials", p.trials},
                               {"bit_errors", p.bit_errors},
                               {"ber", p.ber},
                               {"ci_halfwidth", p.ci_halfwidth},
                               {"seconds", p.seconds}});
    return j.dump(2) + "\n";
}

}  // namespace gdstbc
