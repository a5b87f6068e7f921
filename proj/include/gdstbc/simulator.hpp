#pragma once

// Monte-Carlo BER engine. Every trial draws its channel, noise, and data
// bits from counter-based RNG streams keyed by (seed, snr index, trial
// index, role), so results depend only on the seed, never on scheduling.
// Trials run in fixed-size chunks consumed in trial order; a sweep point
// stops at the first chunk boundary where the cumulative bit errors reach
// the target, which makes the output invariant to the worker count.

#include "gdstbc/code_model.hpp"
#include "gdstbc/constellation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gdstbc {

struct SimulationConfig {
    std::string code;  // builtin fixture name or path to a code file
    std::size_t receive_antennas = 1;
    std::string plan;  // symbol plan text
    std::vector<double> snr_db;
    std::size_t target_bit_errors = 200;
    std::size_t max_trials = 1000000;
    std::optional<std::uint64_t> seed;  // unset: environment or builtin default
    std::size_t workers = 1;
    bool zero_noise = false;  // debug: scale the noise to zero
};

struct SnrPoint {
    double snr_db = 0.0;
    std::size_t trials = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double ci_halfwidth = 0.0;  // 95%, normal approximation
    double seconds = 0.0;
};

struct BerResult {
    std::vector<SnrPoint> points;
    std::uint64_t seed = 0;
    std::uint64_t code_hash = 0;
    std::size_t bits_per_block = 0;
    bool monotone_nonincreasing = true;
    std::string config_echo;
};

// Builtin constant unless the GDSTBC_SEED environment variable overrides it.
std::uint64_t default_seed();

// Builtin fixture name, otherwise a path to a code file.
GroupDecodableCode resolve_code(const std::string& name_or_path);

// key = value lines; '#' comments and blanks ignored; unknown keys rejected.
// Keys: code, receive_antennas, plan, snr_db (comma separated),
// target_bit_errors, max_trials, seed, workers, zero_noise.
SimulationConfig parse_simulation_config(const std::string& text);
std::string format_simulation_config(const SimulationConfig& cfg);

BerResult run_ber_sweep(const SimulationConfig& cfg);

// Column order is fixed: snr_db,trials,bit_errors,ber,ci_halfwidth.
std::string ber_csv(const BerResult& r);
std::string ber_json(const BerResult& r);

}  // namespace gdstbc
