#pragma once

// Group-decodable linear code model: dispersion matrices X = sum_l s_l C_l
// over real symbols s_l, a partition of symbol indices into decoding groups,
// and the checks that make the partition legitimate: cross-group columns of
// the real equivalent channel are orthogonal iff every cross-group pair of
// dispersion matrices satisfies C_p^H C_q = -C_q^H C_p (the
// quasi-orthogonality constraint), and within-group stacked real forms must
// be linearly independent so symbols are individually recoverable.

#include "gdstbc/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gdstbc {

struct DispersionSet {
    std::size_t t_len = 0;  // symbol durations (rows)
    std::size_t n_tx = 0;   // transmit antennas (cols)
    std::vector<ExactComplexMatrix> mats;

    std::size_t num_symbols() const { return mats.size(); }
};

// Groups hold 0-based symbol indices; serialization renders them 1-based.
struct GroupPartition {
    std::vector<std::vector<std::size_t>> groups;
};

struct GroupDecodableCode {
    std::string name;
    DispersionSet dispersion;
    GroupPartition partition;

    std::size_t t_len() const { return dispersion.t_len; }
    std::size_t n_tx() const { return dispersion.n_tx; }
    std::size_t num_symbols() const { return dispersion.num_symbols(); }
};

struct VerificationReport {
    bool qoc_ok = false;
    bool independence_ok = false;
    std::vector<std::string> violations;
    std::size_t symbolwise_diversity = 0;
    Rational rate;

    bool ok() const { return qoc_ok && independence_ok; }
};

// C_p^H C_q + C_q^H C_p == 0, exactly.
bool qoc_satisfied(const ExactComplexMatrix& p, const ExactComplexMatrix& q);

// Stacked real forms [C^R; C^I], flattened, have full row rank.
bool linearly_independent(std::span<const ExactComplexMatrix> mats);

// Cross-group quasi-orthogonality plus within-group independence.
// Throws std::invalid_argument if the partition is not an exact cover.
VerificationReport verify_group_decodable(const GroupDecodableCode& code);

// Minimum rank over all dispersion matrices (0 for an empty set).
std::size_t symbolwise_diversity(const DispersionSet& d);

// L real symbols over T durations: R = L / (2T).
Rational code_rate(const GroupDecodableCode& code);

// Greedy maximal clique of mutually quasi-orthogonal symbols inside one
// group, seeded at the group's first index and scanned in index order.
std::vector<std::size_t> qoc_clique(const GroupDecodableCode& code, std::size_t group);

// Clique size of the largest group (ties broken by lowest group index).
std::size_t k_orthogonal(const GroupDecodableCode& code);

// Index (0-based) of the largest group, lowest index on ties.
std::size_t largest_group(const GroupDecodableCode& code);

// Decoding complexity order coefficient * 2^exponent for exhaustive search
// of L_max - K + 1 real symbols plus K - 1 scalar quantizations:
// coefficient = K, exponent = (L_max - K + 1) * b / (2R).
struct ComplexityOrder {
    std::size_t coefficient = 0;
    Rational exponent;
};
ComplexityOrder complexity_order(std::size_t l_max, std::size_t k, const Rational& b,
                                 const Rational& r);

// ceil(L / (2T)): receive antennas needed for the real equivalent channel to
// have at least as many rows as unknowns.
std::size_t min_receive_antennas(const GroupDecodableCode& code);

}  // namespace gdstbc
