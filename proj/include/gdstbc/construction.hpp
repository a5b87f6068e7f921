#pragma once

// Code construction. The unbalanced route picks a full-rank seed matrix as
// the lone first-group member, builds the quasi-orthogonality constraint
// matrix f(seed), and turns a nullspace basis into second-group dispersion
// matrices; any nullspace vector's image satisfies the constraint against
// the seed by construction. The balanced route stacks two half-length
// unbalanced codes on top of each other so both groups end up the same size.

#include "gdstbc/code_model.hpp"

#include <stdexcept>

namespace gdstbc {

struct SeedMatrix {
    ExactComplexMatrix c;
};

struct ConstructionOptions {
    bool refine_full_rank = true;
    bool maximize_orthogonal = true;
    std::uint64_t recombination_seed = 1;
    std::size_t max_refine_attempts = 1000;
};

enum class RateRegime { t_ge_n, t_lt_n, t_ge_2n, t_lt_2n };

struct RatePrediction {
    Rational max_rate;
    std::size_t second_group_size = 0;
    RateRegime regime = RateRegime::t_ge_n;
};

// Raised when no small-integer recombination of a basis vector yields a
// full-rank dispersion matrix within max_refine_attempts.
struct RefinementError : std::runtime_error {
    std::size_t basis_index;
    explicit RefinementError(std::size_t idx)
        : std::runtime_error("refinement failed for basis vector " + std::to_string(idx)),
          basis_index(idx) {}
};

// Full-rank seed -> 2-group code: group 1 = {seed}, group 2 = images of a
// refined nullspace basis of f(seed). Throws std::invalid_argument on a
// rank-deficient seed, RefinementError when refinement gives up.
GroupDecodableCode construct_unbalanced(const SeedMatrix& seed,
                                        const ConstructionOptions& opts = {});

// Span-preserving cleanup of a nullspace basis: (a) recombine each vector
// with later ones until its dispersion image is full rank, (b) greedily
// reorder/recombine so a leading prefix of images is mutually
// quasi-orthogonal. A basis that already satisfies both comes back
// unchanged.
std::vector<std::vector<Rational>> refine_basis(const std::vector<std::vector<Rational>>& basis,
                                                std::size_t t, std::size_t n,
                                                const ConstructionOptions& opts = {});

// Stack two length-T/2 unbalanced codes (singleton first groups, equal
// shapes and symbol counts) into a balanced 2-group code over T durations.
// i, k are 1-based symbol indices in {2..L} selecting the sign-flipped
// extra stack in each group.
GroupDecodableCode construct_balanced(const GroupDecodableCode& code_a,
                                      const GroupDecodableCode& code_b, std::size_t i = 2,
                                      std::size_t k = 2);

// Rate ceiling of the unbalanced construction: (2TN - N^2 + 1)/(2T) when
// T >= N, else (T^2 + 1)/(2T).
RatePrediction max_rate_unbalanced(std::size_t t, std::size_t n);

// Rate ceiling of the balanced construction (T even): (TN - N^2 + 1)/T when
// T >= 2N, else (T^2 + 4)/(4T). second_group_size is the per-group symbol
// count. Throws std::invalid_argument on odd T.
RatePrediction max_rate_balanced(std::size_t t, std::size_t n);

}  // namespace gdstbc
