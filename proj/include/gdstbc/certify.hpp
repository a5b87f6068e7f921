#pragma once

// Finite-codebook diversity certification and constellation-rotation
// search. The certificate enumerates every distinct codeword pair, forms
// the difference Gram on its smaller side (N x N when T >= N, else T x T),
// and reports the worst numerical rank plus the smallest determinant among
// full-rank pairs. Rotation search runs a deterministic coordinate-wise
// grid scan per decoding cell; difference pairs supported on one cell are
// unaffected by the other cells' angles, so cells optimize independently.

#include "gdstbc/transceiver.hpp"

#include <numbers>

namespace gdstbc {

struct DiversityCertificate {
    std::size_t min_rank = 0;
    double min_det = 0.0;   // smallest Gram determinant among full-rank pairs
    std::size_t pairs = 0;  // distinct codeword pairs examined
    bool full_diversity = false;  // min_rank == min(T, N)
};

// Guard: at most 2^16 codewords. Eigenvalues below 1e-8 of the largest are
// treated as zero when counting rank. global_phase multiplies the whole
// codebook by e^{j phase}, which must not change the certificate.
DiversityCertificate certify_full_diversity(const GroupDecodableCode& code,
                                            const SymbolPlan& plan,
                                            double global_phase = 0.0);

enum class RotationMetric { min_det, min_rank_then_det };

struct RotationSearchConfig {
    double step = std::numbers::pi / 400.0;  // grid over [0, pi)
    RotationMetric metric = RotationMetric::min_rank_then_det;
    // Decoding cells to scan, in order; empty means all, ascending.
    std::vector<std::size_t> cell_order;
};

struct RotationSearchResult {
    SymbolPlan plan;            // input plan with the winning angles applied
    DiversityCertificate cert;  // full-codebook certificate at those angles
};

// Coordinate-wise search: within each cell, rotatable sources are scanned
// in ascending first-symbol order and angles ascend from zero, moving only
// on strict improvement, so zero rotation survives whenever it is optimal.
// PAM sources carry a single real symbol and are never rotated.
RotationSearchResult optimize_rotations(const GroupDecodableCode& code,
                                        const SymbolPlan& plan,
                                        const RotationSearchConfig& cfg = {});

// Eigenvalues of a Hermitian d x d matrix (row-major), descending, by
// cyclic Jacobi rotations; closed forms below d = 3.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a,
                                          std::size_t d);

}  // namespace gdstbc
