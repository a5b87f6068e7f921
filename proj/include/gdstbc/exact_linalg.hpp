#pragma once

// Exact elimination routines. Rank runs fraction-free (Bareiss) over
// arbitrary-precision integers after clearing denominators; nullspace comes
// from the reduced row echelon form over the rationals, with each basis
// vector scaled to integer entries. No tolerances anywhere.

#include "gdstbc/exact.hpp"

namespace gdstbc {

// Rank of a rational matrix, fraction-free over cpp_int.
std::size_t rank(const ExactRealMatrix& m);

// Rank over the Gaussian rationals (exact complex elimination).
std::size_t rank(const ExactComplexMatrix& m);

// Determinant of a square rational matrix (Bareiss).
Rational det(const ExactRealMatrix& m);

// Reduced row echelon form; pivot column indices appended to *pivots if given.
ExactRealMatrix rref(const ExactRealMatrix& m, std::vector<std::size_t>* pivots = nullptr);

// Right nullspace basis of m. Each vector has integer entries (LCM-scaled),
// is nonzero, and satisfies m*v = 0 exactly. Size = cols - rank(m).
std::vector<std::vector<Rational>> nullspace(const ExactRealMatrix& m);

}  // namespace gdstbc
