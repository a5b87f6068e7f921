#pragma once

// Bijections between complex matrices and flat real vectors, plus the
// quasi-orthogonality constraint matrix builder. Layout conventions are load
// bearing: the constraint matrix's nullspace is read back through map_g_inv,
// so both must agree on ordering. See each function's comment.

#include "gdstbc/exact.hpp"

namespace gdstbc {

// e: complex vector (c_1..c_T) -> (Re c_1, Im c_1, ..., Re c_T, Im c_T).
std::vector<Rational> map_e(std::span<const ExactComplex> c);

// g: stacked real form [Y^R; Y^I] (2T x N) -> real vector of length 2TN.
// Column-major over columns n; within a column, time-major (Re, Im) pairs:
// (y^R_1n, y^I_1n, ..., y^R_Tn, y^I_Tn).
std::vector<Rational> map_g(const ExactRealMatrix& s);

// g^-1: real vector of length 2TN -> T x N complex matrix.
ExactComplexMatrix map_g_inv(std::span<const Rational> v, std::size_t t_len, std::size_t n_len);

// Constraint matrix f(C), size N^2 x 2TN, for a T x N seed C. A vector y
// satisfies f(C)*y = 0 iff Y = g^-1(y) solves C^H Y + Y^H C = 0. Row layout:
// first the N diagonal rows (e(c_n) in block-column n), then for each column
// pair n < i the two rows (e(c_i) in block n, e(c_n) in block i) and
// (e(-j c_i) in block n, -e(-j c_n) in block i), pairs ordered n-major.
ExactRealMatrix build_f(const ExactComplexMatrix& c);

}  // namespace gdstbc
