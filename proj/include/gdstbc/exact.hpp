#pragma once

// Exact rational and complex-rational matrix types used by the code
// construction and verification paths. All arithmetic here is tolerance-free;
// floating point never enters these types.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdstbc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // canonical: reduced, den > 0

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Gaussian rational: re + j*im. Forms a field, so exact elimination works.
struct ExactComplex {
    Rational re;
    Rational im;

    ExactComplex() = default;
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    ExactComplex conj() const { return {re, -im}; }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ExactComplex operator*(const Rational& s, const ExactComplex& a) {
        return {s * a.re, s * a.im};
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("ExactComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Dense row-major matrix over the rationals.
struct ExactRealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;  // rows*cols entries

    ExactRealMatrix() = default;
    ExactRealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }
    friend bool operator==(const ExactRealMatrix& x, const ExactRealMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// Dense row-major matrix over the Gaussian rationals.
struct ExactComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<ExactComplex> a;

    ExactComplexMatrix() = default;
    ExactComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    ExactComplex& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const ExactComplex& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    ExactComplexMatrix conjugate_transpose() const {
        ExactComplexMatrix h(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) h.at(c, r) = at(r, c).conj();
        return h;
    }
    friend ExactComplexMatrix operator*(const ExactComplexMatrix& x, const ExactComplexMatrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("ExactComplexMatrix: shape mismatch");
        ExactComplexMatrix p(x.rows, y.cols);
        for (std::size_t r = 0; r < x.rows; ++r)
            for (std::size_t k = 0; k < x.cols; ++k) {
                const ExactComplex& xv = x.at(r, k);
                if (xv.is_zero()) continue;
                for (std::size_t c = 0; c < y.cols; ++c)
                    p.at(r, c) = p.at(r, c) + xv * y.at(k, c);
            }
        return p;
    }
    friend ExactComplexMatrix operator+(const ExactComplexMatrix& x, const ExactComplexMatrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("ExactComplexMatrix: shape mismatch");
        ExactComplexMatrix s(x.rows, x.cols);
        for (std::size_t i = 0; i < x.a.size(); ++i) s.a[i] = x.a[i] + y.a[i];
        return s;
    }
    friend ExactComplexMatrix operator-(const ExactComplexMatrix& x) {
        ExactComplexMatrix s(x.rows, x.cols);
        for (std::size_t i = 0; i < x.a.size(); ++i) s.a[i] = -x.a[i];
        return s;
    }
    friend bool operator==(const ExactComplexMatrix& x, const ExactComplexMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// [Re(C); Im(C)] stacked vertically: T x N complex -> 2T x N real.
inline ExactRealMatrix stack_real_imag(const ExactComplexMatrix& c) {
    ExactRealMatrix s(2 * c.rows, c.cols);
    for (std::size_t r = 0; r < c.rows; ++r)
        for (std::size_t k = 0; k < c.cols; ++k) {
            s.at(r, k) = c.at(r, k).re;
            s.at(c.rows + r, k) = c.at(r, k).im;
        }
    return s;
}

}  // namespace gdstbc
