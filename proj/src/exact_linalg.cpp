#include "gdstbc/exact_linalg.hpp"

#include <boost/multiprecision/integer.hpp>

namespace gdstbc {

namespace {

// Clear denominators row by row; row scaling leaves rank and det-sign alone
// (det callers account for the scale separately).
std::vector<Int> integer_rows(const ExactRealMatrix& m, Rational* scale = nullptr) {
    std::vector<Int> w(m.rows * m.cols);
    Rational s = 1;
    for (std::size_t r = 0; r < m.rows; ++r) {
        Int l = 1;
        for (std::size_t c = 0; c < m.cols; ++c)
            l = boost::multiprecision::lcm(l, denominator(m.at(r, c)));
        for (std::size_t c = 0; c < m.cols; ++c) {
            const Rational& q = m.at(r, c);
            w[r * m.cols + c] = numerator(q) * (l / denominator(q));
        }
        s *= Rational(1, l);
    }
    if (scale) *scale = s;
    return w;
}

// Bareiss fraction-free elimination on an integer working copy. Returns the
// number of pivots; if det_out is given the matrix must be square and the
// final pivot equals the determinant (up to row-swap sign, folded in here).
std::size_t bareiss(std::vector<Int>& w, std::size_t rows, std::size_t cols, Int* det_out) {
    Int prev = 1;
    int sign = 1;
    std::size_t pr = 0;  // pivot row
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t sel = pr;
        while (sel < rows && w[sel * cols + pc] == 0) ++sel;
        if (sel == rows) continue;  // free column
        if (sel != pr) {
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(w[sel * cols + c], w[pr * cols + c]);
            sign = -sign;
        }
        const Int pivot = w[pr * cols + pc];
        for (std::size_t r = pr + 1; r < rows; ++r) {
            const Int head = w[r * cols + pc];
            for (std::size_t c = pc; c < cols; ++c)
                w[r * cols + c] = (w[r * cols + c] * pivot - head * w[pr * cols + c]) / prev;
        }
        prev = pivot;
        ++pr;
    }
    if (det_out) *det_out = (pr == rows && rows == cols) ? Int(sign) * prev : Int(0);
    return pr;
}

}  // namespace

std::size_t rank(const ExactRealMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    std::vector<Int> w = integer_rows(m);
    return bareiss(w, m.rows, m.cols, nullptr);
}

Rational det(const ExactRealMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: matrix not square");
    if (m.rows == 0) return 1;
    Rational scale;
    std::vector<Int> w = integer_rows(m, &scale);
    Int d;
    bareiss(w, m.rows, m.cols, &d);
    return Rational(d) * scale;
}

std::size_t rank(const ExactComplexMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    ExactComplexMatrix w = m;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < w.cols && pr < w.rows; ++pc) {
        std::size_t sel = pr;
        while (sel < w.rows && w.at(sel, pc).is_zero()) ++sel;
        if (sel == w.rows) continue;
        if (sel != pr)
            for (std::size_t c = 0; c < w.cols; ++c) std::swap(w.at(sel, c), w.at(pr, c));
        const ExactComplex pivot = w.at(pr, pc);
        for (std::size_t r = pr + 1; r < w.rows; ++r) {
            if (w.at(r, pc).is_zero()) continue;
            const ExactComplex f = w.at(r, pc) / pivot;
            for (std::size_t c = pc; c < w.cols; ++c)
                w.at(r, c) = w.at(r, c) - f * w.at(pr, c);
        }
        ++pr;
    }
    return pr;
}

ExactRealMatrix rref(const ExactRealMatrix& m, std::vector<std::size_t>* pivots) {
    ExactRealMatrix w = m;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < w.cols && pr < w.rows; ++pc) {
        std::size_t sel = pr;
        while (sel < w.rows && w.at(sel, pc) == 0) ++sel;
        if (sel == w.rows) continue;
        if (sel != pr)
            for (std::size_t c = 0; c < w.cols; ++c) std::swap(w.at(sel, c), w.at(pr, c));
        const Rational pivot = w.at(pr, pc);
        for (std::size_t c = pc; c < w.cols; ++c) w.at(pr, c) /= pivot;
        for (std::size_t r = 0; r < w.rows; ++r) {
            if (r == pr || w.at(r, pc) == 0) continue;
            const Rational f = w.at(r, pc);
            for (std::size_t c = pc; c < w.cols; ++c) w.at(r, c) -= f * w.at(pr, c);
        }
        if (pivots) pivots->push_back(pc);
        ++pr;
    }
    return w;
}

std::vector<std::vector<Rational>> nullspace(const ExactRealMatrix& m) {
    std::vector<std::size_t> pivots;
    ExactRealMatrix r = rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(m.cols);
        v[fc] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, fc);
        // Scale to integer entries: multiply by LCM of denominators.
        Int l = 1;
        for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
        if (l != 1)
            for (auto& x : v) x *= Rational(l);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace gdstbc
