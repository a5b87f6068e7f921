#include "gdstbc/mappings.hpp"

namespace gdstbc {

std::vector<Rational> map_e(std::span<const ExactComplex> c) {
    std::vector<Rational> v;
    v.reserve(2 * c.size());
    for (const auto& x : c) {
        v.push_back(x.re);
        v.push_back(x.im);
    }
    return v;
}

std::vector<Rational> map_g(const ExactRealMatrix& s) {
    if (s.rows % 2 != 0) throw std::invalid_argument("map_g: expected 2T rows");
    const std::size_t t_len = s.rows / 2;
    std::vector<Rational> v(2 * t_len * s.cols);
    for (std::size_t n = 0; n < s.cols; ++n)
        for (std::size_t t = 0; t < t_len; ++t) {
            v[n * 2 * t_len + 2 * t] = s.at(t, n);              // Re from top half
            v[n * 2 * t_len + 2 * t + 1] = s.at(t_len + t, n);  // Im from bottom half
        }
    return v;
}

ExactComplexMatrix map_g_inv(std::span<const Rational> v, std::size_t t_len, std::size_t n_len) {
    if (v.size() != 2 * t_len * n_len) throw std::invalid_argument("map_g_inv: length mismatch");
    ExactComplexMatrix y(t_len, n_len);
    for (std::size_t n = 0; n < n_len; ++n)
        for (std::size_t t = 0; t < t_len; ++t)
            y.at(t, n) = {v[n * 2 * t_len + 2 * t], v[n * 2 * t_len + 2 * t + 1]};
    return y;
}

ExactRealMatrix build_f(const ExactComplexMatrix& c) {
    const std::size_t t_len = c.rows, n_len = c.cols;
    const std::size_t bw = 2 * t_len;  // block-column width

    // Column n of C as e(c_n) and e(-j c_n).
    auto col_e = [&](std::size_t n, bool primed) {
        std::vector<Rational> v(bw);
        for (std::size_t t = 0; t < t_len; ++t) {
            const ExactComplex& x = c.at(t, n);
            if (!primed) {
                v[2 * t] = x.re;
                v[2 * t + 1] = x.im;
            } else {  // -j*(a+bj) = b - aj
                v[2 * t] = x.im;
                v[2 * t + 1] = -x.re;
            }
        }
        return v;
    };

    ExactRealMatrix f(n_len * n_len, bw * n_len);
    auto put = [&](std::size_t row, std::size_t block, const std::vector<Rational>& v, bool neg) {
        for (std::size_t k = 0; k < bw; ++k) f.at(row, block * bw + k) = neg ? -v[k] : v[k];
    };

    std::size_t row = 0;
    for (std::size_t n = 0; n < n_len; ++n) put(row++, n, col_e(n, false), false);
    for (std::size_t n = 0; n + 1 < n_len; ++n)
        for (std::size_t i = n + 1; i < n_len; ++i) {
            put(row, n, col_e(i, false), false);
            put(row, i, col_e(n, false), false);
            ++row;
            put(row, n, col_e(i, true), false);
            put(row, i, col_e(n, true), true);
            ++row;
        }
    return f;
}

}  // namespace gdstbc
