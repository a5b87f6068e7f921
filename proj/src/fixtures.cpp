#include "gdstbc/fixtures.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gdstbc {

namespace {

ExactComplexMatrix cm(std::size_t rows, std::size_t cols,
                      std::initializer_list<std::pair<int, int>> entries) {
    ExactComplexMatrix m(rows, cols);
    std::size_t i = 0;
    for (auto [re, im] : entries) m.a[i++] = ExactComplex(re, im);
    return m;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {  // [lo, hi)
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

GroupDecodableCode make(std::string name, std::size_t t, std::size_t n,
                        std::vector<ExactComplexMatrix> mats,
                        std::vector<std::vector<std::size_t>> groups) {
    GroupDecodableCode c;
    c.name = std::move(name);
    c.dispersion = {t, n, std::move(mats)};
    c.partition.groups = std::move(groups);
    return c;
}

GroupDecodableCode un2() {
    return make("un2", 2, 4,
                {cm(2, 4, {{1,0},{1,0},{0,0},{0,0}, {1,0},{-1,0},{0,0},{0,0}}),
                 cm(2, 4, {{-1,0},{1,0},{0,0},{0,0}, {1,0},{1,0},{0,0},{0,0}}),
                 cm(2, 4, {{0,1},{0,-1},{0,0},{0,0}, {0,1},{0,1},{0,0},{0,0}}),
                 cm(2, 4, {{0,1},{0,1},{0,0},{0,0}, {0,-1},{0,1},{0,0},{0,0}}),
                 cm(2, 4, {{0,1},{0,1},{0,0},{0,0}, {0,1},{0,-1},{0,0},{0,0}})},
                {{0}, range(1, 5)});
}

GroupDecodableCode un2_reduced() {
    return make("un2_reduced", 2, 2,
                {cm(2, 2, {{1,0},{1,0}, {1,0},{-1,0}}),
                 cm(2, 2, {{-1,0},{1,0}, {1,0},{1,0}}),
                 cm(2, 2, {{0,1},{0,-1}, {0,1},{0,1}}),
                 cm(2, 2, {{0,1},{0,1}, {0,-1},{0,1}}),
                 cm(2, 2, {{0,1},{0,1}, {0,1},{0,-1}})},
                {{0}, range(1, 5)});
}

GroupDecodableCode un4() {
    std::vector<ExactComplexMatrix> mats;
    mats.push_back(cm(4, 4, {{1,0},{0,0},{0,0},{0,0},
                             {0,0},{1,0},{0,0},{0,0},
                             {0,0},{0,0},{1,0},{0,0},
                             {0,0},{0,0},{0,0},{1,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{-1,0},{0,0},
                             {0,0},{0,0},{0,0},{-1,0},
                             {1,0},{0,0},{0,0},{0,0},
                             {0,0},{1,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,1},{0,0},
                             {0,0},{0,0},{0,0},{0,-1},
                             {0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,-1},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,0},{1,0},
                             {0,0},{0,0},{-1,0},{0,0},
                             {0,0},{1,0},{0,0},{0,0},
                             {-1,0},{0,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,0},{0,1},
                             {0,0},{0,0},{0,1},{0,0},
                             {0,0},{0,1},{0,0},{0,0},
                             {0,1},{0,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,1},{0,0},{0,0},
                             {0,0},{0,0},{0,-1},{0,0},
                             {0,0},{0,0},{0,0},{0,-1}}));
    mats.push_back(cm(4, 4, {{0,0},{1,0},{0,0},{0,0},
                             {-1,0},{0,0},{0,0},{0,0},
                             {0,0},{0,0},{0,0},{1,0},
                             {0,0},{0,0},{-1,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,1},{0,0},{0,0},
                             {0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,0},{0,0},{0,-1},
                             {0,0},{0,0},{0,-1},{0,0}}));
    mats.push_back(cm(4, 4, {{0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,1},{0,0},{0,0},
                             {0,0},{0,0},{0,1},{0,0},
                             {0,0},{0,0},{0,0},{0,1}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{1,0},{0,0},
                             {0,0},{0,0},{0,0},{-1,0},
                             {-1,0},{0,0},{0,0},{0,0},
                             {0,0},{1,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,1},{0,0},
                             {0,0},{0,0},{0,0},{0,1},
                             {0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,1},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,-1},{0,0},{0,0},
                             {0,0},{0,0},{0,-1},{0,0},
                             {0,0},{0,0},{0,0},{0,1}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,0},{1,0},
                             {0,0},{0,0},{1,0},{0,0},
                             {0,0},{-1,0},{0,0},{0,0},
                             {-1,0},{0,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{1,0},{0,0},{0,0},
                             {-1,0},{0,0},{0,0},{0,0},
                             {0,0},{0,0},{0,0},{-1,0},
                             {0,0},{0,0},{1,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,1},{0,0},{0,0},
                             {0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,0},{0,0},{0,1},
                             {0,0},{0,0},{0,1},{0,0}}));
    mats.push_back(cm(4, 4, {{0,0},{0,0},{0,0},{0,1},
                             {0,0},{0,0},{0,-1},{0,0},
                             {0,0},{0,-1},{0,0},{0,0},
                             {0,1},{0,0},{0,0},{0,0}}));
    mats.push_back(cm(4, 4, {{0,1},{0,0},{0,0},{0,0},
                             {0,0},{0,-1},{0,0},{0,0},
                             {0,0},{0,0},{0,1},{0,0},
                             {0,0},{0,0},{0,0},{0,-1}}));
    return make("un4", 4, 4, std::move(mats), {{0}, range(1, 17)});
}

GroupDecodableCode gpp3() {
    return make("gpp3", 3, 2,
                {cm(3, 2, {{1,0},{0,0}, {0,0},{1,0}, {0,0},{0,0}}),
                 cm(3, 2, {{0,1},{0,0}, {0,0},{0,-1}, {0,0},{0,0}}),
                 cm(3, 2, {{0,0},{1,0}, {-1,0},{0,0}, {0,0},{0,0}}),
                 cm(3, 2, {{0,0},{0,1}, {0,1},{0,0}, {0,0},{0,0}}),
                 cm(3, 2, {{0,1},{0,0}, {0,0},{0,1}, {0,0},{0,0}}),
                 cm(3, 2, {{0,1},{0,0}, {0,0},{0,-1}, {0,0},{1,0}}),
                 cm(3, 2, {{0,0},{1,0}, {-1,0},{0,0}, {1,0},{0,0}}),
                 cm(3, 2, {{0,0},{0,1}, {0,1},{0,0}, {0,1},{0,0}}),
                 cm(3, 2, {{0,1},{0,0}, {0,0},{0,1}, {0,0},{0,1}})},
                {{0}, range(1, 9)});
}

// Vertical stacks of two half-length codes, ordered so the codeword matrix
// expands in symbol order.
GroupDecodableCode b4() {
    return make("b4", 4, 4,
                {cm(4, 4, {{1,0},{1,0},{0,0},{0,0}, {1,0},{-1,0},{0,0},{0,0},
                           {0,0},{0,0},{0,1},{0,1}, {0,0},{0,0},{0,1},{0,-1}}),
                 cm(4, 4, {{1,0},{1,0},{0,0},{0,0}, {1,0},{-1,0},{0,0},{0,0},
                           {0,0},{0,0},{0,1},{0,-1}, {0,0},{0,0},{0,1},{0,1}}),
                 cm(4, 4, {{1,0},{1,0},{0,0},{0,0}, {1,0},{-1,0},{0,0},{0,0},
                           {0,0},{0,0},{0,1},{0,1}, {0,0},{0,0},{0,-1},{0,1}}),
                 cm(4, 4, {{1,0},{1,0},{0,0},{0,0}, {1,0},{-1,0},{0,0},{0,0},
                           {0,0},{0,0},{-1,0},{1,0}, {0,0},{0,0},{1,0},{1,0}}),
                 cm(4, 4, {{-1,0},{-1,0},{0,0},{0,0}, {-1,0},{1,0},{0,0},{0,0},
                           {0,0},{0,0},{-1,0},{1,0}, {0,0},{0,0},{1,0},{1,0}}),
                 cm(4, 4, {{0,1},{0,1},{0,0},{0,0}, {0,1},{0,-1},{0,0},{0,0},
                           {0,0},{0,0},{1,0},{1,0}, {0,0},{0,0},{1,0},{-1,0}}),
                 cm(4, 4, {{0,1},{0,-1},{0,0},{0,0}, {0,1},{0,1},{0,0},{0,0},
                           {0,0},{0,0},{1,0},{1,0}, {0,0},{0,0},{1,0},{-1,0}}),
                 cm(4, 4, {{0,1},{0,1},{0,0},{0,0}, {0,-1},{0,1},{0,0},{0,0},
                           {0,0},{0,0},{1,0},{1,0}, {0,0},{0,0},{1,0},{-1,0}}),
                 cm(4, 4, {{-1,0},{1,0},{0,0},{0,0}, {1,0},{1,0},{0,0},{0,0},
                           {0,0},{0,0},{1,0},{1,0}, {0,0},{0,0},{1,0},{-1,0}}),
                 cm(4, 4, {{-1,0},{1,0},{0,0},{0,0}, {1,0},{1,0},{0,0},{0,0},
                           {0,0},{0,0},{-1,0},{-1,0}, {0,0},{0,0},{-1,0},{1,0}})},
                {range(0, 5), range(5, 10)});
}

GroupDecodableCode alamouti() {
    return make("alamouti", 2, 2,
                {cm(2, 2, {{1,0},{0,0}, {0,0},{1,0}}),
                 cm(2, 2, {{0,1},{0,0}, {0,0},{0,-1}}),
                 cm(2, 2, {{0,0},{1,0}, {-1,0},{0,0}}),
                 cm(2, 2, {{0,0},{0,1}, {0,1},{0,0}})},
                {{0}, {1}, {2}, {3}});
}

GroupDecodableCode blast2() {
    return make("blast2", 1, 2,
                {cm(1, 2, {{1,0},{0,0}}), cm(1, 2, {{0,1},{0,0}}),
                 cm(1, 2, {{0,0},{1,0}}), cm(1, 2, {{0,0},{0,1}})},
                {{0, 1, 2, 3}});
}

// Full-rate 2x2 code built on the golden ratio; irrational entries are
// rounded to the nearest double (exactly representable as dyadic rationals).
// Decoded jointly, so it forms a single group.
GroupDecodableCode golden() {
    const double r5 = std::sqrt(5.0);
    const double th = (1.0 + r5) / 2.0, tb = (1.0 - r5) / 2.0;
    const std::complex<double> al(1.0, 1.0 - th), ab(1.0, 1.0 - tb);
    const std::complex<double> jj(0.0, 1.0);
    auto base = [&](std::complex<double> tl, std::complex<double> tr,
                    std::complex<double> bl, std::complex<double> br) {
        ExactComplexMatrix m(2, 2);
        auto set = [&](std::size_t r, std::size_t c, std::complex<double> v) {
            v /= r5;
            m.at(r, c) = {Rational(v.real()), Rational(v.imag())};
        };
        set(0, 0, tl);
        set(0, 1, tr);
        set(1, 0, bl);
        set(1, 1, br);
        return m;
    };
    std::vector<ExactComplexMatrix> mats;
    for (auto d : {base(al, 0, 0, ab), base(al * th, 0, 0, ab * tb),
                   base(0, al, jj * ab, 0), base(0, al * th, jj * ab * tb, 0)}) {
        mats.push_back(d);                       // real part of the symbol
        ExactComplexMatrix im(2, 2);             // imaginary part: j * D
        for (std::size_t i = 0; i < 4; ++i) im.a[i] = ExactComplex{0, 1} * d.a[i];
        mats.push_back(im);
    }
    return make("golden", 2, 2, std::move(mats), {range(0, 8)});
}

}  // namespace

GroupDecodableCode builtin_code(const std::string& name) {
    if (name == "un2") return un2();
    if (name == "un2_reduced") return un2_reduced();
    if (name == "un4") return un4();
    if (name == "gpp3") return gpp3();
    if (name == "b4") return b4();
    if (name == "alamouti") return alamouti();
    if (name == "blast2") return blast2();
    if (name == "golden") return golden();
    throw std::invalid_argument("unknown builtin code: " + name);
}

std::vector<std::string> builtin_code_names() {
    return {"un2", "un2_reduced", "un4", "gpp3", "b4", "alamouti", "blast2", "golden"};
}

}  // namespace gdstbc
