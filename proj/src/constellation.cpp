#include "gdstbc/constellation.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gdstbc {
namespace {

std::uint32_t gray(std::uint32_t n) { return n ^ (n >> 1); }

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

// Odd-integer levels centered at zero: -(m-1), ..., m-3, m-1.
std::vector<double> levels(std::size_t m) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i)
        v[i] = 2.0 * static_cast<double>(i) - static_cast<double>(m - 1);
    return v;
}

double mean_square(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s / static_cast<double>(v.size());
}

void qam_shape(std::size_t bits, std::size_t& re_bits, std::size_t& im_bits) {
    re_bits = (bits + 1) / 2;
    im_bits = bits / 2;
}

}  // namespace

Constellation make_pam(std::size_t size) {
    if (!power_of_two(size) || size < 2)
        throw std::invalid_argument("pam size must be a power of two >= 2");
    Constellation c;
    c.family = ConstellationFamily::pam;
    c.size = size;
    c.bits = log2_exact(size);
    auto lv = levels(size);
    double scale = 1.0 / std::sqrt(mean_square(lv));
    c.points.resize(size);
    c.labels.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        c.points[i] = {scale * lv[i], 0.0};
        c.labels[i] = gray(static_cast<std::uint32_t>(i));
    }
    return c;
}

Constellation make_qam(std::size_t size, double rotation) {
    if (!power_of_two(size) || size < 4)
        throw std::invalid_argument("qam size must be a power of two >= 4");
    Constellation c;
    c.family = ConstellationFamily::qam;
    c.size = size;
    c.bits = log2_exact(size);
    c.rotation = rotation;
    std::size_t re_bits, im_bits;
    qam_shape(c.bits, re_bits, im_bits);
    auto re_lv = levels(std::size_t{1} << re_bits);
    auto im_lv = levels(std::size_t{1} << im_bits);
    double scale = 1.0 / std::sqrt(mean_square(re_lv) + mean_square(im_lv));
    std::complex<double> twist = std::polar(1.0, rotation);
    c.points.resize(size);
    c.labels.resize(size);
    for (std::size_t i = 0; i < re_lv.size(); ++i)
        for (std::size_t k = 0; k < im_lv.size(); ++k) {
            std::size_t p = i * im_lv.size() + k;
            c.points[p] = twist * std::complex<double>(scale * re_lv[i], scale * im_lv[k]);
            c.labels[p] = (gray(static_cast<std::uint32_t>(i)) << im_bits) |
                          gray(static_cast<std::uint32_t>(k));
        }
    return c;
}

Constellation make_psk(std::size_t size, double rotation) {
    if (!power_of_two(size) || size < 2)
        throw std::invalid_argument("psk size must be a power of two >= 2");
    Constellation c;
    c.family = ConstellationFamily::psk;
    c.size = size;
    c.bits = log2_exact(size);
    c.rotation = rotation;
    c.points.resize(size);
    c.labels.resize(size);
    for (std::size_t k = 0; k < size; ++k) {
        double ang = rotation + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(size);
        c.points[k] = std::polar(1.0, ang);
        c.labels[k] = gray(static_cast<std::uint32_t>(k));
    }
    return c;
}

std::size_t point_with_label(const Constellation& c, std::uint32_t label) {
    for (std::size_t p = 0; p < c.labels.size(); ++p)
        if (c.labels[p] == label) return p;
    throw std::invalid_argument("no point carries the requested label");
}

bool factorizes(const Constellation& c) {
    if (c.family == ConstellationFamily::pam) return true;
    return c.family == ConstellationFamily::qam && c.rotation == 0.0;
}

std::vector<ComponentGrid> component_grids(const Constellation& c) {
    if (!factorizes(c))
        throw std::invalid_argument("constellation has no product structure");
    if (c.family == ConstellationFamily::pam) {
        ComponentGrid g;
        g.bits = c.bits;
        g.values.reserve(c.size);
        for (const auto& p : c.points) g.values.push_back(p.real());
        return {g};
    }
    std::size_t re_bits, im_bits;
    qam_shape(c.bits, re_bits, im_bits);
    std::size_t m_im = std::size_t{1} << im_bits;
    ComponentGrid re, im;
    re.bits = re_bits;
    im.bits = im_bits;
    for (std::size_t i = 0; i < (c.size >> im_bits); ++i)
        re.values.push_back(c.points[i * m_im].real());
    for (std::size_t k = 0; k < m_im; ++k) im.values.push_back(c.points[k].imag());
    return {re, im};
}

std::size_t point_from_axes(const Constellation& c, std::span<const std::size_t> axes) {
    if (!factorizes(c))
        throw std::invalid_argument("constellation has no product structure");
    if (c.family == ConstellationFamily::pam) {
        if (axes.size() != 1 || axes[0] >= c.size)
            throw std::invalid_argument("bad axis index");
        return axes[0];
    }
    std::size_t re_bits, im_bits;
    qam_shape(c.bits, re_bits, im_bits);
    std::size_t m_im = std::size_t{1} << im_bits;
    if (axes.size() != 2 || axes[0] >= (c.size >> im_bits) || axes[1] >= m_im)
        throw std::invalid_argument("bad axis index");
    return axes[0] * m_im + axes[1];
}

std::size_t SymbolPlan::total_bits() const {
    std::size_t b = 0;
    for (const auto& src : sources) b += src.constellation.bits;
    return b;
}

std::uint64_t SymbolPlan::message_count() const {
    std::uint64_t n = 1;
    for (const auto& src : sources) {
        std::uint64_t m = src.constellation.size;
        if (m != 0 && n > UINT64_MAX / m)
            throw std::overflow_error("message count exceeds 64 bits");
        n *= m;
    }
    return n;
}

std::vector<double> SymbolPlan::second_moments() const {
    std::vector<double> mom(symbol_count, 0.0);
    for (const auto& src : sources)
        for (std::size_t comp = 0; comp < src.symbols.size(); ++comp) {
            double acc = 0;
            for (const auto& p : src.constellation.points) {
                double v = comp == 0 ? p.real() : p.imag();
                acc += v * v;
            }
            mom[src.symbols[comp]] = acc / static_cast<double>(src.constellation.size);
        }
    return mom;
}

void SymbolPlan::check() const {
    std::vector<char> seen(symbol_count, 0);
    for (const auto& src : sources) {
        std::size_t want = src.constellation.family == ConstellationFamily::pam ? 1 : 2;
        if (src.symbols.size() != want)
            throw std::invalid_argument("source symbol arity does not match its family");
        if (src.constellation.points.empty())
            throw std::invalid_argument("source has an empty constellation");
        for (std::size_t p : src.symbols) {
            if (p >= symbol_count)
                throw std::invalid_argument("plan symbol index out of range");
            if (seen[p]) throw std::invalid_argument("plan assigns a symbol twice");
            seen[p] = 1;
        }
    }
    for (std::size_t p = 0; p < symbol_count; ++p)
        if (!seen[p]) throw std::invalid_argument("plan leaves a symbol unassigned");
}

void apply_point(const Source& src, std::size_t point, std::span<double> s) {
    const auto& z = src.constellation.points.at(point);
    s[src.symbols[0]] = z.real();
    if (src.symbols.size() > 1) s[src.symbols[1]] = z.imag();
}

namespace {

[[noreturn]] void plan_fail(const std::string& token, const std::string& why) {
    throw std::invalid_argument("plan source '" + token + "': " + why);
}

Source parse_source(const std::string& token) {
    std::size_t i = 0;
    while (i < token.size() && std::isalpha(static_cast<unsigned char>(token[i]))) ++i;
    std::string family = token.substr(0, i);
    std::size_t j = i;
    while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j]))) ++j;
    if (i == 0 || j == i || j >= token.size() || token[j] != ':')
        plan_fail(token, "expected family+size followed by ':'");
    std::size_t size = std::stoul(token.substr(i, j - i));

    std::string rest = token.substr(j + 1);
    double rotation = 0.0;
    if (auto at = rest.find('@'); at != std::string::npos) {
        std::string ang = rest.substr(at + 1);
        rest = rest.substr(0, at);
        bool pi_units = ang.size() >= 2 && ang.ends_with("pi");
        if (pi_units) ang = ang.substr(0, ang.size() - 2);
        char* end = nullptr;
        rotation = std::strtod(ang.c_str(), &end);
        if (ang.empty() || end != ang.c_str() + ang.size())
            plan_fail(token, "bad rotation angle");
        if (pi_units) rotation *= std::numbers::pi;
    }

    Source src;
    std::stringstream ss(rest);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field.empty()) plan_fail(token, "empty symbol index");
        char* end = nullptr;
        long v = std::strtol(field.c_str(), &end, 10);
        if (end != field.c_str() + field.size() || v < 1)
            plan_fail(token, "symbol indices are 1-based integers");
        src.symbols.push_back(static_cast<std::size_t>(v - 1));
    }
    if (src.symbols.empty()) plan_fail(token, "no symbol indices");

    try {
        if (family == "pam") {
            if (rotation != 0.0) plan_fail(token, "pam sources cannot be rotated");
            src.constellation = make_pam(size);
        } else if (family == "qam") {
            src.constellation = make_qam(size, rotation);
        } else if (family == "psk") {
            src.constellation = make_psk(size, rotation);
        } else {
            plan_fail(token, "unknown family '" + family + "'");
        }
    } catch (const std::invalid_argument& e) {
        plan_fail(token, e.what());
    }
    return src;
}

}  // namespace

SymbolPlan parse_plan(const std::string& text, std::size_t symbol_count) {
    SymbolPlan plan;
    plan.symbol_count = symbol_count;
    std::stringstream ss(text);
    std::string token;
    while (ss >> token) plan.sources.push_back(parse_source(token));
    if (plan.sources.empty()) throw std::invalid_argument("plan text has no sources");
    plan.check();
    return plan;
}

std::string format_plan(const SymbolPlan& plan) {
    std::ostringstream out;
    bool first = true;
    for (const auto& src : plan.sources) {
        if (!first) out << ' ';
        first = false;
        switch (src.constellation.family) {
            case ConstellationFamily::pam: out << "pam"; break;
            case ConstellationFamily::qam: out << "qam"; break;
            case ConstellationFamily::psk: out << "psk"; break;
        }
        out << src.constellation.size << ':';
        for (std::size_t k = 0; k < src.symbols.size(); ++k)
            out << (k ? "," : "") << src.symbols[k] + 1;
        if (src.constellation.rotation != 0.0) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g",
                          src.constellation.rotation / std::numbers::pi);
            out << '@' << buf << "pi";
        }
    }
    return out.str();
}

}  // namespace gdstbc
