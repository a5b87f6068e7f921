#include "gdstbc/code_io.hpp"

#include <fstream>
#include <sstream>

namespace gdstbc {

std::string serialize_code(const GroupDecodableCode& code) {
    std::ostringstream out;
    out << "gdstbc-code v1\n";
    if (!code.name.empty()) out << "name " << code.name << "\n";
    out << "T " << code.t_len() << "\n";
    out << "N " << code.n_tx() << "\n";
    out << "L " << code.num_symbols() << "\n";
    out << "groups " << code.partition.groups.size() << "\n";
    for (std::size_t g = 0; g < code.partition.groups.size(); ++g) {
        out << "group " << g + 1;
        for (std::size_t l : code.partition.groups[g]) out << " " << l + 1;
        out << "\n";
    }
    for (std::size_t l = 0; l < code.num_symbols(); ++l) {
        out << "matrix " << l + 1 << "\n";
        const auto& m = code.dispersion.mats[l];
        for (std::size_t r = 0; r < m.rows; ++r) {
            for (std::size_t c = 0; c < m.cols; ++c) {
                const ExactComplex& x = m.at(r, c);
                if (c) out << "  ";
                out << numerator(x.re) << " " << denominator(x.re) << " "
                    << numerator(x.im) << " " << denominator(x.im);
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("code file, line " + std::to_string(line) + ": " + what);
}

}  // namespace

GroupDecodableCode parse_code(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] != '#') return true;
        }
        return false;
    };

    if (!next_line() || line != "gdstbc-code v1") fail(lineno, "missing 'gdstbc-code v1' header");

    GroupDecodableCode code;
    std::size_t t = 0, n = 0, l_count = 0, n_groups = 0;
    bool have_t = false, have_n = false, have_l = false, have_groups = false;

    // Header keys until the first "matrix".
    for (;;) {
        if (!next_line()) fail(lineno, "unexpected end of file before matrices");
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "name") {
            ls >> code.name;
        } else if (key == "T") {
            if (!(ls >> t) || t == 0) fail(lineno, "bad T");
            have_t = true;
        } else if (key == "N") {
            if (!(ls >> n) || n == 0) fail(lineno, "bad N");
            have_n = true;
        } else if (key == "L") {
            if (!(ls >> l_count) || l_count == 0) fail(lineno, "bad L");
            have_l = true;
        } else if (key == "groups") {
            if (!(ls >> n_groups) || n_groups == 0) fail(lineno, "bad groups count");
            have_groups = true;
            code.partition.groups.resize(n_groups);
        } else if (key == "group") {
            if (!have_groups) fail(lineno, "'group' before 'groups'");
            std::size_t gi = 0;
            if (!(ls >> gi) || gi == 0 || gi > n_groups) fail(lineno, "bad group index");
            std::size_t idx;
            while (ls >> idx) {
                if (idx == 0) fail(lineno, "symbol indices are 1-based");
                code.partition.groups[gi - 1].push_back(idx - 1);
            }
        } else if (key == "matrix") {
            break;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_t || !have_n || !have_l || !have_groups)
        fail(lineno, "missing required header field (T, N, L, groups)");

    code.dispersion.t_len = t;
    code.dispersion.n_tx = n;

    // `line` currently holds the first "matrix" line.
    for (std::size_t l = 0; l < l_count; ++l) {
        {
            std::istringstream ls(line);
            std::string key;
            std::size_t idx = 0;
            ls >> key >> idx;
            if (key != "matrix" || idx != l + 1)
                fail(lineno, "expected 'matrix " + std::to_string(l + 1) + "'");
        }
        ExactComplexMatrix m(t, n);
        for (std::size_t r = 0; r < t; ++r) {
            if (!next_line()) fail(lineno, "unexpected end of file inside matrix");
            std::istringstream ls(line);
            for (std::size_t c = 0; c < n; ++c) {
                std::string re_n, re_d, im_n, im_d;
                if (!(ls >> re_n >> re_d >> im_n >> im_d)) fail(lineno, "short matrix row");
                try {
                    Int rn(re_n), rd(re_d), in_(im_n), id(im_d);
                    if (rd <= 0 || id <= 0) fail(lineno, "denominator must be positive");
                    m.at(r, c) = {Rational(rn, rd), Rational(in_, id)};
                } catch (const std::runtime_error&) {
                    throw;
                } catch (const std::exception&) {
                    fail(lineno, "bad integer in matrix entry");
                }
            }
            std::string extra;
            if (ls >> extra) fail(lineno, "trailing tokens in matrix row");
        }
        code.dispersion.mats.push_back(std::move(m));
        if (l + 1 < l_count && !next_line()) fail(lineno, "missing matrix " + std::to_string(l + 2));
    }
    if (next_line()) fail(lineno, "trailing content after last matrix");

    if (code.dispersion.mats.size() != l_count) fail(lineno, "matrix count mismatch");
    std::vector<int> seen(l_count, 0);
    for (const auto& g : code.partition.groups)
        for (std::size_t idx : g) {
            if (idx >= l_count) fail(lineno, "group references symbol beyond L");
            if (seen[idx]++) fail(lineno, "symbol listed in more than one group");
        }
    for (int s : seen)
        if (!s) fail(lineno, "symbol missing from all groups");
    return code;
}

GroupDecodableCode load_code_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open code file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_code(ss.str());
}

void save_code_file(const GroupDecodableCode& code, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write code file: " + path);
    f << serialize_code(code);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace gdstbc
