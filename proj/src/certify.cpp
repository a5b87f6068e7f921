#include "gdstbc/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gdstbc {
namespace {

constexpr std::uint64_t kCodebookGuard = std::uint64_t{1} << 16;
constexpr double kRankCut = 1e-8;  // of the largest eigenvalue

std::vector<std::complex<double>> difference_gram(const FloatComplexMatrix& xa,
                                                  const FloatComplexMatrix& xb,
                                                  std::size_t d) {
    std::size_t t = xa.rows, n = xa.cols;
    std::vector<std::complex<double>> g(d * d);
    if (t >= n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> acc = 0;
                for (std::size_t k = 0; k < t; ++k)
                    acc += std::conj(xa.at(k, i) - xb.at(k, i)) *
                           (xa.at(k, j) - xb.at(k, j));
                g[i * d + j] = acc;
            }
    } else {
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) {
                std::complex<double> acc = 0;
                for (std::size_t k = 0; k < n; ++k)
                    acc += (xa.at(i, k) - xb.at(i, k)) *
                           std::conj(xa.at(j, k) - xb.at(j, k));
                g[i * d + j] = acc;
            }
    }
    return g;
}

struct PairStats {
    std::size_t rank = 0;
    double det = 0.0;
};

PairStats pair_stats(const FloatComplexMatrix& xa, const FloatComplexMatrix& xb,
                     std::size_t d) {
    auto eig = hermitian_eigenvalues(difference_gram(xa, xb, d), d);
    double top = eig.empty() ? 0.0 : std::max(eig.front(), 0.0);
    PairStats ps;
    ps.det = 1.0;
    for (double lam : eig) {
        if (top > 0 && lam >= kRankCut * top) ++ps.rank;
        ps.det *= std::max(lam, 0.0);
    }
    if (ps.rank < d) ps.det = 0.0;
    return ps;
}

struct CodebookScore {
    std::size_t min_rank = 0;
    double min_det = 0.0;
    std::size_t pairs = 0;
};

CodebookScore score_codebook(const std::vector<FloatComplexMatrix>& words,
                             std::size_t d) {
    CodebookScore sc;
    sc.min_rank = std::numeric_limits<std::size_t>::max();
    double best_det = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            PairStats ps = pair_stats(words[a], words[b], d);
            sc.min_rank = std::min(sc.min_rank, ps.rank);
            if (ps.rank == d) best_det = std::min(best_det, ps.det);
            ++sc.pairs;
        }
    if (sc.pairs == 0) sc.min_rank = 0;
    sc.min_det = std::isfinite(best_det) ? best_det : 0.0;
    return sc;
}

template <class F>
void enumerate_points(const SymbolPlan& plan, const std::vector<std::size_t>& vary,
                      F&& fn) {
    std::vector<std::size_t> pts(plan.sources.size(), 0);
    std::size_t k = 0;
    for (;;) {
        fn(pts);
        for (k = 0; k < vary.size(); ++k) {
            std::size_t si = vary[k];
            if (++pts[si] < plan.sources[si].constellation.size) break;
            pts[si] = 0;
        }
        if (k == vary.size()) return;
    }
}

std::vector<FloatComplexMatrix> build_codebook(const GroupDecodableCode& code,
                                               const SymbolPlan& plan,
                                               const std::vector<std::size_t>& vary,
                                               double global_phase) {
    std::uint64_t count = 1;
    for (std::size_t si : vary) {
        std::uint64_t m = plan.sources[si].constellation.size;
        if (m > kCodebookGuard / count)
            throw std::invalid_argument("codebook exceeds 2^16 codewords");
        count *= m;
    }
    Encoder enc(code, plan);
    std::complex<double> twist = std::polar(1.0, global_phase);
    std::vector<FloatComplexMatrix> words;
    words.reserve(count);
    std::vector<double> s(plan.symbol_count, 0.0);
    enumerate_points(plan, vary, [&](const std::vector<std::size_t>& pts) {
        for (std::size_t si = 0; si < plan.sources.size(); ++si)
            apply_point(plan.sources[si], pts[si], s);
        auto x = enc.encode(s);
        if (global_phase != 0.0)
            for (auto& z : x.a) z *= twist;
        words.push_back(std::move(x));
    });
    return words;
}

Constellation with_rotation(const Constellation& c, double angle) {
    switch (c.family) {
        case ConstellationFamily::qam: return make_qam(c.size, angle);
        case ConstellationFamily::psk: return make_psk(c.size, angle);
        case ConstellationFamily::pam: return c;
    }
    return c;
}

// Decoding cells as source index lists, ascending by first symbol; a source
// straddling two groups fuses them into one cell.
std::vector<std::vector<std::size_t>> plan_cells(const GroupDecodableCode& code,
                                                 const SymbolPlan& plan) {
    std::size_t n = code.num_symbols();
    const auto& groups = code.partition.groups;
    std::vector<std::size_t> group_of(n, 0);
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t p : groups[gi]) group_of[p] = gi;
    std::vector<std::size_t> parent(groups.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Source& src : plan.sources)
        for (std::size_t k = 1; k < src.symbols.size(); ++k) {
            std::size_t a = find(group_of[src.symbols[0]]);
            std::size_t b = find(group_of[src.symbols[k]]);
            if (a != b) parent[b] = a;
        }
    std::vector<long> cell_of_root(groups.size(), -1);
    std::size_t cells = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::size_t root = find(gi);
        if (cell_of_root[root] < 0) cell_of_root[root] = static_cast<long>(cells++);
    }
    std::vector<std::vector<std::size_t>> out(cells);
    for (std::size_t si = 0; si < plan.sources.size(); ++si) {
        std::size_t root = find(group_of[plan.sources[si].symbols[0]]);
        out[static_cast<std::size_t>(cell_of_root[root])].push_back(si);
    }
    for (auto& cell : out)
        std::sort(cell.begin(), cell.end(), [&](std::size_t a, std::size_t b) {
            return plan.sources[a].symbols[0] < plan.sources[b].symbols[0];
        });
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a,
                                          std::size_t d) {
    if (d == 0) return {};
    if (d == 1) return {a[0].real()};
    if (d == 2) {
        double tr = a[0].real() + a[3].real();
        double det = a[0].real() * a[3].real() - std::norm(a[1]);
        double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        return {(tr + disc) / 2.0, (tr - disc) / 2.0};
    }
    auto idx = [d](std::size_t r, std::size_t c) { return r * d + c; };
    std::vector<std::complex<double>> j(d * d), tmp(d * d);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0, scale = 0;
        for (std::size_t p = 0; p < d; ++p) {
            scale += std::abs(a[idx(p, p)]);
            for (std::size_t q = p + 1; q < d; ++q) off += std::norm(a[idx(p, q)]);
        }
        if (off <= 1e-30 * (scale * scale + std::numeric_limits<double>::min())) break;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                double m = std::abs(a[idx(p, q)]);
                if (m <= 1e-18 * (scale + std::numeric_limits<double>::min())) continue;
                std::complex<double> u = a[idx(p, q)] / m;
                double tau = (a[idx(q, q)].real() - a[idx(p, p)].real()) / (2.0 * m);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;

                std::fill(j.begin(), j.end(), std::complex<double>(0, 0));
                for (std::size_t k = 0; k < d; ++k) j[idx(k, k)] = 1.0;
                j[idx(p, p)] = c * u;
                j[idx(p, q)] = s * u;
                j[idx(q, p)] = -s;
                j[idx(q, q)] = c;

                std::fill(tmp.begin(), tmp.end(), std::complex<double>(0, 0));
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t k = 0; k < d; ++k) {
                        if (a[idx(r, k)] == std::complex<double>(0, 0)) continue;
                        for (std::size_t cc = 0; cc < d; ++cc)
                            tmp[idx(r, cc)] += a[idx(r, k)] * j[idx(k, cc)];
                    }
                std::fill(a.begin(), a.end(), std::complex<double>(0, 0));
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t k = 0; k < d; ++k) {
                        auto w = std::conj(j[idx(k, r)]);
                        if (w == std::complex<double>(0, 0)) continue;
                        for (std::size_t cc = 0; cc < d; ++cc)
                            a[idx(r, cc)] += w * tmp[idx(k, cc)];
                    }
            }
    }
    std::vector<double> eig(d);
    for (std::size_t p = 0; p < d; ++p) eig[p] = a[idx(p, p)].real();
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

DiversityCertificate certify_full_diversity(const GroupDecodableCode& code,
                                            const SymbolPlan& plan,
                                            double global_phase) {
    std::vector<std::size_t> all(plan.sources.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    auto words = build_codebook(code, plan, all, global_phase);
    std::size_t d = std::min(code.t_len(), code.n_tx());
    auto sc = score_codebook(words, d);
    DiversityCertificate cert;
    cert.min_rank = sc.min_rank;
    cert.min_det = sc.min_det;
    cert.pairs = sc.pairs;
    cert.full_diversity = sc.min_rank == d;
    return cert;
}

RotationSearchResult optimize_rotations(const GroupDecodableCode& code,
                                        const SymbolPlan& plan,
                                        const RotationSearchConfig& cfg) {
    if (!(cfg.step > 0)) throw std::invalid_argument("grid step must be positive");
    SymbolPlan cur = plan;
    cur.check();
    if (cur.symbol_count != code.num_symbols())
        throw std::invalid_argument("plan symbol count does not match the code");

    auto cells = plan_cells(code, cur);
    std::vector<std::size_t> order = cfg.cell_order;
    if (order.empty()) {
        order.resize(cells.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    std::size_t d = std::min(code.t_len(), code.n_tx());

    // A determinant must beat the incumbent by a relative margin, otherwise
    // rotation-invariant codes would drift off angle zero on rounding noise.
    auto det_gain = [](double x, double y) { return x > y * (1.0 + 1e-9); };
    auto better = [&](const CodebookScore& x, const CodebookScore& y) {
        if (cfg.metric == RotationMetric::min_det) return det_gain(x.min_det, y.min_det);
        if (x.min_rank != y.min_rank) return x.min_rank > y.min_rank;
        return det_gain(x.min_det, y.min_det);
    };

    for (std::size_t ci : order) {
        if (ci >= cells.size()) throw std::invalid_argument("cell index out of range");
        const auto& cell = cells[ci];
        for (std::size_t si : cell) {
            if (cur.sources[si].symbols.size() < 2) continue;  // PAM stays real
            double best_angle = 0.0;
            bool have = false;
            CodebookScore best{};
            for (double angle = 0.0; angle < std::numbers::pi - 1e-12;
                 angle += cfg.step) {
                cur.sources[si].constellation =
                    with_rotation(cur.sources[si].constellation, angle);
                auto words = build_codebook(code, cur, cell, 0.0);
                auto sc = score_codebook(words, d);
                if (!have || better(sc, best)) {
                    best = sc;
                    best_angle = angle;
                    have = true;
                }
            }
            cur.sources[si].constellation =
                with_rotation(cur.sources[si].constellation, best_angle);
        }
    }

    RotationSearchResult out;
    out.cert = certify_full_diversity(code, cur);
    out.plan = std::move(cur);
    return out;
}

}  // namespace gdstbc
