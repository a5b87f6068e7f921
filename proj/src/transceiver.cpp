#include "gdstbc/transceiver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gdstbc {
namespace {

constexpr std::uint64_t kSearchGuard = std::uint64_t{1} << 24;
constexpr std::size_t kRefreshPeriod = 2048;  // bound incremental-metric drift

double to_double(const Rational& q) { return q.convert_to<double>(); }

FloatComplexMatrix to_float(const ExactComplexMatrix& m) {
    FloatComplexMatrix f(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i)
        f.a[i] = {to_double(m.a[i].re), to_double(m.a[i].im)};
    return f;
}

double frobenius_sq(const ExactComplexMatrix& m) {
    Rational s = 0;
    for (const auto& x : m.a) s += x.re * x.re + x.im * x.im;
    return to_double(s);
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " is not finite");
}

void require_finite(const FloatComplexMatrix& m, const char* what) {
    for (const auto& z : m.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(what) + " is not finite");
}

// Reflected mixed-radix counter: each step moves one digit by +-1 and the
// walk covers the whole product space.
struct GrayOdometer {
    std::vector<std::size_t> radix, digit;
    std::vector<int> dir;

    explicit GrayOdometer(std::vector<std::size_t> r)
        : radix(std::move(r)), digit(radix.size(), 0), dir(radix.size(), 1) {}

    bool step(std::size_t& which, std::size_t& from, std::size_t& to) {
        for (std::size_t k = 0; k < radix.size(); ++k) {
            long next = static_cast<long>(digit[k]) + dir[k];
            if (next < 0 || next >= static_cast<long>(radix[k])) {
                dir[k] = -dir[k];
                continue;
            }
            which = k;
            from = digit[k];
            to = static_cast<std::size_t>(next);
            digit[k] = to;
            return true;
        }
        return false;
    }
};

struct GramSystem {
    std::size_t n = 0;
    std::vector<double> g;  // n x n, rho H^T H
    std::vector<double> b;  // sqrt(rho) H^T r
};

GramSystem build_system(const RealEquivalentChannel& ch, std::span<const double> r) {
    const FloatRealMatrix& h = ch.h;
    if (r.size() != h.rows)
        throw std::invalid_argument("received vector length does not match the channel");
    if (!(ch.rho > 0) || !std::isfinite(ch.rho))
        throw std::invalid_argument("rho must be positive and finite");
    require_finite(r, "received vector");
    require_finite(h.a, "real equivalent channel");
    GramSystem sys;
    sys.n = h.cols;
    sys.g.assign(sys.n * sys.n, 0.0);
    sys.b.assign(sys.n, 0.0);
    double srho = std::sqrt(ch.rho);
    for (std::size_t p = 0; p < sys.n; ++p) {
        for (std::size_t q = p; q < sys.n; ++q) {
            double dot = 0;
            for (std::size_t i = 0; i < h.rows; ++i) dot += h.at(i, p) * h.at(i, q);
            sys.g[p * sys.n + q] = sys.g[q * sys.n + p] = ch.rho * dot;
        }
        double dot = 0;
        for (std::size_t i = 0; i < h.rows; ++i) dot += h.at(i, p) * r[i];
        sys.b[p] = srho * dot;
    }
    return sys;
}

// One conditionally detected source: either independent per-component value
// grids (scalar quantization per real symbol) or a joint scan of its points.
struct QuantComponent {
    std::size_t symbol = 0;
    std::size_t stride = 0;  // contribution of this axis to the point index
    std::vector<double> values;
};

struct QuantSource {
    std::size_t source = 0;
    bool product = false;
    std::vector<QuantComponent> comps;              // product scan
    std::vector<std::size_t> symbols;               // point scan
    std::vector<std::array<double, 2>> point_vals;  // point scan values
};

struct CellExec {
    std::vector<std::size_t> joint;  // plan source indices searched jointly
    std::vector<QuantSource> quant;
    std::vector<std::size_t> symbols;  // every cell symbol, ascending
};

QuantSource make_quant(const SymbolPlan& plan, std::size_t si) {
    const Source& src = plan.sources[si];
    const Constellation& c = src.constellation;
    QuantSource q;
    q.source = si;
    q.symbols = src.symbols;
    if (factorizes(c)) {
        q.product = true;
        auto grids = component_grids(c);
        std::size_t stride = 1;
        q.comps.resize(grids.size());
        for (std::size_t k = grids.size(); k-- > 0;) {
            q.comps[k].symbol = src.symbols[k];
            q.comps[k].values = grids[k].values;
            q.comps[k].stride = stride;
            stride *= grids[k].values.size();
        }
    } else {
        q.point_vals.resize(c.size);
        for (std::size_t p = 0; p < c.size; ++p)
            q.point_vals[p] = {c.points[p].real(), c.points[p].imag()};
    }
    return q;
}

// Best conditional choice for every quantized source given u = G s over the
// jointly assigned symbols. When out_* are non-null the winning points and
// values are recorded.
double eval_quantized(const std::vector<QuantSource>& quant, const std::vector<double>& g,
                      const std::vector<double>& b, const std::vector<double>& u,
                      std::size_t n, std::vector<std::size_t>* out_points,
                      std::vector<double>* out_s) {
    double total = 0;
    for (std::size_t qi = 0; qi < quant.size(); ++qi) {
        const QuantSource& q = quant[qi];
        if (q.product) {
            std::size_t point = 0;
            for (const QuantComponent& comp : q.comps) {
                std::size_t p = comp.symbol;
                double lin = u[p] - b[p];
                double quad = g[p * n + p];
                double best = std::numeric_limits<double>::infinity();
                std::size_t best_axis = 0;
                for (std::size_t k = 0; k < comp.values.size(); ++k) {
                    double v = comp.values[k];
                    double cost = quad * v * v + 2.0 * v * lin;
                    if (cost < best) {
                        best = cost;
                        best_axis = k;
                    }
                }
                total += best;
                point += best_axis * comp.stride;
                if (out_s) (*out_s)[p] = comp.values[best_axis];
            }
            if (out_points) (*out_points)[qi] = point;
        } else {
            std::size_t p0 = q.symbols[0], p1 = q.symbols[1];
            double lin0 = u[p0] - b[p0], lin1 = u[p1] - b[p1];
            double g00 = g[p0 * n + p0], g11 = g[p1 * n + p1], g01 = g[p0 * n + p1];
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_point = 0;
            for (std::size_t k = 0; k < q.point_vals.size(); ++k) {
                double v0 = q.point_vals[k][0], v1 = q.point_vals[k][1];
                double cost = g00 * v0 * v0 + g11 * v1 * v1 + 2.0 * (v0 * lin0 + v1 * lin1) +
                              2.0 * g01 * v0 * v1;
                bool take = cost < best;
                if (!take && cost == best) {
                    const auto& w = q.point_vals[best_point];
                    take = v0 < w[0] || (v0 == w[0] && v1 < w[1]);
                }
                if (take) {
                    best = cost;
                    best_point = k;
                }
            }
            total += best;
            if (out_points) (*out_points)[qi] = best_point;
            if (out_s) {
                (*out_s)[p0] = q.point_vals[best_point][0];
                (*out_s)[p1] = q.point_vals[best_point][1];
            }
        }
    }
    return total;
}

// Exhaustive search over the cell's joint sources with conditional
// detection of the quantized ones. Writes the winners into s (full length)
// and points (per plan source); returns the number of joint assignments
// visited. Ties break toward the lexicographically smallest symbol vector.
std::size_t decode_cell(const CellExec& cell, const SymbolPlan& plan,
                        const std::vector<double>& g, const std::vector<double>& b,
                        std::vector<double>& s, std::vector<std::size_t>& points) {
    std::size_t n = plan.symbol_count;

    std::uint64_t space = 1;
    for (std::size_t si : cell.joint) {
        std::uint64_t m = plan.sources[si].constellation.size;
        if (m > kSearchGuard / space)
            throw std::invalid_argument("joint search space exceeds 2^24 assignments");
        space *= m;
    }

    for (std::size_t si : cell.joint) apply_point(plan.sources[si], 0, s);
    for (const QuantSource& q : cell.quant)
        for (std::size_t p : q.symbols) s[p] = 0.0;

    std::vector<double> u(n, 0.0);
    double m_joint = 0;
    auto refresh = [&] {
        m_joint = 0;
        for (std::size_t p : cell.symbols) {
            double acc = 0;
            for (std::size_t q : cell.symbols) acc += g[p * n + q] * s[q];
            u[p] = acc;
            m_joint += s[p] * (acc - 2.0 * b[p]);
        }
    };
    refresh();

    std::vector<std::size_t> radices;
    radices.reserve(cell.joint.size());
    for (std::size_t si : cell.joint)
        radices.push_back(plan.sources[si].constellation.size);
    GrayOdometer odo(std::move(radices));

    double best_total = std::numeric_limits<double>::infinity();
    std::vector<double> best_s(n, 0.0);
    std::vector<std::size_t> best_joint(cell.joint.size(), 0);
    std::vector<std::size_t> best_qpoints(cell.quant.size(), 0);
    std::vector<std::size_t> cand_qpoints(cell.quant.size(), 0);
    bool have_best = false;

    auto lex_smaller = [&](const std::vector<double>& x, const std::vector<double>& y) {
        for (std::size_t p : cell.symbols) {
            if (x[p] < y[p]) return true;
            if (x[p] > y[p]) return false;
        }
        return false;
    };

    std::size_t visited = 0;
    auto consider = [&] {
        ++visited;
        double total = m_joint + eval_quantized(cell.quant, g, b, u, n, nullptr, nullptr);
        if (have_best && total > best_total) return;
        std::vector<double> cand = s;
        eval_quantized(cell.quant, g, b, u, n, &cand_qpoints, &cand);
        if (have_best && total == best_total && !lex_smaller(cand, best_s)) return;
        best_total = total;
        best_s.swap(cand);
        best_joint = odo.digit;
        best_qpoints = cand_qpoints;
        have_best = true;
    };

    consider();
    std::size_t which, from, to, since_refresh = 0;
    while (odo.step(which, from, to)) {
        const Source& src = plan.sources[cell.joint[which]];
        const auto& zf = src.constellation.points[from];
        const auto& zt = src.constellation.points[to];
        for (std::size_t comp = 0; comp < src.symbols.size(); ++comp) {
            std::size_t p = src.symbols[comp];
            double delta =
                comp == 0 ? zt.real() - zf.real() : zt.imag() - zf.imag();
            if (delta == 0.0) continue;
            m_joint += g[p * n + p] * delta * delta + 2.0 * delta * (u[p] - b[p]);
            for (std::size_t q : cell.symbols) u[q] += delta * g[q * n + p];
            s[p] += delta;
        }
        if (++since_refresh >= kRefreshPeriod) {
            refresh();
            since_refresh = 0;
        }
        consider();
    }

    for (std::size_t p : cell.symbols) s[p] = best_s[p];
    for (std::size_t k = 0; k < cell.joint.size(); ++k)
        points[cell.joint[k]] = best_joint[k];
    for (std::size_t k = 0; k < cell.quant.size(); ++k)
        points[cell.quant[k].source] = best_qpoints[k];
    return visited;
}

}  // namespace

Encoder::Encoder(GroupDecodableCode code, SymbolPlan plan)
    : code_(std::move(code)), plan_(std::move(plan)) {
    plan_.check();
    if (plan_.symbol_count != code_.num_symbols())
        throw std::invalid_argument("plan symbol count does not match the code");
    if (code_.num_symbols() == 0) throw std::invalid_argument("code has no symbols");
    mats_.reserve(code_.num_symbols());
    for (const auto& m : code_.dispersion.mats) mats_.push_back(to_float(m));

    auto mom = plan_.second_moments();
    double denom = 0;
    for (std::size_t l = 0; l < mats_.size(); ++l)
        denom += mom[l] * frobenius_sq(code_.dispersion.mats[l]);
    if (!(denom > 0))
        throw std::invalid_argument("code carries no energy under this plan");
    alpha_ = std::sqrt(static_cast<double>(code_.t_len()) / denom);
}

FloatComplexMatrix Encoder::encode(std::span<const double> s) const {
    if (s.size() != code_.num_symbols())
        throw std::invalid_argument("symbol vector length does not match the code");
    require_finite(s, "symbol vector");
    FloatComplexMatrix x(code_.t_len(), code_.n_tx());
    for (std::size_t l = 0; l < mats_.size(); ++l) {
        if (s[l] == 0.0) continue;
        double w = alpha_ * s[l];
        for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += w * mats_[l].a[i];
    }
    return x;
}

RealEquivalentChannel Encoder::real_equivalent(const ChannelRealization& ch) const {
    std::size_t t = code_.t_len(), nt = code_.n_tx();
    std::size_t m_rx = ch.htilde.cols;
    if (ch.htilde.rows != nt)
        throw std::invalid_argument("channel rows must equal the transmit antenna count");
    if (m_rx < min_receive_antennas(code_))
        throw std::invalid_argument("too few receive antennas for this code");
    if (!(ch.rho > 0) || !std::isfinite(ch.rho))
        throw std::invalid_argument("rho must be positive and finite");
    require_finite(ch.htilde, "channel matrix");

    RealEquivalentChannel out;
    out.rho = ch.rho;
    out.h = FloatRealMatrix(2 * t * m_rx, code_.num_symbols());
    for (std::size_t l = 0; l < mats_.size(); ++l)
        for (std::size_t m = 0; m < m_rx; ++m)
            for (std::size_t i = 0; i < t; ++i) {
                std::complex<double> y = 0;
                for (std::size_t k = 0; k < nt; ++k)
                    y += mats_[l].at(i, k) * ch.htilde.at(k, m);
                out.h.at(m * 2 * t + i, l) = alpha_ * y.real();
                out.h.at(m * 2 * t + t + i, l) = alpha_ * y.imag();
            }
    return out;
}

FloatComplexMatrix encode(const GroupDecodableCode& code, const SymbolPlan& plan,
                          std::span<const double> s) {
    return Encoder(code, plan).encode(s);
}

RealEquivalentChannel real_equivalent(const GroupDecodableCode& code,
                                      const SymbolPlan& plan,
                                      const ChannelRealization& ch) {
    return Encoder(code, plan).real_equivalent(ch);
}

double energy_factor(const GroupDecodableCode& code, const SymbolPlan& plan) {
    return Encoder(code, plan).energy_factor();
}

DecodeResult ml_decode_exhaustive(const RealEquivalentChannel& ch,
                                  std::span<const double> r, const SymbolPlan& plan,
                                  DecodeStats* stats) {
    plan.check();
    if (plan.symbol_count != ch.h.cols)
        throw std::invalid_argument("plan does not match the channel width");
    if (plan.message_count() > kSearchGuard)
        throw std::invalid_argument("message space exceeds 2^24; use group decoding");

    GramSystem sys = build_system(ch, r);
    CellExec cell;
    cell.joint.resize(plan.sources.size());
    std::iota(cell.joint.begin(), cell.joint.end(), std::size_t{0});
    cell.symbols.resize(plan.symbol_count);
    std::iota(cell.symbols.begin(), cell.symbols.end(), std::size_t{0});

    DecodeResult res;
    res.s.assign(plan.symbol_count, 0.0);
    res.points.assign(plan.sources.size(), 0);
    std::size_t visited = decode_cell(cell, plan, sys.g, sys.b, res.s, res.points);
    if (stats) stats->visited = visited;
    return res;
}

struct GroupDecoder::Prep {
    std::vector<CellExec> cells;
};

GroupDecoder::GroupDecoder(GroupDecodableCode code, SymbolPlan plan)
    : code_(std::move(code)), plan_(std::move(plan)) {
    plan_.check();
    if (plan_.symbol_count != code_.num_symbols())
        throw std::invalid_argument("plan symbol count does not match the code");
    auto report = verify_group_decodable(code_);
    if (!report.ok()) {
        std::string why = "code is not group decodable";
        if (!report.violations.empty()) why += ": " + report.violations.front();
        throw std::invalid_argument(why);
    }

    std::size_t n = code_.num_symbols();
    const auto& groups = code_.partition.groups;

    zero_gram_.assign(n * n, 0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            if (qoc_satisfied(code_.dispersion.mats[p], code_.dispersion.mats[q]))
                zero_gram_[p * n + q] = zero_gram_[q * n + p] = 1;

    std::vector<std::size_t> group_of(n, 0);
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t p : groups[gi]) group_of[p] = gi;

    std::vector<char> in_clique(n, 0);
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t p : qoc_clique(code_, gi)) in_clique[p] = 1;

    // Union groups linked by a source whose symbols straddle them.
    std::vector<std::size_t> parent(groups.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Source& src : plan_.sources)
        for (std::size_t k = 1; k < src.symbols.size(); ++k) {
            std::size_t a = find(group_of[src.symbols[0]]);
            std::size_t b = find(group_of[src.symbols[k]]);
            if (a != b) parent[b] = a;
        }

    auto prep = std::make_shared<Prep>();
    std::vector<long> cell_of_root(groups.size(), -1);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::size_t root = find(gi);
        if (cell_of_root[root] < 0) {
            cell_of_root[root] = static_cast<long>(prep->cells.size());
            prep->cells.emplace_back();
            cells_.emplace_back();
        }
        cells_[static_cast<std::size_t>(cell_of_root[root])].groups.push_back(gi);
    }
    for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
        for (std::size_t gi : cells_[ci].groups)
            for (std::size_t p : groups[gi]) prep->cells[ci].symbols.push_back(p);
        std::sort(prep->cells[ci].symbols.begin(), prep->cells[ci].symbols.end());
    }
    for (std::size_t si = 0; si < plan_.sources.size(); ++si) {
        const Source& src = plan_.sources[si];
        std::size_t ci = static_cast<std::size_t>(
            cell_of_root[find(group_of[src.symbols[0]])]);
        bool quantizable = true;
        for (std::size_t p : src.symbols) quantizable = quantizable && in_clique[p];
        if (quantizable) {
            cells_[ci].quantized_sources.push_back(si);
            prep->cells[ci].quant.push_back(make_quant(plan_, si));
        } else {
            cells_[ci].joint_sources.push_back(si);
            prep->cells[ci].joint.push_back(si);
        }
    }
    prep_ = std::move(prep);
}

DecodeResult GroupDecoder::decode(const RealEquivalentChannel& ch,
                                  std::span<const double> r, DecodeStats* stats) const {
    std::size_t n = plan_.symbol_count;
    if (ch.h.cols != n)
        throw std::invalid_argument("channel width does not match the code");
    GramSystem sys = build_system(ch, r);
    for (std::size_t i = 0; i < zero_gram_.size(); ++i)
        if (zero_gram_[i]) sys.g[i] = 0.0;

    DecodeResult res;
    res.s.assign(n, 0.0);
    res.points.assign(plan_.sources.size(), 0);
    std::size_t visited = 0;
    for (const CellExec& cell : prep_->cells)
        visited += decode_cell(cell, plan_, sys.g, sys.b, res.s, res.points);
    if (stats) stats->visited = visited;
    return res;
}

DecodeResult group_decode(const RealEquivalentChannel& ch, std::span<const double> r,
                          const GroupDecodableCode& code, const SymbolPlan& plan,
                          DecodeStats* stats) {
    return GroupDecoder(code, plan).decode(ch, r, stats);
}

}  // namespace gdstbc
