#include "gdstbc/code_model.hpp"

#include "gdstbc/exact_linalg.hpp"
#include "gdstbc/mappings.hpp"

#include <algorithm>

namespace gdstbc {

namespace {

void check_partition(const GroupDecodableCode& code) {
    std::vector<int> seen(code.num_symbols(), 0);
    for (const auto& g : code.partition.groups) {
        if (g.empty()) throw std::invalid_argument("partition: empty group");
        for (std::size_t l : g) {
            if (l >= code.num_symbols()) throw std::invalid_argument("partition: index out of range");
            if (seen[l]++) throw std::invalid_argument("partition: duplicate symbol index");
        }
    }
    for (int s : seen)
        if (!s) throw std::invalid_argument("partition: uncovered symbol index");
}

}  // namespace

bool qoc_satisfied(const ExactComplexMatrix& p, const ExactComplexMatrix& q) {
    if (p.rows != q.rows || p.cols != q.cols)
        throw std::invalid_argument("qoc_satisfied: shape mismatch");
    return (p.conjugate_transpose() * q + q.conjugate_transpose() * p).is_zero();
}

bool linearly_independent(std::span<const ExactComplexMatrix> mats) {
    if (mats.empty()) return true;
    ExactRealMatrix stacked(mats.size(), 2 * mats[0].rows * mats[0].cols);
    for (std::size_t r = 0; r < mats.size(); ++r) {
        auto v = map_g(stack_real_imag(mats[r]));
        for (std::size_t c = 0; c < v.size(); ++c) stacked.at(r, c) = std::move(v[c]);
    }
    return rank(stacked) == mats.size();
}

VerificationReport verify_group_decodable(const GroupDecodableCode& code) {
    check_partition(code);
    const auto& groups = code.partition.groups;
    const auto& mats = code.dispersion.mats;

    VerificationReport rep;
    rep.qoc_ok = true;
    rep.independence_ok = true;

    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t gj = gi + 1; gj < groups.size(); ++gj)
            for (std::size_t p : groups[gi])
                for (std::size_t q : groups[gj])
                    if (!qoc_satisfied(mats[p], mats[q])) {
                        rep.qoc_ok = false;
                        rep.violations.push_back(
                            "cross-group pair (s" + std::to_string(p + 1) + ", s" +
                            std::to_string(q + 1) + "): quasi-orthogonality fails");
                    }

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<ExactComplexMatrix> members;
        for (std::size_t l : groups[gi]) members.push_back(mats[l]);
        if (!linearly_independent(members)) {
            rep.independence_ok = false;
            rep.violations.push_back("group " + std::to_string(gi + 1) +
                                     ": stacked real forms are linearly dependent");
        }
    }

    rep.symbolwise_diversity = symbolwise_diversity(code.dispersion);
    rep.rate = code_rate(code);
    return rep;
}

std::size_t symbolwise_diversity(const DispersionSet& d) {
    if (d.mats.empty()) return 0;
    std::size_t mn = SIZE_MAX;
    for (const auto& m : d.mats) mn = std::min(mn, rank(m));
    return mn;
}

Rational code_rate(const GroupDecodableCode& code) {
    return Rational(code.num_symbols(), 2 * code.t_len());
}

std::vector<std::size_t> qoc_clique(const GroupDecodableCode& code, std::size_t group) {
    const auto& g = code.partition.groups.at(group);
    const auto& mats = code.dispersion.mats;
    std::vector<std::size_t> clique;
    for (std::size_t l : g) {
        bool fits = std::all_of(clique.begin(), clique.end(), [&](std::size_t m) {
            return qoc_satisfied(mats[l], mats[m]);
        });
        if (fits) clique.push_back(l);
    }
    return clique;
}

std::size_t largest_group(const GroupDecodableCode& code) {
    const auto& groups = code.partition.groups;
    if (groups.empty()) throw std::invalid_argument("largest_group: no groups");
    std::size_t best = 0;
    for (std::size_t i = 1; i < groups.size(); ++i)
        if (groups[i].size() > groups[best].size()) best = i;
    return best;
}

std::size_t k_orthogonal(const GroupDecodableCode& code) {
    return qoc_clique(code, largest_group(code)).size();
}

ComplexityOrder complexity_order(std::size_t l_max, std::size_t k, const Rational& b,
                                 const Rational& r) {
    if (k < 1 || k > l_max) throw std::invalid_argument("complexity_order: need 1 <= K <= L_max");
    if (r <= 0 || b <= 0) throw std::invalid_argument("complexity_order: need b, R > 0");
    return {k, Rational(l_max - k + 1) * b / (2 * r)};
}

std::size_t min_receive_antennas(const GroupDecodableCode& code) {
    const std::size_t two_t = 2 * code.t_len();
    return (code.num_symbols() + two_t - 1) / two_t;
}

}  // namespace gdstbc
