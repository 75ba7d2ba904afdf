#include "petrisiegel/sym_index.hpp"

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

PairIndexMap::PairIndexMap(std::size_t g) : g_(g), inverse_(g * g) {
    if (g == 0) throw PreconditionError("pair index map: genus must be at least 1");
    pairs_.reserve(g * (g + 1) / 2);
    for (std::size_t a = 0; a < g; ++a) pairs_.emplace_back(a, a);
    for (std::size_t a = 0; a + 1 < g; ++a)
        for (std::size_t b = a + 1; b < g; ++b) pairs_.emplace_back(a, b);
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto [a, b] = pairs_[i];
        inverse_[a * g + b] = i;
        inverse_[b * g + a] = i;
    }
}

std::size_t PairIndexMap::index(std::size_t a, std::size_t b) const {
    if (a >= g_ || b >= g_) throw PreconditionError("pair index map: entry out of range");
    return inverse_[a * g_ + b];
}

std::string PairIndexMap::label(std::size_t i) const {
    return "(" + std::to_string(pairs_.at(i).first + 1) + "," + std::to_string(pairs_.at(i).second + 1) + ")";
}

PairIndexMap build_pair_index(std::size_t g) { return PairIndexMap(g); }

std::vector<std::pair<std::size_t, std::size_t>> petri_layout_pairs(std::size_t g) {
    if (g == 0) throw PreconditionError("petri layout: genus must be at least 1");
    const std::size_t M = g * (g + 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> out(M);
    for (std::size_t i = 0; i < g; ++i) out[i] = {i, i};
    for (std::size_t j = 1; j + 1 <= g; ++j)
        for (std::size_t k = 1; k <= g - j; ++k) {
            const std::size_t pos = k + j * (2 * g - j + 1) / 2;  // 1-based
            out[pos - 1] = {j - 1, j + k - 1};
        }
    return out;
}

std::vector<std::size_t> petri_layout_to_pair_index(const PairIndexMap& map) {
    const auto layout = petri_layout_pairs(map.genus());
    std::vector<std::size_t> perm(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) perm[i] = map.index(layout[i].first, layout[i].second);
    return perm;
}

CVector sym_vec(std::span<const cplx> u, const PairIndexMap& map) {
    if (u.size() != map.genus()) throw PreconditionError("sym_vec: vector length must equal genus");
    CVector out(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) out[i] = u[map.first(i)] * u[map.second(i)];
    return out;
}

CMatrix sym_square(const CMatrix& a, const PairIndexMap& map) {
    if (a.rows() != map.genus() || a.cols() != map.genus())
        throw PreconditionError("sym_square: matrix must be g x g");
    const std::size_t M = map.size();
    CMatrix out(M, M);
    for (std::size_t i = 0; i < M; ++i) {
        const auto [i1, i2] = map[i];
        for (std::size_t j = 0; j < M; ++j) {
            const auto [j1, j2] = map[j];
            const cplx num = a(i1, j1) * a(i2, j2) + a(i1, j2) * a(i2, j1);
            out(i, j) = map.is_diagonal(j) ? 0.5 * num : num;
        }
    }
    return out;
}

ResumResult resum_check(const CMatrix& f, const PairIndexMap& map) {
    if (f.rows() != map.genus() || f.cols() != map.genus())
        throw PreconditionError("resum_check: array must be g x g");
    ResumResult r{};
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) r.full_sum += f(i, j);
    for (std::size_t k = 0; k < map.size(); ++k) {
        const auto [a, b] = map[k];
        const cplx both = f(a, b) + f(b, a);
        r.pair_sum += map.is_diagonal(k) ? 0.5 * both : both;
        r.multiplicity_sum += map.multiplicity(k) * f(a, b);
    }
    return r;
}

}  // namespace petrisiegel
