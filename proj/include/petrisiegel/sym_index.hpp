#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "petrisiegel/linalg.hpp"

namespace petrisiegel {

/// Bijection between flat indices 0..M-1, M = g(g+1)/2, and unordered index
/// pairs (a, b), a <= b, in the order (11, 22, ..., gg, 12, ..., 1g, 23, ...).
/// Everything is 0-based; `label` renders the 1-based pair for reports.
class PairIndexMap {
public:
    explicit PairIndexMap(std::size_t g);

    std::size_t genus() const { return g_; }
    std::size_t size() const { return pairs_.size(); }

    const std::pair<std::size_t, std::size_t>& operator[](std::size_t i) const { return pairs_[i]; }
    std::size_t first(std::size_t i) const { return pairs_[i].first; }
    std::size_t second(std::size_t i) const { return pairs_[i].second; }
    bool is_diagonal(std::size_t i) const { return pairs_[i].first == pairs_[i].second; }

    /// Flat index of the unordered pair {a, b}.
    std::size_t index(std::size_t a, std::size_t b) const;

    /// 2 - delta for the pair at flat index i.
    double multiplicity(std::size_t i) const { return is_diagonal(i) ? 1.0 : 2.0; }

    /// "(a,b)" with 1-based entries.
    std::string label(std::size_t i) const;

    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

private:
    std::size_t g_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::size_t> inverse_;  // g*g table, symmetric
};

PairIndexMap build_pair_index(std::size_t g);

/// Pairs listed in the Petri v-layout: position i = k + j(2g-j+1)/2 (1-based)
/// holds (j, j+k); positions 1..g hold the squares. Returned 0-based.
std::vector<std::pair<std::size_t, std::size_t>> petri_layout_pairs(std::size_t g);

/// Permutation taking a v-layout position to its flat pair index.
std::vector<std::size_t> petri_layout_to_pair_index(const PairIndexMap& map);

/// uu_i = u_{1_i} u_{2_i}.
CVector sym_vec(std::span<const cplx> u, const PairIndexMap& map);

/// (AA)_ij = (A_{1i1j} A_{2i2j} + A_{1i2j} A_{2i1j}) / (1 + delta_{1j2j}).
CMatrix sym_square(const CMatrix& a, const PairIndexMap& map);

struct ResumResult {
    cplx full_sum;          ///< sum over all (i, j)
    cplx pair_sum;          ///< sum_k [f(1_k,2_k) + f(2_k,1_k)] / (1 + delta)
    cplx multiplicity_sum;  ///< sum_k (2 - delta) f(1_k,2_k); equals the others for symmetric f
};

/// Evaluates the three forms of the index resummation identity for a g x g array.
ResumResult resum_check(const CMatrix& f, const PairIndexMap& map);

}  // namespace petrisiegel
