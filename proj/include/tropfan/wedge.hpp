#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tropfan/qmat.hpp"

namespace tropfan {

// Coordinates on wedge powers of Q^n: the p-element subsets of {0..n-1} in
// lexicographic order index the basis e_S = e_{s_1} ^ ... ^ e_{s_p}.
class WedgeBasis {
public:
    WedgeBasis(int n, int p);

    static const WedgeBasis& get(int n, int p);  // process-wide cache

    int n() const { return n_; }
    int p() const { return p_; }
    int dim() const { return static_cast<int>(subsets_.size()); }
    const std::vector<int>& subset(int idx) const { return subsets_[idx]; }
    int index_of(const std::vector<int>& subset) const;

private:
    int n_, p_;
    std::vector<std::vector<int>> subsets_;
    std::map<std::uint32_t, int> index_;
};

// Wedge of the p columns of cols (n x p), as coordinates in ^p Q^n.
QMat wedge_of_columns(const QMat& cols);

// Matrix of ^p m : ^p Q^a -> ^p Q^b for m : Q^a -> Q^b (entries are p-minors).
QMat wedge_power_matrix(const QMat& m, int p);

// Contraction by a single covector l (n x 1 of dual coordinates):
// iota_l(v_1^...^v_p) = sum_i (-1)^(i-1) l(v_i) v_1^...^v_i-hat^...^v_p.
QMat contract_covector(const QMat& l, const QMat& v, int n, int p);

// Contraction by a multiform alpha (coordinates in the dual basis of ^k Q^n,
// <e*_S, e_T> = [S == T]); iota_{l ^ beta} = iota_beta after iota_l.
QMat contract_multiform(const QMat& alpha, int k, const QMat& v, int p, int n);

}  // namespace tropfan
