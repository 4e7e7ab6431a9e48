#pragma once

#include <initializer_list>
#include <vector>

#include "tropfan/qmat.hpp"
#include "tropfan/rat.hpp"

namespace tropfan {

// Dense integer matrix. Same shape conventions as QMat.
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(int rows, int cols);

    static ZMat identity(int n);
    static ZMat from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static ZMat from_columns(const std::vector<IntVec>& cols, int rows);
    // Exact conversion; throws CheckError on non-integral entries.
    static ZMat from_qmat(const QMat& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const ZMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const ZMat& o) const { return !(*this == o); }

    ZMat operator*(const ZMat& o) const;
    ZMat transpose() const;
    ZMat hcat(const ZMat& o) const;
    IntVec col_vec(int j) const;
    QMat to_qmat() const;
    bool is_zero() const;

    int rank() const { return to_qmat().rank(); }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// A = u * d * v with u, v unimodular (integer inverses included) and d diagonal
// with d_1 | d_2 | ... | d_r, all positive.
struct SnfResult {
    ZMat u, d, v, u_inv, v_inv;
    int rank = 0;
    IntVec invariant_factors() const;
};

SnfResult smith_normal_form(const ZMat& a);

// Solves a x = b over the integers; nullopt if no integer solution exists.
// Deterministic particular solution (free coordinates zero in SNF basis).
std::optional<IntVec> integral_solve(const ZMat& a, const IntVec& b);

// v / gcd(v); keeps direction. Throws InputError on the zero vector.
IntVec primitive(const IntVec& v);

// Data of the lattice quotient Z^n -> Z^n / sat(span(sub_gens)).
//   sub_basis:  n x r,  basis of span(sub_gens) cap Z^n (the saturation)
//   quot_basis: n x (n-r), lifts of a basis of the quotient lattice
//   proj:       (n-r) x n, integer; proj*sub_basis = 0, proj*quot_basis = I
struct QuotientData {
    int ambient_rank = 0;
    int sub_rank = 0;
    int quot_rank = 0;
    ZMat sub_basis;
    ZMat quot_basis;
    ZMat proj;
};

QuotientData quotient_lattice(const ZMat& sub_gens, int ambient_rank);

}  // namespace tropfan
