#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "tropfan/rat.hpp"

namespace tropfan {

struct Rref;

// Dense rational matrix. Row-major. Zero-row and zero-column shapes are legal
// everywhere; an r x 0 and a 0 x c matrix both behave as the empty map.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(int rows, int cols);

    static QMat identity(int n);
    static QMat zero(int rows, int cols) { return QMat(rows, cols); }
    static QMat from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static QMat column(const std::vector<Rat>& v);
    static QMat row(const std::vector<Rat>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat operator-() const;
    QMat scaled(const Rat& c) const;

    QMat transpose() const;
    QMat hcat(const QMat& o) const;
    QMat vcat(const QMat& o) const;
    QMat col(int j) const;
    QMat sub_cols(const std::vector<int>& js) const;
    QMat sub_rows(const std::vector<int>& is) const;
    bool is_zero() const;
    bool is_integral() const;

    // Reduced row echelon form, leftmost-nonzero pivot rule: columns are scanned
    // left to right and the first row with a nonzero entry becomes the pivot.
    Rref rref() const;

    int rank() const;

    // Canonical reduced column echelon basis of the column span, zero columns
    // dropped. Two matrices span the same column space iff these are equal.
    QMat column_space() const;

    // Canonical basis of {x : Ax = 0}, as columns.
    QMat kernel() const;

    // Rows form a canonical basis of {y : yA = 0}.
    QMat left_kernel_rows() const;

    // Particular solution X of AX = B with free variables zero, or nullopt.
    std::optional<QMat> solve(const QMat& b) const;

    // R with A*R = I. Requires full row rank.
    QMat right_inverse() const;

    Rat determinant() const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct Rref {
    QMat mat;
    std::vector<int> pivots;  // pivot column per pivot row
};

// True iff Ax = b has a solution with all coordinates >= 0. Exact phase-1
// simplex with Bland's rule.
bool nonneg_feasible(const QMat& a, const QMat& b);

}  // namespace tropfan
