#include "tropfan/qmat.hpp"

#include <algorithm>

namespace tropfan {

QMat::QMat(int rows, int cols) : rows_(rows), cols_(cols) {
    check(rows >= 0 && cols >= 0, "QMat: negative shape");
    a_.resize(static_cast<std::size_t>(rows) * cols);
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    QMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        check(static_cast<int>(row.size()) == c, "from_rows: ragged rows");
        int j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

QMat QMat::column(const std::vector<Rat>& v) {
    QMat m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows_; ++i) m.at(i, 0) = v[i];
    return m;
}

QMat QMat::row(const std::vector<Rat>& v) {
    QMat m(1, static_cast<int>(v.size()));
    for (int j = 0; j < m.cols_; ++j) m.at(0, j) = v[j];
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    check(cols_ == o.rows_, "QMat*: shape mismatch");
    QMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (sgn(o.at(k, j)) != 0) r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

QMat QMat::operator+(const QMat& o) const {
    check(rows_ == o.rows_ && cols_ == o.cols_, "QMat+: shape mismatch");
    QMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    check(rows_ == o.rows_ && cols_ == o.cols_, "QMat-: shape mismatch");
    QMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

QMat QMat::operator-() const {
    QMat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

QMat QMat::scaled(const Rat& c) const {
    QMat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

QMat QMat::transpose() const {
    QMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

QMat QMat::hcat(const QMat& o) const {
    check(rows_ == o.rows_, "hcat: row mismatch");
    QMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

QMat QMat::vcat(const QMat& o) const {
    check(cols_ == o.cols_, "vcat: col mismatch");
    QMat r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

QMat QMat::col(int j) const {
    QMat r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

QMat QMat::sub_cols(const std::vector<int>& js) const {
    QMat r(rows_, static_cast<int>(js.size()));
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < r.cols_; ++k) r.at(i, k) = at(i, js[k]);
    return r;
}

QMat QMat::sub_rows(const std::vector<int>& is) const {
    QMat r(static_cast<int>(is.size()), cols_);
    for (int k = 0; k < r.rows_; ++k)
        for (int j = 0; j < cols_; ++j) r.at(k, j) = at(is[k], j);
    return r;
}

bool QMat::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

bool QMat::is_integral() const {
    for (const auto& x : a_)
        if (!is_integer(x)) return false;
    return true;
}

Rref QMat::rref() const {
    Rref r{*this, {}};
    QMat& m = r.mat;
    int lead = 0;
    for (int j = 0; j < cols_ && lead < rows_; ++j) {
        int piv = -1;
        for (int i = lead; i < rows_; ++i) {
            if (sgn(m.at(i, j)) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != lead)
            for (int k = 0; k < cols_; ++k) std::swap(m.at(piv, k), m.at(lead, k));
        Rat inv = 1 / m.at(lead, j);
        for (int k = j; k < cols_; ++k) m.at(lead, k) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == lead || sgn(m.at(i, j)) == 0) continue;
            Rat f = m.at(i, j);
            for (int k = j; k < cols_; ++k) m.at(i, k) -= f * m.at(lead, k);
        }
        r.pivots.push_back(j);
        ++lead;
    }
    return r;
}

int QMat::rank() const { return static_cast<int>(rref().pivots.size()); }

QMat QMat::column_space() const {
    Rref e = transpose().rref();
    int r = static_cast<int>(e.pivots.size());
    QMat basis(rows_, r);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < rows_; ++i) basis.at(i, k) = e.mat.at(k, i);
    return basis;
}

QMat QMat::kernel() const {
    Rref e = rref();
    std::vector<bool> is_piv(cols_, false);
    for (int p : e.pivots) is_piv[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols_; ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    QMat k(cols_, static_cast<int>(free_cols.size()));
    for (int t = 0; t < static_cast<int>(free_cols.size()); ++t) {
        int f = free_cols[t];
        k.at(f, t) = 1;
        for (int prow = 0; prow < static_cast<int>(e.pivots.size()); ++prow)
            k.at(e.pivots[prow], t) = -e.mat.at(prow, f);
    }
    return k.column_space();
}

QMat QMat::left_kernel_rows() const { return transpose().kernel().transpose(); }

std::optional<QMat> QMat::solve(const QMat& b) const {
    check(rows_ == b.rows_, "solve: row mismatch");
    Rref e = hcat(b).rref();
    for (int p : e.pivots)
        if (p >= cols_) return std::nullopt;
    QMat x(cols_, b.cols());
    for (int prow = 0; prow < static_cast<int>(e.pivots.size()); ++prow)
        for (int j = 0; j < b.cols(); ++j) x.at(e.pivots[prow], j) = e.mat.at(prow, cols_ + j);
    return x;
}

QMat QMat::right_inverse() const {
    auto r = solve(identity(rows_));
    check(r.has_value(), "right_inverse: matrix does not have full row rank");
    return *r;
}

Rat QMat::determinant() const {
    check(rows_ == cols_, "determinant: not square");
    QMat m = *this;
    Rat det = 1;
    for (int j = 0; j < cols_; ++j) {
        int piv = -1;
        for (int i = j; i < rows_; ++i) {
            if (sgn(m.at(i, j)) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return Rat(0);
        if (piv != j) {
            for (int k = j; k < cols_; ++k) std::swap(m.at(piv, k), m.at(j, k));
            det = -det;
        }
        det *= m.at(j, j);
        Rat inv = 1 / m.at(j, j);
        for (int i = j + 1; i < rows_; ++i) {
            if (sgn(m.at(i, j)) == 0) continue;
            Rat f = m.at(i, j) * inv;
            for (int k = j; k < cols_; ++k) m.at(i, k) -= f * m.at(j, k);
        }
    }
    return det;
}

bool nonneg_feasible(const QMat& a, const QMat& b) {
    check(b.cols() == 1 && b.rows() == a.rows(), "nonneg_feasible: shape mismatch");
    int m = a.rows(), n = a.cols();
    // Tableau [A | I | rhs] with rhs >= 0; artificial variables start basic.
    QMat t(m, n + m + 1);
    for (int i = 0; i < m; ++i) {
        int flip = sgn(b.at(i, 0)) < 0 ? -1 : 1;
        for (int j = 0; j < n; ++j) t.at(i, j) = flip * a.at(i, j);
        t.at(i, n + i) = 1;
        t.at(i, n + m) = flip * b.at(i, 0);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // Reduced costs for minimizing the artificial sum.
    std::vector<Rat> cost(n + m);
    Rat z = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) cost[j] -= t.at(i, j);
    for (int i = 0; i < m; ++i) z += t.at(i, n + m);
    for (;;) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            if (sgn(cost[j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (sgn(t.at(i, enter)) <= 0) continue;
            Rat ratio = t.at(i, n + m) / t.at(i, enter);
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        check(leave >= 0, "nonneg_feasible: phase-1 unbounded");
        Rat inv = 1 / t.at(leave, enter);
        for (int j = 0; j <= n + m; ++j) t.at(leave, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || sgn(t.at(i, enter)) == 0) continue;
            Rat f = t.at(i, enter);
            for (int j = 0; j <= n + m; ++j) t.at(i, j) -= f * t.at(leave, j);
        }
        Rat cf = cost[enter];
        if (sgn(cf) != 0) {
            for (int j = 0; j < n + m; ++j) cost[j] -= cf * t.at(leave, j);
            z += cf * t.at(leave, n + m);
        }
        basis[leave] = enter;
    }
    return sgn(z) == 0;
}

}  // namespace tropfan
