#include "tropfan/zmat.hpp"

#include <algorithm>

namespace tropfan {

ZMat::ZMat(int rows, int cols) : rows_(rows), cols_(cols) {
    check(rows >= 0 && cols >= 0, "ZMat: negative shape");
    a_.resize(static_cast<std::size_t>(rows) * cols);
}

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMat ZMat::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    ZMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        check(static_cast<int>(row.size()) == c, "from_rows: ragged rows");
        int j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

ZMat ZMat::from_columns(const std::vector<IntVec>& cols, int rows) {
    ZMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols_; ++j) {
        check(static_cast<int>(cols[j].size()) == rows, "from_columns: length mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

ZMat ZMat::from_qmat(const QMat& m) {
    ZMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = to_int(m.at(i, j));
    return r;
}

ZMat ZMat::operator*(const ZMat& o) const {
    check(cols_ == o.rows_, "ZMat*: shape mismatch");
    ZMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

ZMat ZMat::transpose() const {
    ZMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

ZMat ZMat::hcat(const ZMat& o) const {
    check(rows_ == o.rows_, "hcat: row mismatch");
    ZMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

IntVec ZMat::col_vec(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

QMat ZMat::to_qmat() const {
    QMat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = Rat(at(i, j));
    return r;
}

bool ZMat::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

IntVec SnfResult::invariant_factors() const {
    IntVec f;
    for (int i = 0; i < rank; ++i) f.push_back(d.at(i, i));
    return f;
}

namespace {

// Elementary operations applied to d are mirrored on the accumulated
// transforms so that a = u * d * v stays true throughout.
struct SnfWork {
    ZMat d, u, u_inv, v, v_inv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < d.cols(); ++k) std::swap(d.at(i, k), d.at(j, k));
        for (int k = 0; k < u.rows(); ++k) std::swap(u.at(k, i), u.at(k, j));
        for (int k = 0; k < u_inv.cols(); ++k) std::swap(u_inv.at(i, k), u_inv.at(j, k));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < d.rows(); ++k) std::swap(d.at(k, i), d.at(k, j));
        for (int k = 0; k < v.cols(); ++k) std::swap(v.at(i, k), v.at(j, k));
        for (int k = 0; k < v_inv.rows(); ++k) std::swap(v_inv.at(k, i), v_inv.at(k, j));
    }
    // row_i += c * row_j
    void row_add(int i, int j, const Int& c) {
        for (int k = 0; k < d.cols(); ++k) d.at(i, k) += c * d.at(j, k);
        for (int k = 0; k < u.rows(); ++k) u.at(k, j) -= c * u.at(k, i);
        for (int k = 0; k < u_inv.cols(); ++k) u_inv.at(i, k) += c * u_inv.at(j, k);
    }
    // col_i += c * col_j
    void col_add(int i, int j, const Int& c) {
        for (int k = 0; k < d.rows(); ++k) d.at(k, i) += c * d.at(k, j);
        for (int k = 0; k < v.cols(); ++k) v.at(j, k) -= c * v.at(i, k);
        for (int k = 0; k < v_inv.rows(); ++k) v_inv.at(k, i) += c * v_inv.at(k, j);
    }
    void row_negate(int i) {
        for (int k = 0; k < d.cols(); ++k) d.at(i, k) = -d.at(i, k);
        for (int k = 0; k < u.rows(); ++k) u.at(k, i) = -u.at(k, i);
        for (int k = 0; k < u_inv.cols(); ++k) u_inv.at(i, k) = -u_inv.at(i, k);
    }
};

}  // namespace

SnfResult smith_normal_form(const ZMat& a) {
    int m = a.rows(), n = a.cols();
    SnfWork w{a, ZMat::identity(m), ZMat::identity(m), ZMat::identity(n), ZMat::identity(n)};
    int t = 0;
    int steps = std::min(m, n);
    while (t < steps) {
        // Deterministic pivot: smallest |value|, ties by (row, col).
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (sgn(w.d.at(i, j)) == 0) continue;
                if (pi < 0 || cmp(abs(w.d.at(i, j)), abs(w.d.at(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (sgn(w.d.at(i, t)) == 0) continue;
                Int q = w.d.at(i, t) / w.d.at(t, t);  // mpz truncated division
                if (sgn(q) != 0) w.row_add(i, t, -q);
                if (sgn(w.d.at(i, t)) != 0) {
                    // Remainder is strictly smaller; promote it to the pivot.
                    w.row_swap(t, i);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (sgn(w.d.at(t, j)) == 0) continue;
                Int q = w.d.at(t, j) / w.d.at(t, t);
                if (sgn(q) != 0) w.col_add(j, t, -q);
                if (sgn(w.d.at(t, j)) != 0) {
                    w.col_swap(t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
        // Divisibility: fold a bad entry's row into the pivot row and retry.
        bool redo = false;
        for (int i = t + 1; i < m && !redo; ++i)
            for (int j = t + 1; j < n && !redo; ++j) {
                if (sgn(w.d.at(i, j)) != 0 && sgn(w.d.at(i, j) % w.d.at(t, t)) != 0) {
                    w.row_add(t, i, Int(1));
                    redo = true;
                }
            }
        if (redo) continue;
        if (sgn(w.d.at(t, t)) < 0) w.row_negate(t);
        ++t;
    }
    SnfResult r{w.u, w.d, w.v, w.u_inv, w.v_inv, t};
    check((w.u * w.d * w.v) == a, "smith_normal_form: decomposition check failed");
    check((w.u * w.u_inv) == ZMat::identity(m), "smith_normal_form: u inverse check failed");
    check((w.v * w.v_inv) == ZMat::identity(n), "smith_normal_form: v inverse check failed");
    for (int i = 1; i < t; ++i)
        check(sgn(w.d.at(i, i) % w.d.at(i - 1, i - 1)) == 0, "smith_normal_form: divisibility");
    return r;
}

std::optional<IntVec> integral_solve(const ZMat& a, const IntVec& b) {
    check(static_cast<int>(b.size()) == a.rows(), "integral_solve: shape mismatch");
    SnfResult s = smith_normal_form(a);
    // a x = b  <=>  d (v x) = u_inv b; free coordinates of v x set to zero.
    IntVec c(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        Int acc = 0;
        for (int j = 0; j < a.rows(); ++j) acc += s.u_inv.at(i, j) * b[static_cast<std::size_t>(j)];
        c[static_cast<std::size_t>(i)] = acc;
    }
    IntVec y(static_cast<std::size_t>(a.cols()));
    for (int i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (sgn(c[static_cast<std::size_t>(i)] % s.d.at(i, i)) != 0) return std::nullopt;
            y[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] / s.d.at(i, i);
        } else if (sgn(c[static_cast<std::size_t>(i)]) != 0) {
            return std::nullopt;
        }
    }
    IntVec x(static_cast<std::size_t>(a.cols()));
    for (int i = 0; i < a.cols(); ++i) {
        Int acc = 0;
        for (int j = 0; j < a.cols(); ++j) acc += s.v_inv.at(i, j) * y[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc;
    }
    return x;
}

IntVec primitive(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (sgn(g) == 0) throw InputError("primitive: zero vector");
    IntVec r = v;
    for (auto& x : r) x /= g;
    return r;
}

QuotientData quotient_lattice(const ZMat& sub_gens, int ambient_rank) {
    check(sub_gens.rows() == ambient_rank || sub_gens.cols() == 0,
          "quotient_lattice: generator length mismatch");
    ZMat gens = sub_gens.cols() == 0 ? ZMat(ambient_rank, 0) : sub_gens;
    SnfResult s = smith_normal_form(gens);
    int r = s.rank;
    QuotientData q;
    q.ambient_rank = ambient_rank;
    q.sub_rank = r;
    q.quot_rank = ambient_rank - r;
    q.sub_basis = ZMat(ambient_rank, r);
    q.quot_basis = ZMat(ambient_rank, q.quot_rank);
    q.proj = ZMat(q.quot_rank, ambient_rank);
    for (int i = 0; i < ambient_rank; ++i) {
        for (int j = 0; j < r; ++j) q.sub_basis.at(i, j) = s.u.at(i, j);
        for (int j = 0; j < q.quot_rank; ++j) q.quot_basis.at(i, j) = s.u.at(i, r + j);
    }
    for (int i = 0; i < q.quot_rank; ++i)
        for (int j = 0; j < ambient_rank; ++j) q.proj.at(i, j) = s.u_inv.at(r + i, j);
    return q;
}

}  // namespace tropfan
