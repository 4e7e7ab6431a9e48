#include "tropfan/wedge.hpp"

#include <mutex>

namespace tropfan {

namespace {

std::uint32_t pack(const std::vector<int>& subset) {
    std::uint32_t m = 0;
    for (int s : subset) m |= (1u << s);
    return m;
}

void enumerate(int n, int p, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (p - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        enumerate(n, p, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

WedgeBasis::WedgeBasis(int n, int p) : n_(n), p_(p) {
    check(n >= 0 && n <= 31, "WedgeBasis: rank out of range");
    if (p >= 0 && p <= n) {
        std::vector<int> cur;
        enumerate(n, p, 0, cur, subsets_);
    }
    for (int i = 0; i < static_cast<int>(subsets_.size()); ++i) index_[pack(subsets_[i])] = i;
}

const WedgeBasis& WedgeBasis::get(int n, int p) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, WedgeBasis> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({n, p});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, p), WedgeBasis(n, p)).first;
    return it->second;
}

int WedgeBasis::index_of(const std::vector<int>& subset) const {
    auto it = index_.find(pack(subset));
    check(it != index_.end(), "WedgeBasis: unknown subset");
    return it->second;
}

QMat wedge_of_columns(const QMat& cols) {
    int n = cols.rows(), p = cols.cols();
    const WedgeBasis& wb = WedgeBasis::get(n, p);
    QMat out(wb.dim(), 1);
    for (int idx = 0; idx < wb.dim(); ++idx) {
        QMat minor(p, p);
        const auto& rows = wb.subset(idx);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) minor.at(i, j) = cols.at(rows[i], j);
        out.at(idx, 0) = minor.determinant();
    }
    return out;
}

QMat wedge_power_matrix(const QMat& m, int p) {
    const WedgeBasis& src = WedgeBasis::get(m.cols(), p);
    const WedgeBasis& dst = WedgeBasis::get(m.rows(), p);
    QMat out(dst.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
        QMat block = m.sub_cols(src.subset(j));
        QMat w = wedge_of_columns(block);
        for (int i = 0; i < dst.dim(); ++i) out.at(i, j) = w.at(i, 0);
    }
    return out;
}

QMat contract_covector(const QMat& l, const QMat& v, int n, int p) {
    check(l.rows() == n && l.cols() == 1, "contract_covector: covector shape");
    const WedgeBasis& src = WedgeBasis::get(n, p);
    const WedgeBasis& dst = WedgeBasis::get(n, p - 1);
    check(v.rows() == src.dim() && v.cols() == 1, "contract_covector: multivector shape");
    QMat out(dst.dim(), 1);
    for (int idx = 0; idx < src.dim(); ++idx) {
        if (sgn(v.at(idx, 0)) == 0) continue;
        const auto& s = src.subset(idx);
        int sign = 1;
        for (int i = 0; i < p; ++i) {
            if (sgn(l.at(s[i], 0)) != 0) {
                std::vector<int> t;
                for (int j = 0; j < p; ++j)
                    if (j != i) t.push_back(s[j]);
                out.at(dst.index_of(t), 0) += sign * l.at(s[i], 0) * v.at(idx, 0);
            }
            sign = -sign;
        }
    }
    return out;
}

QMat contract_multiform(const QMat& alpha, int k, const QMat& v, int p, int n) {
    const WedgeBasis& forms = WedgeBasis::get(n, k);
    check(alpha.rows() == forms.dim() && alpha.cols() == 1, "contract_multiform: form shape");
    const WedgeBasis& dst = WedgeBasis::get(n, p - k);
    QMat out(dst.dim(), 1);
    for (int a = 0; a < forms.dim(); ++a) {
        if (sgn(alpha.at(a, 0)) == 0) continue;
        QMat cur = v;
        int q = p;
        for (int s : forms.subset(a)) {
            QMat l(n, 1);
            l.at(s, 0) = 1;
            cur = contract_covector(l, cur, n, q);
            --q;
        }
        out = out + cur.scaled(alpha.at(a, 0));
    }
    return out;
}

}  // namespace tropfan
