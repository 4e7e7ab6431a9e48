#include "tropfan/sheaf.hpp"

#include "tropfan/util.hpp"

namespace tropfan {

namespace {
constexpr int kMaxAmbientRank = 12;  // keeps C(n, n/2) wedge coordinates sane
}

CoeffCache::CoeffCache(std::shared_ptr<const ExtComplex> complex) : complex_(std::move(complex)) {
    if (complex_->base().ambient_rank() > kMaxAmbientRank)
        throw InputError("coefficients: ambient rank above the supported bound of 12");
}

const CoeffBasis& CoeffCache::space(int face, int p) const {
    if (p < 0 || p > complex_->base().ambient_rank())
        throw InputError("coefficients: degree out of range");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({face, p});
    if (it != memo_.end()) return it->second;

    const ExtComplex& c = *complex_;
    const ExtFace& f = c.face(face);
    int qr = f.lattice.ambient_rank;
    int rows = WedgeBasis::get(qr, p).dim();
    QMat cols(rows, 0);
    for (int d = 0; d < c.face_count(); ++d) {
        if (c.face(d).sed != f.sed || !c.is_subface(face, d)) continue;
        cols = cols.hcat(wedge_power_matrix(c.face(d).lattice.sub_basis.to_qmat(), p));
    }
    CoeffBasis out;
    out.face = face;
    out.p = p;
    out.basis = cols.column_space();
    return memo_.emplace(std::make_pair(face, p), std::move(out)).first->second;
}

QMat CoeffCache::map(int sub, int super, int p) const {
    const ExtComplex& c = *complex_;
    if (!c.is_subface(sub, super)) throw InputError("coefficients: faces are not incident");
    const CoeffBasis& bs = space(sub, p);
    const CoeffBasis& bb = space(super, p);
    QMat transported = bb.basis;
    const ExtFace& fs = c.face(sub);
    const ExtFace& fb = c.face(super);
    if (fs.sed != fb.sed) {
        const Fan& fan = c.base();
        ZMat m = fan.cone_quotient(fs.sed).proj * fan.cone_quotient(fb.sed).quot_basis;
        transported = wedge_power_matrix(m.to_qmat(), p) * bb.basis;
    }
    auto sol = bs.basis.solve(transported);
    check(sol.has_value(), "coefficients: structure map does not land in the target space");
    return *sol;
}

QMat CoeffCache::contract_by_form(int face, int k, const QMat& alpha, int p) const {
    if (k < 0 || k > p) throw InputError("coefficients: contraction degree mismatch");
    const CoeffBasis& bk = space(face, k);
    const CoeffBasis& bp = space(face, p);
    const CoeffBasis& bt = space(face, p - k);
    check(alpha.rows() == bk.dim() && alpha.cols() == 1, "coefficients: form coordinate shape");
    // Extend alpha off F_k(face) arbitrarily; contraction of F_p elements
    // only sees the restriction, so the result is extension-independent.
    auto ambient = bk.basis.transpose().solve(alpha);
    check(ambient.has_value(), "coefficients: dual coordinates do not extend");
    int qr = complex_->face(face).lattice.ambient_rank;
    QMat out(bt.dim(), bp.dim());
    for (int j = 0; j < bp.dim(); ++j) {
        QMat w = contract_multiform(*ambient, k, bp.basis.col(j), p, qr);
        auto coords = bt.basis.solve(w);
        check(coords.has_value(), "coefficients: contraction left the coefficient space");
        for (int i = 0; i < bt.dim(); ++i) out.at(i, j) = coords->at(i, 0);
    }
    return out;
}

QMat CoeffCache::canonical_class(int face) const {
    const ExtFace& f = complex_->face(face);
    const CoeffBasis& b = space(face, f.dim);
    QMat nu = wedge_of_columns(f.lattice.sub_basis.to_qmat());
    auto coords = b.basis.solve(nu);
    check(coords.has_value(), "coefficients: canonical multivector outside its own space");
    return *coords;
}

}  // namespace tropfan
