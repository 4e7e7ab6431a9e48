#include "tropfan/compact.hpp"

#include <algorithm>

#include "tropfan/qmat.hpp"
#include "tropfan/util.hpp"

namespace tropfan {

namespace {

// Column vector of proj * v over the rationals.
QMat project_column(const ZMat& proj, const IntVec& v) {
    ZMat col = proj * ZMat::from_columns({v}, static_cast<int>(v.size()));
    return col.to_qmat();
}

}  // namespace

ExtComplex::ExtComplex(std::shared_ptr<const Fan> base) : base_(std::move(base)) {
    const Fan& f = *base_;

    for (int top = 0; top < f.cone_count(); ++top)
        for (int sed : f.faces_of(top)) {
            ExtFace face;
            face.sed = sed;
            face.top = top;
            face.dim = f.cone(top).dim - f.cone(sed).dim;
            faces_.push_back(std::move(face));
        }
    std::sort(faces_.begin(), faces_.end(), [](const ExtFace& a, const ExtFace& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.sed != b.sed) return a.sed < b.sed;
        return a.top < b.top;
    });
    for (int i = 0; i < face_count(); ++i) index_[{faces_[i].sed, faces_[i].top}] = i;

    // Lattice of each face: the span of its top cone, pushed into the
    // sed-quotient coordinates and saturated there.
    for (ExtFace& face : faces_) {
        const QuotientData& q = f.cone_quotient(face.sed);
        const auto& rays = f.cone(face.top).rays;
        ZMat gens(q.quot_rank, static_cast<int>(rays.size()));
        for (std::size_t j = 0; j < rays.size(); ++j) {
            const IntVec& r = f.ray(rays[j]);
            for (int i = 0; i < q.quot_rank; ++i) {
                Int acc = 0;
                for (int t = 0; t < q.ambient_rank; ++t) acc += q.proj.at(i, t) * r[static_cast<std::size_t>(t)];
                gens.at(i, static_cast<int>(j)) = acc;
            }
        }
        face.lattice = quotient_lattice(gens, q.quot_rank);
        check(face.lattice.sub_rank == face.dim, "compactify: face lattice rank mismatch");
    }

    // Cover relations.
    for (int g = 0; g < face_count(); ++g) {
        const ExtFace& gamma = faces_[g];
        for (int top2 : f.covering_cones(gamma.top)) {
            int d = face_index(gamma.sed, top2);
            check(d >= 0, "compactify: missing same-sedentarity cover");
            covers_.push_back(Cover{g, d, false});
        }
        for (int sed2 : f.covered_cones(gamma.sed)) {
            int d = face_index(sed2, gamma.top);
            check(d >= 0, "compactify: missing sedentarity-drop cover");
            covers_.push_back(Cover{g, d, true});
        }
    }
    above_.assign(faces_.size(), {});
    below_.assign(faces_.size(), {});
    for (int i = 0; i < static_cast<int>(covers_.size()); ++i) {
        above_[static_cast<std::size_t>(covers_[i].sub)].push_back(i);
        below_[static_cast<std::size_t>(covers_[i].super)].push_back(i);
    }

    // Signs.  Writing B for a face's lattice basis, the sign of a cover
    // gamma < delta is the orientation of (normal direction, basis of gamma)
    // against the basis of delta, everything expressed in delta's own
    // coordinates by exact solving.
    for (const Cover& cv : covers_) {
        const ExtFace& gamma = faces_[static_cast<std::size_t>(cv.sub)];
        const ExtFace& delta = faces_[static_cast<std::size_t>(cv.super)];
        QMat bd = delta.lattice.sub_basis.to_qmat();
        int s = 0;
        if (!cv.drop) {
            // Same sedentarity: the normal is the image of the smallest ray
            // of top(delta) not in top(gamma); it points into delta.
            const auto& big = f.cone(delta.top).rays;
            const auto& small = f.cone(gamma.top).rays;
            int extra = -1;
            for (int r : big)
                if (!std::binary_search(small.begin(), small.end(), r)) {
                    extra = r;
                    break;
                }
            check(extra >= 0, "compactify: cover without a new ray");
            const QuotientData& q = f.cone_quotient(delta.sed);
            QMat rhs = project_column(q.proj, f.ray(extra)).hcat(gamma.lattice.sub_basis.to_qmat());
            auto sol = bd.solve(rhs);
            check(sol.has_value(), "compactify: normal does not lie in the face span");
            s = sgn(sol->determinant());
        } else {
            // Sedentarity drop: gamma's lattice is a quotient of delta's by
            // the direction that moved to infinity.  Lift gamma's basis
            // through that quotient and orient against (infinity direction,
            // lift); the extra minus sign is part of the convention.
            const QuotientData& qt = f.cone_quotient(delta.sed);
            const QuotientData& qt2 = f.cone_quotient(gamma.sed);
            ZMat m = qt2.proj * qt.quot_basis;
            QMat t = (m * delta.lattice.sub_basis).to_qmat();
            auto x = t.solve(gamma.lattice.sub_basis.to_qmat());
            check(x.has_value(), "compactify: face basis does not lift");
            IntVec e = quotient_ray(f, delta.sed, gamma.sed);
            auto y = bd.solve(ZMat::from_columns({e}, qt.quot_rank).to_qmat());
            check(y.has_value(), "compactify: infinity direction outside the face span");
            s = -sgn(y->hcat(*x).determinant());
        }
        check(s != 0, "compactify: degenerate cover orientation");
        signs_[{cv.sub, cv.super}] = s;
    }
}

int ExtComplex::face_index(int sed, int top) const {
    auto it = index_.find({sed, top});
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> ExtComplex::faces_of_dim(int d) const {
    std::vector<int> out;
    for (int i = 0; i < face_count(); ++i)
        if (faces_[static_cast<std::size_t>(i)].dim == d) out.push_back(i);
    return out;
}

bool ExtComplex::is_subface(int a, int b) const {
    const ExtFace& fa = faces_[static_cast<std::size_t>(a)];
    const ExtFace& fb = faces_[static_cast<std::size_t>(b)];
    return base_->is_face(fb.sed, fa.sed) && base_->is_face(fa.top, fb.top);
}

int ExtComplex::sign(int sub, int super) const {
    auto it = signs_.find({sub, super});
    if (it == signs_.end()) throw InputError("sign: pair is not a cover relation");
    return it->second;
}

std::vector<int> open_subcomplex(const ExtComplex& c, const std::set<int>& seds) {
    const Fan& f = c.base();
    for (int s : seds) {
        if (s < 0 || s >= f.cone_count()) throw InputError("open_subcomplex: unknown cone id");
        for (int t : f.faces_of(s))
            if (!seds.count(t))
                throw InputError("open_subcomplex: sedentarity set is not closed under faces");
    }
    std::vector<int> out;
    for (int i = 0; i < c.face_count(); ++i)
        if (seds.count(c.face(i).sed)) out.push_back(i);
    return out;
}

}  // namespace tropfan
