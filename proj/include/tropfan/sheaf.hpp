#pragma once

// Coefficient spaces over the faces of a compactified fan: the multi-tangent
// space F_p(face) is the span of all p-fold wedges of the lattices of
// same-sedentarity faces above it, inside the wedge power of the face's
// sedentarity-quotient coordinates.  Dual spaces F^p are represented by
// coordinates against the canonical echelon basis of F_p, so every pairing
// is a plain dot product.

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "tropfan/compact.hpp"
#include "tropfan/wedge.hpp"

namespace tropfan {

struct CoeffBasis {
    int face = 0;
    int p = 0;
    // Columns form the canonical echelon basis of F_p(face); rows are wedge
    // coordinates on the sedentarity quotient.
    QMat basis;
    int dim() const { return basis.cols(); }
};

// Memoizing provider of coefficient spaces, structure maps along face
// incidences, and contraction.  Safe for concurrent shared use.
class CoeffCache {
public:
    explicit CoeffCache(std::shared_ptr<const ExtComplex> complex);

    const ExtComplex& complex() const { return *complex_; }
    const std::shared_ptr<const ExtComplex>& complex_ptr() const { return complex_; }

    const CoeffBasis& space(int face, int p) const;

    // Matrix of F_p(super) -> F_p(sub) in the two echelon bases: an inclusion
    // when the sedentarities agree, a quotient projection followed by an
    // inclusion when the sub face sits deeper at infinity.
    QMat map(int sub, int super, int p) const;

    // Matrix of F_p(face) -> F_{p-k}(face) contracting by a fixed form given
    // in the dual coordinates of the F_k(face) basis (column vector).
    QMat contract_by_form(int face, int k, const QMat& alpha, int p) const;

    // Coordinates of the face's canonical multivector (the wedge of its
    // lattice basis) in the F_dim(face) basis.
    QMat canonical_class(int face) const;

private:
    std::shared_ptr<const ExtComplex> complex_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, CoeffBasis> memo_;
};

}  // namespace tropfan
