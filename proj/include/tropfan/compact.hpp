#pragma once

// The canonical compactification of a fan, represented purely combinatorially
// as a finite poset of faces.  Every face is a pair (sed, top) of cones with
// sed <= top: it is the part of the closure of `top` that lives in the
// stratum at infinity indexed by `sed`.  Faces with sed = 0 form the original
// fan; deeper sedentarity means further out in the boundary.
//
// Each face carries the lattice it spans, written in the coordinates of the
// ambient quotient by its sedentarity.  The ordered basis columns define the
// face's canonical multivector (their wedge), which in turn fixes the +-1
// sign attached to every cover relation; the signs are exactly the incidence
// numbers used by the chain complexes downstream.

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "tropfan/fan.hpp"

namespace tropfan {

struct ExtFace {
    int sed = 0;  // cone id of the sedentarity stratum
    int top = 0;  // cone id whose closure the face lies in; sed <= top
    int dim = 0;  // dim(top) - dim(sed)
    // sub_basis spans the face's lattice inside the sed-quotient coordinates.
    QuotientData lattice;
};

struct Cover {
    int sub = 0;        // the smaller face
    int super = 0;      // the larger face, one dimension up
    bool drop = false;  // same top cone, sub has one-deeper sedentarity
};

// (sub face id, super face id) -> +-1 for every cover pair.
using SignTable = std::map<std::pair<int, int>, int>;

class ExtComplex {
public:
    explicit ExtComplex(std::shared_ptr<const Fan> base);

    const Fan& base() const { return *base_; }
    const std::shared_ptr<const Fan>& base_ptr() const { return base_; }
    int dim() const { return base_->dim(); }

    int face_count() const { return static_cast<int>(faces_.size()); }
    const ExtFace& face(int id) const { return faces_[static_cast<std::size_t>(id)]; }
    int face_index(int sed, int top) const;  // -1 if absent
    std::vector<int> faces_of_dim(int d) const;

    // Face order: a <= b iff sed(b) <= sed(a) <= top(a) <= top(b) in the fan.
    bool is_subface(int a, int b) const;

    const std::vector<Cover>& covers() const { return covers_; }
    // Indices into covers() with the given face as sub resp. super.
    const std::vector<int>& covers_above(int id) const {
        return above_[static_cast<std::size_t>(id)];
    }
    const std::vector<int>& covers_below(int id) const {
        return below_[static_cast<std::size_t>(id)];
    }

    int sign(int sub, int super) const;  // InputError if not a cover
    const SignTable& signs() const { return signs_; }

private:
    std::shared_ptr<const Fan> base_;
    std::vector<ExtFace> faces_;
    std::map<std::pair<int, int>, int> index_;
    std::vector<Cover> covers_;
    std::vector<std::vector<int>> above_, below_;
    SignTable signs_;
};

inline ExtComplex compactify(std::shared_ptr<const Fan> f) { return ExtComplex(std::move(f)); }

// Face ids with sedentarity in `seds`, the cellular model of the open union
// of those strata.  `seds` must be cone ids, down-closed under the face
// order.  Throws InputError otherwise.
std::vector<int> open_subcomplex(const ExtComplex& c, const std::set<int>& seds);

}  // namespace tropfan
