#pragma once

// Chow rings of simplicial fans via the Stanley-Reisner presentation: ray
// variables modulo monomials not supported on cones and the linear forms of
// a lattice dual basis.  Graded dimensions come from one echelon pass per
// degree; unimodular weighted fans additionally get a degree functional and
// the full Poincare-duality pairing matrices.

#include <memory>
#include <string>
#include <vector>

#include "tropfan/fan.hpp"
#include "tropfan/homology.hpp"

namespace tropfan {

struct ChowRing {
    std::shared_ptr<const Fan> fan;
    // Per degree k = 0..d: the cone-supported monomials (sorted ray-id
    // multisets) and the projection from monomial coordinates onto the
    // canonical quotient coordinates of A^k.
    std::vector<std::vector<std::vector<int>>> monomials;
    std::vector<QMat> quotient;
    std::vector<int> dims;
};

// Throws InputError unless the fan is simplicial.
ChowRing chow_ring(std::shared_ptr<const Fan> f);

std::vector<int> chow_dims(std::shared_ptr<const Fan> f);

struct PairingReport {
    bool pass = false;
    // True when the degree functional exists (unimodular, weighted, balanced,
    // one-dimensional top degree) and the actual pairing matrices were
    // checked; false means only dimension symmetry was tested.
    bool pairing_mode = false;
    std::vector<int> dims;
    std::vector<QMat> pairings;  // per k in pairing mode: A^k x A^{d-k} -> Q
    std::vector<std::string> notes;
};

PairingReport chow_pd_check(std::shared_ptr<const Fan> f);

struct FYReport {
    bool pass = false;
    std::vector<int> chow;       // dim A^p
    HomologyTable cohomology;    // H^{p,q} of the compactification
    std::vector<std::string> failures;
};

// Cross-checks dim A^p against H^{p,p} of the compactification, plus the
// vanishing of H^{p,q} for p < q and of H^{p,0} for p > 0.
FYReport fy_crosscheck(std::shared_ptr<const Fan> f);

}  // namespace tropfan
