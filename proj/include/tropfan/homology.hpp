#pragma once

// Cellular chain complexes over the coefficient sheaves, for the fan itself,
// its canonical compactification, and sedentarity-filtered open subsets.
// Borel-Moore complexes sum over all cells, ordinary ones over compact cells;
// compact-support and ordinary cohomology are computed from the termwise
// dual (transposed) complexes.  On top of the complexes: relative and
// mapping-cone constructions, the fundamental cycle, the degree-zero cap
// map, Poincare-duality and smoothness checkers, and the dimension-level
// verification of the tropical-modification identities.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tropfan/sheaf.hpp"
#include "tropfan/weights.hpp"

namespace tropfan {

enum class Theory { ordinary, borel_moore, compact_support };

struct ChainComplex {
    int p = 0;                   // coefficient degree
    std::vector<int> dims;       // dims[q] for q = 0..top
    std::vector<QMat> boundary;  // boundary[q]: dims[q] -> dims[q-1]; boundary[0] maps to 0
    // For complexes assembled from faces: the cells of each term and the
    // column offset of each cell's coefficient block.  Empty for derived
    // complexes (duals, quotients, cones).
    std::vector<std::vector<int>> cells;
    std::vector<std::vector<int>> offsets;

    int length() const { return static_cast<int>(dims.size()); }
};

// A space to take homology of: a face subset of a compactification plus the
// sub-list of faces that are compact cells of that space.
struct CellSpace {
    std::shared_ptr<const CoeffCache> cache;
    std::vector<int> faces;
    std::vector<int> compact_faces;
    bool ordinary_supported = true;
};

CellSpace fan_space(std::shared_ptr<const Fan> f);
CellSpace compactified_space(std::shared_ptr<const Fan> f);
CellSpace semi_open_space(std::shared_ptr<const Fan> f, const std::set<int>& seds);

// The cellular complex with degree-p coefficients over the given faces.
// Boundary signs come from the complex's sign table unless overridden.
// Throws CheckError if the assembled boundaries do not square to zero.
ChainComplex build_complex(const CoeffCache& cc, const std::vector<int>& faces, int p,
                           const SignTable* signs = nullptr);

std::vector<int> homology_dims(const ChainComplex& c);
// Homology of the termwise dual complex, graded so entry q matches H^q.
std::vector<int> cohomology_dims(const ChainComplex& c);

struct HomologyTable {
    std::vector<std::vector<int>> dims;  // dims[p][q], 0 <= p,q <= d
};

HomologyTable homology_table(const CellSpace& space, Theory t);

// Quotient by an injective chain map incl[q]: sub_q -> big_q (verified).
ChainComplex quotient_complex(const ChainComplex& big, const ChainComplex& sub,
                              const std::vector<QMat>& incl);

// Cone_k = sub_{k-1} (+) big_k with boundary a (+) b -> -da (+) (phi a + db).
ChainComplex mapping_cone(const ChainComplex& sub, const ChainComplex& big,
                          const std::vector<QMat>& phi);

// Borel-Moore complex of the subfan spanned by `delta` (cone ids of the base
// fan, face-closed), with coefficient spaces computed inside the subfan, and
// its inclusion into the ambient fan's Borel-Moore complex.
struct SubfanComplex {
    ChainComplex complex;
    std::vector<QMat> inclusion;  // into build_complex over the fan's faces
};
SubfanComplex subfan_complex(const CoeffCache& cc, const std::set<int>& delta, int p);

// C^BM(fan)/C^BM(delta).
ChainComplex relative_complex(const CoeffCache& cc, const std::set<int>& delta, int p);

struct FundamentalCycle {
    QMat chain;     // coordinates in the top Borel-Moore term, degree p = d
    QMat boundary;  // its image one degree down
    bool is_cycle = false;
};
FundamentalCycle fundamental_cycle(const CoeffCache& cc);

struct CapReport {
    QMat matrix;        // cap chains, one column per dual basis vector of F^p(0)
    int source_dim = 0;  // dim F^p(0)
    int target_dim = 0;  // dim H^BM_{d-p,d}
    bool injective = false;
    bool surjective = false;
};
// The degree-zero cap: a dual class of F_p(0) goes to the contraction of the
// fundamental cycle by it, a Borel-Moore cycle in bidegree (d-p, d).
CapReport cap_degree0(const CoeffCache& cc, int p);

struct PDReport {
    bool pass = false;
    bool vanishing = false;  // H^BM_{a,b} = 0 for all b != d
    HomologyTable bm;
    std::vector<CapReport> caps;  // index = p
};
PDReport pd_check(std::shared_ptr<const Fan> f);

enum class SmoothCriterion { local, aksnes };

struct SmoothReport {
    bool smooth = false;
    SmoothCriterion criterion = SmoothCriterion::local;
    std::vector<std::pair<int, bool>> per_cone;  // cone id -> verdict at that star
};
SmoothReport smooth_check(std::shared_ptr<const Fan> f, SmoothCriterion crit);

struct VerifyReport {
    bool pass = true;
    bool hypothesis_ok = true;               // smoothness of the base fan
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

// Dimension identities for the coefficient sheaves of a tropical
// modification, including the exactness witnesses at the divisor.
VerifyReport verify_tm_coefficients(const PLFunction& fn);

// Dimension identities between the (co)homology of the modification, the
// relative homology of the base along the divisor, the semi-open union, and
// the compactifications.
VerifyReport verify_tm_homology(const PLFunction& fn);

}  // namespace tropfan
