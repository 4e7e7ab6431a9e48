#pragma once

// The cellular double complex that resolves the compact-support cochains of a
// simplicial fan by cochains of the compactified stars of its cones.  Column
// a >= 0 holds one block per a-dimensional cone, realized on the faces of the
// compactification whose sedentarity contains that cone; column -1 is the
// compact-support cochain complex itself.  Vertical maps are the cochain
// differentials of the blocks, horizontal maps restrict cochains to the
// deeper-sedentarity sub-posets (signed identity sums), and the first map
// extends compactly supported cochains by zero.
//
// On top of the double complex: row-exactness checks, the first page of the
// column-wise cohomology with its induced restriction maps, the total-complex
// comparison with compact-support cohomology, the identity between the final
// cokernel and top-degree compact-support cohomology, and the resolution
// sequence report in Euler-characteristic and full-exactness modes.

#include <memory>
#include <string>
#include <vector>

#include "tropfan/homology.hpp"

namespace tropfan {

struct DoubleComplex {
    int k = 0;    // coefficient degree
    int dim = 0;  // fan dimension d; rows are b = 0..d
    std::shared_ptr<const CoeffCache> cache;
    // Column index ci corresponds to a = ci - 1, for a = -1 .. max(d - k, -1).
    std::vector<std::vector<int>> cones;        // per column: its cone ids (ci = 0: empty)
    std::vector<std::vector<int>> dims;         // dims[ci][b]
    std::vector<std::vector<QMat>> vertical;    // vertical[ci][b]: (ci,b) -> (ci,b+1), b < d
    std::vector<std::vector<QMat>> horizontal;  // horizontal[ci][b]: (ci,b) -> (ci+1,b)

    int columns() const { return static_cast<int>(dims.size()); }
    int rows() const { return dim + 1; }
};

// Assembles the double complex for degree-k coefficients.  Throws InputError
// on non-simplicial fans or k outside [0, ambient rank]; throws CheckError if
// the assembled differentials fail d_v^2 = 0, d_h^2 = 0 or the commutation
// d_h d_v = d_v d_h.  A sign override (mutation tests) replaces the
// compactification's table everywhere it is consulted.
DoubleComplex build_double_complex(std::shared_ptr<const Fan> f, int k,
                                   const SignTable* signs = nullptr);

struct RowExactness {
    // defect[b][ci] = dim (ker out / im in) at column ci of row b.
    std::vector<std::vector<int>> defect;
    bool all_exact = false;
};
RowExactness row_exactness_check(const DoubleComplex& dc);

struct E1Page {
    int k = 0;
    std::vector<std::vector<int>> dims;  // dims[ci][b]: column-wise cohomology
    // Induced maps between consecutive columns on row b = k, computed on
    // echelon-pivot cocycle representatives: row_maps[ci]: (ci,k) -> (ci+1,k).
    std::vector<QMat> row_maps;
};
E1Page e1_page(const DoubleComplex& dc);

// Cohomology dimensions of the total complex over the columns a >= 0, graded
// by total degree n = a + b.  With exact rows this equals the compact-support
// cohomology H_c^{k,n} of the fan in every degree.
std::vector<int> total_cohomology_dims(const DoubleComplex& dc);

struct CokernelReport {
    bool pass = false;
    int k = 0;
    int cokernel_dim = 0;  // cokernel of the last induced map on row b = k
    int expected = 0;      // dim H_c^{k,d} computed independently
};
// The cokernel of the final induced restriction map between the star
// cohomology sums computes top-degree compact-support cohomology.  Requires a
// simplicial, weighted, balanced fan.
CokernelReport cokernel_identity_check(std::shared_ptr<const Fan> f, int k);

enum class DeligneMode { euler, full };

struct DeligneReport {
    int p = 0;  // degree of the resolved coefficient space; k = d - p
    int k = 0;
    // Dimension vector of the resolution sequence: dim F_p(0) first, then the
    // sums over a-dimensional cones of dim H^{p-a,p-a} of their compactified
    // stars, for a = p down to 0.
    std::vector<int> dims;
    long long euler = 0;          // alternating sum of `dims`
    bool full = false;            // full mode ran
    std::vector<int> cohomology;  // full: cohomology of the induced row complex, a = 0..d-k
    int final_dim = 0;            // full: cohomology at the last position
    int lattice_dim = 0;          // dim F_p(0), the duality identification target
    bool pass = false;
    std::vector<std::string> notes;
};
// euler mode: dimension vector and its alternating sum (pass iff zero).
// full mode: additionally runs the double complex for k = d - p, computes the
// induced complex on cohomology row k, and passes iff that complex is exact
// at every interior position and its final cohomology matches dim F_p(0).
DeligneReport deligne_sequence(std::shared_ptr<const Fan> f, int p, DeligneMode mode);

}  // namespace tropfan
