#include "tropfan/chow.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"

namespace tropfan {

namespace {

struct Monomials {
    std::vector<std::vector<int>> list;  // sorted ray-id multisets
    std::map<std::vector<int>, int> index;
};

// Multisets of size k on `rays` using every ray at least once.
void emit_with_support(const std::vector<int>& rays, std::size_t at, int left,
                       std::vector<int>& acc, std::vector<std::vector<int>>& out) {
    if (at == rays.size()) {
        if (left == 0) out.push_back(acc);
        return;
    }
    int remaining_rays = static_cast<int>(rays.size() - at);
    for (int e = 1; e + (remaining_rays - 1) <= left; ++e) {
        acc.insert(acc.end(), static_cast<std::size_t>(e), rays[at]);
        emit_with_support(rays, at + 1, left - e, acc, out);
        acc.resize(acc.size() - static_cast<std::size_t>(e));
    }
}

Monomials degree_monomials(const Fan& f, int k) {
    Monomials m;
    if (k == 0) {
        m.list.push_back({});
    } else {
        for (int id = 1; id < f.cone_count(); ++id) {
            const std::vector<int>& rays = f.cone(id).rays;
            if (static_cast<int>(rays.size()) > k) continue;
            std::vector<int> acc;
            emit_with_support(rays, 0, k, acc, m.list);
        }
        std::sort(m.list.begin(), m.list.end());
    }
    for (std::size_t i = 0; i < m.list.size(); ++i) m.index[m.list[i]] = static_cast<int>(i);
    return m;
}

// Index of mono * extra in `target`, or -1 when the product's support is not
// a cone (a Stanley-Reisner zero).
int product_index(const Fan& f, const Monomials& target, std::vector<int> mono,
                  const std::vector<int>& extra) {
    mono.insert(mono.end(), extra.begin(), extra.end());
    std::sort(mono.begin(), mono.end());
    std::vector<int> support = mono;
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (f.cone_index(support) < 0) return -1;
    auto it = target.index.find(mono);
    check(it != target.index.end(), "chow: cone-supported product missing from basis");
    return it->second;
}

// Columns: one relation per (lattice dual basis vector, degree-(k-1)
// monomial), expanded in the degree-k monomial coordinates.
QMat relation_columns(const Fan& f, const Monomials& below, const Monomials& here) {
    int n = f.ambient_rank();
    QMat r(static_cast<int>(here.list.size()),
           n * static_cast<int>(below.list.size()));
    for (std::size_t j = 0; j < below.list.size(); ++j)
        for (int t = 0; t < n; ++t)
            for (int rho = 0; rho < f.ray_count(); ++rho) {
                const Int& c = f.ray(rho)[static_cast<std::size_t>(t)];
                if (c == 0) continue;
                int idx = product_index(f, here, below.list[j], {rho});
                if (idx < 0) continue;
                int col = static_cast<int>(j) * n + t;
                r.at(idx, col) = r.at(idx, col) + Rat(c);
            }
    return r;
}

}  // namespace

ChowRing chow_ring(std::shared_ptr<const Fan> f) {
    if (!f->simplicial()) throw InputError("chow: fan must be simplicial");
    int d = f->dim();
    ChowRing ring;
    ring.fan = f;

    std::vector<Monomials> monos;
    for (int k = 0; k <= d + 1; ++k) monos.push_back(degree_monomials(*f, k));
    for (int k = 0; k <= d + 1; ++k) {
        QMat rel = (k == 0) ? QMat::zero(1, 0)
                            : relation_columns(*f, monos[static_cast<std::size_t>(k) - 1],
                                               monos[static_cast<std::size_t>(k)]);
        QMat proj = rel.left_kernel_rows();
        if (k <= d) {
            ring.monomials.push_back(monos[static_cast<std::size_t>(k)].list);
            ring.quotient.push_back(proj);
            ring.dims.push_back(proj.rows());
        } else {
            check(proj.rows() == 0, "chow: nonzero graded piece above the fan dimension");
        }
    }
    check(ring.dims[0] == 1, "chow: degree zero is not one-dimensional");
    return ring;
}

std::vector<int> chow_dims(std::shared_ptr<const Fan> f) { return chow_ring(std::move(f)).dims; }

PairingReport chow_pd_check(std::shared_ptr<const Fan> f) {
    ChowRing ring = chow_ring(f);
    int d = f->dim();
    PairingReport rep;
    rep.dims = ring.dims;

    bool symmetric = true;
    for (int k = 0; k <= d; ++k)
        if (ring.dims[static_cast<std::size_t>(k)] != ring.dims[static_cast<std::size_t>(d - k)])
            symmetric = false;
    if (!symmetric) rep.notes.push_back("graded dimensions are not symmetric");

    bool can_pair = true;
    if (!is_unimodular(*f)) {
        rep.notes.push_back("fan is not unimodular: dimension symmetry only");
        can_pair = false;
    } else if (!f->weights() || !check_balancing(*f).balanced) {
        rep.notes.push_back("fan is not weighted-balanced: dimension symmetry only");
        can_pair = false;
    } else if (ring.dims[static_cast<std::size_t>(d)] != 1) {
        rep.notes.push_back("top graded piece is not one-dimensional");
        can_pair = false;
    }
    if (!can_pair) {
        rep.pairing_mode = false;
        rep.pass = symmetric && ring.dims[static_cast<std::size_t>(d)] == 1;
        return rep;
    }

    rep.pairing_mode = true;
    Monomials top;
    top.list = ring.monomials[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < top.list.size(); ++i) top.index[top.list[i]] = static_cast<int>(i);

    // Degree functional: the unique functional on the top coordinates that
    // factors through A^d and sends a reference facet monomial to its weight.
    const QMat& pd = ring.quotient[static_cast<std::size_t>(d)];  // 1 x |M_d|
    std::vector<int> facets = f->facets();
    QMat deg_row;
    {
        int iref = top.index.at(f->cone(facets[0]).rays);
        Rat c = pd.at(0, iref);
        check(c != 0, "chow: reference facet monomial vanishes in the quotient");
        deg_row = pd.scaled(Rat(f->weights()->at(facets[0])) / c);
    }
    bool deg_ok = true;
    for (int sigma : facets) {
        Rat got = deg_row.at(0, top.index.at(f->cone(sigma).rays));
        if (got != Rat(f->weights()->at(sigma))) {
            deg_ok = false;
            std::ostringstream os;
            os << "facet monomial of cone " << sigma << " has degree " << to_string(got)
               << ", weight is " << to_string(f->weights()->at(sigma));
            rep.notes.push_back(os.str());
        }
    }

    bool nondeg = true;
    for (int k = 0; k <= d; ++k) {
        const auto& mk = ring.monomials[static_cast<std::size_t>(k)];
        const auto& ml = ring.monomials[static_cast<std::size_t>(d - k)];
        QMat g(static_cast<int>(mk.size()), static_cast<int>(ml.size()));
        for (std::size_t i = 0; i < mk.size(); ++i)
            for (std::size_t j = 0; j < ml.size(); ++j) {
                int idx = product_index(*f, top, mk[i], ml[j]);
                if (idx >= 0) g.at(static_cast<int>(i), static_cast<int>(j)) = deg_row.at(0, idx);
            }
        const QMat& p_k = ring.quotient[static_cast<std::size_t>(k)];
        const QMat& p_l = ring.quotient[static_cast<std::size_t>(d - k)];
        // The form must kill relations on both sides, so it descends.
        check((g * p_l.kernel()).is_zero() && (p_k.kernel().transpose() * g).is_zero(),
              "chow: pairing does not descend to the quotient");
        QMat b = p_k.right_inverse().transpose() * g * p_l.right_inverse();
        rep.pairings.push_back(b);
        if (b.rows() != b.cols() || b.rank() != b.rows()) {
            nondeg = false;
            rep.notes.push_back("degenerate pairing in degree " + std::to_string(k));
        }
    }
    rep.pass = symmetric && deg_ok && nondeg;
    return rep;
}

FYReport fy_crosscheck(std::shared_ptr<const Fan> f) {
    FYReport rep;
    rep.chow = chow_dims(f);
    int d = f->dim();
    rep.cohomology = homology_table(compactified_space(f), Theory::ordinary);
    rep.pass = true;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.failures.push_back(s);
    };
    for (int p = 0; p <= d; ++p) {
        for (int q = 0; q <= d; ++q) {
            int h = rep.cohomology.dims[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            std::ostringstream os;
            if (p == q && h != rep.chow[static_cast<std::size_t>(p)]) {
                os << "H^{" << p << "," << p << "} = " << h << " but dim A^" << p << " = "
                   << rep.chow[static_cast<std::size_t>(p)];
                fail(os.str());
            } else if (p < q && h != 0) {
                os << "H^{" << p << "," << q << "} = " << h << ", expected 0 above the diagonal";
                fail(os.str());
            } else if (p > 0 && q == 0 && h != 0) {
                os << "H^{" << p << ",0} = " << h << ", expected 0";
                fail(os.str());
            }
        }
    }
    return rep;
}

}  // namespace tropfan
