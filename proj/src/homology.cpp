#include "tropfan/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tropfan/util.hpp"
#include "tropfan/wedge.hpp"

namespace tropfan {

namespace {

int dim_at(const ChainComplex& c, int q) {
    return (q >= 0 && q < c.length()) ? c.dims[static_cast<std::size_t>(q)] : 0;
}

QMat boundary_at(const ChainComplex& c, int q) {
    if (q >= 1 && q < c.length()) return c.boundary[static_cast<std::size_t>(q)];
    return QMat::zero(dim_at(c, q - 1), dim_at(c, q));
}

void check_squares_zero(const ChainComplex& c) {
    for (int q = 2; q < c.length(); ++q)
        check((boundary_at(c, q - 1) * boundary_at(c, q)).is_zero(),
              "chain complex boundary does not square to zero");
}

std::shared_ptr<const CoeffCache> make_cache(std::shared_ptr<const Fan> f) {
    auto ext = std::make_shared<const ExtComplex>(std::move(f));
    return std::make_shared<const CoeffCache>(ext);
}

std::vector<int> sed_zero_faces(const ExtComplex& x) {
    std::vector<int> out;
    for (int id = 0; id < x.face_count(); ++id)
        if (x.face(id).sed == 0) out.push_back(id);
    return out;
}

std::vector<int> all_faces(const ExtComplex& x) {
    std::vector<int> out(static_cast<std::size_t>(x.face_count()));
    for (int id = 0; id < x.face_count(); ++id) out[static_cast<std::size_t>(id)] = id;
    return out;
}

// Echelon basis of sum of wedge powers of the lattices of the cones in `tops`
// that contain `tau`, in ambient wedge coordinates.  With `tops` = all cones
// this is the fan-level coefficient space at tau; restricting `tops` to a
// subfan computes the subfan's own coefficient space without rebuilding it.
QMat restricted_span(const Fan& f, const std::vector<int>& tops, int tau, int p) {
    QMat cols(WedgeBasis::get(f.ambient_rank(), p).dim(), 0);
    for (int d : tops)
        if (f.is_face(tau, d))
            cols = cols.hcat(wedge_power_matrix(f.cone_quotient(d).sub_basis.to_qmat(), p));
    return cols.column_space();
}

std::vector<int> ranks_of_boundaries(const ChainComplex& c, bool transpose) {
    std::vector<int> r(static_cast<std::size_t>(c.length()) + 1, 0);
    for (int q = 1; q < c.length(); ++q) {
        const QMat& b = c.boundary[static_cast<std::size_t>(q)];
        r[static_cast<std::size_t>(q)] = transpose ? b.transpose().rank() : b.rank();
    }
    return r;
}

void require_weighted_pure(const Fan& f, const char* who) {
    if (!f.pure()) throw InputError(std::string(who) + ": fan must be pure");
    if (!f.weights()) throw InputError(std::string(who) + ": fan must carry weights");
}

// Cone ids of the divisor inside its base fan (face-closed).  An empty
// divisor is the empty subfan: it contributes no cones, not even the origin.
std::set<int> divisor_cone_set(const Divisor& div) {
    std::set<int> out;
    if (div.empty()) return out;
    for (const auto& [base_id, div_id] : div.base_cone) out.insert(base_id);
    return out;
}

bool equal_padded(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        int x = i < a.size() ? a[i] : 0;
        int y = i < b.size() ? b[i] : 0;
        if (x != y) return false;
    }
    return true;
}

std::string fmt_dims(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

CellSpace fan_space(std::shared_ptr<const Fan> f) {
    CellSpace sp;
    sp.cache = make_cache(std::move(f));
    const ExtComplex& x = sp.cache->complex();
    sp.faces = sed_zero_faces(x);
    sp.compact_faces = {x.face_index(0, 0)};
    sp.ordinary_supported = true;
    return sp;
}

CellSpace compactified_space(std::shared_ptr<const Fan> f) {
    CellSpace sp;
    sp.cache = make_cache(std::move(f));
    sp.faces = all_faces(sp.cache->complex());
    sp.compact_faces = sp.faces;
    sp.ordinary_supported = true;
    return sp;
}

CellSpace semi_open_space(std::shared_ptr<const Fan> f, const std::set<int>& seds) {
    CellSpace sp;
    sp.cache = make_cache(std::move(f));
    sp.faces = open_subcomplex(sp.cache->complex(), seds);
    sp.ordinary_supported = false;
    return sp;
}

ChainComplex build_complex(const CoeffCache& cc, const std::vector<int>& faces, int p,
                           const SignTable* signs) {
    const ExtComplex& x = cc.complex();
    std::set<int> fs(faces.begin(), faces.end());
    for (int id : fs)
        if (id < 0 || id >= x.face_count()) throw InputError("build_complex: unknown face id");

    int top = x.dim();
    ChainComplex c;
    c.p = p;
    c.dims.assign(static_cast<std::size_t>(top) + 1, 0);
    c.cells.assign(static_cast<std::size_t>(top) + 1, {});
    c.offsets.assign(static_cast<std::size_t>(top) + 1, {});
    std::map<int, int> offset_of;
    for (int id : fs) {  // ascending ids: deterministic layout
        int q = x.face(id).dim;
        auto qi = static_cast<std::size_t>(q);
        c.cells[qi].push_back(id);
        c.offsets[qi].push_back(c.dims[qi]);
        offset_of[id] = c.dims[qi];
        c.dims[qi] += cc.space(id, p).dim();
    }

    c.boundary.resize(static_cast<std::size_t>(top) + 1);
    c.boundary[0] = QMat::zero(0, c.dims[0]);
    for (int q = 1; q <= top; ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat b(c.dims[qi - 1], c.dims[qi]);
        for (std::size_t k = 0; k < c.cells[qi].size(); ++k) {
            int delta = c.cells[qi][k];
            int dcol = c.offsets[qi][k];
            for (int ci : x.covers_below(delta)) {
                int gamma = x.covers()[static_cast<std::size_t>(ci)].sub;
                if (!fs.count(gamma)) continue;
                int s = x.sign(gamma, delta);
                if (signs) {
                    auto it = signs->find({gamma, delta});
                    if (it != signs->end()) s = it->second;
                }
                QMat blk = cc.map(gamma, delta, p);
                int grow = offset_of.at(gamma);
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j)
                        b.at(grow + i, dcol + j) = blk.at(i, j) * s;
            }
        }
        c.boundary[qi] = std::move(b);
    }
    check_squares_zero(c);
    return c;
}

std::vector<int> homology_dims(const ChainComplex& c) {
    std::vector<int> r = ranks_of_boundaries(c, /*transpose=*/false);
    std::vector<int> h(static_cast<std::size_t>(c.length()), 0);
    for (int q = 0; q < c.length(); ++q) {
        auto qi = static_cast<std::size_t>(q);
        int above = (q + 1 < c.length()) ? r[qi + 1] : 0;
        h[qi] = c.dims[qi] - r[qi] - above;
    }
    return h;
}

std::vector<int> cohomology_dims(const ChainComplex& c) {
    std::vector<int> r = ranks_of_boundaries(c, /*transpose=*/true);
    std::vector<int> h(static_cast<std::size_t>(c.length()), 0);
    for (int q = 0; q < c.length(); ++q) {
        auto qi = static_cast<std::size_t>(q);
        int d_out = (q + 1 < c.length()) ? r[qi + 1] : 0;  // rank of d^q = (boundary_{q+1})^T
        h[qi] = c.dims[qi] - d_out - r[qi];                // minus rank of d^{q-1}
    }
    return h;
}

HomologyTable homology_table(const CellSpace& space, Theory t) {
    if (t == Theory::ordinary && !space.ordinary_supported)
        throw InputError("ordinary homology is not defined for semi-open spaces here");
    const std::vector<int>& faces = (t == Theory::ordinary) ? space.compact_faces : space.faces;
    int d = space.cache->complex().dim();
    HomologyTable tab;
    tab.dims.assign(static_cast<std::size_t>(d) + 1, {});
    for (int p = 0; p <= d; ++p) {
        ChainComplex c = build_complex(*space.cache, faces, p);
        tab.dims[static_cast<std::size_t>(p)] =
            (t == Theory::borel_moore) ? homology_dims(c) : cohomology_dims(c);
    }
    return tab;
}

ChainComplex quotient_complex(const ChainComplex& big, const ChainComplex& sub,
                              const std::vector<QMat>& incl) {
    ChainComplex c;
    c.p = big.p;
    int len = big.length();
    c.dims.assign(static_cast<std::size_t>(len), 0);
    c.boundary.resize(static_cast<std::size_t>(len));

    std::vector<QMat> proj(static_cast<std::size_t>(len));
    for (int q = 0; q < len; ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat in = (qi < incl.size()) ? incl[qi] : QMat::zero(dim_at(big, q), dim_at(sub, q));
        check(in.rows() == dim_at(big, q) && in.cols() == dim_at(sub, q),
              "quotient_complex: inclusion block has wrong shape");
        check(in.rank() == in.cols(), "quotient_complex: inclusion is not injective");
        if (q >= 1) {
            QMat prev = (qi - 1 < incl.size()) ? incl[qi - 1]
                                               : QMat::zero(dim_at(big, q - 1), dim_at(sub, q - 1));
            check(boundary_at(big, q) * in == prev * boundary_at(sub, q),
                  "quotient_complex: inclusion is not a chain map");
        }
        proj[qi] = in.left_kernel_rows();
        c.dims[qi] = proj[qi].rows();
    }
    c.boundary[0] = QMat::zero(0, c.dims[0]);
    for (int q = 1; q < len; ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat lift = proj[qi].rows() > 0 ? proj[qi].right_inverse() : QMat::zero(dim_at(big, q), 0);
        c.boundary[qi] = proj[qi - 1] * boundary_at(big, q) * lift;
    }
    check_squares_zero(c);
    return c;
}

ChainComplex mapping_cone(const ChainComplex& sub, const ChainComplex& big,
                          const std::vector<QMat>& phi) {
    for (int q = 0; q < std::max(sub.length(), big.length()); ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat f = (qi < phi.size()) ? phi[qi] : QMat::zero(dim_at(big, q), dim_at(sub, q));
        check(f.rows() == dim_at(big, q) && f.cols() == dim_at(sub, q),
              "mapping_cone: map block has wrong shape");
        if (q >= 1) {
            QMat prev = (qi - 1 < phi.size()) ? phi[qi - 1]
                                              : QMat::zero(dim_at(big, q - 1), dim_at(sub, q - 1));
            check(boundary_at(big, q) * f == prev * boundary_at(sub, q),
                  "mapping_cone: not a chain map");
        }
    }

    int len = std::max(sub.length() + 1, big.length());
    ChainComplex c;
    c.p = big.p;
    c.dims.assign(static_cast<std::size_t>(len), 0);
    c.boundary.resize(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k)
        c.dims[static_cast<std::size_t>(k)] = dim_at(sub, k - 1) + dim_at(big, k);
    c.boundary[0] = QMat::zero(0, c.dims[0]);
    for (int k = 1; k < len; ++k) {
        int rs = dim_at(sub, k - 2), rb = dim_at(big, k - 1);
        int cs = dim_at(sub, k - 1), cb = dim_at(big, k);
        QMat b(rs + rb, cs + cb);
        QMat ds = boundary_at(sub, k - 1);
        for (int i = 0; i < rs; ++i)
            for (int j = 0; j < cs; ++j) b.at(i, j) = -ds.at(i, j);
        QMat f = (static_cast<std::size_t>(k - 1) < phi.size())
                     ? phi[static_cast<std::size_t>(k - 1)]
                     : QMat::zero(rb, cs);
        for (int i = 0; i < rb; ++i)
            for (int j = 0; j < cs; ++j) b.at(rs + i, j) = f.at(i, j);
        QMat db = boundary_at(big, k);
        for (int i = 0; i < rb; ++i)
            for (int j = 0; j < cb; ++j) b.at(rs + i, cs + j) = db.at(i, j);
        c.boundary[static_cast<std::size_t>(k)] = std::move(b);
    }
    check_squares_zero(c);
    return c;
}

SubfanComplex subfan_complex(const CoeffCache& cc, const std::set<int>& delta, int p) {
    const ExtComplex& x = cc.complex();
    const Fan& f = x.base();
    for (int id : delta) {
        if (id < 0 || id >= f.cone_count()) throw InputError("subfan_complex: unknown cone id");
        for (int t : f.faces_of(id))
            if (!delta.count(t)) throw InputError("subfan_complex: cone set is not face-closed");
    }
    std::vector<int> tops(delta.begin(), delta.end());

    ChainComplex big = build_complex(cc, sed_zero_faces(x), p);

    int top = x.dim();
    ChainComplex c;
    c.p = p;
    c.dims.assign(static_cast<std::size_t>(top) + 1, 0);
    c.cells.assign(static_cast<std::size_t>(top) + 1, {});
    c.offsets.assign(static_cast<std::size_t>(top) + 1, {});
    c.boundary.resize(static_cast<std::size_t>(top) + 1);

    std::map<int, QMat> basis;  // cone id -> restricted coefficient basis
    std::map<int, int> offset_of;
    for (int id : tops) {  // ascending cone ids
        int q = f.cone(id).dim;
        auto qi = static_cast<std::size_t>(q);
        basis.emplace(id, restricted_span(f, tops, id, p));
        c.cells[qi].push_back(id);
        c.offsets[qi].push_back(c.dims[qi]);
        offset_of[id] = c.dims[qi];
        c.dims[qi] += basis.at(id).cols();
    }

    c.boundary[0] = QMat::zero(0, c.dims[0]);
    for (int q = 1; q <= top; ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat b(c.dims[qi - 1], c.dims[qi]);
        for (std::size_t k = 0; k < c.cells[qi].size(); ++k) {
            int dl = c.cells[qi][k];
            int dcol = c.offsets[qi][k];
            for (int gm : f.covered_cones(dl)) {
                if (!delta.count(gm)) continue;
                int s = x.sign(x.face_index(0, gm), x.face_index(0, dl));
                auto blk = basis.at(gm).solve(basis.at(dl));
                check(blk.has_value(), "subfan_complex: coefficient space fails to include");
                int grow = offset_of.at(gm);
                for (int i = 0; i < blk->rows(); ++i)
                    for (int j = 0; j < blk->cols(); ++j)
                        b.at(grow + i, dcol + j) = blk->at(i, j) * s;
            }
        }
        c.boundary[qi] = std::move(b);
    }
    check_squares_zero(c);

    // Inclusion into the ambient fan's Borel-Moore complex.
    std::vector<QMat> incl(static_cast<std::size_t>(top) + 1);
    for (int q = 0; q <= top; ++q) {
        auto qi = static_cast<std::size_t>(q);
        QMat in(big.dims[qi], c.dims[qi]);
        for (std::size_t k = 0; k < c.cells[qi].size(); ++k) {
            int id = c.cells[qi][k];
            const CoeffBasis& ambient = cc.space(x.face_index(0, id), p);
            auto blk = ambient.basis.solve(basis.at(id));
            check(blk.has_value(), "subfan_complex: restricted space not inside ambient space");
            // Locate the cone's block offset inside the ambient complex term.
            const auto& bcells = big.cells[qi];
            auto it = std::find(bcells.begin(), bcells.end(), x.face_index(0, id));
            check(it != bcells.end(), "subfan_complex: face missing from ambient complex");
            int brow = big.offsets[qi][static_cast<std::size_t>(it - bcells.begin())];
            for (int i = 0; i < blk->rows(); ++i)
                for (int j = 0; j < blk->cols(); ++j)
                    in.at(brow + i, c.offsets[qi][k] + j) = blk->at(i, j);
        }
        incl[qi] = std::move(in);
    }
    return SubfanComplex{std::move(c), std::move(incl)};
}

ChainComplex relative_complex(const CoeffCache& cc, const std::set<int>& delta, int p) {
    ChainComplex big = build_complex(cc, sed_zero_faces(cc.complex()), p);
    SubfanComplex sub = subfan_complex(cc, delta, p);
    return quotient_complex(big, sub.complex, sub.inclusion);
}

FundamentalCycle fundamental_cycle(const CoeffCache& cc) {
    const ExtComplex& x = cc.complex();
    const Fan& f = x.base();
    require_weighted_pure(f, "fundamental_cycle");
    int d = f.dim();
    ChainComplex c = build_complex(cc, sed_zero_faces(x), d);

    FundamentalCycle out;
    auto di = static_cast<std::size_t>(d);
    out.chain = QMat::zero(c.dims[di], 1);
    for (std::size_t k = 0; k < c.cells[di].size(); ++k) {
        int face = c.cells[di][k];
        int sigma = x.face(face).top;
        QMat nu = cc.canonical_class(face);
        const Int& w = f.weights()->at(sigma);
        for (int i = 0; i < nu.rows(); ++i)
            out.chain.at(c.offsets[di][k] + i, 0) = nu.at(i, 0) * Rat(w);
    }
    out.boundary = boundary_at(c, d) * out.chain;
    out.is_cycle = out.boundary.is_zero();
    return out;
}

CapReport cap_degree0(const CoeffCache& cc, int p) {
    const ExtComplex& x = cc.complex();
    const Fan& f = x.base();
    require_weighted_pure(f, "cap_degree0");
    if (!check_balancing(f).balanced) throw InputError("cap_degree0: fan must be balanced");
    int d = f.dim();
    if (p < 0 || p > d) throw InputError("cap_degree0: degree out of range");

    int origin = x.face_index(0, 0);
    int m = cc.space(origin, p).dim();
    ChainComplex c = build_complex(cc, sed_zero_faces(x), d - p);

    auto di = static_cast<std::size_t>(d);
    CapReport rep;
    rep.source_dim = m;
    rep.matrix = QMat::zero(c.dims[di], m);
    for (std::size_t k = 0; k < c.cells[di].size(); ++k) {
        int face = c.cells[di][k];
        int sigma = x.face(face).top;
        // Restriction of dual classes: transpose of the coefficient inclusion.
        QMat restrict = cc.map(origin, face, p).transpose();
        QMat nu = cc.canonical_class(face).scaled(Rat(f.weights()->at(sigma)));
        for (int j = 0; j < m; ++j) {
            QMat alpha = QMat::zero(m, 1);
            alpha.at(j, 0) = Rat(1);
            QMat kappa = cc.contract_by_form(face, p, restrict * alpha, d);
            QMat val = kappa * nu;
            for (int i = 0; i < val.rows(); ++i)
                rep.matrix.at(c.offsets[di][k] + i, j) = val.at(i, 0);
        }
    }
    check((boundary_at(c, d) * rep.matrix).is_zero(), "cap_degree0: image is not made of cycles");
    rep.target_dim = homology_dims(c)[di];
    int r = rep.matrix.rank();  // no boundaries in top degree, so rank = class rank
    rep.injective = (r == m);
    rep.surjective = (r == rep.target_dim);
    return rep;
}

PDReport pd_check(std::shared_ptr<const Fan> f) {
    require_weighted_pure(*f, "pd_check");
    if (!check_balancing(*f).balanced) throw InputError("pd_check: fan must be balanced");
    CellSpace sp = fan_space(f);
    int d = f->dim();

    PDReport rep;
    rep.bm = homology_table(sp, Theory::borel_moore);
    rep.vanishing = true;
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q)
            if (q != d && rep.bm.dims[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] != 0)
                rep.vanishing = false;
    rep.pass = rep.vanishing;
    for (int p = 0; p <= d; ++p) {
        rep.caps.push_back(cap_degree0(*sp.cache, p));
        const CapReport& cap = rep.caps.back();
        if (!(cap.injective && cap.surjective)) rep.pass = false;
    }
    return rep;
}

SmoothReport smooth_check(std::shared_ptr<const Fan> f, SmoothCriterion crit) {
    require_weighted_pure(*f, "smooth_check");
    int d = f->dim();
    SmoothReport rep;
    rep.criterion = crit;
    rep.smooth = true;
    for (int sigma = 0; sigma < f->cone_count(); ++sigma) {
        StarData star = star_fan(*f, sigma);
        auto sf = std::make_shared<const Fan>(std::move(star.fan));
        bool ok = true;
        if (crit == SmoothCriterion::local) {
            ok = pd_check(sf).pass;
        } else {
            if (f->cone(sigma).dim == d - 1) {
                // Quasilinearity across codimension one: the star's rays admit
                // exactly one relation.
                std::vector<int> all_rays(static_cast<std::size_t>(sf->ray_count()));
                for (int i = 0; i < sf->ray_count(); ++i) all_rays[static_cast<std::size_t>(i)] = i;
                ok = sf->ray_matrix(all_rays).to_qmat().rank() == sf->ray_count() - 1;
            }
            if (ok) {
                HomologyTable bm = homology_table(fan_space(sf), Theory::borel_moore);
                int sd = sf->dim();
                for (std::size_t a = 0; a < bm.dims.size() && ok; ++a)
                    for (std::size_t b = 0; b < bm.dims[a].size(); ++b)
                        if (static_cast<int>(b) != sd && bm.dims[a][b] != 0) ok = false;
            }
        }
        rep.per_cone.emplace_back(sigma, ok);
        if (!ok) rep.smooth = false;
    }
    return rep;
}

namespace {

void note_hypothesis(VerifyReport& rep, const std::shared_ptr<const Fan>& base) {
    try {
        if (!smooth_check(base, SmoothCriterion::local).smooth) {
            rep.hypothesis_ok = false;
            rep.notes.push_back("warning: base fan is not smooth; identities are not guaranteed");
        }
    } catch (const InputError& e) {
        rep.hypothesis_ok = false;
        rep.notes.push_back(std::string("warning: could not verify smoothness hypothesis: ") +
                            e.what());
    }
}

void expect_eq(VerifyReport& rep, int got, int want, const std::string& what) {
    if (got != want) {
        std::ostringstream os;
        os << what << ": got " << got << ", expected " << want;
        rep.pass = false;
        rep.failures.push_back(os.str());
    }
}

void expect_tables(VerifyReport& rep, const std::vector<int>& got, const std::vector<int>& want,
                   const std::string& what) {
    if (got != want) {
        rep.pass = false;
        rep.failures.push_back(what + ": got " + fmt_dims(got) + ", expected " + fmt_dims(want));
    }
}

// Matrix of v -> v /\ e_last from ambient (p-1)-wedges over Q^n into p-wedges
// over Q^{n+1}, via the coordinate inclusion Q^n c Q^{n+1}.
QMat wedge_with_new_axis(int n, int p) {
    const WedgeBasis& src = WedgeBasis::get(n, p - 1);
    const WedgeBasis& dst = WedgeBasis::get(n + 1, p);
    QMat m = QMat::zero(dst.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
        std::vector<int> s = src.subset(j);
        s.push_back(n);  // already the largest index: no reordering sign
        m.at(dst.index_of(s), j) = Rat(1);
    }
    return m;
}

}  // namespace

VerifyReport verify_tm_coefficients(const PLFunction& fn) {
    VerifyReport rep;
    const std::shared_ptr<const Fan>& base = fn.fan_ptr();
    note_hypothesis(rep, base);

    Modification mod = tropical_modification(fn);
    auto mod_fan = std::make_shared<const Fan>(mod.fan);
    auto cc_base = make_cache(base);
    auto cc_mod = make_cache(mod_fan);
    const ExtComplex& xb = cc_base->complex();
    const ExtComplex& xm = cc_mod->complex();

    std::set<int> delta = divisor_cone_set(mod.div);
    std::vector<int> delta_tops(delta.begin(), delta.end());
    int n = base->ambient_rank();
    int d = base->dim();

    QMat drop_axis = QMat::zero(n, n + 1);  // coordinate projection killing the new axis
    for (int i = 0; i < n; ++i) drop_axis.at(i, i) = Rat(1);

    // Degrees above the ambient rank have zero coefficient spaces.
    auto base_dim = [&](int sigma, int p) {
        return (p > n) ? 0 : cc_base->space(xb.face_index(0, sigma), p).dim();
    };

    for (int p = 0; p <= d + 1; ++p) {
        for (int sigma = 0; sigma < base->cone_count(); ++sigma) {
            if (delta.count(sigma)) continue;
            int dim_base = base_dim(sigma, p);
            int dim_graph =
                cc_mod->space(xm.face_index(0, mod.graph_cone.at(sigma)), p).dim();
            std::ostringstream os;
            os << "dim F_" << p << " at the graph of cone " << sigma;
            expect_eq(rep, dim_graph, dim_base, os.str());
        }
        for (int dl : delta_tops) {
            QMat below = (p >= 1) ? restricted_span(*base, delta_tops, dl, p - 1)
                                  : QMat::zero(1, 0);
            int a = below.cols();
            int b = restricted_span(*base, delta_tops, dl, p).cols();
            int cdim = base_dim(dl, p);
            const CoeffBasis& up_space =
                cc_mod->space(xm.face_index(0, mod.up_cone.at(dl)), p);
            int dim_up = up_space.dim();
            int dim_graph =
                cc_mod->space(xm.face_index(0, mod.graph_cone.at(dl)), p).dim();
            {
                std::ostringstream os;
                os << "dim F_" << p << " at the up-cone over divisor cone " << dl;
                expect_eq(rep, dim_up, a + b, os.str());
            }
            {
                std::ostringstream os;
                os << "dim F_" << p << " at the graph of divisor cone " << dl;
                expect_eq(rep, dim_graph, a + cdim, os.str());
            }
            if (p >= 1 && a > 0) {
                QMat lifted = wedge_with_new_axis(n, p) * below;
                auto coords = up_space.basis.solve(lifted);
                if (!coords) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << "wedge lift of divisor classes misses F_" << p
                       << " at the up-cone over divisor cone " << dl;
                    rep.failures.push_back(os.str());
                } else {
                    std::ostringstream os;
                    os << "rank of the wedge lift into F_" << p << " at up-cone over cone " << dl;
                    expect_eq(rep, coords->rank(), a, os.str());
                    if (!(wedge_power_matrix(drop_axis, p) * lifted).is_zero()) {
                        rep.pass = false;
                        rep.failures.push_back(
                            "wedge lift not killed by the projection pushforward at cone " +
                            std::to_string(dl));
                    }
                }
            }
        }
    }
    return rep;
}

VerifyReport verify_tm_homology(const PLFunction& fn) {
    VerifyReport rep;
    const std::shared_ptr<const Fan>& base = fn.fan_ptr();
    note_hypothesis(rep, base);

    Modification mod = tropical_modification(fn);
    auto mod_fan = std::make_shared<const Fan>(mod.fan);
    auto cc_base = make_cache(base);
    auto cc_mod = make_cache(mod_fan);
    std::set<int> delta = divisor_cone_set(mod.div);
    int d = base->dim();

    std::set<int> seds{0};
    if (mod.rho_ray >= 0) seds.insert(mod_fan->cone_index({mod.rho_ray}));
    std::vector<int> semi_open = open_subcomplex(cc_mod->complex(), seds);
    std::vector<int> mod_faces = sed_zero_faces(cc_mod->complex());
    std::vector<int> base_faces = sed_zero_faces(cc_base->complex());

    for (int p = 0; p <= d; ++p) {
        ChainComplex big = build_complex(*cc_base, base_faces, p);
        SubfanComplex sub = subfan_complex(*cc_base, delta, p);
        ChainComplex rel = quotient_complex(big, sub.complex, sub.inclusion);
        ChainComplex cone = mapping_cone(sub.complex, big, sub.inclusion);
        check(equal_padded(homology_dims(cone), homology_dims(rel)),
              "mapping cone homology disagrees with the quotient complex");

        ChainComplex mod_bm = build_complex(*cc_mod, mod_faces, p);
        {
            std::ostringstream os;
            os << "BM homology of the modification vs relative homology, p=" << p;
            expect_tables(rep, homology_dims(mod_bm), homology_dims(rel), os.str());
        }
        {
            std::ostringstream os;
            os << "compact-support cohomology of the modification vs relative, p=" << p;
            expect_tables(rep, cohomology_dims(mod_bm), cohomology_dims(rel), os.str());
        }
        {
            ChainComplex semi = build_complex(*cc_mod, semi_open, p);
            std::ostringstream os;
            os << "BM homology of the semi-open union vs the base fan, p=" << p;
            expect_tables(rep, homology_dims(semi), homology_dims(big), os.str());
        }
        {
            ChainComplex mod_all = build_complex(*cc_mod, all_faces(cc_mod->complex()), p);
            ChainComplex base_all = build_complex(*cc_base, all_faces(cc_base->complex()), p);
            std::ostringstream os;
            os << "cohomology of the compactifications, p=" << p;
            expect_tables(rep, cohomology_dims(mod_all), cohomology_dims(base_all), os.str());
        }
    }
    return rep;
}

}  // namespace tropfan
