#include <doctest.h>

#include <memory>
#include <set>
#include <vector>

#include "tropfan/homology.hpp"
#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"
#include "tropfan/zoo.hpp"

using namespace tropfan;

namespace {

using Grid = std::vector<std::vector<int>>;

Grid table(const CellSpace& sp, Theory t) { return homology_table(sp, t).dims; }

Grid kuenneth_product(const Grid& a, const Grid& b) {
    std::size_t d = a.size() + b.size() - 2;
    Grid out(d + 1, std::vector<int>(d + 1, 0));
    for (std::size_t p1 = 0; p1 < a.size(); ++p1)
        for (std::size_t q1 = 0; q1 < a.size(); ++q1)
            for (std::size_t p2 = 0; p2 < b.size(); ++p2)
                for (std::size_t q2 = 0; q2 < b.size(); ++q2)
                    out[p1 + p2][q1 + q2] += a[p1][q1] * b[p2][q2];
    return out;
}

std::shared_ptr<const Fan> reweighted_cross(std::vector<long> ws) {
    Fan f = *zoo_fan("cross").fan;
    Orientation w;
    for (std::size_t i = 0; i < ws.size(); ++i)
        w[f.cone_index({static_cast<int>(i)})] = Int(ws[i]);
    f.set_weights(w);
    return std::make_shared<const Fan>(std::move(f));
}

}  // namespace

TEST_CASE("cube golden tables") {
    auto cube = zoo_fan("cube-skeleton").fan;

    Grid hc = table(fan_space(cube), Theory::compact_support);
    CHECK(hc == Grid{{0, 0, 5}, {0, 0, 3}, {0, 2, 1}});

    CellSpace closed = compactified_space(cube);
    Grid h_bar = table(closed, Theory::ordinary);
    CHECK(h_bar == Grid{{1, 0, 0}, {0, 5, 0}, {0, 2, 1}});

    // On a compact space ordinary and Borel-Moore homology coincide, and
    // compact-support cohomology coincides with ordinary cohomology.
    CHECK(table(closed, Theory::borel_moore) == h_bar);
    CHECK(table(closed, Theory::compact_support) == h_bar);
}

TEST_CASE("small Borel-Moore tables") {
    CHECK(table(fan_space(zoo_fan("point").fan), Theory::borel_moore) == Grid{{1}});
    CHECK(table(fan_space(zoo_fan("line1").fan), Theory::borel_moore) ==
          Grid{{0, 1}, {0, 1}});
    CHECK(table(fan_space(zoo_fan("cross").fan), Theory::borel_moore) ==
          Grid{{0, 3}, {0, 2}});

    // Borel-Moore homology of the smooth plane concentrates in q = 2 with
    // dims dual to the origin coefficient spaces.
    CHECK(table(fan_space(zoo_fan("lambda2").fan), Theory::borel_moore) ==
          Grid{{0, 0, 1}, {0, 0, 2}, {0, 0, 1}});

    // Its compactification has diagonal cohomology (1, 2, 1).
    CHECK(table(compactified_space(zoo_fan("lambda2").fan), Theory::ordinary) ==
          Grid{{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
}

TEST_CASE("boundary ranks of the cross complex") {
    CellSpace sp = fan_space(zoo_fan("cross").fan);
    ChainComplex c = build_complex(*sp.cache, sp.faces, 0);
    CHECK(c.dims == std::vector<int>{1, 4});
    CHECK(c.boundary[1].rank() == 1);
}

TEST_CASE("ordinary homology of a fan sits at q = 0") {
    for (const char* name : {"cross", "lambda2", "cube-skeleton", "tropline3"}) {
        CellSpace sp = fan_space(zoo_fan(name).fan);
        Grid h = table(sp, Theory::ordinary);
        int origin = sp.cache->complex().face_index(0, 0);
        for (std::size_t p = 0; p < h.size(); ++p) {
            CHECK(h[p][0] == sp.cache->space(origin, static_cast<int>(p)).dim());
            for (std::size_t q = 1; q < h[p].size(); ++q) CHECK(h[p][q] == 0);
        }
    }
}

TEST_CASE("compact-support dims equal Borel-Moore dims on every space") {
    for (const char* name : {"line1", "cross", "lambda2", "tropline3", "mod-lambda-cross"}) {
        auto fan = zoo_fan(name).fan;
        for (const CellSpace& sp : {fan_space(fan), compactified_space(fan)})
            CHECK(table(sp, Theory::compact_support) == table(sp, Theory::borel_moore));
    }
    CellSpace semi = semi_open_space(zoo_fan("lambda2").fan, {0});
    CHECK(table(semi, Theory::compact_support) == table(semi, Theory::borel_moore));
    CHECK_THROWS_AS(homology_table(semi, Theory::ordinary), InputError);
}

TEST_CASE("fundamental cycle detects balancing") {
    for (const char* name : {"lambda2", "cube-skeleton", "tropline3", "point"}) {
        CellSpace sp = fan_space(zoo_fan(name).fan);
        CHECK(fundamental_cycle(*sp.cache).is_cycle);
    }
    CellSpace bad = fan_space(reweighted_cross({1, 1, 1, 2}));
    FundamentalCycle nu = fundamental_cycle(*bad.cache);
    CHECK_FALSE(nu.is_cycle);
    CHECK_FALSE(nu.boundary.is_zero());
}

TEST_CASE("degree-zero cap map") {
    CellSpace lam = fan_space(zoo_fan("lambda2").fan);
    for (int p = 0; p <= 2; ++p) {
        CapReport cap = cap_degree0(*lam.cache, p);
        CHECK(cap.injective);
        CHECK(cap.surjective);
    }
    CHECK(cap_degree0(*lam.cache, 1).source_dim == 2);

    // The class of the fundamental cycle itself is nonzero whenever there is
    // a facet: cap at p = 0 is injective on one generator.
    CellSpace cube = fan_space(zoo_fan("cube-skeleton").fan);
    CapReport cube0 = cap_degree0(*cube.cache, 0);
    CHECK(cube0.source_dim == 1);
    CHECK(cube0.injective);

    // At top degree the cube misses two of the five Borel-Moore classes.
    CapReport cube2 = cap_degree0(*cube.cache, 2);
    CHECK(cube2.source_dim == 3);
    CHECK(cube2.target_dim == 5);
    CHECK(cube2.injective);
    CHECK_FALSE(cube2.surjective);

    CellSpace cross = fan_space(zoo_fan("cross").fan);
    CapReport cross1 = cap_degree0(*cross.cache, 1);
    CHECK(cross1.source_dim == 2);
    CHECK(cross1.target_dim == 3);
    CHECK(cross1.injective);
    CHECK_FALSE(cross1.surjective);

    // The modification of the plane along the cross function fails the top
    // cap: four Borel-Moore classes against a three-dimensional source.
    CellSpace tm = fan_space(zoo_fan("mod-lambda-cross").fan);
    CapReport tm2 = cap_degree0(*tm.cache, 2);
    CHECK(tm2.source_dim == 3);
    CHECK(tm2.target_dim == 4);
    CHECK(tm2.injective);
    CHECK_FALSE(tm2.surjective);
}

TEST_CASE("Poincare duality verdicts") {
    CHECK(pd_check(zoo_fan("point").fan).pass);
    CHECK(pd_check(zoo_fan("line1").fan).pass);
    CHECK(pd_check(zoo_fan("lambda2").fan).pass);
    CHECK(pd_check(zoo_fan("tropline3").fan).pass);

    PDReport cube = pd_check(zoo_fan("cube-skeleton").fan);
    CHECK_FALSE(cube.pass);
    CHECK_FALSE(cube.vanishing);  // H^BM_{2,1} = 2

    PDReport cross = pd_check(zoo_fan("cross").fan);
    CHECK_FALSE(cross.pass);
    CHECK(cross.bm.dims[0][1] == 3);

    CHECK_FALSE(pd_check(zoo_fan("mod-lambda-cross").fan).pass);
}

TEST_CASE("smoothness criteria agree") {
    std::map<std::string, bool> expect = {
        {"point", true},         {"line1", true},
        {"lambda2", true},       {"tropline3", true},
        {"bergman-u(2,4)", true}, {"bergman-u(3,4)", true},
        {"cross", false},        {"cube-skeleton", false},
        {"mod-lambda-cross", false},
    };
    for (const auto& [name, smooth] : expect) {
        SmoothReport local = smooth_check(zoo_fan(name).fan, SmoothCriterion::local);
        SmoothReport aks = smooth_check(zoo_fan(name).fan, SmoothCriterion::aksnes);
        CHECK(local.smooth == smooth);
        CHECK(aks.smooth == smooth);
    }

    // The cube skeleton is smooth away from the origin: each vertex star is a
    // tropical line in the quotient plane.
    SmoothReport cube = smooth_check(zoo_fan("cube-skeleton").fan, SmoothCriterion::local);
    for (const auto& [cone, ok] : cube.per_cone) CHECK(ok == (cone != 0));
}

TEST_CASE("relative complexes and mapping cones") {
    auto lam = zoo_fan("lambda2").fan;
    CellSpace sp = fan_space(lam);

    std::set<int> all;
    for (int i = 0; i < lam->cone_count(); ++i) all.insert(i);
    for (int p = 0; p <= 2; ++p) {
        ChainComplex zero = relative_complex(*sp.cache, all, p);
        for (int h : homology_dims(zero)) CHECK(h == 0);
        ChainComplex full = relative_complex(*sp.cache, {}, p);
        ChainComplex bm = build_complex(*sp.cache, sp.faces, p);
        CHECK(homology_dims(full) == homology_dims(bm));
    }

    // Relative homology along the divisor of f equals the Borel-Moore
    // homology of the modification.
    PLFunction f = PLFunction::from_ray_values(lam, zoo_fan("lambda2").functions.at("f"));
    Divisor div = divisor(f);
    std::set<int> delta;
    for (const auto& [base_id, div_id] : div.base_cone) delta.insert(base_id);
    Modification m = tropical_modification(f);
    CellSpace msp = fan_space(std::make_shared<const Fan>(std::move(m.fan)));
    for (int p = 0; p <= 2; ++p) {
        ChainComplex rel = relative_complex(*sp.cache, delta, p);
        ChainComplex mod_bm = build_complex(*msp.cache, msp.faces, p);
        CHECK(homology_dims(rel) == homology_dims(mod_bm));
    }

    // Cone of the identity is acyclic; cone over the zero complex is the
    // complex itself.
    ChainComplex bm1 = build_complex(*sp.cache, sp.faces, 1);
    std::vector<QMat> id;
    for (int d : bm1.dims) id.push_back(QMat::identity(d));
    for (int h : homology_dims(mapping_cone(bm1, bm1, id))) CHECK(h == 0);

    SubfanComplex none = subfan_complex(*sp.cache, {}, 1);
    ChainComplex cone = mapping_cone(none.complex, bm1, none.inclusion);
    std::vector<int> ch = homology_dims(cone);
    std::vector<int> bh = homology_dims(bm1);
    for (std::size_t q = 0; q < ch.size(); ++q)
        CHECK(ch[q] == (q < bh.size() ? bh[q] : 0));

    // A non-chain-map is rejected.
    std::vector<QMat> broken = id;
    broken[1].at(0, 1) = Rat(7);
    CHECK_THROWS_AS(mapping_cone(bm1, bm1, broken), CheckError);
}

TEST_CASE("semi-open union over the divisor recovers the base fan") {
    PLFunction f =
        PLFunction::from_ray_values(zoo_fan("lambda2").fan, zoo_fan("lambda2").functions.at("f"));
    Modification m = tropical_modification(f);
    auto mod_fan = std::make_shared<const Fan>(std::move(m.fan));
    std::set<int> seds{0, mod_fan->cone_index({m.rho_ray})};
    CellSpace semi = semi_open_space(mod_fan, seds);
    CHECK(table(semi, Theory::borel_moore) ==
          table(fan_space(zoo_fan("lambda2").fan), Theory::borel_moore));
}

TEST_CASE("corrupted incidence signs are caught") {
    CellSpace sp = fan_space(zoo_fan("lambda2").fan);
    const ExtComplex& x = sp.cache->complex();
    SignTable bad = x.signs();
    for (const Cover& cv : x.covers()) {
        if (x.face(cv.super).dim == 2 && x.face(cv.super).sed == 0 && x.face(cv.sub).sed == 0) {
            bad[{cv.sub, cv.super}] = -x.sign(cv.sub, cv.super);
            break;
        }
    }
    CHECK_THROWS_AS(build_complex(*sp.cache, sp.faces, 0, &bad), CheckError);
}

TEST_CASE("modification reports") {
    auto lam = zoo_fan("lambda2").fan;
    PLFunction f = PLFunction::from_ray_values(lam, zoo_fan("lambda2").functions.at("f"));
    VerifyReport coeff = verify_tm_coefficients(f);
    CHECK(coeff.pass);
    CHECK(coeff.hypothesis_ok);
    CHECK(coeff.failures.empty());
    VerifyReport hom = verify_tm_homology(f);
    CHECK(hom.pass);
    CHECK(hom.hypothesis_ok);

    PLFunction lin =
        PLFunction::from_ray_values(lam, zoo_fan("lambda2").functions.at("linear"));
    CHECK(verify_tm_coefficients(lin).pass);
    CHECK(verify_tm_homology(lin).pass);

    // A non-smooth base triggers the hypothesis warning but still runs.
    PLFunction g =
        PLFunction::from_ray_values(zoo_fan("cross").fan, zoo_fan("cross").functions.at("g"));
    VerifyReport warned = verify_tm_coefficients(g);
    CHECK_FALSE(warned.hypothesis_ok);
    CHECK_FALSE(warned.notes.empty());
}

TEST_CASE("Kuenneth dimensions for a product") {
    Grid a = table(fan_space(zoo_fan("line1").fan), Theory::borel_moore);
    Grid b = table(fan_space(zoo_fan("cross").fan), Theory::borel_moore);
    Grid prod = table(fan_space(zoo_fan("product:line1,cross").fan), Theory::borel_moore);
    CHECK(prod == kuenneth_product(a, b));
    CHECK(prod[0][2] == 3);
    CHECK(prod[1][2] == 5);
    CHECK(prod[2][2] == 2);
}

TEST_CASE("compactified smooth fans satisfy dimension-level duality") {
    for (const char* name : {"lambda2", "tropline3", "bergman-u(3,4)"}) {
        Grid h = table(compactified_space(zoo_fan(name).fan), Theory::borel_moore);
        std::size_t d = h.size() - 1;
        for (std::size_t p = 0; p <= d; ++p)
            for (std::size_t q = 0; q <= d; ++q) CHECK(h[p][q] == h[d - p][d - q]);
    }
}
