#include <doctest.h>

#include <memory>

#include "tropfan/sheaf.hpp"
#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"
#include "tropfan/zoo.hpp"

using namespace tropfan;

namespace {

CoeffCache cache_for(const std::string& name) {
    return CoeffCache(std::make_shared<ExtComplex>(zoo_fan(name).fan));
}

}  // namespace

TEST_CASE("coefficient space dimensions at the origin") {
    CoeffCache cross = cache_for("cross");
    int o = cross.complex().face_index(0, 0);
    CHECK(cross.space(o, 0).dim() == 1);
    CHECK(cross.space(o, 1).dim() == 2);
    CHECK(cross.space(o, 2).dim() == 0);  // no cone is two-dimensional

    CHECK(cache_for("tropline3").space(0, 1).dim() == 3);

    // Modifying along a function with empty divisor still thickens the
    // tangent spans: the graph of the cross function spans all of rank 3.
    PLFunction g = PLFunction::from_ray_values(zoo_fan("cross").fan, {1, 0, -1, 0});
    Modification m = tropical_modification(g);
    CoeffCache lifted(std::make_shared<ExtComplex>(std::make_shared<Fan>(std::move(m.fan))));
    CHECK(lifted.space(lifted.complex().face_index(0, 0), 1).dim() == 3);

    CoeffCache cube = cache_for("cube-skeleton");
    int co = cube.complex().face_index(0, 0);
    CHECK(cube.space(co, 0).dim() == 1);
    CHECK(cube.space(co, 1).dim() == 3);
    CHECK(cube.space(co, 2).dim() == 3);  // wedges of the twelve edge planes
    CHECK(cube.space(co, 3).dim() == 0);

    CoeffCache lam = cache_for("lambda2");
    int lo = lam.complex().face_index(0, 0);
    CHECK(lam.space(lo, 1).dim() == 2);
    CHECK(lam.space(lo, 2).dim() == 1);
}

TEST_CASE("maximal faces carry full wedge powers") {
    CoeffCache cube = cache_for("cube-skeleton");
    const ExtComplex& c = cube.complex();
    const Fan& f = c.base();
    int edge = f.facets().front();
    int face = c.face_index(0, edge);
    CHECK(cube.space(face, 1).dim() == 2);
    CHECK(cube.space(face, 2).dim() == 1);

    int corner = c.face_index(edge, edge);
    CHECK(cube.space(corner, 0).dim() == 1);
    CHECK(cube.space(corner, 1).dim() == 0);

    // At a point at ray-infinity the three incident edges span rank two.
    int ray_cone = f.cone_index({0});
    int at_infinity = c.face_index(ray_cone, ray_cone);
    CHECK(cube.space(at_infinity, 1).dim() == 2);
}

TEST_CASE("structure maps: inclusions, projections, functoriality") {
    CoeffCache lam = cache_for("lambda2");
    const ExtComplex& c = lam.complex();
    const Fan& f = c.base();
    int sector = f.cone_index({0, 2});
    int ray = f.cone_index({0});
    int quad = c.face_index(0, sector);
    int axis = c.face_index(0, ray);
    int origin = c.face_index(0, 0);
    int edge = c.face_index(ray, sector);

    // Same sedentarity: inclusions of full column rank.
    QMat incl = lam.map(origin, quad, 1);
    CHECK(incl.rows() == 2);
    CHECK(incl.cols() == 2);
    CHECK(incl.rank() == 2);
    CHECK(lam.map(axis, quad, 1).rank() == 2);

    // Drop: the ray direction dies in the quotient.
    QMat drop = lam.map(edge, quad, 1);
    CHECK(drop.rows() == 1);
    CHECK(drop.cols() == 2);
    QMat ker = drop.kernel();
    REQUIRE(ker.cols() == 1);
    QMat ray_coords = *lam.space(quad, 1).basis.solve(
        QMat::from_rows({{1}, {0}}));  // the ray (1,0) in the quadrant's basis
    bool proportional = ker.at(0, 0) * ray_coords.at(1, 0) == ker.at(1, 0) * ray_coords.at(0, 0);
    CHECK(proportional);

    CHECK_THROWS_AS(lam.map(quad, axis, 1), InputError);  // not incident this way

    // Degree zero: always the 1x1 identity.
    for (const Cover& cv : c.covers()) {
        QMat m = lam.map(cv.sub, cv.super, 0);
        CHECK(m.rows() == 1);
        CHECK(m.cols() == 1);
        CHECK(m.at(0, 0) == Rat(1));
    }
}

TEST_CASE("structure maps compose along chains") {
    CoeffCache cube = cache_for("cube-skeleton");
    const ExtComplex& c = cube.complex();
    for (const Cover& lo : c.covers())
        for (int ci : c.covers_above(lo.super)) {
            const Cover& hi = c.covers()[static_cast<std::size_t>(ci)];
            for (int p = 1; p <= 2; ++p) {
                QMat direct = cube.map(lo.sub, hi.super, p);
                QMat composed = cube.map(lo.sub, lo.super, p) * cube.map(hi.sub, hi.super, p);
                CHECK(direct == composed);
            }
        }
}

TEST_CASE("contraction in coefficient coordinates") {
    CoeffCache lam = cache_for("lambda2");
    int o = lam.complex().face_index(0, 0);
    REQUIRE(lam.space(o, 1).basis == QMat::identity(2));
    REQUIRE(lam.space(o, 2).basis == QMat::identity(1));

    QMat e0star = QMat::from_rows({{1}, {0}});
    QMat e1star = QMat::from_rows({{0}, {1}});
    CHECK(lam.contract_by_form(o, 1, e0star, 2) == QMat::from_rows({{0}, {1}}));
    CHECK(lam.contract_by_form(o, 1, e1star, 2) == QMat::from_rows({{-1}, {0}}));

    // Degree-two contraction agrees with iterating the two covectors.
    QMat full = QMat::from_rows({{1}});
    CHECK(lam.contract_by_form(o, 2, full, 2) == QMat::from_rows({{1}}));

    // Contracting the canonical class of a facet face by its dual gives one.
    CoeffCache cube = cache_for("cube-skeleton");
    const ExtComplex& cc = cube.complex();
    int top = cc.face_index(0, cc.base().facets().front());
    QMat nu = cube.canonical_class(top);
    REQUIRE(nu.rows() == 1);
    QMat kappa = cube.contract_by_form(top, 2, QMat::from_rows({{1}}), 2);
    CHECK(kappa * nu == nu);  // evaluation against the echelon dual

    CHECK_THROWS_AS(lam.contract_by_form(o, 2, full, 1), InputError);
}

TEST_CASE("coefficient dimensions ignore ray relabeling") {
    ZooEntry cube = zoo_fan("cube-skeleton");
    const Fan& f = *cube.fan;
    RawFan raw;
    raw.ambient_rank = 3;
    raw.weights.emplace();
    int n = f.ray_count();
    for (int r = n - 1; r >= 0; --r) raw.rays.push_back(f.ray(r));
    for (int s : f.facets()) {
        std::vector<int> rays;
        for (int r : f.cone(s).rays) rays.push_back(n - 1 - r);
        raw.cones.push_back(rays);
        (*raw.weights)[static_cast<int>(raw.cones.size()) - 1] = 1;
    }
    CoeffCache flipped(std::make_shared<ExtComplex>(std::make_shared<Fan>(validate_fan(raw).fan)));
    CoeffCache original(std::make_shared<ExtComplex>(cube.fan));
    for (int p = 0; p <= 3; ++p)
        CHECK(flipped.space(flipped.complex().face_index(0, 0), p).dim() ==
              original.space(original.complex().face_index(0, 0), p).dim());
}

TEST_CASE("ambient rank guardrail") {
    RawFan raw;
    raw.ambient_rank = 13;
    for (int i = 0; i < 13; ++i) {
        IntVec v(13, Int(0));
        v[static_cast<std::size_t>(i)] = 1;
        raw.rays.push_back(v);
        raw.cones.push_back({i});
    }
    auto fan = std::make_shared<Fan>(validate_fan(raw).fan);
    auto complex = std::make_shared<ExtComplex>(fan);
    CHECK_THROWS_AS(CoeffCache{complex}, InputError);
}
