#include <doctest.h>

#include <algorithm>
#include <memory>

#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"
#include "tropfan/zoo.hpp"

using namespace tropfan;

namespace {

std::shared_ptr<const Fan> fan_of(const std::string& name) { return zoo_fan(name).fan; }

PLFunction named_fn(const std::string& fan, const std::string& fn) {
    ZooEntry e = zoo_fan(fan);
    return PLFunction::from_ray_values(e.fan, e.functions.at(fn));
}

}  // namespace

TEST_CASE("integral linear system solving") {
    ZMat a = ZMat::from_rows({{2, 0}, {0, 3}});
    auto x = integral_solve(a, {4, 9});
    REQUIRE(x.has_value());
    CHECK(*x == IntVec{2, 3});

    CHECK_FALSE(integral_solve(ZMat::from_rows({{2}}), {3}).has_value());
    CHECK_FALSE(integral_solve(ZMat::from_rows({{1}, {1}}), {1, 2}).has_value());

    ZMat wide = ZMat::from_rows({{1, 1}});
    auto y = integral_solve(wide, {5});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == 5);

    ZMat empty(0, 2);
    auto z = integral_solve(empty, {});
    REQUIRE(z.has_value());
    CHECK(*z == IntVec{0, 0});
}

TEST_CASE("every stock example is balanced") {
    for (const std::string& name :
         {"point", "line1", "lambda2", "cross", "cube-skeleton", "tropline3", "mod-lambda-cross",
          "bergman-u(2,4)", "bergman-u(3,4)", "bergman-u(3,3)", "bergman-u(2,6)",
          "product:line1,cross", "product:lambda2,line1"}) {
        ZooEntry e = zoo_fan(name);
        BalancingReport rep = check_balancing(*e.fan);
        CHECK_MESSAGE(rep.balanced, name);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("a bad weight shows up at the right cone") {
    RawFan raw;
    raw.ambient_rank = 2;
    raw.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    raw.cones = {{0}, {1}, {2}, {3}};
    raw.weights = {{{0, 1}, {1, 1}, {2, 1}, {3, 2}}};
    Fan f = validate_fan(raw).fan;
    BalancingReport rep = check_balancing(f);
    CHECK_FALSE(rep.balanced);
    CHECK(rep.violations == std::vector<int>{0});
}

TEST_CASE("balancing demands weights and purity") {
    RawFan raw;
    raw.ambient_rank = 2;
    raw.rays = {{1, 0}, {0, 1}, {-1, -1}};
    raw.cones = {{0, 1}, {2}};
    Fan mixed = validate_fan(raw).fan;
    CHECK_FALSE(mixed.pure());
    CHECK_THROWS_AS(check_balancing(mixed), InputError);

    Fan unweighted = *fan_of("lambda2");
    RawFan raw2;
    raw2.ambient_rank = 2;
    raw2.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    raw2.cones = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    Fan no_weights = validate_fan(raw2).fan;
    CHECK_THROWS_AS(check_balancing(no_weights), InputError);
}

TEST_CASE("functions from ray values recover the expected facet forms") {
    PLFunction f = named_fn("lambda2", "f");
    const Fan& fan = f.fan();
    // Quadrant x,y >= 0 carries the zero form; x >= 0 >= y carries y.
    int qpp = fan.cone_index({0, 2});
    int qpm = fan.cone_index({0, 3});
    CHECK(f.form_at(qpp) == IntVec{0, 0});
    CHECK(f.form_at(qpm) == IntVec{0, 1});
    CHECK(f.ray_values() == IntVec{0, -1, 0, -1});
    CHECK_FALSE(f.is_linear());

    PLFunction lin = named_fn("lambda2", "linear");
    CHECK(lin.is_linear());
    for (int c = 0; c < fan.cone_count(); ++c) CHECK(lin.form_at(c) == IntVec{1, 0});
}

TEST_CASE("function construction rejects bad data") {
    auto lam = fan_of("lambda2");
    CHECK_THROWS_AS(PLFunction::from_ray_values(lam, {1, 2, 3}), InputError);

    // Odd value difference across an edge of the cube skeleton has no
    // integral linear form: m.(1,1,1) - m.(-1,1,1) is always even.
    auto cube = fan_of("cube-skeleton");
    IntVec vals(static_cast<std::size_t>(cube->ray_count()), Int(0));
    vals[0] = 1;
    CHECK_THROWS_AS(PLFunction::from_ray_values(cube, vals), InputError);

    // Values on a non-simplicial facet must be consistent.
    RawFan raw;
    raw.ambient_rank = 3;
    raw.rays = {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
    raw.cones = {{0, 1, 2, 3}};
    raw.weights = {{{0, 1}}};
    auto square = std::make_shared<Fan>(validate_fan(raw).fan);
    CHECK_THROWS_AS(PLFunction::from_ray_values(square, {0, 0, 0, 1}), InputError);
    CHECK(PLFunction::from_ray_values(square, {1, 1, 1, 1}).form_at(1) == IntVec{0, 0, 1});

    // Facet forms that disagree on a shared ray are rejected.
    std::map<int, IntVec> forms;
    const Fan& l = *lam;
    forms[l.cone_index({0, 2})] = {0, 0};
    forms[l.cone_index({0, 3})] = {1, 0};  // differs on shared ray (1,0)
    forms[l.cone_index({1, 2})] = {0, 0};
    forms[l.cone_index({1, 3})] = {0, 0};
    CHECK_THROWS_AS(PLFunction(lam, forms), InputError);
}

TEST_CASE("orders of vanishing across the crease and along linear parts") {
    PLFunction f = named_fn("lambda2", "f");
    const Fan& fan = f.fan();
    for (int r = 0; r < 4; ++r) CHECK(order_of_vanishing(f, fan.cone_index({r})) == 1);

    PLFunction lin = named_fn("lambda2", "linear");
    for (int r = 0; r < 4; ++r) CHECK(order_of_vanishing(lin, fan.cone_index({r})) == 0);

    // Sum with a linear function leaves every order unchanged.
    PLFunction sum = PLFunction::from_ray_values(f.fan_ptr(), {1, -2, 0, -1});
    for (int r = 0; r < 4; ++r) CHECK(order_of_vanishing(sum, fan.cone_index({r})) == 1);

    PLFunction g = named_fn("cross", "g");
    CHECK(order_of_vanishing(g, 0) == 0);
}

TEST_CASE("the divisor of the corner function is the balanced cross") {
    PLFunction f = named_fn("lambda2", "f");
    Divisor d = divisor(f);
    CHECK_FALSE(d.empty());
    CHECK(d.fan.ray_count() == 4);
    CHECK(d.fan.cone_count() == 5);
    CHECK(d.fan.dim() == 1);

    auto cross = fan_of("cross");
    for (int r = 0; r < 4; ++r) CHECK(d.fan.ray(r) == cross->ray(r));
    REQUIRE(d.fan.weights().has_value());
    for (int s : d.fan.facets()) CHECK(d.fan.weights()->at(s) == 1);
    CHECK(check_balancing(d.fan).balanced);

    CHECK(d.orders.size() == 4);
    for (const auto& [tau, o] : d.orders) CHECK(o == 1);
    CHECK(d.ray_map == std::vector<int>{0, 1, 2, 3});
    // Base ray cones and divisor ray cones correspond one to one.
    const Fan& base = f.fan();
    for (int r = 0; r < 4; ++r) {
        int b = base.cone_index({r});
        REQUIRE(d.base_cone.count(b) == 1);
        CHECK(d.fan.cone(d.base_cone.at(b)).rays == std::vector<int>{r});
        CHECK(d.cone_map.at(d.base_cone.at(b)) == b);
    }
}

TEST_CASE("linear functions have empty divisors") {
    Divisor d = divisor(named_fn("lambda2", "linear"));
    CHECK(d.empty());
    CHECK(d.fan.cone_count() == 1);
    CHECK(d.fan.ray_count() == 0);
    CHECK(divisor(named_fn("cross", "g")).empty());
}

TEST_CASE("modification along the corner function") {
    PLFunction f = named_fn("lambda2", "f");
    Modification m = tropical_modification(f);
    CHECK(m.fan.ray_count() == 5);
    CHECK(m.fan.cone_count() == 14);
    CHECK(m.fan.facets().size() == 8);
    CHECK(m.fan.dim() == 2);
    CHECK(m.rho_ray == 4);
    CHECK(m.fan.ray(4) == IntVec{0, 0, 1});
    CHECK(m.fan.ray(0) == IntVec{1, 0, 0});
    CHECK(m.fan.ray(1) == IntVec{-1, 0, -1});
    CHECK(m.fan.ray(2) == IntVec{0, 1, 0});
    CHECK(m.fan.ray(3) == IntVec{0, -1, -1});
    for (int s : m.fan.facets()) CHECK(m.fan.weights()->at(s) == 1);
    CHECK(check_balancing(m.fan).balanced);

    CHECK(m.graph_cone.size() == 9);
    CHECK(m.up_cone.size() == 5);
    CHECK(m.face_of.size() == 14);
    CHECK(m.fan.cone(m.up_cone.at(0)).rays == std::vector<int>{4});
    const Fan& base = f.fan();
    for (int r = 0; r < 4; ++r) {
        int b = base.cone_index({r});
        CHECK(m.fan.cone(m.graph_cone.at(b)).rays == std::vector<int>{r});
        CHECK(m.fan.cone(m.up_cone.at(b)).rays == std::vector<int>{r, 4});
        CHECK(m.face_of.at(m.up_cone.at(b)).up);
        CHECK(m.face_of.at(m.up_cone.at(b)).base == b);
    }
    CHECK(m.induced_values({1, 0, -1, 0}) == IntVec{1, 0, -1, 0, 0});

    ZooEntry stock = zoo_fan("mod-lambda-cross");
    CHECK(stock.fan->cone_count() == 14);
    CHECK(stock.functions.at("g") == IntVec{1, 0, -1, 0, 0});
}

TEST_CASE("modification along a linear function is a graph copy") {
    Modification m = tropical_modification(named_fn("lambda2", "linear"));
    CHECK(m.rho_ray == -1);
    CHECK(m.up_cone.empty());
    CHECK(m.fan.ray_count() == 4);
    CHECK(m.fan.cone_count() == 9);
    CHECK(m.fan.ray(0) == IntVec{1, 0, 1});
    CHECK(m.fan.ray(1) == IntVec{-1, 0, -1});
    CHECK(check_balancing(m.fan).balanced);
    CHECK(m.induced_values({5, 6, 7, 8}) == IntVec{5, 6, 7, 8});
}

TEST_CASE("modification along a function with an empty divisor on the cross") {
    Modification m = tropical_modification(named_fn("cross", "g"));
    CHECK(m.rho_ray == -1);
    CHECK(m.fan.ray_count() == 4);
    CHECK(m.fan.cone_count() == 5);
    CHECK(m.fan.ray(0) == IntVec{1, 0, 1});
    CHECK(m.fan.ray(1) == IntVec{-1, 0, 0});
    CHECK(m.fan.ray(2) == IntVec{0, 1, -1});
    CHECK(m.fan.ray(3) == IntVec{0, -1, 0});
    CHECK(check_balancing(m.fan).balanced);
}

TEST_CASE("functions descend to stars") {
    PLFunction f = named_fn("lambda2", "f");
    const Fan& fan = f.fan();
    int ray0 = fan.cone_index({0});
    StarData star = star_fan(fan, ray0);
    PLFunction fbar = induced_function(f, star);
    CHECK(fbar.fan().ray_count() == 2);
    // Restricting to the transverse line leaves a single crease at the origin.
    Divisor d = divisor(fbar);
    REQUIRE(d.orders.size() == 1);
    CHECK(d.orders.count(0) == 1);
    CHECK(d.orders.at(0) == 1);

    PLFunction lbar = induced_function(named_fn("lambda2", "linear"), star);
    CHECK(lbar.is_linear());
    CHECK(divisor(lbar).empty());
}

TEST_CASE("pullbacks along projections have product divisors") {
    auto prod = fan_of("product:line1,cross");
    // Values of g on the second factor, zero on the first.
    PLFunction g = PLFunction::from_ray_values(prod, {0, 0, 1, 0, -1, 0});
    CHECK(divisor(g).empty());
}

TEST_CASE("stock example shapes") {
    CHECK(fan_of("point")->cone_count() == 1);
    CHECK(fan_of("point")->weights()->at(0) == 1);
    CHECK(fan_of("line1")->cone_count() == 3);
    CHECK(fan_of("lambda2")->cone_count() == 9);
    CHECK(fan_of("cross")->cone_count() == 5);
    CHECK(fan_of("tropline3")->cone_count() == 5);

    auto cube = fan_of("cube-skeleton");
    CHECK(cube->ray_count() == 8);
    CHECK(cube->cone_count() == 21);
    CHECK(cube->dim() == 2);
    CHECK(cube->ambient_rank() == 3);
    CHECK(cube->simplicial());
    CHECK_FALSE(is_unimodular(*cube));

    auto b24 = fan_of("bergman-u(2,4)");
    auto t3 = fan_of("tropline3");
    CHECK(b24->ray_count() == 4);
    for (int r = 0; r < 4; ++r) CHECK(b24->ray(r) == t3->ray(r));
    CHECK(fan_of("bergman-u(2,2)")->cone_count() == 3);
    CHECK(fan_of("bergman-u(3,4)")->ray_count() == 10);
    CHECK(fan_of("bergman-u(3,4)")->cone_count() == 23);
    CHECK(fan_of("bergman-u(1,3)")->cone_count() == 1);
    CHECK(is_unimodular(*fan_of("bergman-u(3,4)")));

    auto prod = fan_of("product:line1,cross");
    CHECK(prod->ray_count() == 6);
    CHECK(prod->cone_count() == 15);
    CHECK(prod->dim() == 2);
    CHECK(fan_of("product:line1\xc3\x97"
                 "cross")
              ->cone_count() == 15);
    CHECK(fan_of("product:line1,product:line1,line1")->cone_count() == 27);

    CHECK_THROWS_AS(zoo_fan("nope"), InputError);
    CHECK_THROWS_AS(zoo_fan("bergman-u(4,9)"), InputError);
    for (const auto& name : zoo_names()) CHECK(zoo_fan(name).fan->cone_count() >= 1);
}
