#include <doctest.h>

#include <memory>
#include <vector>

#include "tropfan/chow.hpp"
#include "tropfan/util.hpp"
#include "tropfan/zoo.hpp"

using namespace tropfan;

TEST_CASE("graded Chow dimensions") {
    CHECK(chow_dims(zoo_fan("point").fan) == std::vector<int>{1});
    CHECK(chow_dims(zoo_fan("line1").fan) == std::vector<int>{1, 1});
    // Two crossing lines: the two line classes stay independent in degree 1.
    CHECK(chow_dims(zoo_fan("cross").fan) == std::vector<int>{1, 2});
    CHECK(chow_dims(zoo_fan("tropline3").fan) == std::vector<int>{1, 1});
    CHECK(chow_dims(zoo_fan("lambda2").fan) == std::vector<int>{1, 2, 1});
    CHECK(chow_dims(zoo_fan("cube-skeleton").fan) == std::vector<int>{1, 5, 1});
    CHECK(chow_dims(zoo_fan("bergman-u(3,4)").fan) == std::vector<int>{1, 7, 1});

    // First graded piece: one generator per ray minus the ambient relations.
    for (const char* name : {"line1", "cross", "lambda2", "cube-skeleton", "tropline3",
                             "bergman-u(3,4)", "product:line1,cross"}) {
        auto f = zoo_fan(name).fan;
        CHECK(chow_dims(f)[1] == f->ray_count() - f->ambient_rank());
    }
}

TEST_CASE("non-simplicial fans are rejected") {
    RawFan raw;
    raw.ambient_rank = 3;
    raw.rays = {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
    raw.cones = {{0, 1, 2, 3}};
    auto f = std::make_shared<const Fan>(validate_fan(raw).fan);
    CHECK_FALSE(f->simplicial());
    CHECK_THROWS_AS(chow_dims(f), InputError);
}

TEST_CASE("Chow dimensions ignore ray labels") {
    auto cube = zoo_fan("cube-skeleton").fan;
    RawFan raw;
    raw.ambient_rank = cube->ambient_rank();
    int n = cube->ray_count();
    for (int i = n - 1; i >= 0; --i) raw.rays.push_back(cube->ray(i));
    for (int id = 0; id < cube->cone_count(); ++id) {
        if (cube->cone(id).rays.empty()) continue;
        std::vector<int> c;
        for (int r : cube->cone(id).rays) c.push_back(n - 1 - r);
        raw.cones.push_back(c);
    }
    auto relabeled = std::make_shared<const Fan>(validate_fan(raw).fan);
    CHECK(chow_dims(relabeled) == chow_dims(cube));
}

TEST_CASE("Chow Poincare duality pairings") {
    PairingReport lam = chow_pd_check(zoo_fan("lambda2").fan);
    CHECK(lam.pass);
    CHECK(lam.pairing_mode);
    CHECK(lam.dims == std::vector<int>{1, 2, 1});
    for (std::size_t k = 0; k < lam.pairings.size(); ++k)
        CHECK(lam.pairings[k] == lam.pairings[lam.pairings.size() - 1 - k].transpose());

    PairingReport line = chow_pd_check(zoo_fan("line1").fan);
    CHECK(line.pass);
    CHECK(line.pairing_mode);
    CHECK(line.dims == std::vector<int>{1, 1});
    REQUIRE(line.pairings.size() == 2);
    CHECK(line.pairings[0].rows() == 1);
    CHECK(line.pairings[0].at(0, 0) != 0);

    // Two crossing lines: degree 1 is two-dimensional while degree 0 is not,
    // so the graded dimensions are asymmetric and duality fails.
    PairingReport cross = chow_pd_check(zoo_fan("cross").fan);
    CHECK_FALSE(cross.pass);
    CHECK_FALSE(cross.pairing_mode);
    CHECK(cross.dims == std::vector<int>{1, 2});
    CHECK_FALSE(cross.notes.empty());

    for (const char* name : {"point", "tropline3", "bergman-u(3,4)",
                             "product:line1,line1"}) {
        PairingReport rep = chow_pd_check(zoo_fan(name).fan);
        CHECK(rep.pass);
        CHECK(rep.pairing_mode);
    }

    // The cube skeleton is simplicial but not unimodular: the check degrades
    // to dimension symmetry and still passes.
    PairingReport cube = chow_pd_check(zoo_fan("cube-skeleton").fan);
    CHECK(cube.pass);
    CHECK_FALSE(cube.pairing_mode);
    CHECK(cube.dims == std::vector<int>{1, 5, 1});
    CHECK_FALSE(cube.notes.empty());
}

TEST_CASE("Feichtner-Yuzvinsky cross-check over the simplicial zoo") {
    for (const std::string& name : zoo_names()) {
        auto f = zoo_fan(name).fan;
        if (!f->simplicial()) continue;
        FYReport rep = fy_crosscheck(f);
        INFO(name);
        CHECK(rep.pass);
    }
    FYReport cube = fy_crosscheck(zoo_fan("cube-skeleton").fan);
    CHECK(cube.pass);
    CHECK(cube.chow == std::vector<int>{1, 5, 1});
}
