// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each, with a
// wall-clock budget per criterion.  Exits nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tropfan/chow.hpp"
#include "tropfan/deligne.hpp"
#include "tropfan/fanfile.hpp"
#include "tropfan/homology.hpp"
#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"
#include "tropfan/zoo.hpp"

using namespace tropfan;

namespace {

using Dims = std::vector<std::vector<int>>;

struct Runner {
    int failures = 0;

    void run(int num, const std::string& label, double limit_s,
             const std::function<bool(std::string&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string why;
        try {
            ok = body(why);
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > limit_s) {
            ok = false;
            why = "time limit exceeded";
        }
        if (!ok) ++failures;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "CRITERION " << (num < 10 ? " " : "") << num << " [" << (ok ? "PASS" : "FAIL")
             << "] " << label << " (" << secs << "s / " << limit_s << "s)";
        if (!ok && !why.empty()) line << " -- " << why;
        std::cout << line.str() << "\n";
    }
};

std::shared_ptr<const Fan> fan_of(const std::string& name) { return zoo_fan(name).fan; }

PLFunction fn_of(const std::string& name, const std::string& fname) {
    ZooEntry entry = zoo_fan(name);
    return PLFunction::from_ray_values(entry.fan, entry.functions.at(fname));
}

int coeff_dim_at_origin(std::shared_ptr<const Fan> f, int p) {
    CellSpace space = fan_space(f);
    int face = space.cache->complex().face_index(0, 0);
    return space.cache->space(face, p).dim();
}

Dims kuenneth(const Dims& a, const Dims& b) {
    int n = static_cast<int>(a.size() + b.size()) - 1;
    Dims out(n, std::vector<int>(n, 0));
    for (std::size_t p1 = 0; p1 < a.size(); ++p1)
        for (std::size_t q1 = 0; q1 < a[p1].size(); ++q1)
            for (std::size_t p2 = 0; p2 < b.size(); ++p2)
                for (std::size_t q2 = 0; q2 < b[p2].size(); ++q2)
                    out[p1 + p2][q1 + q2] += a[p1][q1] * b[p2][q2];
    return out;
}

bool expect(bool cond, const std::string& msg, std::string& why) {
    if (!cond && why.empty()) why = msg;
    return cond;
}

}  // namespace

int main() {
    Runner r;

    r.run(1, "golden homology tables of the cube skeleton", 10.0, [](std::string& why) {
        auto cube = fan_of("cube-skeleton");
        Dims hc = homology_table(fan_space(cube), Theory::compact_support).dims;
        Dims ho = homology_table(compactified_space(cube), Theory::ordinary).dims;
        bool ok = expect(hc == Dims{{0, 0, 5}, {0, 0, 3}, {0, 2, 1}},
                         "compact-support table of the fan is off", why);
        ok &= expect(ho == Dims{{1, 0, 0}, {0, 5, 0}, {0, 2, 1}},
                     "ordinary table of the compactification is off", why);
        return ok;
    });

    r.run(2, "modification of the plane: duality failure, unchanged compactification", 30.0,
          [](std::string& why) {
              PLFunction f = fn_of("lambda2", "f");
              Modification mod = tropical_modification(f);
              auto modfan = std::make_shared<Fan>(std::move(mod.fan));
              Dims bm = homology_table(fan_space(modfan), Theory::borel_moore).dims;
              bool ok = expect(bm[0][2] == 4, "BM homology (0,2) of the modification is not 4", why);
              ok &= expect(coeff_dim_at_origin(modfan, 2) == 3,
                           "degree-2 coefficient space at the origin is not 3-dimensional", why);
              ok &= expect(!pd_check(modfan).pass, "duality unexpectedly holds", why);
              Dims hmod = homology_table(compactified_space(modfan), Theory::ordinary).dims;
              Dims hbase =
                  homology_table(compactified_space(fan_of("lambda2")), Theory::ordinary).dims;
              ok &= expect(hmod == hbase, "compactified cohomology changed under modification",
                           why);
              return ok;
          });

    r.run(3, "coefficient spaces at the origin of the two line arrangements", 1.0,
          [](std::string& why) {
              bool ok = expect(coeff_dim_at_origin(fan_of("cross"), 1) == 2,
                               "crossing lines: degree-1 space is not 2-dimensional", why);
              ok &= expect(coeff_dim_at_origin(fan_of("tropline3"), 1) == 3,
                           "tropical line: degree-1 space is not 3-dimensional", why);
              return ok;
          });

    r.run(4, "divisors: the crossing lines from the plane, none from a linear function", 1.0,
          [](std::string& why) {
              Divisor dv = divisor(fn_of("lambda2", "f"));
              bool ok = expect(fan_to_json(dv.fan) == fan_to_json(*fan_of("cross")),
                               "divisor of min(0,x)+min(0,y) is not the crossing lines", why);
              for (const auto& [cone, ord] : dv.orders)
                  ok &= expect(ord == 1, "a divisor order is not 1", why);
              ok &= expect(divisor(fn_of("lambda2", "linear")).empty(),
                           "divisor of a linear function is nonempty", why);
              return ok;
          });

    r.run(5, "property suite over the example corpus", 120.0, [](std::string& why) {
        std::vector<std::string> names = zoo_names();
        bool ok = expect(names.size() >= 8, "fewer than 8 example fans", why);
        for (const std::string& name : names) {
            auto f = fan_of(name);
            ok &= expect(f->ambient_rank() <= 4, name + ": ambient rank above 4", why);
            CellSpace fs = fan_space(f);
            CellSpace cs = compactified_space(f);
            for (int p = 0; p <= f->ambient_rank(); ++p) {
                build_complex(*fs.cache, fs.faces, p);  // throws if a boundary fails d^2 = 0
                build_complex(*cs.cache, cs.faces, p);
            }
            Dims hc = homology_table(fs, Theory::compact_support).dims;
            Dims bm = homology_table(fs, Theory::borel_moore).dims;
            ok &= expect(hc == bm, name + ": compact-support and BM dimensions differ", why);
            Dims cbm = homology_table(cs, Theory::borel_moore).dims;
            Dims cord = homology_table(cs, Theory::ordinary).dims;
            ok &= expect(cbm == cord, name + ": BM and ordinary differ on the compact space",
                         why);
        }
        Dims left = homology_table(fan_space(fan_of("line1")), Theory::borel_moore).dims;
        Dims right = homology_table(fan_space(fan_of("cross")), Theory::borel_moore).dims;
        Dims prod =
            homology_table(fan_space(fan_of("product:line1,cross")), Theory::borel_moore).dims;
        ok &= expect(prod == kuenneth(left, right), "product dimensions violate the Kuenneth rule",
                     why);
        return ok;
    });

    r.run(6, "Chow dimensions against the compactified cohomology", 30.0, [](std::string& why) {
        bool ok = true;
        for (const std::string& name : zoo_names()) {
            auto f = fan_of(name);
            if (!f->simplicial()) continue;
            ok &= expect(fy_crosscheck(f).pass, name + ": cross-check failed", why);
        }
        auto cube = fan_of("cube-skeleton");
        ok &= expect(chow_dims(cube) == std::vector<int>{1, 5, 1},
                     "cube skeleton: graded dimensions are not (1, 5, 1)", why);
        ok &= expect(chow_pd_check(cube).pass, "cube skeleton: duality symmetry failed", why);
        return ok;
    });

    r.run(7, "resolution diagnostics: exactness, euler defect, cokernel identity", 120.0,
          [](std::string& why) {
              bool ok = true;
              for (const std::string& name : zoo_names()) {
                  auto f = fan_of(name);
                  for (int k = 0; k <= f->dim(); ++k) {
                      DoubleComplex dc = build_double_complex(f, k);
                      ok &= expect(row_exactness_check(dc).all_exact,
                                   name + ": rows not exact at k=" + std::to_string(k), why);
                  }
              }
              for (const std::string& name :
                   {"point", "line1", "lambda2", "tropline3", "bergman-u(2,4)", "bergman-u(3,4)"}) {
                  auto f = fan_of(name);
                  for (int p = 0; p <= f->dim(); ++p)
                      ok &= expect(deligne_sequence(f, p, DeligneMode::full).pass,
                                   std::string(name) + ": sequence not exact at p=" +
                                       std::to_string(p),
                                   why);
              }
              DeligneReport cube = deligne_sequence(fan_of("cube-skeleton"), 2, DeligneMode::euler);
              ok &= expect(cube.euler == -2 && !cube.pass,
                           "cube skeleton: euler defect at p=2 is not -2", why);
              for (const std::string& name : {"cube-skeleton", "lambda2"}) {
                  auto f = fan_of(name);
                  for (int k = 0; k <= f->dim(); ++k)
                      ok &= expect(cokernel_identity_check(f, k).pass,
                                   std::string(name) + ": cokernel identity failed at k=" +
                                       std::to_string(k),
                                   why);
              }
              return ok;
          });

    r.run(8, "modification identities for a divisor and for a linear function", 60.0,
          [](std::string& why) {
              bool ok = true;
              for (const char* fname : {"f", "linear"}) {
                  PLFunction fn = fn_of("lambda2", fname);
                  ok &= expect(verify_tm_coefficients(fn).pass,
                               std::string("coefficient identities failed for ") + fname, why);
                  ok &= expect(verify_tm_homology(fn).pass,
                               std::string("homology identities failed for ") + fname, why);
              }
              return ok;
          });

    r.run(9, "the two smoothness criteria agree and sort the corpus correctly", 60.0,
          [](std::string& why) {
              bool ok = true;
              for (const std::string& name : zoo_names()) {
                  auto f = fan_of(name);
                  bool local = smooth_check(f, SmoothCriterion::local).smooth;
                  bool aksnes = smooth_check(f, SmoothCriterion::aksnes).smooth;
                  ok &= expect(local == aksnes, name + ": criteria disagree", why);
              }
              for (const std::string& name : {"lambda2", "tropline3"})
                  ok &= expect(smooth_check(fan_of(name), SmoothCriterion::local).smooth,
                               name + ": expected smooth", why);
              for (const std::string& name : {"cube-skeleton", "cross", "mod-lambda-cross"})
                  ok &= expect(!smooth_check(fan_of(name), SmoothCriterion::local).smooth,
                               name + ": expected not smooth", why);
              return ok;
          });

    r.run(10, "negative controls: unbalanced weights and corrupted sign tables", 30.0,
          [](std::string& why) {
              auto cross = fan_of("cross");
              Fan bad = *cross;
              Orientation w = *bad.weights();
              w[4] = 2;  // the last ray cone
              bad.set_weights(w);
              BalancingReport rep = check_balancing(bad);
              bool ok = expect(!rep.balanced && rep.violations == std::vector<int>{0},
                               "unbalanced weights not pinned to the zero cone", why);

              auto cube = fan_of("cube-skeleton");
              CellSpace cs = compactified_space(cube);
              const ExtComplex& x = cs.cache->complex();
              SignTable corrupted = x.signs();
              int sub = x.face_index(0, 0);
              int super = x.face_index(0, cube->cones_of_dim(1).front());
              corrupted[{sub, super}] = -corrupted.at({sub, super});
              bool threw = false;
              try {
                  build_complex(*cs.cache, cs.faces, 1, &corrupted);
              } catch (const CheckError&) {
                  threw = true;
              }
              ok &= expect(threw, "corrupted sign table passed the boundary consistency check",
                           why);
              threw = false;
              try {
                  build_double_complex(cube, 1, &corrupted);
              } catch (const CheckError&) {
                  threw = true;
              }
              ok &= expect(threw, "corrupted sign table passed the double complex assembly", why);

              DoubleComplex dc = build_double_complex(cube, 1);
              ok &= expect(row_exactness_check(dc).all_exact, "control rows are not exact", why);
              QMat& h = dc.horizontal[1][0];
              bool zeroed = false;
              for (int i = 0; i < h.rows() && !zeroed; ++i)
                  for (int j = 0; j < h.cols() && !zeroed; ++j)
                      if (h.at(i, j) != 0) {
                          h.at(i, j) = 0;
                          zeroed = true;
                      }
              ok &= expect(zeroed, "no identification entry to corrupt", why);
              ok &= expect(!row_exactness_check(dc).all_exact,
                           "broken cell identification kept the rows exact", why);
              return ok;
          });

    if (r.failures == 0) {
        std::cout << "ACCEPTANCE: all criteria passed\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << r.failures << " criterion(s) failed\n";
    return 1;
}
