#include "tropfan/zoo.hpp"

#include <algorithm>
#include <cstdio>

#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"

namespace tropfan {

namespace {

std::shared_ptr<const Fan> build(int ambient_rank, std::vector<IntVec> rays,
                                 std::vector<std::vector<int>> cones,
                                 bool unit_weights = true) {
    RawFan raw;
    raw.ambient_rank = ambient_rank;
    raw.rays = std::move(rays);
    raw.cones = std::move(cones);
    if (unit_weights) {
        raw.weights.emplace();
        int dim = 0;
        for (const auto& c : raw.cones) dim = std::max(dim, static_cast<int>(c.size()));
        for (std::size_t i = 0; i < raw.cones.size(); ++i)
            if (static_cast<int>(raw.cones[i].size()) == dim) (*raw.weights)[static_cast<int>(i)] = 1;
    }
    ValidationResult vr = validate_fan(raw);
    return std::make_shared<Fan>(std::move(vr.fan));
}

ZooEntry make_point() {
    RawFan raw;
    raw.ambient_rank = 0;
    ValidationResult vr = validate_fan(raw);
    vr.fan.set_weights(std::map<int, Int>{{0, Int(1)}});
    ZooEntry e;
    e.fan = std::make_shared<Fan>(std::move(vr.fan));
    return e;
}

ZooEntry make_line1() {
    ZooEntry e;
    e.fan = build(1, {{1}, {-1}}, {{0}, {1}});
    return e;
}

ZooEntry make_lambda2() {
    ZooEntry e;
    e.fan = build(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    e.functions["f"] = {0, -1, 0, -1};       // min(0,x) + min(0,y)
    e.functions["linear"] = {1, -1, 0, 0};   // restriction of x
    return e;
}

ZooEntry make_cross() {
    ZooEntry e;
    e.fan = build(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0}, {1}, {2}, {3}});
    e.functions["g"] = {1, 0, -1, 0};  // max(0,x) - max(0,y)
    return e;
}

ZooEntry make_cube_skeleton() {
    std::vector<IntVec> rays;
    for (int i = 0; i < 8; ++i) {
        IntVec v(3);
        for (int k = 0; k < 3; ++k) v[k] = ((i >> k) & 1) ? -1 : 1;
        rays.push_back(std::move(v));
    }
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 3; ++k) {
            int j = i ^ (1 << k);
            if (i < j) edges.push_back({i, j});
        }
    ZooEntry e;
    e.fan = build(3, std::move(rays), std::move(edges));
    return e;
}

ZooEntry make_tropline3() {
    ZooEntry e;
    e.fan = build(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0}, {1}, {2}, {3}});
    return e;
}

ZooEntry make_mod_lambda_cross() {
    ZooEntry base = make_lambda2();
    PLFunction f = PLFunction::from_ray_values(base.fan, base.functions.at("f"));
    Modification m = tropical_modification(f);
    ZooEntry e;
    e.functions["g"] = m.induced_values({1, 0, -1, 0});  // max(0,x) - max(0,y) on the base
    e.fan = std::make_shared<Fan>(std::move(m.fan));
    return e;
}

IntVec flat_ray(const std::vector<int>& flat, int n) {
    IntVec v(static_cast<std::size_t>(n - 1), Int(0));
    for (int i : flat) {
        if (i < n - 1)
            v[static_cast<std::size_t>(i)] += 1;
        else
            for (auto& x : v) x -= 1;
    }
    return v;
}

ZooEntry make_bergman(int r, int n) {
    if (r < 1 || r > n || n > 6) throw InputError("zoo: bergman-u(r,n) needs 1 <= r <= n <= 6");
    if (r == 1) {
        RawFan raw;
        raw.ambient_rank = n - 1;
        ValidationResult vr = validate_fan(raw);
        vr.fan.set_weights(std::map<int, Int>{{0, Int(1)}});
        ZooEntry e;
        e.fan = std::make_shared<Fan>(std::move(vr.fan));
        return e;
    }
    // Proper flats of the rank-r uniform matroid on n elements: the nonempty
    // subsets of size < r.  One ray per flat, one facet per maximal chain.
    std::vector<std::vector<int>> flats;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        if (static_cast<int>(s.size()) <= r - 1) flats.push_back(std::move(s));
    }
    std::sort(flats.begin(), flats.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<IntVec> rays;
    for (const auto& fl : flats) rays.push_back(flat_ray(fl, n));

    auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::vector<std::vector<int>> chains;
    std::vector<int> current;
    auto extend = [&](auto&& self, int last) -> void {
        if (static_cast<int>(current.size()) == r - 1) {
            chains.push_back(current);
            return;
        }
        for (int j = 0; j < static_cast<int>(flats.size()); ++j) {
            if (flats[j].size() != current.size() + 1) continue;
            if (last >= 0 && !contains(flats[j], flats[last])) continue;
            current.push_back(j);
            self(self, j);
            current.pop_back();
        }
    };
    extend(extend, -1);

    ZooEntry e;
    e.fan = build(n - 1, std::move(rays), std::move(chains));
    return e;
}

}  // namespace

ZooEntry zoo_fan(const std::string& name) {
    if (name == "point") return make_point();
    if (name == "line1") return make_line1();
    if (name == "lambda2") return make_lambda2();
    if (name == "cross") return make_cross();
    if (name == "cube-skeleton") return make_cube_skeleton();
    if (name == "tropline3") return make_tropline3();
    if (name == "mod-lambda-cross") return make_mod_lambda_cross();
    int r = 0, n = 0;
    if (std::sscanf(name.c_str(), "bergman-u(%d,%d)", &r, &n) == 2) return make_bergman(r, n);
    if (name.rfind("product:", 0) == 0) {
        std::string rest = name.substr(8);
        // Split at each separator until both halves resolve; this lets factor
        // names that themselves contain commas (bergman, nested products) work.
        for (std::size_t i = 0; i < rest.size(); ++i) {
            std::size_t len = 0;
            if (rest[i] == ',')
                len = 1;
            else if (rest.compare(i, 2, "\xc3\x97") == 0)
                len = 2;  // UTF-8 multiplication sign
            if (len == 0) continue;
            std::string left = rest.substr(0, i), right = rest.substr(i + len);
            try {
                ZooEntry a = zoo_fan(left);
                ZooEntry b = zoo_fan(right);
                ZooEntry e;
                e.fan = std::make_shared<Fan>(product_fan(*a.fan, *b.fan));
                return e;
            } catch (const InputError&) {
                continue;
            }
        }
        throw InputError("zoo: cannot parse product name '" + name + "'");
    }
    throw InputError("zoo: unknown example '" + name + "'");
}

std::vector<std::string> zoo_names() {
    return {"point",     "line1",         "lambda2",          "cross",
            "cube-skeleton", "tropline3", "mod-lambda-cross", "bergman-u(2,4)",
            "product:line1,cross"};
}

}  // namespace tropfan
