#include "tropfan/fan.hpp"

#include <algorithm>
#include <set>

#include "tropfan/util.hpp"

namespace tropfan {

Fan::Fan(const Fan& o)
    : ambient_rank_(o.ambient_rank_),
      dim_(o.dim_),
      pure_(o.pure_),
      simplicial_(o.simplicial_),
      rays_(o.rays_),
      cones_(o.cones_),
      cone_ids_(o.cone_ids_),
      covers_(o.covers_),
      weights_(o.weights_),
      product_(o.product_) {}

Fan& Fan::operator=(const Fan& o) {
    if (this == &o) return *this;
    ambient_rank_ = o.ambient_rank_;
    dim_ = o.dim_;
    pure_ = o.pure_;
    simplicial_ = o.simplicial_;
    rays_ = o.rays_;
    cones_ = o.cones_;
    cone_ids_ = o.cone_ids_;
    covers_ = o.covers_;
    weights_ = o.weights_;
    product_ = o.product_;
    std::lock_guard<std::mutex> lk(quot_mu_);
    quot_cache_.clear();
    return *this;
}

ZMat Fan::ray_matrix(const std::vector<int>& ray_ids) const {
    ZMat m(ambient_rank_, static_cast<int>(ray_ids.size()));
    for (int j = 0; j < m.cols(); ++j) {
        check(ray_ids[j] >= 0 && ray_ids[j] < ray_count(), "ray_matrix: ray id out of range");
        for (int i = 0; i < ambient_rank_; ++i) m.at(i, j) = rays_[ray_ids[j]][i];
    }
    return m;
}

int Fan::cone_index(const std::vector<int>& sorted_rays) const {
    auto it = cone_ids_.find(sorted_rays);
    return it == cone_ids_.end() ? -1 : it->second;
}

std::vector<int> Fan::cones_of_dim(int k) const {
    std::vector<int> out;
    for (int i = 0; i < cone_count(); ++i)
        if (cones_[i].dim == k) out.push_back(i);
    return out;
}

bool Fan::is_face(int tau, int sigma) const {
    const auto& a = cones_[tau].rays;
    const auto& b = cones_[sigma].rays;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> Fan::cones_above(int tau) const {
    std::vector<int> out;
    for (int i = 0; i < cone_count(); ++i)
        if (is_face(tau, i)) out.push_back(i);
    return out;
}

std::vector<int> Fan::faces_of(int sigma) const {
    std::vector<int> out;
    for (int i = 0; i < cone_count(); ++i)
        if (is_face(i, sigma)) out.push_back(i);
    return out;
}

std::vector<int> Fan::covering_cones(int tau) const {
    std::vector<int> out;
    for (const auto& [a, b] : covers_)
        if (a == tau) out.push_back(b);
    return out;
}

std::vector<int> Fan::covered_cones(int sigma) const {
    std::vector<int> out;
    for (const auto& [a, b] : covers_)
        if (b == sigma) out.push_back(a);
    return out;
}

const QuotientData& Fan::cone_quotient(int cone_id) const {
    std::lock_guard<std::mutex> lk(quot_mu_);
    auto it = quot_cache_.find(cone_id);
    if (it == quot_cache_.end()) {
        QuotientData q = quotient_lattice(ray_matrix(cones_[cone_id].rays), ambient_rank_);
        it = quot_cache_.emplace(cone_id, std::move(q)).first;
    }
    return it->second;
}

void Fan::set_weights(std::optional<Orientation> w) {
    if (w) {
        std::set<int> facet_set;
        for (int f : facets()) facet_set.insert(f);
        for (const auto& [cid, wt] : *w) {
            check(facet_set.count(cid) == 1, "weights: key is not a facet cone id");
            if (sgn(wt) == 0) throw InputError("weights: zero weight on facet " + std::to_string(cid));
        }
        check(w->size() == facet_set.size(), "weights: every facet needs a weight");
    }
    weights_ = std::move(w);
}

namespace {

// Strict convexity: a cone contains a line iff its rays admit a nontrivial
// nonnegative dependence. Simplicial cones are automatically pointed.
bool cone_is_pointed(const ZMat& rays) {
    int n = rays.rows(), m = rays.cols();
    if (m <= 1) return true;
    QMat a(n + 1, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a.at(i, j) = Rat(rays.at(i, j));
    for (int j = 0; j < m; ++j) a.at(n, j) = 1;
    QMat b(n + 1, 1);
    b.at(n, 0) = 1;
    return !nonneg_feasible(a, b);
}

bool ray_is_redundant(const ZMat& rays, int j) {
    std::vector<int> others;
    for (int k = 0; k < rays.cols(); ++k)
        if (k != j) others.push_back(k);
    QMat a(rays.rows(), static_cast<int>(others.size()));
    QMat b(rays.rows(), 1);
    for (int i = 0; i < rays.rows(); ++i) {
        for (int t = 0; t < static_cast<int>(others.size()); ++t) a.at(i, t) = Rat(rays.at(i, others[t]));
        b.at(i, 0) = Rat(rays.at(i, j));
    }
    return nonneg_feasible(a, b);
}

std::string rayset_str(const std::vector<int>& rays) {
    std::string s = "{";
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(rays[i]);
    }
    return s + "}";
}

}  // namespace

struct FanBuilder {
    static ValidationResult validate(const RawFan& raw);
    static void set_product(Fan& f, ProductStructure ps) { f.product_ = std::move(ps); }
};

ValidationResult FanBuilder::validate(const RawFan& raw) {
    ValidationResult res;
    if (raw.ambient_rank < 0) throw InputError("validate: negative ambient rank");
    Fan& f = res.fan;
    f.ambient_rank_ = raw.ambient_rank;

    // Rays: primitive (normalized with a warning), nonzero, distinct.
    std::map<IntVec, int> seen_rays;
    for (std::size_t i = 0; i < raw.rays.size(); ++i) {
        const IntVec& r = raw.rays[i];
        if (static_cast<int>(r.size()) != raw.ambient_rank)
            throw InputError("validate: ray " + std::to_string(i) + " has wrong length");
        bool zero = true;
        for (const auto& x : r)
            if (sgn(x) != 0) zero = false;
        if (zero) throw InputError("validate: ray " + std::to_string(i) + " is zero");
        IntVec p = primitive(r);
        if (p != r)
            res.warnings.push_back("ray " + std::to_string(i) + " was not primitive; normalized");
        if (seen_rays.count(p))
            throw InputError("validate: duplicate ray " + std::to_string(i));
        seen_rays[p] = static_cast<int>(i);
        f.rays_.push_back(p);
    }

    // Collect declared cones; the zero cone is implicit.
    std::set<std::vector<int>> declared;
    std::vector<std::vector<int>> order;
    auto declare = [&](std::vector<int> rays) {
        if (declared.insert(rays).second) order.push_back(std::move(rays));
    };
    std::vector<std::vector<int>> input_sets;
    for (std::size_t ci = 0; ci < raw.cones.size(); ++ci) {
        std::vector<int> rays = raw.cones[ci];
        if (rays.empty()) throw InputError("validate: the zero cone is implicit; do not list it");
        std::sort(rays.begin(), rays.end());
        if (std::adjacent_find(rays.begin(), rays.end()) != rays.end())
            throw InputError("validate: cone " + std::to_string(ci) + " repeats a ray");
        for (int r : rays)
            if (r < 0 || r >= f.ray_count())
                throw InputError("validate: cone " + std::to_string(ci) + " references unknown ray");
        if (declared.count(rays))
            throw InputError("validate: duplicate cone " + rayset_str(rays));
        declare(rays);
        input_sets.push_back(rays);
    }

    // Per-cone geometry: rank, strict convexity, no redundant generators.
    // Subsets of simplicial cones are faces and are auto-inserted.
    std::map<std::vector<int>, int> cone_dim;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const std::vector<int> rays = order[idx];
        ZMat m = f.ray_matrix(rays);
        int rank = m.rank();
        cone_dim[rays] = rank;
        if (rank == static_cast<int>(rays.size())) {
            // Simplicial: every subset spans a face.
            for (std::size_t mask_i = 0; mask_i < rays.size(); ++mask_i) {
                std::vector<int> sub = rays;
                sub.erase(sub.begin() + static_cast<long>(mask_i));
                if (!sub.empty()) declare(sub);
            }
        } else {
            for (int j = 0; j < static_cast<int>(rays.size()); ++j)
                if (ray_is_redundant(m, j))
                    throw InputError("validate: ray " + std::to_string(rays[j]) + " of cone " +
                                     rayset_str(rays) + " is a nonnegative combination of the others");
            if (!cone_is_pointed(m))
                throw InputError("validate: cone " + rayset_str(rays) + " is not strictly convex");
        }
    }

    // Face closure: pairwise ray-set intersections must be declared cones.
    std::vector<std::vector<int>> all(order.begin(), order.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            std::vector<int> meet;
            std::set_intersection(all[i].begin(), all[i].end(), all[j].begin(), all[j].end(),
                                  std::back_inserter(meet));
            if (!meet.empty() && !declared.count(meet))
                throw InputError("validate: face-closure violation: " + rayset_str(all[i]) + " and " +
                                 rayset_str(all[j]) + " meet in undeclared " + rayset_str(meet));
        }

    // Canonical order: (dim, lex ray set); the zero cone gets id 0.
    std::vector<std::vector<int>> sorted = all;
    for (auto& rays : sorted)
        if (!cone_dim.count(rays)) cone_dim[rays] = f.ray_matrix(rays).rank();
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        int da = cone_dim[a], db = cone_dim[b];
        if (da != db) return da < db;
        return a < b;
    });
    f.cones_.push_back(Cone{{}, 0});
    f.cone_ids_[{}] = 0;
    for (const auto& rays : sorted) {
        int id = static_cast<int>(f.cones_.size());
        f.cones_.push_back(Cone{rays, cone_dim[rays]});
        f.cone_ids_[rays] = id;
    }

    f.dim_ = 0;
    for (const auto& c : f.cones_) f.dim_ = std::max(f.dim_, c.dim);

    // Simplicial flag: every cone has as many rays as its dimension.
    f.simplicial_ = true;
    for (const auto& c : f.cones_)
        if (static_cast<int>(c.rays.size()) != c.dim) f.simplicial_ = false;

    // Purity: subset-maximal cones all have dim = fan dim.
    f.pure_ = true;
    for (int i = 0; i < f.cone_count(); ++i) {
        bool maximal = true;
        for (int j = 0; j < f.cone_count() && maximal; ++j)
            if (j != i && f.is_face(i, j)) maximal = false;
        if (maximal && f.cones_[i].dim != f.dim_) f.pure_ = false;
    }

    // Covers: face pairs with dimension difference one.
    for (int i = 0; i < f.cone_count(); ++i)
        for (int j = 0; j < f.cone_count(); ++j)
            if (f.cones_[j].dim == f.cones_[i].dim + 1 && i != j && f.is_face(i, j))
                f.covers_.emplace_back(i, j);

    for (const auto& rays : input_sets) res.input_cone_ids.push_back(f.cone_ids_[rays]);

    if (raw.weights) {
        Orientation w;
        for (const auto& [idx, wt] : *raw.weights) {
            if (idx < 0 || idx >= static_cast<int>(input_sets.size()))
                throw InputError("validate: weight key " + std::to_string(idx) + " out of range");
            w[res.input_cone_ids[static_cast<std::size_t>(idx)]] = wt;
        }
        try {
            f.set_weights(std::move(w));
        } catch (const CheckError& e) {
            throw InputError(std::string("validate: ") + e.what());
        }
    }
    return res;
}

ValidationResult validate_fan(const RawFan& raw) { return FanBuilder::validate(raw); }

namespace {

StarData star_of_zero(const Fan& f) {
    StarData s;
    s.fan = f;
    s.base_cone = 0;
    s.quotient = quotient_lattice(ZMat(f.ambient_rank(), 0), f.ambient_rank());
    for (int i = 0; i < f.cone_count(); ++i) s.cone_origin[i] = i;
    s.ray_origin.resize(static_cast<std::size_t>(f.ray_count()));
    for (int r = 0; r < f.ray_count(); ++r) {
        int cid = f.cone_index({r});
        check(cid >= 0, "star_fan: ray without its 1-cone");
        s.ray_origin[static_cast<std::size_t>(r)] = cid;
    }
    return s;
}

StarData star_simplicial(const Fan& f, int sigma) {
    const Cone& sc = f.cone(sigma);
    const QuotientData& q = f.cone_quotient(sigma);
    QMat proj_q = q.proj.to_qmat();

    // Star rays: projected primitives of the extra ray of each cover of sigma.
    std::map<IntVec, int> star_ray_ids;
    std::vector<IntVec> star_rays;
    std::vector<int> ray_origin;
    std::map<int, int> base_ray_to_star;
    for (int eta : f.covering_cones(sigma)) {
        const Cone& ec = f.cone(eta);
        std::vector<int> extra;
        std::set_difference(ec.rays.begin(), ec.rays.end(), sc.rays.begin(), sc.rays.end(),
                            std::back_inserter(extra));
        check(extra.size() == 1, "star_fan: simplicial cover must add one ray");
        ZMat rm = f.ray_matrix(extra);
        IntVec img(q.quot_rank);
        for (int i = 0; i < q.quot_rank; ++i) {
            Int acc = 0;
            for (int j = 0; j < q.ambient_rank; ++j) acc += q.proj.at(i, j) * rm.at(j, 0);
            img[static_cast<std::size_t>(i)] = acc;
        }
        IntVec p = primitive(img);
        if (star_ray_ids.count(p))
            throw InputError("star_fan: two covers of the cone project to the same ray");
        int id = static_cast<int>(star_rays.size());
        star_ray_ids[p] = id;
        star_rays.push_back(p);
        ray_origin.push_back(eta);
        base_ray_to_star[extra[0]] = id;
    }

    RawFan raw;
    raw.ambient_rank = q.quot_rank;
    raw.rays = star_rays;
    std::vector<int> base_of_input;  // parallel to raw.cones
    for (int eta : f.cones_above(sigma)) {
        if (eta == sigma) continue;
        const Cone& ec = f.cone(eta);
        std::vector<int> extra;
        std::set_difference(ec.rays.begin(), ec.rays.end(), sc.rays.begin(), sc.rays.end(),
                            std::back_inserter(extra));
        std::vector<int> star_cone;
        for (int r : extra) {
            check(base_ray_to_star.count(r) == 1, "star_fan: extra ray missing from covers");
            star_cone.push_back(base_ray_to_star[r]);
        }
        std::sort(star_cone.begin(), star_cone.end());
        raw.cones.push_back(star_cone);
        base_of_input.push_back(eta);
    }

    ValidationResult vr = validate_fan(raw);
    StarData s;
    s.fan = std::move(vr.fan);
    s.base_cone = sigma;
    s.quotient = q;
    s.ray_origin = ray_origin;
    s.cone_origin[0] = sigma;
    for (std::size_t i = 0; i < base_of_input.size(); ++i)
        s.cone_origin[vr.input_cone_ids[i]] = base_of_input[i];

    if (f.weights()) {
        Orientation w;
        for (const auto& [star_cid, base_cid] : s.cone_origin) {
            if (s.fan.cone(star_cid).dim == s.fan.dim()) {
                auto it = f.weights()->find(base_cid);
                check(it != f.weights()->end(), "star_fan: missing weight on facet over sigma");
                w[star_cid] = it->second;
            }
        }
        s.fan.set_weights(std::move(w));
    }
    return s;
}

StarData star_product(const Fan& f, int sigma);

StarData star_dispatch(const Fan& f, int sigma) {
    if (sigma == 0) return star_of_zero(f);
    if (f.simplicial()) return star_simplicial(f, sigma);
    if (f.product_structure()) return star_product(f, sigma);
    throw InputError("star_fan: needs a simplicial fan, the zero cone, or product structure");
}

StarData star_product(const Fan& f, int sigma) {
    const ProductStructure& ps = *f.product_structure();
    const Cone& sc = f.cone(sigma);
    std::vector<int> left_rays, right_rays;
    for (int r : sc.rays) {
        if (r < ps.left_ray_count)
            left_rays.push_back(r);
        else
            right_rays.push_back(r - ps.left_ray_count);
    }
    int sl = ps.left->cone_index(left_rays);
    int sr = ps.right->cone_index(right_rays);
    check(sl >= 0 && sr >= 0, "star_fan: product cone does not split");
    StarData a = star_dispatch(*ps.left, sl);
    StarData b = star_dispatch(*ps.right, sr);
    Fan prod = product_fan(a.fan, b.fan);

    StarData s;
    s.base_cone = sigma;
    // Quotient data for the product: block sums of the factor quotients.
    int n1 = ps.left->ambient_rank(), n2 = ps.right->ambient_rank();
    int q1 = a.quotient.quot_rank, q2 = b.quotient.quot_rank;
    QuotientData q;
    q.ambient_rank = n1 + n2;
    q.sub_rank = a.quotient.sub_rank + b.quotient.sub_rank;
    q.quot_rank = q1 + q2;
    q.sub_basis = ZMat(n1 + n2, q.sub_rank);
    q.quot_basis = ZMat(n1 + n2, q.quot_rank);
    q.proj = ZMat(q.quot_rank, n1 + n2);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < a.quotient.sub_rank; ++j) q.sub_basis.at(i, j) = a.quotient.sub_basis.at(i, j);
        for (int j = 0; j < q1; ++j) q.quot_basis.at(i, j) = a.quotient.quot_basis.at(i, j);
    }
    for (int i = 0; i < n2; ++i) {
        for (int j = 0; j < b.quotient.sub_rank; ++j)
            q.sub_basis.at(n1 + i, a.quotient.sub_rank + j) = b.quotient.sub_basis.at(i, j);
        for (int j = 0; j < q2; ++j) q.quot_basis.at(n1 + i, q1 + j) = b.quotient.quot_basis.at(i, j);
    }
    for (int i = 0; i < q1; ++i)
        for (int j = 0; j < n1; ++j) q.proj.at(i, j) = a.quotient.proj.at(i, j);
    for (int i = 0; i < q2; ++i)
        for (int j = 0; j < n2; ++j) q.proj.at(q1 + i, n1 + j) = b.quotient.proj.at(i, j);
    s.quotient = q;

    // Origins: map product star cones back through the factor origins.
    const ProductStructure& sps = *prod.product_structure();
    for (int cid = 0; cid < prod.cone_count(); ++cid) {
        const Cone& c = prod.cone(cid);
        std::vector<int> lr, rr;
        for (int r : c.rays) {
            if (r < sps.left_ray_count)
                lr.push_back(r);
            else
                rr.push_back(r - sps.left_ray_count);
        }
        int lc = a.fan.cone_index(lr), rc = b.fan.cone_index(rr);
        check(lc >= 0 && rc >= 0, "star_fan: product star cone does not split");
        int base_l = a.cone_origin.at(lc), base_r = b.cone_origin.at(rc);
        std::vector<int> base_rays = ps.left->cone(base_l).rays;
        for (int r : ps.right->cone(base_r).rays) base_rays.push_back(r + ps.left_ray_count);
        std::sort(base_rays.begin(), base_rays.end());
        int base = f.cone_index(base_rays);
        check(base >= 0, "star_fan: recombined base cone missing");
        s.cone_origin[cid] = base;
    }
    for (int r = 0; r < prod.ray_count(); ++r) {
        int origin;
        if (r < sps.left_ray_count) {
            int base_cover_left = a.ray_origin[static_cast<std::size_t>(r)];
            std::vector<int> rays = ps.left->cone(base_cover_left).rays;
            for (int rr2 : right_rays) rays.push_back(rr2 + ps.left_ray_count);
            std::sort(rays.begin(), rays.end());
            origin = f.cone_index(rays);
        } else {
            int base_cover_right = b.ray_origin[static_cast<std::size_t>(r - sps.left_ray_count)];
            std::vector<int> rays = left_rays;
            for (int rr2 : ps.right->cone(base_cover_right).rays) rays.push_back(rr2 + ps.left_ray_count);
            std::sort(rays.begin(), rays.end());
            origin = f.cone_index(rays);
        }
        check(origin >= 0, "star_fan: ray origin cone missing");
        s.ray_origin.push_back(origin);
    }
    s.fan = std::move(prod);
    return s;
}

}  // namespace

StarData star_fan(const Fan& f, int sigma) {
    check(sigma >= 0 && sigma < f.cone_count(), "star_fan: cone id out of range");
    return star_dispatch(f, sigma);
}

Fan product_fan(const Fan& a, const Fan& b) {
    RawFan raw;
    raw.ambient_rank = a.ambient_rank() + b.ambient_rank();
    for (int i = 0; i < a.ray_count(); ++i) {
        IntVec v(static_cast<std::size_t>(raw.ambient_rank));
        for (int k = 0; k < a.ambient_rank(); ++k) v[static_cast<std::size_t>(k)] = a.ray(i)[static_cast<std::size_t>(k)];
        raw.rays.push_back(v);
    }
    for (int i = 0; i < b.ray_count(); ++i) {
        IntVec v(static_cast<std::size_t>(raw.ambient_rank));
        for (int k = 0; k < b.ambient_rank(); ++k)
            v[static_cast<std::size_t>(a.ambient_rank() + k)] = b.ray(i)[static_cast<std::size_t>(k)];
        raw.rays.push_back(v);
    }
    std::vector<std::pair<int, int>> pair_of_input;
    for (int ca = 0; ca < a.cone_count(); ++ca)
        for (int cb = 0; cb < b.cone_count(); ++cb) {
            if (ca == 0 && cb == 0) continue;
            std::vector<int> rays = a.cone(ca).rays;
            for (int r : b.cone(cb).rays) rays.push_back(r + a.ray_count());
            raw.cones.push_back(rays);
            pair_of_input.emplace_back(ca, cb);
        }
    ValidationResult vr = validate_fan(raw);
    Fan f = std::move(vr.fan);

    if (a.weights() && b.weights()) {
        Orientation w;
        for (std::size_t i = 0; i < pair_of_input.size(); ++i) {
            const auto& [ca, cb] = pair_of_input[i];
            if (a.cone(ca).dim + b.cone(cb).dim != f.dim()) continue;
            auto ia = a.weights()->find(ca);
            auto ib = b.weights()->find(cb);
            if (ia != a.weights()->end() && ib != b.weights()->end())
                w[vr.input_cone_ids[i]] = ia->second * ib->second;
        }
        f.set_weights(std::move(w));
    }
    ProductStructure ps;
    ps.left = std::make_shared<Fan>(a);
    ps.right = std::make_shared<Fan>(b);
    ps.left_ray_count = a.ray_count();
    FanBuilder::set_product(f, std::move(ps));
    return f;
}

bool is_unimodular(const Fan& f) {
    if (!f.simplicial()) throw InputError("is_unimodular: fan must be simplicial");
    for (int i = 1; i < f.cone_count(); ++i) {
        SnfResult s = smith_normal_form(f.ray_matrix(f.cone(i).rays));
        for (const auto& d : s.invariant_factors())
            if (d != 1) return false;
    }
    return true;
}

IntVec quotient_ray(const Fan& f, int tau, int sigma) {
    check(f.is_face(tau, sigma) && f.cone(sigma).dim == f.cone(tau).dim + 1,
          "quotient_ray: needs a cover pair");
    const QuotientData& q = f.cone_quotient(tau);
    const auto& trays = f.cone(tau).rays;
    for (int r : f.cone(sigma).rays) {
        if (std::binary_search(trays.begin(), trays.end(), r)) continue;
        IntVec img(static_cast<std::size_t>(q.quot_rank));
        bool zero = true;
        for (int i = 0; i < q.quot_rank; ++i) {
            Int acc = 0;
            for (int j = 0; j < q.ambient_rank; ++j) acc += q.proj.at(i, j) * f.ray(r)[static_cast<std::size_t>(j)];
            img[static_cast<std::size_t>(i)] = acc;
            if (sgn(acc) != 0) zero = false;
        }
        if (!zero) return primitive(img);
    }
    throw CheckError("quotient_ray: no ray of sigma projects nontrivially");
}

IntVec lattice_normal(const Fan& f, int tau, int sigma) {
    check(f.is_face(tau, sigma) && f.cone(sigma).dim == f.cone(tau).dim + 1,
          "lattice_normal: needs a cover pair");
    const QuotientData& qs = f.cone_quotient(sigma);
    const QuotientData& qt = f.cone_quotient(tau);
    QMat bs = qs.sub_basis.to_qmat();
    QMat bt = qt.sub_basis.to_qmat();
    auto t = bs.solve(bt);
    check(t.has_value(), "lattice_normal: tau lattice not inside sigma lattice");
    QuotientData inner = quotient_lattice(ZMat::from_qmat(*t), qs.sub_rank);
    check(inner.quot_rank == 1, "lattice_normal: quotient rank must be one");
    // v = bs * quot_basis, sign fixed so the image in N^tau points into sigma.
    IntVec v(static_cast<std::size_t>(f.ambient_rank()));
    for (int i = 0; i < f.ambient_rank(); ++i) {
        Int acc = 0;
        for (int j = 0; j < qs.sub_rank; ++j) acc += qs.sub_basis.at(i, j) * inner.quot_basis.at(j, 0);
        v[static_cast<std::size_t>(i)] = acc;
    }
    IntVec e = quotient_ray(f, tau, sigma);
    // proj_tau(v) = c * e with c nonzero; flip v if c < 0.
    Int c = 0;
    for (int i = 0; i < qt.quot_rank && sgn(c) == 0; ++i) {
        if (sgn(e[static_cast<std::size_t>(i)]) == 0) continue;
        Int acc = 0;
        for (int j = 0; j < qt.ambient_rank; ++j) acc += qt.proj.at(i, j) * v[static_cast<std::size_t>(j)];
        c = acc * sgn(e[static_cast<std::size_t>(i)]);
    }
    check(sgn(c) != 0, "lattice_normal: projected normal vanished");
    if (sgn(c) < 0)
        for (auto& x : v) x = -x;
    return v;
}

}  // namespace tropfan
