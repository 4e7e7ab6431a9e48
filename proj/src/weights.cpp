#include "tropfan/weights.hpp"

#include <algorithm>
#include <set>

#include "tropfan/util.hpp"

namespace tropfan {

namespace {

Int dot(const IntVec& a, const IntVec& b) {
    check(a.size() == b.size(), "dot: length mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

IntVec add_scaled(const IntVec& a, const Int& c, const IntVec& b) {
    IntVec r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += c * b[i];
    return r;
}

}  // namespace

BalancingReport check_balancing(const Fan& f) {
    if (!f.pure()) throw InputError("check_balancing: fan is not pure");
    if (!f.weights()) throw InputError("check_balancing: fan carries no weights");
    BalancingReport rep;
    for (int tau : f.cones_of_dim(f.dim() - 1)) {
        const QuotientData& q = f.cone_quotient(tau);
        IntVec sum(static_cast<std::size_t>(q.quot_rank), Int(0));
        for (int sigma : f.covering_cones(tau)) {
            const Int& w = f.weights()->at(sigma);
            sum = add_scaled(sum, w, quotient_ray(f, tau, sigma));
        }
        bool zero = true;
        for (const auto& x : sum)
            if (sgn(x) != 0) zero = false;
        if (!zero) {
            rep.balanced = false;
            rep.violations.push_back(tau);
        }
    }
    return rep;
}

PLFunction::PLFunction(std::shared_ptr<const Fan> fan, std::map<int, IntVec> facet_forms)
    : fan_(std::move(fan)), forms_(std::move(facet_forms)) {
    const Fan& f = *fan_;
    if (!f.pure()) throw InputError("function: fan is not pure");
    std::vector<int> facets = f.facets();
    for (int s : facets)
        if (!forms_.count(s)) throw InputError("function: missing form on facet " + std::to_string(s));
    for (const auto& [cid, m] : forms_) {
        if (f.cone(cid).dim != f.dim()) throw InputError("function: form key is not a facet");
        if (static_cast<int>(m.size()) != f.ambient_rank())
            throw InputError("function: form has wrong length");
    }
    // Continuity: forms agree on every shared ray.
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t j = i + 1; j < facets.size(); ++j) {
            const auto& a = f.cone(facets[i]).rays;
            const auto& b = f.cone(facets[j]).rays;
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            for (int r : common)
                if (dot(forms_.at(facets[i]), f.ray(r)) != dot(forms_.at(facets[j]), f.ray(r)))
                    throw InputError("function: facet forms disagree on ray " + std::to_string(r));
        }
    for (int c = 0; c < f.cone_count(); ++c) {
        for (int s : facets) {
            if (f.is_face(c, s)) {
                governing_facet_[c] = s;  // facet ids ascend, first hit is smallest
                break;
            }
        }
        check(governing_facet_.count(c) == 1, "function: cone not under any facet");
    }
}

PLFunction PLFunction::from_ray_values(std::shared_ptr<const Fan> fan, const IntVec& values) {
    const Fan& f = *fan;
    if (static_cast<int>(values.size()) != f.ray_count())
        throw InputError("function: need one value per ray");
    std::map<int, IntVec> forms;
    for (int s : f.facets()) {
        const auto& rays = f.cone(s).rays;
        // m . r_i = value_i, solved exactly over the integers.
        ZMat a(static_cast<int>(rays.size()), f.ambient_rank());
        IntVec b(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            for (int j = 0; j < f.ambient_rank(); ++j)
                a.at(static_cast<int>(i), j) = f.ray(rays[i])[static_cast<std::size_t>(j)];
            b[i] = values[static_cast<std::size_t>(rays[i])];
        }
        auto m = integral_solve(a, b);
        if (!m)
            throw InputError("function: ray values admit no integral linear form on facet " +
                             std::to_string(s));
        forms[s] = *m;
    }
    return PLFunction(std::move(fan), std::move(forms));
}

const IntVec& PLFunction::form_at(int cone_id) const { return forms_.at(governing_facet_.at(cone_id)); }

Int PLFunction::value_on_ray(int ray_id) const {
    int rc = fan_->cone_index({ray_id});
    check(rc >= 0, "function: ray without a cone");
    return dot(form_at(rc), fan_->ray(ray_id));
}

IntVec PLFunction::ray_values() const {
    IntVec v(static_cast<std::size_t>(fan_->ray_count()));
    for (int r = 0; r < fan_->ray_count(); ++r) v[static_cast<std::size_t>(r)] = value_on_ray(r);
    return v;
}

bool PLFunction::is_linear() const {
    auto it = forms_.begin();
    for (const auto& [cid, m] : forms_)
        if (m != it->second) return false;
    return true;
}

Int order_of_vanishing(const PLFunction& fn, int tau) {
    const Fan& f = fn.fan();
    if (!f.weights()) throw InputError("order_of_vanishing: fan carries no weights");
    check(f.cone(tau).dim == f.dim() - 1, "order_of_vanishing: cone is not codimension one");
    IntVec total(static_cast<std::size_t>(f.ambient_rank()), Int(0));
    Int acc = 0;
    for (int sigma : f.covering_cones(tau)) {
        const Int& w = f.weights()->at(sigma);
        IntVec n = lattice_normal(f, tau, sigma);
        acc -= w * dot(fn.form_at(sigma), n);
        total = add_scaled(total, w, n);
    }
    return acc + dot(fn.form_at(tau), total);
}

Divisor divisor(const PLFunction& fn) {
    const Fan& f = fn.fan();
    BalancingReport rep = check_balancing(f);
    if (!rep.balanced) throw InputError("divisor: fan is not balanced");
    Divisor d;
    std::set<int> support_faces;
    for (int tau : f.cones_of_dim(f.dim() - 1)) {
        Int o = order_of_vanishing(fn, tau);
        if (sgn(o) != 0) {
            d.orders[tau] = o;
            for (int c : f.faces_of(tau))
                if (c != 0) support_faces.insert(c);
        }
    }

    std::set<int> ray_set;
    for (int c : support_faces)
        for (int r : f.cone(c).rays) ray_set.insert(r);
    std::map<int, int> base_ray_to_new;
    RawFan raw;
    raw.ambient_rank = f.ambient_rank();
    for (int r : ray_set) {
        base_ray_to_new[r] = static_cast<int>(d.ray_map.size());
        d.ray_map.push_back(r);
        raw.rays.push_back(f.ray(r));
    }
    std::vector<int> base_of_input;
    for (int c : support_faces) {
        std::vector<int> rays;
        for (int r : f.cone(c).rays) rays.push_back(base_ray_to_new.at(r));
        raw.cones.push_back(std::move(rays));
        base_of_input.push_back(c);
    }
    ValidationResult vr = validate_fan(raw);
    d.fan = std::move(vr.fan);
    d.cone_map[0] = 0;
    d.base_cone[0] = 0;
    for (std::size_t i = 0; i < base_of_input.size(); ++i) {
        d.cone_map[vr.input_cone_ids[i]] = base_of_input[i];
        d.base_cone[base_of_input[i]] = vr.input_cone_ids[i];
    }
    if (!d.orders.empty()) {
        std::map<int, Int> w;
        for (const auto& [base_c, o] : d.orders) w[d.base_cone.at(base_c)] = o;
        d.fan.set_weights(w);
    }
    return d;
}

Modification tropical_modification(const PLFunction& fn) {
    Modification m;
    m.base = fn.fan_ptr();
    m.div = divisor(fn);
    const Fan& f = *m.base;
    int n = f.ambient_rank();

    RawFan raw;
    raw.ambient_rank = n + 1;
    for (int r = 0; r < f.ray_count(); ++r) {
        IntVec g = f.ray(r);
        g.push_back(fn.value_on_ray(r));
        raw.rays.push_back(std::move(g));  // primitive: first n coordinates already are
    }
    bool with_rho = !m.div.empty();
    int rho_input = -1;
    if (with_rho) {
        IntVec rho(static_cast<std::size_t>(n + 1), Int(0));
        rho[static_cast<std::size_t>(n)] = 1;
        rho_input = static_cast<int>(raw.rays.size());
        raw.rays.push_back(std::move(rho));
    }

    raw.weights.emplace();
    std::vector<std::pair<bool, int>> tag_of_input;  // (is_up, base cone id)
    for (int c = 1; c < f.cone_count(); ++c) {
        if (f.cone(c).dim == f.dim())
            (*raw.weights)[static_cast<int>(raw.cones.size())] = f.weights()->at(c);
        raw.cones.push_back(f.cone(c).rays);
        tag_of_input.emplace_back(false, c);
    }
    if (with_rho) {
        for (const auto& [dc, base_c] : m.div.cone_map) {
            std::vector<int> rays = f.cone(base_c).rays;
            rays.push_back(rho_input);
            if (m.div.orders.count(base_c))
                (*raw.weights)[static_cast<int>(raw.cones.size())] = m.div.orders.at(base_c);
            raw.cones.push_back(std::move(rays));
            tag_of_input.emplace_back(true, base_c);
        }
    }

    ValidationResult vr = validate_fan(raw);
    m.fan = std::move(vr.fan);
    m.graph_cone[0] = 0;
    m.face_of[0] = ModFace{false, 0};
    for (std::size_t i = 0; i < tag_of_input.size(); ++i) {
        int id = vr.input_cone_ids[i];
        const auto& [up, base_c] = tag_of_input[i];
        if (up)
            m.up_cone[base_c] = id;
        else
            m.graph_cone[base_c] = id;
        m.face_of[id] = ModFace{up, base_c};
    }
    if (with_rho) {
        m.rho_ray = rho_input;  // ray order is preserved by validation
        check(m.fan.ray(m.rho_ray).back() == 1, "modification: special ray misplaced");
    }

    BalancingReport rep = check_balancing(m.fan);
    check(rep.balanced, "modification: result is not balanced");
    return m;
}

IntVec Modification::induced_values(const IntVec& base_ray_values) const {
    check(static_cast<int>(base_ray_values.size()) == base->ray_count(),
          "modification: need one value per base ray");
    IntVec v = base_ray_values;
    if (rho_ray >= 0) v.push_back(0);
    return v;
}

PLFunction induced_function(const PLFunction& fn, const StarData& star) {
    const Fan& f = fn.fan();
    const IntVec& l = fn.form_at(star.base_cone);
    const QuotientData& q = star.quotient;
    std::map<int, IntVec> forms;
    for (int sc : star.fan.facets()) {
        int eta = star.cone_origin.at(sc);
        const IntVec& me = fn.form_at(eta);
        // (me - l) kills span(base cone), so it descends along quot_basis.
        IntVec bar(static_cast<std::size_t>(q.quot_rank));
        for (int j = 0; j < q.quot_rank; ++j) {
            Int acc = 0;
            for (int i = 0; i < f.ambient_rank(); ++i)
                acc += (me[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(i)]) * q.quot_basis.at(i, j);
            bar[static_cast<std::size_t>(j)] = acc;
        }
        forms[sc] = std::move(bar);
    }
    return PLFunction(std::make_shared<Fan>(star.fan), std::move(forms));
}

}  // namespace tropfan
