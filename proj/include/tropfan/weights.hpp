#pragma once

#include <map>
#include <memory>
#include <vector>

#include "tropfan/fan.hpp"

namespace tropfan {

struct BalancingReport {
    bool balanced = true;
    std::vector<int> violations;  // codim-1 cone ids where the weighted sum is nonzero
};

// Checks sum over covers sigma of tau of w(sigma) * e_{sigma/tau} = 0 in N^tau,
// for every codim-1 cone tau. Requires a pure weighted fan.
BalancingReport check_balancing(const Fan& f);

// Conewise integral linear function: one integer covector per facet, agreeing
// on shared rays. Lower cones use the form of the smallest facet above them.
class PLFunction {
public:
    PLFunction(std::shared_ptr<const Fan> fan, std::map<int, IntVec> facet_forms);

    // Builds facet forms from values on primitive ray generators by exact
    // integer solving; rejects value vectors that are not conewise linear or
    // admit no integral form.
    static PLFunction from_ray_values(std::shared_ptr<const Fan> fan, const IntVec& values);

    const Fan& fan() const { return *fan_; }
    const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
    const std::map<int, IntVec>& facet_forms() const { return forms_; }

    // The covector governing a cone: the form of the lexicographically
    // smallest facet containing it.
    const IntVec& form_at(int cone_id) const;
    Int value_on_ray(int ray_id) const;
    IntVec ray_values() const;
    bool is_linear() const;  // all facet forms equal

private:
    std::shared_ptr<const Fan> fan_;
    std::map<int, IntVec> forms_;
    std::map<int, int> governing_facet_;  // cone id -> smallest facet above
};

// ord_tau(fn) for a codim-1 cone tau; independent of normal vector choices.
Int order_of_vanishing(const PLFunction& fn, int tau);

struct Divisor {
    Fan fan;                       // codim-1 cones of nonzero order and their faces
    std::map<int, Int> orders;     // base codim-1 cone id -> order (nonzero only)
    std::vector<int> ray_map;      // divisor ray id -> base ray id
    std::map<int, int> cone_map;   // divisor cone id -> base cone id
    std::map<int, int> base_cone;  // base cone id -> divisor cone id
    bool empty() const { return orders.empty(); }
};

// Requires the weighted fan to be balanced.
Divisor divisor(const PLFunction& fn);

struct ModFace {
    bool up = false;  // false: graph face sigma-tilde; true: up face delta-up
    int base = 0;     // base fan cone id (for up faces: a divisor-support cone)
};

struct Modification {
    Fan fan;  // rank n+1, weighted
    std::shared_ptr<const Fan> base;
    Divisor div;
    int rho_ray = -1;               // -1 when the divisor is empty
    std::map<int, int> graph_cone;  // base cone id -> graph cone id (0 -> 0)
    std::map<int, int> up_cone;     // base divisor-face cone id -> up cone id
    std::map<int, ModFace> face_of;

    // Ray values on the modification induced by values on the base rays:
    // the graph ray over r takes value(r), the special ray takes 0.
    IntVec induced_values(const IntVec& base_ray_values) const;
};

// Graph construction along fn's divisor; the result is re-checked balanced.
Modification tropical_modification(const PLFunction& fn);

// Function on a star fan induced by fn, relative to the form of the smallest
// facet containing the star's base cone. Requires weights for facet selection
// only through purity; star must come from fn's fan.
PLFunction induced_function(const PLFunction& fn, const StarData& star);

}  // namespace tropfan
