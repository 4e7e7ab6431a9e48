#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tropfan/zmat.hpp"

namespace tropfan {

// Facet weights, keyed by cone id. Present on tropical (weighted) fans.
using Orientation = std::map<int, Int>;

struct Cone {
    std::vector<int> rays;  // sorted global ray ids; empty for the zero cone
    int dim = 0;            // rank of the ray matrix
};

struct RawFan {
    int ambient_rank = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> cones;  // ray id sets; the zero cone is implicit
    // Keyed by index into `cones`.
    std::optional<std::map<int, Int>> weights;
};

class Fan;

struct ProductStructure {
    std::shared_ptr<const Fan> left, right;
    // Global ray id = left ray id, or left_ray_count + right ray id.
    int left_ray_count = 0;
};

// Validated rational polyhedral fan. Cones are identified with their sets of
// rays and sorted by (dim, lex ray set), so ids are deterministic; cone 0 is
// the zero cone. The face relation is ray-set inclusion.
class Fan {
public:
    int ambient_rank() const { return ambient_rank_; }
    int dim() const { return dim_; }
    bool pure() const { return pure_; }
    bool simplicial() const { return simplicial_; }

    int ray_count() const { return static_cast<int>(rays_.size()); }
    const IntVec& ray(int i) const { return rays_[i]; }
    ZMat ray_matrix(const std::vector<int>& ray_ids) const;

    int cone_count() const { return static_cast<int>(cones_.size()); }
    const Cone& cone(int id) const { return cones_[id]; }
    int cone_index(const std::vector<int>& sorted_rays) const;  // -1 if absent
    std::vector<int> cones_of_dim(int k) const;
    std::vector<int> facets() const { return cones_of_dim(dim_); }

    bool is_face(int tau, int sigma) const;        // ray-set inclusion
    std::vector<int> cones_above(int tau) const;   // all sigma with tau <= sigma
    std::vector<int> faces_of(int sigma) const;    // all tau <= sigma
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    std::vector<int> covering_cones(int tau) const;
    std::vector<int> covered_cones(int sigma) const;

    // Lattice data of N -> N / sat(N_sigma); cached, safe for concurrent reads.
    const QuotientData& cone_quotient(int cone_id) const;

    const std::optional<Orientation>& weights() const { return weights_; }
    void set_weights(std::optional<Orientation> w);

    const std::optional<ProductStructure>& product_structure() const { return product_; }

    friend struct FanBuilder;

private:
    int ambient_rank_ = 0;
    int dim_ = 0;
    bool pure_ = true;
    bool simplicial_ = true;
    std::vector<IntVec> rays_;
    std::vector<Cone> cones_;
    std::map<std::vector<int>, int> cone_ids_;
    std::vector<std::pair<int, int>> covers_;
    std::optional<Orientation> weights_;
    std::optional<ProductStructure> product_;

    mutable std::mutex quot_mu_;
    mutable std::map<int, QuotientData> quot_cache_;

public:
    Fan() = default;
    Fan(const Fan& o);
    Fan& operator=(const Fan& o);
};

struct ValidationResult {
    Fan fan;
    std::vector<std::string> warnings;
    // Index into RawFan::cones -> validated cone id.
    std::vector<int> input_cone_ids;
};

// Checks rays (primitive, distinct, nonzero), cones (declared faces, strict
// convexity, closure under pairwise intersection; subsets of simplicial cones
// are auto-inserted), then derives dims, covers and flags. Throws InputError.
ValidationResult validate_fan(const RawFan& raw);

struct StarData {
    Fan fan;                      // the star fan, in N^sigma coordinates
    int base_cone = 0;            // sigma
    QuotientData quotient;        // N -> N^sigma
    std::map<int, int> cone_origin;  // star cone id -> base cone id (>= sigma)
    std::vector<int> ray_origin;     // star ray id -> covering cone of sigma
};

// Requires f simplicial, or sigma the zero cone, or recorded product
// structure. Induced weights attach when f carries weights.
StarData star_fan(const Fan& f, int sigma);

Fan product_fan(const Fan& a, const Fan& b);

bool is_unimodular(const Fan& f);

// e_{sigma/tau}: primitive generator of the image of sigma in N^tau, for any
// cover tau < sigma. Returned in N^tau quotient coordinates.
IntVec quotient_ray(const Fan& f, int tau, int sigma);

// n_{sigma/tau}: lattice normal vector in N_sigma, N_tau + Z n = N_sigma,
// pointing to the sigma side. Ambient coordinates.
IntVec lattice_normal(const Fan& f, int tau, int sigma);

}  // namespace tropfan
