#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "lw/polytope.hpp"

namespace lw {

struct Cone {
    Mask rays = 0;
    int dim = 0;
    int face = -1;  // generating face of P, when built from a polytope
};

// A fan in an n-dimensional space; cones are identified by their ray sets.
class Fan {
public:
    Fan() = default;
    Fan(int dim, std::vector<Vec> rays, std::vector<Cone> cones);

    int dim() const { return dim_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Cone>& cones() const { return cones_; }
    const Cone& cone(int id) const { return cones_[id]; }
    std::size_t size() const { return cones_.size(); }

    std::optional<int> find(Mask rays) const;
    bool is_face(int tau, int sigma) const { return subset_of(cones_[tau].rays, cones_[sigma].rays); }
    std::vector<int> max_cones() const;
    std::vector<int> facets_of(int sigma) const;
    std::vector<int> faces_of(int sigma) const;
    bool cone_simplicial(int id) const { return popcount(cones_[id].rays) == cones_[id].dim; }

private:
    int dim_ = 0;
    std::vector<Vec> rays_;
    std::vector<Cone> cones_;
};

// Sorted cone ids, closed under taking faces.
using Subfan = std::vector<int>;

Subfan closure(const Fan& fan, const std::vector<int>& generators);
Subfan affine_fan(const Fan& fan, int cone);
Subfan star(const Fan& fan, int cone);
Subfan boundary_subfan(const Fan& fan, const Subfan& sub);
Subfan complementary_subfan(const Fan& fan, const Subfan& sub);

bool is_simplicial(const Fan& fan);

struct NormalFan {
    Fan fan;
    std::vector<int> cone_of_face;  // face id -> cone id (-1 for the empty face)
    std::vector<Vec> psi;           // per cone id; set on maximal cones
    Vec psi_on_rays;                // psi(r_j) = facet offset
    int zero_cone = -1;
};

// Outer normal fan of P in the dual of its intrinsic chart, with rays the
// primitive facet normals and psi_i = v_i.  Strict convexity is validated.
NormalFan outer_normal_fan(const Polytope& p);

enum class PullOrder { LowestFirst, HighestFirst };

struct Refinement {
    std::vector<Mask> max_cones;  // simplicial n-cones
    std::unordered_set<Mask> cones;
    std::vector<Mat> inverse;     // R_tau^{-1}, columns of R_tau = rays of tau
    std::vector<Rat> abs_det;     // |det R_tau|

    bool contains(Mask m) const { return cones.count(m) > 0; }
};

// Pulling triangulation at existing rays; non-simplicial cones pull at their
// lowest (or highest) ray, recursing into the opposite facets.
Refinement simplicial_refinement(const Fan& fan, PullOrder order = PullOrder::LowestFirst);

// Smallest cone of `fan` containing the rays in m.
int carrier(const Fan& fan, Mask m);

// Generic probe points p_j = (1, j, j^2, ...), j = 1, 2, ...
Vec generic_point(int dim, long j);

// True when each of the first `samples` generic points lies in the interior
// of exactly one maximal cone of the refinement.
bool refinement_covers(const Fan& fan, const Refinement& r, int samples = 4);

}  // namespace lw
