#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lw/matrix.hpp"

namespace lw {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
std::vector<int> mask_to_list(Mask m);
Mask list_to_mask(const std::vector<int>& l);

// {x : <normal, x> <= offset}
struct Halfspace {
    Vec normal;
    Rat offset;

    Rat eval(std::span<const Rat> x) const { return dot(normal, x) - offset; }
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

struct Face {
    std::vector<int> vertices;  // sorted atom indices
    Mask mask = 0;
    int dim = -1;
};

// Graded lattice of faces.  Faces are sorted by (dim, vertex list), so the
// empty face has id 0 and the whole polytope has the last id.  The same type
// is used for intervals [F, P], whose atoms are the faces covering F.
class FaceLattice {
public:
    FaceLattice() = default;
    FaceLattice(int dim, int num_atoms, std::vector<Face> faces);

    int dim() const { return dim_; }
    int num_atoms() const { return num_atoms_; }
    std::size_t size() const { return faces_.size(); }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int id) const { return faces_[id]; }
    int empty_id() const { return 0; }
    int top_id() const { return static_cast<int>(faces_.size()) - 1; }

    std::optional<int> find(Mask m) const;
    const std::vector<int>& up(int id) const { return up_[id]; }      // faces covering id
    const std::vector<int>& down(int id) const { return down_[id]; }  // faces covered by id
    std::vector<int> faces_of_dim(int d) const;
    std::vector<int> facets() const { return faces_of_dim(dim_ - 1); }
    std::vector<int> edges_at(int atom) const;
    bool leq(int a, int b) const { return subset_of(faces_[a].mask, faces_[b].mask); }

    // f_0 .. f_{dim-1}
    std::vector<std::size_t> f_vector() const;

    // Interval [id, top] as a lattice whose atoms are the faces covering id.
    // Element j of the result corresponds to face `map[j]` of this lattice.
    FaceLattice interval_above(int id, std::vector<int>* map = nullptr) const;
    // Interval [empty, id]: the face lattice of the face itself, with atoms
    // renumbered 0..k-1 in increasing order.
    FaceLattice interval_below(int id, std::vector<int>* map = nullptr) const;

private:
    int dim_ = -1;
    int num_atoms_ = 0;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> up_, down_;
};

// Affine chart of aff(P): x = origin + sum_i y_i basis[i].
struct AffineChart {
    Vec origin;
    std::vector<Vec> basis;
    BasisCoordinates coords;
    bool identity = false;

    Vec to_intrinsic(std::span<const Rat> x) const;
    Vec to_ambient(std::span<const Rat> y) const;
};

class Polytope {
public:
    Polytope() = default;
    // Deduplicates the points and rejects any point that is not a vertex of
    // their convex hull.
    Polytope(int ambient_dim, std::vector<Vec> points);

    int ambient_dim() const { return n_; }
    int dim() const;
    std::size_t num_vertices() const { return vertices_.size(); }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const Vec& vertex(std::size_t i) const { return vertices_[i]; }

    const AffineChart& chart() const;
    // Vertex coordinates in the chart; full-dimensional there.
    const std::vector<Vec>& intrinsic_vertices() const;
    // Facets in intrinsic coordinates with primitive integer normals.
    const std::vector<Halfspace>& intrinsic_facets() const;
    // Facet-defining halfspaces in ambient coordinates; for lower-dimensional
    // P these only describe P inside aff(P).
    std::vector<Halfspace> ambient_facets() const;
    // Vertex set of each facet, aligned with intrinsic_facets().
    const std::vector<Mask>& facet_masks() const;
    const FaceLattice& lattice() const;

    bool full_dimensional() const { return dim() == n_; }
    // Same vertex order, intrinsic coordinates.
    Polytope intrinsic() const;
    Polytope face_polytope(int face_id) const;
    Vec barycenter(const std::vector<int>& verts) const;

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.n_ == b.n_ && a.vertices_ == b.vertices_;
    }

private:
    struct Geometry;
    int n_ = 0;
    std::vector<Vec> vertices_;
    std::shared_ptr<const Geometry> geo_;
};

std::vector<Halfspace> facets_from_vertices(const Polytope& p);
const FaceLattice& face_lattice(const Polytope& p);
bool is_simple(const FaceLattice& lat);
inline bool is_simple(const Polytope& p) { return is_simple(p.lattice()); }

// Face map a -> b preserving inclusion and dimension, if one exists.
std::optional<std::vector<int>> combinatorially_equivalent(const FaceLattice& a, const FaceLattice& b);

// dim! * volume in the intrinsic chart.
Rat normalized_volume(const Polytope& p);

// Affine dimension of a point set.
int affine_dim(const std::vector<Vec>& pts);

// Pulling triangulation of face `id` of `lat`, pulling at the lowest atom
// first.  Each simplex is an atom mask.
std::vector<Mask> pulling_triangulation(const FaceLattice& lat, int id);

}  // namespace lw
