#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lw/polytope.hpp"

namespace lw {

// Constructions that cut or glue polytopes.  Operations taking a face id
// expect a full-dimensional polytope; use Polytope::intrinsic() first.

Polytope join(const Polytope& q1, const Polytope& q2, bool auto_position = false);
// Apex one unit above the vertex barycenter along a fresh coordinate.
Polytope pyramid(const Polytope& base);
Polytope product(const Polytope& p1, const Polytope& p2);

struct CutResult {
    Polytope piece1;     // <normal, x> <= offset
    Polytope piece2;     // <normal, x> >= offset
    Polytope cut_facet;  // piece1 and piece2 intersect here
    Halfspace hyperplane;
    // Per cut-facet vertex: the crossed edge as (vertex below, vertex above).
    std::vector<std::pair<int, int>> crossed_edges;
    // Vertex origins of the pieces: P-vertex index, or -1-k for cut vertex k.
    std::vector<int> origin1, origin2;
};

// Halfspace {<a, x> <= c} with F strictly outside and every other vertex
// strictly inside; a is the sum of the facet normals through F.
Halfspace nearby_cut_hyperplane(const Polytope& p, int face);
CutResult transversal_cut(const Polytope& p, const Halfspace& h);

// Cross-section of P near F inside the orthogonal complement of F through
// its vertex barycenter.  Ambient coordinates of P.
Polytope link_polytope(const Polytope& p, int face);

struct GermLink {
    int face = -1;
    Polytope germ;
    Polytope residual;
    Polytope link;
    CutResult cut;
};
GermLink germ_link_residual(const Polytope& p, int face);

bool is_stout(const FaceLattice& lat);
inline bool is_stout(const Polytope& p) { return is_stout(p.lattice()); }

struct StoutFactorization {
    int base = -1;  // face id of the maximal stout face, -1 for the empty face
    int codim = 0;
    std::optional<int> complement;  // face spanned by the vertices off the base
    bool simplex_convention = false;
};
StoutFactorization stout_factorization(const FaceLattice& lat);

struct StoutReport {
    std::vector<int> normally_stout_faces;
    int defect = 0;
    std::optional<int> minimal_ns_face;
};
StoutReport normally_stout_report(const FaceLattice& lat);
inline StoutReport normally_stout_report(const Polytope& p) { return normally_stout_report(p.lattice()); }

struct NormalTriviality {
    bool trivial = false;
    // (vertex of F, face S_a of P through that vertex) for each vertex checked
    std::vector<std::pair<int, int>> witnesses;
};
NormalTriviality is_normally_trivial(const FaceLattice& lat, int face);

// Smallest face of the lattice whose atom set contains m.
int smallest_face_containing(const FaceLattice& lat, Mask m);

struct CutoffStep {
    std::vector<int> face;  // vertex indices in the polytope being cut
    int mu_before = 0;
    int mu_after = 0;
    Polytope residual;
};
std::vector<CutoffStep> cutoff_pipeline(const Polytope& p);

// The family interpolating the germ (t = 1) and F x Pi(L) (t = 0).
class Deformation {
public:
    Deformation(const Polytope& p, int face);
    Polytope at(const Rat& t) const;
    const GermLink& germ_link() const { return gl_; }

private:
    GermLink gl_;
    std::vector<Vec> face_vertices_;
    struct CutVertex {
        Vec base;  // vertex of F the edge starts from
        Vec dir_u; // component of the edge vector along aff(F)
        Vec dir_n; // orthogonal component
        Vec avg_n; // mean orthogonal component over the same covering face
    };
    std::vector<CutVertex> cut_;
};

Polytope deformation_family(const Polytope& p, int face, const Rat& t);

}  // namespace lw
