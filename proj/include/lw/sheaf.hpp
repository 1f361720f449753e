#pragma once

#include <vector>

#include "lw/conewise_ring.hpp"
#include "lw/fan.hpp"

namespace lw {

// The minimal extension sheaf realized inside conewise polynomials on a
// simplicial refinement.  All vectors are coefficient vectors in the
// ring's monomial basis of the relevant degree.
struct SheafModel {
    struct Stalk {
        int cone = -1;
        bool simplicial = true;
        std::vector<ConewiseRing::Section> generators;
        // Non-simplicial cones only, per degree: monomials of the refined
        // cone and a basis of the annihilator of the stalk among them.
        std::vector<std::vector<std::size_t>> local;
        std::vector<std::vector<Vec>> annihilator;
        std::vector<std::size_t> stalk_dim;
        std::vector<std::size_t> boundary_dim;          // dim of sections over the boundary
        std::vector<std::size_t> boundary_reduced_dim;  // dim of the reduction mod m
    };

    int dim = 0;
    std::vector<Stalk> stalks;  // indexed by cone id

    // Generator degrees of a stalk, sorted.
    std::vector<int> generator_degrees(int cone) const;
};

SheafModel build_sheaf(const Fan& fan, const ConewiseRing& ring);

// Sections over a subfan in degree d, as a basis of coefficient vectors
// restricted to the subfan's monomials.
std::vector<Vec> sections_over(const SheafModel& sheaf, const Fan& fan, const ConewiseRing& ring,
                               const Subfan& sub, int d);

struct GradedSections {
    std::vector<std::vector<Vec>> sections;  // basis of E^d
    std::vector<std::vector<Vec>> m_part;    // basis of (m E)^d
    std::vector<std::vector<Vec>> lifts;     // lifts of a basis of E^d / (m E)^d
};

// Sections over the subfan together with the reduction mod m.
GradedSections reduced_sections(const SheafModel& sheaf, const Fan& fan, const ConewiseRing& ring,
                                const Subfan& sub);

// True when the ray set lies in some cone of the subfan.
bool supported_in(const Fan& fan, const Subfan& sub, Mask support);

}  // namespace lw
