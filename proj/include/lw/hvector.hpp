#pragma once

#include <vector>

#include "lw/polytope.hpp"

namespace lw {

struct HVec {
    std::vector<long long> h;  // h_0 .. h_d
    std::vector<long long> g;  // g_0 .. g_{floor(d/2)}
    friend bool operator==(const HVec&, const HVec&) = default;
};

// Sum over z in [x, y] of (-1)^dim z vanishes for every x < y.
bool is_eulerian(const FaceLattice& lat);

// Toric h-vector of the normal fan of P, i.e. Stanley's recursion run on the
// dual of the face lattice, so that h_i matches the IH Betti number b_{2i}.
// Throws InvalidInput for non-Eulerian lattices.
HVec toric_h(const FaceLattice& lat);

struct HPropertyReport {
    bool symmetric = false;
    bool nonnegative = false;
    bool unimodal = false;
    bool ok() const { return symmetric && nonnegative && unimodal; }
};
HPropertyReport check_h_properties(const HVec& h);

}  // namespace lw
