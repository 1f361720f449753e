#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lw/matrix.hpp"

namespace lw {

class CihModel;

// A graded R[L]-module W = sum_{k=-m}^{m} W^k with a symmetric pairing of
// total degree 0.  The pairing takes values in i^k R on W^{-k} x W^k, so it
// is stored by its real part: <x, y> = i^k x^T G_k y for x in W^{-k},
// y in W^k.  L has degree 2.
struct HRModule {
    int m = 0;
    std::vector<std::size_t> dims;  // dims[k + m]
    std::vector<Mat> pairing;       // pairing[k + m] is dim W^{-k} x dim W^k
    std::vector<Mat> lefschetz;     // lefschetz[k + m]: W^k -> W^{k+2}, k <= m - 2

    std::size_t dim(int k) const { return k < -m || k > m ? 0 : dims[k + m]; }
    const Mat& G(int k) const { return pairing.at(k + m); }
    // L: W^k -> W^{k+2}; a zero map into or out of trivial components.
    Mat L(int k) const;
    // L^j from W^k.
    Mat L_power(int k, int j) const;
    std::size_t total_dim() const;
};

using SimpleTag = std::map<int, std::size_t>;

HRModule simple_module(int m);

// Throws InvalidInput when the structural invariants fail: shapes, parity,
// symmetry, nondegeneracy, self-adjointness of L.
void validate(const HRModule& w);

struct HRModuleReport {
    struct Entry {
        int k = 0;
        std::size_t primitive_dim = 0;
        Signature signature;  // of i^k s_k on P(W^{-k})
        bool positive = false;
    };
    std::vector<Entry> entries;
    bool ok = true;
};
HRModuleReport check_hr_module(const HRModule& w);
bool is_hr_module(const HRModule& w);

// mult(m) = dim P(W^{-m}); throws Precondition for non-HR input.
SimpleTag decompose(const HRModule& w);
// dim W^k predicted by a decomposition.
std::size_t tag_dim(const SimpleTag& t, int k);

HRModule direct_sum(const HRModule& a, const HRModule& b);
HRModule tensor(const HRModule& a, const HRModule& b);

// A graded subspace of an HR-module, given by a spanning set per weight.
struct Submodule {
    const HRModule* ambient = nullptr;
    std::map<int, std::vector<Vec>> span;
};
// The L-submodule generated by v in W^k.
Submodule generated_submodule(const HRModule& w, int k, const Vec& v);
Submodule full_submodule(const HRModule& w);
// dim U^{-k} == dim U^k for all k; Precondition error if U is not L-closed.
bool numerical_pd(const Submodule& u);

// W(P): W^k = IH^{n+k}, the intersection form times (-i)^n, L = Lefschetz.
HRModule from_engine(const CihModel& m);

}  // namespace lw
