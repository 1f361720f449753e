#pragma once

#include <optional>
#include <vector>

#include "lw/cohomology.hpp"
#include "lw/hr_module.hpp"
#include "lw/polytope.hpp"
#include "lw/surgery.hpp"

namespace lw {

// Full signatures of s_k, in increasing k.
std::vector<Signature> hr_signatures(const CihModel& m);

// Betti numbers of a polytope, computed by the engine.
std::vector<std::size_t> betti_of(const Polytope& p);

// Pairs (q, ok) are indexed by cohomological degree throughout.

struct PyramidReport {
    int base_facet = -1;
    int apex = -1;
    std::vector<std::size_t> betti_pyramid, betti_base;
    bool betti_ok = false;
    bool top_primitive_zero = false;  // IP^n = 0
    bool hrr_base = false, hrr_pyramid = false;
    bool ok() const { return betti_ok && top_primitive_zero && (!hrr_base || hrr_pyramid); }
};
// p must be a pyramid over one of its facets.  If `base_facet` is given it
// must be that facet.
PyramidReport verify_pyramid_relations(const Polytope& p, std::optional<int> base_facet = std::nullopt);

struct KunnethReport {
    std::vector<std::size_t> betti_simple, betti_other, betti_product, convolution;
    bool convolution_ok = false;
    bool hr_equation = false;
    bool modules_hr = false;
    SimpleTag tensor_tag, product_tag;
    bool module_ok = false;
    bool ok() const { return convolution_ok && hr_equation && module_ok; }
};
KunnethReport verify_kunneth(const Polytope& simple, const Polytope& other);

struct GluingReport {
    std::vector<std::size_t> betti_p, betti_piece1, betti_piece2, betti_facet;
    std::vector<long> lhs, rhs;  // per degree q: b(P1)+b(P2), b(P)+b(F)+b_{q-2}(F)
    bool identity = false;
    bool hrr_p = false, hrr_piece1 = false, hrr_piece2 = false, hrr_facet = false;
    bool ok() const { return identity && hrr_p && hrr_piece1 && hrr_piece2 && hrr_facet; }
};
GluingReport verify_gluing_betti(const Polytope& p, const Halfspace& h);
// Cut pieces already computed.
GluingReport gluing_report(const CihModel& p, const CutResult& cut);

struct DeformationReport {
    struct Sample {
        Rat t;
        std::vector<std::size_t> f_vector;
        std::vector<std::size_t> betti;
        std::vector<Signature> signatures;
        bool hlt = false;
    };
    int face = -1;
    int face_dim = 0;
    std::vector<Sample> samples;
    bool type_constant = false;   // on the samples with t > 0
    bool product_at_zero = false; // Q_0 ~ F x Pi(L); vacuous without a t = 0 sample
    bool betti_constant = false;
    bool signatures_constant = false;
    bool hlt_positive = false;    // HLT at every t > 0
    bool germ_facets_trivial = false;
    std::optional<PyramidReport> pyramid;  // vertex faces: the germ is a pyramid
    bool ok() const {
        return type_constant && product_at_zero && betti_constant && signatures_constant && hlt_positive &&
               germ_facets_trivial && (!pyramid || pyramid->ok());
    }
};
DeformationReport verify_deformation(const Polytope& p, int face, const std::vector<Rat>& samples);

}  // namespace lw
