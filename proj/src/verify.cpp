#include "lw/verify.hpp"

#include "lw/error.hpp"

namespace lw {

namespace {

std::size_t at(const std::vector<std::size_t>& b, int q) {
    return q < 0 || q >= static_cast<int>(b.size()) ? 0 : b[q];
}

bool hlt_ok(const CihModel& m) { return verify_hlt(m).ok; }

bool hrr_ok(const CihModel& m) { return hlt_ok(m) && verify_hrr(m).ok(); }

// Facets of p missing exactly one vertex.
std::vector<int> pyramid_bases(const FaceLattice& lat) {
    std::vector<int> out;
    for (int f : lat.facets())
        if (popcount(lat.face(f).mask) + 1 == lat.num_atoms()) out.push_back(f);
    return out;
}

}  // namespace

std::vector<Signature> hr_signatures(const CihModel& m) {
    std::vector<Signature> out;
    for (int k = m.n() % 2; k <= m.n(); k += 2) out.push_back(hr_form(m, k).signature);
    return out;
}

std::vector<std::size_t> betti_of(const Polytope& p) { return CihModel(p).betti(); }

PyramidReport verify_pyramid_relations(const Polytope& p, std::optional<int> base_facet) {
    const auto& lat = p.lattice();
    auto bases = pyramid_bases(lat);
    PyramidReport r;
    if (base_facet) {
        bool found = false;
        for (int f : bases) found = found || f == *base_facet;
        if (!found) fail(ErrorKind::Precondition, "base is not a facet missing exactly one vertex");
        r.base_facet = *base_facet;
    } else {
        if (bases.empty()) fail(ErrorKind::Precondition, "polytope is not a pyramid");
        r.base_facet = bases.front();
    }
    Mask off = ~lat.face(r.base_facet).mask & ((lat.num_atoms() == 64 ? ~Mask{0} : (Mask{1} << lat.num_atoms()) - 1));
    r.apex = mask_to_list(off).front();

    CihModel mp(p);
    CihModel mq(p.face_polytope(r.base_facet));
    r.betti_pyramid = mp.betti();
    r.betti_base = mq.betti();
    int n = mp.n();
    r.betti_ok = true;
    for (int q = 0; q <= 2 * n; ++q) {
        std::size_t expect = q <= n ? at(r.betti_base, q) : at(r.betti_base, q - 2);
        if (q == n) r.betti_ok = r.betti_ok && at(r.betti_base, q) == at(r.betti_base, q - 2);
        if (at(r.betti_pyramid, q) != expect) r.betti_ok = false;
    }
    r.top_primitive_zero = n % 2 != 0 || hr_form(mp, 0).primitive.empty();
    r.hrr_base = hrr_ok(mq);
    r.hrr_pyramid = hrr_ok(mp);
    return r;
}

KunnethReport verify_kunneth(const Polytope& s, const Polytope& p0) {
    if (!is_simple(s)) fail(ErrorKind::Precondition, "first factor is not simple");
    KunnethReport r;
    CihModel ms(s), m0(p0), mp(product(s, p0));
    r.betti_simple = ms.betti();
    r.betti_other = m0.betti();
    r.betti_product = mp.betti();
    r.convolution.assign(r.betti_product.size(), 0);
    for (std::size_t a = 0; a < r.betti_simple.size(); ++a)
        for (std::size_t b = 0; b < r.betti_other.size(); ++b)
            if (a + b < r.convolution.size()) r.convolution[a + b] += r.betti_simple[a] * r.betti_other[b];
    r.convolution_ok = r.convolution == r.betti_product;
    r.hr_equation = hlt_ok(mp) && verify_hrr(mp).equation;

    HRModule ws = from_engine(ms), w0 = from_engine(m0), wp = from_engine(mp);
    HRModule wt = tensor(ws, w0);
    r.modules_hr = is_hr_module(ws) && is_hr_module(w0) && is_hr_module(wt) && is_hr_module(wp);
    if (r.modules_hr) {
        r.tensor_tag = decompose(wt);
        r.product_tag = decompose(wp);
        r.module_ok = r.tensor_tag == r.product_tag;
    }
    return r;
}

GluingReport gluing_report(const CihModel& mp, const CutResult& cut) {
    GluingReport r;
    CihModel m1(cut.piece1), m2(cut.piece2), mf(cut.cut_facet);
    r.betti_p = mp.betti();
    r.betti_piece1 = m1.betti();
    r.betti_piece2 = m2.betti();
    r.betti_facet = mf.betti();
    r.identity = true;
    for (int q = 0; q < static_cast<int>(r.betti_p.size()); ++q) {
        long l = static_cast<long>(at(r.betti_piece1, q) + at(r.betti_piece2, q));
        long rr = static_cast<long>(at(r.betti_p, q) + at(r.betti_facet, q) + at(r.betti_facet, q - 2));
        r.lhs.push_back(l);
        r.rhs.push_back(rr);
        if (l != rr) r.identity = false;
    }
    r.hrr_p = hrr_ok(mp);
    r.hrr_piece1 = hrr_ok(m1);
    r.hrr_piece2 = hrr_ok(m2);
    r.hrr_facet = hrr_ok(mf);
    return r;
}

GluingReport verify_gluing_betti(const Polytope& p, const Halfspace& h) {
    CutResult cut = transversal_cut(p, h);
    return gluing_report(CihModel(p), cut);
}

DeformationReport verify_deformation(const Polytope& p, int face, const std::vector<Rat>& samples) {
    if (samples.empty()) fail(ErrorKind::Precondition, "no deformation samples");
    for (const auto& t : samples)
        if (t < Rat(0) || t > Rat(1)) fail(ErrorKind::Precondition, "deformation parameter must lie in [0,1]");
    Deformation def(p, face);
    const auto& lat = p.lattice();
    DeformationReport r;
    r.face = face;
    r.face_dim = lat.face(face).dim;
    const GermLink& gl = def.germ_link();
    if (r.face_dim == 0) r.pyramid = verify_pyramid_relations(gl.germ);

    Polytope fp = p.face_polytope(face).intrinsic();
    Polytope model = product(fp, pyramid(gl.link.intrinsic()));

    std::optional<Polytope> reference;  // first sample with t > 0
    r.type_constant = true;
    r.product_at_zero = true;
    r.hlt_positive = true;
    for (const auto& t : samples) {
        Polytope q = def.at(t);
        CihModel m(q);
        DeformationReport::Sample s;
        s.t = t;
        s.f_vector = q.lattice().f_vector();
        s.betti = m.betti();
        s.signatures = hr_signatures(m);
        s.hlt = hlt_ok(m);
        if (t.is_zero()) {
            if (!combinatorially_equivalent(q.lattice(), model.lattice())) r.product_at_zero = false;
        } else {
            if (!s.hlt) r.hlt_positive = false;
            if (!reference) reference = q;
            else if (!combinatorially_equivalent(q.lattice(), reference->lattice())) r.type_constant = false;
        }
        r.samples.push_back(std::move(s));
    }
    r.betti_constant = true;
    r.signatures_constant = true;
    for (const auto& s : r.samples) {
        if (s.betti != r.samples.front().betti) r.betti_constant = false;
        if (s.signatures != r.samples.front().signatures) r.signatures_constant = false;
    }

    // Facets of the germ not containing F.
    const auto& glat = gl.germ.lattice();
    Mask fmask = 0;
    for (std::size_t i = 0; i < gl.cut.origin2.size(); ++i) {
        int o = gl.cut.origin2[i];
        if (o >= 0 && (lat.face(face).mask >> o & 1)) fmask |= Mask{1} << i;
    }
    r.germ_facets_trivial = true;
    for (int f : glat.facets())
        if (!subset_of(fmask, glat.face(f).mask) && !is_normally_trivial(glat, f).trivial) r.germ_facets_trivial = false;
    return r;
}

}  // namespace lw
