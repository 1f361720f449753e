#include "lw/cohomology.hpp"

#include <numeric>
#include <string>

#include "lw/error.hpp"

namespace lw {

CihModel::CihModel(const Polytope& p, PullOrder order)
    : poly_(p.full_dimensional() ? p : p.intrinsic()) {
    n_ = poly_.dim();
    nf_ = outer_normal_fan(poly_);
    Refinement ref = simplicial_refinement(nf_.fan, order);
    if (!refinement_covers(nf_.fan, ref)) fail(ErrorKind::Internal, "simplicial refinement does not cover the space");
    ring_ = std::make_shared<ConewiseRing>(n_, nf_.fan.rays(), ref, n_);
    sheaf_ = build_sheaf(nf_.fan, *ring_);
    Subfan all(nf_.fan.size());
    std::iota(all.begin(), all.end(), 0);
    sec_ = reduced_sections(sheaf_, nf_.fan, *ring_, all);
    if (n_ >= 1) psi_ = ring_->linear(nf_.psi_on_rays);

    for (int d = 0; d <= n_; ++d) {
        Echelon e(ring_->size(d));
        for (const auto& v : sec_.m_part[d]) e.add(v);
        std::vector<Vec> reduced;
        for (const auto& l : sec_.lifts[d]) reduced.push_back(e.reduce(l));
        lift_coords_.emplace_back(std::move(reduced), ring_->size(d));
        m_ech_.push_back(std::move(e));
    }
    for (int d = 0; d < n_; ++d) {
        Mat l(b(d + 1), b(d));
        for (std::size_t i = 0; i < b(d); ++i) {
            Vec img = ring_->multiply_linear(d, sec_.lifts[d][i], nf_.psi_on_rays);
            Vec c = ih_coordinates(d + 1, img);
            for (std::size_t r = 0; r < c.size(); ++r) l(r, i) = c[r];
        }
        lefschetz_.push_back(std::move(l));
    }
}

std::vector<std::size_t> CihModel::betti() const {
    std::vector<std::size_t> out(2 * n_ + 1, 0);
    for (int d = 0; d <= n_; ++d) out[2 * d] = b(d);
    return out;
}

Vec CihModel::ih_coordinates(int d, const Vec& section) const {
    auto c = lift_coords_[d].coordinates(m_ech_[d].reduce(section));
    if (!c) fail(ErrorKind::Precondition, "vector is not a global section");
    return *c;
}

Mat CihModel::lefschetz(int d) const {
    if (d < 0 || d >= n_) fail(ErrorKind::Precondition, "Lefschetz degree out of range");
    return lefschetz_[d];
}

Mat CihModel::lefschetz_power(int d, int k) const {
    if (d + k > n_) return Mat(0, b(d));
    Mat m = Mat::identity(b(d));
    for (int j = 0; j < k; ++j) m = lefschetz_[d + j] * m;
    return m;
}

Rat CihModel::pair(const Section& x, const Section& y, int k) const {
    if (x.deg + y.deg + k != n_)
        fail(ErrorKind::Precondition, "pairing degrees do not add up to " + std::to_string(2 * n_));
    Section z = y;
    for (int j = 0; j < k; ++j) z = ring_->multiply_linear(z, nf_.psi_on_rays);
    return ring_->evaluate(ring_->multiply(x, z));
}

std::vector<std::size_t> ih_betti(const CihModel& m) { return m.betti(); }
Rat evaluate(const CihModel& m, const Section& f) { return m.evaluate(f); }
Rat pair(const CihModel& m, const Section& x, const Section& y, int k) { return m.pair(x, y, k); }

Mat lefschetz_matrix(const CihModel& m, int q) {
    if (q % 2 != 0 || q < 0 || q > 2 * m.n() - 2) fail(ErrorKind::Precondition, "Lefschetz source degree out of range");
    return m.lefschetz(q / 2);
}

namespace {

Mat gram_of(const CihModel& m, int k) {
    int d = (m.n() - k) / 2;
    std::size_t b = m.b(d);
    Mat g(b, b);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = i; j < b; ++j) {
            g(i, j) = m.pair(m.lift(d, i), m.lift(d, j), k);
            g(j, i) = g(i, j);
        }
    return g;
}

Rat form(const Mat& g, const Vec& x, const Vec& y) { return dot(x, g * y); }

}  // namespace

HRFormData hr_form(const CihModel& m, int k) {
    if (k < 0 || k > m.n() || (m.n() - k) % 2 != 0) fail(ErrorKind::Precondition, "k must satisfy 0 <= k <= n, k = n mod 2");
    HRFormData h;
    h.k = k;
    int d = (m.n() - k) / 2;
    h.gram = gram_of(m, k);
    h.signature = signature_of(h.gram);
    h.primitive = kernel_basis(m.lefschetz_power(d, k + 1));
    Mat r(h.primitive.size(), h.primitive.size());
    for (std::size_t i = 0; i < h.primitive.size(); ++i)
        for (std::size_t j = 0; j < h.primitive.size(); ++j) r(i, j) = form(h.gram, h.primitive[i], h.primitive[j]);
    h.primitive_signature = signature_of(r);
    return h;
}

Section cone_volume_section(const CihModel& m, std::size_t tau) {
    const auto& ref = m.refinement();
    ConewiseRing::Monomial mono;
    for (int j : mask_to_list(ref.max_cones.at(tau))) mono.push_back(static_cast<std::uint8_t>(j));
    Section s = m.ring().zero(m.n());
    s.coeffs[*m.ring().index(mono)] = ref.abs_det[tau];
    return s;
}

HltReport verify_hlt(const CihModel& m) {
    HltReport rep;
    int n = m.n();
    for (int k = n % 2; k <= n; k += 2) {
        int d = (n - k) / 2;
        Mat lk = m.lefschetz_power(d, k);
        HltReport::Entry e;
        e.k = k;
        e.rows = lk.rows();
        e.cols = lk.cols();
        e.rank = rank(lk);
        e.ok = e.rows == e.cols && e.rank == e.cols;
        rep.ok = rep.ok && e.ok;
        rep.entries.push_back(e);
    }
    return rep;
}

HrrReport verify_hrr(const CihModel& m) {
    HrrReport rep;
    int n = m.n();
    std::vector<HRFormData> forms(n + 3);
    for (int k = n % 2; k <= n; k += 2) forms[k] = hr_form(m, k);
    for (int k = n % 2; k <= n; k += 2) {
        const auto& h = forms[k];
        int d = (n - k) / 2;
        HrrReport::Entry e;
        e.k = k;
        e.full = h.signature;
        e.primitive = h.primitive_signature;
        e.primitive_dim = h.primitive.size();
        e.expected_sign = d % 2 == 0 ? 1 : -1;
        e.definite = e.primitive.zero == 0 &&
                     (e.expected_sign > 0 ? e.primitive.neg == 0 : e.primitive.pos == 0);

        // IH^{n-k} = sum_j L^j IP^{n-k-2j}, orthogonal for s_k.
        std::vector<std::vector<Vec>> blocks;
        for (int j = 0; j <= d; ++j) {
            Mat lj = m.lefschetz_power(d - j, j);
            std::vector<Vec> blk;
            for (const auto& p : forms[k + 2 * j].primitive) blk.push_back(lj * p);
            blocks.push_back(std::move(blk));
        }
        std::vector<Vec> all;
        for (const auto& blk : blocks) all.insert(all.end(), blk.begin(), blk.end());
        std::size_t b = m.b(d);
        bool spans = all.size() == b && (b == 0 || rank(Mat::from_rows(all, b)) == b);
        bool orth = true;
        for (std::size_t i = 0; i < blocks.size() && orth; ++i)
            for (std::size_t j = i + 1; j < blocks.size() && orth; ++j)
                for (const auto& x : blocks[i])
                    for (const auto& y : blocks[j])
                        if (!form(h.gram, x, y).is_zero()) orth = false;
        e.decomposition = spans && orth;

        long next = k + 2 <= n ? forms[k + 2].signature.sign() : 0;
        e.lhs = h.signature.sign();
        e.rhs = next + e.expected_sign * (static_cast<long>(m.b(d)) - static_cast<long>(m.b(d - 1)));
        e.equation = e.lhs == e.rhs;

        rep.definite = rep.definite && e.definite;
        rep.decomposition = rep.decomposition && e.decomposition;
        rep.equation = rep.equation && e.equation;
        rep.nondegenerate = rep.nondegenerate && h.signature.zero == 0;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace lw
