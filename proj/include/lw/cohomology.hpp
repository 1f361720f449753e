#pragma once

#include <memory>
#include <vector>

#include "lw/conewise_ring.hpp"
#include "lw/fan.hpp"
#include "lw/polytope.hpp"
#include "lw/sheaf.hpp"

namespace lw {

using Section = ConewiseRing::Section;

struct HRFormData {
    int k = 0;
    Mat gram;                    // s_k on IH^{n-k}
    Signature signature;
    std::vector<Vec> primitive;  // basis of IP^{n-k} in IH coordinates
    Signature primitive_signature;
};

// Intersection cohomology of the normal fan of a polytope, with the
// structures needed for the Hodge-Riemann checks.  Polynomial degree d
// corresponds to cohomological degree 2d.
class CihModel {
public:
    explicit CihModel(const Polytope& p, PullOrder order = PullOrder::LowestFirst);

    int n() const { return n_; }
    const Polytope& polytope() const { return poly_; }
    const NormalFan& normal_fan() const { return nf_; }
    const Refinement& refinement() const { return ring_->refinement(); }
    const ConewiseRing& ring() const { return *ring_; }
    const SheafModel& sheaf() const { return sheaf_; }
    const GradedSections& sections() const { return sec_; }
    const Section& psi() const { return psi_; }

    // b_0 .. b_{2n}, zero in odd degrees.
    std::vector<std::size_t> betti() const;
    std::size_t b(int d) const { return d < 0 || d > n_ ? 0 : sec_.lifts[d].size(); }
    Section lift(int d, std::size_t i) const { return {d, sec_.lifts[d][i]}; }

    // IH coordinates of a global section of degree d.
    Vec ih_coordinates(int d, const Vec& section) const;
    // L: IH^{2d} -> IH^{2d+2}, and its k-th power from degree d.
    Mat lefschetz(int d) const;
    Mat lefschetz_power(int d, int k) const;

    // eps(x * psi^k * y)
    Rat pair(const Section& x, const Section& y, int k) const;
    Rat evaluate(const Section& f) const { return ring_->evaluate(f); }

private:
    int n_;
    Polytope poly_;
    NormalFan nf_;
    std::shared_ptr<ConewiseRing> ring_;
    SheafModel sheaf_;
    GradedSections sec_;
    Section psi_;
    std::vector<Echelon> m_ech_;
    std::vector<BasisCoordinates> lift_coords_;
    std::vector<Mat> lefschetz_;
};

std::vector<std::size_t> ih_betti(const CihModel& m);
Rat evaluate(const CihModel& m, const Section& f);
Rat pair(const CihModel& m, const Section& x, const Section& y, int k);
// q is the cohomological degree.
Mat lefschetz_matrix(const CihModel& m, int q);
HRFormData hr_form(const CihModel& m, int k);

// |det R_tau| t^tau: the top-degree function equal to g_tau on tau and 0 off it.
Section cone_volume_section(const CihModel& m, std::size_t tau);

struct HltReport {
    struct Entry {
        int k = 0;
        std::size_t rows = 0, cols = 0, rank = 0;
        bool ok = false;
    };
    std::vector<Entry> entries;
    bool ok = true;
};
HltReport verify_hlt(const CihModel& m);

struct HrrReport {
    struct Entry {
        int k = 0;
        Signature full;
        Signature primitive;
        std::size_t primitive_dim = 0;
        int expected_sign = 1;
        bool definite = false;
        bool decomposition = false;
        long lhs = 0, rhs = 0;
        bool equation = false;
    };
    std::vector<Entry> entries;
    bool definite = true, decomposition = true, equation = true, nondegenerate = true;
    bool ok() const { return definite && decomposition && equation && nondegenerate; }
};
HrrReport verify_hrr(const CihModel& m);

}  // namespace lw
