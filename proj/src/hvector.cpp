#include "lw/hvector.hpp"

#include <optional>

#include "lw/error.hpp"

namespace lw {

namespace {

using Poly = std::vector<long long>;

Poly times_x_minus_1_pow(Poly p, int e) {
    for (int s = 0; s < e; ++s) {
        Poly q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i];
        }
        p = std::move(q);
    }
    return p;
}

void add_to(Poly& a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// g from h of a polytope of dimension d: truncated first differences.
Poly g_of(const Poly& h, int d) {
    if (d < 0) return {1};
    Poly g;
    for (int i = 0; i <= d / 2; ++i) {
        long long hi = i < static_cast<int>(h.size()) ? h[i] : 0;
        long long hp = i >= 1 && i - 1 < static_cast<int>(h.size()) ? h[i - 1] : 0;
        g.push_back(hi - hp);
    }
    return g;
}

// The dual of [F, P] is the face lattice of a polytope Q_F of dimension
// dim P - dim F - 1, whose proper faces are the F' in (F, P] with dimension
// dim P - 1 - dim F'.
struct DualRecursion {
    const FaceLattice& lat;
    std::vector<std::optional<Poly>> h_memo;

    const Poly& h(int f) {
        if (h_memo[f]) return *h_memo[f];
        int top = lat.top_id();
        Poly r;
        if (f == top) {
            r = {1};
        } else {
            int df = lat.face(f).dim;
            for (std::size_t j = 0; j < lat.size(); ++j) {
                int fj = static_cast<int>(j);
                if (fj == f || !lat.leq(f, fj)) continue;
                int dj = lat.face(fj).dim;
                Poly gj = g_of(h(fj), lat.dim() - dj - 1);
                add_to(r, times_x_minus_1_pow(gj, dj - df - 1));
            }
        }
        h_memo[f] = std::move(r);
        return *h_memo[f];
    }
};

}  // namespace

bool is_eulerian(const FaceLattice& lat) {
    for (std::size_t x = 0; x < lat.size(); ++x)
        for (std::size_t y = 0; y < lat.size(); ++y) {
            if (x == y || !lat.leq(x, y)) continue;
            long s = 0;
            for (std::size_t z = 0; z < lat.size(); ++z)
                if (lat.leq(x, z) && lat.leq(z, y)) s += (lat.face(z).dim % 2 == 0) ? 1 : -1;
            if (s != 0) return false;
        }
    return true;
}

HVec toric_h(const FaceLattice& lat) {
    if (lat.size() == 0) fail(ErrorKind::InvalidInput, "empty face lattice");
    if (!is_eulerian(lat)) fail(ErrorKind::InvalidInput, "face lattice is not Eulerian");
    DualRecursion rec{lat, std::vector<std::optional<Poly>>(lat.size())};
    int d = lat.dim();
    Poly h = rec.h(lat.empty_id());
    h.resize(std::max(d, 0) + 1, 0);
    HVec out;
    out.h = h;
    out.g = g_of(h, d);
    return out;
}

HPropertyReport check_h_properties(const HVec& v) {
    HPropertyReport r;
    const auto& h = v.h;
    std::size_t d = h.size();
    r.symmetric = true;
    for (std::size_t i = 0; i < d; ++i)
        if (h[i] != h[d - 1 - i]) r.symmetric = false;
    r.nonnegative = true;
    for (auto x : h)
        if (x < 0) r.nonnegative = false;
    r.unimodal = true;
    for (std::size_t i = 1; d > 0 && i <= (d - 1) / 2; ++i)
        if (h[i] < h[i - 1]) r.unimodal = false;
    return r;
}

}  // namespace lw
