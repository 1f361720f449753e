#include "lw/sheaf.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "lw/error.hpp"

namespace lw {

namespace {

std::size_t monomial_count(int degree, int vars) {
    if (degree < 0) return 0;
    if (vars == 0) return degree == 0 ? 1 : 0;
    // C(degree + vars - 1, vars - 1)
    std::size_t r = 1;
    for (int i = 1; i < vars; ++i) r = r * (degree + i) / i;
    return r;
}

std::vector<Vec> coordinate_values(const ConewiseRing& ring) {
    std::vector<Vec> xs(ring.dim(), Vec(ring.num_rays()));
    for (int k = 0; k < ring.dim(); ++k)
        for (std::size_t j = 0; j < ring.num_rays(); ++j) xs[k][j] = ring.rays()[j][k];
    return xs;
}

// Maps into a sub-list of monomial indices.
struct LocalIndex {
    std::vector<std::size_t> idx;
    std::unordered_map<std::size_t, std::size_t> pos;

    explicit LocalIndex(std::vector<std::size_t> i) : idx(std::move(i)) {
        for (std::size_t k = 0; k < idx.size(); ++k) pos.emplace(idx[k], k);
    }
    Vec gather(const Vec& global) const {
        Vec v(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) v[k] = global[idx[k]];
        return v;
    }
    Vec scatter(const Vec& local, std::size_t n) const {
        Vec v(n);
        for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = local[k];
        return v;
    }
};

std::vector<int> maximal_in(const Fan& fan, const Subfan& sub) {
    std::vector<int> out;
    for (int s : sub) {
        bool is_max = true;
        for (int t : sub)
            if (t != s && fan.is_face(s, t)) is_max = false;
        if (is_max) out.push_back(s);
    }
    return out;
}

// Rows of the annihilator of `stalk` (degree d) moved into the coordinates of `into`.
void append_constraints(const SheafModel::Stalk& stalk, int d, const LocalIndex& into, std::vector<Vec>& rows) {
    const auto& local = stalk.local[d];
    for (const auto& a : stalk.annihilator[d]) {
        Vec r(into.idx.size());
        for (std::size_t k = 0; k < local.size(); ++k) {
            if (a[k].is_zero()) continue;
            auto it = into.pos.find(local[k]);
            if (it == into.pos.end()) fail(ErrorKind::Internal, "stalk monomial outside the target region");
            r[it->second] = a[k];
        }
        rows.push_back(std::move(r));
    }
}

std::vector<Vec> kernel_in(const std::vector<Vec>& rows, std::size_t cols) {
    if (rows.empty()) {
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < cols; ++i) {
            Vec u(cols);
            u[i] = 1;
            basis.push_back(std::move(u));
        }
        return basis;
    }
    return kernel_basis(Mat::from_rows(rows, cols));
}

}  // namespace

std::vector<int> SheafModel::generator_degrees(int cone) const {
    std::vector<int> d;
    for (const auto& g : stalks[cone].generators) d.push_back(g.deg);
    std::sort(d.begin(), d.end());
    return d;
}

bool supported_in(const Fan& fan, const Subfan& sub, Mask support) {
    for (int c : sub)
        if (subset_of(support, fan.cone(c).rays)) return true;
    return false;
}

SheafModel build_sheaf(const Fan& fan, const ConewiseRing& ring) {
    SheafModel model;
    model.dim = fan.dim();
    int top = ring.max_degree();
    auto xs = coordinate_values(ring);
    model.stalks.resize(fan.size());

    std::vector<int> order(fan.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fan.cone(a).dim < fan.cone(b).dim; });

    for (int s : order) {
        auto& st = model.stalks[s];
        st.cone = s;
        st.simplicial = fan.cone_simplicial(s);
        int ds = fan.cone(s).dim;
        if (st.simplicial) {
            st.generators.push_back(ring.one());
            for (int d = 0; d <= top; ++d) st.stalk_dim.push_back(monomial_count(d, ds));
            continue;
        }
        auto facets = fan.facets_of(s);
        Mask sigma = fan.cone(s).rays;
        st.local.resize(top + 1);
        st.annihilator.resize(top + 1);

        std::vector<Vec> prev_boundary;  // basis of boundary sections in degree d-1, global coords
        std::vector<Vec> prev_stalk;     // basis of the stalk in degree d-1, global coords
        for (int d = 0; d <= top; ++d) {
            std::size_t nd = ring.size(d);
            std::vector<std::size_t> bidx;
            for (std::size_t i = 0; i < nd; ++i)
                for (int f : facets)
                    if (subset_of(ring.support(d, i), fan.cone(f).rays)) {
                        bidx.push_back(i);
                        break;
                    }
            LocalIndex bd(bidx);
            auto in_boundary = [&](Mask m) {
                for (int f : facets)
                    if (subset_of(m, fan.cone(f).rays)) return true;
                return false;
            };

            // Sections over the boundary: compatible with every facet stalk.
            std::vector<Vec> rows;
            for (int f : facets)
                if (!model.stalks[f].simplicial) append_constraints(model.stalks[f], d, bd, rows);
            std::vector<Vec> boundary;
            for (auto& v : kernel_in(rows, bidx.size())) boundary.push_back(bd.scatter(v, nd));
            st.boundary_dim.push_back(boundary.size());

            // m times boundary sections of degree d-1, restricted to the boundary.
            Echelon ech(bidx.size());
            for (const auto& e : prev_boundary)
                for (const auto& x : xs) {
                    Vec prod = ring.multiply_linear(d - 1, e, x);
                    for (std::size_t i = 0; i < nd; ++i)
                        if (!in_boundary(ring.support(d, i))) prod[i] = 0;
                    ech.add(bd.gather(prod));
                }
            std::vector<Vec> lifts;
            for (const auto& b : boundary)
                if (ech.add(bd.gather(b))) lifts.push_back(b);
            st.boundary_reduced_dim.push_back(lifts.size());
            for (const auto& l : lifts) st.generators.push_back({d, l});

            // Stalk in degree d: new generators plus m times the degree d-1 stalk.
            auto sidx = ring.indices_within(d, sigma);
            LocalIndex sl(sidx);
            Echelon se(sidx.size());
            std::vector<Vec> stalk;
            auto take = [&](const Vec& g) {
                if (se.add(sl.gather(g))) stalk.push_back(g);
            };
            for (const auto& l : lifts) take(l);
            for (const auto& e : prev_stalk)
                for (const auto& x : xs) {
                    Vec prod = ring.multiply_linear(d - 1, e, x);
                    for (std::size_t i = 0; i < nd; ++i)
                        if (!subset_of(ring.support(d, i), sigma)) prod[i] = 0;
                    take(prod);
                }
            std::size_t expected = 0;
            for (const auto& g : st.generators) expected += monomial_count(d - g.deg, ds);
            if (stalk.size() != expected)
                fail(ErrorKind::Internal, "stalk is not free over the generators (cone " + std::to_string(s) + ")");
            st.stalk_dim.push_back(stalk.size());

            // Restriction of the stalk to the boundary lies in the boundary sections.
            {
                Echelon check(bidx.size());
                for (const auto& b : boundary) check.add(bd.gather(b));
                for (const auto& v : stalk)
                    if (!check.contains(bd.gather(v))) fail(ErrorKind::Internal, "stalk does not restrict into boundary sections");
            }

            std::vector<Vec> local_rows;
            for (const auto& v : stalk) local_rows.push_back(sl.gather(v));
            st.local[d] = sidx;
            st.annihilator[d] = local_rows.empty() ? kernel_in({}, sidx.size())
                                                   : kernel_basis(Mat::from_rows(local_rows, sidx.size()));
            prev_boundary = std::move(boundary);
            prev_stalk = std::move(stalk);
        }
    }
    return model;
}

std::vector<Vec> sections_over(const SheafModel& sheaf, const Fan& fan, const ConewiseRing& ring,
                               const Subfan& sub, int d) {
    auto maxs = maximal_in(fan, sub);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ring.size(d); ++i)
        if (supported_in(fan, maxs, ring.support(d, i))) idx.push_back(i);
    LocalIndex li(idx);
    std::vector<Vec> rows;
    for (int s : maxs)
        if (!sheaf.stalks[s].simplicial) append_constraints(sheaf.stalks[s], d, li, rows);
    std::vector<Vec> out;
    for (auto& v : kernel_in(rows, idx.size())) out.push_back(li.scatter(v, ring.size(d)));
    return out;
}

GradedSections reduced_sections(const SheafModel& sheaf, const Fan& fan, const ConewiseRing& ring,
                                const Subfan& sub) {
    auto maxs = maximal_in(fan, sub);
    auto xs = coordinate_values(ring);
    GradedSections g;
    int top = ring.max_degree();
    for (int d = 0; d <= top; ++d) {
        auto e = sections_over(sheaf, fan, ring, sub, d);
        std::size_t nd = ring.size(d);
        Echelon ech(nd);
        std::vector<Vec> m;
        if (d > 0)
            for (const auto& v : g.sections[d - 1])
                for (const auto& x : xs) {
                    Vec prod = ring.multiply_linear(d - 1, v, x);
                    for (std::size_t i = 0; i < nd; ++i)
                        if (!prod[i].is_zero() && !supported_in(fan, maxs, ring.support(d, i))) prod[i] = 0;
                    if (ech.add(prod)) m.push_back(std::move(prod));
                }
        std::vector<Vec> lifts;
        for (const auto& v : e)
            if (ech.add(v)) lifts.push_back(v);
        g.sections.push_back(std::move(e));
        g.m_part.push_back(std::move(m));
        g.lifts.push_back(std::move(lifts));
    }
    return g;
}

}  // namespace lw
