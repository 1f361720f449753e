#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "corpus.hpp"
#include "lw/error.hpp"
#include "lw/polytope.hpp"

using namespace lw;
using namespace corpus;

namespace {

// Supporting planes through affinely independent vertex triples of a
// 3-polytope, identified by their vertex sets.
std::set<std::vector<int>> brute_force_facets(const Polytope& p) {
    std::set<std::vector<int>> out;
    const auto& v = p.vertices();
    int n = static_cast<int>(v.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                Vec u(3), w(3);
                for (int k = 0; k < 3; ++k) {
                    u[k] = v[b][k] - v[a][k];
                    w[k] = v[c][k] - v[a][k];
                }
                Vec nrm{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
                if (is_zero(nrm)) continue;
                Rat off = dot(nrm, v[a]);
                int pos = 0, neg = 0;
                std::vector<int> on;
                for (int i = 0; i < n; ++i) {
                    Rat s = dot(nrm, v[i]) - off;
                    if (s > Rat(0)) ++pos;
                    if (s < Rat(0)) ++neg;
                    if (s.is_zero()) on.push_back(i);
                }
                if (pos == 0 || neg == 0) out.insert(on);
            }
    return out;
}

// Face counts from all intersections of facet vertex sets.
std::vector<std::size_t> incidence_f_vector(const Polytope& p, const std::set<std::vector<int>>& facets) {
    std::set<std::vector<int>> faces(facets.begin(), facets.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(faces.begin(), faces.end());
        for (const auto& a : cur)
            for (const auto& f : facets) {
                std::vector<int> x;
                std::set_intersection(a.begin(), a.end(), f.begin(), f.end(), std::back_inserter(x));
                if (!x.empty() && faces.insert(x).second) grew = true;
            }
    }
    std::vector<std::size_t> f(p.dim(), 0);
    for (const auto& fc : faces) {
        std::vector<Vec> pts;
        for (int i : fc) pts.push_back(p.vertex(i));
        ++f[affine_dim(pts)];
    }
    return f;
}

Polytope unimodular_image(const Polytope& p, std::mt19937& rng) {
    int n = p.ambient_dim();
    Mat m = Mat::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
    for (int s = 0; s < 6; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Mat e = Mat::identity(n);
        e(i, j) = coef(rng);
        m = e * m;
    }
    Vec shift(n);
    for (auto& x : shift) x = Rat(coef(rng), 3);
    std::vector<Vec> pts;
    for (const auto& v : p.vertices()) {
        Vec w = m * v;
        for (int k = 0; k < n; ++k) w[k] += shift[k];
        pts.push_back(w);
    }
    return Polytope(n, pts);
}

}  // namespace

TEST(Facets, Segment) {
    Polytope s = segment();
    auto f = facets_from_vertices(s);
    ASSERT_EQ(f.size(), 2u);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& h : f) got.insert({h.normal[0].str(), h.offset.str()});
    EXPECT_TRUE(got.count({"1", "1"}));
    EXPECT_TRUE(got.count({"-1", "0"}));
}

TEST(Facets, Triangle) { EXPECT_EQ(facets_from_vertices(triangle()).size(), 3u); }

TEST(Facets, CubeAgainstBruteForce) {
    Polytope c = cube(3);
    auto bf = brute_force_facets(c);
    EXPECT_EQ(bf.size(), 6u);
    std::set<std::vector<int>> ours;
    for (Mask m : c.facet_masks()) ours.insert(mask_to_list(m));
    EXPECT_EQ(ours, bf);
}

TEST(Facets, Irredundant) {
    for (const auto& [name, p] : small_corpus()) {
        const auto& masks = p.facet_masks();
        for (std::size_t i = 0; i < masks.size(); ++i)
            for (std::size_t j = 0; j < masks.size(); ++j)
                if (i != j) {
                    EXPECT_FALSE(subset_of(masks[i], masks[j])) << name;
                }
    }
}

TEST(Facets, ValidHalfspaces) {
    for (const auto& [name, p] : small_corpus()) {
        auto hs = p.ambient_facets();
        for (const auto& h : hs) {
            EXPECT_FALSE(is_zero(h.normal));
            for (const auto& v : p.vertices()) EXPECT_LE(h.eval(v), Rat(0)) << name;
        }
    }
}

TEST(FaceLattice, TriangleFVector) { EXPECT_EQ(triangle().lattice().f_vector(), (std::vector<std::size_t>{3, 3})); }

TEST(FaceLattice, CubeAgainstIncidence) {
    Polytope c = cube(3);
    EXPECT_EQ(c.lattice().f_vector(), (std::vector<std::size_t>{8, 12, 6}));
    EXPECT_EQ(incidence_f_vector(c, brute_force_facets(c)), c.lattice().f_vector());
}

TEST(FaceLattice, SquarePyramidAgainstIncidence) {
    Polytope p = square_pyramid();
    EXPECT_EQ(p.lattice().f_vector(), (std::vector<std::size_t>{5, 8, 5}));
    EXPECT_EQ(incidence_f_vector(p, brute_force_facets(p)), p.lattice().f_vector());
}

TEST(FaceLattice, EmptyAndTop) {
    Polytope c = cube(3);
    const auto& lat = c.lattice();
    EXPECT_EQ(lat.face(lat.empty_id()).dim, -1);
    EXPECT_EQ(lat.face(lat.top_id()).dim, 3);
    EXPECT_EQ(lat.facets().size(), 6u);
}

TEST(FaceLattice, ClosedUnderIntersection) {
    for (const auto& [name, p] : small_corpus()) {
        const auto& lat = p.lattice();
        for (const auto& a : lat.faces())
            for (const auto& b : lat.faces()) EXPECT_TRUE(lat.find(a.mask & b.mask)) << name;
    }
}

TEST(FaceLattice, EulerRelation) {
    auto all = small_corpus();
    all.push_back({"cube4", cube(4)});
    all.push_back({"pyramid_over_cube", pyramid(cube(3))});
    for (const auto& [name, p] : all) {
        long s = 0;
        const auto& lat = p.lattice();
        for (std::size_t i = 0; i < lat.size(); ++i) {
            int d = lat.face(static_cast<int>(i)).dim;
            if (d >= 0 && d < lat.dim()) s += d % 2 == 0 ? 1 : -1;
        }
        long n = lat.dim();
        EXPECT_EQ(s, 1 - (n % 2 == 0 ? 1 : -1)) << name;
    }
}

TEST(FaceLattice, UnimodularInvariance) {
    std::mt19937 rng(23);
    for (const auto& [name, p] : small_corpus()) {
        Polytope q = unimodular_image(p, rng);
        ASSERT_EQ(q.num_vertices(), p.num_vertices());
        // Same vertex order, so the lattices agree face by face.
        ASSERT_EQ(q.lattice().size(), p.lattice().size()) << name;
        for (std::size_t i = 0; i < p.lattice().size(); ++i)
            EXPECT_EQ(q.lattice().face(static_cast<int>(i)).mask, p.lattice().face(static_cast<int>(i)).mask) << name;
        EXPECT_TRUE(combinatorially_equivalent(p.lattice(), q.lattice())) << name;
    }
}

TEST(FaceLattice, LowerDimensionalPolytope) {
    Polytope sq(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    EXPECT_EQ(sq.dim(), 2);
    EXPECT_FALSE(sq.full_dimensional());
    EXPECT_EQ(sq.lattice().f_vector(), (std::vector<std::size_t>{4, 4}));
    EXPECT_TRUE(combinatorially_equivalent(sq.lattice(), square().lattice()));
}

TEST(Simple, Examples) {
    EXPECT_TRUE(is_simple(cube(3)));
    EXPECT_FALSE(is_simple(square_pyramid()));
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(is_simple(simplex(n)));
    EXPECT_FALSE(is_simple(octahedron()));
}

TEST(Equivalence, PerturbedCube) {
    Polytope c = cube(3);
    std::vector<Vec> pts;
    int i = 0;
    for (const auto& v : c.vertices()) {
        Vec w = v;
        // Scale each axis differently and skew slightly: still a combinatorial cube.
        w[0] = w[0] * 2 + w[2] * Rat(1, 7);
        w[1] = w[1] * 3 + Rat(i % 2, 11);
        pts.push_back(w);
        ++i;
    }
    std::reverse(pts.begin(), pts.end());
    Polytope q(3, pts);
    EXPECT_TRUE(combinatorially_equivalent(c.lattice(), q.lattice()));
}

TEST(Equivalence, CubeVersusPyramid) {
    EXPECT_FALSE(combinatorially_equivalent(cube(3).lattice(), square_pyramid().lattice()));
    EXPECT_FALSE(combinatorially_equivalent(prism().lattice(), square_pyramid().lattice()));
}

TEST(Equivalence, Identity) {
    Polytope sp = square_pyramid();
    const auto& lat = sp.lattice();
    auto m = combinatorially_equivalent(lat, lat);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->size(), lat.size());
}

TEST(Polytope, RejectsNonVertex) {
    EXPECT_THROW(Polytope(2, {{0, 0}, {2, 0}, {0, 2}, {1, 0}}), Error);
    EXPECT_THROW(Polytope(2, {{0, 0}, {2, 0}, {0, 2}, {Rat(1, 2), Rat(1, 2)}}), Error);
}

TEST(Polytope, RejectsEmptyAndBadShape) {
    EXPECT_THROW(Polytope(2, {}), Error);
    EXPECT_THROW(Polytope(2, {{0, 0}, {1}}), Error);
}

TEST(Polytope, Deduplicates) {
    Polytope p(1, {{0}, {1}, {0}});
    EXPECT_EQ(p.num_vertices(), 2u);
}

TEST(Volume, Normalized) {
    EXPECT_EQ(normalized_volume(cube(3)), Rat(6));
    EXPECT_EQ(normalized_volume(simplex(4)), Rat(1));
    EXPECT_EQ(normalized_volume(square_pyramid()), Rat(8));  // 3! * 4/3
}
