#include <gtest/gtest.h>

#include "corpus.hpp"
#include "lw/cohomology.hpp"
#include "lw/error.hpp"

using namespace lw;
using namespace corpus;

namespace {

// Even Betti numbers of a simple polytope from its f-vector:
// sum h_i t^i = sum_i f_i (t - 1)^i with f_i the number of i-faces.
std::vector<std::size_t> simple_h(const Polytope& p) {
    int n = p.dim();
    std::vector<long> f(n + 1, 0);
    for (const auto& fc : p.lattice().faces())
        if (fc.dim >= 0) ++f[fc.dim];
    std::vector<long> h(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
        // expand (t - 1)^i
        long c = 1;
        for (int j = 0; j <= i; ++j) {
            long sgn = (i - j) % 2 == 0 ? 1 : -1;
            h[j] += sgn * c * f[i];
            c = c * (i - j) / (j + 1);
        }
    }
    std::vector<std::size_t> out;
    for (long x : h) out.push_back(static_cast<std::size_t>(x));
    return out;
}

std::vector<std::size_t> even(const CihModel& m) {
    std::vector<std::size_t> out;
    for (int d = 0; d <= m.n(); ++d) out.push_back(m.b(d));
    return out;
}

// Signature of s_k forced by Lefschetz decomposition and positivity on
// primitives: primitive degree i contributes b_i - b_{i-1} with sign (-1)^i.
Signature expected_signature(const CihModel& m, int k) {
    int d = (m.n() - k) / 2;
    Signature s{0, 0, 0};
    for (int i = 0; i <= d; ++i) {
        std::size_t c = m.b(i) - m.b(i - 1);
        (i % 2 == 0 ? s.pos : s.neg) += c;
    }
    return s;
}

std::vector<Named> cih_corpus() {
    auto c = small_corpus();
    c.push_back({"simplex4", simplex(4)});
    c.push_back({"pyramid_over_square", pyramid(square())});
    return c;
}

}  // namespace

TEST(Betti, SimplePolytopesMatchFVector) {
    for (const auto& [name, p] : cih_corpus()) {
        if (!is_simple(p)) continue;
        CihModel m(p);
        EXPECT_EQ(even(m), simple_h(p)) << name;
    }
}

TEST(Betti, ThreePolytopesFromFacetCount) {
    for (const auto& [name, p] : cih_corpus()) {
        if (p.dim() != 3) continue;
        CihModel m(p);
        std::size_t f = p.lattice().facets().size();
        EXPECT_EQ(even(m), (std::vector<std::size_t>{1, f - 3, f - 3, 1})) << name;
    }
}

TEST(Betti, OddDegreesVanish) {
    CihModel m(cube(3));
    EXPECT_EQ(m.betti(), (std::vector<std::size_t>{1, 0, 3, 0, 3, 0, 1}));
}

TEST(Betti, PoincareDuality) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        for (int d = 0; d <= m.n(); ++d) EXPECT_EQ(m.b(d), m.b(m.n() - d)) << name;
    }
}

TEST(Stalks, SquarePyramidApex) {
    Polytope p = square_pyramid();
    CihModel m(p);
    const auto& nf = m.normal_fan();
    int apex = nf.cone_of_face[*p.lattice().find(Mask{1} << 4)];
    EXPECT_EQ(m.sheaf().generator_degrees(apex), (std::vector<int>{0, 1}));
    for (int v = 0; v < 4; ++v) {
        int c = nf.cone_of_face[*p.lattice().find(Mask{1} << v)];
        EXPECT_EQ(m.sheaf().generator_degrees(c), (std::vector<int>{0}));
    }
}

TEST(Stalks, SimplicialConesAreFree) {
    CihModel c(cube(3));
    for (std::size_t i = 0; i < c.normal_fan().fan.size(); ++i)
        EXPECT_EQ(c.sheaf().generator_degrees(static_cast<int>(i)), (std::vector<int>{0}));
}

TEST(Evaluation, Segment) {
    CihModel m(segment());
    EXPECT_EQ(m.evaluate(m.psi()), Rat(1));
}

TEST(Evaluation, SquarePsiSquared) {
    CihModel m(square());
    EXPECT_EQ(m.evaluate(m.ring().multiply(m.psi(), m.psi())), Rat(2));
}

TEST(Evaluation, ConeVolumeSectionsHaveUnitValue) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        for (std::size_t t = 0; t < m.refinement().max_cones.size(); ++t)
            EXPECT_EQ(m.evaluate(cone_volume_section(m, t)), Rat(1)) << name;
    }
}

TEST(Evaluation, TopPowerOfPsiIsNormalizedVolume) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        Section x = m.ring().one();
        for (int i = 0; i < m.n(); ++i) x = m.ring().multiply(x, m.psi());
        EXPECT_EQ(m.evaluate(x), normalized_volume(p)) << name;
    }
}

TEST(Evaluation, Linear) {
    CihModel m(square_pyramid());
    Section a = cone_volume_section(m, 0), b = cone_volume_section(m, 1);
    Section c = a;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] = a.coeffs[i] * Rat(3) - b.coeffs[i] * Rat(1, 2);
    EXPECT_EQ(m.evaluate(c), m.evaluate(a) * Rat(3) - m.evaluate(b) * Rat(1, 2));
}

TEST(Evaluation, GlobalPolynomialsVanish) {
    CihModel m(cube(3));
    const auto& r = m.ring();
    Section xyz = r.multiply(r.coordinate(2), r.multiply(r.coordinate(0), r.coordinate(1)));
    EXPECT_EQ(m.evaluate(xyz), Rat(0));
    // Multiples of a global linear form are zero in the quotient.
    Section y = r.multiply(r.coordinate(0), r.multiply(r.coordinate(1), m.psi()));
    EXPECT_EQ(m.ih_coordinates(3, y.coeffs), Vec(m.b(3)));
}

TEST(Pairing, Symmetric) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        int n = m.n();
        for (int d = 0; 2 * d <= n; ++d) {
            int k = n - 2 * d;
            for (std::size_t i = 0; i < m.b(d); ++i)
                for (std::size_t j = 0; j < m.b(d); ++j)
                    EXPECT_EQ(m.pair(m.lift(d, i), m.lift(d, j), k), m.pair(m.lift(d, j), m.lift(d, i), k)) << name;
        }
    }
}

TEST(Pairing, LefschetzSelfAdjoint) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        int n = m.n();
        for (int d = 0; 2 * d + 2 <= n; ++d) {
            int k = n - 2 * d - 2;
            for (std::size_t i = 0; i < m.b(d); ++i)
                for (std::size_t j = 0; j < m.b(d + 1); ++j) {
                    Section lx = m.ring().multiply(m.psi(), m.lift(d, i));
                    Section ly = m.ring().multiply(m.psi(), m.lift(d + 1, j));
                    EXPECT_EQ(m.pair(lx, m.lift(d + 1, j), k), m.pair(m.lift(d, i), ly, k)) << name;
                }
        }
    }
}

TEST(Pairing, DegreeMismatch) {
    CihModel m(cube(3));
    EXPECT_THROW(m.pair(m.lift(0, 0), m.lift(0, 0), 0), Error);
}

TEST(Lefschetz, MatrixMatchesCoordinates) {
    CihModel m(square_pyramid());
    for (int d = 0; d < m.n(); ++d) {
        Mat l = m.lefschetz(d);
        for (std::size_t i = 0; i < m.b(d); ++i) {
            Vec img = m.ih_coordinates(d + 1, m.ring().multiply(m.psi(), m.lift(d, i)).coeffs);
            EXPECT_EQ(img, l.col_vec(i));
        }
    }
    EXPECT_EQ(lefschetz_matrix(m, 2), m.lefschetz(1));
}

TEST(HLT, Corpus) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        auto r = verify_hlt(m);
        EXPECT_TRUE(r.ok) << name;
        for (const auto& e : r.entries) {
            EXPECT_EQ(e.rows, m.b((m.n() + e.k) / 2)) << name;
            EXPECT_EQ(e.rank, e.cols) << name;
        }
    }
}

TEST(HRR, CubeSignatures) {
    CihModel m(cube(3));
    auto r = verify_hrr(m);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.entries[0].k, 1);
    EXPECT_EQ(r.entries[0].full, (Signature{1, 2, 0}));
    EXPECT_EQ(r.entries[1].k, 3);
    EXPECT_EQ(r.entries[1].full, (Signature{1, 0, 0}));
    EXPECT_TRUE(r.ok());
}

TEST(HRR, SquarePyramid) {
    CihModel m(square_pyramid());
    auto f = hr_form(m, 1);
    EXPECT_EQ(f.signature, (Signature{1, 1, 0}));
    EXPECT_EQ(f.signature.sign(), 0);
    EXPECT_EQ(f.primitive.size(), 1u);
    EXPECT_EQ(f.primitive_signature, (Signature{0, 1, 0}));
}

TEST(HRR, CorpusMatchesDecompositionOracle) {
    for (const auto& [name, p] : cih_corpus()) {
        CihModel m(p);
        auto r = verify_hrr(m);
        EXPECT_TRUE(r.ok()) << name;
        for (const auto& e : r.entries) {
            EXPECT_EQ(e.full, expected_signature(m, e.k)) << name << " k=" << e.k;
            EXPECT_EQ(e.full.zero, 0u) << name;
            EXPECT_EQ(e.primitive_dim, m.b((m.n() - e.k) / 2) - m.b((m.n() - e.k) / 2 - 1)) << name;
        }
    }
}

TEST(Refinement, HighestFirstAgrees) {
    for (const auto& [name, p] : cih_corpus()) {
        if (is_simple(p)) continue;
        CihModel a(p, PullOrder::LowestFirst), b(p, PullOrder::HighestFirst);
        EXPECT_EQ(a.betti(), b.betti()) << name;
        auto ra = verify_hrr(a), rb = verify_hrr(b);
        ASSERT_EQ(ra.entries.size(), rb.entries.size());
        for (std::size_t i = 0; i < ra.entries.size(); ++i) EXPECT_EQ(ra.entries[i].full, rb.entries[i].full) << name;
    }
}

TEST(Model, RequiresFullDimensional) {
    Polytope sq(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    CihModel m(sq);
    EXPECT_EQ(m.n(), 2);
    EXPECT_EQ(even(m), (std::vector<std::size_t>{1, 2, 1}));
}
