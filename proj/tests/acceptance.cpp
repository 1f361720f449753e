// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lw/cohomology.hpp"
#include "lw/error.hpp"
#include "lw/hr_module.hpp"
#include "lw/hvector.hpp"
#include "lw/pipeline.hpp"
#include "lw/verify.hpp"

using namespace lw;
using namespace corpus;

namespace {

struct Entry {
    std::string name;
    Polytope p;
    std::shared_ptr<CihModel> model;
};

std::vector<Entry> build_corpus() {
    std::vector<Named> base;
    for (int n = 1; n <= 4; ++n) base.push_back({"simplex" + std::to_string(n), simplex(n)});
    base.push_back({"cube3", cube(3)});
    base.push_back({"cube4", cube(4)});
    base.push_back({"square_pyramid", square_pyramid()});
    base.push_back({"pyramid_cube3", pyramid(cube(3))});
    base.push_back({"triangle_x_segment", product(triangle(), segment())});
    base.push_back({"square_x_segment", product(square(), segment())});
    std::vector<Named> all = base;
    for (const auto& [name, p] : base) {
        auto trace = cutoff_pipeline(p);
        for (std::size_t i = 0; i < trace.size(); ++i)
            all.push_back({name + "/residual" + std::to_string(i + 1), trace[i].residual});
    }
    std::vector<Entry> out;
    for (auto& [name, p] : all) out.push_back({name, p, std::make_shared<CihModel>(p)});
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
}

long bq(const std::vector<std::size_t>& b, int q) {
    return q < 0 || q >= static_cast<int>(b.size()) ? 0 : static_cast<long>(b[q]);
}

int failures = 0;

void report(int ac, bool ok, const std::string& detail, double secs) {
    std::printf("AC%d %s %s (%.2fs)\n", ac, ok ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int ac, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const Error& e) {
        detail += std::string(" error[") + to_string(e.kind()) + "]: " + e.what();
    } catch (const std::exception& e) {
        detail += std::string(" exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(ac, ok, detail, secs);
}

}  // namespace

int main() {
    std::vector<Entry> corp;
    try {
        corp = build_corpus();
    } catch (const std::exception& e) {
        std::printf("corpus construction failed: %s\n", e.what());
        return 1;
    }
    std::printf("corpus: %zu polytopes\n", corp.size());

    run(1, [&](std::string& d) {
        bool ok = true;
        for (const auto& e : corp) {
            const CihModel& m = *e.model;
            HVec h = toric_h(e.p.lattice());
            auto b = m.betti();
            bool here = h.h.size() == static_cast<std::size_t>(m.n() + 1);
            for (int i = 0; here && i <= m.n(); ++i) here = static_cast<long long>(b[2 * i]) == h.h[i];
            for (int q = 0; q <= 2 * m.n(); ++q) here = here && b[q] == b[2 * m.n() - q] && (q % 2 == 0 || b[q] == 0);
            if (!here) d += " mismatch:" + e.name + "[" + join_sizes(b) + "]";
            ok = ok && here;
        }
        d = "b_2i = h_i and duality on " + std::to_string(corp.size()) + " polytopes" + d;
        return ok;
    });

    run(2, [&](std::string& d) {
        bool ok = true;
        int maps = 0;
        for (const auto& e : corp) {
            auto r = verify_hlt(*e.model);
            maps += static_cast<int>(r.entries.size());
            if (!r.ok) d += " fails:" + e.name;
            ok = ok && r.ok;
        }
        d = std::to_string(maps) + " Lefschetz powers of full rank" + d;
        return ok;
    });

    run(3, [&](std::string& d) {
        bool ok = true;
        int forms = 0;
        for (const auto& e : corp) {
            const CihModel& m = *e.model;
            for (int k = m.n() % 2; k <= m.n(); k += 2) {
                HRFormData f = hr_form(m, k);
                int d2 = (m.n() - k) / 2;
                const Signature& s = f.primitive_signature;
                bool definite = s.zero == 0 && (d2 % 2 == 0 ? s.neg == 0 : s.pos == 0) &&
                                s.dimension() == f.primitive.size();
                if (!definite) d += " " + e.name + " k=" + std::to_string(k);
                ok = ok && definite;
                ++forms;
            }
        }
        d = std::to_string(forms) + " primitive forms definite of the expected sign" + d;
        return ok;
    });

    run(4, [&](std::string& d) {
        bool ok = true;
        for (const auto& e : corp) {
            const CihModel& m = *e.model;
            int n = m.n();
            for (int k = n % 2; k <= n; k += 2) {
                long lhs = hr_form(m, k).signature.sign();
                long next = k + 2 <= n ? hr_form(m, k + 2).signature.sign() : 0;
                int d2 = (n - k) / 2;
                long sgn = d2 % 2 == 0 ? 1 : -1;
                long rhs = next + sgn * (static_cast<long>(m.b(d2)) - static_cast<long>(m.b(d2 - 1)));
                if (lhs != rhs) d += " " + e.name + " k=" + std::to_string(k);
                ok = ok && lhs == rhs;
            }
        }
        CihModel c(cube(3));
        long s1 = hr_form(c, 1).signature.sign(), s3 = hr_form(c, 3).signature.sign();
        ok = ok && s3 == 1 && s1 == -1;
        d = "sign equation on corpus; cube sign(s_3)=" + std::to_string(s3) + " sign(s_1)=" + std::to_string(s1) + d;
        return ok;
    });

    run(5, [&](std::string& d) {
        Polytope sp = square_pyramid();
        auto sr = normally_stout_report(sp);
        auto trace = cutoff_pipeline(sp);
        bool ok = sr.defect == 1 && trace.size() == 1 &&
                  combinatorially_equivalent(trace[0].residual.lattice(), cube(3).lattice()).has_value();
        int steps = 0, faces = 0;
        std::vector<Named> polys{{"octahedron", octahedron()}, {"pyramid_square_pyramid", pyramid(square_pyramid())}};
        for (const auto& e : corp) polys.push_back({e.name, e.p});
        for (const auto& [name, p] : polys) {
            auto r = normally_stout_report(p);
            const auto& lat = p.lattice();
            for (int f : r.normally_stout_faces) {
                ++faces;
                if (lat.dim() - lat.face(f).dim < 3) {
                    ok = false;
                    d += " codim:" + name;
                }
            }
            if (r.minimal_ns_face && (!is_normally_trivial(lat, *r.minimal_ns_face).trivial ||
                                      !is_simple(lat.interval_below(*r.minimal_ns_face)))) {
                ok = false;
                d += " minimal:" + name;
            }
            auto t = cutoff_pipeline(p);
            if (static_cast<int>(t.size()) != r.defect) {
                ok = false;
                d += " steps:" + name;
            }
            int mu = r.defect;
            for (const auto& s : t) {
                if (s.mu_before != mu || s.mu_after != mu - 1 ||
                    normally_stout_report(s.residual).defect != s.mu_after) {
                    ok = false;
                    d += " drop:" + name;
                }
                mu = s.mu_after;
                ++steps;
            }
            if (mu != 0 || (!t.empty() && !is_simple(t.back().residual))) ok = false;
        }
        d = "mu(square pyramid)=" + std::to_string(sr.defect) + ", residual ~ cube, " + std::to_string(steps) +
            " cut-off steps, " + std::to_string(faces) + " normally stout faces checked" + d;
        return ok;
    });

    run(6, [&](std::string& d) {
        bool ok = true;
        for (const auto& [name, q] : std::vector<Named>{{"square", square()}, {"triangle", triangle()}, {"cube3", cube(3)}}) {
            Polytope pq = pyramid(q);
            CihModel m(pq);
            auto bp = m.betti(), bb = betti_of(q);
            int n = m.n();
            bool here = true;
            for (int qd = 0; qd <= 2 * n; ++qd) {
                long want = qd <= n ? bq(bb, qd) : bq(bb, qd - 2);
                here = here && static_cast<long>(bp[qd]) == want;
            }
            // IP^n vanishes: nothing primitive in the middle degree for odd n,
            // and L^1 injective into degree n + 1 for even n.
            bool ip_zero = true;
            if (n % 2 == 0) ip_zero = hr_form(m, 0).primitive.empty();
            here = here && ip_zero && verify_pyramid_relations(pq).ok();
            if (!here) d += " " + name;
            ok = ok && here;
        }
        d = "pyramid Betti shift and IP^n = 0 for square, triangle, cube3" + d;
        return ok;
    });

    run(7, [&](std::string& d) {
        KunnethReport a = verify_kunneth(segment(), square());
        KunnethReport b = verify_kunneth(triangle(), segment());
        SimpleTag t = decompose(tensor(from_engine(CihModel(segment())), from_engine(CihModel(square()))));
        SimpleTag c = decompose(from_engine(CihModel(cube(3))));
        bool ok = a.ok() && b.ok() && t == c;
        d = std::string("segment x square ") + (a.ok() ? "ok" : "bad") + ", triangle x segment " +
            (b.ok() ? "ok" : "bad") + ", W tensor tag " + (t == c ? "matches" : "differs from") + " W(cube3)";
        return ok;
    });

    run(8, [&](std::string& d) {
        bool ok = true;
        Polytope sp = square_pyramid();
        std::vector<std::pair<std::string, std::pair<Polytope, Halfspace>>> cuts{
            {"cube3@z=1/2", {cube(3), Halfspace{{0, 0, 1}, Rat(1, 2)}}},
            {"square_pyramid@apex", {sp, nearby_cut_hyperplane(sp, *sp.lattice().find(Mask{1} << 4))}}};
        for (const auto& [name, ph] : cuts) {
            CutResult c = transversal_cut(ph.first, ph.second);
            auto b = betti_of(ph.first), b1 = betti_of(c.piece1), b2 = betti_of(c.piece2), bf = betti_of(c.cut_facet);
            bool here = true;
            for (int q = 0; q < static_cast<int>(b.size()); ++q)
                here = here && bq(b1, q) + bq(b2, q) == bq(b, q) + bq(bf, q) + bq(bf, q - 2);
            here = here && verify_gluing_betti(ph.first, ph.second).identity;
            d += " " + name + (here ? " ok" : " bad");
            ok = ok && here;
        }
        d = "gluing identity:" + d;
        return ok;
    });

    run(9, [&](std::string& d) {
        bool ok = true;
        for (int n = 1; n <= 4; ++n) {
            SimpleTag t = decompose(tensor(simple_module(n), simple_module(1)));
            if (t != SimpleTag{{n + 1, 1}, {n - 1, 1}}) {
                ok = false;
                d += " A" + std::to_string(n) + "xA1";
            }
            SimpleTag w = decompose(from_engine(CihModel(simplex(n))));
            if (w != SimpleTag{{n, 1}}) {
                ok = false;
                d += " W(S" + std::to_string(n) + ")";
            }
        }
        d = "A_n x A_1 = A_{n+1} + A_{n-1} and W(S_n) = A_n for n = 1..4" + d;
        return ok;
    });

    run(10, [&](std::string& d) {
        std::vector<Rat> t{Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
        Polytope c = cube(3);
        int edge = *c.lattice().find(list_to_mask({0, 1}));
        DeformationReport a = verify_deformation(c, edge, t);
        // Germs met by the pipeline on the square pyramid and on its pyramid.
        Polytope sp = square_pyramid();
        DeformationReport b = verify_deformation(sp, *normally_stout_report(sp).minimal_ns_face, t);
        Polytope pp = pyramid(sp);
        DeformationReport e = verify_deformation(pp, *normally_stout_report(pp).minimal_ns_face, t);
        auto flags = [](const DeformationReport& r) {
            std::string s;
            s += r.type_constant ? "T" : "t";
            s += r.product_at_zero ? "P" : "p";
            s += r.betti_constant ? "B" : "b";
            s += r.signatures_constant ? "S" : "s";
            s += r.hlt_positive ? "H" : "h";
            return s;
        };
        d = "cube edge " + flags(a) + ", square pyramid apex " + flags(b) + ", pyramid over square pyramid edge " +
            flags(e);
        return a.ok() && b.ok() && e.ok();
    });

    run(11, [&](std::string& d) {
        bool ok = true;
        int sign = 0;
        std::ostringstream log;
        for (const auto& e : corp) {
            const CihModel& m = *e.model;
            for (std::size_t tau = 0; tau < m.refinement().max_cones.size(); ++tau)
                if (m.evaluate(cone_volume_section(m, tau)) != Rat(1)) {
                    ok = false;
                    d += " unit:" + e.name;
                }
            Section x = m.ring().one();
            for (int i = 0; i < m.n(); ++i) x = m.ring().multiply(x, m.psi());
            Rat v = m.evaluate(x);
            int s = v > Rat(0) ? 1 : v < Rat(0) ? -1 : 0;
            if (sign == 0) sign = s;
            if (s == 0 || s != sign) ok = false;
            Rat ratio = v / normalized_volume(e.p);
            log << "\n    " << e.name << ": eps(psi^n)=" << v.str() << " n!vol=" << normalized_volume(e.p).str()
                << " ratio=" << ratio.str();
        }
        d = "eps(g_s 1_s) = 1 on all refined cones; eps(psi^n) sign " + std::to_string(sign) + d + log.str();
        return ok;
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
