#include "lw/surgery.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "lw/error.hpp"

namespace lw {

namespace {

void require_full(const Polytope& p, const char* what) {
    if (!p.full_dimensional())
        fail(ErrorKind::Precondition, std::string(what) + ": polytope must be full-dimensional (use its intrinsic chart)");
}

void require_proper(const FaceLattice& lat, int face, const char* what) {
    if (face <= lat.empty_id() || face >= lat.top_id())
        fail(ErrorKind::Precondition, std::string(what) + ": face must be proper and nonempty");
}

Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Vertices of {x : facets of p} intersected with {E x = e}.
std::vector<Vec> section_vertices(const Polytope& p, const std::vector<Vec>& eq, const Vec& rhs) {
    int n = p.ambient_dim();
    const auto facets = p.ambient_facets();
    Vec x0(n);
    std::vector<Vec> k_basis;
    if (eq.empty()) {
        for (int i = 0; i < n; ++i) {
            Vec u(n);
            u[i] = 1;
            k_basis.push_back(std::move(u));
        }
    } else {
        Mat e = Mat::from_rows(eq, n);
        auto s = solve(e, rhs);
        if (!s) fail(ErrorKind::Internal, "inconsistent transversal subspace");
        x0 = *s;
        k_basis = kernel_basis(e);
    }
    std::size_t k = k_basis.size();
    std::size_t m = facets.size();
    Mat a(m, k);
    Vec b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) = dot(facets[i].normal, k_basis[j]);
        b[i] = facets[i].offset - dot(facets[i].normal, x0);
    }
    auto lift = [&](const Vec& z) {
        Vec x = x0;
        for (std::size_t j = 0; j < k; ++j)
            for (int c = 0; c < n; ++c) x[c] += z[j] * k_basis[j][c];
        return x;
    };
    auto feasible = [&](const Vec& z) {
        for (std::size_t i = 0; i < m; ++i)
            if (dot(a.row(i), z) > b[i]) return false;
        return true;
    };
    std::vector<Vec> out;
    if (k == 0) {
        if (feasible(Vec{})) out.push_back(x0);
        return out;
    }
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    while (true) {
        Mat sub(k, k);
        Vec rs(k);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(idx[r], c);
            rs[r] = b[idx[r]];
        }
        if (rank(sub) == k) {
            Vec z = *solve(sub, rs);
            if (feasible(z)) {
                Vec x = lift(z);
                if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
            }
        }
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == static_cast<int>(m - k) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<Vec> direction_basis(const std::vector<Vec>& pts) {
    std::vector<Vec> basis;
    if (pts.empty()) return basis;
    Echelon e(pts[0].size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        if (e.add(d)) basis.push_back(std::move(d));
    }
    return basis;
}

Vec sum_of_facet_normals(const Polytope& p, Mask face) {
    Vec a(p.ambient_dim());
    const auto& fm = p.facet_masks();
    const auto& fs = p.intrinsic_facets();
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (subset_of(face, fm[i]))
            for (int j = 0; j < p.ambient_dim(); ++j) a[j] += fs[i].normal[j];
    return a;
}

}  // namespace

Polytope join(const Polytope& q1, const Polytope& q2, bool auto_position) {
    std::vector<Vec> pts;
    if (auto_position) {
        int d1 = q1.dim(), d2 = q2.dim();
        for (const auto& y : q1.intrinsic_vertices()) {
            Vec v = concat(y, Vec(d2 + 1));
            pts.push_back(std::move(v));
        }
        for (const auto& y : q2.intrinsic_vertices()) {
            Vec v = concat(Vec(d1), y);
            v.push_back(1);
            pts.push_back(std::move(v));
        }
        return Polytope(d1 + d2 + 1, std::move(pts));
    }
    if (q1.ambient_dim() != q2.ambient_dim()) fail(ErrorKind::Precondition, "join: ambient dimensions differ");
    pts = q1.vertices();
    pts.insert(pts.end(), q2.vertices().begin(), q2.vertices().end());
    if (affine_dim(pts) != q1.dim() + q2.dim() + 1) fail(ErrorKind::Precondition, "join: polytopes are not skew");
    return Polytope(q1.ambient_dim(), std::move(pts));
}

Polytope pyramid(const Polytope& base) {
    std::vector<Vec> pts;
    std::vector<int> all(base.num_vertices());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    for (const auto& v : base.vertices()) {
        Vec w = v;
        w.push_back(0);
        pts.push_back(std::move(w));
    }
    Vec apex = base.barycenter(all);
    apex.push_back(1);
    pts.push_back(std::move(apex));
    return Polytope(base.ambient_dim() + 1, std::move(pts));
}

Polytope product(const Polytope& p1, const Polytope& p2) {
    std::vector<Vec> pts;
    for (const auto& a : p1.vertices())
        for (const auto& b : p2.vertices()) pts.push_back(concat(a, b));
    return Polytope(p1.ambient_dim() + p2.ambient_dim(), std::move(pts));
}

Halfspace nearby_cut_hyperplane(const Polytope& p, int face) {
    require_full(p, "nearby_cut_hyperplane");
    const auto& lat = p.lattice();
    require_proper(lat, face, "nearby_cut_hyperplane");
    const Face& f = lat.face(face);
    Vec a = sum_of_facet_normals(p, f.mask);
    Rat h0 = dot(a, p.vertex(f.vertices.front()));
    std::optional<Rat> rest;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
        if (f.mask >> v & 1) continue;
        Rat val = dot(a, p.vertex(v));
        if (!rest || val > *rest) rest = val;
    }
    return {a, (h0 + *rest) / Rat(2)};
}

CutResult transversal_cut(const Polytope& p, const Halfspace& h) {
    const auto& lat = p.lattice();
    std::vector<int> side(p.num_vertices());
    bool below = false, above = false;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
        int s = h.eval(p.vertex(v)).sign();
        if (s == 0) fail(ErrorKind::Precondition, "cut is not transversal: vertex " + std::to_string(v) + " on hyperplane");
        side[v] = s;
        (s < 0 ? below : above) = true;
    }
    if (!below || !above) fail(ErrorKind::Precondition, "hyperplane does not meet the interior");

    CutResult r;
    r.hyperplane = h;
    std::vector<Vec> cut_pts;
    for (int e : lat.faces_of_dim(1)) {
        int u = lat.face(e).vertices[0], w = lat.face(e).vertices[1];
        if (side[u] == side[w]) continue;
        if (side[u] > 0) std::swap(u, w);
        const Vec& pu = p.vertex(u);
        const Vec& pw = p.vertex(w);
        Vec d(pu.size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pw[j] - pu[j];
        Rat lambda = -h.eval(pu) / dot(h.normal, d);
        Vec x = pu;
        for (std::size_t j = 0; j < d.size(); ++j) x[j] += lambda * d[j];
        cut_pts.push_back(std::move(x));
        r.crossed_edges.emplace_back(u, w);
    }
    std::vector<Vec> p1, p2;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
        if (side[v] < 0) {
            p1.push_back(p.vertex(v));
            r.origin1.push_back(static_cast<int>(v));
        } else {
            p2.push_back(p.vertex(v));
            r.origin2.push_back(static_cast<int>(v));
        }
    }
    for (std::size_t k = 0; k < cut_pts.size(); ++k) {
        p1.push_back(cut_pts[k]);
        p2.push_back(cut_pts[k]);
        r.origin1.push_back(-1 - static_cast<int>(k));
        r.origin2.push_back(-1 - static_cast<int>(k));
    }
    int n = p.ambient_dim();
    r.piece1 = Polytope(n, std::move(p1));
    r.piece2 = Polytope(n, std::move(p2));
    r.cut_facet = Polytope(n, std::move(cut_pts));
    return r;
}

Polytope link_polytope(const Polytope& p, int face) {
    require_full(p, "link_polytope");
    const auto& lat = p.lattice();
    require_proper(lat, face, "link_polytope");
    const Face& f = lat.face(face);
    std::vector<Vec> fpts;
    for (int v : f.vertices) fpts.push_back(p.vertex(v));
    Vec b = p.barycenter(f.vertices);
    std::vector<Vec> eq = direction_basis(fpts);
    Vec rhs;
    for (const auto& u : eq) rhs.push_back(dot(u, b));

    // N cap P has b as a vertex, maximizing a uniquely; cut just below it.
    Vec a = sum_of_facet_normals(p, f.mask);
    Rat h0 = dot(a, b);
    auto sect = section_vertices(p, eq, rhs);
    std::optional<Rat> rest;
    for (const auto& x : sect) {
        if (x == b) continue;
        Rat val = dot(a, x);
        if (!rest || val > *rest) rest = val;
    }
    if (!rest) fail(ErrorKind::Internal, "transversal section degenerates to a point");
    eq.push_back(a);
    rhs.push_back((h0 + *rest) / Rat(2));
    return Polytope(p.ambient_dim(), section_vertices(p, eq, rhs));
}

GermLink germ_link_residual(const Polytope& p, int face) {
    GermLink g;
    g.face = face;
    g.cut = transversal_cut(p, nearby_cut_hyperplane(p, face));
    g.germ = g.cut.piece2;
    g.residual = g.cut.piece1;
    g.link = p.lattice().face(face).dim == 0 ? g.cut.cut_facet : link_polytope(p, face);
    return g;
}

bool is_stout(const FaceLattice& lat) {
    int total = lat.num_atoms();
    for (int f : lat.facets())
        if (total - popcount(lat.face(f).mask) < 2) return false;
    return true;
}

StoutFactorization stout_factorization(const FaceLattice& lat) {
    StoutFactorization r;
    if (lat.num_atoms() == lat.dim() + 1) {
        r.base = -1;
        r.codim = lat.dim() + 1;
        r.complement = lat.top_id();
        r.simplex_convention = true;
        return r;
    }
    std::vector<int> stout;
    for (int id = 1; id <= lat.top_id(); ++id)
        if (is_stout(lat.interval_below(id))) stout.push_back(id);
    std::vector<int> maximal;
    for (int s : stout) {
        bool is_max = true;
        for (int t : stout)
            if (t != s && lat.leq(s, t)) is_max = false;
        if (is_max) maximal.push_back(s);
    }
    if (maximal.size() != 1) fail(ErrorKind::Internal, "maximal stout face is not unique");
    r.base = maximal.front();
    r.codim = lat.dim() - lat.face(r.base).dim;
    Mask all = lat.face(lat.top_id()).mask;
    if (auto c = lat.find(all & ~lat.face(r.base).mask)) r.complement = *c;
    return r;
}

StoutReport normally_stout_report(const FaceLattice& lat) {
    StoutReport r;
    for (int id = 1; id < lat.top_id(); ++id)
        if (is_stout(lat.interval_above(id))) r.normally_stout_faces.push_back(id);
    r.defect = static_cast<int>(r.normally_stout_faces.size());
    if (!r.normally_stout_faces.empty()) r.minimal_ns_face = r.normally_stout_faces.front();
    return r;
}

int smallest_face_containing(const FaceLattice& lat, Mask m) {
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (subset_of(m, lat.face(static_cast<int>(i)).mask)) return static_cast<int>(i);
    fail(ErrorKind::Internal, "no face contains the given vertices");
}

NormalTriviality is_normally_trivial(const FaceLattice& lat, int face) {
    require_proper(lat, face, "is_normally_trivial");
    NormalTriviality out;
    out.trivial = true;
    const Face& f = lat.face(face);
    for (int a : f.vertices) {
        Mask abit = Mask{1} << a;
        auto edges = lat.edges_at(a);
        auto edge_set = [&](Mask x) {
            Mask s = 0;
            for (std::size_t j = 0; j < edges.size(); ++j)
                if (subset_of(lat.face(edges[j]).mask, x)) s |= Mask{1} << j;
            return s;
        };
        Mask v1 = edge_set(f.mask);
        Mask all_edges = edges.empty() ? 0 : ((Mask{1} << edges.size()) - 1);
        Mask v2 = all_edges & ~v1;
        auto face_of_edges = [&](Mask es) {
            Mask m = abit;
            for (int j : mask_to_list(es)) m |= lat.face(edges[j]).mask;
            return smallest_face_containing(lat, m);
        };
        int s = face_of_edges(v2);
        bool ok = edge_set(lat.face(s).mask) == v2;
        std::size_t n_total = 0, n_f = 0, n_s = 0;
        for (std::size_t x = 0; x < lat.size() && ok; ++x) {
            const Face& fx = lat.face(static_cast<int>(x));
            if (!(fx.mask & abit)) continue;
            ++n_total;
            if (subset_of(fx.mask, f.mask)) ++n_f;
            if (subset_of(fx.mask, lat.face(s).mask)) ++n_s;
            Mask ex = edge_set(fx.mask);
            int y = smallest_face_containing(lat, fx.mask & f.mask);
            int z = face_of_edges(ex & v2);
            if (edge_set(lat.face(z).mask) != (ex & v2) || !lat.leq(z, s)) ok = false;
            else if (fx.dim != lat.face(y).dim + lat.face(z).dim) ok = false;
        }
        if (ok && n_total != n_f * n_s) ok = false;
        out.witnesses.emplace_back(a, s);
        if (!ok) {
            out.trivial = false;
            break;
        }
    }
    return out;
}

std::vector<CutoffStep> cutoff_pipeline(const Polytope& p) {
    require_full(p, "cutoff_pipeline");
    std::vector<CutoffStep> trace;
    Polytope cur = p;
    StoutReport rep = normally_stout_report(cur);
    while (rep.defect > 0) {
        int f = *rep.minimal_ns_face;
        GermLink gl = germ_link_residual(cur, f);
        StoutReport next = normally_stout_report(gl.residual);
        CutoffStep step;
        step.face = cur.lattice().face(f).vertices;
        step.mu_before = rep.defect;
        step.mu_after = next.defect;
        step.residual = gl.residual;
        trace.push_back(step);
        if (next.defect >= rep.defect) fail(ErrorKind::Internal, "cut-off did not decrease the defect");
        cur = gl.residual;
        rep = next;
    }
    return trace;
}

Deformation::Deformation(const Polytope& p, int face) {
    require_full(p, "deformation");
    const auto& lat = p.lattice();
    require_proper(lat, face, "deformation");
    if (!is_normally_trivial(lat, face).trivial) fail(ErrorKind::Precondition, "deformation: face is not normally trivial");
    if (!is_simple(lat.interval_below(face))) fail(ErrorKind::Precondition, "deformation: face is not simple");
    gl_ = germ_link_residual(p, face);
    const Face& f = lat.face(face);
    int n = p.ambient_dim();
    for (int v : f.vertices) face_vertices_.push_back(p.vertex(v));

    // Orthogonal projection onto the direction space of F.
    auto ub = direction_basis(face_vertices_);
    Mat b = Mat::from_columns(ub, n);
    Mat proj(n, n);
    if (!ub.empty()) {
        Mat bt = b.transpose();
        proj = b * (*inverse(bt * b)) * bt;
    }

    std::map<int, std::vector<std::size_t>> by_face;
    for (std::size_t k = 0; k < gl_.cut.crossed_edges.size(); ++k) {
        auto [w, u] = gl_.cut.crossed_edges[k];
        const Vec& x = gl_.cut.cut_facet.vertex(k);
        Vec d(n);
        for (int j = 0; j < n; ++j) d[j] = x[j] - p.vertex(u)[j];
        Vec du = proj * d;
        Vec dn(n);
        for (int j = 0; j < n; ++j) dn[j] = d[j] - du[j];
        cut_.push_back({p.vertex(u), du, dn, {}});
        by_face[smallest_face_containing(lat, f.mask | (Mask{1} << w))].push_back(k);
    }
    for (const auto& [k_face, members] : by_face) {
        Vec avg(n);
        for (auto k : members)
            for (int j = 0; j < n; ++j) avg[j] += cut_[k].dir_n[j];
        for (auto& x : avg) x /= Rat(static_cast<long>(members.size()));
        for (auto k : members) cut_[k].avg_n = avg;
    }
}

Polytope Deformation::at(const Rat& t) const {
    if (t < Rat(0) || t > Rat(1)) fail(ErrorKind::Precondition, "deformation parameter must lie in [0,1]");
    std::vector<Vec> pts = face_vertices_;
    Rat s = Rat(1) - t;
    for (const auto& c : cut_) {
        Vec x = c.base;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += t * (c.dir_u[j] + c.dir_n[j]) + s * c.avg_n[j];
        pts.push_back(std::move(x));
    }
    return Polytope(static_cast<int>(face_vertices_.front().size()), std::move(pts));
}

Polytope deformation_family(const Polytope& p, int face, const Rat& t) { return Deformation(p, face).at(t); }

}  // namespace lw
