#include "lw/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lw/error.hpp"

namespace lw {

Fan::Fan(int dim, std::vector<Vec> rays, std::vector<Cone> cones)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)) {
    if (rays_.size() > 64) fail(ErrorKind::Precondition, "fans with more than 64 rays are not supported");
}

std::optional<int> Fan::find(Mask rays) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].rays == rays) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> Fan::max_cones() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].dim == dim_) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> Fan::facets_of(int sigma) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].dim == cones_[sigma].dim - 1 && is_face(static_cast<int>(i), sigma))
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> Fan::faces_of(int sigma) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (is_face(static_cast<int>(i), sigma)) out.push_back(static_cast<int>(i));
    return out;
}

Subfan closure(const Fan& fan, const std::vector<int>& generators) {
    std::set<int> s;
    for (int g : generators)
        for (int f : fan.faces_of(g)) s.insert(f);
    return Subfan(s.begin(), s.end());
}

Subfan affine_fan(const Fan& fan, int cone) {
    if (cone < 0 || cone >= static_cast<int>(fan.size())) fail(ErrorKind::Precondition, "cone not in fan");
    return closure(fan, {cone});
}

Subfan star(const Fan& fan, int cone) {
    if (cone < 0 || cone >= static_cast<int>(fan.size())) fail(ErrorKind::Precondition, "cone not in fan");
    std::vector<int> gens;
    for (std::size_t i = 0; i < fan.size(); ++i)
        if (fan.is_face(cone, static_cast<int>(i))) gens.push_back(static_cast<int>(i));
    return closure(fan, gens);
}

Subfan boundary_subfan(const Fan& fan, const Subfan& sub) {
    int top = 0;
    for (int c : sub) top = std::max(top, fan.cone(c).dim);
    std::vector<int> gens;
    for (int t : sub) {
        if (fan.cone(t).dim != top - 1) continue;
        int count = 0;
        for (int s : sub)
            if (fan.cone(s).dim == top && fan.is_face(t, s)) ++count;
        if (count == 1) gens.push_back(t);
    }
    return closure(fan, gens);
}

Subfan complementary_subfan(const Fan& fan, const Subfan& sub) {
    std::vector<int> gens;
    for (int m : fan.max_cones())
        if (!std::binary_search(sub.begin(), sub.end(), m)) gens.push_back(m);
    return closure(fan, gens);
}

bool is_simplicial(const Fan& fan) {
    for (std::size_t i = 0; i < fan.size(); ++i)
        if (!fan.cone_simplicial(static_cast<int>(i))) return false;
    return true;
}

NormalFan outer_normal_fan(const Polytope& p) {
    const auto& lat = p.lattice();
    const auto& facets = p.intrinsic_facets();
    const auto& fmasks = p.facet_masks();
    const auto& verts = p.intrinsic_vertices();
    int n = p.dim();

    std::vector<Vec> rays;
    for (const auto& h : facets) rays.push_back(h.normal);

    // Cones by increasing dimension: faces of P by decreasing dimension.
    std::vector<int> order;
    for (int id = lat.top_id(); id >= 1; --id) order.push_back(id);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lat.face(a).dim > lat.face(b).dim; });

    NormalFan nf;
    nf.cone_of_face.assign(lat.size(), -1);
    std::vector<Cone> cones;
    for (int id : order) {
        Cone c;
        c.face = id;
        for (std::size_t f = 0; f < fmasks.size(); ++f)
            if (subset_of(lat.face(id).mask, fmasks[f])) c.rays |= Mask{1} << f;
        std::vector<Vec> gens;
        for (int r : mask_to_list(c.rays)) gens.push_back(rays[r]);
        c.dim = gens.empty() ? 0 : static_cast<int>(rank(Mat::from_rows(gens, n)));
        if (c.dim != n - lat.face(id).dim) fail(ErrorKind::Internal, "normal cone has the wrong dimension");
        nf.cone_of_face[id] = static_cast<int>(cones.size());
        cones.push_back(c);
    }
    nf.fan = Fan(n, rays, cones);
    nf.zero_cone = nf.cone_of_face[lat.top_id()];
    nf.psi.assign(cones.size(), {});
    for (std::size_t v = 0; v < verts.size(); ++v) nf.psi[nf.cone_of_face[*lat.find(Mask{1} << v)]] = verts[v];
    for (const auto& h : facets) nf.psi_on_rays.push_back(h.offset);

    // Strict convexity across every wall.
    for (int e : lat.faces_of_dim(1)) {
        int i = lat.face(e).vertices[0], j = lat.face(e).vertices[1];
        Vec diff(n);
        for (int k = 0; k < n; ++k) diff[k] = verts[i][k] - verts[j][k];
        for (int r : mask_to_list(nf.fan.cone(nf.cone_of_face[e]).rays))
            if (!dot(diff, rays[r]).is_zero()) fail(ErrorKind::Internal, "psi does not agree on a wall");
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
            Vec x(n);
            for (int r : mask_to_list(nf.fan.cone(nf.cone_of_face[*lat.find(Mask{1} << b)]).rays))
                for (int k = 0; k < n; ++k) x[k] += rays[r][k];
            if (!(dot(verts[a], x) < dot(verts[b], x))) fail(ErrorKind::Internal, "psi is not strictly convex");
        }
    }
    return nf;
}

int carrier(const Fan& fan, Mask m) {
    int best = -1;
    for (std::size_t i = 0; i < fan.size(); ++i)
        if (subset_of(m, fan.cone(static_cast<int>(i)).rays) &&
            (best < 0 || fan.cone(static_cast<int>(i)).dim < fan.cone(best).dim))
            best = static_cast<int>(i);
    if (best < 0) fail(ErrorKind::Precondition, "rays are not contained in a common cone");
    return best;
}

Refinement simplicial_refinement(const Fan& fan, PullOrder order) {
    std::map<int, std::vector<Mask>> memo;
    std::function<const std::vector<Mask>&(int)> tri = [&](int s) -> const std::vector<Mask>& {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        std::vector<Mask> out;
        const Cone& c = fan.cone(s);
        if (fan.cone_simplicial(s)) {
            out.push_back(c.rays);
        } else {
            auto rl = mask_to_list(c.rays);
            Mask apex = Mask{1} << (order == PullOrder::LowestFirst ? rl.front() : rl.back());
            for (int f : fan.facets_of(s)) {
                if (fan.cone(f).rays & apex) continue;
                for (Mask t : tri(f)) out.push_back(t | apex);
            }
        }
        return memo.emplace(s, std::move(out)).first->second;
    };

    Refinement r;
    int n = fan.dim();
    for (int m : fan.max_cones())
        for (Mask t : tri(m)) r.max_cones.push_back(t);
    std::sort(r.max_cones.begin(), r.max_cones.end());
    for (Mask t : r.max_cones) {
        for (Mask sub = t;; sub = (sub - 1) & t) {
            r.cones.insert(sub);
            if (sub == 0) break;
        }
        std::vector<Vec> cols;
        for (int j : mask_to_list(t)) cols.push_back(fan.rays()[j]);
        Mat rm = Mat::from_columns(cols, n);
        auto inv = inverse(rm);
        if (!inv) fail(ErrorKind::Internal, "refined cone is degenerate");
        r.inverse.push_back(std::move(*inv));
        r.abs_det.push_back(abs(determinant(rm)));
    }
    return r;
}

Vec generic_point(int dim, long j) {
    Vec p(dim);
    Rat x = 1;
    for (int i = 0; i < dim; ++i) {
        p[i] = x;
        x *= Rat(j);
    }
    return p;
}

bool refinement_covers(const Fan& fan, const Refinement& r, int samples) {
    int good = 0;
    for (long j = 1; good < samples && j < 1000; ++j) {
        Vec p = generic_point(fan.dim(), j);
        bool degenerate = false;
        int inside = 0;
        for (const auto& inv : r.inverse) {
            Vec lam = inv * p;
            bool all_pos = true;
            for (const auto& l : lam) {
                if (l.is_zero()) degenerate = true;
                if (l.sign() <= 0) all_pos = false;
            }
            if (all_pos) ++inside;
        }
        if (degenerate) continue;
        ++good;
        if (inside != 1) return false;
    }
    return good == samples;
}

}  // namespace lw
