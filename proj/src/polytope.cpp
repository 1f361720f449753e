#include "lw/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "lw/error.hpp"

namespace lw {

std::vector<int> mask_to_list(Mask m) {
    std::vector<int> out;
    while (m) {
        int b = __builtin_ctzll(m);
        out.push_back(b);
        m &= m - 1;
    }
    return out;
}

Mask list_to_mask(const std::vector<int>& l) {
    Mask m = 0;
    for (int i : l) m |= Mask{1} << i;
    return m;
}

namespace {

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Scale a nonzero rational vector to a primitive integer vector, same direction.
Vec primitive(Vec v) {
    mpz_class l = 1;
    for (const auto& x : v)
        if (!x.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    mpz_class g = 0;
    for (auto& x : v) {
        x *= Rat(l);
        mpz_class num = x.num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    if (g != 0 && g != 1)
        for (auto& x : v) x /= Rat(g);
    return v;
}

// Calls f(indices) for each k-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    if (k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

int affine_dim(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    Echelon e(pts[0].size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        e.add(std::move(d));
    }
    return static_cast<int>(e.rank());
}

// ---------------------------------------------------------------- lattice

FaceLattice::FaceLattice(int dim, int num_atoms, std::vector<Face> faces)
    : dim_(dim), num_atoms_(num_atoms), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertices < b.vertices;
    });
    up_.assign(faces_.size(), {});
    down_.assign(faces_.size(), {});
    for (std::size_t i = 0; i < faces_.size(); ++i)
        for (std::size_t j = 0; j < faces_.size(); ++j)
            if (faces_[j].dim == faces_[i].dim + 1 && subset_of(faces_[i].mask, faces_[j].mask)) {
                up_[i].push_back(static_cast<int>(j));
                down_[j].push_back(static_cast<int>(i));
            }
}

std::optional<int> FaceLattice::find(Mask m) const {
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].mask == m) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> FaceLattice::faces_of_dim(int d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].dim == d) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> FaceLattice::edges_at(int atom) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].dim == 1 && (faces_[i].mask >> atom & 1)) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<std::size_t> FaceLattice::f_vector() const {
    std::vector<std::size_t> f(std::max(dim_, 0), 0);
    for (const auto& fc : faces_)
        if (fc.dim >= 0 && fc.dim < dim_) ++f[fc.dim];
    return f;
}

FaceLattice FaceLattice::interval_above(int id, std::vector<int>* map) const {
    const Face& base = faces_[id];
    const auto& atoms = up_[id];
    std::vector<Face> out;
    std::vector<int> src;
    for (std::size_t h = 0; h < faces_.size(); ++h) {
        if (!subset_of(base.mask, faces_[h].mask)) continue;
        Face f;
        for (std::size_t j = 0; j < atoms.size(); ++j)
            if (subset_of(faces_[atoms[j]].mask, faces_[h].mask)) f.mask |= Mask{1} << j;
        f.vertices = mask_to_list(f.mask);
        f.dim = faces_[h].dim - base.dim - 1;
        out.push_back(std::move(f));
        src.push_back(static_cast<int>(h));
    }
    FaceLattice lat(dim_ - base.dim - 1, static_cast<int>(atoms.size()), out);
    if (map) {
        map->assign(lat.size(), -1);
        for (std::size_t j = 0; j < out.size(); ++j) (*map)[*lat.find(out[j].mask)] = src[j];
    }
    return lat;
}

FaceLattice FaceLattice::interval_below(int id, std::vector<int>* map) const {
    const Face& top = faces_[id];
    std::vector<int> pos(num_atoms_, -1);
    for (std::size_t j = 0; j < top.vertices.size(); ++j) pos[top.vertices[j]] = static_cast<int>(j);
    std::vector<Face> out;
    std::vector<int> src;
    for (std::size_t g = 0; g < faces_.size(); ++g) {
        if (!subset_of(faces_[g].mask, top.mask)) continue;
        Face f;
        for (int v : faces_[g].vertices) f.mask |= Mask{1} << pos[v];
        f.vertices = mask_to_list(f.mask);
        f.dim = faces_[g].dim;
        out.push_back(std::move(f));
        src.push_back(static_cast<int>(g));
    }
    FaceLattice lat(top.dim, static_cast<int>(top.vertices.size()), out);
    if (map) {
        map->assign(lat.size(), -1);
        for (std::size_t j = 0; j < out.size(); ++j) (*map)[*lat.find(out[j].mask)] = src[j];
    }
    return lat;
}

bool is_simple(const FaceLattice& lat) {
    if (lat.dim() <= 1) return true;
    for (int a = 0; a < lat.num_atoms(); ++a)
        if (static_cast<int>(lat.edges_at(a).size()) != lat.dim()) return false;
    return true;
}

std::vector<Mask> pulling_triangulation(const FaceLattice& lat, int id) {
    std::map<int, std::vector<Mask>> memo;
    std::function<const std::vector<Mask>&(int)> rec = [&](int f) -> const std::vector<Mask>& {
        auto it = memo.find(f);
        if (it != memo.end()) return it->second;
        const Face& face = lat.face(f);
        std::vector<Mask> out;
        if (static_cast<int>(face.vertices.size()) == face.dim + 1) {
            out.push_back(face.mask);
        } else {
            Mask apex = Mask{1} << face.vertices.front();
            for (int g : lat.down(f)) {
                if (lat.face(g).mask & apex) continue;
                for (Mask s : rec(g)) out.push_back(s | apex);
            }
        }
        return memo.emplace(f, std::move(out)).first->second;
    };
    return rec(id);
}

std::optional<std::vector<int>> combinatorially_equivalent(const FaceLattice& a, const FaceLattice& b) {
    if (a.dim() != b.dim() || a.size() != b.size() || a.num_atoms() != b.num_atoms()) return std::nullopt;
    for (int d = -1; d <= a.dim(); ++d)
        if (a.faces_of_dim(d).size() != b.faces_of_dim(d).size()) return std::nullopt;

    int na = a.num_atoms();
    auto adjacency = [](const FaceLattice& l) {
        std::vector<Mask> adj(l.num_atoms(), 0);
        for (const auto& f : l.faces())
            if (f.dim == 1 && f.vertices.size() == 2) {
                adj[f.vertices[0]] |= Mask{1} << f.vertices[1];
                adj[f.vertices[1]] |= Mask{1} << f.vertices[0];
            }
        return adj;
    };
    auto adj_a = adjacency(a), adj_b = adjacency(b);
    auto facet_masks = [](const FaceLattice& l) {
        std::vector<Mask> m;
        for (int f : l.facets()) m.push_back(l.face(f).mask);
        return m;
    };
    auto fa = facet_masks(a), fb = facet_masks(b);
    std::unordered_set<Mask> b_masks;
    for (const auto& f : b.faces()) b_masks.insert(f.mask);

    // BFS order over the edge graph keeps the adjacency filter effective.
    std::vector<int> order;
    std::vector<char> seen(na, 0);
    for (int s = 0; s < na; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int u = order[head++];
            for (int v : mask_to_list(adj_a[u]))
                if (!seen[v]) {
                    seen[v] = 1;
                    order.push_back(v);
                }
        }
    }

    std::vector<int> phi(na, -1);
    Mask used = 0;
    auto image = [&](Mask m) {
        Mask r = 0;
        for (int v : mask_to_list(m))
            if (phi[v] >= 0) r |= Mask{1} << phi[v];
        return r;
    };
    auto partial_ok = [&](int atom) {
        for (Mask fm : fa) {
            if (!(fm >> atom & 1)) continue;
            Mask img = image(fm);
            int sz = popcount(fm);
            bool found = false;
            for (Mask g : fb)
                if (popcount(g) == sz && subset_of(img, g)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
        if (k == order.size()) {
            for (const auto& f : a.faces())
                if (!b_masks.count(image(f.mask))) return false;
            return true;
        }
        int u = order[k];
        for (int c = 0; c < na; ++c) {
            if (used >> c & 1) continue;
            if (popcount(adj_a[u]) != popcount(adj_b[c])) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                int w = order[j];
                bool ea = adj_a[u] >> w & 1;
                bool eb = adj_b[c] >> phi[w] & 1;
                ok = ea == eb;
            }
            if (!ok) continue;
            phi[u] = c;
            used |= Mask{1} << c;
            if (partial_ok(u) && search(k + 1)) return true;
            phi[u] = -1;
            used &= ~(Mask{1} << c);
        }
        return false;
    };
    if (!search(0)) return std::nullopt;

    std::vector<int> fmap(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) fmap[i] = *b.find(image(a.face(static_cast<int>(i)).mask));
    return fmap;
}

// ---------------------------------------------------------------- polytope

Vec AffineChart::to_intrinsic(std::span<const Rat> x) const {
    if (identity) return Vec(x.begin(), x.end());
    Vec d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - origin[i];
    auto c = coords.coordinates(d);
    if (!c) fail(ErrorKind::Precondition, "point is not in the affine hull");
    return *c;
}

Vec AffineChart::to_ambient(std::span<const Rat> y) const {
    if (identity) return Vec(y.begin(), y.end());
    Vec x = origin;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!y[i].is_zero()) x[j] += y[i] * basis[i][j];
    return x;
}

struct Polytope::Geometry {
    int dim = 0;
    AffineChart chart;
    std::vector<Vec> intrinsic;
    std::vector<Halfspace> facets;
    std::vector<Mask> facet_masks;
    FaceLattice lattice;
};

namespace {

void enumerate_facets(const std::vector<Vec>& pts, int d, std::vector<Halfspace>& facets,
                      std::vector<Mask>& masks) {
    int nv = static_cast<int>(pts.size());
    if (d == 0) return;
    for_each_subset(nv, d, [&](const std::vector<int>& s) {
        Mask sm = list_to_mask(s);
        for (Mask m : masks)
            if (subset_of(sm, m)) return;
        Mat diff(d - 1, d);
        for (int r = 1; r < d; ++r)
            for (int c = 0; c < d; ++c) diff(r - 1, c) = pts[s[r]][c] - pts[s[0]][c];
        auto ker = kernel_basis(diff);
        if (ker.size() != 1) return;
        Vec a = primitive(ker[0]);
        Rat b = dot(a, pts[s[0]]);
        int pos = 0, neg = 0;
        Mask on = 0;
        for (int k = 0; k < nv; ++k) {
            int sg = (dot(a, pts[k]) - b).sign();
            if (sg > 0) ++pos;
            else if (sg < 0) ++neg;
            else on |= Mask{1} << k;
        }
        if (pos > 0 && neg > 0) return;
        if (pos > 0) {
            for (auto& x : a) x = -x;
            b = -b;
        }
        masks.push_back(on);
        facets.push_back({std::move(a), std::move(b)});
    });
}

}  // namespace

Polytope::Polytope(int ambient_dim, std::vector<Vec> points) : n_(ambient_dim) {
    if (ambient_dim < 0) fail(ErrorKind::InvalidInput, "negative ambient dimension");
    for (auto& p : points) {
        if (static_cast<int>(p.size()) != n_)
            fail(ErrorKind::InvalidInput, "vertex has " + std::to_string(p.size()) + " coordinates, expected " +
                                              std::to_string(n_));
        if (std::find(vertices_.begin(), vertices_.end(), p) == vertices_.end()) vertices_.push_back(std::move(p));
    }
    if (vertices_.empty()) fail(ErrorKind::InvalidInput, "polytope has no vertices");
    if (vertices_.size() > 64) fail(ErrorKind::Precondition, "more than 64 vertices is not supported");

    auto g = std::make_shared<Geometry>();
    // Chart: greedy basis of independent differences from the first vertex.
    Echelon e(n_);
    std::vector<Vec> basis;
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        Vec d(n_);
        for (int j = 0; j < n_; ++j) d[j] = vertices_[i][j] - vertices_[0][j];
        if (e.add(d)) basis.push_back(std::move(d));
    }
    g->dim = static_cast<int>(basis.size());
    if (g->dim == n_) {
        g->chart.identity = true;
        g->chart.origin = Vec(n_);
        for (int i = 0; i < n_; ++i) {
            Vec u(n_);
            u[i] = 1;
            g->chart.basis.push_back(std::move(u));
        }
        g->intrinsic = vertices_;
    } else {
        g->chart.origin = vertices_[0];
        g->chart.basis = basis;
        g->chart.coords = BasisCoordinates(basis, n_);
        for (const auto& v : vertices_) g->intrinsic.push_back(g->chart.to_intrinsic(v));
    }

    enumerate_facets(g->intrinsic, g->dim, g->facets, g->facet_masks);

    // Every input point must be cut out by the facets through it.
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        std::vector<Vec> normals;
        for (std::size_t f = 0; f < g->facets.size(); ++f)
            if (g->facet_masks[f] >> i & 1) normals.push_back(g->facets[f].normal);
        std::size_t r = normals.empty() ? 0 : rank(Mat::from_rows(normals, g->dim));
        if (static_cast<int>(r) != g->dim) fail(ErrorKind::InvalidInput, "point " + std::to_string(i) +
                                                                           " is not a vertex of the convex hull");
    }

    // Faces: closure of the facets under intersection.
    Mask all = full_mask(vertices_.size());
    std::set<Mask> seen{all, Mask{0}};
    std::vector<Mask> queue{all};
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (Mask fm : g->facet_masks) {
            Mask r = queue[h] & fm;
            if (seen.insert(r).second) queue.push_back(r);
        }
    std::vector<Face> faces;
    for (Mask m : seen) {
        Face f;
        f.mask = m;
        f.vertices = mask_to_list(m);
        std::vector<Vec> pts;
        for (int v : f.vertices) pts.push_back(g->intrinsic[v]);
        f.dim = affine_dim(pts);
        faces.push_back(std::move(f));
    }
    g->lattice = FaceLattice(g->dim, static_cast<int>(vertices_.size()), std::move(faces));
    geo_ = std::move(g);
}

int Polytope::dim() const { return geo_ ? geo_->dim : -1; }
const AffineChart& Polytope::chart() const { return geo_->chart; }
const std::vector<Vec>& Polytope::intrinsic_vertices() const { return geo_->intrinsic; }
const std::vector<Halfspace>& Polytope::intrinsic_facets() const { return geo_->facets; }
const std::vector<Mask>& Polytope::facet_masks() const { return geo_->facet_masks; }
const FaceLattice& Polytope::lattice() const { return geo_->lattice; }

std::vector<Halfspace> Polytope::ambient_facets() const {
    const auto& g = *geo_;
    if (g.chart.identity) return g.facets;
    // y = S^{-1} (x - o)|_pivots, hence <a, y> = <S^{-T} a, (x - o)|_pivots>.
    Mat bt = Mat::from_rows(g.chart.basis, n_);
    Mat w = bt;
    auto piv = rref_in_place(w);
    std::size_t d = g.chart.basis.size();
    Mat s(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s(i, j) = g.chart.basis[j][piv[i]];
    Mat sinv_t = inverse(s)->transpose();
    std::vector<Halfspace> out;
    for (const auto& h : g.facets) {
        Vec c = sinv_t * h.normal;
        Vec a(n_);
        for (std::size_t i = 0; i < d; ++i) a[piv[i]] = c[i];
        Rat off = h.offset + dot(a, g.chart.origin);
        out.push_back({std::move(a), std::move(off)});
    }
    return out;
}

Polytope Polytope::intrinsic() const { return Polytope(dim(), intrinsic_vertices()); }

Polytope Polytope::face_polytope(int face_id) const {
    const Face& f = lattice().face(face_id);
    if (f.vertices.empty()) fail(ErrorKind::Precondition, "the empty face is not a polytope");
    std::vector<Vec> pts;
    for (int v : f.vertices) pts.push_back(vertices_[v]);
    return Polytope(n_, std::move(pts));
}

Vec Polytope::barycenter(const std::vector<int>& verts) const {
    Vec b(n_);
    for (int v : verts)
        for (int j = 0; j < n_; ++j) b[j] += vertices_[v][j];
    for (auto& x : b) x /= Rat(static_cast<long>(verts.size()));
    return b;
}

std::vector<Halfspace> facets_from_vertices(const Polytope& p) {
    if (p.num_vertices() == 0) fail(ErrorKind::InvalidInput, "degenerate polytope");
    return p.intrinsic_facets();
}

const FaceLattice& face_lattice(const Polytope& p) { return p.lattice(); }

Rat normalized_volume(const Polytope& p) {
    const auto& lat = p.lattice();
    const auto& pts = p.intrinsic_vertices();
    int d = p.dim();
    Rat total;
    for (Mask s : pulling_triangulation(lat, lat.top_id())) {
        auto vs = mask_to_list(s);
        Mat m(d, d);
        for (int r = 1; r <= d; ++r)
            for (int c = 0; c < d; ++c) m(r - 1, c) = pts[vs[r]][c] - pts[vs[0]][c];
        total += abs(determinant(m));
    }
    return total;
}

}  // namespace lw
