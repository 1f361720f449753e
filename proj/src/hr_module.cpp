#include "lw/hr_module.hpp"

#include <algorithm>
#include <string>

#include "lw/cohomology.hpp"
#include "lw/error.hpp"

namespace lw {

namespace {

int mod2(int k) { return ((k % 2) + 2) % 2; }

// (-1)^e
int neg_one_pow(int e) { return mod2(e) == 0 ? 1 : -1; }

Mat scaled(const Mat& a, const Rat& s) {
    Mat r = a;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= s;
    return r;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) r(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return r;
}

HRModule empty_module(int m) {
    HRModule w;
    w.m = m;
    w.dims.assign(2 * m + 1, 0);
    w.pairing.assign(2 * m + 1, Mat());
    w.lefschetz.assign(2 * m + 1, Mat());
    return w;
}

void fill_shapes(HRModule& w) {
    for (int k = -w.m; k <= w.m; ++k) {
        if (w.pairing[k + w.m].rows() == 0 && w.pairing[k + w.m].cols() == 0)
            w.pairing[k + w.m] = Mat(w.dim(-k), w.dim(k));
        if (k <= w.m - 2 && w.lefschetz[k + w.m].rows() == 0 && w.lefschetz[k + w.m].cols() == 0)
            w.lefschetz[k + w.m] = Mat(w.dim(k + 2), w.dim(k));
    }
}

std::string at(int k) { return " at weight " + std::to_string(k); }

}  // namespace

Mat HRModule::L(int k) const {
    if (k < -m || k > m - 2) return Mat(dim(k + 2), dim(k));
    return lefschetz[k + m];
}

Mat HRModule::L_power(int k, int j) const {
    Mat r = Mat::identity(dim(k));
    for (int s = 0; s < j; ++s) r = L(k + 2 * s) * r;
    return r;
}

std::size_t HRModule::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims) t += d;
    return t;
}

HRModule simple_module(int m) {
    if (m < 0) fail(ErrorKind::Precondition, "simple module index must be non-negative");
    HRModule w = empty_module(m);
    for (int k = -m; k <= m; k += 2) w.dims[k + m] = 1;
    fill_shapes(w);
    // <1,1> = (-i)^m = i^k * (-1)^m (-1)^{(m-k)/2}
    for (int k = -m; k <= m; k += 2) w.pairing[k + m](0, 0) = neg_one_pow(m) * neg_one_pow((m - k) / 2);
    for (int k = -m; k <= m - 2; k += 2) w.lefschetz[k + m](0, 0) = 1;
    return w;
}

void validate(const HRModule& w) {
    if (w.m < 0) fail(ErrorKind::InvalidInput, "negative weight range");
    std::size_t n = 2 * w.m + 1;
    if (w.dims.size() != n || w.pairing.size() != n || w.lefschetz.size() != n)
        fail(ErrorKind::InvalidInput, "HR-module arrays have the wrong length");
    for (int k = -w.m; k <= w.m; ++k) {
        if (mod2(k) != mod2(w.m) && w.dim(k) != 0) fail(ErrorKind::InvalidInput, "component of the wrong parity" + at(k));
        const Mat& g = w.G(k);
        if (g.rows() != w.dim(-k) || g.cols() != w.dim(k)) fail(ErrorKind::InvalidInput, "pairing shape" + at(k));
        if (w.dim(k) != w.dim(-k)) fail(ErrorKind::InvalidInput, "pairing is degenerate" + at(k));
        if (w.dim(k) > 0 && rank(g) != w.dim(k)) fail(ErrorKind::InvalidInput, "pairing is degenerate" + at(k));
        // <y,x> = <x,y>: G_{-k}^T = (-1)^k G_k
        if (!(w.G(-k).transpose() == scaled(g, neg_one_pow(k))))
            fail(ErrorKind::InvalidInput, "pairing is not symmetric" + at(k));
        if (k <= w.m - 2) {
            const Mat& l = w.lefschetz[k + w.m];
            if (l.rows() != w.dim(k + 2) || l.cols() != w.dim(k))
                fail(ErrorKind::InvalidInput, "Lefschetz shape" + at(k));
        }
    }
    // <Lx, y> = <x, Ly> for x in W^{-k-2}, y in W^k: L^T G_k = -G_{k+2} L
    for (int k = -w.m; k <= w.m - 2; ++k) {
        Mat lhs = w.L(-k - 2).transpose() * w.G(k);
        Mat rhs = -(w.G(k + 2) * w.L(k));
        if (!(lhs == rhs)) fail(ErrorKind::InvalidInput, "L is not self-adjoint" + at(k));
    }
}

HRModuleReport check_hr_module(const HRModule& w) {
    validate(w);
    HRModuleReport rep;
    for (int k = mod2(w.m); k <= w.m; k += 2) {
        HRModuleReport::Entry e;
        e.k = k;
        auto prim = kernel_basis(w.L_power(-k, k + 1));
        e.primitive_dim = prim.size();
        // i^k s_k(x, y) = i^k i^k x^T G_k L^k y
        Mat form = scaled(w.G(k) * w.L_power(-k, k), neg_one_pow(k));
        Mat r(prim.size(), prim.size());
        for (std::size_t i = 0; i < prim.size(); ++i)
            for (std::size_t j = 0; j < prim.size(); ++j) r(i, j) = dot(prim[i], form * prim[j]);
        e.signature = signature_of(r);
        e.positive = e.signature.neg == 0 && e.signature.zero == 0;
        rep.ok = rep.ok && e.positive;
        rep.entries.push_back(e);
    }
    return rep;
}

bool is_hr_module(const HRModule& w) { return check_hr_module(w).ok; }

std::size_t tag_dim(const SimpleTag& t, int k) {
    std::size_t d = 0;
    int a = k < 0 ? -k : k;
    for (auto [m, c] : t)
        if (m >= a && mod2(m - a) == 0) d += c;
    return d;
}

SimpleTag decompose(const HRModule& w) {
    auto rep = check_hr_module(w);
    if (!rep.ok) fail(ErrorKind::Precondition, "module is not an HR-module");
    SimpleTag t;
    for (const auto& e : rep.entries)
        if (e.primitive_dim > 0) t[e.k] = e.primitive_dim;
    for (int k = -w.m; k <= w.m; ++k)
        if (tag_dim(t, k) != w.dim(k)) fail(ErrorKind::Internal, "decomposition does not reconstruct the dimensions" + at(k));
    return t;
}

HRModule direct_sum(const HRModule& a, const HRModule& b) {
    if (a.total_dim() > 0 && b.total_dim() > 0 && mod2(a.m) != mod2(b.m))
        fail(ErrorKind::Precondition, "direct sum of modules of different parity");
    int m = std::max(a.m, b.m);
    if (a.total_dim() == 0) m = b.m;
    if (b.total_dim() == 0) m = a.m;
    HRModule w = empty_module(m);
    for (int k = -m; k <= m; ++k) w.dims[k + m] = a.dim(k) + b.dim(k);
    auto block = [](const Mat& x, const Mat& y, std::size_t xr, std::size_t xc, std::size_t yr, std::size_t yc) {
        Mat r(xr + yr, xc + yc);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j) r(xr + i, xc + j) = y(i, j);
        return r;
    };
    for (int k = -m; k <= m; ++k) {
        Mat ga = k >= -a.m && k <= a.m ? a.G(k) : Mat(0, 0);
        Mat gb = k >= -b.m && k <= b.m ? b.G(k) : Mat(0, 0);
        w.pairing[k + m] = block(ga, gb, a.dim(-k), a.dim(k), b.dim(-k), b.dim(k));
        if (k <= m - 2)
            w.lefschetz[k + m] = block(a.L(k), b.L(k), a.dim(k + 2), a.dim(k), b.dim(k + 2), b.dim(k));
    }
    return w;
}

namespace {

// Basis of (A (x) B)^k: pairs (a-weight, i, j) ordered by a-weight, i, j.
struct TensorIndex {
    const HRModule& a;
    const HRModule& b;
    // offset of the (p, k - p) block inside weight k
    std::size_t offset(int k, int p) const {
        std::size_t o = 0;
        for (int q = -a.m; q < p; ++q) o += a.dim(q) * b.dim(k - q);
        return o;
    }
};

}  // namespace

HRModule tensor(const HRModule& a, const HRModule& b) {
    int m = a.m + b.m;
    HRModule w = empty_module(m);
    TensorIndex ti{a, b};
    for (int k = -m; k <= m; ++k)
        for (int p = -a.m; p <= a.m; ++p) w.dims[k + m] += a.dim(p) * b.dim(k - p);
    fill_shapes(w);
    for (int k = -m; k <= m; ++k) {
        // <x (x) y, x' (x) y'> = <x, x'><y, y'>: block (-p, -(k-p)) x (p, k-p) is G_p (x) G_{k-p}
        Mat& g = w.pairing[k + m];
        for (int p = -a.m; p <= a.m; ++p) {
            int q = k - p;
            if (a.dim(p) == 0 || b.dim(q) == 0) continue;
            Mat blk = kron(a.G(p), b.G(q));
            std::size_t r0 = ti.offset(-k, -p), c0 = ti.offset(k, p);
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j) g(r0 + i, c0 + j) = blk(i, j);
        }
        if (k > m - 2) continue;
        Mat& l = w.lefschetz[k + m];
        for (int p = -a.m; p <= a.m; ++p) {
            int q = k - p;
            if (a.dim(p) == 0 || b.dim(q) == 0) continue;
            std::size_t c0 = ti.offset(k, p);
            // L x (x) y lands in block (p+2, q); x (x) L y in block (p, q+2)
            if (a.dim(p + 2) > 0) {
                Mat blk = kron(a.L(p), Mat::identity(b.dim(q)));
                std::size_t r0 = ti.offset(k + 2, p + 2);
                for (std::size_t i = 0; i < blk.rows(); ++i)
                    for (std::size_t j = 0; j < blk.cols(); ++j) l(r0 + i, c0 + j) += blk(i, j);
            }
            if (b.dim(q + 2) > 0) {
                Mat blk = kron(Mat::identity(a.dim(p)), b.L(q));
                std::size_t r0 = ti.offset(k + 2, p);
                for (std::size_t i = 0; i < blk.rows(); ++i)
                    for (std::size_t j = 0; j < blk.cols(); ++j) l(r0 + i, c0 + j) += blk(i, j);
            }
        }
    }
    return w;
}

Submodule full_submodule(const HRModule& w) {
    Submodule u;
    u.ambient = &w;
    for (int k = -w.m; k <= w.m; ++k)
        for (std::size_t i = 0; i < w.dim(k); ++i) {
            Vec e(w.dim(k));
            e[i] = 1;
            u.span[k].push_back(std::move(e));
        }
    return u;
}

Submodule generated_submodule(const HRModule& w, int k, const Vec& v) {
    if (v.size() != w.dim(k)) fail(ErrorKind::Precondition, "vector has the wrong dimension" + at(k));
    Submodule u;
    u.ambient = &w;
    Vec x = v;
    for (int j = k; j <= w.m && !is_zero(x); j += 2) {
        u.span[j].push_back(x);
        x = w.L(j) * x;
    }
    return u;
}

bool numerical_pd(const Submodule& u) {
    if (!u.ambient) fail(ErrorKind::Precondition, "submodule without ambient module");
    const HRModule& w = *u.ambient;
    auto dim_of = [&](int k) -> std::size_t {
        auto it = u.span.find(k);
        if (it == u.span.end() || it->second.empty()) return 0;
        return rank(Mat::from_rows(it->second, w.dim(k)));
    };
    for (const auto& [k, vs] : u.span) {
        if (k < -w.m || k > w.m) fail(ErrorKind::Precondition, "submodule weight out of range");
        for (const auto& v : vs)
            if (v.size() != w.dim(k)) fail(ErrorKind::Precondition, "vector has the wrong dimension" + at(k));
        if (k + 2 > w.m) continue;
        Echelon e(w.dim(k + 2));
        if (auto it = u.span.find(k + 2); it != u.span.end())
            for (const auto& v : it->second) e.add(v);
        for (const auto& v : vs)
            if (!e.contains(w.L(k) * v)) fail(ErrorKind::Precondition, "subspace is not closed under L" + at(k));
    }
    for (int k = 1; k <= w.m; ++k)
        if (dim_of(k) != dim_of(-k)) return false;
    return true;
}

HRModule from_engine(const CihModel& cm) {
    int n = cm.n();
    HRModule w = empty_module(n);
    for (int k = -n; k <= n; ++k)
        if (mod2(k) == mod2(n)) w.dims[k + n] = cm.b((n + k) / 2);
    fill_shapes(w);
    for (int k = -n; k <= n; ++k) {
        if (mod2(k) != mod2(n)) continue;
        int d1 = (n - k) / 2, d2 = (n + k) / 2;
        // (-i)^n eps(x y) = i^k G: G = (-1)^n (-1)^{(n-k)/2} eps(x y)
        Rat s = neg_one_pow(n) * neg_one_pow(d1);
        Mat& g = w.pairing[k + n];
        for (std::size_t i = 0; i < cm.b(d1); ++i)
            for (std::size_t j = 0; j < cm.b(d2); ++j) g(i, j) = s * cm.pair(cm.lift(d1, i), cm.lift(d2, j), 0);
        if (k <= n - 2) w.lefschetz[k + n] = cm.lefschetz((n + k) / 2);
    }
    return w;
}

}  // namespace lw
