#include "lw/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "lw/error.hpp"

namespace lw {

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

bool is_zero(std::span<const Rat> v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::Precondition, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) fail(ErrorKind::Precondition, "ragged matrix columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::Precondition, "matrix product dimension mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
        }
    return r;
}

Vec Mat::operator*(std::span<const Rat> v) const {
    if (cols_ != v.size()) fail(ErrorKind::Precondition, "matrix-vector dimension mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r[i] = dot(row(i), v);
    return r;
}

Mat Mat::operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

std::vector<std::size_t> rref_in_place(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const Mat& m) {
    Mat w = m;
    return rref_in_place(w).size();
}

std::vector<Vec> kernel_basis(const Mat& m) {
    Mat w = m;
    auto pivots = rref_in_place(w);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : pivots) is_pivot[p] = 1;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& m, std::span<const Rat> b) {
    if (b.size() != m.rows()) fail(ErrorKind::Precondition, "solve: right-hand side length mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::Precondition, "inverse of non-square matrix");
    std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref_in_place(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Rat determinant(const Mat& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::Precondition, "determinant of non-square matrix");
    Mat w = m;
    std::size_t n = w.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w(p, c).is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
            det = -det;
        }
        det *= w(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (w(i, c).is_zero()) continue;
            Rat f = w(i, c) / w(c, c);
            for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return det;
}

bool is_symmetric(const Mat& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

Signature signature_of(const Mat& sym) {
    if (!is_symmetric(sym)) fail(ErrorKind::Precondition, "signature_of: matrix is not symmetric");
    Mat a = sym;
    std::vector<std::size_t> active(a.rows());
    std::iota(active.begin(), active.end(), 0);
    Signature s;

    auto drop = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

    while (!active.empty()) {
        // Largest absolute diagonal pivot first.
        std::optional<std::size_t> best;
        for (auto i : active)
            if (!a(i, i).is_zero() && (!best || abs(a(i, i)) > abs(a(*best, *best)))) best = i;

        if (best) {
            std::size_t k = *best;
            Rat piv = a(k, k);
            (piv.sign() > 0 ? s.pos : s.neg) += 1;
            drop(k);
            for (auto r : active) {
                if (a(r, k).is_zero()) continue;
                Rat f = a(r, k) / piv;
                for (auto c : active)
                    if (!a(k, c).is_zero()) a(r, c) -= f * a(k, c);
            }
            continue;
        }

        // Zero diagonal: reduce a hyperbolic 2x2 block on the first nonzero
        // off-diagonal entry.
        std::optional<std::pair<std::size_t, std::size_t>> off;
        for (std::size_t x = 0; x < active.size() && !off; ++x)
            for (std::size_t y = x + 1; y < active.size() && !off; ++y)
                if (!a(active[x], active[y]).is_zero()) off = {active[x], active[y]};
        if (!off) {
            s.zero += active.size();
            break;
        }
        auto [i, j] = *off;
        Rat b = a(i, j);
        s.pos += 1;
        s.neg += 1;
        drop(i);
        drop(j);
        // Schur complement with B = [[0,b],[b,0]], B^{-1} = [[0,1/b],[1/b,0]].
        std::vector<Rat> ri(a.rows()), rj(a.rows());
        for (auto r : active) {
            ri[r] = a(r, i);
            rj[r] = a(r, j);
        }
        for (auto r : active)
            for (auto c : active) {
                Rat corr = ri[r] * rj[c] + rj[r] * ri[c];
                if (!corr.is_zero()) a(r, c) -= corr / b;
            }
    }
    return s;
}

Vec Echelon::reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rat& f = v[pivots_[r]];
        if (f.is_zero()) continue;
        Rat coef = f;
        const Vec& row = rows_[r];
        for (std::size_t j = pivots_[r]; j < dim_; ++j)
            if (!row[j].is_zero()) v[j] -= coef * row[j];
    }
    return v;
}

bool Echelon::contains(Vec v) const { return is_zero(reduce(std::move(v))); }

bool Echelon::add(Vec v) {
    if (v.size() != dim_) fail(ErrorKind::Precondition, "Echelon::add: dimension mismatch");
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < dim_ && v[p].is_zero()) ++p;
    if (p == dim_) return false;
    Rat inv = Rat(1) / v[p];
    for (std::size_t j = p; j < dim_; ++j)
        if (!v[j].is_zero()) v[j] *= inv;
    // Keep the basis fully reduced.
    for (auto& row : rows_) {
        if (row[p].is_zero()) continue;
        Rat f = row[p];
        for (std::size_t j = p; j < dim_; ++j)
            if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

BasisCoordinates::BasisCoordinates(std::vector<Vec> basis, std::size_t dim) : basis_(std::move(basis)) {
    std::size_t r = basis_.size();
    Mat bt = Mat::from_rows(basis_, dim);  // r x dim
    Mat w = bt;
    pivot_cols_ = rref_in_place(w);
    if (pivot_cols_.size() != r) fail(ErrorKind::Internal, "BasisCoordinates: basis is not independent");
    Mat sub(r, r);  // sub(i, j) = basis_j[pivot_i]
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub(i, j) = basis_[j][pivot_cols_[i]];
    auto inv = inverse(sub);
    if (!inv) fail(ErrorKind::Internal, "BasisCoordinates: singular pivot block");
    inv_ = std::move(*inv);
}

std::optional<Vec> BasisCoordinates::coordinates(std::span<const Rat> v) const {
    std::size_t r = basis_.size();
    Vec rhs(r);
    for (std::size_t i = 0; i < r; ++i) rhs[i] = v[pivot_cols_[i]];
    Vec c = inv_ * rhs;
    for (std::size_t j = 0; j < v.size(); ++j) {
        Rat s;
        for (std::size_t i = 0; i < r; ++i)
            if (!c[i].is_zero() && !basis_[i][j].is_zero()) s += c[i] * basis_[i][j];
        if (s != v[j]) return std::nullopt;
    }
    return c;
}

}  // namespace lw
