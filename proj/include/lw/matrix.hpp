#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lw/rational.hpp"

namespace lw {

using Vec = std::vector<Rat>;

Rat dot(std::span<const Rat> a, std::span<const Rat> b);
bool is_zero(std::span<const Rat> v);

// Dense row-major matrix of exact rationals.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Mat from_columns(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<const Rat> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
    Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
    Vec col_vec(std::size_t j) const;

    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Vec operator*(std::span<const Rat> v) const;
    Mat operator-() const;
    friend bool operator==(const Mat& a, const Mat& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

// Reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref_in_place(Mat& m);

std::size_t rank(const Mat& m);

// Basis of {x : m x = 0}; count = cols - rank.
std::vector<Vec> kernel_basis(const Mat& m);

// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& m, std::span<const Rat> b);

std::optional<Mat> inverse(const Mat& m);
Rat determinant(const Mat& m);

struct Signature {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t zero = 0;

    long sign() const { return static_cast<long>(pos) - static_cast<long>(neg); }
    std::size_t dimension() const { return pos + neg + zero; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

bool is_symmetric(const Mat& m);

// Signature of a symmetric form by congruence diagonalization.  Throws on
// non-symmetric input.
Signature signature_of(const Mat& sym);

// Incrementally maintained RREF basis of a subspace of Q^dim.
class Echelon {
public:
    explicit Echelon(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    // Reduces v against the current basis; true when v was independent
    // (and has been added).
    bool add(Vec v);
    bool contains(Vec v) const;
    Vec reduce(Vec v) const;
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

// Coordinates with respect to a fixed basis of a subspace: for v in the
// span of `basis`, returns c with sum c_i basis_i = v.
class BasisCoordinates {
public:
    BasisCoordinates() = default;
    explicit BasisCoordinates(std::vector<Vec> basis, std::size_t dim);

    std::size_t size() const { return basis_.size(); }
    std::optional<Vec> coordinates(std::span<const Rat> v) const;

private:
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivot_cols_;
    Mat inv_;  // inverse of the square submatrix on pivot_cols_
};

}  // namespace lw
