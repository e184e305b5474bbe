#pragma once
// Exact integer/rational linear algebra: Smith normal form, cokernels, duals.

#include "toricwc/rational.hpp"

#include <cstddef>

namespace twc {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }
    /// Builds a matrix whose rows are the given vectors.
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix M(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
        return M;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Matrix operator*(const Matrix& b) const {
        if (cols_ != b.rows_) throw Error("DimensionMismatch", "matrix product dimensions");
        Matrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if ((*this)(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += (*this)(i, k) * b(k, j);
            }
        return c;
    }
    std::vector<T> operator*(const std::vector<T>& v) const {
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }
    bool operator==(const Matrix& b) const {
        return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& A);

struct SnfDecomposition {
    IntMatrix U, S, V;  // U*A*V == S
    /// Nonzero diagonal entries d_1 | d_2 | ..., all positive.
    std::vector<Int> diagonal() const;
};

SnfDecomposition smith_normal_form(const IntMatrix& A);

/// Z^free_rank + sum Z/torsion_i together with beta: Z^m -> that group.
/// projection rows are ordered torsion first, then free; moduli[i] is the
/// torsion order of row i or 0 for a free row.
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    IntMatrix projection;
    std::vector<Int> moduli;

    /// beta(x), reduced into [0, d) on torsion coordinates.
    IntVec apply(const IntVec& x) const;
    /// Image of the i-th standard basis vector.
    IntVec image_of_basis(std::size_t i) const { return apply(unit(i)); }
    /// Free coordinates of beta(e_i), i.e. the image in N (x) R.
    IntVec free_part(const IntVec& n) const;
    std::size_t ambient_dim() const { return projection.cols(); }

  private:
    IntVec unit(std::size_t i) const;
};

/// Cokernel of A : Z^cols -> Z^rows.
FgAbGroup cokernel_with_projection(const IntMatrix& A);

/// Returns the m x r matrix whose rows are the characters D_i, for the
/// lattice L = ker(beta) with a chosen basis. Throws RankMismatch if
/// expected_rank is given and differs.
IntMatrix dual_characters(const FgAbGroup& N, long expected_rank = -1);

/// Basis (as columns) of the lattice spanned by the columns of G.
IntMatrix lattice_basis(const IntMatrix& G);
/// Basis (as columns) of the integer kernel {x : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);
/// True when the column spans of A and B agree as lattices.
bool same_column_lattice(const IntMatrix& A, const IntMatrix& B);

std::size_t rank(const RatMatrix& A);
inline std::size_t rank(const IntMatrix& A) { return rank(to_rat(A)); }
Rat determinant(const RatMatrix& A);
/// Inverse of a square nonsingular matrix; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& A);
/// Unique solution of A x = b for square nonsingular A.
RatVec solve(const RatMatrix& A, const RatVec& b);
/// Basis of the rational null space {x : A x = 0}.
std::vector<RatVec> nullspace(const RatMatrix& A);

std::string to_string(const IntMatrix& A);

}  // namespace twc
