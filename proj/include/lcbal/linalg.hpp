#pragma once

#include "lcbal/rational.hpp"

#include <cstddef>
#include <vector>

namespace lcbal {

using Vector = std::vector<Rational>;

/// Dense exact rational matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& v);

Rational dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
};

/// Reduced row-echelon form; pivots are taken left to right.
RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Kernel basis, returned as rows in reduced row-echelon form.
std::vector<Vector> nullspace(const Matrix& m);

/// Row-space basis in reduced row-echelon form (zero rows dropped).
std::vector<Vector> row_basis(const std::vector<Vector>& rows, std::size_t cols);

Rational determinant(Matrix m);
Matrix inverse(const Matrix& m); ///< throws ContractError when singular

/// Unique solution of a x = b for square nonsingular a.
Vector solve(const Matrix& a, const Vector& b);

/// Some solution of a x = b (free variables set to 0), or empty optional-like
/// flag via `ok`.
struct LinearSolution {
    bool ok = false;
    Vector x;
};
LinearSolution solve_any(const Matrix& a, const Vector& b);

/// Leading principal minors d_1..d_n.
std::vector<Rational> leading_minors(const Matrix& m);

/// Exact PSD test through all principal minors (n <= 20).
bool is_positive_semidefinite(const Matrix& m);
bool is_symmetric(const Matrix& m);

} // namespace lcbal
