#include "lcbal/linalg.hpp"

#include "lcbal/errors.hpp"

#include <utility>

namespace lcbal {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw StructuralError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw StructuralError("matrix product shape mismatch");
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0)
                    m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw StructuralError("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) += b(i, j);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    return a + Rational(-1) * b;
}

Matrix operator*(const Rational& s, const Matrix& a)
{
    Matrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) *= s;
    return m;
}

Vector operator*(const Matrix& a, const Vector& v)
{
    if (a.cols() != v.size())
        throw StructuralError("matrix-vector shape mismatch");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && v[j] != 0)
                out[i] += a(i, j) * v[j];
    return out;
}

Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw StructuralError("dot product length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

RowEchelon rref(Matrix m)
{
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != lead_row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(lead_row, j));
        Rational inv = 1 / m(lead_row, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(lead_row, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c) == 0)
                continue;
            Rational f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(lead_row, j) != 0)
                    m(r, j) -= f * m(lead_row, j);
        }
        out.pivots.push_back(c);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m)
{
    return rref(m).pivots.size();
}

std::vector<Vector> nullspace(const Matrix& m)
{
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return row_basis(basis, m.cols());
}

std::vector<Vector> row_basis(const std::vector<Vector>& rows, std::size_t cols)
{
    if (rows.empty())
        return {};
    RowEchelon e = rref(Matrix::from_rows(rows, cols));
    std::vector<Vector> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        out.push_back(e.reduced.row(r));
    return out;
}

Rational determinant(Matrix m)
{
    if (!m.square())
        throw StructuralError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0)
                continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m)
{
    if (!m.square())
        throw StructuralError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        throw ContractError("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Vector solve(const Matrix& a, const Vector& b)
{
    if (!a.square())
        throw StructuralError("solve expects a square matrix");
    LinearSolution s = solve_any(a, b);
    if (!s.ok || rank(a) != a.rows())
        throw ContractError("linear system is singular");
    return s.x;
}

LinearSolution solve_any(const Matrix& a, const Vector& b)
{
    if (a.rows() != b.size())
        throw StructuralError("right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RowEchelon e = rref(aug);
    LinearSolution out;
    if (!e.pivots.empty() && e.pivots.back() == a.cols())
        return out;
    out.ok = true;
    out.x.assign(a.cols(), Rational(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        out.x[e.pivots[r]] = e.reduced(r, a.cols());
    return out;
}

std::vector<Rational> leading_minors(const Matrix& m)
{
    if (!m.square())
        throw StructuralError("leading minors of a non-square matrix");
    std::vector<Rational> out;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        Matrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                sub(i, j) = m(i, j);
        out.push_back(determinant(sub));
    }
    return out;
}

bool is_symmetric(const Matrix& m)
{
    if (!m.square())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i))
                return false;
    return true;
}

bool is_positive_semidefinite(const Matrix& m)
{
    if (!is_symmetric(m))
        return false;
    const std::size_t n = m.rows();
    if (n > 20)
        throw ContractError("principal-minor PSD test limited to n <= 20");
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1UL << i))
                idx.push_back(i);
        Matrix sub(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                sub(i, j) = m(idx[i], idx[j]);
        if (determinant(sub) < 0)
            return false;
    }
    return true;
}

} // namespace lcbal
