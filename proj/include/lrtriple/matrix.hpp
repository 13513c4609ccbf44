#pragma once

// Dense exact matrices. Rows and columns are indexed 0..n-1; a (d+1)x(d+1)
// matrix is indexed 0..d.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "lrtriple/field.hpp"

namespace lrt {

using Vector = std::vector<Element>;

class Matrix {
public:
    Matrix() = default;
    // rows x cols zero matrix.
    Matrix(Field field, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& field, std::size_t n);
    // Every row must have the same length and every entry must lie in field.
    static Matrix from_rows(const Field& field, const std::vector<Vector>& rows);
    static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& cols);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    // Bounds-checked access; throws IndexOutOfRange.
    const Element& at(std::size_t i, std::size_t j) const;

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    // Row-major flattening.
    const Vector& entries() const { return data_; }

    Matrix transpose() const;
    bool is_zero() const;

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& y);
    Matrix& operator-=(const Matrix& y);
    Matrix& operator*=(const Element& c);

    friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
    friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
    friend Matrix operator*(Matrix x, const Element& c) { return x *= c; }
    friend Matrix operator*(const Element& c, Matrix x) { return x *= c; }
    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Vector operator*(const Matrix& x, const Vector& v);

    friend bool operator==(const Matrix& x, const Matrix& y);
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

// Matrix product of a sequence, left to right. At least one factor.
Matrix product(std::initializer_list<const Matrix*> factors);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Canonical basis: one vector per free column f (in increasing order) with
// entry 1 at f, 0 at the other free columns.
std::vector<Vector> nullspace(const Matrix& m);

Element determinant(const Matrix& m);
// Throws Singular.
Matrix inverse(const Matrix& m);
Element trace(const Matrix& m);

// Unique x with m x = b; std::nullopt when b is outside the column space.
// Throws DependentBasis when the columns of m are dependent.
std::optional<Vector> solve_unique(const Matrix& m, const Vector& b);

// Incremental row reduction over a fixed number of columns. Rows are kept in
// echelon form with leading entry 1; rref() back-substitutes.
class RowReducer {
public:
    RowReducer(Field field, std::size_t cols);

    // Returns true when the row increased the rank.
    bool add(Vector row);
    // Whether row lies in the current row space.
    bool in_span(Vector row) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    // Fully reduced rows sorted by pivot column.
    RrefResult rref() const;
    std::vector<Vector> nullspace() const;

private:
    void reduce(Vector& row) const;

    Field field_;
    std::size_t cols_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivot_of_row_;
    // pivot_row_[c] = index into rows_ of the row with pivot c, or npos.
    std::vector<std::size_t> pivot_row_;
};

// The (r,r)-entry is 1 and every other entry is 0; size (d+1)x(d+1).
Matrix elementary_F(std::size_t r, std::size_t d, const Field& field);
// (i,j)-entry delta_{i+j,d}.
Matrix exchange_Z(std::size_t d, const Field& field);
// diag(1, phi_1, phi_1 phi_2, ..., phi_1 ... phi_d).
Matrix diagonal_D(const Field& field, const Vector& phis);
// (i,j)-entry params[j-i] for i <= j, 0 below the diagonal.
Matrix toeplitz_upper(const Vector& params);

bool is_tridiagonal(const Matrix& m);
bool is_upper_triangular(const Matrix& m);
bool is_upper_toeplitz(const Matrix& m);

// c with y = c x, when x != 0 and such c exists.
std::optional<Element> proportionality(const Matrix& x, const Matrix& y);
// y is a nonzero multiple of x (both nonzero).
bool proportional(const Matrix& x, const Matrix& y);
// x divided by its first nonzero entry in row-major order; x itself when zero.
Matrix normalize_first_nonzero(const Matrix& x);

// Nonzero rows of the reduced row echelon form of the row-major flattenings
// of ms, each of length entries.
Matrix canonical_span(const Field& field, std::size_t entries, const std::vector<Matrix>& ms);
bool same_subspace(const std::vector<Matrix>& a, const std::vector<Matrix>& b);
// Rank of the row-major flattenings.
std::size_t span_dimension(const std::vector<Matrix>& ms);

// Columns of P are the basis vectors; independence is checked at construction.
struct VectorSpaceBasis {
    Matrix P;

    // Throws DependentBasis.
    explicit VectorSpaceBasis(Matrix columns);
    std::size_t size() const { return P.cols(); }
    Vector vector(std::size_t i) const { return P.column(i); }
    // Reversed order.
    VectorSpaceBasis inverted() const;
};

}  // namespace lrt
