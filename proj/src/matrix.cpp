#include "lrtriple/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lrt {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void require_field(const Field& a, const Field& b) {
    if (a != b) throw ContextMismatch("matrices over " + a.name() + " and " + b.name());
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_square(const Matrix& m, const char* what) {
    if (!m.is_square()) throw ShapeMismatch(std::string(what) + " needs a square matrix, got " + shape(m));
}

// Eliminates in place; returns pivot columns. Rows are normalized to leading 1
// and every pivot column is cleared above and below.
std::vector<std::size_t> gauss_jordan(Matrix& m, std::size_t limit_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit_cols && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        }
        const Element inv = m(r, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Element f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

// ---- Matrix -------------------------------------------------------------------

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<Vector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ShapeMismatch("ragged rows");
        for (std::size_t j = 0; j < cols; ++j) {
            require_field(field, rows[i][j].field());
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw ShapeMismatch("column of wrong length");
        for (std::size_t i = 0; i < rows; ++i) {
            require_field(field, cols[j][i].field());
            m(i, j) = cols[j][i];
        }
    }
    return m;
}

const Element& Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw IndexOutOfRange("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of a " + shape(*this) +
                              " matrix");
    }
    return (*this)(i, j);
}

Vector Matrix::row(std::size_t i) const {
    if (i >= rows_) throw IndexOutOfRange("row " + std::to_string(i));
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
    if (j >= cols_) throw IndexOutOfRange("column " + std::to_string(j));
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Element& x) { return x.is_zero(); });
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& y) {
    require_field(field_, y.field_);
    if (rows_ != y.rows_ || cols_ != y.cols_) throw ShapeMismatch(shape(*this) + " + " + shape(y));
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!y.data_[k].is_zero()) data_[k] += y.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& y) {
    require_field(field_, y.field_);
    if (rows_ != y.rows_ || cols_ != y.cols_) throw ShapeMismatch(shape(*this) + " - " + shape(y));
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!y.data_[k].is_zero()) data_[k] -= y.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(const Element& c) {
    require_field(field_, c.field());
    if (c.is_one()) return *this;
    for (auto& x : data_) {
        if (!x.is_zero()) x *= c;
    }
    return *this;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    require_field(x.field_, y.field_);
    if (x.cols_ != y.rows_) throw ShapeMismatch(shape(x) + " * " + shape(y));
    Matrix r(x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t k = 0; k < x.cols_; ++k) {
            const Element& a = x(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols_; ++j) {
                const Element& b = y(k, j);
                if (!b.is_zero()) r(i, j) += a * b;
            }
        }
    }
    return r;
}

Vector operator*(const Matrix& x, const Vector& v) {
    if (x.cols_ != v.size()) throw ShapeMismatch(shape(x) + " * vector of length " + std::to_string(v.size()));
    Vector r(x.rows_, x.field_.zero());
    for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t k = 0; k < x.cols_; ++k) {
            require_field(x.field_, v[k].field());
            if (!x(i, k).is_zero() && !v[k].is_zero()) r[i] += x(i, k) * v[k];
        }
    }
    return r;
}

bool operator==(const Matrix& x, const Matrix& y) {
    require_field(x.field_, y.field_);
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
}

Matrix product(std::initializer_list<const Matrix*> factors) {
    if (factors.size() == 0) throw ShapeMismatch("empty product");
    auto it = factors.begin();
    Matrix r = **it;
    for (++it; it != factors.end(); ++it) r = r * **it;
    return r;
}

// ---- elimination ----------------------------------------------------------------

RrefResult rref(const Matrix& m) {
    RrefResult out;
    out.reduced = m;
    out.pivots = gauss_jordan(out.reduced, m.cols());
    out.rank = out.pivots.size();
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

namespace {

std::vector<Vector> nullspace_from_rref(const Field& field, const std::vector<Vector>& rows,
                                        const std::vector<std::size_t>& pivots, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols, field.zero());
        v[f] = field.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (!rows[i][f].is_zero()) v[pivots[i]] = -rows[i][f];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::vector<Vector> nullspace(const Matrix& m) {
    const RrefResult r = rref(m);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < r.rank; ++i) rows.push_back(r.reduced.row(i));
    return nullspace_from_rref(m.field(), rows, r.pivots, m.cols());
}

Element determinant(const Matrix& m) {
    require_square(m, "determinant");
    Matrix a = m;
    const std::size_t n = a.rows();
    Element det = m.field().one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return m.field().zero();
        if (p != c) {
            for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        const Element inv = a(c, c).inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            const Element f = a(i, c) * inv;
            for (std::size_t j = c + 1; j < n; ++j) {
                if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
            }
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    require_square(m, "inverse");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = m.field().one();
    }
    const auto pivots = gauss_jordan(aug, n);
    if (pivots.size() != n) throw Singular("matrix of rank " + std::to_string(pivots.size()) + " < " + std::to_string(n));
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
}

Element trace(const Matrix& m) {
    require_square(m, "trace");
    Element t = m.field().zero();
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

std::optional<Vector> solve_unique(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw ShapeMismatch("right-hand side of wrong length");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        require_field(m.field(), b[i].field());
        aug(i, m.cols()) = b[i];
    }
    const auto pivots = gauss_jordan(aug, m.cols() + 1);
    std::size_t basis_rank = pivots.size();
    const bool outside = !pivots.empty() && pivots.back() == m.cols();
    if (outside) --basis_rank;
    if (basis_rank != m.cols()) {
        throw DependentBasis("basis of " + std::to_string(m.cols()) + " vectors has rank " + std::to_string(basis_rank));
    }
    if (outside) return std::nullopt;
    Vector x;
    x.reserve(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) x.push_back(aug(i, m.cols()));
    return x;
}

// ---- RowReducer -------------------------------------------------------------------

RowReducer::RowReducer(Field field, std::size_t cols) : field_(field), cols_(cols), pivot_row_(cols, npos) {}

void RowReducer::reduce(Vector& row) const {
    for (std::size_t c = 0; c < cols_; ++c) {
        if (row[c].is_zero() || pivot_row_[c] == npos) continue;
        const Vector& r = rows_[pivot_row_[c]];
        const Element f = row[c];
        for (std::size_t j = c; j < cols_; ++j) {
            if (!r[j].is_zero()) row[j] -= f * r[j];
        }
    }
}

bool RowReducer::add(Vector row) {
    if (row.size() != cols_) throw ShapeMismatch("row of wrong length");
    reduce(row);
    std::size_t lead = 0;
    while (lead < cols_ && row[lead].is_zero()) ++lead;
    if (lead == cols_) return false;
    if (!row[lead].is_one()) {
        const Element inv = row[lead].inv();
        for (std::size_t j = lead; j < cols_; ++j) {
            if (!row[j].is_zero()) row[j] *= inv;
        }
    }
    pivot_row_[lead] = rows_.size();
    pivot_of_row_.push_back(lead);
    rows_.push_back(std::move(row));
    return true;
}

bool RowReducer::in_span(Vector row) const {
    if (row.size() != cols_) throw ShapeMismatch("row of wrong length");
    reduce(row);
    return std::all_of(row.begin(), row.end(), [](const Element& x) { return x.is_zero(); });
}

RrefResult RowReducer::rref() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_of_row_[a] < pivot_of_row_[b]; });
    std::vector<Vector> rows;
    std::vector<std::size_t> pivots;
    for (std::size_t k : order) {
        rows.push_back(rows_[k]);
        pivots.push_back(pivot_of_row_[k]);
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
        for (std::size_t k = i + 1; k < rows.size(); ++k) {
            const std::size_t p = pivots[k];
            if (rows[i][p].is_zero()) continue;
            const Element f = rows[i][p];
            for (std::size_t j = p; j < cols_; ++j) {
                if (!rows[k][j].is_zero()) rows[i][j] -= f * rows[k][j];
            }
        }
    }
    RrefResult out;
    out.reduced = Matrix(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.reduced(i, j) = rows[i][j];
    }
    out.pivots = std::move(pivots);
    out.rank = rows.size();
    return out;
}

std::vector<Vector> RowReducer::nullspace() const {
    const RrefResult r = rref();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < r.rank; ++i) rows.push_back(r.reduced.row(i));
    return nullspace_from_rref(field_, rows, r.pivots, cols_);
}

// ---- constructors -------------------------------------------------------------------

Matrix elementary_F(std::size_t r, std::size_t d, const Field& field) {
    if (r > d) throw IndexOutOfRange("F_r needs 0 <= r <= d, got r=" + std::to_string(r) + ", d=" + std::to_string(d));
    Matrix m(field, d + 1, d + 1);
    m(r, r) = field.one();
    return m;
}

Matrix exchange_Z(std::size_t d, const Field& field) {
    Matrix m(field, d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i) m(i, d - i) = field.one();
    return m;
}

Matrix diagonal_D(const Field& field, const Vector& phis) {
    Matrix m(field, phis.size() + 1, phis.size() + 1);
    Element p = field.one();
    m(0, 0) = p;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        p *= phis[i];
        m(i + 1, i + 1) = p;
    }
    return m;
}

Matrix toeplitz_upper(const Vector& params) {
    if (params.empty()) throw IndexOutOfRange("toeplitz_upper needs at least one parameter");
    const Field field = params[0].field();
    const std::size_t n = params.size();
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            require_field(field, params[j - i].field());
            m(i, j) = params[j - i];
        }
    }
    return m;
}

bool is_tridiagonal(const Matrix& m) {
    require_square(m, "is_tridiagonal");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if ((i > j + 1 || j > i + 1) && !m(i, j).is_zero()) return false;
        }
    }
    return true;
}

bool is_upper_triangular(const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < i && j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) return false;
        }
    }
    return true;
}

bool is_upper_toeplitz(const Matrix& m) {
    if (!m.is_square() || !is_upper_triangular(m)) return false;
    for (std::size_t i = 1; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            if (m(i, j) != m(i - 1, j - 1)) return false;
        }
    }
    return true;
}

std::optional<Element> proportionality(const Matrix& x, const Matrix& y) {
    require_field(x.field(), y.field());
    if (x.rows() != y.rows() || x.cols() != y.cols()) return std::nullopt;
    const auto& a = x.entries();
    const auto& b = y.entries();
    std::size_t k = 0;
    while (k < a.size() && a[k].is_zero()) ++k;
    if (k == a.size()) return std::nullopt;
    const Element c = b[k] / a[k];
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (c * a[j] != b[j]) return std::nullopt;
    }
    return c;
}

bool proportional(const Matrix& x, const Matrix& y) {
    const auto c = proportionality(x, y);
    return c && !c->is_zero();
}

Matrix normalize_first_nonzero(const Matrix& x) {
    for (const auto& e : x.entries()) {
        if (!e.is_zero()) return x * e.inv();
    }
    return x;
}

Matrix canonical_span(const Field& field, std::size_t entries, const std::vector<Matrix>& ms) {
    RowReducer rr(field, entries);
    for (const auto& m : ms) {
        require_field(field, m.field());
        rr.add(m.entries());
    }
    return rr.rref().reduced;
}

bool same_subspace(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    const Matrix* any = !a.empty() ? &a[0] : (!b.empty() ? &b[0] : nullptr);
    if (!any) return true;
    const std::size_t n = any->rows() * any->cols();
    for (const auto* list : {&a, &b}) {
        for (const auto& m : *list) {
            if (m.rows() * m.cols() != n) throw ShapeMismatch("subspaces of different ambient spaces");
        }
    }
    return canonical_span(any->field(), n, a) == canonical_span(any->field(), n, b);
}

std::size_t span_dimension(const std::vector<Matrix>& ms) {
    if (ms.empty()) return 0;
    return canonical_span(ms[0].field(), ms[0].rows() * ms[0].cols(), ms).rows();
}

// ---- VectorSpaceBasis ---------------------------------------------------------------

VectorSpaceBasis::VectorSpaceBasis(Matrix columns) : P(std::move(columns)) {
    if (rank(P) != P.cols()) throw DependentBasis("basis vectors are linearly dependent");
}

VectorSpaceBasis VectorSpaceBasis::inverted() const {
    Matrix q(P.field(), P.rows(), P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i) {
        for (std::size_t j = 0; j < P.cols(); ++j) q(i, j) = P(i, P.cols() - 1 - j);
    }
    return VectorSpaceBasis(std::move(q));
}

}  // namespace lrt
