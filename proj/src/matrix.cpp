#include "sylvan/matrix.hpp"

#include <ostream>
#include <sstream>

namespace sylvan {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw PreconditionError(std::string("shape mismatch in ") + op + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
    if (a.field() != b.field()) throw FieldError(std::string("mixed-field matrices in ") + op);
}

// In-place Gauss-Jordan on m; returns pivot columns.
std::vector<std::size_t> reduce_in_place(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
        }
        const Scalar inv = m(r, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k) {
            if (!m(r, k).is_zero()) m(r, k) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar factor = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k) {
                if (!m(r, k).is_zero()) m(i, k) -= factor * m(r, k);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Field f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(std::size_t n, Field f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, Field f) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar::from_integer(f, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols, Field f) {
    Matrix m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries, Field f) {
    Matrix m(entries.size(), 1, f);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    Matrix m(row_idx.size(), col_idx.size(), field_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
    return m;
}

Matrix Matrix::columns(const std::vector<std::size_t>& col_idx) const {
    Matrix m(rows_, col_idx.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(i, col_idx[j]);
    return m;
}

Matrix Matrix::rows_subset(const std::vector<std::size_t>& row_idx) const {
    Matrix m(row_idx.size(), cols_, field_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(row_idx[i], j);
    return m;
}

std::vector<Scalar> Matrix::col(std::size_t c) const {
    std::vector<Scalar> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
    return v;
}

void Matrix::set_col(std::size_t c, const std::vector<Scalar>& v) {
    if (v.size() != rows_) throw PreconditionError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

Matrix Matrix::hconcat(const Matrix& other) const {
    if (rows_ != other.rows_) throw PreconditionError("hconcat: row count mismatch");
    Matrix m(rows_, cols_ + other.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
}

Matrix Matrix::reduced_mod(Field f) const {
    if (f == field_) return *this;
    if (!field_.is_rational()) throw FieldError("only rational matrices can be reduced mod p");
    Matrix m(rows_, cols_, f);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = Scalar::from_rational(f, data_[k].rational_value());
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_shape(*this, o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_shape(*this, o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_)
        if (!x.is_zero()) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw PreconditionError("product shape mismatch: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " * " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    if (a.field_ != b.field_) throw FieldError("mixed-field matrix product");
    Matrix m(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    }
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
    }
    return os << "]";
}

Echelon row_echelon(const Matrix& m) {
    Echelon e{m, {}};
    e.pivots = reduce_in_place(e.reduced);
    return e;
}

std::size_t rank(const Matrix& m) {
    Matrix copy = m;
    return reduce_in_place(copy).size();
}

Matrix kernel_basis(const Matrix& m) {
    const Echelon e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Matrix k(m.cols(), free_cols.size(), m.field());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const std::size_t f = free_cols[j];
        k(f, j) = Scalar::one(m.field());
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], j) = -e.reduced(r, f);
        std::size_t first = 0;
        while (k(first, j).is_zero()) ++first;
        const Scalar inv = k(first, j).inverse();
        for (std::size_t i = first; i < m.cols(); ++i)
            if (!k(i, j).is_zero()) k(i, j) *= inv;
    }
    return k;
}

Matrix image_basis(const Matrix& m) {
    const Echelon e = row_echelon(m.transpose());
    const std::size_t r = e.pivots.size();
    Matrix b(m.rows(), r, m.field());
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = e.reduced(j, i);
    return b;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw PreconditionError("solve: row count mismatch");
    const Echelon e = row_echelon(a.hconcat(b));
    Matrix x(a.cols(), b.cols(), a.field());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        const std::size_t p = e.pivots[r];
        if (p >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, a.cols() + j);
    }
    return x;
}

bool IncrementalSpan::try_add(std::vector<Scalar> v) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (v[pivots_[k]].is_zero()) continue;
        const Scalar f = v[pivots_[k]];
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const Scalar inv = v[p].inverse();
    for (auto& x : v)
        if (!x.is_zero()) x *= inv;
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

void IncrementalSpan::pop() {
    basis_.pop_back();
    pivots_.pop_back();
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const Echelon e = row_echelon(m.hconcat(Matrix::identity(n, m.field())));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw PreconditionError("singular matrix");
    Matrix inv(n, n, m.field());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Scalar determinant(const Matrix& m) {
    if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Scalar det = Scalar::one(m.field());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return Scalar::zero(m.field());
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        const Scalar inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            const Scalar factor = a(i, c) * inv;
            for (std::size_t k = c; k < n; ++k)
                if (!a(c, k).is_zero()) a(i, k) -= factor * a(c, k);
        }
    }
    return det;
}

}  // namespace sylvan
