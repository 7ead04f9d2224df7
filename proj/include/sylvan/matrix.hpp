#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sylvan/field.hpp"

namespace sylvan {

/// Dense exact matrix over a Field, stored row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field f = Field::rationals());

    static Matrix identity(std::size_t n, Field f = Field::rationals());
    static Matrix from_rows(const std::vector<std::vector<long>>& rows, Field f = Field::rationals());
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols, Field f);
    /// Column vector.
    static Matrix column(const std::vector<Scalar>& entries, Field f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;
    Matrix columns(const std::vector<std::size_t>& col_idx) const;
    Matrix rows_subset(const std::vector<std::size_t>& row_idx) const;
    std::vector<Scalar> col(std::size_t c) const;
    void set_col(std::size_t c, const std::vector<Scalar>& v);
    /// [this | other]
    Matrix hconcat(const Matrix& other) const;

    /// Reduces a rational matrix into the prime field f.  Throws FieldError
    /// when a denominator vanishes.
    Matrix reduced_mod(Field f) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Field field_{};
    std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

struct Echelon {
    Matrix reduced;                    // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon row_echelon(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns span the kernel.  One vector per free column of the reduced row
/// echelon form, scaled so its first nonzero entry is 1.
Matrix kernel_basis(const Matrix& m);

/// Columns span the column space, in reduced column echelon form.
Matrix image_basis(const Matrix& m);

/// Some X with A X = B, or nullopt if the system is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Mutually reduced independent vectors, for incremental rank tests.
class IncrementalSpan {
public:
    /// Adds v and returns true if it is independent of the span; otherwise
    /// leaves the span unchanged.
    bool try_add(std::vector<Scalar> v);
    void pop();
    std::size_t size() const { return basis_.size(); }

private:
    std::vector<std::vector<Scalar>> basis_;
    std::vector<std::size_t> pivots_;
};

/// Throws PreconditionError when m is singular or not square.
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

}  // namespace sylvan
