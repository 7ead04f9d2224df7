#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "sylvan/matrix.hpp"

namespace sylvan {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix columns(const std::vector<std::size_t>& col_idx) const;
    IntMatrix rows_subset(const std::vector<std::size_t>& row_idx) const;

    /// Image in the given field (rationals or F_p).
    Matrix to_field(Field f = Field::rationals()) const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Z-basis of the column lattice of m, as the nonzero columns of its column
/// Hermite normal form.  Rows are processed in `row_order` (default: top to
/// bottom); a different order yields a different, equally valid basis.
IntMatrix column_hermite_basis(const IntMatrix& m, const std::vector<std::size_t>& row_order = {});

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<mpz_class> smith_invariants(const IntMatrix& m);

/// Exact integer determinant (fraction-free Bareiss elimination).
mpz_class integer_determinant(const IntMatrix& m);

}  // namespace sylvan
