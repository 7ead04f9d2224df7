#include "sylvan/integer_matrix.hpp"

#include <numeric>
#include <utility>

namespace sylvan {

namespace {

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

// col j -= q * col k
void sub_col(IntMatrix& a, std::size_t j, std::size_t k, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (a(r, k) != 0) a(r, j) -= q * a(r, k);
}

void sub_row(IntMatrix& a, std::size_t i, std::size_t k, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (a(k, c) != 0) a(i, c) -= q * a(k, c);
}

}  // namespace

IntMatrix IntMatrix::columns(const std::vector<std::size_t>& col_idx) const {
    IntMatrix m(rows_, col_idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < col_idx.size(); ++j) m(r, j) = (*this)(r, col_idx[j]);
    return m;
}

IntMatrix IntMatrix::rows_subset(const std::vector<std::size_t>& row_idx) const {
    IntMatrix m(row_idx.size(), cols_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(row_idx[i], c);
    return m;
}

Matrix IntMatrix::to_field(Field f) const {
    Matrix m(rows_, cols_, f);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0) m(r, c) = Scalar::from_integer(f, (*this)(r, c));
    return m;
}

IntMatrix column_hermite_basis(const IntMatrix& m, const std::vector<std::size_t>& row_order) {
    std::vector<std::size_t> order = row_order;
    if (order.empty()) {
        order.resize(m.rows());
        std::iota(order.begin(), order.end(), 0);
    }
    IntMatrix a = m;
    std::size_t k = 0;
    for (std::size_t r : order) {
        if (k == a.cols()) break;
        // Euclid across columns k.. until only column k is nonzero in row r.
        while (true) {
            std::size_t best = a.cols();
            for (std::size_t j = k; j < a.cols(); ++j) {
                if (a(r, j) == 0) continue;
                if (best == a.cols() || abs(a(r, j)) < abs(a(r, best))) best = j;
            }
            if (best == a.cols()) break;
            swap_cols(a, k, best);
            bool done = true;
            for (std::size_t j = k + 1; j < a.cols(); ++j) {
                if (a(r, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a(r, j).get_mpz_t(), a(r, k).get_mpz_t());
                sub_col(a, j, k, q);
                if (a(r, j) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, k) == 0) continue;
        if (a(r, k) < 0) {
            for (std::size_t i = 0; i < a.rows(); ++i) a(i, k) = -a(i, k);
        }
        for (std::size_t j = 0; j < k; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a(r, j).get_mpz_t(), a(r, k).get_mpz_t());
            sub_col(a, j, k, q);
        }
        ++k;
    }
    std::vector<std::size_t> keep(k);
    std::iota(keep.begin(), keep.end(), 0);
    return a.columns(keep);
}

std::vector<mpz_class> smith_invariants(const IntMatrix& m) {
    IntMatrix a = m;
    std::vector<mpz_class> out;
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            std::size_t pr = a.rows(), pc = a.cols();
            for (std::size_t i = t; i < a.rows(); ++i)
                for (std::size_t j = t; j < a.cols(); ++j)
                    if (a(i, j) != 0 && (pr == a.rows() || abs(a(i, j)) < abs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == a.rows()) return out;
            swap_rows(a, t, pr);
            swap_cols(a, t, pc);
            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                sub_row(a, i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                sub_col(a, j, t, q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot must divide the rest of the block.
            std::size_t bad_row = a.rows();
            for (std::size_t i = t + 1; i < a.rows() && bad_row == a.rows(); ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == a.rows()) break;
            sub_row(a, t, bad_row, mpz_class(-1));
        }
        out.push_back(abs(a(t, t)));
    }
    return out;
}

mpz_class integer_determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace sylvan
