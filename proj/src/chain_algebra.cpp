#include "sylvan/chain_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace sylvan {

IntMatrix integer_boundary(const SimplicialComplex& k, int i) {
    const auto& rows = k.faces_of_dim(i - 1);
    const auto& cols = k.faces_of_dim(i);
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Face tau = cols[c];
        for (int v = 0; v < 32; ++v) {
            if (!face_contains(tau, v)) continue;
            const int r = k.index_of(tau & ~(1U << v));
            m(static_cast<std::size_t>(r), c) = removal_sign(tau, v);
        }
    }
    return m;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int i, Field field) {
    return {i, k.faces_of_dim(i - 1), k.faces_of_dim(i), integer_boundary(k, i).to_field(field)};
}

RankData rank_and_bases(const Matrix& m) {
    RankData d;
    d.kernel = kernel_basis(m);
    d.image = image_basis(m);
    d.rank = d.image.cols();
    return d;
}

Matrix homology_basis(const SimplicialComplex& k, int i, Field field) {
    const Matrix cycles = kernel_basis(boundary_matrix(k, i, field).matrix);
    const Matrix boundaries = image_basis(boundary_matrix(k, i + 1, field).matrix);
    const std::size_t n = k.faces_of_dim(i).size();
    Matrix span = boundaries;
    std::vector<std::size_t> chosen;
    std::size_t r = boundaries.cols();
    for (std::size_t c = 0; c < cycles.cols() && span.cols() < cycles.cols(); ++c) {
        Matrix trial = span.hconcat(cycles.columns({c}));
        const std::size_t tr = rank(trial);
        if (tr > r) {
            span = std::move(trial);
            r = tr;
            chosen.push_back(c);
        }
    }
    Matrix h = cycles.columns(chosen);
    if (h.rows() != n) h = Matrix(n, 0, field);
    return h;
}

std::size_t reduced_homology_rank(const SimplicialComplex& k, int i, Field field) {
    const std::size_t n = k.faces_of_dim(i).size();
    if (n == 0) return 0;
    const std::size_t r_i = rank(boundary_matrix(k, i, field).matrix);
    const std::size_t r_next = rank(boundary_matrix(k, i + 1, field).matrix);
    return n - r_i - r_next;
}

IntegralStructure integral_structure(const IntMatrix& boundary, const std::vector<std::size_t>& row_order) {
    IntegralStructure s;
    s.lattice_basis = column_hermite_basis(boundary, row_order);
    for (const auto& d : smith_invariants(boundary)) s.torsion_order *= d;
    return s;
}

IntegralStructure integral_structure(const SimplicialComplex& k, int i, const std::vector<std::size_t>& row_order) {
    return integral_structure(integer_boundary(k, i), row_order);
}

std::string labelled(const Matrix& m, const std::vector<Face>& rows, const std::vector<Face>& cols, int n) {
    std::vector<std::vector<std::string>> cells(rows.size() + 1, std::vector<std::string>(cols.size() + 1));
    for (std::size_t c = 0; c < cols.size(); ++c) cells[0][c + 1] = face_label(cols[c], n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        cells[r + 1][0] = face_label(rows[r], n);
        for (std::size_t c = 0; c < cols.size(); ++c) cells[r + 1][c + 1] = m(r, c).pretty();
    }
    // Display width: count code points, not bytes, so "∅" lines up.
    auto width = [](const std::string& s) {
        return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
    };
    std::vector<std::size_t> w(cols.size() + 1, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], width(row[c]));
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            os << std::string(w[c] - width(row[c]), ' ') << row[c];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace sylvan
