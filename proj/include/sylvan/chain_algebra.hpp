#pragma once

#include <vector>

#include "sylvan/integer_matrix.hpp"
#include "sylvan/koszul.hpp"
#include "sylvan/matrix.hpp"

namespace sylvan {

/// ∂_i : C_i -> C_{i-1} of the augmented chain complex, rows labelled by
/// (i-1)-faces and columns by i-faces.
struct BoundaryMatrix {
    int i = 0;
    std::vector<Face> rows;
    std::vector<Face> cols;
    Matrix matrix;
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int i, Field field = Field::rationals());
IntMatrix integer_boundary(const SimplicialComplex& k, int i);

/// Ranks and bases from one elimination.
struct RankData {
    std::size_t rank = 0;
    Matrix kernel;   // columns
    Matrix image;    // columns, reduced column echelon form
};
RankData rank_and_bases(const Matrix& m);

/// Cycle representatives of a basis of H̃_i, as columns over the i-faces.
/// The boundary echelon basis is extended by cycle echelon vectors in order.
Matrix homology_basis(const SimplicialComplex& k, int i, Field field = Field::rationals());
std::size_t reduced_homology_rank(const SimplicialComplex& k, int i, Field field = Field::rationals());

/// Z-basis of the image of the integral ∂_i, and the torsion order of
/// C_{i-1} / ∂_i(C_i).
struct IntegralStructure {
    IntMatrix lattice_basis;
    mpz_class torsion_order = 1;
};

/// `row_order` reorders the Hermite reduction; any order gives a valid basis.
IntegralStructure integral_structure(const SimplicialComplex& k, int i, const std::vector<std::size_t>& row_order = {});
IntegralStructure integral_structure(const IntMatrix& boundary, const std::vector<std::size_t>& row_order = {});

/// Renders m with face labels on rows and columns.
std::string labelled(const Matrix& m, const std::vector<Face>& rows, const std::vector<Face>& cols, int n);

}  // namespace sylvan
