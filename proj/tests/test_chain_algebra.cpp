#include <doctest.h>

#include "support.hpp"

using namespace sylvan;

namespace {

Face f(std::initializer_list<int> one_based) { return face_from_vertices(std::vector<int>(one_based)); }

SimplicialComplex hollow_triangle() { return SimplicialComplex::from_facets(3, {f({1, 2}), f({2, 3}), f({1, 3})}); }

}  // namespace

TEST_CASE("boundary matrices") {
    const auto h = hollow_triangle();
    const auto d1 = boundary_matrix(h, 1);
    CHECK(d1.matrix == Matrix::from_rows({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}));
    CHECK(d1.rows == std::vector<Face>{f({1}), f({2}), f({3})});
    CHECK(d1.cols == std::vector<Face>{f({1, 2}), f({1, 3}), f({2, 3})});

    const auto points = SimplicialComplex(3, {0, f({1}), f({2}), f({3})});
    CHECK(boundary_matrix(points, 0).matrix == Matrix::from_rows({{1, 1, 1}}));
    const auto beyond = boundary_matrix(points, 3).matrix;
    CHECK(beyond.rows() == 0);
    CHECK(beyond.cols() == 0);
    // one past the top dimension: every (dim)-face as a row, no columns
    CHECK(boundary_matrix(points, 1).matrix.rows() == 3);
    CHECK(boundary_matrix(points, 1).matrix.cols() == 0);
}

TEST_CASE("boundary of a boundary vanishes") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        const auto k = testing::random_complex(rng, 6, 4, 5);
        for (int i = 0; i <= k.dim() + 1; ++i) {
            const Matrix a = boundary_matrix(k, i).matrix;
            const Matrix b = boundary_matrix(k, i + 1).matrix;
            if (a.cols() == 0 || b.cols() == 0) continue;
            CHECK((a * b).is_zero());
            const Matrix a2 = boundary_matrix(k, i, Field::prime(2)).matrix;
            const Matrix b2 = boundary_matrix(k, i + 1, Field::prime(2)).matrix;
            CHECK((a2 * b2).is_zero());
        }
    }
}

TEST_CASE("homology classes") {
    const auto points = SimplicialComplex(3, {0, f({1}), f({2}), f({3})});
    CHECK(reduced_homology_rank(points, 0) == 2);
    CHECK(homology_basis(points, 0).cols() == 2);
    CHECK(reduced_homology_rank(hollow_triangle(), 1) == 1);
    CHECK(reduced_homology_rank(hollow_triangle(), 0) == 0);
    const auto filled = SimplicialComplex::from_facets(3, {f({1, 2, 3})});
    for (int i = -1; i <= 2; ++i) CHECK(reduced_homology_rank(filled, i) == 0);
    CHECK(reduced_homology_rank(SimplicialComplex(3, {0}), -1) == 1);
    CHECK(reduced_homology_rank(SimplicialComplex(), -1) == 0);

    const auto rp2 = testing::rp2_complex();
    CHECK(reduced_homology_rank(rp2, 1) == 0);
    CHECK(reduced_homology_rank(rp2, 2) == 0);
    CHECK(reduced_homology_rank(rp2, 1, Field::prime(2)) == 1);
    CHECK(reduced_homology_rank(rp2, 2, Field::prime(2)) == 1);
}

TEST_CASE("homology bases are cycles independent modulo boundaries") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const auto k = testing::random_complex(rng, 6, 5, 4);
        for (const Field fld : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
            long euler_chain = 0, euler_homology = 0;
            for (int i = -1; i <= k.dim(); ++i) {
                const Matrix h = homology_basis(k, i, fld);
                const Matrix d = boundary_matrix(k, i, fld).matrix;
                if (h.cols() > 0 && d.rows() > 0) CHECK((d * h).is_zero());
                const Matrix b = image_basis(boundary_matrix(k, i + 1, fld).matrix);
                CHECK(rank(b.hconcat(h)) == b.cols() + h.cols());
                const long sign = (i % 2 == 0) ? 1 : -1;
                euler_chain += sign * static_cast<long>(k.faces_of_dim(i).size());
                euler_homology += sign * static_cast<long>(h.cols());
            }
            CHECK(euler_chain == euler_homology);
        }
    }
}

TEST_CASE("integral structure") {
    const auto s = integral_structure(hollow_triangle(), 1);
    CHECK(s.lattice_basis.cols() == 2);
    CHECK(s.torsion_order == 1);
    const auto rp2 = integral_structure(testing::rp2_complex(), 2);
    CHECK(rp2.torsion_order == 2);
    CHECK(integral_structure(testing::rp2_complex(), 1).torsion_order == 1);
    const auto empty = integral_structure(IntMatrix(0, 0));
    CHECK(empty.lattice_basis.cols() == 0);
    CHECK(empty.torsion_order == 1);
}
