#include <doctest.h>

#include "support.hpp"

using namespace sylvan;
using testing::q;
using testing::q_matrix;

namespace {

Face f(std::initializer_list<int> one_based) { return face_from_vertices(std::vector<int>(one_based)); }

MultiDegree deg(std::initializer_list<int> e) { return MultiDegree(std::vector<int>(e)); }

// Pairs a < b inside the lcm box, with b - a of total degree at most `reach`.
std::vector<std::pair<MultiDegree, MultiDegree>> box_pairs(const MonomialIdeal& ideal, int reach) {
    const auto box = box_degrees(ideal.lcm());
    std::vector<std::pair<MultiDegree, MultiDegree>> out;
    for (const auto& a : box)
        for (const auto& b : box)
            if (a.less(b) && b.total() - a.total() <= reach) out.emplace_back(a, b);
    return out;
}

std::size_t count_from(const std::vector<Fence>& fences, Face source, const std::string& label) {
    std::size_t n = 0;
    for (const auto& fe : fences) {
        if (fe.source() != source) continue;
        if (std::any_of(fe.hedgerow.begin(), fe.hedgerow.end(),
                        [&](const std::string& h) { return h.find(label) != std::string::npos; }))
            ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("lattice paths") {
    CHECK(lattice_paths(deg({0, 0, 1}), deg({1, 1, 1})).size() == 2);
    CHECK(lattice_paths(deg({1, 1, 1}), deg({1, 3, 1})).size() == 1);
    CHECK(lattice_paths(deg({0, 0, 0}), deg({1, 1, 1})).size() == 6);
    CHECK(lattice_paths(deg({0, 0, 0}), deg({2, 1, 0})).size() == 3);
    const auto same = lattice_paths(deg({1, 2}), deg({1, 2}));
    REQUIRE(same.size() == 1);
    CHECK(same[0].length() == 0);
    CHECK_THROWS_AS(lattice_paths(deg({1, 0}), deg({0, 1})), PreconditionError);

    const auto p = lattice_paths(deg({1, 1, 1}), deg({1, 3, 1})).front();
    CHECK(p.to_string() == "131>121>111");
    CHECK(p.nodes() == std::vector<MultiDegree>{deg({1, 3, 1}), deg({1, 2, 1}), deg({1, 1, 1})});
    const auto two = lattice_paths(deg({0, 0, 1}), deg({1, 1, 1}));
    CHECK(two[0].steps == std::vector<int>{0, 1});
    CHECK(two[1].steps == std::vector<int>{1, 0});
}

TEST_CASE("contraction maps") {
    const auto tri = testing::triangle_ideal();
    const auto upper = koszul_complex(tri, deg({1, 1, 1}));
    const auto lower = koszul_complex(tri, deg({1, 1, 0}));
    // only z survives lowering z
    CHECK(contraction(upper, lower, 0, 2, Field::rationals()) == Matrix::from_rows({{0, 0, 1}}));
    const auto s = testing::staircase_ideal();
    const auto k131 = koszul_complex(s, deg({1, 3, 1}));
    const auto k121 = koszul_complex(s, deg({1, 2, 1}));
    // yx ↦ -x and zy ↦ z under lowering y, with the removal sign
    const Matrix d = contraction(k131, k121, 1, 1, Field::rationals());
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 3);
    CHECK(d(0, 0) == Scalar::rational(-1));
    CHECK(d(2, 2) == Scalar::rational(1));
    CHECK(d(1, 1).is_zero());
    CHECK_THROWS_AS(contraction(k131, koszul_complex(s, deg({0, 0, 1})), 1, 0, Field::rationals()), std::logic_error);
}

TEST_CASE("three generators with a doubled syzygy") {
    const auto tri = testing::triangle_ideal();
    const auto top = deg({1, 1, 1});
    CHECK(sylvan_matrix_canonical(tri, deg({1, 1, 0}), top, 0) == Matrix::from_rows({{0, 0, 1}}));
    CHECK(sylvan_matrix_canonical(tri, deg({1, 0, 1}), top, 0) == Matrix::from_rows({{0, 1, 0}}));
    CHECK(sylvan_matrix_canonical(tri, deg({0, 1, 1}), top, 0) == Matrix::from_rows({{1, 0, 0}}));

    KoszulCache cache(tri, Field::rationals(), Mode::canonical);
    const auto path = lattice_paths(deg({1, 1, 0}), top).front();
    CHECK(path_delta(cache, path, 0) == 1);
    const auto e = enumerate_fences(cache, deg({1, 1, 0}), top, 0, true);
    REQUIRE(e.fence_count == 1);
    CHECK(e.fences[0].source() == f({3}));
    CHECK(e.fences[0].target() == 0);
    CHECK(e.fences[0].weight.is_one());
    CHECK(count_from(e.fences, f({1}), "") == 0);
    CHECK(count_from(e.fences, f({2}), "") == 0);
}

TEST_CASE("staircase ideal with a triangle syzygy") {
    const auto s = testing::staircase_ideal();
    const auto top = deg({1, 3, 1});
    const auto m111 = deg({1, 1, 1}), m130 = deg({1, 3, 0}), m031 = deg({0, 3, 1});

    // displayed with columns zy, yx, xz; zy = -yz and yx = -xy in bitset order
    const Matrix shown = q_matrix({{q(4, 9), q(5, 9), 0}, {q(1, 9), q(-1, 9), 0}, {q(-5, 9), q(-4, 9), 0}});
    Matrix expected(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        expected(r, 0) = -shown(r, 1);  // xy
        expected(r, 1) = shown(r, 2);   // xz
        expected(r, 2) = -shown(r, 0);  // yz
    }
    CHECK(sylvan_matrix_canonical(s, m111, top, 1) == expected);
    CHECK(sylvan_matrix_canonical(s, m130, top, 1) == q_matrix({{0, q(-1, 2), q(1, 2)}, {0, q(1, 2), q(-1, 2)}}));
    CHECK(sylvan_matrix_canonical(s, m031, top, 1) == q_matrix({{q(1, 2), q(-1, 2), 0}, {q(-1, 2), q(1, 2), 0}}));

    const std::vector<MultiDegree> gens{deg({1, 1, 0}), deg({0, 3, 0}), deg({0, 0, 1})};
    const std::vector<std::vector<Matrix>> first{
        {Matrix::from_rows({{0, 0, 1}}), Matrix::from_rows({{0, 1}}), Matrix::from_rows({{0, 0}})},
        {Matrix::from_rows({{0, 0, 0}}), Matrix::from_rows({{1, 0}}), Matrix::from_rows({{0, 1}})},
        {Matrix::from_rows({{1, 1, 0}}), Matrix::from_rows({{0, 0}}), Matrix::from_rows({{1, 0}})}};
    const std::vector<MultiDegree> syz{m111, m130, m031};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(sylvan_matrix_canonical(s, gens[r], syz[c], 0) == first[r][c]);

    KoszulCache cache(s, Field::rationals(), Mode::canonical);
    CHECK(path_delta(cache, lattice_paths(m111, top).front(), 1) == 9);
    for (const auto& p : lattice_paths(deg({0, 0, 1}), m111)) CHECK(path_delta(cache, p, 0) == 2);
}

TEST_CASE("fences on the staircase ideal") {
    const auto s = testing::staircase_ideal();
    KoszulCache cache(s, Field::rationals(), Mode::canonical);
    const auto e = enumerate_fences(cache, deg({1, 1, 1}), deg({1, 3, 1}), 1, true);
    CHECK(e.matrix == sylvan_matrix(cache, deg({1, 1, 1}), deg({1, 3, 1}), 1));
    CHECK(e.hedgerow_count == 9);
    // the edge xz never continues, since y is not one of its vertices
    CHECK(count_from(e.fences, f({1, 3}), "") == 0);
    CHECK(count_from(e.fences, f({1, 2}), "121:S={y,z}") == 0);
    CHECK(count_from(e.fences, f({1, 2}), "121:S={x,z}") == 4);
    CHECK(count_from(e.fences, f({1, 2}), "121:S={x,y}") == 8);
    for (const auto& fe : e.fences) CHECK(fe.delta == 9);

    // along 111 > 011 > 001 only x - x and y - x survive, both with S = {y}
    const auto low = enumerate_fences(cache, deg({0, 0, 1}), deg({1, 1, 1}), 0, true);
    std::vector<const Fence*> along;
    for (const auto& fe : low.fences)
        if (fe.path.to_string() == "111>011>001") along.push_back(&fe);
    REQUIRE(along.size() == 2);
    for (const auto* fe : along) {
        CHECK(fe->weight.is_one());
        CHECK(fe->delta == 2);
        CHECK(fe->faces[1] == f({1}));
        CHECK(fe->hedgerow.front().find("S={y}") != std::string::npos);
    }
    CHECK(low.matrix == Matrix::from_rows({{1, 1, 0}}));

    const std::string line = e.fences.front().render(3);
    CHECK(line.rfind("131>121>111 [", 0) == 0);
    CHECK(line.find(": w=") != std::string::npos);
    CHECK(line.find("/9") != std::string::npos);
}

TEST_CASE("fence enumeration respects the hedgerow cap") {
    KoszulCache cache(testing::staircase_ideal(), Field::rationals(), Mode::canonical);
    CHECK_THROWS_AS(enumerate_fences(cache, deg({1, 1, 1}), deg({1, 3, 1}), 1, false, 4), EnumerationCapExceeded);
}

TEST_CASE("incomparable degrees give zero") {
    const auto s = testing::staircase_ideal();
    CHECK(sylvan_matrix_canonical(s, deg({0, 0, 1}), deg({1, 3, 0}), 0).is_zero());
    CHECK(sylvan_matrix_canonical(s, deg({1, 3, 0}), deg({1, 3, 0}), 0).is_zero());
    CHECK(sylvan_matrix_canonical(s, deg({0, 0, 1}), deg({1, 3, 0}), 0).cols() == 2);
}

TEST_CASE("node by node accumulation equals the literal fence sum") {
    std::mt19937_64 rng(307);
    int compared = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto ideal = testing::random_ideal(rng, 3, 2, 4);
        KoszulCache canon(ideal, Field::rationals(), Mode::canonical);
        KoszulCache comm(ideal, Field::rationals(), Mode::community);
        KoszulCache comm2(ideal, Field::prime(2), Mode::community);
        comm2.set_community_seed(static_cast<std::uint64_t>(trial));
        for (const auto& [a, b] : box_pairs(ideal, 3)) {
            for (int i = 0; i < ideal.n(); ++i) {
                const Matrix dp = sylvan_matrix(canon, a, b, i);
                CHECK(enumerate_fences(canon, a, b, i).matrix == dp);
                CHECK(enumerate_fences(comm, a, b, i).matrix == sylvan_matrix(comm, a, b, i));
                CHECK(enumerate_fences(comm2, a, b, i).matrix == sylvan_matrix(comm2, a, b, i));
                ++compared;
            }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("sylvan matrices kill boundaries and land in cycles") {
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 25; ++trial) {
        const auto ideal = testing::random_ideal(rng, 3, 3, 5);
        for (const Mode mode : {Mode::canonical, Mode::community}) {
            for (const Field fld : {Field::rationals(), Field::prime(3)}) {
                if (mode == Mode::canonical && !fld.is_rational()) continue;
                KoszulCache cache(ideal, fld, mode);
                for (const auto& [a, b] : box_pairs(ideal, 4)) {
                    for (int i = 0; i < ideal.n(); ++i) {
                        const Matrix d = sylvan_matrix(cache, a, b, i);
                        const Matrix below = cache.boundary(a, i - 1);
                        const Matrix above = cache.boundary(b, i + 1);
                        if (!below.empty() && !d.empty()) CHECK((below * d).is_zero());
                        if (!above.empty() && !d.empty()) CHECK((d * above).is_zero());
                    }
                }
            }
        }
    }
}

TEST_CASE("community blocks from supplied communities") {
    const auto s = testing::staircase_ideal();
    std::map<MultiDegree, Community> chosen;
    KoszulCache cache(s, Field::rationals(), Mode::community);
    for (const auto& c : box_degrees(s.lcm())) chosen[c] = cache.community(c);
    // a different shrubbery at 111 changes the chain level map but not its class
    const auto k111 = cache.complex(deg({1, 1, 1}));
    // K^111 is the edge xy and the vertex z
    Community alt = chosen[deg({1, 1, 1})];
    alt.hedges[0].shrubs = {f({3})};
    alt.hedges[1].stakes = {f({1})};
    REQUIRE(alt.hedges[1].shrubs == std::vector<Face>{f({1, 2})});
    CHECK(alt != chosen[deg({1, 1, 1})]);
    CHECK_NOTHROW(validate_community(k111, alt));
    auto swapped = chosen;
    swapped[deg({1, 1, 1})] = alt;
    const Matrix a = sylvan_matrix_community(s, deg({1, 1, 1}), deg({1, 3, 1}), 1, chosen);
    const Matrix b = sylvan_matrix_community(s, deg({1, 1, 1}), deg({1, 3, 1}), 1, swapped);
    CHECK(a == sylvan_matrix(cache, deg({1, 1, 1}), deg({1, 3, 1}), 1));
    const Matrix cycle = Matrix::from_rows({{-1}, {1}, {-1}});  // xz - xy - yz, in bitset order
    const Matrix boundary0 = cache.boundary(deg({1, 1, 1}), 0);
    CHECK((boundary0 * (a * cycle)).is_zero());
    // both images are cycles of K^111 representing the same class
    const Matrix diff = a * cycle - b * cycle;
    const Matrix bnd = cache.boundary(deg({1, 1, 1}), 1);
    CHECK(rank(bnd.hconcat(diff)) == rank(bnd));

    KoszulCache seeded1(s, Field::prime(2), Mode::community), seeded2(s, Field::prime(2), Mode::community);
    seeded1.set_community_seed(17);
    seeded2.set_community_seed(17);
    for (const auto& c : box_degrees(s.lcm())) CHECK(seeded1.community(c) == seeded2.community(c));
    CHECK(node_rng(17, deg({1, 2, 1}))() == node_rng(17, deg({1, 2, 1}))());
    CHECK(node_rng(17, deg({1, 2, 1}))() != node_rng(17, deg({1, 2, 0}))());
}
