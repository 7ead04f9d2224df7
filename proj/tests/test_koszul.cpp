#include <doctest.h>

#include "support.hpp"

using namespace sylvan;

namespace {

Face f(std::initializer_list<int> one_based) { return face_from_vertices(std::vector<int>(one_based)); }

// x^c in I by brute force over generators.
bool member(const MonomialIdeal& ideal, const MultiDegree& c) {
    for (const auto& g : ideal.generators())
        if (g.leq(c)) return true;
    return false;
}

}  // namespace

TEST_CASE("faces and signs") {
    CHECK(face_dim(0) == -1);
    CHECK(face_dim(f({1, 3})) == 1);
    CHECK(face_label(0, 3) == "∅");
    CHECK(face_label(f({1, 2}), 3) == "xy");
    CHECK(face_label(f({1, 4}), 5) == "x1x4");
    CHECK(face_vertices(f({2, 3})) == std::vector<int>{2, 3});
    // removing the k-th smallest vertex carries (-1)^k
    CHECK(removal_sign(f({1, 2, 3}), 0) == 1);
    CHECK(removal_sign(f({1, 2, 3}), 1) == -1);
    CHECK(removal_sign(f({1, 2, 3}), 2) == 1);
    CHECK(removal_sign(f({2}), 1) == 1);
}

TEST_CASE("multidegrees") {
    const MultiDegree a{1, 3, 0}, b{1, 3, 1};
    CHECK(a.less(b));
    CHECK_FALSE(b.leq(a));
    CHECK(a.to_string() == "130");
    CHECK(MultiDegree{1, 13, 1}.to_string() == "(1,13,1)");
    CHECK(b.minus(a) == MultiDegree::unit(3, 2));
    CHECK(b.support() == f({1, 2, 3}));
    CHECK(a.join(MultiDegree{0, 1, 2}) == MultiDegree{1, 3, 2});
    CHECK(b.minus_face(f({1, 3})) == MultiDegree{0, 3, 0});
    CHECK_THROWS_AS(a.minus(b), PreconditionError);
    CHECK(graded_less(MultiDegree{0, 0, 1}, MultiDegree{1, 1, 0}));
    CHECK(b.total() == 5);
}

TEST_CASE("ideal membership") {
    const auto tri = testing::triangle_ideal();
    CHECK(tri.contains(MultiDegree{1, 1, 1}));
    CHECK_FALSE(tri.contains(MultiDegree{1, 0, 0}));
    CHECK(testing::staircase_ideal().contains(MultiDegree{0, 3, 0}));
    CHECK_FALSE(testing::staircase_ideal().contains(MultiDegree{1, 0, 0}));
}

TEST_CASE("ideal construction keeps minimal generators") {
    const MonomialIdeal i(2, {MultiDegree{1, 1}, MultiDegree{1, 2}, MultiDegree{2, 0}, MultiDegree{1, 1}});
    CHECK(i.generators().size() == 2);
    CHECK(i.lcm() == MultiDegree{2, 1});
    CHECK_THROWS_AS(MonomialIdeal(2, {}), PreconditionError);
    CHECK_THROWS_AS(MonomialIdeal(2, {MultiDegree{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(MonomialIdeal(2, {MultiDegree{1, 0, 0}}), PreconditionError);
}

TEST_CASE("simplicial complexes") {
    const auto hollow = SimplicialComplex::from_facets(3, {f({1, 2}), f({2, 3}), f({1, 3})});
    CHECK(hollow.dim() == 1);
    CHECK(hollow.faces_of_dim(0).size() == 3);
    CHECK(hollow.index_of(f({2, 3})) == 2);
    CHECK(hollow.index_of(f({1, 2, 3})) == -1);
    CHECK(SimplicialComplex().is_void());
    CHECK(SimplicialComplex().dim() == -2);
    CHECK(SimplicialComplex(3, {0}).dim() == -1);
    CHECK_THROWS_AS(SimplicialComplex(3, {0, f({1, 2})}), PreconditionError);
}

TEST_CASE("Koszul complexes of the example ideals") {
    const auto tri = testing::triangle_ideal();
    const auto k111 = koszul_complex(tri, MultiDegree{1, 1, 1});
    CHECK(k111.faces() == std::vector<Face>{0, f({1}), f({2}), f({3})});
    CHECK(koszul_complex(tri, MultiDegree{1, 1, 0}).faces() == std::vector<Face>{0});
    CHECK(koszul_complex(tri, MultiDegree{1, 0, 0}).is_void());

    // the path z - y - x at 121
    const auto k121 = koszul_complex(testing::staircase_ideal(), MultiDegree{1, 2, 1});
    CHECK(k121.faces_of_dim(1) == std::vector<Face>{f({1, 2}), f({2, 3})});
    CHECK(k121.dim() == 1);
}

TEST_CASE("Koszul complexes agree with the membership definition") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const auto ideal = testing::random_ideal(rng);
        for (const auto& b : box_degrees(ideal.lcm())) {
            const auto k = koszul_complex(ideal, b);
            std::vector<Face> expected;
            for (Face t = 0; t < (Face{1} << ideal.n()); ++t) {
                if ((t & ~b.support()) != 0) continue;
                if (member(ideal, b.minus_face(t))) expected.push_back(t);
            }
            std::sort(expected.begin(), expected.end());
            auto got = k.faces();
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
        }
    }
}

TEST_CASE("candidate degrees") {
    const auto c = betti_candidate_degrees(testing::triangle_ideal());
    CHECK(c == std::vector<MultiDegree>{MultiDegree{0, 1, 1}, MultiDegree{1, 0, 1}, MultiDegree{1, 1, 0},
                                        MultiDegree{1, 1, 1}});
    const MonomialIdeal single(2, {MultiDegree{2, 1}});
    CHECK(betti_candidate_degrees(single) == std::vector<MultiDegree>{MultiDegree{2, 1}});
    const auto s = betti_candidate_degrees(testing::staircase_ideal());
    CHECK(std::find(s.begin(), s.end(), MultiDegree{1, 3, 1}) != s.end());
}

TEST_CASE("Betti tables of the example ideals") {
    const auto t = betti_table(testing::triangle_ideal(), Field::rationals());
    CHECK(t.at(0, MultiDegree{1, 1, 0}) == 1);
    CHECK(t.at(0, MultiDegree{0, 1, 1}) == 1);
    CHECK(t.at(0, MultiDegree{1, 0, 1}) == 1);
    CHECK(t.at(1, MultiDegree{1, 1, 1}) == 2);
    CHECK(t.totals() == std::vector<std::size_t>{3, 2});

    const auto s = betti_table(testing::staircase_ideal(), Field::rationals());
    CHECK(s.at(2, MultiDegree{1, 3, 1}) == 1);
    CHECK(s.totals() == std::vector<std::size_t>{3, 3, 1});

    const auto rp2 = testing::rp2_ideal();
    const MultiDegree top{1, 1, 1, 1, 1, 1};
    CHECK(betti_table(rp2, Field::prime(2)).at(3, top) == 1);
    CHECK(betti_table(rp2, Field::rationals()).at(3, top) == 0);
    CHECK(betti_table(rp2, Field::rationals()).length() == 2);
    CHECK(betti_table(rp2, Field::prime(3)).length() == 2);
}

TEST_CASE("ideal parsing") {
    const auto a = parse_ideal_text("xy\ny^3 # comment\nz\n");
    CHECK(a.n() == 3);
    CHECK(a.generators().size() == 3);
    CHECK(a.contains(MultiDegree{0, 3, 0}));
    const auto b = parse_ideal_text("1 1 0\n0 1 1\n");
    CHECK(b.n() == 3);
    CHECK(b.contains(MultiDegree{0, 1, 1}));
    const auto c = parse_ideal_text("vars 5\nx1*x4^2\n");
    CHECK(c.n() == 5);
    CHECK(c.generators()[0] == MultiDegree{1, 0, 0, 2, 0});
    const auto d = parse_ideal_json(R"({"n": 3, "generators": [[1,1,0], "yz"]})");
    CHECK(d.generators().size() == 2);
    CHECK(parse_ideal(R"({"n":2,"generators":[[1,0]]})").n() == 2);
    CHECK(parse_ideal_text("x*y", 4).n() == 4);
    CHECK_THROWS_AS(parse_ideal_text("# nothing\n"), PreconditionError);
    CHECK_THROWS_AS(parse_ideal_text("x*q"), ParseError);
    CHECK_THROWS_AS(parse_ideal_text("1 2\n1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json("{\"n\": 2}"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json("not json"), ParseError);
    CHECK(monomial_string(MultiDegree{1, 3, 0}) == "xy^3");
}

TEST_CASE("parsing round trips through monomial strings") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const auto ideal = testing::random_ideal(rng, 5, 3, 5);
        std::string text = "vars " + std::to_string(ideal.n()) + "\n";
        for (const auto& g : ideal.generators()) text += monomial_string(g) + "\n";
        const auto back = parse_ideal_text(text);
        CHECK(back.generators() == ideal.generators());
    }
}
