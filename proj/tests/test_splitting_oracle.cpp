#include <doctest.h>

#include "support.hpp"

using namespace sylvan;

namespace {

MultiDegree deg(std::initializer_list<int> e) { return MultiDegree(std::vector<int>(e)); }

// Comparable pairs of candidate Betti degrees.
std::vector<std::pair<MultiDegree, MultiDegree>> betti_pairs(const MonomialIdeal& ideal) {
    std::vector<std::pair<MultiDegree, MultiDegree>> out;
    for (const auto& c : betti_candidate_degrees(ideal))
        for (const auto& d : betti_candidate_degrees(ideal))
            if (c.less(d)) out.emplace_back(c, d);
    return out;
}

}  // namespace

TEST_CASE("Moore-Penrose splittings reproduce the canonical blocks") {
    for (const auto& ideal : {testing::triangle_ideal(), testing::staircase_ideal()}) {
        auto family = SplittingFamily::moore_penrose(ideal);
        for (const auto& [a, b] : betti_pairs(ideal))
            for (int i = 0; i < ideal.n(); ++i)
                CHECK(differential_via_splittings(family, a, b, i) == sylvan_matrix_canonical(ideal, a, b, i));
    }
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 40; ++trial) {
        const auto ideal = testing::random_ideal(rng);
        auto family = SplittingFamily::moore_penrose(ideal);
        KoszulCache cache(ideal, Field::rationals(), Mode::canonical);
        for (const auto& [a, b] : betti_pairs(ideal))
            for (int i = 0; i < ideal.n(); ++i)
                CHECK(differential_via_splittings(family, a, b, i) == sylvan_matrix(cache, a, b, i));
    }
}

TEST_CASE("community splittings reproduce the community blocks") {
    std::mt19937_64 rng(409);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ideal = testing::random_ideal(rng);
        for (const Field fld : {Field::rationals(), Field::prime(2)}) {
            const std::uint64_t seed = static_cast<std::uint64_t>(trial) * 7 + 1;
            auto plain = SplittingFamily::community(ideal, fld);
            auto seeded = SplittingFamily::community(ideal, fld, {}, seed);
            KoszulCache greedy(ideal, fld, Mode::community);
            KoszulCache random(ideal, fld, Mode::community);
            random.set_community_seed(seed);
            for (const auto& [a, b] : betti_pairs(ideal)) {
                for (int i = 0; i < ideal.n(); ++i) {
                    CHECK(differential_via_splittings(plain, a, b, i) == sylvan_matrix(greedy, a, b, i));
                    CHECK(differential_via_splittings(seeded, a, b, i) == sylvan_matrix(random, a, b, i));
                }
            }
        }
    }
}

TEST_CASE("explicit families") {
    const auto s = testing::staircase_ideal();
    auto family = SplittingFamily::explicit_family(s, Field::rationals());
    const auto a = deg({1, 1, 1}), b = deg({1, 3, 1});
    CHECK_THROWS_AS(differential_via_splittings(family, a, b, 1), PreconditionError);

    // fill in Moore-Penrose splittings by hand on the box
    for (const auto& c : box_degrees(b)) {
        if (!a.leq(c)) continue;
        const auto& k = family.complex(c);
        for (int i = 0; i <= 2; ++i) {
            const Matrix d = boundary_matrix(k, i).matrix;
            family.set(c, i, Splitting{d, moore_penrose(d)});
        }
    }
    CHECK(differential_via_splittings(family, a, b, 1) == sylvan_matrix_canonical(s, a, b, 1));
    CHECK(family.at(a, 1).is_moore_penrose());
}

TEST_CASE("wall summands") {
    const auto s = testing::staircase_ideal();
    auto family = SplittingFamily::moore_penrose(s);
    const auto r = wall_summand_check(family, deg({1, 1, 1}), deg({1, 3, 1}), 1);
    CHECK(r.comparable);
    CHECK(r.paths_by_length == std::map<std::size_t, std::size_t>{{2, 1}});
    CHECK(r.nonzero_by_length == std::map<std::size_t, std::size_t>{{2, 1}});
    CHECK(r.only_full_length);

    const auto low = wall_summand_check(family, deg({0, 0, 1}), deg({1, 1, 1}), 0);
    CHECK(low.nonzero_by_length == std::map<std::size_t, std::size_t>{{2, 2}});
    CHECK(low.message.find("2 paths") != std::string::npos);

    const auto flat = wall_summand_check(family, deg({0, 0, 1}), deg({1, 3, 0}), 0);
    CHECK_FALSE(flat.comparable);
    CHECK(flat.paths_by_length.empty());
    CHECK(flat.message.find("not above") != std::string::npos);
    CHECK(differential_via_splittings(family, deg({0, 0, 1}), deg({1, 3, 0}), 0).is_zero());
}
