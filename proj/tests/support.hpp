#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "sylvan/resolution.hpp"

namespace testing {

using namespace sylvan;

inline MonomialIdeal triangle_ideal() {
    return MonomialIdeal(3, {MultiDegree{1, 1, 0}, MultiDegree{0, 1, 1}, MultiDegree{1, 0, 1}});
}

inline MonomialIdeal staircase_ideal() {
    return MonomialIdeal(3, {MultiDegree{1, 1, 0}, MultiDegree{0, 3, 0}, MultiDegree{0, 0, 1}});
}

inline std::vector<Face> rp2_triangles() {
    const std::vector<std::vector<int>> t{{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                          {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}};
    std::vector<Face> out;
    for (const auto& v : t) out.push_back(face_from_vertices(v));
    return out;
}

inline SimplicialComplex rp2_complex() { return SimplicialComplex::from_facets(6, rp2_triangles()); }

/// Stanley-Reisner ideal of the six-vertex projective plane: all non-face triples.
inline MonomialIdeal rp2_ideal() {
    const auto tri = rp2_triangles();
    std::vector<MultiDegree> gens;
    for (Face f = 0; f < 64; ++f) {
        if (__builtin_popcount(f) != 3 || std::find(tri.begin(), tri.end(), f) != tri.end()) continue;
        std::vector<int> e(6, 0);
        for (int v = 0; v < 6; ++v) e[static_cast<std::size_t>(v)] = (f >> v) & 1;
        gens.emplace_back(e);
    }
    return MonomialIdeal(6, gens);
}

/// Random ideal with n <= max_n variables, exponents <= max_exp, at most
/// max_gens generators (before minimalization).
inline MonomialIdeal random_ideal(std::mt19937_64& rng, int max_n = 4, int max_exp = 3, int max_gens = 6) {
    std::uniform_int_distribution<int> nd(1, max_n), ed(0, max_exp), gd(1, max_gens);
    for (;;) {
        const int n = nd(rng);
        const int g = gd(rng);
        std::vector<MultiDegree> gens;
        for (int k = 0; k < g; ++k) {
            std::vector<int> e(static_cast<std::size_t>(n));
            for (auto& x : e) x = ed(rng);
            if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
            gens.emplace_back(e);
        }
        if (!gens.empty()) return MonomialIdeal(n, gens);
    }
}

/// Random complex on n vertices generated by a few random facets.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int n, int facets, int max_size = 4) {
    std::uniform_int_distribution<int> sd(1, std::min(max_size, n));
    std::vector<Face> fs;
    for (int k = 0; k < facets; ++k) {
        std::vector<int> verts(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) verts[static_cast<std::size_t>(v)] = v + 1;
        std::shuffle(verts.begin(), verts.end(), rng);
        verts.resize(static_cast<std::size_t>(sd(rng)));
        fs.push_back(face_from_vertices(verts));
    }
    return SimplicialComplex::from_facets(n, fs);
}

inline Matrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
        for (auto& x : row) x = d(rng);
    if (r == 0 || c == 0) return Matrix(r, c);
    return Matrix::from_rows(rows);
}

/// Matrix with the given rational entries.
inline Matrix q_matrix(const std::vector<std::vector<mpq_class>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& r : rows) {
        std::vector<Scalar> out;
        for (const auto& q : r) out.emplace_back(q);
        s.push_back(std::move(out));
    }
    return Matrix::from_rows(s, rows.empty() ? 0 : rows[0].size(), Field::rationals());
}

inline mpq_class q(long num, long den = 1) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

}  // namespace testing
