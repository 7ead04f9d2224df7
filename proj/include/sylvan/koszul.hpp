#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sylvan/field.hpp"

namespace sylvan {

/// Subset of {0..n-1} as a bitset; bit k is variable k.  Ordering by integer
/// value fixes every row and column order in the library.
using Face = std::uint32_t;

constexpr int face_dim(Face f) { return __builtin_popcount(f) - 1; }
constexpr bool face_contains(Face f, int v) { return (f >> v) & 1U; }

/// Sign (-1)^{#elements of f smaller than v}.
constexpr int removal_sign(Face f, int v) {
    return (__builtin_popcount(f & ((1U << v) - 1U)) % 2) ? -1 : 1;
}

/// "∅", "xz" for n <= 3, otherwise "x1x4".
std::string face_label(Face f, int n);
/// 1-based sorted vertex list.
std::vector<int> face_vertices(Face f);
Face face_from_vertices(const std::vector<int>& one_based);

/// Exponent vector in N^n.
class MultiDegree {
public:
    MultiDegree() = default;
    explicit MultiDegree(std::vector<int> entries);
    MultiDegree(std::initializer_list<int> entries) : MultiDegree(std::vector<int>(entries)) {}
    static MultiDegree zero(int n) { return MultiDegree(std::vector<int>(static_cast<std::size_t>(n), 0)); }
    static MultiDegree unit(int n, int k);

    int n() const { return static_cast<int>(e_.size()); }
    int operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& entries() const { return e_; }
    int total() const;
    /// Bitset of coordinates with positive entry.
    Face support() const;

    /// Componentwise order.
    bool leq(const MultiDegree& o) const;
    bool less(const MultiDegree& o) const { return leq(o) && *this != o; }
    MultiDegree join(const MultiDegree& o) const;
    MultiDegree plus(const MultiDegree& o) const;
    /// Throws PreconditionError if a coordinate would become negative.
    MultiDegree minus(const MultiDegree& o) const;
    MultiDegree minus_face(Face f) const;
    MultiDegree plus_unit(int k) const;

    /// Compact "131" when every entry is a single digit, else "(1,13,1)".
    std::string to_string() const;

    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
    /// Lexicographic; only for use as a container key.
    friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

private:
    std::vector<int> e_;
};

/// Orders degrees by total degree, then lexicographically.
bool graded_less(const MultiDegree& a, const MultiDegree& b);

class MonomialIdeal {
public:
    /// Keeps the minimal generators.  Throws PreconditionError for an empty
    /// list, the unit ideal, or mismatched lengths.
    MonomialIdeal(int n, std::vector<MultiDegree> generators);

    int n() const { return n_; }
    const std::vector<MultiDegree>& generators() const { return gens_; }
    bool contains(const MultiDegree& b) const;
    /// Join of all generators.
    MultiDegree lcm() const;

    std::string to_string() const;

private:
    int n_;
    std::vector<MultiDegree> gens_;
};

/// Downward-closed set of faces; void when it has no faces at all.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Throws PreconditionError if the set is not downward closed.
    SimplicialComplex(int n, std::vector<Face> faces);
    static SimplicialComplex from_facets(int n, const std::vector<Face>& facets);

    int n() const { return n_; }
    bool is_void() const { return faces_.empty(); }
    /// -2 for the void complex.
    int dim() const;
    const std::vector<Face>& faces() const { return faces_; }
    /// Faces of dimension d in ascending bitset order.
    const std::vector<Face>& faces_of_dim(int d) const;
    bool contains(Face f) const;
    /// Position of f in faces_of_dim(face_dim(f)), or -1.
    int index_of(Face f) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.n_ == b.n_ && a.faces_ == b.faces_;
    }

private:
    int n_ = 0;
    std::vector<Face> faces_;
    std::vector<std::vector<Face>> by_dim_;  // index d + 1
};

/// Faces τ with x^{b - τ} in I.
SimplicialComplex koszul_complex(const MonomialIdeal& ideal, const MultiDegree& b);

/// Joins of all nonempty generator subsets, in graded order.
std::vector<MultiDegree> betti_candidate_degrees(const MonomialIdeal& ideal);

class BettiTable {
public:
    void set(int i, const MultiDegree& b, std::size_t value);
    std::size_t at(int i, const MultiDegree& b) const;
    const std::map<std::pair<int, MultiDegree>, std::size_t>& entries() const { return entries_; }
    /// Largest stage with a nonzero entry, -1 if empty.
    int length() const;
    /// Sum over degrees of stage i.
    std::size_t total(int i) const;
    /// (total(0), total(1), ...)
    std::vector<std::size_t> totals() const;
    /// Degrees carrying a nonzero entry at stage i, in graded order.
    std::vector<MultiDegree> degrees(int i) const;

    friend bool operator==(const BettiTable&, const BettiTable&) = default;

private:
    std::map<std::pair<int, MultiDegree>, std::size_t> entries_;
};

/// β_{i,b} = dim H̃_{i-1}(K^b I) over the given field, for candidate degrees b.
BettiTable betti_table(const MonomialIdeal& ideal, Field field);

/// One generator per line, either as an exponent vector ("1 3 0") or a
/// monomial ("x*y^3", "x1*x3^2", "xy").  '#' starts a comment.  A line
/// "vars <n>" fixes the variable count; `n_hint` > 0 does the same.
MonomialIdeal parse_ideal_text(std::string_view text, int n_hint = 0);
/// {"n": 3, "generators": [[1,1,0], ...]}; generators may also be monomial strings.
MonomialIdeal parse_ideal_json(std::string_view text);
/// Dispatches on the first non-space character.
MonomialIdeal parse_ideal(std::string_view text, int n_hint = 0);
/// Monomial in the x,y,z or x1..xn notation.
std::string monomial_string(const MultiDegree& d);

}  // namespace sylvan
