#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sylvan/sylvan.hpp"

namespace sylvan {

/// A splitting of ∂_i at every Koszul complex K^c, computed on demand.
class SplittingFamily {
public:
    using Generator = std::function<Splitting(const SimplicialComplex&, const MultiDegree&, int)>;

    /// Moore-Penrose pseudoinverses over Q.
    static SplittingFamily moore_penrose(const MonomialIdeal& ideal);
    /// Community hedge splittings: supplied communities where given, greedy
    /// (or random, when seeded) elsewhere.
    static SplittingFamily community(const MonomialIdeal& ideal, Field field,
                                     std::map<MultiDegree, Community> supplied = {},
                                     std::optional<std::uint64_t> seed = std::nullopt);
    /// Only the splittings added with set(); a missing one is an error.
    static SplittingFamily explicit_family(const MonomialIdeal& ideal, Field field);

    const MonomialIdeal& ideal() const { return ideal_; }
    Field field() const { return field_; }

    void set(const MultiDegree& c, int i, Splitting s);
    /// Throws PreconditionError when the family has no splitting at (c, i).
    const Splitting& at(const MultiDegree& c, int i);
    const SimplicialComplex& complex(const MultiDegree& c);

private:
    SplittingFamily(MonomialIdeal ideal, Field field, Generator gen);

    MonomialIdeal ideal_;
    Field field_;
    Generator gen_;
    std::map<MultiDegree, SimplicialComplex> complexes_;
    std::map<std::pair<MultiDegree, int>, Splitting> cache_;
};

/// Σ over lattice paths of (1 - ∂⁺∂)_a d ∂⁺ d ... ∂⁺ d (1 - ∂∂⁺)_b, one
/// product per path, as a map C_i(K^b) -> C_{i-1}(K^a).
Matrix differential_via_splittings(SplittingFamily& family, const MultiDegree& a, const MultiDegree& b, int i);

/// Which path lengths carry nonzero summands of the differential between
/// two degrees.
struct WallReport {
    MultiDegree a, b;
    bool comparable = false;
    std::map<std::size_t, std::size_t> paths_by_length;     // length -> number of paths
    std::map<std::size_t, std::size_t> nonzero_by_length;   // length -> nonzero summands
    bool only_full_length = true;
    std::string message;
};

WallReport wall_summand_check(SplittingFamily& family, const MultiDegree& a, const MultiDegree& b, int i);

}  // namespace sylvan
