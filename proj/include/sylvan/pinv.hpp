#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sylvan/hedges.hpp"

namespace sylvan {

enum class SplittingKind { moore_penrose, hedge, hedge_formula, community };
std::string to_string(SplittingKind k);

/// A map ∂ together with a chosen ∂⁺ going the other way.
struct Splitting {
    Matrix forward;
    Matrix plus;
    SplittingKind kind = SplittingKind::moore_penrose;

    /// ∂∂⁺∂ = ∂ and ∂⁺∂∂⁺ = ∂⁺.
    bool is_splitting() const;
    /// Additionally ∂∂⁺ and ∂⁺∂ symmetric.
    bool is_moore_penrose() const;
};

/// Exact pseudoinverse over Q through a full-rank factorization.  Throws
/// FieldError for prime fields.
Matrix moore_penrose(const Matrix& m);

/// ι_T (∂_{S×T})^{-1} π_S for row indices S and column indices T.
Matrix hedge_splitting(const Matrix& m, const std::vector<std::size_t>& stakes, const std::vector<std::size_t>& shrubs);
/// Hedge splitting of ∂_{hedge.i} on k.
Splitting hedge_splitting(const SimplicialComplex& k, const Hedge& hedge, Field field = Field::rationals());

/// Average of all hedge splittings weighted by det(∂_S)^2 det(∂_T)^2.
Matrix pinv_via_hedge_formula(const BoundaryHedges& h);
Matrix pinv_via_hedge_formula(const SimplicialComplex& k, int i, std::size_t cap = default_enumeration_cap);

/// Weighted average of the circuit maps ζ_T over shrubberies of ∂ (acts on
/// the domain of ∂).
Matrix cycle_projection(const BoundaryHedges& h);
/// Weighted average of the boundary maps β_S over stake sets of ∂ (acts on
/// the codomain of ∂).
Matrix boundary_projection(const BoundaryHedges& h);

/// Per-dimension hedges with T_i and S_i disjoint.  hedges[i] is the hedge
/// for ∂_i, for 0 <= i <= dim + 1.
struct Community {
    std::vector<Hedge> hedges;
    friend bool operator==(const Community&, const Community&) = default;
};

/// Projection onto the i-cycles: canonical when `community` is null,
/// otherwise 1 - ∂⁺∂ for the community hedge of ∂_i.
Matrix projection_to_cycles(const SimplicialComplex& k, int i, const Community* community = nullptr,
                            Field field = Field::rationals(), std::size_t cap = default_enumeration_cap);
/// Projection onto the i-boundaries: canonical when `community` is null,
/// otherwise ∂∂⁺ for the community hedge of ∂_{i+1}.
Matrix projection_to_boundaries(const SimplicialComplex& k, int i, const Community* community = nullptr,
                                Field field = Field::rationals(), std::size_t cap = default_enumeration_cap);

/// Greedy community: faces are scanned in bitset order, or in a random order
/// drawn from `rng` when given.  Ranks are taken over `field`.
Community greedy_community(const SimplicialComplex& k, Field field = Field::rationals(),
                           std::mt19937_64* rng = nullptr);

/// Throws PreconditionError describing the first violated condition.
void validate_community(const SimplicialComplex& k, const Community& c, Field field = Field::rationals());

/// One hedge splitting per dimension, index i for ∂_i.
std::vector<Splitting> community_splittings(const SimplicialComplex& k, const Community& c,
                                            Field field = Field::rationals());

nlohmann::json community_to_json(const Community& c);
Community community_from_json(const nlohmann::json& j);

}  // namespace sylvan
