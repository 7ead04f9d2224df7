#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sylvan/pinv.hpp"

namespace sylvan {

/// Saturated decreasing path from b = top down to a = bottom; steps[j] is the
/// variable lowered between node j and node j + 1.
struct LatticePath {
    MultiDegree top;
    MultiDegree bottom;
    std::vector<int> steps;

    std::size_t length() const { return steps.size(); }
    /// b = b_0, b_1, ..., b_l = a.
    std::vector<MultiDegree> nodes() const;
    std::string to_string() const;
};

/// All saturated paths from b down to a, in lexicographic order of steps.
/// Throws PreconditionError unless a <= b.
std::vector<LatticePath> lattice_paths(const MultiDegree& a, const MultiDegree& b);

enum class Mode { canonical, community };
std::string to_string(Mode m);

/// Lazily computed Koszul complexes and per-node matrices for one ideal.
/// Not thread-safe; use one instance per thread.
class KoszulCache {
public:
    /// Canonical mode computes over Q and reduces into `field` on demand.
    KoszulCache(MonomialIdeal ideal, Field field, Mode mode, std::size_t cap = default_enumeration_cap);
    ~KoszulCache();
    KoszulCache(KoszulCache&&) noexcept;
    KoszulCache& operator=(KoszulCache&&) noexcept;

    const MonomialIdeal& ideal() const { return ideal_; }
    Field field() const { return field_; }
    Mode mode() const { return mode_; }
    std::size_t cap() const { return cap_; }

    const SimplicialComplex& complex(const MultiDegree& c);
    /// ∂_i of K^c over field(), shape |K_{i-1}| x |K_i|.
    const Matrix& boundary(const MultiDegree& c, int i);
    /// Integral hedge data of ∂_i at c.
    const BoundaryHedges& hedges(const MultiDegree& c, int i);

    /// Splitting ∂⁺_i at c for the current mode.
    const Matrix& plus(const MultiDegree& c, int i);
    /// 1 - ∂⁺_i ∂_i on C_i(K^c).
    const Matrix& cycle_projection(const MultiDegree& c, int i);
    /// 1 - ∂_{i+1} ∂⁺_{i+1} on C_i(K^c).
    const Matrix& boundary_complement(const MultiDegree& c, int i);

    /// Community at c: the one supplied for c, otherwise the greedy one (or a
    /// random one when a seed was set).
    const Community& community(const MultiDegree& c);
    void set_community(const MultiDegree& c, Community community);
    void set_community_seed(std::uint64_t seed);

private:
    struct Node;
    Node& node(const MultiDegree& c);

    MonomialIdeal ideal_;
    Field field_;
    Mode mode_;
    std::size_t cap_;
    std::map<MultiDegree, std::unique_ptr<Node>> nodes_;
    std::map<MultiDegree, Community> supplied_;
    std::optional<std::uint64_t> seed_;
};

/// Generator for the random community at c; depends only on seed and c.
std::mt19937_64 node_rng(std::uint64_t seed, const MultiDegree& c);

/// d^k : C_i(upper) -> C_{i-1}(lower), τ ↦ sign · (τ minus k) when k ∈ τ.
/// Throws std::logic_error if an image face is missing from `lower`.
Matrix contraction(const SimplicialComplex& upper, const SimplicialComplex& lower, int i, int k, Field field);

/// Product of the Δ invariants along the path: stake sets for ∂_{i+1} at the
/// top, hedges for ∂_i at interior nodes, shrubberies for ∂_{i-1} at the bottom.
mpz_class path_delta(KoszulCache& cache, const LatticePath& path, int i);

/// Sylvan matrix D^{ab} : C_i(K^b) -> C_{i-1}(K^a) for the cache's mode,
/// accumulated node by node over the box [a, b].
Matrix sylvan_matrix(KoszulCache& cache, const MultiDegree& a, const MultiDegree& b, int i);

Matrix sylvan_matrix_canonical(const MonomialIdeal& ideal, const MultiDegree& a, const MultiDegree& b, int i,
                               std::size_t cap = default_enumeration_cap);
Matrix sylvan_matrix_community(const MonomialIdeal& ideal, const MultiDegree& a, const MultiDegree& b, int i,
                               const std::map<MultiDegree, Community>& communities, Field field = Field::rationals());

/// One chain-link fence: faces τ, τ_0, σ_1, τ_1, ..., σ_l, σ and the link
/// coefficients between consecutive faces.
struct Fence {
    LatticePath path;
    std::vector<std::string> hedgerow;  // hedge labels from the top node down
    std::vector<Face> faces;
    std::vector<Scalar> links;
    Scalar weight;                      // hedgerow weight times the link product
    mpz_class delta = 1;                // Δ of the path (1 for simple weights)

    Face source() const { return faces.front(); }
    Face target() const { return faces.back(); }
    std::string render(int n) const;
};

struct FenceEnumeration {
    Matrix matrix;                       // Σ_λ (1/Δ_λ) Σ_fences w
    std::size_t fence_count = 0;
    std::size_t hedgerow_count = 0;
    std::vector<Fence> fences;           // kept when requested
};

inline constexpr std::size_t default_hedgerow_cap = 200'000;

/// Literal fence sum over every hedgerow on every path (canonical mode, over
/// Q) or over the single hedgerow given by the cache's communities with
/// simple weights (community mode).
FenceEnumeration enumerate_fences(KoszulCache& cache, const MultiDegree& a, const MultiDegree& b, int i,
                                  bool keep_fences = false, std::size_t hedgerow_cap = default_hedgerow_cap);

}  // namespace sylvan
