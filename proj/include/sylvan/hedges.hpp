#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sylvan/chain_algebra.hpp"

namespace sylvan {

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

/// Index subsets of size r whose columns of m are linearly independent, in
/// lexicographic order.  Throws EnumerationCapExceeded when C(cols, r) > cap.
std::vector<std::vector<std::size_t>> independent_column_subsets(const Matrix& m, std::size_t r,
                                                                 std::size_t cap = default_enumeration_cap);

/// Hedge data for one integral boundary map ∂ (rows: (i-1)-faces, columns:
/// i-faces), indexed by row and column positions.  Enumerations are computed
/// on first use.
class BoundaryHedges {
public:
    explicit BoundaryHedges(IntMatrix boundary, std::size_t cap = default_enumeration_cap);

    const IntMatrix& boundary() const { return boundary_; }
    const Matrix& rational() const { return rational_; }
    std::size_t rank() const { return rank_; }
    /// Reduced column echelon basis of the image over Q.
    const Matrix& image() const { return image_; }
    const IntegralStructure& structure() const { return structure_; }

    const std::vector<std::vector<std::size_t>>& shrubberies() const;
    const std::vector<std::vector<std::size_t>>& stake_sets() const;

    /// det(∂_T)^2 in the lattice basis.
    mpz_class shrubbery_det2(const std::vector<std::size_t>& t) const;
    /// det(∂_S)^2 in the lattice basis.
    mpz_class stake_det2(const std::vector<std::size_t>& s) const;

    mpz_class delta_t() const;
    mpz_class delta_s() const;

private:
    IntMatrix boundary_;
    Matrix rational_;
    std::size_t rank_ = 0;
    Matrix image_;
    IntegralStructure structure_;
    std::vector<std::size_t> pivot_rows_;  // rows where the lattice basis is invertible
    mpz_class lattice_minor_ = 1;          // det of the lattice basis on pivot_rows_
    std::size_t cap_;
    mutable std::optional<std::vector<std::vector<std::size_t>>> shrubs_;
    mutable std::optional<std::vector<std::vector<std::size_t>>> stakes_;
};

/// A hedge for ∂_i: stake set S ⊆ K_{i-1} and shrubbery T ⊆ K_i.
struct Hedge {
    int i = 0;
    std::vector<Face> stakes;
    std::vector<Face> shrubs;
    friend bool operator==(const Hedge&, const Hedge&) = default;
};

/// {"i": i, "S": [[1,2],...], "T": [[1,2,3],...]} with 1-based vertices.
nlohmann::json hedge_to_json(const Hedge& h);
Hedge hedge_from_json(const nlohmann::json& j);

std::vector<std::vector<Face>> enumerate_shrubberies(const SimplicialComplex& k, int i,
                                                     std::size_t cap = default_enumeration_cap);
/// Stake sets (of (i-1)-faces) for ∂_i.
std::vector<std::vector<Face>> enumerate_stake_sets(const SimplicialComplex& k, int i,
                                                    std::size_t cap = default_enumeration_cap);

/// Chains are coefficient vectors over faces_of_dim of the relevant dimension.
using Chain = std::vector<Scalar>;

/// The unique cycle τ - t with t supported on the shrubbery T ⊆ K_i.
Chain circuit(const SimplicialComplex& k, int i, const std::vector<Face>& shrubbery, Face tau,
              Field field = Field::rationals());
/// The chain on T whose boundary is 1 on σ and 0 on the other stakes.
Chain shrub(const SimplicialComplex& k, const Hedge& hedge, Face sigma, Field field = Field::rationals());
/// Boundary in the image of ∂_{i+1} agreeing with ρ on the stake set S ⊆ K_i.
Chain boundary_projection(const SimplicialComplex& k, int i, const std::vector<Face>& stakes, Face rho,
                          Field field = Field::rationals());
/// ρ minus its boundary projection.
Chain hedge_rim(const SimplicialComplex& k, int i, const std::vector<Face>& stakes, Face rho,
                Field field = Field::rationals());

enum class SubsetKind { shrubbery, stake_set };

/// Square determinant of a shrubbery of ∂_i or a stake set for ∂_i.
mpz_class square_det(const SimplicialComplex& k, int i, const std::vector<Face>& subset, SubsetKind kind,
                     const IntegralStructure& structure);

struct DeltaInvariants {
    mpz_class delta_t = 1;   // Σ det(∂_T)^2 over shrubberies of ∂_i
    mpz_class delta_s = 1;   // Σ det(∂_S)^2 over stake sets in K_{i-1}
    mpz_class delta_st = 1;  // product of the two
};
DeltaInvariants delta_invariants(const SimplicialComplex& k, int i, std::size_t cap = default_enumeration_cap);

struct TorsionReport {
    bool torsionless = true;
    std::string witness;  // empty when torsionless
};

/// Checks every Koszul complex in the box [0, lcm of generators].
TorsionReport torsion_report(const MonomialIdeal& ideal, std::uint64_t p, std::size_t cap = default_enumeration_cap);
bool is_torsionless(const MonomialIdeal& ideal, std::uint64_t p, std::size_t cap = default_enumeration_cap);

/// All degrees c with 0 <= c <= top, in graded order.
std::vector<MultiDegree> box_degrees(const MultiDegree& top);

}  // namespace sylvan
