#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sylvan/splitting_oracle.hpp"

namespace sylvan {

/// Free summand S(-b)^β of one stage; basis columns are (i-1)-cycles of K^b
/// representing homology.
struct Summand {
    MultiDegree degree;
    Matrix homology_basis;
    std::size_t rank() const { return homology_basis.cols(); }
};

/// Component F_{i-1}(a) <- F_i(b) of the differential, with a < b.
struct Block {
    MultiDegree a, b;
    Matrix chain;      // C_{i-1}(K^b) -> C_{i-2}(K^a)
    Matrix homology;   // β_a x β_b, in the homology bases of the summands
};

struct AssembleOptions {
    Mode mode = Mode::canonical;
    Field field = Field::rationals();
    std::size_t cap = default_enumeration_cap;
    unsigned threads = 1;
    std::map<MultiDegree, Community> communities;
    std::optional<std::uint64_t> community_seed;
    /// Compute blocks by per-path products of splittings (Moore-Penrose for
    /// canonical mode) instead of node-by-node accumulation.
    bool oracle = false;
};

struct FreeResolution {
    MonomialIdeal ideal;
    AssembleOptions options;
    BettiTable betti;
    std::vector<std::vector<Summand>> stages;
    /// maps[i] lists the blocks of F_{i-1} <- F_i; maps[0] is empty.
    std::vector<std::vector<Block>> maps;

    int length() const { return static_cast<int>(stages.size()) - 1; }
    /// Full matrix of F_{i-1} <- F_i over the field, rows and columns ordered
    /// by summand then basis vector.  Entry (a, b) stands for x^{b-a} times it.
    Matrix differential(int i) const;
};

/// Builds the minimal free resolution.  Canonical mode over F_p requires the
/// ideal to be p-torsionless and otherwise throws PreconditionError.
FreeResolution assemble(const MonomialIdeal& ideal, const AssembleOptions& options = {});

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    std::string to_string() const;
};

/// Consecutive maps compose to zero, stage ranks match the Hochster Betti
/// numbers, and every block goes strictly down in degree.
VerificationReport verify_complex(const FreeResolution& r);

/// Homology of every multigraded strand in the box [0, lcm]: stage 0 gives
/// the ideal, higher stages vanish.
VerificationReport verify_exactness_degreewise(const FreeResolution& r);

/// Betti numbers read off the Taylor complex tensored with the field.
/// Throws EnumerationCapExceeded for more than `max_generators` generators.
BettiTable taylor_oracle(const MonomialIdeal& ideal, Field field, std::size_t max_generators = 16);

nlohmann::json to_json(const FreeResolution& r);
nlohmann::json betti_to_json(const BettiTable& t);
std::string betti_to_text(const BettiTable& t);
std::string to_text(const FreeResolution& r);

}  // namespace sylvan
