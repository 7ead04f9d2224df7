#include "sylvan/splitting_oracle.hpp"

#include <memory>
#include <stdexcept>

namespace sylvan {

SplittingFamily::SplittingFamily(MonomialIdeal ideal, Field field, Generator gen)
    : ideal_(std::move(ideal)), field_(field), gen_(std::move(gen)) {}

SplittingFamily SplittingFamily::moore_penrose(const MonomialIdeal& ideal) {
    return SplittingFamily(ideal, Field::rationals(), [](const SimplicialComplex& k, const MultiDegree&, int i) {
        Matrix d = boundary_matrix(k, i).matrix;
        Matrix p = sylvan::moore_penrose(d);
        return Splitting{std::move(d), std::move(p), SplittingKind::moore_penrose};
    });
}

SplittingFamily SplittingFamily::community(const MonomialIdeal& ideal, Field field,
                                           std::map<MultiDegree, Community> supplied,
                                           std::optional<std::uint64_t> seed) {
    struct State {
        std::map<MultiDegree, Community> communities;
        std::map<MultiDegree, Community> supplied;
        std::optional<std::uint64_t> seed;
    };
    auto st = std::make_shared<State>();
    st->supplied = std::move(supplied);
    st->seed = seed;
    return SplittingFamily(ideal, field, [st, field](const SimplicialComplex& k, const MultiDegree& c, int i) {
        auto it = st->communities.find(c);
        if (it == st->communities.end()) {
            auto s = st->supplied.find(c);
            Community com;
            if (s != st->supplied.end()) {
                validate_community(k, s->second, field);
                com = s->second;
            } else {
                std::optional<std::mt19937_64> rng;
                if (st->seed) rng = node_rng(*st->seed, c);
                com = greedy_community(k, field, rng ? &*rng : nullptr);
            }
            it = st->communities.emplace(c, std::move(com)).first;
        }
        const auto& hs = it->second.hedges;
        Hedge h{i, {}, {}};
        if (i >= 0 && static_cast<std::size_t>(i) < hs.size()) h = hs[static_cast<std::size_t>(i)];
        Splitting s = hedge_splitting(k, h, field);
        s.kind = SplittingKind::community;
        return s;
    });
}

SplittingFamily SplittingFamily::explicit_family(const MonomialIdeal& ideal, Field field) {
    return SplittingFamily(ideal, field, nullptr);
}

const SimplicialComplex& SplittingFamily::complex(const MultiDegree& c) {
    auto it = complexes_.find(c);
    if (it == complexes_.end()) it = complexes_.emplace(c, koszul_complex(ideal_, c)).first;
    return it->second;
}

void SplittingFamily::set(const MultiDegree& c, int i, Splitting s) { cache_[{c, i}] = std::move(s); }

const Splitting& SplittingFamily::at(const MultiDegree& c, int i) {
    auto key = std::make_pair(c, i);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const SimplicialComplex& k = complex(c);
    if (!gen_) {
        // Maps between zero-dimensional chain groups need no choice.
        if (k.faces_of_dim(i).empty() || k.faces_of_dim(i - 1).empty()) {
            Matrix d = boundary_matrix(k, i, field_).matrix;
            Matrix p(d.cols(), d.rows(), field_);
            return cache_.emplace(key, Splitting{std::move(d), std::move(p), SplittingKind::hedge}).first->second;
        }
        throw PreconditionError("missing splitting for boundary map " + std::to_string(i) + " at degree " +
                                c.to_string());
    }
    return cache_.emplace(key, gen_(k, c, i)).first->second;
}

Matrix differential_via_splittings(SplittingFamily& family, const MultiDegree& a, const MultiDegree& b, int i) {
    const Field f = family.field();
    const SimplicialComplex& ka = family.complex(a);
    const SimplicialComplex& kb = family.complex(b);
    Matrix total(ka.faces_of_dim(i - 1).size(), kb.faces_of_dim(i).size(), f);
    if (a.n() != b.n() || !a.less(b)) return total;

    const Splitting& top = family.at(b, i + 1);
    const Matrix start = Matrix::identity(top.forward.rows(), f) - top.forward * top.plus;
    const Splitting& bottom = family.at(a, i - 1);
    const Matrix finish = Matrix::identity(bottom.forward.cols(), f) - bottom.plus * bottom.forward;

    for (const auto& path : lattice_paths(a, b)) {
        const auto nodes = path.nodes();
        Matrix m = start;
        for (std::size_t j = 0; j < path.length() && !m.is_zero(); ++j) {
            const SimplicialComplex& upper = family.complex(nodes[j]);
            const SimplicialComplex& lower = family.complex(nodes[j + 1]);
            m = contraction(upper, lower, i, path.steps[j], f) * m;
            if (j + 1 < path.length()) m = family.at(nodes[j + 1], i).plus * m;
        }
        if (m.is_zero()) continue;
        total += finish * m;
    }
    return total;
}

WallReport wall_summand_check(SplittingFamily& family, const MultiDegree& a, const MultiDegree& b, int i) {
    WallReport r;
    r.a = a;
    r.b = b;
    r.comparable = a.n() == b.n() && a.less(b);
    if (!r.comparable) {
        r.message = a == b ? "equal degrees: the differential block is zero"
                           : b.to_string() + " is not above " + a.to_string() + ": the differential block is zero";
        return r;
    }
    const std::size_t full = static_cast<std::size_t>(b.total() - a.total());
    const auto paths = lattice_paths(a, b);
    for (const auto& p : paths) ++r.paths_by_length[p.length()];
    const Field f = family.field();
    const Splitting& top = family.at(b, i + 1);
    const Matrix start = Matrix::identity(top.forward.rows(), f) - top.forward * top.plus;
    const Splitting& bottom = family.at(a, i - 1);
    const Matrix finish = Matrix::identity(bottom.forward.cols(), f) - bottom.plus * bottom.forward;
    for (const auto& path : paths) {
        const auto nodes = path.nodes();
        Matrix m = start;
        for (std::size_t j = 0; j < path.length(); ++j) {
            m = contraction(family.complex(nodes[j]), family.complex(nodes[j + 1]), i, path.steps[j], f) * m;
            if (j + 1 < path.length()) m = family.at(nodes[j + 1], i).plus * m;
        }
        if (!(finish * m).is_zero()) ++r.nonzero_by_length[path.length()];
    }
    for (const auto& [len, count] : r.nonzero_by_length)
        if (len != full && count > 0) r.only_full_length = false;
    r.message = std::to_string(paths.size()) + " paths of length " + std::to_string(full) + ", " +
                std::to_string(r.nonzero_by_length.count(full) ? r.nonzero_by_length.at(full) : 0) +
                " with nonzero summand";
    return r;
}

}  // namespace sylvan
