#include "sylvan/pinv.hpp"

#include <algorithm>
#include <numeric>

namespace sylvan {

namespace {

std::vector<std::size_t> indices_of(const std::vector<Face>& all, const std::vector<Face>& subset, const char* what) {
    std::vector<std::size_t> idx;
    for (Face f : subset) {
        auto it = std::lower_bound(all.begin(), all.end(), f);
        if (it == all.end() || *it != f) throw PreconditionError(std::string(what) + " contains a face outside the complex");
        idx.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return idx;
}

Scalar to_scalar(const mpz_class& v) { return Scalar(mpq_class(v)); }

Hedge hedge_at(const Community* c, int i) {
    if (c && i >= 0 && static_cast<std::size_t>(i) < c->hedges.size()) return c->hedges[static_cast<std::size_t>(i)];
    return Hedge{i, {}, {}};
}

bool symmetric(const Matrix& m) { return m == m.transpose(); }

}  // namespace

std::string to_string(SplittingKind k) {
    switch (k) {
        case SplittingKind::moore_penrose: return "moore_penrose";
        case SplittingKind::hedge: return "hedge";
        case SplittingKind::hedge_formula: return "hedge_formula";
        case SplittingKind::community: return "community";
    }
    return "unknown";
}

bool Splitting::is_splitting() const {
    return forward * plus * forward == forward && plus * forward * plus == plus;
}

bool Splitting::is_moore_penrose() const {
    return is_splitting() && symmetric(forward * plus) && symmetric(plus * forward);
}

Matrix moore_penrose(const Matrix& m) {
    if (!m.field().is_rational()) {
        throw FieldError("the Moore-Penrose pseudoinverse needs characteristic 0; use community splittings over " +
                         m.field().name());
    }
    const Echelon e = row_echelon(m);
    const std::size_t r = e.pivots.size();
    if (r == 0) return Matrix(m.cols(), m.rows(), m.field());
    const Matrix f = m.columns(e.pivots);
    std::vector<std::size_t> top(r);
    std::iota(top.begin(), top.end(), 0);
    const Matrix g = e.reduced.rows_subset(top);
    const Matrix gt = g.transpose(), ft = f.transpose();
    return gt * inverse(g * gt) * inverse(ft * f) * ft;
}

Matrix hedge_splitting(const Matrix& m, const std::vector<std::size_t>& stakes, const std::vector<std::size_t>& shrubs) {
    if (stakes.size() != shrubs.size()) throw PreconditionError("hedge with |S| != |T|");
    Matrix plus(m.cols(), m.rows(), m.field());
    if (stakes.empty()) return plus;
    const Matrix inv = inverse(m.submatrix(stakes, shrubs));
    for (std::size_t j = 0; j < shrubs.size(); ++j)
        for (std::size_t k = 0; k < stakes.size(); ++k) plus(shrubs[j], stakes[k]) = inv(j, k);
    return plus;
}

Splitting hedge_splitting(const SimplicialComplex& k, const Hedge& hedge, Field field) {
    const BoundaryMatrix d = boundary_matrix(k, hedge.i, field);
    const auto s = indices_of(d.rows, hedge.stakes, "stake set");
    const auto t = indices_of(d.cols, hedge.shrubs, "shrubbery");
    if (s.size() != rank(d.matrix)) {
        throw PreconditionError("hedge for boundary map " + std::to_string(hedge.i) + " has size " +
                                std::to_string(s.size()) + " but the rank is " + std::to_string(rank(d.matrix)));
    }
    Matrix plus;
    try {
        plus = hedge_splitting(d.matrix, s, t);
    } catch (const PreconditionError&) {
        throw PreconditionError("hedge for boundary map " + std::to_string(hedge.i) + " has a singular square block");
    }
    return {d.matrix, std::move(plus), SplittingKind::hedge};
}

Matrix pinv_via_hedge_formula(const BoundaryHedges& h) {
    const Matrix& m = h.rational();
    Matrix acc(m.cols(), m.rows());
    if (h.rank() == 0) return acc;
    const auto& stakes = h.stake_sets();
    const auto& shrubs = h.shrubberies();
    std::vector<mpz_class> ws, wt;
    for (const auto& s : stakes) ws.push_back(h.stake_det2(s));
    for (const auto& t : shrubs) wt.push_back(h.shrubbery_det2(t));
    mpz_class total = 0;
    for (std::size_t a = 0; a < stakes.size(); ++a) {
        for (std::size_t b = 0; b < shrubs.size(); ++b) {
            const Matrix inv = inverse(m.submatrix(stakes[a], shrubs[b]));
            const Scalar w = to_scalar(ws[a] * wt[b]);
            total += ws[a] * wt[b];
            for (std::size_t j = 0; j < shrubs[b].size(); ++j)
                for (std::size_t k = 0; k < stakes[a].size(); ++k)
                    if (!inv(j, k).is_zero()) acc(shrubs[b][j], stakes[a][k]) += w * inv(j, k);
        }
    }
    return acc * to_scalar(total).inverse();
}

Matrix pinv_via_hedge_formula(const SimplicialComplex& k, int i, std::size_t cap) {
    return pinv_via_hedge_formula(BoundaryHedges(integer_boundary(k, i), cap));
}

Matrix cycle_projection(const BoundaryHedges& h) {
    const Matrix& m = h.rational();
    const std::size_t n = m.cols();
    if (h.rank() == 0) return Matrix::identity(n);
    // ζ_T = 1 - ι_T X_T with ∂_T X_T = ∂.
    Matrix acc(n, n);
    mpz_class total = 0;
    for (const auto& t : h.shrubberies()) {
        const mpz_class w = h.shrubbery_det2(t);
        total += w;
        const auto x = solve(m.columns(t), m);
        const Scalar ws = to_scalar(w);
        for (std::size_t j = 0; j < t.size(); ++j)
            for (std::size_t c = 0; c < n; ++c)
                if (!(*x)(j, c).is_zero()) acc(t[j], c) += ws * (*x)(j, c);
    }
    return Matrix::identity(n) - acc * to_scalar(total).inverse();
}

Matrix boundary_projection(const BoundaryHedges& h) {
    const Matrix& b = h.image();
    const std::size_t m = b.rows();
    Matrix acc(m, m);
    if (h.rank() == 0) return acc;
    mpz_class total = 0;
    for (const auto& s : h.stake_sets()) {
        const mpz_class w = h.stake_det2(s);
        total += w;
        const Matrix lift = b * inverse(b.rows_subset(s));
        const Scalar ws = to_scalar(w);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t k = 0; k < s.size(); ++k)
                if (!lift(r, k).is_zero()) acc(r, s[k]) += ws * lift(r, k);
    }
    return acc * to_scalar(total).inverse();
}

Matrix projection_to_cycles(const SimplicialComplex& k, int i, const Community* community, Field field,
                            std::size_t cap) {
    if (!community) {
        return cycle_projection(BoundaryHedges(integer_boundary(k, i), cap)).reduced_mod(field);
    }
    const Splitting s = hedge_splitting(k, hedge_at(community, i), field);
    return Matrix::identity(s.forward.cols(), field) - s.plus * s.forward;
}

Matrix projection_to_boundaries(const SimplicialComplex& k, int i, const Community* community, Field field,
                                std::size_t cap) {
    if (!community) {
        return boundary_projection(BoundaryHedges(integer_boundary(k, i + 1), cap)).reduced_mod(field);
    }
    const Splitting s = hedge_splitting(k, hedge_at(community, i + 1), field);
    return s.forward * s.plus;
}

Community greedy_community(const SimplicialComplex& k, Field field, std::mt19937_64* rng) {
    Community c;
    if (k.is_void()) return c;
    auto scan_order = [&](std::size_t n) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        if (rng) std::shuffle(order.begin(), order.end(), *rng);
        return order;
    };
    std::vector<Face> previous_shrubs;  // T_{i-1}
    for (int i = 0; i <= k.dim() + 1; ++i) {
        const BoundaryMatrix d = boundary_matrix(k, i, field);
        Hedge h{i, {}, {}};
        {
            IncrementalSpan span;
            for (std::size_t c : scan_order(d.cols.size()))
                if (span.try_add(d.matrix.col(c))) h.shrubs.push_back(d.cols[c]);
        }
        {
            const Matrix image = image_basis(d.matrix);
            const Matrix rows = image.transpose();
            IncrementalSpan span;
            for (std::size_t r : scan_order(d.rows.size())) {
                if (span.size() == image.cols()) break;
                if (std::find(previous_shrubs.begin(), previous_shrubs.end(), d.rows[r]) != previous_shrubs.end()) continue;
                if (span.try_add(rows.col(r))) h.stakes.push_back(d.rows[r]);
            }
            if (span.size() != image.cols()) throw PreconditionError("greedy community construction failed");
        }
        std::sort(h.shrubs.begin(), h.shrubs.end());
        std::sort(h.stakes.begin(), h.stakes.end());
        previous_shrubs = h.shrubs;
        c.hedges.push_back(std::move(h));
    }
    return c;
}

void validate_community(const SimplicialComplex& k, const Community& c, Field field) {
    const std::size_t expected = k.is_void() ? 0 : static_cast<std::size_t>(k.dim() + 2);
    if (c.hedges.size() != expected) {
        throw PreconditionError("community has " + std::to_string(c.hedges.size()) + " hedges, expected " +
                                std::to_string(expected));
    }
    for (std::size_t i = 0; i < c.hedges.size(); ++i) {
        const Hedge& h = c.hedges[i];
        if (h.i != static_cast<int>(i)) throw PreconditionError("community hedges are out of order");
        hedge_splitting(k, h, field);  // validates sizes and invertibility
        if (i + 1 < c.hedges.size()) {
            for (Face f : h.shrubs) {
                const auto& next = c.hedges[i + 1].stakes;
                if (std::find(next.begin(), next.end(), f) != next.end()) {
                    throw PreconditionError("community: face " + face_label(f, k.n()) + " is both a shrub and a stake in dimension " +
                                            std::to_string(i));
                }
            }
        }
    }
}

std::vector<Splitting> community_splittings(const SimplicialComplex& k, const Community& c, Field field) {
    validate_community(k, c, field);
    std::vector<Splitting> out;
    for (const auto& h : c.hedges) {
        Splitting s = hedge_splitting(k, h, field);
        s.kind = SplittingKind::community;
        out.push_back(std::move(s));
    }
    return out;
}

nlohmann::json community_to_json(const Community& c) {
    nlohmann::json hedges = nlohmann::json::array();
    for (const auto& h : c.hedges) hedges.push_back(hedge_to_json(h));
    return {{"hedges", hedges}};
}

Community community_from_json(const nlohmann::json& j) {
    Community c;
    if (!j.contains("hedges") || !j["hedges"].is_array()) throw ParseError("community needs a \"hedges\" array");
    for (const auto& h : j["hedges"]) c.hedges.push_back(hedge_from_json(h));
    std::sort(c.hedges.begin(), c.hedges.end(), [](const Hedge& a, const Hedge& b) { return a.i < b.i; });
    return c;
}

}  // namespace sylvan
