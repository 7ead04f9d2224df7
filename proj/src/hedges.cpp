#include "sylvan/hedges.hpp"

#include <algorithm>

namespace sylvan {

namespace {

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

void dfs(const std::vector<std::vector<Scalar>>& columns, std::size_t r, std::size_t next, IncrementalSpan& basis,
         std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& out) {
    if (chosen.size() == r) {
        out.push_back(chosen);
        return;
    }
    for (std::size_t c = next; c + (r - chosen.size()) <= columns.size(); ++c) {
        if (!basis.try_add(columns[c])) continue;
        chosen.push_back(c);
        dfs(columns, r, c + 1, basis, chosen, out);
        chosen.pop_back();
        basis.pop();
    }
}

std::vector<std::size_t> indices_of(const std::vector<Face>& all, const std::vector<Face>& subset, const char* what) {
    std::vector<std::size_t> idx;
    for (Face f : subset) {
        auto it = std::lower_bound(all.begin(), all.end(), f);
        if (it == all.end() || *it != f) throw PreconditionError(std::string(what) + " contains a face outside the complex");
        idx.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return idx;
}

std::vector<Face> faces_at(const std::vector<Face>& all, const std::vector<std::size_t>& idx) {
    std::vector<Face> f;
    f.reserve(idx.size());
    for (auto k : idx) f.push_back(all[k]);
    return f;
}

Chain unit_chain(std::size_t n, std::size_t k, Field field) {
    Chain c(n, Scalar::zero(field));
    c[k] = Scalar::one(field);
    return c;
}

}  // namespace

std::vector<std::vector<std::size_t>> independent_column_subsets(const Matrix& m, std::size_t r, std::size_t cap) {
    if (binomial(m.cols(), r) > static_cast<double>(cap)) {
        throw EnumerationCapExceeded("enumerating " + std::to_string(r) + "-subsets of " + std::to_string(m.cols()) +
                                     " columns exceeds the cap of " + std::to_string(cap));
    }
    std::vector<std::vector<Scalar>> columns;
    for (std::size_t c = 0; c < m.cols(); ++c) columns.push_back(m.col(c));
    std::vector<std::vector<std::size_t>> out;
    IncrementalSpan basis;
    std::vector<std::size_t> chosen;
    dfs(columns, r, 0, basis, chosen, out);
    return out;
}

BoundaryHedges::BoundaryHedges(IntMatrix boundary, std::size_t cap)
    : boundary_(std::move(boundary)), rational_(boundary_.to_field()), cap_(cap) {
    image_ = image_basis(rational_);
    rank_ = image_.cols();
    structure_ = integral_structure(boundary_);
    const Matrix lattice = structure_.lattice_basis.to_field();
    pivot_rows_ = row_echelon(lattice.transpose()).pivots;
    lattice_minor_ = integer_determinant(structure_.lattice_basis.rows_subset(pivot_rows_));
}

const std::vector<std::vector<std::size_t>>& BoundaryHedges::shrubberies() const {
    if (!shrubs_) shrubs_ = independent_column_subsets(rational_, rank_, cap_);
    return *shrubs_;
}

const std::vector<std::vector<std::size_t>>& BoundaryHedges::stake_sets() const {
    if (!stakes_) stakes_ = independent_column_subsets(image_.transpose(), rank_, cap_);
    return *stakes_;
}

mpz_class BoundaryHedges::shrubbery_det2(const std::vector<std::size_t>& t) const {
    if (t.size() != rank_) throw PreconditionError("shrubbery has the wrong size");
    // ∂_T = L X, so det(∂_T restricted to the pivot rows) = det(L on those rows) det X.
    const mpz_class minor = integer_determinant(boundary_.columns(t).rows_subset(pivot_rows_));
    if (minor == 0) throw PreconditionError("columns do not form a shrubbery");
    const mpz_class det = minor / lattice_minor_;
    if (det * lattice_minor_ != minor) throw PreconditionError("shrubbery determinant is not integral");
    return det * det;
}

mpz_class BoundaryHedges::stake_det2(const std::vector<std::size_t>& s) const {
    if (s.size() != rank_) throw PreconditionError("stake set has the wrong size");
    const mpz_class det = integer_determinant(structure_.lattice_basis.rows_subset(s));
    if (det == 0) throw PreconditionError("rows do not form a stake set");
    return det * det;
}

mpz_class BoundaryHedges::delta_t() const {
    mpz_class sum = 0;
    for (const auto& t : shrubberies()) sum += shrubbery_det2(t);
    return sum;
}

mpz_class BoundaryHedges::delta_s() const {
    mpz_class sum = 0;
    for (const auto& s : stake_sets()) sum += stake_det2(s);
    return sum;
}

nlohmann::json hedge_to_json(const Hedge& h) {
    nlohmann::json s = nlohmann::json::array(), t = nlohmann::json::array();
    for (Face f : h.stakes) s.push_back(face_vertices(f));
    for (Face f : h.shrubs) t.push_back(face_vertices(f));
    return {{"i", h.i}, {"S", s}, {"T", t}};
}

Hedge hedge_from_json(const nlohmann::json& j) {
    try {
        Hedge h;
        h.i = j.at("i").get<int>();
        for (const auto& f : j.at("S")) h.stakes.push_back(face_from_vertices(f.get<std::vector<int>>()));
        for (const auto& f : j.at("T")) h.shrubs.push_back(face_from_vertices(f.get<std::vector<int>>()));
        std::sort(h.stakes.begin(), h.stakes.end());
        std::sort(h.shrubs.begin(), h.shrubs.end());
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed hedge: ") + e.what());
    }
}

std::vector<std::vector<Face>> enumerate_shrubberies(const SimplicialComplex& k, int i, std::size_t cap) {
    const BoundaryHedges h(integer_boundary(k, i), cap);
    std::vector<std::vector<Face>> out;
    for (const auto& t : h.shrubberies()) out.push_back(faces_at(k.faces_of_dim(i), t));
    return out;
}

std::vector<std::vector<Face>> enumerate_stake_sets(const SimplicialComplex& k, int i, std::size_t cap) {
    const BoundaryHedges h(integer_boundary(k, i), cap);
    std::vector<std::vector<Face>> out;
    for (const auto& s : h.stake_sets()) out.push_back(faces_at(k.faces_of_dim(i - 1), s));
    return out;
}

Chain circuit(const SimplicialComplex& k, int i, const std::vector<Face>& shrubbery, Face tau, Field field) {
    const auto& faces = k.faces_of_dim(i);
    const int pos = k.index_of(tau);
    if (pos < 0 || face_dim(tau) != i) throw PreconditionError("circuit: " + face_label(tau, k.n()) + " is not an i-face");
    const auto t = indices_of(faces, shrubbery, "shrubbery");
    const Matrix d = boundary_matrix(k, i, field).matrix;
    const Matrix dt = d.columns(t);
    if (rank(dt) != t.size() || t.size() != rank(d)) throw PreconditionError("circuit: not a shrubbery");
    Chain z = unit_chain(faces.size(), static_cast<std::size_t>(pos), field);
    if (std::find(shrubbery.begin(), shrubbery.end(), tau) != shrubbery.end()) {
        return Chain(faces.size(), Scalar::zero(field));
    }
    const auto x = solve(dt, d.columns({static_cast<std::size_t>(pos)}));
    for (std::size_t j = 0; j < t.size(); ++j) z[t[j]] -= (*x)(j, 0);
    return z;
}

Chain shrub(const SimplicialComplex& k, const Hedge& hedge, Face sigma, Field field) {
    const int i = hedge.i;
    const auto& rows = k.faces_of_dim(i - 1);
    const auto& cols = k.faces_of_dim(i);
    const auto s = indices_of(rows, hedge.stakes, "stake set");
    const auto t = indices_of(cols, hedge.shrubs, "shrubbery");
    auto it = std::find(hedge.stakes.begin(), hedge.stakes.end(), sigma);
    if (it == hedge.stakes.end()) throw PreconditionError("shrub: " + face_label(sigma, k.n()) + " is not a stake");
    const Matrix a = boundary_matrix(k, i, field).matrix.submatrix(s, t);
    const Matrix inv = inverse(a);
    const std::size_t col = static_cast<std::size_t>(it - hedge.stakes.begin());
    Chain out(cols.size(), Scalar::zero(field));
    for (std::size_t j = 0; j < t.size(); ++j) out[t[j]] = inv(j, col);
    return out;
}

Chain boundary_projection(const SimplicialComplex& k, int i, const std::vector<Face>& stakes, Face rho, Field field) {
    const auto& faces = k.faces_of_dim(i);
    const int pos = k.index_of(rho);
    if (pos < 0 || face_dim(rho) != i) throw PreconditionError("hedge rim: " + face_label(rho, k.n()) + " is not an i-face");
    const auto s = indices_of(faces, stakes, "stake set");
    const Matrix b = image_basis(boundary_matrix(k, i + 1, field).matrix);
    if (b.cols() != s.size()) throw PreconditionError("stake set has the wrong size");
    Chain out(faces.size(), Scalar::zero(field));
    if (s.empty()) return out;
    const Matrix bs_inv = inverse(b.rows_subset(s));
    auto where = std::find(s.begin(), s.end(), static_cast<std::size_t>(pos));
    if (where == s.end()) return out;  // ρ vanishes on S
    const std::size_t col = static_cast<std::size_t>(where - s.begin());
    for (std::size_t r = 0; r < faces.size(); ++r) {
        Scalar acc = Scalar::zero(field);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (!b(r, j).is_zero()) acc += b(r, j) * bs_inv(j, col);
        out[r] = acc;
    }
    return out;
}

Chain hedge_rim(const SimplicialComplex& k, int i, const std::vector<Face>& stakes, Face rho, Field field) {
    Chain beta = boundary_projection(k, i, stakes, rho, field);
    Chain r = unit_chain(beta.size(), static_cast<std::size_t>(k.index_of(rho)), field);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= beta[j];
    return r;
}

mpz_class square_det(const SimplicialComplex& k, int i, const std::vector<Face>& subset, SubsetKind kind,
                     const IntegralStructure& structure) {
    const IntMatrix& lattice = structure.lattice_basis;
    if (kind == SubsetKind::stake_set) {
        const auto s = indices_of(k.faces_of_dim(i - 1), subset, "stake set");
        if (s.size() != lattice.cols()) throw PreconditionError("stake set has the wrong size");
        const mpz_class det = integer_determinant(lattice.rows_subset(s));
        if (det == 0) throw PreconditionError("not a stake set");
        return det * det;
    }
    const auto t = indices_of(k.faces_of_dim(i), subset, "shrubbery");
    if (t.size() != lattice.cols()) throw PreconditionError("shrubbery has the wrong size");
    // Coordinates of ∂_T in the lattice basis.
    const auto x = solve(lattice.to_field(), integer_boundary(k, i).columns(t).to_field());
    if (!x) throw PreconditionError("lattice basis does not span the boundaries");
    const Scalar det = determinant(*x);
    if (det.is_zero()) throw PreconditionError("not a shrubbery");
    if (det.rational_value().get_den() != 1) throw PreconditionError("shrubbery determinant is not integral");
    const mpz_class v = det.rational_value().get_num();
    return v * v;
}

DeltaInvariants delta_invariants(const SimplicialComplex& k, int i, std::size_t cap) {
    const BoundaryHedges h(integer_boundary(k, i), cap);
    DeltaInvariants d;
    d.delta_t = h.delta_t();
    d.delta_s = h.delta_s();
    d.delta_st = d.delta_t * d.delta_s;
    return d;
}

std::vector<MultiDegree> box_degrees(const MultiDegree& top) {
    std::vector<MultiDegree> out;
    std::vector<int> cur(static_cast<std::size_t>(top.n()), 0);
    while (true) {
        out.emplace_back(cur);
        int k = 0;
        while (k < top.n() && cur[static_cast<std::size_t>(k)] == top[k]) cur[static_cast<std::size_t>(k++)] = 0;
        if (k == top.n()) break;
        ++cur[static_cast<std::size_t>(k)];
    }
    std::sort(out.begin(), out.end(), graded_less);
    return out;
}

TorsionReport torsion_report(const MonomialIdeal& ideal, std::uint64_t p, std::size_t cap) {
    TorsionReport report;
    if (p == 0) return report;
    const mpz_class pz(static_cast<unsigned long>(p));
    auto divides = [&](const mpz_class& v) { return v % pz == 0; };
    for (const auto& c : box_degrees(ideal.lcm())) {
        const SimplicialComplex k = koszul_complex(ideal, c);
        if (k.is_void()) continue;
        for (int i = 0; i <= k.dim() + 1; ++i) {
            const BoundaryHedges h(integer_boundary(k, i), cap);
            std::string what;
            if (divides(h.structure().torsion_order)) {
                what = "torsion order " + h.structure().torsion_order.get_str();
            } else if (divides(h.delta_t())) {
                what = "Δ^T = " + h.delta_t().get_str();
            } else if (divides(h.delta_s())) {
                what = "Δ^S = " + h.delta_s().get_str();
            }
            if (!what.empty()) {
                report.torsionless = false;
                report.witness = "degree " + c.to_string() + ", boundary map " + std::to_string(i) + ": " + what +
                                 " is divisible by " + std::to_string(p);
                return report;
            }
        }
    }
    return report;
}

bool is_torsionless(const MonomialIdeal& ideal, std::uint64_t p, std::size_t cap) {
    return torsion_report(ideal, p, cap).torsionless;
}

}  // namespace sylvan
