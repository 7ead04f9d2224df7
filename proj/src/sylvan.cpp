#include "sylvan/sylvan.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sylvan {

std::vector<MultiDegree> LatticePath::nodes() const {
    std::vector<MultiDegree> out{top};
    for (int k : steps) {
        std::vector<int> e = out.back().entries();
        --e[static_cast<std::size_t>(k)];
        out.emplace_back(std::move(e));
    }
    return out;
}

std::string LatticePath::to_string() const {
    std::string s;
    for (const auto& c : nodes()) {
        if (!s.empty()) s += ">";
        s += c.to_string();
    }
    return s;
}

std::vector<LatticePath> lattice_paths(const MultiDegree& a, const MultiDegree& b) {
    if (a.n() != b.n() || !a.leq(b)) {
        throw PreconditionError("no lattice path from " + b.to_string() + " down to " + a.to_string());
    }
    std::vector<LatticePath> out;
    std::vector<int> gap = b.minus(a).entries();
    std::vector<int> steps;
    const std::size_t len = static_cast<std::size_t>(b.total() - a.total());
    std::function<void()> walk = [&]() {
        if (steps.size() == len) {
            out.push_back({b, a, steps});
            return;
        }
        for (std::size_t k = 0; k < gap.size(); ++k) {
            if (gap[k] == 0) continue;
            --gap[k];
            steps.push_back(static_cast<int>(k));
            walk();
            steps.pop_back();
            ++gap[k];
        }
    };
    walk();
    return out;
}

std::string to_string(Mode m) { return m == Mode::canonical ? "canonical" : "community"; }

struct KoszulCache::Node {
    SimplicialComplex complex;
    std::map<int, Matrix> boundary;
    std::map<int, std::unique_ptr<BoundaryHedges>> hedges;
    std::map<int, Matrix> plus;
    std::map<int, Matrix> cycle;
    std::map<int, Matrix> complement;
    std::optional<Community> community;
};

KoszulCache::KoszulCache(MonomialIdeal ideal, Field field, Mode mode, std::size_t cap)
    : ideal_(std::move(ideal)), field_(field), mode_(mode), cap_(cap) {}

KoszulCache::~KoszulCache() = default;
KoszulCache::KoszulCache(KoszulCache&&) noexcept = default;
KoszulCache& KoszulCache::operator=(KoszulCache&&) noexcept = default;

KoszulCache::Node& KoszulCache::node(const MultiDegree& c) {
    auto it = nodes_.find(c);
    if (it == nodes_.end()) {
        auto n = std::make_unique<Node>();
        n->complex = koszul_complex(ideal_, c);
        it = nodes_.emplace(c, std::move(n)).first;
    }
    return *it->second;
}

const SimplicialComplex& KoszulCache::complex(const MultiDegree& c) { return node(c).complex; }

const Matrix& KoszulCache::boundary(const MultiDegree& c, int i) {
    Node& n = node(c);
    auto it = n.boundary.find(i);
    if (it == n.boundary.end()) it = n.boundary.emplace(i, boundary_matrix(n.complex, i, field_).matrix).first;
    return it->second;
}

const BoundaryHedges& KoszulCache::hedges(const MultiDegree& c, int i) {
    Node& n = node(c);
    auto it = n.hedges.find(i);
    if (it == n.hedges.end())
        it = n.hedges.emplace(i, std::make_unique<BoundaryHedges>(integer_boundary(n.complex, i), cap_)).first;
    return *it->second;
}

namespace {

Hedge community_hedge(const Community& c, int i) {
    if (i >= 0 && static_cast<std::size_t>(i) < c.hedges.size()) return c.hedges[static_cast<std::size_t>(i)];
    return Hedge{i, {}, {}};
}

}  // namespace

const Matrix& KoszulCache::plus(const MultiDegree& c, int i) {
    Node& n = node(c);
    auto it = n.plus.find(i);
    if (it != n.plus.end()) return it->second;
    Matrix m;
    if (mode_ == Mode::canonical) {
        m = pinv_via_hedge_formula(hedges(c, i)).reduced_mod(field_);
    } else {
        m = hedge_splitting(n.complex, community_hedge(community(c), i), field_).plus;
    }
    return n.plus.emplace(i, std::move(m)).first->second;
}

const Matrix& KoszulCache::cycle_projection(const MultiDegree& c, int i) {
    Node& n = node(c);
    auto it = n.cycle.find(i);
    if (it != n.cycle.end()) return it->second;
    Matrix m;
    if (mode_ == Mode::canonical) {
        m = sylvan::cycle_projection(hedges(c, i)).reduced_mod(field_);
    } else {
        const Matrix& d = boundary(c, i);
        m = Matrix::identity(d.cols(), field_) - plus(c, i) * d;
    }
    return n.cycle.emplace(i, std::move(m)).first->second;
}

const Matrix& KoszulCache::boundary_complement(const MultiDegree& c, int i) {
    Node& n = node(c);
    auto it = n.complement.find(i);
    if (it != n.complement.end()) return it->second;
    const std::size_t dim = n.complex.faces_of_dim(i).size();
    Matrix m;
    if (mode_ == Mode::canonical) {
        m = (Matrix::identity(dim) - sylvan::boundary_projection(hedges(c, i + 1))).reduced_mod(field_);
    } else {
        m = Matrix::identity(dim, field_) - boundary(c, i + 1) * plus(c, i + 1);
    }
    return n.complement.emplace(i, std::move(m)).first->second;
}

const Community& KoszulCache::community(const MultiDegree& c) {
    Node& n = node(c);
    if (!n.community) {
        auto it = supplied_.find(c);
        if (it != supplied_.end()) {
            validate_community(n.complex, it->second, field_);
            n.community = it->second;
        } else {
            std::optional<std::mt19937_64> rng;
            if (seed_) rng = node_rng(*seed_, c);
            n.community = greedy_community(n.complex, field_, rng ? &*rng : nullptr);
        }
    }
    return *n.community;
}

void KoszulCache::set_community(const MultiDegree& c, Community community) {
    supplied_[c] = std::move(community);
    auto it = nodes_.find(c);
    if (it != nodes_.end()) nodes_.erase(it);
}

void KoszulCache::set_community_seed(std::uint64_t seed) {
    seed_ = seed;
    for (auto& [c, n] : nodes_) {
        n->community.reset();
        n->plus.clear();
        n->cycle.clear();
        n->complement.clear();
    }
}

std::mt19937_64 node_rng(std::uint64_t seed, const MultiDegree& c) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (int e : c.entries()) words.push_back(static_cast<std::uint32_t>(e));
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

Matrix contraction(const SimplicialComplex& upper, const SimplicialComplex& lower, int i, int k, Field field) {
    const auto& cols = upper.faces_of_dim(i);
    const auto& rows = lower.faces_of_dim(i - 1);
    Matrix m(rows.size(), cols.size(), field);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Face tau = cols[c];
        if (!face_contains(tau, k)) continue;
        const Face sigma = tau & ~(Face{1} << k);
        const int r = lower.index_of(sigma);
        if (r < 0) {
            throw std::logic_error("contraction of " + face_label(tau, upper.n()) + " leaves the lower complex");
        }
        m(static_cast<std::size_t>(r), c) = Scalar::from_integer(field, removal_sign(tau, k));
    }
    return m;
}

mpz_class path_delta(KoszulCache& cache, const LatticePath& path, int i) {
    const auto nodes = path.nodes();
    mpz_class d = cache.hedges(nodes.front(), i + 1).delta_s();
    for (std::size_t j = 1; j + 1 < nodes.size(); ++j) {
        const BoundaryHedges& h = cache.hedges(nodes[j], i);
        d *= h.delta_s() * h.delta_t();
    }
    d *= cache.hedges(nodes.back(), i - 1).delta_t();
    return d;
}

Matrix sylvan_matrix(KoszulCache& cache, const MultiDegree& a, const MultiDegree& b, int i) {
    const Field f = cache.field();
    const std::size_t out_rows = cache.complex(a).faces_of_dim(i - 1).size();
    const std::size_t in_cols = cache.complex(b).faces_of_dim(i).size();
    if (a.n() != b.n() || !a.less(b)) return Matrix(out_rows, in_cols, f);

    // U_c : C_i(K^b) -> C_i(K^c), summed over partial paths from b to c.
    std::vector<MultiDegree> box;
    for (const auto& g : box_degrees(b.minus(a))) box.push_back(a.plus(g));
    std::sort(box.begin(), box.end(), [](const MultiDegree& x, const MultiDegree& y) { return graded_less(y, x); });

    std::map<MultiDegree, Matrix> u;
    u.emplace(b, cache.boundary_complement(b, i));
    auto incoming = [&](const MultiDegree& c) {
        Matrix w(cache.complex(c).faces_of_dim(i - 1).size(), in_cols, f);
        for (int k = 0; k < c.n(); ++k) {
            const MultiDegree up = c.plus_unit(k);
            if (!up.leq(b)) continue;
            const Matrix& above = u.at(up);
            if (above.is_zero()) continue;
            w += contraction(cache.complex(up), cache.complex(c), i, k, f) * above;
        }
        return w;
    };
    for (const auto& c : box) {
        if (c == b || c == a) continue;
        const Matrix w = incoming(c);
        u.emplace(c, w.is_zero() ? Matrix(cache.complex(c).faces_of_dim(i).size(), in_cols, f) : cache.plus(c, i) * w);
    }
    const Matrix w = incoming(a);
    if (w.is_zero()) return w;
    return cache.cycle_projection(a, i - 1) * w;
}

Matrix sylvan_matrix_canonical(const MonomialIdeal& ideal, const MultiDegree& a, const MultiDegree& b, int i,
                               std::size_t cap) {
    KoszulCache cache(ideal, Field::rationals(), Mode::canonical, cap);
    return sylvan_matrix(cache, a, b, i);
}

Matrix sylvan_matrix_community(const MonomialIdeal& ideal, const MultiDegree& a, const MultiDegree& b, int i,
                               const std::map<MultiDegree, Community>& communities, Field field) {
    KoszulCache cache(ideal, field, Mode::community);
    for (const auto& [c, com] : communities) cache.set_community(c, com);
    return sylvan_matrix(cache, a, b, i);
}

std::string Fence::render(int n) const {
    std::ostringstream os;
    os << path.to_string() << " [";
    for (std::size_t j = 0; j < hedgerow.size(); ++j) os << (j ? "; " : "") << hedgerow[j];
    os << "] " << face_label(faces[0], n);
    for (std::size_t q = 0; q < links.size(); ++q) os << " -(" << links[q].pretty() << ")- " << face_label(faces[q + 1], n);
    os << " : w=" << weight.pretty();
    if (delta != 1) os << " /" << delta.get_str();
    return os.str();
}

namespace {

// One hedge choice at one node: the link matrix and its weight.
struct LinkOption {
    Matrix link;
    mpz_class weight;
    std::string label;
};

std::string face_list(const std::vector<Face>& fs, int n) {
    std::string s = "{";
    for (std::size_t k = 0; k < fs.size(); ++k) s += (k ? "," : "") + face_label(fs[k], n);
    return s + "}";
}

std::vector<Face> pick(const std::vector<Face>& faces, const std::vector<std::size_t>& idx) {
    std::vector<Face> out;
    for (auto k : idx) out.push_back(faces[k]);
    return out;
}

// Rim maps 1 - β_S on C_i(K) for stake sets S of ∂_{i+1}.
std::vector<LinkOption> top_options(const SimplicialComplex& k, int i, const BoundaryHedges& h, bool canonical,
                                    const Hedge* chosen, Field f) {
    std::vector<LinkOption> out;
    const std::size_t dim = k.faces_of_dim(i).size();
    const auto& faces = k.faces_of_dim(i);
    if (!canonical) {
        const Splitting s = hedge_splitting(k, *chosen, f);
        out.push_back({Matrix::identity(dim, f) - s.forward * s.plus, 1, "S=" + face_list(chosen->stakes, k.n())});
        return out;
    }
    if (h.rank() == 0) {
        out.push_back({Matrix::identity(dim), 1, "S={}"});
        return out;
    }
    const Matrix& b = h.image();
    for (const auto& s : h.stake_sets()) {
        Matrix beta(dim, dim);
        const Matrix lift = b * inverse(b.rows_subset(s));
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t q = 0; q < s.size(); ++q) beta(r, s[q]) = lift(r, q);
        out.push_back({Matrix::identity(dim) - beta, h.stake_det2(s), "S=" + face_list(pick(faces, s), k.n())});
    }
    return out;
}

// Hedge splittings of ∂_i.
std::vector<LinkOption> interior_options(const SimplicialComplex& k, int i, const BoundaryHedges& h, bool canonical,
                                         const Hedge* chosen, Field f) {
    std::vector<LinkOption> out;
    if (!canonical) {
        out.push_back({hedge_splitting(k, *chosen, f).plus, 1,
                       "S=" + face_list(chosen->stakes, k.n()) + " T=" + face_list(chosen->shrubs, k.n())});
        return out;
    }
    const auto& rows = k.faces_of_dim(i - 1);
    const auto& cols = k.faces_of_dim(i);
    if (h.rank() == 0) {
        out.push_back({Matrix(cols.size(), rows.size()), 1, "S={} T={}"});
        return out;
    }
    for (const auto& s : h.stake_sets())
        for (const auto& t : h.shrubberies())
            out.push_back({hedge_splitting(h.rational(), s, t), h.stake_det2(s) * h.shrubbery_det2(t),
                           "S=" + face_list(pick(rows, s), k.n()) + " T=" + face_list(pick(cols, t), k.n())});
    return out;
}

// Circuit maps ζ_T on C_{i-1}(K) for shrubberies T of ∂_{i-1}.
std::vector<LinkOption> bottom_options(const SimplicialComplex& k, int i, const BoundaryHedges& h, bool canonical,
                                       const Hedge* chosen, Field f) {
    std::vector<LinkOption> out;
    const auto& faces = k.faces_of_dim(i - 1);
    const std::size_t dim = faces.size();
    if (!canonical) {
        const Splitting s = hedge_splitting(k, *chosen, f);
        out.push_back({Matrix::identity(dim, f) - s.plus * s.forward, 1, "T=" + face_list(chosen->shrubs, k.n())});
        return out;
    }
    if (h.rank() == 0) {
        out.push_back({Matrix::identity(dim), 1, "T={}"});
        return out;
    }
    const Matrix& m = h.rational();
    for (const auto& t : h.shrubberies()) {
        const auto x = solve(m.columns(t), m);
        Matrix z = Matrix::identity(dim);
        for (std::size_t j = 0; j < t.size(); ++j)
            for (std::size_t c = 0; c < dim; ++c) z(t[j], c) -= (*x)(j, c);
        out.push_back({std::move(z), h.shrubbery_det2(t), "T=" + face_list(pick(faces, t), k.n())});
    }
    return out;
}

}  // namespace

FenceEnumeration enumerate_fences(KoszulCache& cache, const MultiDegree& a, const MultiDegree& b, int i,
                                  bool keep_fences, std::size_t hedgerow_cap) {
    const bool canonical = cache.mode() == Mode::canonical;
    const Field f = canonical ? Field::rationals() : cache.field();
    const SimplicialComplex& ka = cache.complex(a);
    const SimplicialComplex& kb = cache.complex(b);
    const auto& out_faces = ka.faces_of_dim(i - 1);
    const auto& in_faces = kb.faces_of_dim(i);

    FenceEnumeration result;
    result.matrix = Matrix(out_faces.size(), in_faces.size(), f);
    if (a.n() != b.n() || !a.less(b)) {
        result.matrix = result.matrix.reduced_mod(cache.field());
        return result;
    }

    const auto paths = lattice_paths(a, b);
    for (const auto& path : paths) {
        const auto nodes = path.nodes();
        const std::size_t len = path.length();
        // options[0] top, options[1..len-1] interior, options[len] bottom
        std::vector<std::vector<LinkOption>> options(len + 1);
        {
            Hedge top_hedge, bottom_hedge;
            if (!canonical) {
                top_hedge = community_hedge(cache.community(b), i + 1);
                bottom_hedge = community_hedge(cache.community(a), i - 1);
            }
            options[0] = top_options(kb, i, cache.hedges(b, i + 1), canonical, &top_hedge, f);
            for (std::size_t j = 1; j < len; ++j) {
                Hedge h;
                if (!canonical) h = community_hedge(cache.community(nodes[j]), i);
                options[j] = interior_options(cache.complex(nodes[j]), i, cache.hedges(nodes[j], i), canonical, &h, f);
            }
            options[len] = bottom_options(ka, i, cache.hedges(a, i - 1), canonical, &bottom_hedge, f);
        }
        std::size_t count = 1;
        for (const auto& o : options) {
            if (count > hedgerow_cap / std::max<std::size_t>(o.size(), 1)) {
                throw EnumerationCapExceeded("more than " + std::to_string(hedgerow_cap) + " hedgerows on path " +
                                             path.to_string());
            }
            count *= o.size();
        }
        result.hedgerow_count += count;
        if (result.hedgerow_count > hedgerow_cap) {
            throw EnumerationCapExceeded("more than " + std::to_string(hedgerow_cap) + " hedgerows");
        }

        const mpz_class delta = canonical ? path_delta(cache, path, i) : mpz_class(1);
        const Scalar inv_delta = canonical ? Scalar(mpq_class(delta)).inverse() : Scalar::one(f);
        std::vector<std::vector<Face>> node_faces_i, node_faces_lower;
        for (const auto& c : nodes) {
            node_faces_i.push_back(cache.complex(c).faces_of_dim(i));
            node_faces_lower.push_back(cache.complex(c).faces_of_dim(i - 1));
        }

        std::vector<std::size_t> choice(len + 1, 0);
        std::vector<Face> faces;
        std::vector<Scalar> links;
        for (std::size_t row = 0; row < count; ++row) {
            {
                std::size_t r = row;
                for (std::size_t j = len + 1; j-- > 0;) {
                    choice[j] = r % options[j].size();
                    r /= options[j].size();
                }
            }
            mpz_class hw = 1;
            for (std::size_t j = 0; j <= len; ++j) hw *= options[j][choice[j]].weight;
            const Scalar hedgerow_weight = canonical ? Scalar(mpq_class(hw)) : Scalar::one(f);

            std::vector<std::string> labels;
            if (keep_fences)
                for (std::size_t j = 0; j <= len; ++j) labels.push_back(nodes[j].to_string() + ":" + options[j][choice[j]].label);

            // Walk: τ at b, then τ_0 (rim), σ_1 (contraction), τ_1 (splitting), ...
            std::function<void(std::size_t, std::size_t, Face, Scalar)> down;
            auto emit = [&](std::size_t col, Face sigma, const Scalar& w) {
                const int r = ka.index_of(sigma);
                result.matrix(static_cast<std::size_t>(r), col) += w * inv_delta;
                ++result.fence_count;
                if (keep_fences) result.fences.push_back({path, labels, faces, links, w, delta});
            };
            // step j: current face is an i-face at nodes[j] (after the rim or a splitting)
            down = [&](std::size_t col, std::size_t j, Face tau, Scalar w) {
                const int k = path.steps[j];
                if (!face_contains(tau, k)) return;
                const Face sigma = tau & ~(Face{1} << k);
                const Scalar sgn = Scalar::from_integer(f, removal_sign(tau, k));
                faces.push_back(sigma);
                links.push_back(sgn);
                const std::size_t next = j + 1;
                const Matrix& m = options[next][choice[next]].link;
                const int src = cache.complex(nodes[next]).index_of(sigma);
                if (src < 0) throw std::logic_error("fence leaves the Koszul complex at " + nodes[next].to_string());
                if (next == len) {
                    for (std::size_t r = 0; r < m.rows(); ++r) {
                        const Scalar& c = m(r, static_cast<std::size_t>(src));
                        if (c.is_zero()) continue;
                        faces.push_back(node_faces_lower[next][r]);
                        links.push_back(c);
                        emit(col, node_faces_lower[next][r], w * sgn * c);
                        faces.pop_back();
                        links.pop_back();
                    }
                } else {
                    for (std::size_t r = 0; r < m.rows(); ++r) {
                        const Scalar& c = m(r, static_cast<std::size_t>(src));
                        if (c.is_zero()) continue;
                        faces.push_back(node_faces_i[next][r]);
                        links.push_back(c);
                        down(col, next, node_faces_i[next][r], w * sgn * c);
                        faces.pop_back();
                        links.pop_back();
                    }
                }
                faces.pop_back();
                links.pop_back();
            };
            const Matrix& rim = options[0][choice[0]].link;
            for (std::size_t col = 0; col < in_faces.size(); ++col) {
                for (std::size_t r = 0; r < rim.rows(); ++r) {
                    const Scalar& c = rim(r, col);
                    if (c.is_zero()) continue;
                    faces = {in_faces[col], node_faces_i[0][r]};
                    links = {c};
                    down(col, 0, node_faces_i[0][r], hedgerow_weight * c);
                }
            }
        }
    }
    result.matrix = result.matrix.reduced_mod(cache.field());
    return result;
}

}  // namespace sylvan
