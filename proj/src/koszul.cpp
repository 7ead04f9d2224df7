#include "sylvan/koszul.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "sylvan/chain_algebra.hpp"

namespace sylvan {

std::string face_label(Face f, int n) {
    if (f == 0) return "∅";
    std::string s;
    for (int v = 0; v < 32; ++v) {
        if (!face_contains(f, v)) continue;
        if (n <= 3) {
            s += static_cast<char>('x' + v);
        } else {
            s += "x" + std::to_string(v + 1);
        }
    }
    return s;
}

std::vector<int> face_vertices(Face f) {
    std::vector<int> v;
    for (int k = 0; k < 32; ++k)
        if (face_contains(f, k)) v.push_back(k + 1);
    return v;
}

Face face_from_vertices(const std::vector<int>& one_based) {
    Face f = 0;
    for (int v : one_based) {
        if (v < 1 || v > 32) throw ParseError("vertex index " + std::to_string(v) + " out of range");
        f |= 1U << (v - 1);
    }
    return f;
}

MultiDegree::MultiDegree(std::vector<int> entries) : e_(std::move(entries)) {
    for (int x : e_)
        if (x < 0) throw PreconditionError("negative exponent in multidegree");
}

MultiDegree MultiDegree::unit(int n, int k) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(k)] = 1;
    return MultiDegree(std::move(e));
}

int MultiDegree::total() const {
    int t = 0;
    for (int x : e_) t += x;
    return t;
}

Face MultiDegree::support() const {
    Face f = 0;
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (e_[k] > 0) f |= 1U << k;
    return f;
}

static void check_same_n(const MultiDegree& a, const MultiDegree& b) {
    if (a.n() != b.n()) {
        throw PreconditionError("dimension mismatch: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
    }
}

bool MultiDegree::leq(const MultiDegree& o) const {
    check_same_n(*this, o);
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (e_[k] > o.e_[k]) return false;
    return true;
}

MultiDegree MultiDegree::join(const MultiDegree& o) const {
    check_same_n(*this, o);
    std::vector<int> e(e_.size());
    for (std::size_t k = 0; k < e_.size(); ++k) e[k] = std::max(e_[k], o.e_[k]);
    return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::plus(const MultiDegree& o) const {
    check_same_n(*this, o);
    std::vector<int> e(e_.size());
    for (std::size_t k = 0; k < e_.size(); ++k) e[k] = e_[k] + o.e_[k];
    return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::minus(const MultiDegree& o) const {
    check_same_n(*this, o);
    std::vector<int> e(e_.size());
    for (std::size_t k = 0; k < e_.size(); ++k) {
        e[k] = e_[k] - o.e_[k];
        if (e[k] < 0) throw PreconditionError("negative exponent in " + to_string() + " - " + o.to_string());
    }
    return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::minus_face(Face f) const {
    std::vector<int> e = e_;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (!face_contains(f, static_cast<int>(k))) continue;
        if (--e[k] < 0) throw PreconditionError("face leaves the orthant at " + to_string());
    }
    return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::plus_unit(int k) const {
    std::vector<int> e = e_;
    ++e[static_cast<std::size_t>(k)];
    return MultiDegree(std::move(e));
}

std::string MultiDegree::to_string() const {
    const bool compact = std::all_of(e_.begin(), e_.end(), [](int x) { return x < 10; });
    std::string s;
    if (compact) {
        for (int x : e_) s += static_cast<char>('0' + x);
        return s;
    }
    s = "(";
    for (std::size_t k = 0; k < e_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(e_[k]);
    }
    return s + ")";
}

bool graded_less(const MultiDegree& a, const MultiDegree& b) {
    const int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a < b;
}

MonomialIdeal::MonomialIdeal(int n, std::vector<MultiDegree> generators) : n_(n) {
    if (n < 1 || n > 30) throw PreconditionError("variable count must be between 1 and 30");
    if (generators.empty()) throw PreconditionError("the zero ideal is not supported");
    for (const auto& g : generators) {
        if (g.n() != n) throw PreconditionError("generator " + g.to_string() + " has the wrong length");
        if (g.total() == 0) throw PreconditionError("the unit ideal is not supported");
    }
    std::sort(generators.begin(), generators.end(), graded_less);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (const auto& g : generators) {
        const bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const MultiDegree& h) { return h.leq(g); });
        if (!redundant) gens_.push_back(g);
    }
}

bool MonomialIdeal::contains(const MultiDegree& b) const {
    if (b.n() != n_) throw PreconditionError("dimension mismatch in membership test");
    return std::any_of(gens_.begin(), gens_.end(), [&](const MultiDegree& g) { return g.leq(b); });
}

MultiDegree MonomialIdeal::lcm() const {
    MultiDegree m = MultiDegree::zero(n_);
    for (const auto& g : gens_) m = m.join(g);
    return m;
}

std::string MonomialIdeal::to_string() const {
    std::string s = "<";
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (k) s += ", ";
        s += monomial_string(gens_[k]);
    }
    return s + ">";
}

SimplicialComplex::SimplicialComplex(int n, std::vector<Face> faces) : n_(n), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    for (Face f : faces_) {
        if (n < 32 && (f >> n) != 0) throw PreconditionError("face outside the vertex set");
        for (int v = 0; v < n; ++v) {
            if (face_contains(f, v) && !std::binary_search(faces_.begin(), faces_.end(), f & ~(1U << v))) {
                throw PreconditionError("face set is not closed under taking subsets");
            }
        }
    }
    int top = -2;
    for (Face f : faces_) top = std::max(top, face_dim(f));
    by_dim_.assign(static_cast<std::size_t>(top + 2), {});
    for (Face f : faces_) by_dim_[static_cast<std::size_t>(face_dim(f) + 1)].push_back(f);
}

SimplicialComplex SimplicialComplex::from_facets(int n, const std::vector<Face>& facets) {
    std::vector<Face> faces;
    for (Face f : facets) {
        // All submasks of f.
        for (Face s = f;; s = (s - 1) & f) {
            faces.push_back(s);
            if (s == 0) break;
        }
    }
    return SimplicialComplex(n, std::move(faces));
}

int SimplicialComplex::dim() const {
    return static_cast<int>(by_dim_.size()) - 2;
}

const std::vector<Face>& SimplicialComplex::faces_of_dim(int d) const {
    static const std::vector<Face> none;
    if (d < -1 || d + 1 >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[static_cast<std::size_t>(d + 1)];
}

bool SimplicialComplex::contains(Face f) const {
    return std::binary_search(faces_.begin(), faces_.end(), f);
}

int SimplicialComplex::index_of(Face f) const {
    const auto& list = faces_of_dim(face_dim(f));
    auto it = std::lower_bound(list.begin(), list.end(), f);
    if (it == list.end() || *it != f) return -1;
    return static_cast<int>(it - list.begin());
}

SimplicialComplex koszul_complex(const MonomialIdeal& ideal, const MultiDegree& b) {
    if (b.n() != ideal.n()) throw PreconditionError("dimension mismatch in koszul_complex");
    std::vector<Face> faces;
    const Face supp = b.support();
    for (Face s = supp;; s = (s - 1) & supp) {
        if (ideal.contains(b.minus_face(s))) faces.push_back(s);
        if (s == 0) break;
    }
    return SimplicialComplex(ideal.n(), std::move(faces));
}

std::vector<MultiDegree> betti_candidate_degrees(const MonomialIdeal& ideal) {
    std::vector<MultiDegree> out;
    for (const auto& g : ideal.generators()) {
        std::vector<MultiDegree> next = out;
        next.push_back(g);
        for (const auto& d : out) next.push_back(d.join(g));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), graded_less);
    return out;
}

void BettiTable::set(int i, const MultiDegree& b, std::size_t value) {
    if (value == 0) {
        entries_.erase({i, b});
    } else {
        entries_[{i, b}] = value;
    }
}

std::size_t BettiTable::at(int i, const MultiDegree& b) const {
    auto it = entries_.find({i, b});
    return it == entries_.end() ? 0 : it->second;
}

int BettiTable::length() const {
    int len = -1;
    for (const auto& [key, v] : entries_) len = std::max(len, key.first);
    return len;
}

std::size_t BettiTable::total(int i) const {
    std::size_t t = 0;
    for (const auto& [key, v] : entries_)
        if (key.first == i) t += v;
    return t;
}

std::vector<std::size_t> BettiTable::totals() const {
    std::vector<std::size_t> t;
    for (int i = 0; i <= length(); ++i) t.push_back(total(i));
    return t;
}

std::vector<MultiDegree> BettiTable::degrees(int i) const {
    std::vector<MultiDegree> d;
    for (const auto& [key, v] : entries_)
        if (key.first == i) d.push_back(key.second);
    std::sort(d.begin(), d.end(), graded_less);
    return d;
}

BettiTable betti_table(const MonomialIdeal& ideal, Field field) {
    BettiTable table;
    for (const auto& b : betti_candidate_degrees(ideal)) {
        const SimplicialComplex k = koszul_complex(ideal, b);
        for (int d = -1; d <= k.dim(); ++d) {
            table.set(d + 1, b, reduced_homology_rank(k, d, field));
        }
    }
    return table;
}

namespace {

std::string strip_comment(std::string_view line) {
    auto pos = line.find('#');
    std::string s(line.substr(0, pos));
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    return s.substr(start);
}

// Returns exponents indexed by 0-based variable.
std::map<int, int> parse_monomial(const std::string& text) {
    std::map<int, int> exps;
    std::size_t i = 0;
    auto read_int = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected a number in monomial '" + text + "'");
        return std::stoi(text.substr(start, pos - start));
    };
    bool any = false;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int var = -1;
        if (c == 'x' || c == 'y' || c == 'z') {
            ++i;
            if (c == 'x' && i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                var = read_int(i) - 1;
                if (var < 0) throw ParseError("variables are numbered from x1 in '" + text + "'");
            } else {
                var = c - 'x';
            }
        } else if (c == '1' && !any && text.find_first_not_of("1 \t") == std::string::npos) {
            throw PreconditionError("the unit ideal is not supported");
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "' in monomial '" + text + "'");
        }
        int e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            e = read_int(i);
        }
        exps[var] += e;
        any = true;
    }
    if (!any) throw ParseError("empty monomial");
    return exps;
}

bool looks_numeric(const std::string& s) {
    return s.find_first_not_of("0123456789 \t,") == std::string::npos;
}

std::vector<int> parse_vector(const std::string& s) {
    std::vector<int> v;
    std::string token;
    std::string cleaned = s;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in2(cleaned);
    while (in2 >> token) v.push_back(std::stoi(token));
    return v;
}

MonomialIdeal assemble(int n_hint, const std::vector<std::vector<int>>& vectors,
                       const std::vector<std::map<int, int>>& monomials) {
    int n = n_hint;
    for (const auto& v : vectors) {
        if (n == 0) n = static_cast<int>(v.size());
        if (static_cast<int>(v.size()) != n) {
            throw ParseError("exponent vector of length " + std::to_string(v.size()) + " where " + std::to_string(n) +
                             " was expected");
        }
    }
    int max_var = -1;
    for (const auto& m : monomials)
        for (const auto& [var, e] : m) max_var = std::max(max_var, var);
    if (n == 0) n = max_var + 1;
    if (max_var >= n) throw ParseError("monomial uses variable " + std::to_string(max_var + 1) + " beyond n = " + std::to_string(n));
    if (n == 0) throw PreconditionError("the zero ideal is not supported");
    std::vector<MultiDegree> gens;
    for (const auto& v : vectors) gens.emplace_back(v);
    for (const auto& m : monomials) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (const auto& [var, x] : m) e[static_cast<std::size_t>(var)] = x;
        gens.emplace_back(std::move(e));
    }
    return MonomialIdeal(n, std::move(gens));
}

}  // namespace

MonomialIdeal parse_ideal_text(std::string_view text, int n_hint) {
    std::vector<std::vector<int>> vectors;
    std::vector<std::map<int, int>> monomials;
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = n_hint;
    while (std::getline(in, raw)) {
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        if (line.rfind("vars", 0) == 0) {
            const std::string rest = strip_comment(line.substr(4));
            if (!looks_numeric(rest) || rest.empty()) throw ParseError("malformed vars line '" + line + "'");
            const int declared = std::stoi(rest);
            if (n != 0 && n != declared) throw ParseError("conflicting variable counts");
            n = declared;
            continue;
        }
        if (looks_numeric(line)) {
            vectors.push_back(parse_vector(line));
        } else {
            monomials.push_back(parse_monomial(line));
        }
    }
    return assemble(n, vectors, monomials);
}

MonomialIdeal parse_ideal_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
        throw ParseError("JSON ideal needs a \"generators\" array");
    }
    int n = 0;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
        n = j["n"].get<int>();
    }
    std::vector<std::vector<int>> vectors;
    std::vector<std::map<int, int>> monomials;
    for (const auto& g : j["generators"]) {
        if (g.is_string()) {
            monomials.push_back(parse_monomial(g.get<std::string>()));
        } else if (g.is_array()) {
            std::vector<int> v;
            for (const auto& x : g) {
                if (!x.is_number_integer()) throw ParseError("exponents must be integers");
                v.push_back(x.get<int>());
            }
            vectors.push_back(std::move(v));
        } else {
            throw ParseError("generator must be an exponent array or a monomial string");
        }
    }
    return assemble(n, vectors, monomials);
}

MonomialIdeal parse_ideal(std::string_view text, int n_hint) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string_view::npos && text[pos] == '{') return parse_ideal_json(text);
    return parse_ideal_text(text, n_hint);
}

std::string monomial_string(const MultiDegree& d) {
    std::string s;
    for (int k = 0; k < d.n(); ++k) {
        if (d[k] == 0) continue;
        if (!s.empty() && d.n() > 3) s += "*";
        s += d.n() <= 3 ? std::string(1, static_cast<char>('x' + k)) : "x" + std::to_string(k + 1);
        if (d[k] > 1) s += "^" + std::to_string(d[k]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace sylvan
