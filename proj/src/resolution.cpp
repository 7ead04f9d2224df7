#include "sylvan/resolution.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sylvan {

namespace {

// Runs task(index, worker) for every index, with `threads` workers.
template <class Task>
void run_parallel(std::size_t count, unsigned threads, Task&& task) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t k = 0; k < count; ++k) task(k, 0U);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= count) return;
                try {
                    task(k, w);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Computes chain-level blocks for one worker.
class BlockEngine {
public:
    BlockEngine(const MonomialIdeal& ideal, const AssembleOptions& o) : options_(o) {
        if (o.oracle) {
            family_.emplace(o.mode == Mode::canonical
                                ? SplittingFamily::moore_penrose(ideal)
                                : SplittingFamily::community(ideal, o.field, o.communities, o.community_seed));
        } else {
            cache_.emplace(ideal, o.field, o.mode, o.cap);
            for (const auto& [c, com] : o.communities) cache_->set_community(c, com);
            if (o.community_seed) cache_->set_community_seed(*o.community_seed);
        }
    }

    Matrix chain(const MultiDegree& a, const MultiDegree& b, int i) {
        if (cache_) return sylvan_matrix(*cache_, a, b, i);
        return differential_via_splittings(*family_, a, b, i).reduced_mod(options_.field);
    }

private:
    AssembleOptions options_;
    std::optional<KoszulCache> cache_;
    std::optional<SplittingFamily> family_;
};

std::string degree_list(const std::vector<MultiDegree>& ds) {
    std::string s;
    for (const auto& d : ds) s += (s.empty() ? "" : " ") + d.to_string();
    return s;
}

nlohmann::json degree_json(const MultiDegree& d) { return d.entries(); }

nlohmann::json matrix_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).pretty());
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json face_json(const std::vector<Face>& fs, int n) {
    nlohmann::json out = nlohmann::json::array();
    for (Face f : fs) out.push_back(face_label(f, n));
    return out;
}

}  // namespace

Matrix FreeResolution::differential(int i) const {
    const Field f = options.field;
    if (i < 1 || i > length()) return Matrix(0, 0, f);
    const auto& rows = stages[static_cast<std::size_t>(i - 1)];
    const auto& cols = stages[static_cast<std::size_t>(i)];
    std::map<MultiDegree, std::size_t> row_off, col_off;
    std::size_t nr = 0, nc = 0;
    for (const auto& s : rows) {
        row_off[s.degree] = nr;
        nr += s.rank();
    }
    for (const auto& s : cols) {
        col_off[s.degree] = nc;
        nc += s.rank();
    }
    Matrix m(nr, nc, f);
    for (const auto& blk : maps[static_cast<std::size_t>(i)]) {
        const std::size_t r0 = row_off.at(blk.a), c0 = col_off.at(blk.b);
        for (std::size_t r = 0; r < blk.homology.rows(); ++r)
            for (std::size_t c = 0; c < blk.homology.cols(); ++c) m(r0 + r, c0 + c) = blk.homology(r, c);
    }
    return m;
}

FreeResolution assemble(const MonomialIdeal& ideal, const AssembleOptions& options) {
    const Field f = options.field;
    if (options.mode == Mode::canonical && !f.is_rational()) {
        const TorsionReport t = torsion_report(ideal, f.characteristic(), options.cap);
        if (!t.torsionless) {
            throw PreconditionError("the canonical resolution is not defined over " + f.name() + ": " + t.witness +
                                    "; use community mode");
        }
    }
    FreeResolution res{ideal, options, betti_table(ideal, f), {}, {}};
    const int len = res.betti.length();
    for (int i = 0; i <= len; ++i) {
        std::vector<Summand> stage;
        for (const auto& b : res.betti.degrees(i)) {
            stage.push_back({b, homology_basis(koszul_complex(ideal, b), i - 1, f)});
        }
        res.stages.push_back(std::move(stage));
    }
    res.maps.resize(res.stages.size());

    struct Task {
        int stage;
        std::size_t a, b;
    };
    std::vector<Task> tasks;
    for (int i = 1; i <= len; ++i) {
        const auto& lower = res.stages[static_cast<std::size_t>(i - 1)];
        const auto& upper = res.stages[static_cast<std::size_t>(i)];
        for (std::size_t bi = 0; bi < upper.size(); ++bi)
            for (std::size_t ai = 0; ai < lower.size(); ++ai)
                if (lower[ai].degree.less(upper[bi].degree)) tasks.push_back({i, ai, bi});
    }

    const unsigned workers = std::max(1U, options.threads);
    std::vector<std::unique_ptr<BlockEngine>> engines(workers);
    std::vector<Block> blocks(tasks.size());
    run_parallel(tasks.size(), workers, [&](std::size_t k, unsigned w) {
        if (!engines[w]) engines[w] = std::make_unique<BlockEngine>(ideal, options);
        const Task& t = tasks[k];
        const Summand& sa = res.stages[static_cast<std::size_t>(t.stage - 1)][t.a];
        const Summand& sb = res.stages[static_cast<std::size_t>(t.stage)][t.b];
        Block blk{sa.degree, sb.degree, engines[w]->chain(sa.degree, sb.degree, t.stage - 1), {}};
        const Matrix image = blk.chain * sb.homology_basis;
        const SimplicialComplex ka = koszul_complex(ideal, sa.degree);
        const Matrix boundaries = image_basis(boundary_matrix(ka, t.stage - 1, f).matrix);
        const auto y = solve(sa.homology_basis.hconcat(boundaries), image);
        if (!y) {
            throw std::logic_error("block " + sa.degree.to_string() + " <- " + sb.degree.to_string() +
                                   " does not map cycles to cycles");
        }
        std::vector<std::size_t> top(sa.rank());
        for (std::size_t r = 0; r < top.size(); ++r) top[r] = r;
        blk.homology = y->rows_subset(top);
        blocks[k] = std::move(blk);
    });
    for (std::size_t k = 0; k < tasks.size(); ++k)
        res.maps[static_cast<std::size_t>(tasks[k].stage)].push_back(std::move(blocks[k]));
    return res;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::to_string() const {
    std::string s;
    for (const auto& c : checks) {
        s += (c.passed ? "ok   " : "FAIL ") + c.name;
        if (!c.detail.empty()) s += ": " + c.detail;
        s += "\n";
    }
    return s;
}

VerificationReport verify_complex(const FreeResolution& r) {
    VerificationReport rep;
    const Field f = r.options.field;

    CheckResult order{"degrees decrease", true, ""};
    for (std::size_t i = 1; i < r.maps.size() && order.passed; ++i) {
        for (const auto& blk : r.maps[i]) {
            if (!blk.a.less(blk.b)) {
                order.passed = false;
                order.detail = "stage " + std::to_string(i) + " block " + blk.a.to_string() + " <- " + blk.b.to_string();
                break;
            }
        }
    }
    rep.checks.push_back(order);

    CheckResult ranks{"ranks match Hochster", true, ""};
    const BettiTable expected = betti_table(r.ideal, f);
    BettiTable actual;
    for (std::size_t i = 0; i < r.stages.size(); ++i)
        for (const auto& s : r.stages[i]) actual.set(static_cast<int>(i), s.degree, s.rank());
    if (!(actual == expected)) {
        ranks.passed = false;
        for (const auto& [key, v] : expected.entries()) {
            if (actual.at(key.first, key.second) != v) {
                ranks.detail = "stage " + std::to_string(key.first) + " degree " + key.second.to_string() + ": " +
                               std::to_string(actual.at(key.first, key.second)) + " vs " + std::to_string(v);
                break;
            }
        }
        if (ranks.detail.empty()) ranks.detail = "extra summands";
    }
    rep.checks.push_back(ranks);

    CheckResult square{"consecutive maps compose to zero", true, ""};
    for (std::size_t i = 2; i < r.maps.size() && square.passed; ++i) {
        // Σ_b M^{ab} M^{bc} for each pair (a, c)
        std::map<std::pair<MultiDegree, MultiDegree>, Matrix> sums;
        for (const auto& upper : r.maps[i]) {
            for (const auto& lower : r.maps[i - 1]) {
                if (lower.b != upper.a) continue;
                auto key = std::make_pair(lower.a, upper.b);
                Matrix prod = lower.homology * upper.homology;
                auto it = sums.find(key);
                if (it == sums.end()) {
                    sums.emplace(key, std::move(prod));
                } else {
                    it->second += prod;
                }
            }
        }
        for (const auto& [key, m] : sums) {
            if (!m.is_zero()) {
                square.passed = false;
                square.detail = "stages " + std::to_string(i - 2) + " <- " + std::to_string(i) + " at degrees " +
                                key.first.to_string() + " <- " + key.second.to_string() + ": " + m.to_string();
                break;
            }
        }
    }
    if (square.passed) {
        for (int i = 2; i <= r.length(); ++i) {
            if (!(r.differential(i - 1) * r.differential(i)).is_zero()) {
                square.passed = false;
                square.detail = "full matrices at stage " + std::to_string(i);
                break;
            }
        }
    }
    rep.checks.push_back(square);
    return rep;
}

VerificationReport verify_exactness_degreewise(const FreeResolution& r) {
    VerificationReport rep;
    CheckResult exact{"exact in every degree", true, ""};
    const int len = r.length();
    std::vector<Matrix> diffs(static_cast<std::size_t>(len + 2));
    for (int i = 1; i <= len; ++i) diffs[static_cast<std::size_t>(i)] = r.differential(i);
    // positions of each stage's basis vectors, tagged by degree
    std::vector<std::vector<MultiDegree>> tags(static_cast<std::size_t>(len + 1));
    for (int i = 0; i <= len; ++i)
        for (const auto& s : r.stages[static_cast<std::size_t>(i)])
            for (std::size_t k = 0; k < s.rank(); ++k) tags[static_cast<std::size_t>(i)].push_back(s.degree);

    std::size_t degrees = 0;
    for (const auto& c : box_degrees(r.ideal.lcm())) {
        ++degrees;
        std::vector<std::vector<std::size_t>> sel(static_cast<std::size_t>(len + 1));
        for (int i = 0; i <= len; ++i) {
            const auto& t = tags[static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < t.size(); ++k)
                if (t[k].leq(c)) sel[static_cast<std::size_t>(i)].push_back(k);
        }
        std::vector<std::size_t> rk(static_cast<std::size_t>(len + 2), 0);
        for (int i = 1; i <= len; ++i) {
            const auto& rows = sel[static_cast<std::size_t>(i - 1)];
            const auto& cols = sel[static_cast<std::size_t>(i)];
            if (rows.empty() || cols.empty()) continue;
            rk[static_cast<std::size_t>(i)] = rank(diffs[static_cast<std::size_t>(i)].submatrix(rows, cols));
        }
        for (int i = 0; i <= len; ++i) {
            const std::size_t dim = sel[static_cast<std::size_t>(i)].size();
            const std::size_t h = dim - rk[static_cast<std::size_t>(i)] - rk[static_cast<std::size_t>(i + 1)];
            const std::size_t want = (i == 0 && r.ideal.contains(c)) ? 1 : 0;
            if (h != want) {
                exact.passed = false;
                exact.detail = "degree " + c.to_string() + " stage " + std::to_string(i) + ": homology " +
                               std::to_string(h) + ", expected " + std::to_string(want);
                break;
            }
        }
        if (!exact.passed) break;
    }
    if (exact.passed) exact.detail = std::to_string(degrees) + " degrees";
    rep.checks.push_back(exact);
    return rep;
}

BettiTable taylor_oracle(const MonomialIdeal& ideal, Field field, std::size_t max_generators) {
    const auto& gens = ideal.generators();
    const std::size_t m = gens.size();
    if (m > max_generators) {
        throw EnumerationCapExceeded("Taylor complex needs 2^" + std::to_string(m) + " subsets; limit is " +
                                     std::to_string(max_generators) + " generators");
    }
    // subsets grouped by lcm
    std::map<MultiDegree, std::vector<std::uint32_t>> by_lcm;
    std::vector<MultiDegree> lcm(std::size_t{1} << m, MultiDegree::zero(ideal.n()));
    for (std::uint32_t s = 1; s < (1U << m); ++s) {
        const int low = __builtin_ctz(s);
        lcm[s] = lcm[s & (s - 1)].join(gens[static_cast<std::size_t>(low)]);
        by_lcm[lcm[s]].push_back(s);
    }
    BettiTable table;
    for (const auto& [b, subsets] : by_lcm) {
        std::map<int, std::vector<std::uint32_t>> by_size;
        for (auto s : subsets) by_size[__builtin_popcount(s)].push_back(s);
        // d_k : size k -> size k-1 within the strand
        std::map<int, std::size_t> ranks;
        for (const auto& [k, cols] : by_size) {
            auto it = by_size.find(k - 1);
            if (it == by_size.end()) continue;
            const auto& rows = it->second;
            Matrix d(rows.size(), cols.size(), field);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const std::uint32_t s = cols[c];
                int pos = 0;
                for (std::uint32_t bits = s; bits; bits &= bits - 1, ++pos) {
                    const std::uint32_t t = s & ~(bits & -bits);
                    auto r = std::lower_bound(rows.begin(), rows.end(), t);
                    if (r == rows.end() || *r != t) continue;
                    d(static_cast<std::size_t>(r - rows.begin()), c) = Scalar::from_integer(field, pos % 2 ? -1 : 1);
                }
            }
            ranks[k] = rank(d);
        }
        for (const auto& [k, cols] : by_size) {
            const std::size_t h = cols.size() - ranks[k] - ranks[k + 1];
            table.set(k - 1, b, h);
        }
    }
    return table;
}

nlohmann::json betti_to_json(const BettiTable& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, v] : t.entries()) out.push_back({key.first, degree_json(key.second), v});
    return out;
}

std::string betti_to_text(const BettiTable& t) {
    std::ostringstream os;
    os << "betti totals:";
    for (auto v : t.totals()) os << " " << v;
    os << "\n";
    for (int i = 0; i <= t.length(); ++i) {
        os << "  stage " << i << ":";
        for (const auto& d : t.degrees(i)) {
            os << " " << d.to_string();
            if (t.at(i, d) > 1) os << "^" << t.at(i, d);
        }
        os << "\n";
    }
    return os.str();
}

nlohmann::json to_json(const FreeResolution& r) {
    const int n = r.ideal.n();
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : r.ideal.generators()) gens.push_back(degree_json(g));
    nlohmann::json stages = nlohmann::json::array();
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        nlohmann::json summands = nlohmann::json::array();
        for (const auto& s : r.stages[i]) {
            const SimplicialComplex k = koszul_complex(r.ideal, s.degree);
            summands.push_back({{"degree", degree_json(s.degree)},
                                {"rank", s.rank()},
                                {"faces", face_json(k.faces_of_dim(static_cast<int>(i) - 1), n)},
                                {"basis", matrix_json(s.homology_basis.transpose())}});
        }
        stages.push_back({{"stage", i}, {"summands", summands}});
    }
    nlohmann::json maps = nlohmann::json::array();
    for (std::size_t i = 1; i < r.maps.size(); ++i) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& blk : r.maps[i]) {
            const SimplicialComplex ka = koszul_complex(r.ideal, blk.a);
            const SimplicialComplex kb = koszul_complex(r.ideal, blk.b);
            blocks.push_back({{"a", degree_json(blk.a)},
                              {"b", degree_json(blk.b)},
                              {"rows", face_json(ka.faces_of_dim(static_cast<int>(i) - 2), n)},
                              {"cols", face_json(kb.faces_of_dim(static_cast<int>(i) - 1), n)},
                              {"entries", matrix_json(blk.chain)},
                              {"homology_entries", matrix_json(blk.homology)}});
        }
        maps.push_back({{"from_stage", i}, {"blocks", blocks}});
    }
    return {{"ideal", {{"n", n}, {"generators", gens}}},
            {"field", r.options.field.name()},
            {"mode", to_string(r.options.mode)},
            {"betti", betti_to_json(r.betti)},
            {"stages", stages},
            {"maps", maps}};
}

std::string to_text(const FreeResolution& r) {
    std::ostringstream os;
    const int n = r.ideal.n();
    os << "ideal: " << r.ideal.to_string() << "\n";
    os << "field: " << r.options.field.name() << "  mode: " << to_string(r.options.mode) << "\n";
    os << betti_to_text(r.betti);
    for (std::size_t i = 1; i < r.maps.size(); ++i) {
        std::vector<MultiDegree> lower, upper;
        for (const auto& s : r.stages[i - 1]) lower.push_back(s.degree);
        for (const auto& s : r.stages[i]) upper.push_back(s.degree);
        os << "\nF" << i - 1 << " <- F" << i << "   rows " << degree_list(lower) << "   cols " << degree_list(upper)
           << "\n";
        for (const auto& blk : r.maps[i]) {
            if (blk.chain.is_zero()) continue;
            const SimplicialComplex ka = koszul_complex(r.ideal, blk.a);
            const SimplicialComplex kb = koszul_complex(r.ideal, blk.b);
            os << "D[" << blk.a.to_string() << " <- " << blk.b.to_string() << "]\n";
            os << labelled(blk.chain, ka.faces_of_dim(static_cast<int>(i) - 2), kb.faces_of_dim(static_cast<int>(i) - 1), n);
            os << "homology: " << blk.homology.to_string() << "\n";
        }
    }
    return os.str();
}

}  // namespace sylvan
