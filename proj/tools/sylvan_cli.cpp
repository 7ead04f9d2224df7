#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sylvan/resolution.hpp"

namespace {

using namespace sylvan;

struct RunConfig {
    std::string input;
    std::vector<std::string> generators;
    int vars = 0;
    std::string field = "Q";
    std::string mode = "canonical";
    std::string communities = "auto";
    std::optional<std::uint64_t> community_seed;
    std::string format = "text";
    bool betti_only = false;
    bool verify = false;
    bool oracle = false;
    bool trace_fences = false;
    int trace_limit = 4;
    std::size_t max_enum = default_enumeration_cap;
    unsigned threads = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MonomialIdeal load_ideal(const RunConfig& cfg) {
    if (!cfg.input.empty() && !cfg.generators.empty()) throw ParseError("give either a file or --gen, not both");
    if (!cfg.generators.empty()) {
        std::string text;
        for (const auto& g : cfg.generators) {
            std::string item = g;
            for (char& c : item)
                if (c == ',') c = '\n';
            text += item + "\n";
        }
        return parse_ideal_text(text, cfg.vars);
    }
    if (cfg.input.empty()) throw ParseError("no ideal given");
    return parse_ideal(read_file(cfg.input), cfg.vars);
}

std::map<MultiDegree, Community> load_communities(const std::string& path, int n) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("community file: ") + e.what());
    }
    if (!j.contains("communities") || !j["communities"].is_array())
        throw ParseError("community file needs a \"communities\" array");
    std::map<MultiDegree, Community> out;
    for (const auto& entry : j["communities"]) {
        if (!entry.contains("degree")) throw ParseError("community entry without \"degree\"");
        MultiDegree d(entry["degree"].get<std::vector<int>>());
        if (d.n() != n) throw ParseError("community degree " + d.to_string() + " has the wrong length");
        out[d] = community_from_json(entry);
    }
    return out;
}

AssembleOptions make_options(const RunConfig& cfg, int n) {
    AssembleOptions o;
    o.field = Field::parse(cfg.field);
    if (cfg.mode == "canonical") {
        o.mode = Mode::canonical;
    } else if (cfg.mode == "community") {
        o.mode = Mode::community;
    } else {
        throw ParseError("unknown mode " + cfg.mode);
    }
    o.cap = cfg.max_enum;
    o.threads = cfg.threads;
    o.oracle = cfg.oracle;
    o.community_seed = cfg.community_seed;
    if (cfg.communities != "auto") {
        if (o.mode != Mode::community) throw PreconditionError("--communities needs --mode community");
        o.communities = load_communities(cfg.communities, n);
    }
    return o;
}

std::vector<std::string> fence_traces(const FreeResolution& r, const RunConfig& cfg) {
    const auto& o = r.options;
    KoszulCache cache(r.ideal, o.field, o.mode, o.cap);
    for (const auto& [c, com] : o.communities) cache.set_community(c, com);
    if (o.community_seed) cache.set_community_seed(*o.community_seed);
    std::vector<std::string> out;
    for (std::size_t i = 1; i < r.maps.size(); ++i) {
        for (const auto& blk : r.maps[i]) {
            if (blk.b.total() - blk.a.total() > cfg.trace_limit) continue;
            const auto e = enumerate_fences(cache, blk.a, blk.b, static_cast<int>(i) - 1, true);
            out.push_back("fences " + blk.a.to_string() + " <- " + blk.b.to_string() + ": " +
                          std::to_string(e.fence_count) + " over " + std::to_string(e.hedgerow_count) + " hedgerows");
            for (const auto& f : e.fences) out.push_back("  " + f.render(r.ideal.n()));
        }
    }
    return out;
}

int run(const RunConfig& cfg) {
    const MonomialIdeal ideal = load_ideal(cfg);
    const AssembleOptions options = make_options(cfg, ideal.n());
    const bool json = cfg.format == "json";
    if (!json && cfg.format != "text") throw ParseError("unknown format " + cfg.format);

    if (cfg.betti_only) {
        const BettiTable t = betti_table(ideal, options.field);
        bool ok = true;
        std::string check;
        if (cfg.verify) {
            ok = taylor_oracle(ideal, options.field) == t;
            check = ok ? "ok   Taylor complex agrees" : "FAIL Taylor complex disagrees";
        }
        if (json) {
            nlohmann::json j{{"field", options.field.name()}, {"betti", betti_to_json(t)}};
            if (cfg.verify) j["verified"] = ok;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "ideal: " << ideal.to_string() << "\nfield: " << options.field.name() << "\n"
                      << betti_to_text(t);
            if (cfg.verify) std::cout << check << "\n";
        }
        return ok ? 0 : 1;
    }

    const FreeResolution r = assemble(ideal, options);
    VerificationReport report;
    if (cfg.verify) {
        report = verify_complex(r);
        for (auto& c : verify_exactness_degreewise(r).checks) report.checks.push_back(c);
        const bool taylor = taylor_oracle(ideal, options.field) == r.betti;
        report.checks.push_back({"Taylor complex Betti numbers agree", taylor, ""});
    }
    std::vector<std::string> traces;
    if (cfg.trace_fences) traces = fence_traces(r, cfg);

    if (json) {
        nlohmann::json j = to_json(r);
        if (cfg.verify) {
            nlohmann::json checks = nlohmann::json::array();
            for (const auto& c : report.checks)
                checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            j["verification"] = checks;
        }
        if (cfg.trace_fences) j["fences"] = traces;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_text(r);
        if (cfg.trace_fences) {
            std::cout << "\n";
            for (const auto& t : traces) std::cout << t << "\n";
        }
        if (cfg.verify) std::cout << "\nverification\n" << report.to_string();
    }
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal free resolutions of monomial ideals"};
    app.require_subcommand(1);
    RunConfig cfg;
    CLI::App* resolve = app.add_subcommand("resolve", "Compute the minimal free resolution of an ideal");
    resolve->add_option("input", cfg.input, "Ideal file (text or JSON)");
    resolve->add_option("-g,--gen", cfg.generators, "Generators inline, e.g. \"xy,yz,xz\"");
    resolve->add_option("--vars", cfg.vars, "Number of variables");
    resolve->add_option("--field", cfg.field, "Q, F<p>, Fp:<p> or GF(<p>)")->capture_default_str();
    resolve->add_option("--mode", cfg.mode, "canonical or community")->capture_default_str();
    resolve->add_option("--communities", cfg.communities, "auto or a JSON file of per-degree communities")
        ->capture_default_str();
    resolve->add_option("--community-seed", cfg.community_seed, "Randomize automatic communities");
    resolve->add_option("--format", cfg.format, "text or json")->capture_default_str();
    resolve->add_flag("--betti-only", cfg.betti_only, "Only print the Betti table");
    resolve->add_flag("--verify", cfg.verify, "Check the result and report each check");
    resolve->add_flag("--oracle", cfg.oracle, "Compute blocks as per-path products of splittings");
    resolve->add_flag("--trace-fences", cfg.trace_fences, "Print every chain-link fence of short blocks");
    resolve->add_option("--trace-limit", cfg.trace_limit, "Largest |b|-|a| traced")->capture_default_str();
    resolve->add_option("--max-enum", cfg.max_enum, "Cap on enumerated subsets")->capture_default_str();
    resolve->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << "enumeration cap: " << e.what() << "\n";
        return 4;
    }
}
