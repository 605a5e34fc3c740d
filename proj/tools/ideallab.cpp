#include "ideallab/banach.hpp"
#include "ideallab/colorings.hpp"
#include "ideallab/core_sets.hpp"
#include "ideallab/errors.hpp"
#include "ideallab/fronts.hpp"
#include "ideallab/hypergraph_lab.hpp"
#include "ideallab/measures.hpp"
#include "ideallab/posets.hpp"
#include "ideallab/rational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace ideallab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct Global {
    std::uint64_t seed = 0;
    std::int64_t budget_ms = 0;
    unsigned workers = 1;
    std::string out;
    std::string format = "json";
};

struct Outcome {
    json results = json::object();
    json stats = json::object();
    bool budget_hit = false;
};

using Handler = std::function<Outcome()>;

// ---------------------------------------------------------------- input helpers

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidParams, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidParams, path + ": " + e.what());
    }
}

Rational rational_of(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw Error(ErrorKind::InvalidParams, "expected a rational string \"p/q\"");
}

unsigned index_of(const std::string& key) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidParams, "expected a natural number key, got \"" + key + "\"");
    }
}

// [{"n": "p/q", ...}, ...]
std::vector<RationalMeasure> read_measures(const std::string& path) {
    json j = read_json(path);
    if (!j.is_array()) throw Error(ErrorKind::InvalidParams, "measure file must hold a JSON list");
    std::vector<RationalMeasure> out;
    for (const auto& m : j) {
        std::map<unsigned, Rational> w;
        for (const auto& [k, v] : m.items()) w[index_of(k)] = rational_of(v);
        out.emplace_back(w);
    }
    return out;
}

// {"index": {"coord": "p/q"}}
std::vector<Coeffs> read_vectors(const std::string& path) {
    json j = read_json(path);
    if (!j.is_object()) throw Error(ErrorKind::InvalidParams, "vector file must hold a JSON object");
    std::map<unsigned, Coeffs> byindex;
    for (const auto& [k, v] : j.items()) {
        Coeffs c;
        for (const auto& [coord, val] : v.items()) {
            Rational q = rational_of(val);
            if (q != 0) c[index_of(coord)] = q;
        }
        byindex[index_of(k)] = c;
    }
    std::vector<Coeffs> out;
    for (const auto& [k, c] : byindex) {
        if (k != out.size()) throw Error(ErrorKind::InvalidParams, "vector indices must be 0..n-1");
        out.push_back(c);
    }
    return out;
}

FinSet parse_set(const std::string& text) {
    try {
        return FinSet::parse(text);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidParams, "bad set \"" + text + "\"");
    }
}

// ---------------------------------------------------------------- output helpers

json rat(const Rational& q) { return to_string(q); }

json sets_json(const std::vector<FinSet>& sets) {
    json a = json::array();
    for (const auto& s : sets) a.push_back(s.str());
    return a;
}

json coeffs_json(const Coeffs& c) {
    json o = json::object();
    for (const auto& [k, v] : c) o[std::to_string(k)] = rat(v);
    return o;
}

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    return s;
}

std::string to_csv(const json& results) {
    std::ostringstream out;
    if (results.contains("rows") && results["rows"].is_array() && !results["rows"].empty() &&
        results["rows"][0].is_object()) {
        const auto& rows = results["rows"];
        bool first = true;
        for (const auto& [k, v] : rows[0].items()) {
            out << (first ? "" : ",") << csv_cell(k);
            first = false;
        }
        out << "\n";
        for (const auto& row : rows) {
            first = true;
            for (const auto& [k, v] : rows[0].items()) {
                out << (first ? "" : ",") << csv_cell(row.contains(k) ? row[k] : json(""));
                first = false;
            }
            out << "\n";
        }
        return out.str();
    }
    out << "key,value\n";
    for (const auto& [k, v] : results.items()) out << csv_cell(k) << "," << csv_cell(v) << "\n";
    return out.str();
}

// ---------------------------------------------------------------- coloring lookup

PairColoring pair_coloring(const std::string& name, const std::string& measures, unsigned window,
                           std::uint64_t seed, unsigned colors) {
    if (name == "q") return q_coloring(RationalEnumeration::canonical());
    if (name == "ed_fin") return ed_fin_coloring();
    if (name == "submeasure") {
        if (measures.empty()) throw Error(ErrorKind::InvalidParams, "--measures is required for submeasure");
        return submeasure_blocks_coloring(SupSubmeasure(read_measures(measures), window));
    }
    if (name == "random") {
        if (colors < 1) throw Error(ErrorKind::InvalidParams, "--colors must be positive");
        auto table = std::make_shared<std::vector<unsigned>>(static_cast<std::size_t>(window) * window, 0);
        std::mt19937_64 rng(seed);
        for (unsigned m = 0; m < window; ++m)
            for (unsigned n = m + 1; n < window; ++n) (*table)[m * window + n] = static_cast<unsigned>(rng() % colors);
        return PairColoring{[table, window](unsigned m, unsigned n) {
                                if (n >= window) throw Error(ErrorKind::WindowOverflow, "outside the random table");
                                return (*table)[m * window + n];
                            },
                            colors, "random"};
    }
    throw Error(ErrorKind::InvalidParams, "unknown coloring \"" + name + "\" (q, ed_fin, submeasure, random)");
}

Poset poset_from_edges(const std::string& path) {
    json j = read_json(path);
    FinSet ground;
    for (const auto& p : j.at("points")) ground.insert(p.get<unsigned>());
    std::map<std::pair<unsigned, unsigned>, bool> rel;
    for (const auto& e : j.at("less")) {
        unsigned a = e.at(0).get<unsigned>(), b = e.at(1).get<unsigned>();
        if (!ground.contains(a) || !ground.contains(b)) throw Error(ErrorKind::InvalidParams, "edge outside points");
        rel[{a, b}] = true;
    }
    auto pts = ground.elements();
    for (unsigned k : pts)
        for (unsigned a : pts)
            for (unsigned b : pts)
                if (rel.count({a, k}) && rel.count({k, b})) rel[{a, b}] = true;
    return Poset(ground, [rel](unsigned a, unsigned b) { return rel.count({a, b}) != 0; });
}

json poset_results(const std::string& what, const Poset& P) {
    json r;
    r["points"] = P.size();
    if (what == "width" || what == "dilworth") {
        auto d = width_and_dilworth(P);
        r["width"] = d.width;
        r["antichain"] = d.antichain.str();
        if (what == "dilworth") r["chains"] = sets_json(d.chains);
    }
    if (what == "mirsky") {
        auto levels = mirsky_cover(P);
        r["longest_chain"] = levels.size();
        r["antichains"] = sets_json(levels);
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-scale laboratory for ideals, colorings, fronts and evaluation sequences", "ideallab"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--seed", g.seed, "seed for randomized experiments");
    app.add_option("--budget-ms", g.budget_ms, "time limit in milliseconds, 0 for none")->check(CLI::NonNegativeNumber);
    app.add_option("--workers", g.workers, "worker threads for searches that split work")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "write the report here instead of stdout");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string experiment;
    json params = json::object();
    Handler handler;
    auto bind = [&](CLI::App* cmd, const std::string& name, Handler h) {
        cmd->callback([&, cmd, name, h] {
            experiment = name;
            handler = h;
            for (const auto* opt : cmd->get_options()) {
                if (opt->get_name() == "--help" || opt->count() == 0) continue;
                auto res = opt->results();
                params[opt->get_name().substr(2)] = res.size() == 1 ? json(res.front()) : json(res);
            }
        });
    };
    auto budget = [&g] { return Budget(0, g.budget_ms); };

    // ------------------------------------------------------------ measures
    auto* measures = app.add_subcommand("measures", "submeasures, Kelley numbers, covering submeasures");
    measures->require_subcommand(1);

    static std::string mfile, set_text = "{}", kind = "fin", bound = "1";
    static unsigned window = 8;
    auto* phi = measures->add_subcommand("phi", "membership profile of a set under φ = max μ_k");
    phi->add_option("--measures", mfile, "JSON list of measures")->required();
    phi->add_option("--set", set_text, "the set A, e.g. {0,2,5}")->required();
    phi->add_option("--window", window, "window [0,N)");
    phi->add_option("--kind", kind, "fin, exh or sum")->check(CLI::IsMember({"fin", "exh", "sum"}));
    phi->add_option("--bound", bound, "bound used for the verdict");
    bind(phi, "measures phi", [&] {
        SupSubmeasure f(read_measures(mfile), window);
        FinSet A = parse_set(set_text);
        IdealKind k = kind == "fin" ? IdealKind::Fin : kind == "exh" ? IdealKind::Exh : IdealKind::Sum;
        auto prof = membership_profile(f, A, k, parse_rational(bound));
        Outcome o;
        o.results["phi"] = rat(phi_eval(f, A));
        o.results["value"] = rat(prof.value);
        o.results["within_bound"] = prof.within_bound;
        o.results["verdict"] = prof.verdict;
        json rows = json::array();
        for (std::size_t n = 0; n < prof.tail.size(); ++n) rows.push_back({{"n", n}, {"tail", rat(prof.tail[n])}});
        if (!rows.empty()) o.results["rows"] = rows;
        return o;
    });

    static std::string measures_out_window = "6";
    auto* normalize = measures->add_subcommand("normalize", "normalize and quantize a measure list");
    normalize->add_option("--measures", mfile, "JSON list of measures")->required();
    normalize->add_option("--window", window, "window [0,N)");
    bind(normalize, "measures normalize", [&] {
        auto ms = quantize_measures(normalize_measures(read_measures(mfile), window));
        Outcome o;
        json list = json::array();
        for (const auto& m : ms) {
            json w = json::object();
            for (const auto& [n, v] : m.weights()) w[std::to_string(n)] = rat(v);
            list.push_back(w);
        }
        o.results["measures"] = list;
        return o;
    });

    static unsigned xsize = 6;
    static std::string alpha = "1/2", beta = "1/2";
    auto* kelley = measures->add_subcommand("kelley", "Kelley number and ψ of X^{[α,β]} for X = [0,n)");
    kelley->add_option("--x", xsize, "#X");
    kelley->add_option("--alpha", alpha, "α");
    kelley->add_option("--beta", beta, "β < 1");
    bind(kelley, "measures kelley", [&] {
        FinSet X = FinSet::range(0, xsize);
        Rational a = parse_rational(alpha), b = parse_rational(beta);
        auto interval = cardinal_interval(X, a, b);
        if (interval.empty()) throw Error(ErrorKind::InvalidParams, "X^{[α,β]} is empty");
        Outcome o;
        Rational k = kelley_number(FinSet::range(0, static_cast<unsigned>(interval.size())), hat_cover(X, interval));
        unsigned psi = covering_submeasure(X, interval, interval);
        o.results["interval_size"] = interval.size();
        o.results["kelley_number"] = rat(k);
        o.results["one_minus_beta"] = rat(1 - b);
        o.results["kelley_holds"] = k >= 1 - b;
        o.results["psi"] = psi;
        o.results["psi_bound"] = rat((1 - b) * xsize);
        o.results["psi_holds"] = Rational(psi) > (1 - b) * xsize;
        return o;
    });

    // ------------------------------------------------------------ fronts
    auto* fronts = app.add_subcommand("fronts", "uniform fronts");
    fronts->require_subcommand(1);
    static std::string expr = "schreier", prefix = "{}";
    auto* members = fronts->add_subcommand("members", "members of a front inside [0,N)");
    members->add_option("--front", expr, "schreier, empty, cube(d), oplus(a,b), otimes(a,b)");
    members->add_option("--window", window, "window [0,N)");
    bind(members, "fronts members", [&] {
        auto F = parse_front(expr);
        auto list = F.enumerate(FinSet::range(0, window));
        Outcome o;
        o.results["front"] = F.describe();
        o.results["rank"] = F.rank().str();
        o.results["count"] = list.size();
        o.results["thin"] = is_thin(list);
        o.results["members"] = sets_json(list);
        return o;
    });
    auto* step = fronts->add_subcommand("step", "the unique initial segment of M in the front");
    step->add_option("--front", expr, "front expression");
    step->add_option("--prefix", prefix, "finite prefix of M")->required();
    bind(step, "fronts step", [&] {
        auto F = parse_front(expr);
        Outcome o;
        o.results["front"] = F.describe();
        o.results["segment"] = front_step(F, parse_set(prefix)).str();
        return o;
    });

    // ------------------------------------------------------------ color
    auto* color = app.add_subcommand("color", "pair colorings and their homogeneous sets");
    color->require_subcommand(1);
    static std::string cname = "q";
    static unsigned colors = 2;
    auto* ceval = color->add_subcommand("eval", "colors attained on [A]^2 (or [A]^3 for conv)");
    ceval->add_option("--coloring", cname, "q, ed_fin, conv, submeasure, random");
    ceval->add_option("--set", set_text, "the set A")->required();
    ceval->add_option("--measures", mfile, "measures for the submeasure coloring");
    ceval->add_option("--window", window, "table size for random");
    ceval->add_option("--colors", colors, "colors for random");
    bind(ceval, "color eval", [&] {
        FinSet A = parse_set(set_text);
        std::set<unsigned> cols;
        if (cname == "conv") {
            cols = hom_check(conv_coloring(RationalEnumeration::canonical()), A);
        } else {
            unsigned w = std::max(window, A.empty() ? 0u : A.max() + 1);
            cols = hom_check(pair_coloring(cname, mfile, w, g.seed, colors), A);
        }
        Outcome o;
        o.results["colors"] = json(std::vector<unsigned>(cols.begin(), cols.end()));
        o.results["homogeneous"] = cols.size() <= 1;
        return o;
    });
    auto* extract = color->add_subcommand("extract", "greedy homogeneous set in [0,N)");
    extract->add_option("--coloring", cname, "q, ed_fin, submeasure, random");
    extract->add_option("--window", window, "window [0,N)");
    extract->add_option("--measures", mfile, "measures for the submeasure coloring");
    extract->add_option("--colors", colors, "colors for random");
    bind(extract, "color extract", [&] {
        auto c = pair_coloring(cname, mfile, window, g.seed, colors);
        auto [H, col] = ramsey_extract(c, FinSet::range(0, window));
        Outcome o;
        o.results["set"] = H.str();
        o.results["size"] = H.size();
        o.results["color"] = col;
        o.results["verified"] = hom_check(c, H).size() <= 1;
        return o;
    });
    auto* conv = color->add_subcommand("audit-conv", "#s ≤ min s + 2 for every 0-homogeneous s ⊆ [0,N)");
    conv->add_option("--window", window, "window [0,N)");
    bind(conv, "color audit-conv", [&] {
        auto a = conv_hom0_audit(RationalEnumeration::canonical(), FinSet::range(0, window));
        Outcome o;
        o.results["zero_homogeneous_sets"] = a.sets;
        o.results["largest"] = a.largest;
        o.results["holds"] = !a.violation;
        if (a.violation) o.results["violation"] = a.violation->str();
        return o;
    });
    static unsigned devlin_d = 5;
    auto* devlin = color->add_subcommand("devlin", "Devlin numbers t_1..t_d");
    devlin->add_option("--d", devlin_d, "largest d");
    bind(devlin, "color devlin", [&] {
        Outcome o;
        json rows = json::array();
        for (unsigned d = 1; d <= devlin_d; ++d) rows.push_back({{"d", d}, {"t", devlin_number(d).get_str()}});
        o.results["rows"] = rows;
        return o;
    });

    // ------------------------------------------------------------ poset
    auto* poset = app.add_subcommand("poset", "comparability posets of pair colorings");
    poset->require_subcommand(1);
    static unsigned pcolor = 1;
    static std::string edges;
    for (const std::string what : {"width", "dilworth", "mirsky"}) {
        auto* cmd = poset->add_subcommand(what, what == "mirsky" ? "antichain cover" : "width and chain cover");
        cmd->add_option("--coloring", cname, "coloring whose color class is the order");
        cmd->add_option("--color", pcolor, "color i");
        cmd->add_option("--window", window, "window [0,N)");
        cmd->add_option("--edges", edges, "JSON {points, less} instead of a coloring");
        cmd->add_option("--measures", mfile, "measures for the submeasure coloring");
        bind(cmd, "poset " + what, [&, what] {
            Poset P = edges.empty() ? poset_from_coloring(pair_coloring(cname, mfile, window, g.seed, colors), pcolor,
                                                          FinSet::range(0, window))
                                    : poset_from_edges(edges);
            Outcome o;
            o.results = poset_results(what, P);
            return o;
        });
    }
    auto* duality = poset->add_subcommand("duality", "chain/antichain duality check on a window");
    duality->add_option("--coloring", cname, "q, ed_fin, submeasure");
    duality->add_option("--color", pcolor, "color i");
    duality->add_option("--window", window, "window [0,N)");
    duality->add_option("--measures", mfile, "measures for the submeasure coloring");
    bind(duality, "poset duality", [&] {
        auto r = window_duality_check(pair_coloring(cname, mfile, window, g.seed, colors), pcolor,
                                      FinSet::range(0, window));
        Outcome o;
        o.results["verdict"] = r.passed ? "PASS" : "FAIL";
        o.results["color"] = r.color;
        o.results["longest_chain"] = r.longest_chain;
        o.results["width"] = r.width;
        o.results["hom_norm"] = r.hom_norm;
        o.results["pieces_verified"] = r.pieces_verified;
        o.results["mirsky_pieces"] = sets_json(r.mirsky_pieces);
        o.results["dilworth_pieces"] = sets_json(r.dilworth_pieces);
        return o;
    });

    // ------------------------------------------------------------ lab
    auto* lab = app.add_subcommand("lab", "covering hypergraphs and Mazur colorings");
    lab->require_subcommand(1);
    static unsigned d = 3;
    static std::string delta;
    auto* gillis = lab->add_subcommand("gillis", "Gillis bound m0 and k = m0(d-1)");
    gillis->add_option("--d", d, "uniformity d >= 2");
    gillis->add_option("--delta", delta, "symmetric case α = (1-δ)/2, β = (1+δ)/2");
    gillis->add_option("--alpha", alpha, "α");
    gillis->add_option("--beta", beta, "β < 1");
    bind(gillis, "lab gillis", [&] {
        Rational a = parse_rational(alpha), b = parse_rational(beta);
        if (!delta.empty()) {
            Rational dl = parse_rational(delta);
            a = (1 - dl) / 2;
            b = (1 + dl) / 2;
        }
        auto r = gillis_bound(d, a, b);
        Outcome o;
        o.results["alpha"] = rat(a);
        o.results["beta"] = rat(b);
        json coeffs = json::object();
        for (unsigned l = 1; l <= d; ++l) coeffs[std::to_string(l)] = r.a[l].get_str();
        o.results["a"] = coeffs;
        o.results["m0"] = r.m0;
        o.results["k"] = r.k;
        o.stats["scan_limit"] = r.scan_limit;
        return o;
    });
    static unsigned cap = 40;
    auto* chi = lab->add_subcommand("chi", "chromatic number of H_0(c_n) on X = [0,n)");
    chi->add_option("--x", xsize, "#X");
    chi->add_option("--d", d, "uniformity");
    chi->add_option("--alpha", alpha, "α");
    chi->add_option("--beta", beta, "β < 1");
    chi->add_option("--cap", cap, "exact search only up to this many vertices");
    bind(chi, "lab chi", [&] {
        auto block = make_block(FinSet::range(0, xsize), parse_rational(alpha), parse_rational(beta));
        auto H = block_hypergraph(block, d);
        Budget bud = budget();
        auto r = chromatic_number(H, bud, cap);
        Outcome o;
        o.results["vertices"] = H.vertex_count();
        o.results["edges"] = H.edges().size();
        o.results["exact"] = r.exact;
        o.results["lower"] = r.lower;
        o.results["upper"] = r.upper;
        if (r.exact) o.results["chi"] = r.upper;
        json cls = json::array();
        for (unsigned c = 0; c < r.upper; ++c) {
            json members = json::array();
            for (unsigned v = 0; v < r.coloring.size(); ++v)
                if (r.coloring[v] == c) members.push_back(block.vertices[v].str());
            cls.push_back(members);
        }
        o.results["classes"] = cls;
        o.stats["nodes"] = r.nodes;
        return o;
    });
    static unsigned cn = 4, cp = 2, cr = 1;
    static std::uint64_t node_budget = 0;
    auto* cover = lab->add_subcommand("cover-search", "monochromatic covers of [n] by sets of size n/p");
    cover->add_option("--n", cn, "n");
    cover->add_option("--p", cp, "p, dividing n");
    cover->add_option("--r", cr, "colors r");
    cover->add_option("--budget", node_budget, "node limit per worker, 0 for none");
    bind(cover, "lab cover-search", [&] {
        Budget bud(node_budget, g.budget_ms);
        auto r = mono_cover_search(cn, cp, cr, bud, g.workers);
        Outcome o;
        o.results["verdict"] = verdict_name(r.verdict);
        o.results["sets"] = r.sets.size();
        o.results["need"] = cp + cr;
        if (r.verdict == CoverVerdict::Counterexample) {
            json cls = json::array();
            for (unsigned c = 0; c < cr; ++c) {
                json m = json::array();
                for (std::size_t i = 0; i < r.sets.size(); ++i)
                    if (r.counterexample[i] == c) m.push_back(r.sets[i].str());
                cls.push_back(m);
            }
            o.results["counterexample"] = cls;
        }
        o.stats["nodes"] = r.nodes;
        o.stats["workers"] = r.workers;
        o.budget_hit = r.verdict == CoverVerdict::Budget;
        return o;
    });
    static std::vector<unsigned> ens{8, 16, 24};
    static std::string eta = "1/4", eps = "1/4";
    static unsigned trials = 10, pool = 400;
    auto* equi = lab->add_subcommand("equi", "concentration probe on Equi_δ(n,2)");
    equi->add_option("--n", ens, "domain sizes")->delimiter(',');
    equi->add_option("--p", cp, "classes (2)");
    equi->add_option("--delta", delta, "δ");
    equi->add_option("--eta", eta, "η");
    equi->add_option("--eps", eps, "ε");
    equi->add_option("--trials", trials, "sampled sets per n");
    equi->add_option("--pool", pool, "sample size");
    bind(equi, "lab equi", [&] {
        Rational dl = parse_rational(delta.empty() ? "1/2" : delta);
        auto rep = equi_concentration(ens, cp, dl, parse_rational(eta), parse_rational(eps), trials, g.seed, pool);
        Outcome o;
        json rows = json::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"n", row.n},
                            {"equi_count", equi_count(row.n, cp, dl).get_str()},
                            {"min_fattening", row.min_fattening},
                            {"deficit", row.deficit}});
        o.results["rows"] = rows;
        o.results["non_decreasing"] = rep.non_decreasing;
        return o;
    });
    static unsigned max_n = 3;
    auto* sm = lab->add_subcommand("schreier-mazur", "1-homogeneity of the selections ⋃ î_n");
    sm->add_option("--max-n", max_n, "largest n in ⋃ [2n]^n");
    bind(sm, "lab schreier-mazur", [&] {
        SchreierMazur S(max_n);
        std::vector<unsigned> picks(max_n, 0);
        std::uint64_t checked = 0;
        bool all = true;
        std::function<void(unsigned)> rec = [&](unsigned n) {
            if (n == max_n) {
                ++checked;
                all = all && S.selection_homogeneous(S.selection(picks));
                return;
            }
            for (unsigned i = 0; i < 2 * (n + 1); ++i) {
                picks[n] = i;
                rec(n + 1);
            }
        };
        rec(0);
        Outcome o;
        o.results["vertices"] = S.vertices().size();
        o.results["selections"] = checked;
        o.results["all_homogeneous"] = all;
        return o;
    });

    // ------------------------------------------------------------ banach
    auto* banach = app.add_subcommand("banach", "evaluation-sequence norms and audits");
    banach->require_subcommand(1);
    auto* norm = banach->add_subcommand("norm", "‖Σ_F p_n‖ over the Schreier family");
    norm->add_option("--set", set_text, "the set F")->required();
    bind(norm, "banach norm", [&] {
        auto a = schreier_lower_bound_audit(parse_set(set_text));
        Outcome o;
        o.results["norm"] = a.norm;
        o.results["bound"] = rat(a.bound);
        o.results["holds"] = a.holds;
        return o;
    });
    auto* represent = banach->add_subcommand("represent", "Cantor-space representation with certificate");
    represent->add_option("--measures", mfile, "JSON list of measures")->required();
    represent->add_option("--window", window, "window [0,N)");
    bind(represent, "banach represent", [&] {
        auto ms = quantize_measures(normalize_measures(read_measures(mfile), window));
        auto rep = build_representation(ms, window);
        auto bad = certify_representation(rep);
        Outcome o;
        o.results["measures"] = ms.size();
        o.results["tree_nodes"] = rep.nodes.size();
        o.results["certified"] = !bad;
        o.results["subsets_checked"] = bad ? 0 : (1ull << window);
        if (bad) o.results["failing_set"] = bad->str();
        json g_json = json::array();
        for (const auto& gn : rep.g) {
            json cyl = json::object();
            for (const auto& [code, v] : gn) cyl[code] = rat(v);
            g_json.push_back(cyl);
        }
        o.results["g"] = g_json;
        return o;
    });
    static std::string vfile, hset = "{}";
    auto* abs_cmd = banach->add_subcommand("audit-bs", "gap audit and c0 bound on a 1-homogeneous set");
    abs_cmd->add_option("--vectors", vfile, "JSON {index: {coord: p/q}}")->required();
    abs_cmd->add_option("--set", hset, "H, 1-homogeneous for bs")->required();
    bind(abs_cmd, "banach audit-bs", [&] {
        FinVectorSeq x;
        x.vectors = read_vectors(vfile);
        FinSet H = parse_set(hset);
        std::map<unsigned, Rational> ones;
        H.for_each([&](unsigned n) { ones[n] = 1; });
        auto gap = bs_gap_audit(x, H, ones);
        auto c0 = c0_hom1_audit(x, H);
        Outcome o;
        o.results["gap_lhs"] = rat(gap.lhs);
        o.results["gap_rhs"] = rat(gap.rhs);
        o.results["gap_holds"] = gap.holds;
        o.results["c0_sup"] = rat(c0.sup);
        o.results["c0_bound"] = rat(c0.bound);
        o.results["c0_holds"] = c0.holds;
        return o;
    });
    static std::string tree;
    auto* atall = banach->add_subcommand("audit-tall", "the 1 + sup bound over the witness family");
    atall->add_option("--vectors", vfile, "node-basis coefficients {index: {node: p/q}}")->required();
    atall->add_option("--tree", tree, "JSON list of sets generating 𝓕 under initial segments")->required();
    atall->add_option("--set", hset, "R")->required();
    bind(atall, "banach audit-tall", [&] {
        json t = read_json(tree);
        std::vector<FinSet> gens{FinSet{}};
        unsigned w = 1;
        for (const auto& s : t) {
            gens.push_back(parse_set(s.get<std::string>()));
            if (!gens.back().empty()) w = std::max(w, gens.back().max() + 1);
        }
        auto fam = hereditary_sq_closure(SetFamily(w, gens), ClosureMode::InitialSegment);
        FinVectorSeq x;
        x.model = FinVectorSeq::Model::NodeBasis;
        x.space = std::make_shared<NodeBasisSpace>(fam);
        x.vectors = read_vectors(vfile);
        FinSet R = parse_set(hset);
        auto G = witness_family(x, static_cast<unsigned>(x.size())).family;
        auto a = tall_bound_audit(x, R, G);
        Outcome o;
        o.results["lhs"] = rat(a.lhs);
        o.results["sup_g"] = rat(a.sup_g);
        o.results["rhs_claim"] = rat(a.rhs_claim);
        o.results["rhs_proof"] = rat(a.rhs_proof);
        o.results["claim_holds"] = a.claim_holds;
        o.results["proof_holds"] = a.proof_holds;
        o.results["witness_family"] = sets_json(G.members());
        return o;
    });
    auto* signs = banach->add_subcommand("signs", "sign averages of Euclidean vectors");
    signs->add_option("--vectors", vfile, "JSON list of lists of p/q")->required();
    bind(signs, "banach signs", [&] {
        json j = read_json(vfile);
        std::vector<std::vector<Rational>> v;
        for (const auto& row : j) {
            v.emplace_back();
            for (const auto& c : row) v.back().push_back(rational_of(c));
        }
        Budget bud = budget();
        auto r = sign_average_report(v, bud, std::make_pair(2.0, std::sqrt(2.0)));
        Outcome o;
        o.results["e_sq"] = rat(r.e_sq);
        o.results["sum_sq"] = rat(r.sum_sq);
        o.results["parallelogram"] = r.parallelogram;
        o.results["e_lin"] = r.e_lin;
        o.results["subset_avg"] = r.subset_avg;
        o.results["e_lin_sup"] = rat(r.e_lin_sup);
        o.results["subset_avg_sup"] = rat(r.subset_avg_sup);
        o.results["halving"] = r.halving;
        o.results["cotype2"] = r.cotype.value_or(false);
        return o;
    });
    static std::string ex_name = "rademacher";
    static unsigned count = 6;
    static bool literal = false;
    auto* example = banach->add_subcommand("example", "example sequences");
    example->add_option("--name", ex_name, "rademacher, c0_non_p, dyadic")
        ->check(CLI::IsMember({"rademacher", "c0_non_p", "dyadic"}));
    example->add_option("--count", count, "vectors (rademacher), window (c0_non_p), levels (dyadic)");
    example->add_flag("--literal", literal, "rademacher: floor exponent as printed");
    bind(example, "banach example", [&] {
        Outcome o;
        FinVectorSeq x = ex_name == "rademacher" ? rademacher_sequence(count, literal)
                         : ex_name == "c0_non_p" ? c0_non_p_sequence(count)
                                                 : dyadic_sequence(count);
        json vs = json::object();
        for (std::size_t i = 0; i < x.size(); ++i) vs[std::to_string(i)] = coeffs_json(x.vectors[i]);
        o.results["vectors"] = vs;
        if (ex_name == "rademacher" && count >= 6) o.results["norm_x3_x4_x5"] = rat(x.sum_norm(FinSet{3, 4, 5}));
        if (ex_name == "c0_non_p") {
            json rows = json::array();
            for (const auto& b : c0_non_p_audit(count))
                rows.push_back({{"n", b.n},
                                {"measured", rat(b.measured)},
                                {"inline_claim", rat(b.inline_claim)},
                                {"full_interval", rat(b.full_interval)}});
            o.results["rows"] = rows;
        }
        return o;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    int code = 0;
    try {
        outcome = handler();
        if (outcome.budget_hit) code = 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        code = e.kind() == ErrorKind::BudgetExceeded ? 2 : 1;
        outcome.results = json{{"error", error_name(e.kind())}, {"message", e.what()}};
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    json report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = "ideallab";
    report["version"] = kVersion;
    report["experiment"] = experiment;
    report["params"] = params;
    report["seed"] = g.seed;
    report["results"] = outcome.results;
    report["stats"] = outcome.stats;
    report["runtime_ms"] = ms;

    std::string text = g.format == "csv" ? to_csv(outcome.results) : report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        if (!f) {
            std::cerr << "cannot write " << g.out << "\n";
            return 1;
        }
        f << text;
    }
    return code;
}
