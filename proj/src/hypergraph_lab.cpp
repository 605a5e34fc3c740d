#include "ideallab/hypergraph_lab.hpp"

#include "ideallab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

namespace ideallab {

MazurBlock make_block(const FinSet& X, const Rational& alpha, const Rational& beta) {
    MazurBlock b{X, alpha, beta, cardinal_interval(X, alpha, beta)};
    return b;
}

unsigned mazur_coloring(const std::vector<MazurBlock>& blocks, const std::vector<MazurVertex>& A) {
    std::vector<FinSet> unions(blocks.size());
    std::vector<char> touched(blocks.size(), 0);
    for (const auto& v : A) {
        if (v.block >= blocks.size()) throw Error(ErrorKind::InvalidParams, "vertex block out of range");
        unions[v.block] |= v.set;
        touched[v.block] = 1;
    }
    for (std::size_t n = 0; n < blocks.size(); ++n)
        if (touched[n] && blocks[n].X.subset_of(unions[n])) return 0;
    return 1;
}

// ---------------------------------------------------------------- hypergraphs

Hypergraph::Hypergraph(unsigned vertex_count, std::vector<FinSet> edges, unsigned uniformity)
    : n_(vertex_count), d_(uniformity), edges_(std::move(edges)) {
    if (n_ > FinSet::kCapacity) throw Error(ErrorKind::WindowOverflow, "too many vertices");
    FinSet all = FinSet::range(0, n_);
    for (const auto& e : edges_) {
        if (!e.subset_of(all)) throw Error(ErrorKind::InvalidParams, "edge " + e.str() + " outside the vertex set");
        if (uniformity && e.size() != uniformity)
            throw Error(ErrorKind::InvalidParams, "edge " + e.str() + " has the wrong size");
        lookup_.insert(e);
    }
    if (!uniformity && !edges_.empty()) {
        d_ = edges_.front().size();
        for (const auto& e : edges_)
            if (e.size() != d_) d_ = 0;
    }
}

bool Hypergraph::independent(const FinSet& S) const {
    for (const auto& e : edges_)
        if (e.subset_of(S)) return false;
    return true;
}

bool Hypergraph::complete(const FinSet& S) const {
    if (d_ == 0) throw Error(ErrorKind::InvalidParams, "completeness needs a uniform hypergraph");
    for (const auto& e : subsets_of_size(S, d_))
        if (!has_edge(e)) return false;
    return true;
}

Hypergraph Hypergraph::induced(const FinSet& S) const {
    auto pts = S.elements();
    std::vector<int> index(n_, -1);
    for (std::size_t i = 0; i < pts.size(); ++i) index.at(pts[i]) = static_cast<int>(i);
    std::vector<FinSet> out;
    for (const auto& e : edges_)
        if (e.subset_of(S)) {
            FinSet f;
            e.for_each([&](unsigned v) { f.insert(static_cast<unsigned>(index[v])); });
            out.push_back(f);
        }
    return Hypergraph(static_cast<unsigned>(pts.size()), std::move(out), d_);
}

Hypergraph block_hypergraph(const MazurBlock& block, unsigned d) {
    if (d == 0) throw Error(ErrorKind::InvalidParams, "d must be positive");
    auto m = static_cast<unsigned>(block.vertices.size());
    if (m > FinSet::kCapacity) throw Error(ErrorKind::WindowOverflow, "block has too many vertices");
    std::vector<FinSet> edges;
    for (const auto& e : subsets_of_size(FinSet::range(0, m), d)) {
        FinSet u;
        e.for_each([&](unsigned v) { u |= block.vertices[v]; });
        if (block.X.subset_of(u)) edges.push_back(e);
    }
    return Hypergraph(m, std::move(edges), d);
}

Hypergraph amalgam_hypergraph(const std::vector<MazurBlock>& blocks, unsigned d) {
    std::vector<MazurVertex> verts;
    for (unsigned n = 0; n < blocks.size(); ++n)
        for (const auto& s : blocks[n].vertices) verts.push_back({n, s});
    if (verts.size() > FinSet::kCapacity) throw Error(ErrorKind::WindowOverflow, "amalgam has too many vertices");
    auto m = static_cast<unsigned>(verts.size());
    std::vector<FinSet> edges;
    for (const auto& e : subsets_of_size(FinSet::range(0, m), d)) {
        std::vector<MazurVertex> A;
        e.for_each([&](unsigned v) { A.push_back(verts[v]); });
        if (mazur_coloring(blocks, A) == 0) edges.push_back(e);
    }
    return Hypergraph(m, std::move(edges), d);
}

// ---------------------------------------------------------------- Gillis bound

namespace {

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational rational_pow(const Rational& q, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

}  // namespace

GillisResult gillis_bound(unsigned d, const Rational& alpha, const Rational& beta) {
    if (beta >= 1) throw Error(ErrorKind::DegenerateInterval, "beta must be < 1");
    if (d < 2 || alpha < 0 || alpha > beta) throw Error(ErrorKind::InvalidParams, "need d >= 2 and 0 <= alpha <= beta");
    GillisResult g;
    g.a.assign(d + 1, Integer(0));
    for (unsigned l = 1; l <= d; ++l) {
        Integer s = 0;
        for (unsigned j = 0; j <= l; ++j) {
            Integer term;
            mpz_pow_ui(term.get_mpz_t(), Integer(l - j).get_mpz_t(), d);
            term *= binomial(l, j);
            s += (j % 2 ? -term : term);
        }
        g.a[l] = s;
    }
    Rational lead = rational_pow(1 - beta, d);
    Rational c = 0;
    for (unsigned l = 1; l < d; ++l) c += Rational(g.a[l]) / Rational(factorial(l));
    Rational limit = (1 - alpha) * c / lead;
    g.scan_limit = static_cast<unsigned>(floor(limit).get_ui()) + 1;
    for (unsigned m = 1; m <= g.scan_limit; ++m) {
        Rational rhs = 0;
        for (unsigned l = 1; l < d; ++l) rhs += Rational(g.a[l] * binomial(m, l));
        rhs *= 1 - alpha;
        if (rational_pow(Rational(m), d) * lead <= rhs) g.m0 = m;
    }
    g.k = g.m0 * (d - 1);
    return g;
}

// ---------------------------------------------------------------- complete sets

namespace {

struct CliqueSearch {
    const Hypergraph& H;
    Budget& budget;
    std::vector<unsigned> cur;
    FinSet best;

    bool compatible(unsigned v, unsigned u) const {
        unsigned d = H.uniformity();
        if (d == 1) return H.has_edge(FinSet{u});
        if (d == 2) return H.has_edge(FinSet{v, u});
        if (d == 3) {
            for (unsigned w : cur)
                if (!H.has_edge(FinSet{w, v, u})) return false;
            return true;
        }
        FinSet S(cur);
        if (S.size() < d - 2) return true;
        for (const auto& t : subsets_of_size(S, d - 2)) {
            FinSet e = t;
            e.insert(v);
            e.insert(u);
            if (!H.has_edge(e)) return false;
        }
        return true;
    }

    void run(const std::vector<unsigned>& cand) {
        budget.tick();
        if (cur.size() > best.size()) best = FinSet(cur);
        if (cur.size() + cand.size() <= best.size()) return;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (cur.size() + cand.size() - i <= best.size()) return;
            unsigned v = cand[i];
            std::vector<unsigned> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (compatible(v, cand[j])) next.push_back(cand[j]);
            cur.push_back(v);
            run(next);
            cur.pop_back();
        }
    }
};

}  // namespace

FinSet max_complete_set(const Hypergraph& H, Budget& budget) {
    if (H.uniformity() == 0) {
        if (H.edges().empty()) return FinSet::range(0, H.vertex_count());
        throw Error(ErrorKind::InvalidParams, "complete sets need a uniform hypergraph");
    }
    CliqueSearch s{H, budget, {}, {}};
    std::vector<unsigned> cand;
    for (unsigned v = 0; v < H.vertex_count(); ++v)
        if (H.uniformity() != 1 || H.has_edge(FinSet{v})) cand.push_back(v);
    s.run(cand);
    return s.best;
}

// ---------------------------------------------------------------- chromatic number

bool proper_coloring(const Hypergraph& H, const std::vector<unsigned>& colors) {
    if (colors.size() != H.vertex_count()) return false;
    for (const auto& e : H.edges()) {
        auto pts = e.elements();
        bool mono = true;
        for (unsigned v : pts) mono = mono && colors[v] == colors[pts.front()];
        if (mono) return false;
    }
    return true;
}

namespace {

struct Colorer {
    const Hypergraph& H;
    std::vector<std::vector<std::vector<unsigned>>> others;  // others[v][e]: the rest of each edge through v
    std::vector<int> color;
    unsigned k = 0;
    Budget* budget = nullptr;

    explicit Colorer(const Hypergraph& h) : H(h), others(h.vertex_count()), color(h.vertex_count(), -1) {
        for (const auto& e : H.edges()) {
            auto pts = e.elements();
            for (unsigned v : pts) {
                std::vector<unsigned> rest;
                for (unsigned u : pts)
                    if (u != v) rest.push_back(u);
                others[v].push_back(rest);
            }
        }
    }

    // colors that would close a monochromatic edge at v
    std::vector<char> forbidden(unsigned v, unsigned bound) const {
        std::vector<char> f(bound, 0);
        for (const auto& rest : others[v]) {
            int c = color[rest.front()];
            if (c < 0 || static_cast<unsigned>(c) >= bound) continue;
            bool mono = true;
            for (unsigned u : rest) mono = mono && color[u] == c;
            if (mono) f[c] = 1;
        }
        return f;
    }

    int pick(unsigned bound) const {
        int best = -1;
        long best_key = -1;
        for (unsigned v = 0; v < H.vertex_count(); ++v) {
            if (color[v] >= 0) continue;
            auto f = forbidden(v, bound);
            long key = static_cast<long>(std::count(f.begin(), f.end(), 1)) * 100000 + static_cast<long>(others[v].size());
            if (key > best_key) {
                best_key = key;
                best = static_cast<int>(v);
            }
        }
        return best;
    }

    std::vector<unsigned> greedy() {
        std::fill(color.begin(), color.end(), -1);
        unsigned n = H.vertex_count();
        for (unsigned step = 0; step < n; ++step) {
            int v = pick(n + 1);
            auto f = forbidden(static_cast<unsigned>(v), n + 1);
            unsigned c = 0;
            while (f[c]) ++c;
            color[v] = static_cast<int>(c);
        }
        return std::vector<unsigned>(color.begin(), color.end());
    }

    bool solve(unsigned used) {
        budget->tick();
        int v = pick(k);
        if (v < 0) return true;
        auto f = forbidden(static_cast<unsigned>(v), k);
        for (unsigned c = 0; c < std::min(k, used + 1); ++c) {
            if (f[c]) continue;
            color[v] = static_cast<int>(c);
            if (solve(std::max(used, c + 1))) return true;
        }
        color[v] = -1;
        return false;
    }
};

}  // namespace

ChromaticResult chromatic_number(const Hypergraph& H, Budget& budget, unsigned cap) {
    ChromaticResult r;
    unsigned n = H.vertex_count();
    for (const auto& e : H.edges())
        if (e.size() < 2) throw Error(ErrorKind::InvalidParams, "an edge with fewer than 2 vertices admits no proper coloring");
    if (n == 0) {
        r.exact = true;
        return r;
    }
    Colorer col(H);
    r.coloring = col.greedy();
    r.upper = *std::max_element(r.coloring.begin(), r.coloring.end()) + 1;
    r.lower = 1;
    if (!H.edges().empty()) {
        r.lower = 2;
        if (H.uniformity() >= 2) {
            Budget clique_budget(200000, 0);
            FinSet K;
            try {
                K = max_complete_set(H, clique_budget);
            } catch (const Error&) {
                // best-effort lower bound
            }
            unsigned per = H.uniformity() - 1;
            r.lower = std::max(r.lower, (K.size() + per - 1) / per);
        }
    }
    if (r.lower >= r.upper || n > cap) {
        r.exact = r.lower >= r.upper;
        return r;
    }
    std::uint64_t start = budget.nodes();
    try {
        for (unsigned k = r.lower; k < r.upper; ++k) {
            std::fill(col.color.begin(), col.color.end(), -1);
            col.k = k;
            col.budget = &budget;
            if (col.solve(0)) {
                r.upper = k;
                r.coloring.assign(col.color.begin(), col.color.end());
                break;
            }
            r.lower = k + 1;
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded)
            throw Error(ErrorKind::BudgetExceeded, "chromatic number in [" + std::to_string(r.lower) + "," +
                                                       std::to_string(r.upper) + "]");
        throw;
    }
    r.nodes = budget.nodes() - start;
    r.exact = true;
    return r;
}

// ---------------------------------------------------------------- amalgamation

AmalgamRefinement amalgam_refinement(const std::vector<MazurBlock>& blocks,
                                     const std::vector<std::vector<FinSet>>& partitions, unsigned r, unsigned d) {
    if (partitions.size() != blocks.size()) throw Error(ErrorKind::InvalidParams, "one partition per block");
    if (d == 0 || r == 0) throw Error(ErrorKind::InvalidParams, "r and d must be positive");
    AmalgamRefinement out;
    std::vector<unsigned> offset(blocks.size() + 1, 0);
    for (std::size_t n = 0; n < blocks.size(); ++n)
        offset[n + 1] = offset[n] + static_cast<unsigned>(blocks[n].vertices.size());
    if (offset.back() > FinSet::kCapacity) throw Error(ErrorKind::WindowOverflow, "amalgam has too many vertices");

    for (std::size_t n = 0; n < blocks.size(); ++n) {
        const auto& P = partitions[n];
        auto m = static_cast<unsigned>(blocks[n].vertices.size());
        if (P.size() > r) throw Error(ErrorKind::InvalidParams, "block partition has more than r pieces");
        FinSet seen;
        for (const auto& piece : P) {
            if (piece.intersects(seen) || !piece.subset_of(FinSet::range(0, m)))
                throw Error(ErrorKind::InvalidParams, "pieces must partition the block vertices");
            seen |= piece;
        }
        if (seen != FinSet::range(0, m)) throw Error(ErrorKind::InvalidParams, "pieces must cover the block");
        Hypergraph H = block_hypergraph(blocks[n], d);
        for (const auto& e : H.edges())
            for (const auto& piece : P)
                if (e.subset_of(piece)) {
                    std::string w;
                    e.for_each([&](unsigned v) { w += blocks[n].vertices[v].str(); });
                    throw Error(ErrorKind::NotIndependentInput, "block " + std::to_string(n) + " piece contains " + w);
                }

        std::vector<FinSet> Q(static_cast<std::size_t>(r) * d);
        for (std::size_t j = 0; j < P.size(); ++j) {
            auto pts = P[j].elements();
            std::size_t slot = j * d;
            if (pts.size() >= d) {
                FinSet core = P[j];
                for (std::size_t t = pts.size() - (d - 1); t < pts.size(); ++t) {
                    core.erase(pts[t]);
                    Q[++slot] = FinSet{pts[t]};
                }
                Q[j * d] = core;
            } else {
                for (unsigned v : pts) Q[slot++] = FinSet{v};
            }
        }
        out.pieces.push_back(Q);
    }

    out.amalgam.assign(static_cast<std::size_t>(r) * d, FinSet{});
    for (std::size_t n = 0; n < blocks.size(); ++n)
        for (std::size_t i = 0; i < out.amalgam.size(); ++i)
            out.pieces[n][i].for_each([&](unsigned v) { out.amalgam[i].insert(offset[n] + v); });

    bool ok = true;
    for (std::size_t n = 0; n < blocks.size() && ok; ++n)
        for (std::size_t i = 0; i < out.amalgam.size() && ok; ++i) {
            const FinSet& q = out.pieces[n][i];
            if (q.size() > 1) {
                const FinSet* parent = nullptr;
                for (const auto& piece : partitions[n])
                    if (q.subset_of(piece)) parent = &piece;
                ok = parent && parent->size() >= d && (*parent - q).size() == d - 1;
            }
            if (!ok || out.amalgam[i].size() < d) continue;
            for (unsigned s = 1; s <= std::min(d, q.size()) && ok; ++s)
                for (const auto& sub : subsets_of_size(q, s)) {
                    FinSet u;
                    sub.for_each([&](unsigned v) { u |= blocks[n].vertices[v]; });
                    if (blocks[n].X.subset_of(u)) {
                        ok = false;
                        break;
                    }
                }
        }
    if (!ok) throw std::logic_error("amalgam refinement produced a dependent piece");
    out.verified = true;
    return out;
}

// ---------------------------------------------------------------- monochromatic covers

std::string verdict_name(CoverVerdict v) {
    switch (v) {
        case CoverVerdict::Universal: return "UNIVERSAL";
        case CoverVerdict::Counterexample: return "COUNTEREXAMPLE";
        case CoverVerdict::Budget: return "BUDGET";
    }
    return "?";
}

namespace {

// some ≤ k of `sets` cover `target`
bool covers_with(const std::vector<std::uint64_t>& sets, std::uint64_t target, unsigned k) {
    if (target == 0) return true;
    if (k == 0) return false;
    unsigned low = static_cast<unsigned>(std::countr_zero(target));
    for (auto s : sets)
        if ((s >> low & 1) && covers_with(sets, target & ~s, k - 1)) return true;
    return false;
}

struct CoverSearch {
    std::vector<std::uint64_t> sets;
    unsigned r = 0, need = 0;
    std::uint64_t full = 0;

    struct State {
        std::vector<unsigned> color;
        std::vector<std::vector<std::uint64_t>> classes;
        std::vector<char> small_cover;  // some ≤ need members cover
    };

    State initial() const {
        State s;
        s.classes.resize(r);
        s.small_cover.assign(r, 0);
        return s;
    }

    // adds the next set with color c; false if that class becomes good
    bool push(State& st, unsigned c) const {
        std::uint64_t x = sets[st.color.size()];
        auto& cls = st.classes[c];
        bool cover = st.small_cover[c] || covers_with(cls, full & ~x, need - 1);
        cls.push_back(x);
        st.color.push_back(c);
        st.small_cover[c] = cover;
        return !(cover && cls.size() >= need);
    }

    void pop(State& st, unsigned c, bool old_cover) const {
        st.classes[c].pop_back();
        st.color.pop_back();
        st.small_cover[c] = old_cover;
    }

    unsigned used(const State& st) const {
        unsigned u = 0;
        for (unsigned c : st.color) u = std::max(u, c + 1);
        return u;
    }

    bool dfs(State& st, Budget& budget, const std::atomic<bool>& stop) const {
        budget.tick();
        if (st.color.size() == sets.size()) return true;
        if (stop.load(std::memory_order_relaxed)) return false;
        unsigned u = used(st);
        for (unsigned c = 0; c < std::min(r, u + 1); ++c) {
            bool old = st.small_cover[c];
            if (push(st, c) && dfs(st, budget, stop)) return true;
            pop(st, c, old);
        }
        return false;
    }
};

}  // namespace

bool color_class_covers(const std::vector<FinSet>& cls, unsigned n, unsigned need) {
    if (cls.size() < need) return false;
    auto m = min_cover_size(FinSet::range(0, n), cls);
    return m && *m <= need;
}

CoverSearchResult mono_cover_search(unsigned n, unsigned p, unsigned r, Budget& budget, unsigned workers) {
    if (p == 0 || r == 0 || n == 0 || n % p != 0 || n > 64)
        throw Error(ErrorKind::InvalidParams, "need p | n, n <= 64 and r >= 1");
    CoverSearchResult res;
    res.sets = subsets_of_size(FinSet::range(0, n), n / p);
    res.workers = std::max(1u, workers);
    CoverSearch cs;
    for (const auto& s : res.sets) cs.sets.push_back(s.mask64());
    cs.r = r;
    cs.need = p + r;
    cs.full = n == 64 ? ~0ull : (1ull << n) - 1;

    // deterministic prefixes of the restricted-growth tree
    std::vector<std::vector<unsigned>> prefixes{{}};
    std::size_t depth = 0;
    while (prefixes.size() < 8u * res.workers && depth < cs.sets.size()) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& pre : prefixes) {
            auto st = cs.initial();
            bool alive = true;
            for (unsigned c : pre) alive = alive && cs.push(st, c);
            if (!alive) continue;
            unsigned u = cs.used(st);
            for (unsigned c = 0; c < std::min(r, u + 1); ++c) {
                auto ext = pre;
                ext.push_back(c);
                next.push_back(ext);
            }
        }
        prefixes.swap(next);
        ++depth;
    }

    std::atomic<std::size_t> best{prefixes.size()};
    std::atomic<std::size_t> next_job{0};
    std::atomic<bool> budget_hit{false};
    std::atomic<std::uint64_t> nodes{0};
    std::vector<std::vector<unsigned>> found(prefixes.size());
    auto work = [&](Budget local) {
        std::atomic<bool> never{false};
        std::uint64_t base = local.nodes();
        for (;;) {
            std::size_t j = next_job.fetch_add(1);
            if (j >= prefixes.size() || j > best.load()) break;
            auto st = cs.initial();
            bool alive = true;
            for (unsigned c : prefixes[j]) alive = alive && cs.push(st, c);
            if (!alive) continue;
            try {
                if (cs.dfs(st, local, never)) {
                    found[j] = st.color;
                    std::size_t cur = best.load();
                    while (j < cur && !best.compare_exchange_weak(cur, j)) {
                    }
                }
            } catch (const Error&) {
                budget_hit = true;
                break;
            }
        }
        nodes += local.nodes() - base;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < res.workers; ++w) pool.emplace_back(work, budget);
    work(budget);
    for (auto& t : pool) t.join();
    res.nodes = nodes.load();
    if (best.load() < prefixes.size()) {
        res.verdict = CoverVerdict::Counterexample;
        res.counterexample = found[best.load()];
    } else {
        res.verdict = budget_hit ? CoverVerdict::Budget : CoverVerdict::Universal;
    }
    return res;
}

// ---------------------------------------------------------------- Equi_δ(n,p)

std::vector<std::vector<unsigned>> equi_size_vectors(unsigned n, unsigned p, const Rational& delta) {
    if (p < 1 || delta < 0 || delta >= 1) throw Error(ErrorKind::InvalidParams, "need p >= 1 and 0 <= delta < 1");
    Rational mean(n, p);
    mean.canonicalize();
    long lo = std::max<long>(1, ceil(mean * (1 - delta)).get_si());
    long hi = floor(mean * (1 + delta)).get_si();
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned left) {
        if (cur.size() == p) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (long s = lo; s <= hi && s <= static_cast<long>(left); ++s) {
            cur.push_back(static_cast<unsigned>(s));
            rec(left - static_cast<unsigned>(s));
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

namespace {

Integer multinomial(const std::vector<unsigned>& sizes) {
    unsigned n = std::accumulate(sizes.begin(), sizes.end(), 0u);
    Integer r = factorial(n);
    for (unsigned s : sizes) r /= factorial(s);
    return r;
}

}  // namespace

Integer equi_count(unsigned n, unsigned p, const Rational& delta) {
    Integer total = 0;
    for (const auto& v : equi_size_vectors(n, p, delta)) total += multinomial(v);
    return total;
}

std::vector<EquiMap> equi_enumerate(unsigned n, unsigned p, const Rational& delta) {
    double space = std::pow(static_cast<double>(p), static_cast<double>(n));
    if (space > 1e7) throw Error(ErrorKind::BudgetExceeded, "p^n too large to enumerate");
    auto vectors = equi_size_vectors(n, p, delta);
    std::vector<EquiMap> out;
    EquiMap F(n, 0);
    std::vector<unsigned> counts(p, 0);
    std::function<void(unsigned)> rec = [&](unsigned i) {
        if (i == n) {
            if (std::find(vectors.begin(), vectors.end(), counts) != vectors.end()) out.push_back(F);
            return;
        }
        for (unsigned q = 0; q < p; ++q) {
            F[i] = q;
            ++counts[q];
            rec(i + 1);
            --counts[q];
        }
    };
    rec(0);
    return out;
}

Rational hamming(const EquiMap& F, const EquiMap& G) {
    if (F.size() != G.size() || F.empty()) throw Error(ErrorKind::InvalidParams, "maps must share a nonempty domain");
    unsigned diff = 0;
    for (std::size_t i = 0; i < F.size(); ++i) diff += F[i] != G[i];
    Rational d(diff, static_cast<unsigned>(F.size()));
    d.canonicalize();
    return d;
}

EquiSampler::EquiSampler(unsigned n, unsigned p, const Rational& delta, std::uint64_t seed)
    : p_(p), sizes_(equi_size_vectors(n, p, delta)), rng_(seed) {
    if (sizes_.empty()) throw Error(ErrorKind::EmptySpace, "no class-size vector fits the window");
    Integer total = equi_count(n, p, delta);
    std::vector<double> w;
    for (const auto& v : sizes_) w.push_back(Rational(multinomial(v), total).get_d());
    pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

EquiMap EquiSampler::operator()() {
    const auto& sizes = sizes_[pick_(rng_)];
    EquiMap F;
    for (unsigned q = 0; q < p_; ++q) F.insert(F.end(), sizes[q], q);
    std::shuffle(F.begin(), F.end(), rng_);
    return F;
}

namespace {

std::pair<long, long> class_window(unsigned n, unsigned p, const Rational& delta) {
    Rational mean(n, p);
    mean.canonicalize();
    return {std::max<long>(1, ceil(mean * (1 - delta)).get_si()), floor(mean * (1 + delta)).get_si()};
}

// copy a (0→1) and b (1→0) disagreements from F, then move the class sizes into [lo,hi]
// with extra changes where F and G agree
long distance_to_ball(const EquiMap& F, const EquiMap& G, unsigned rho, long lo, long hi) {
    long n = static_cast<long>(F.size());
    long A = 0, B = 0, c0 = 0, free0 = 0, free1 = 0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        c0 += G[i] == 0;
        if (G[i] == 0 && F[i] == 1) ++A;
        else if (G[i] == 1 && F[i] == 0) ++B;
        else if (G[i] == 0) ++free0;
        else ++free1;
    }
    long best = -1;
    for (long a = 0; a <= A && a <= static_cast<long>(rho); ++a)
        for (long b = 0; b <= B && a + b <= static_cast<long>(rho); ++b) {
            long s = c0 - a + b;
            long e = 0;
            long want_lo = std::max(lo, n - hi), want_hi = std::min(hi, n - lo);
            if (s < want_lo) {
                e = want_lo - s;
                if (e > free1) continue;
            } else if (s > want_hi) {
                e = s - want_hi;
                if (e > free0) continue;
            }
            if (a + b + e > static_cast<long>(rho)) continue;
            long d = (A + B) - a - b + e;
            if (best < 0 || d < best) best = d;
        }
    return best;
}

}  // namespace

long equi_ball_distance(const EquiMap& F, const EquiMap& G, unsigned rho, const Rational& delta) {
    if (F.size() != G.size()) throw Error(ErrorKind::InvalidParams, "maps must share a domain");
    for (std::size_t i = 0; i < F.size(); ++i)
        if (F[i] > 1 || G[i] > 1) throw Error(ErrorKind::InvalidParams, "ball distance supports p = 2");
    auto [lo, hi] = class_window(static_cast<unsigned>(F.size()), 2, delta);
    return distance_to_ball(F, G, rho, lo, hi);
}

ConcentrationReport equi_concentration(const std::vector<unsigned>& ns, unsigned p, const Rational& delta,
                                       const Rational& eta, const Rational& eps, unsigned trials,
                                       std::uint64_t seed, unsigned pool) {
    if (p != 2) throw Error(ErrorKind::InvalidParams, "the concentration probe supports p = 2");
    if (eta <= 0 || eta > 1 || eps < 0 || trials == 0 || pool == 0)
        throw Error(ErrorKind::InvalidParams, "need 0 < eta <= 1, eps >= 0, trials and pool positive");
    ConcentrationReport rep;
    for (unsigned n : ns) {
        EquiSampler sample(n, p, delta, seed ^ (0x9e3779b97f4a7c15ull * (n + 1)));
        auto [lo, hi] = class_window(n, p, delta);
        std::vector<EquiMap> base(pool), probe(pool);
        for (auto& F : base) F = sample();
        for (auto& F : probe) F = sample();
        auto radius = static_cast<long>(floor(eps * n).get_si());
        auto take = static_cast<std::size_t>(ceil(eta * pool).get_ui());
        double worst = 1.0;
        for (unsigned t = 0; t < trials; ++t) {
            EquiMap center = sample();
            // smallest ball around the center holding an η-fraction of the base sample
            std::vector<unsigned> dists;
            for (const auto& F : base) {
                unsigned d = 0;
                for (std::size_t i = 0; i < n; ++i) d += F[i] != center[i];
                dists.push_back(d);
            }
            std::sort(dists.begin(), dists.end());
            unsigned rho = dists[take - 1];
            std::size_t hit = 0;
            for (const auto& F : probe) {
                long d = distance_to_ball(F, center, rho, lo, hi);
                if (d >= 0 && d <= radius) ++hit;
            }
            worst = std::min(worst, static_cast<double>(hit) / pool);
        }
        rep.rows.push_back({n, worst, 1.0 - worst});
    }
    rep.non_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].min_fattening < rep.rows[i - 1].min_fattening) rep.non_decreasing = false;
    return rep;
}

// ---------------------------------------------------------------- Schreier–Mazur

SchreierMazur::SchreierMazur(unsigned max_n) : max_n_(max_n) {
    if (max_n == 0) throw Error(ErrorKind::InvalidParams, "max_n must be positive");
    for (unsigned n = 1; n <= max_n; ++n) {
        auto layer = subsets_of_size(FinSet::range(0, 2 * n), n);
        if (vertices_.size() + layer.size() > FinSet::kCapacity)
            throw Error(ErrorKind::WindowOverflow, "too many vertices for max_n = " + std::to_string(max_n));
        for (const auto& A : layer) {
            vertices_.push_back(A);
            block_.push_back(n);
        }
    }
}

bool SchreierMazur::member(const FinSet& s) const {
    if (s.empty() || s.max() >= vertices_.size()) return false;
    return s.size() == block_[s.min()];
}

unsigned SchreierMazur::color(const FinSet& s) const {
    std::vector<FinSet> unions(max_n_ + 1);
    std::vector<char> touched(max_n_ + 1, 0);
    s.for_each([&](unsigned v) {
        unions[block_.at(v)] |= vertices_[v];
        touched[block_[v]] = 1;
    });
    for (unsigned n = 1; n <= max_n_; ++n)
        if (touched[n] && unions[n] == FinSet::range(0, 2 * n)) return 0;
    return 1;
}

FinSet SchreierMazur::selection(const std::vector<unsigned>& picks) const {
    if (picks.size() != max_n_) throw Error(ErrorKind::InvalidParams, "one pick per block");
    FinSet S;
    for (unsigned v = 0; v < vertices_.size(); ++v) {
        unsigned n = block_[v];
        if (picks[n - 1] >= 2 * n) throw Error(ErrorKind::InvalidParams, "pick outside [0,2n)");
        if (!vertices_[v].contains(picks[n - 1])) S.insert(v);
    }
    return S;
}

bool SchreierMazur::selection_homogeneous(const FinSet& S) const {
    for (unsigned v : S.elements()) {
        FinSet rest = S.above(v);
        unsigned k = block_[v] - 1;
        if (rest.size() < k) continue;
        for (const auto& t : subsets_of_size(rest, k)) {
            FinSet s = t;
            s.insert(v);
            if (color(s) != 1) return false;
        }
    }
    return true;
}

}  // namespace ideallab
