#include "ideallab/banach.hpp"
#include "ideallab/colorings.hpp"
#include "ideallab/core_sets.hpp"
#include "ideallab/hypergraph_lab.hpp"
#include "ideallab/measures.hpp"
#include "ideallab/posets.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace ideallab;

namespace {

struct Check {
    bool ok = true;
    std::string note;
    std::string failure;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) failure = what;
        ok = ok && cond;
    }
};

int failures = 0;

void run(int id, const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.failure = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit_s) c.require(false, "time limit exceeded");
    if (!c.ok) ++failures;
    std::printf("%s %2d %-34s %7.2fs / %.0fs  %s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit_s,
                c.ok ? c.note.c_str() : c.failure.c_str());
    std::fflush(stdout);
}

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Rational rnd(std::mt19937_64& rng, int lo, int hi, int den) {
    std::uniform_int_distribution<int> d(lo, hi);
    return q(d(rng), den);
}

std::vector<Rational> beta_grid() { return {q(1, 4), q(1, 2), q(3, 4), q(7, 8)}; }

std::vector<Rational> alpha_grid(const Rational& beta) {
    std::vector<Rational> out;
    for (long k = 0; k <= 8; ++k)
        if (q(k, 8) <= beta) out.push_back(q(k, 8));
    return out;
}

// Largest antichain and largest chain by subset enumeration.
std::pair<unsigned, unsigned> brute_width_height(const Poset& P) {
    std::size_t n = P.size();
    unsigned width = 0, height = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool anti = true, chain = true;
        for (std::size_t i = 0; i < n && (anti || chain); ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!(mask >> j & 1)) continue;
                if (P.comparable(i, j)) anti = false;
                else chain = false;
            }
        }
        unsigned c = static_cast<unsigned>(__builtin_popcount(mask));
        if (anti) width = std::max(width, c);
        if (chain) height = std::max(height, c);
    }
    return {width, height};
}

bool is_chain(const Poset& P, const FinSet& s) {
    auto e = s.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (!P.less_points(e[i], e[j]) && !P.less_points(e[j], e[i])) return false;
    return true;
}

bool is_antichain(const Poset& P, const FinSet& s) {
    auto e = s.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (P.less_points(e[i], e[j]) || P.less_points(e[j], e[i])) return false;
    return true;
}

bool poset_agrees(const Poset& P) {
    auto [w, h] = brute_width_height(P);
    auto dil = width_and_dilworth(P);
    auto levels = mirsky_cover(P);
    if (dil.width != w || dil.chains.size() != w || levels.size() != h) return false;
    if (dil.antichain.size() != w || !is_antichain(P, dil.antichain)) return false;
    FinSet covered;
    for (const auto& c : dil.chains) {
        if (!is_chain(P, c)) return false;
        covered |= c;
    }
    FinSet leveled;
    for (const auto& l : levels) {
        if (!is_antichain(P, l)) return false;
        leveled |= l;
    }
    return covered == P.ground() && leveled == P.ground();
}

CompactFamily random_hereditary(std::mt19937_64& rng, unsigned window, int gens) {
    std::bernoulli_distribution coin(0.4);
    std::vector<FinSet> g;
    for (int i = 0; i < gens; ++i) {
        FinSet s;
        for (unsigned n = 0; n < window; ++n)
            if (coin(rng)) s.insert(n);
        g.push_back(s);
    }
    return CompactFamily::closure_of(SetFamily(window, g));
}

PairColoring random_coloring(std::uint64_t seed, unsigned n) {
    auto table = std::make_shared<std::vector<unsigned>>(static_cast<std::size_t>(n) * n);
    std::mt19937_64 rng(seed);
    for (auto& x : *table) x = rng() & 1;
    return PairColoring{[table, n](unsigned a, unsigned b) { return (*table)[a * n + b]; }, 2, "random"};
}

// Vectors whose later members carry a geometrically small tail on earlier coordinates.
FinVectorSeq block_like_sequence(std::mt19937_64& rng, unsigned count) {
    FinVectorSeq y;
    unsigned top = 0;
    for (unsigned n = 0; n < count; ++n) {
        Coeffs c;
        for (unsigned k = 0; k <= top; ++k)
            if (rng() % 2) c[k] = q(1, 1l << (k + n + 2 + rng() % 3));
        top += 1 + rng() % 2;
        c[top] = rnd(rng, 1, 8, 4);
        y.vectors.push_back(c);
    }
    return y;
}

FinSet greedy_hom1(const FinVectorSeq& y) {
    FinSet H;
    auto bs = bs_coloring(y);
    for (unsigned n = 0; n < y.size(); ++n) {
        bool ok = true;
        for (unsigned m : H.elements()) ok = ok && bs(m, n) == 1;
        if (ok) H.insert(n);
    }
    return H;
}

// Whether every r=2 coloring of [n]^{n/p} has a class with p+2 members covering [n], by a superset DP.
bool two_color_universal(unsigned n, unsigned p) {
    auto sets = subsets_of_size(FinSet::range(0, n), n / p);
    unsigned m = static_cast<unsigned>(sets.size());
    unsigned need = p + 2;
    std::uint64_t full = (1ull << n) - 1;
    std::vector<char> good(1u << m, 0);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) == need) {
            std::uint64_t u = 0;
            for (unsigned i = 0; i < m; ++i)
                if (mask >> i & 1) u |= sets[i].mask64();
            good[mask] = u == full;
        }
        if (good[mask]) continue;
        for (unsigned i = 0; i < m && !good[mask]; ++i)
            if (mask >> i & 1) good[mask] = good[mask & ~(1u << i)];
    }
    std::uint32_t all = (1u << m) - 1;
    for (std::uint32_t mask = 0; mask <= all; ++mask)
        if (!good[mask] && !good[all & ~mask]) return false;
    return true;
}

}  // namespace

int main() {
    run(1, "gillis bound d=3 delta=1/100", 1, [](Check& c) {
        auto r = gillis_bound(3, q(99, 200), q(101, 200));
        c.require(r.a.size() >= 4 && r.a[1] == 1 && r.a[2] == 6 && r.a[3] == 6, "a_l");
        c.require(r.m0 == 11 && r.k == 22, "m0/k");
        double limit = (12 + std::sqrt(112.0)) / 2;
        c.require(r.m0 == static_cast<unsigned>(std::floor(limit)), "floor of the δ → 0 limit");
        c.note = "a=(1,6,6) m0=" + std::to_string(r.m0) + " k=" + std::to_string(r.k);
    });

    run(2, "kelley inequality #X<=8", 10, [](Check& c) {
        std::size_t cases = 0;
        for (unsigned size = 1; size <= 8; ++size) {
            FinSet X = FinSet::range(0, size);
            for (const auto& beta : beta_grid())
                for (const auto& alpha : alpha_grid(beta)) {
                    auto iv = cardinal_interval(X, alpha, beta);
                    if (iv.empty()) continue;
                    ++cases;
                    Rational d = kelley_number(FinSet::range(0, static_cast<unsigned>(iv.size())), hat_cover(X, iv));
                    unsigned largest = 0;
                    for (const auto& A : iv) largest = std::max(largest, A.size());
                    Rational oracle = q(size - largest, size);
                    c.require(d == oracle, "kelley number differs from 1 - max#A/#X");
                    c.require(d >= 1 - beta, "kelley number below 1 - beta");
                }
        }
        c.note = std::to_string(cases) + " intervals";
    });

    run(3, "psi pathology certificate #X<=8", 30, [](Check& c) {
        std::size_t cases = 0, literal_fails = 0;
        for (unsigned size = 1; size <= 8; ++size) {
            FinSet X = FinSet::range(0, size);
            auto subsets = all_subsets(X);
            for (const auto& beta : beta_grid())
                for (const auto& alpha : alpha_grid(beta)) {
                    auto iv = cardinal_interval(X, alpha, beta);
                    if (iv.empty()) continue;
                    ++cases;
                    unsigned psi = covering_submeasure(X, iv, iv);
                    unsigned oracle = size + 1;
                    for (const auto& F : subsets) {
                        bool escapes = std::none_of(iv.begin(), iv.end(), [&](const FinSet& S) { return F.subset_of(S); });
                        if (escapes) oracle = std::min(oracle, F.size());
                    }
                    c.require(psi == oracle, "psi differs from brute force");
                    c.require(Rational(psi) > beta * size, "psi not above beta#X");
                    if (beta >= q(1, 2)) c.require(Rational(psi) > (1 - beta) * size, "psi not above (1-beta)#X");
                    else if (Rational(psi) <= (1 - beta) * size) ++literal_fails;
                }
        }
        c.note = std::to_string(cases) + " intervals; psi=floor(beta#X)+1 > beta#X, and > (1-beta)#X for beta>=1/2; the (1-beta)#X form fails on " +
                 std::to_string(literal_fails) + " beta<1/2 intervals";
    });

    run(4, "trivial Mazur chromatic number", 60, [](Check& c) {
        std::string note;
        for (unsigned n = 2; n <= 4; ++n) {
            auto block = make_block(FinSet::range(0, 2 * n), q(1, 2), q(1, 2));
            auto H = block_hypergraph(block, 2);
            Budget b = Budget::unlimited();
            auto r = chromatic_number(H, b, 80);
            c.require(r.exact && r.upper == 2, "chi != 2 for n=" + std::to_string(n));
            c.require(proper_coloring(H, r.coloring), "witness coloring not proper");
            note += "n=" + std::to_string(n) + ":" + std::to_string(r.upper) + " ";
        }
        c.note = note;
    });

    run(5, "evaluation norm identity [0,8)", 60, [](Check& c) {
        std::mt19937_64 rng(5);
        auto subsets = all_subsets(FinSet::range(0, 8));
        std::size_t checked = 0;
        for (int trial = 0; trial < 200; ++trial) {
            auto K = random_hereditary(rng, 8, 1 + trial % 8);
            for (const auto& F : subsets) {
                unsigned best = 0;
                for (const auto& s : K.members()) best = std::max(best, (s & F).size());
                c.require(eval_norm(K, F) == best, "norm differs from the largest trace");
                ++checked;
            }
        }
        c.note = std::to_string(checked) + " (K,F) pairs, 200 seeded K";
    });

    run(6, "representation certificate", 10, [](Check& c) {
        std::mt19937_64 rng(6);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<RationalMeasure> raw;
            unsigned count = 1 + rng() % 4;
            for (unsigned k = 0; k < count; ++k) {
                std::map<unsigned, Rational> w;
                for (unsigned n = 0; n < 6; ++n)
                    if (rng() % 3) w[n] = rnd(rng, 1, 9, 4);
                raw.emplace_back(w);
            }
            auto rep = build_representation(quantize_measures(normalize_measures(raw, 6)), 6);
            for (const auto& F : all_subsets(FinSet::range(0, 6)))
                c.require(rep.g_sum_norm(F) == rep.phi(F), "sup norm differs from sup of measures");
            c.require(!certify_representation(rep), "certificate reports a failing set");
        }
        c.note = "20 families x 64 sets";
    });

    run(7, "dilworth/mirsky oracle", 120, [](Check& c) {
        std::size_t count7 = 0, total = 0;
        for (unsigned n = 1; n <= 7; ++n) {
            std::vector<std::uint32_t> down(n, 0);
            std::function<void(unsigned)> rec = [&](unsigned j) {
                if (j == n) {
                    if (n == 7) ++count7;
                    ++total;
                    Poset P(FinSet::range(0, n), [&](unsigned a, unsigned b) { return (down[b] >> a & 1) != 0; });
                    c.require(poset_agrees(P), "discrepancy on an enumerated poset");
                    return;
                }
                for (std::uint32_t D = 0; D < (1u << j); ++D) {
                    bool closed = true;
                    for (unsigned i = 0; i < j && closed; ++i)
                        if ((D >> i & 1) && (down[i] & ~D)) closed = false;
                    if (!closed) continue;
                    down[j] = D;
                    rec(j + 1);
                }
            };
            rec(0);
        }
        c.require(count7 == 96428, "wrong count of 7-point posets");
        std::mt19937_64 rng(7);
        for (int t = 0; t < 1000; ++t) {
            unsigned n = 1 + rng() % 12;
            std::bernoulli_distribution coin(0.05 + 0.5 * (rng() % 8) / 8.0);
            std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = i + 1; j < n; ++j) r[i][j] = coin(rng);
            for (unsigned k = 0; k < n; ++k)
                for (unsigned i = 0; i < n; ++i)
                    for (unsigned j = 0; j < n; ++j)
                        if (r[i][k] && r[k][j]) r[i][j] = true;
            std::vector<unsigned> perm(n);
            for (unsigned i = 0; i < n; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            Poset P(FinSet::range(0, n), [&](unsigned a, unsigned b) { return static_cast<bool>(r[perm[a]][perm[b]]); });
            c.require(poset_agrees(P), "discrepancy on a random poset");
        }
        c.note = std::to_string(total) + " enumerated (96428 on 7 points) + 1000 random";
    });

    run(8, "comparability duality [0,14)", 30, [](Check& c) {
        std::mt19937_64 rng(8);
        std::vector<PairColoring> cs{ed_fin_coloring(), q_coloring(RationalEnumeration::canonical())};
        std::size_t windows = 0;
        for (const auto& col : cs)
            for (unsigned i = 0; i < 2; ++i) {
                std::vector<FinSet> Ms{FinSet::range(0, 14)};
                for (int t = 0; t < 25; ++t) Ms.push_back(FinSet::from_mask(rng() & ((1u << 14) - 1)));
                for (const auto& M : Ms) {
                    auto r = window_duality_check(col, i, M);
                    ++windows;
                    c.require(r.passed && r.pieces_verified, col.name + " duality failed");
                    c.require(r.mirsky_pieces.size() == r.longest_chain, "mirsky piece count");
                    c.require(r.dilworth_pieces.size() == r.width, "dilworth piece count");
                    FinSet cov;
                    for (const auto& p : r.mirsky_pieces) {
                        auto h = hom_check(col, p);
                        c.require(h.empty() || h == std::set<unsigned>{1 - i}, "mirsky piece not homogeneous");
                        cov |= p;
                    }
                    c.require(cov == M, "mirsky pieces do not cover");
                    cov = FinSet{};
                    for (const auto& p : r.dilworth_pieces) {
                        auto h = hom_check(col, p);
                        c.require(h.empty() || h == std::set<unsigned>{i}, "dilworth piece not homogeneous");
                        cov |= p;
                    }
                    c.require(cov == M, "dilworth pieces do not cover");
                }
            }
        c.note = std::to_string(windows) + " windows";
    });

    run(9, "conv hom0 bound [0,14)", 60, [](Check& c) {
        auto conv = conv_coloring(RationalEnumeration::canonical());
        std::uint64_t zero_sets = 0;
        for (const auto& s : all_subsets(FinSet::range(0, 14))) {
            if (s.size() >= 3 && hom_check(conv, s) != std::set<unsigned>{0}) continue;
            ++zero_sets;
            c.require(s.empty() || s.size() <= s.min() + 2, "0-homogeneous set above min + 2: " + s.str());
        }
        auto audit = conv_hom0_audit(RationalEnumeration::canonical(), FinSet::range(0, 14));
        c.require(audit.sets == zero_sets, "audit count differs from enumeration");
        c.require(!audit.violation, "audit reports a violation");
        c.note = std::to_string(zero_sets) + " 0-homogeneous sets, largest " + std::to_string(audit.largest);
    });

    run(10, "sign-average identities", 30, [](Check& c) {
        std::mt19937_64 rng(10);
        Budget b = Budget::unlimited();
        for (int t = 0; t < 500; ++t) {
            unsigned n = 1 + rng() % 8, dim = 1 + rng() % 4;
            std::vector<std::vector<Rational>> v(n);
            Rational sum_sq = 0;
            for (auto& vec : v)
                for (unsigned j = 0; j < dim; ++j) {
                    vec.push_back(rnd(rng, -6, 6, 5));
                    sum_sq += vec.back() * vec.back();
                }
            auto rep = sign_average_report(v, b);
            c.require(rep.parallelogram && rep.e_sq == sum_sq, "parallelogram identity");
            c.require(rep.halving, "E_theta <= 2 E_A");
            c.require(rep.e_lin <= 2 * rep.subset_avg * (1 + 1e-12), "E_theta <= 2 E_A (oracle)");
        }
        c.note = "500 tuples";
    });

    run(11, "rademacher example values", 1, [](Check& c) {
        auto x = rademacher_sequence(6);
        c.require(x.vectors[1] == Coeffs{{1, q(1, 2)}, {2, q(1, 2)}}, "x_1");
        Rational n345 = x.sum_norm(FinSet{3, 4, 5});
        c.require(n345 == q(3, 4), "norm of x3+x4+x5");
        Rational literal = rademacher_sequence(6, true).sum_norm(FinSet{3, 4, 5});
        c.note = "||x3+x4+x5||=" + to_string(n345) + " (floor exponent as printed gives " + to_string(literal) + ")";
    });

    run(12, "schreier lower bound [0,16)", 30, [](Check& c) {
        auto S = schreier_family(16);
        std::size_t count = 0;
        for (const auto& F : all_subsets(FinSet::range(0, 16))) {
            auto a = schreier_lower_bound_audit(F, S);
            auto e = F.elements();
            unsigned oracle = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                oracle = std::max(oracle, std::min<unsigned>(static_cast<unsigned>(e.size() - i), e[i] + 1));
            c.require(a.norm == oracle, "norm differs from the greedy trace " + F.str());
            c.require(2 * Rational(a.norm) >= F.size() && a.holds, "norm below #F/2 on " + F.str());
            ++count;
        }
        c.note = std::to_string(count) + " sets";
    });

    run(13, "selector guarantee", 30, [](Check& c) {
        for (unsigned n : {16u, 64u, 256u}) {
            unsigned guarantee2 = static_cast<unsigned>(std::floor(std::log2(n)));
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                auto col = random_coloring(seed * 7919 + n, n);
                auto [h, colour] = ramsey_extract(col, FinSet::range(0, n));
                c.require(2 * h.size() >= guarantee2, "homogeneous set too small");
                auto cols = hom_check(col, h);
                c.require(cols.empty() || cols == std::set<unsigned>{colour}, "returned set not homogeneous");
            }
        }
        c.note = "300 colorings";
    });

    run(14, "mono-cover desk experiment", 600, [](Check& c) {
        Budget b = Budget::unlimited();
        auto u = mono_cover_search(4, 2, 1, b);
        Budget b2 = Budget::unlimited();
        auto ce = mono_cover_search(2, 2, 1, b2);
        c.require(u.verdict == CoverVerdict::Universal, "(4,2,1) not UNIVERSAL");
        c.require(ce.verdict == CoverVerdict::Counterexample, "(2,2,1) not COUNTEREXAMPLE");
        Budget b3(0, 600000);
        auto r = mono_cover_search(6, 2, 2, b3, 4);
        c.require(r.verdict != CoverVerdict::Budget, "(6,2,2) did not complete");
        bool oracle = two_color_universal(6, 2);
        c.require((r.verdict == CoverVerdict::Universal) == oracle, "(6,2,2) differs from the superset oracle");
        c.note = "(6,2,2)=" + verdict_name(r.verdict) + " nodes=" + std::to_string(r.nodes);
    });

    run(15, "bs audits", 60, [](Check& c) {
        std::mt19937_64 rng(15);
        for (int t = 0; t < 200; ++t) {
            auto y = block_like_sequence(rng, 6);
            FinSet H = greedy_hom1(y);
            std::map<unsigned, Rational> a;
            for (unsigned n = 0; n < 6; ++n) a[n] = rnd(rng, -5, 5, 2);
            auto g = bs_gap_audit(y, H, a);
            c.require(g.holds && g.lhs <= g.rhs, "gap inequality violated");
        }
        for (int t = 0; t < 200; ++t) {
            auto y = block_like_sequence(rng, 7);
            FinSet H = greedy_hom1(y);
            auto r = c0_hom1_audit(y, H);
            Rational sup = 0, top = 0;
            for (const auto& F : all_subsets(H)) sup = std::max(sup, y.sum_norm(F));
            H.for_each([&](unsigned n) { top = std::max(top, y.vector_norm(y.vectors[n])); });
            c.require(r.sup == sup && r.bound == top + 1, "c0 audit differs from enumeration");
            c.require(r.holds && sup <= top + 1, "c0 bound violated");
        }
        c.note = "200 gap + 200 c0 instances";
    });

    std::printf("%d of 15 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
