#include "doctest.h"

#include "ideallab/banach.hpp"

#include <cmath>
#include <random>

using namespace ideallab;

namespace {

CompactFamily family(unsigned window, std::vector<FinSet> members) {
    return CompactFamily::closure_of(SetFamily(window, std::move(members)));
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
    return family(window, g);
}

Rational rnd(std::mt19937_64& rng, int lo, int hi, int den) {
    std::uniform_int_distribution<int> d(lo, hi);
    Rational r(d(rng), den);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("eval_norm examples") {
    std::vector<FinSet> small;
    for (const auto& s : all_subsets(FinSet::range(0, 5)))
        if (s.size() <= 2) small.push_back(s);
    CHECK(eval_norm(CompactFamily(SetFamily(5, small)), FinSet::range(0, 5)) == 2);
    CHECK(eval_norm(schreier_family(4), FinSet{1, 2, 3}) == 2);
    CompactFamily K(SetFamily(2, {FinSet{}, FinSet{0}, FinSet{1}, FinSet{0, 1}}));
    CHECK(eval_norm(K, FinSet{0, 1}, {Rational(1), Rational(-1)}) == 1);
}

TEST_CASE("eval_norm equals the largest trace on hereditary families over [0,8)") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        auto K = random_hereditary(rng, 8, 1 + trial % 6);
        auto subsets = all_subsets(FinSet::range(0, 8));
        for (std::size_t i = 0; i < subsets.size(); i += 7) {
            const FinSet& F = subsets[i];
            unsigned best = 0;
            for (const auto& s : K.members()) best = std::max(best, (s & F).size());
            CHECK(eval_norm(K, F) == best);
        }
        std::vector<Rational> a;
        for (unsigned n = 0; n < 8; ++n) a.push_back(rnd(rng, -5, 5, 3));
        FinSet F = subsets[rng() % subsets.size()];
        Rational best = 0;
        for (const auto& s : K.members()) {
            Rational sum = 0;
            for (unsigned n : (s & F).elements()) sum += a[n];
            best = std::max(best, abs(sum));
        }
        CHECK(eval_norm(K, F, a) == best);
    }
}

TEST_CASE("schreier lower bound") {
    auto a = schreier_lower_bound_audit(FinSet::range(0, 6));
    CHECK(a.norm == 3);
    CHECK(a.bound == 3);
    auto b = schreier_lower_bound_audit(FinSet::range(5, 11));
    CHECK(b.norm == 6);
    CHECK(b.bound == 3);
    auto c = schreier_lower_bound_audit(FinSet{});
    CHECK(c.norm == 0);
    CHECK(c.holds);
    auto S = schreier_family(12);
    for (const auto& s : S.members())
        if (!s.empty()) CHECK(s.size() <= s.min() + 1);
    for (const auto& F : all_subsets(FinSet::range(0, 12))) CHECK(schreier_lower_bound_audit(F, S).holds);
}

TEST_CASE("node basis evaluation") {
    auto space = std::make_shared<NodeBasisSpace>(SetFamily(2, {FinSet{}, FinSet{0}, FinSet{0, 1}}));
    Coeffs x{{0, 1}, {1, 2}, {2, 3}};
    CHECK(node_eval(*space, x, FinSet{0, 1}) == 6);
    CHECK(node_eval(*space, x, FinSet{}) == 1);
    CHECK(sup_norm(*space, x) == 6);
    CHECK(space->theta(FinSet{0}) == 1);

    // ⊏-monotone enumeration and the cone-indicator identity on a random family
    std::mt19937_64 rng(8);
    auto sp = NodeBasisSpace(random_hereditary(rng, 6, 4));
    for (unsigned k = 0; k < sp.size(); ++k)
        for (unsigned j = 0; j < sp.size(); ++j)
            if (is_proper_initial_segment(sp.node(j), sp.node(k))) CHECK(j < k);
    Coeffs y;
    for (unsigned k = 0; k < sp.size(); ++k) y[k] = rnd(rng, -4, 4, 5);
    for (const auto& t : sp.nodes()) {
        Rational direct = 0;
        for (unsigned k = 0; k < sp.size(); ++k)
            if (is_initial_segment(sp.node(k), t)) direct += y[k];
        CHECK(node_eval(sp, y, t) == direct);
    }
}

TEST_CASE("representation certificate") {
    std::vector<RationalMeasure> ms{RationalMeasure::point_mass(0), RationalMeasure::point_mass(1, Rational(1, 2))};
    auto rep = build_representation(ms, 2);
    CHECK(rep.g_sum_norm(FinSet{0, 1}) == 1);
    CHECK_FALSE(certify_representation(rep));

    auto single = build_representation({RationalMeasure(std::map<unsigned, Rational>{{0, 1}, {2, Rational(1, 4)}})}, 3);
    CHECK(single.g_sum_norm(FinSet{0, 2}) == Rational(5, 4));
    CHECK_FALSE(certify_representation(single));

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<RationalMeasure> raw;
        unsigned count = 1 + rng() % 4;
        for (unsigned k = 0; k < count; ++k) {
            std::map<unsigned, Rational> w;
            for (unsigned n = 0; n < 6; ++n)
                if (rng() % 3) w[n] = rnd(rng, 1, 9, 4);
            raw.emplace_back(w);
        }
        auto ms2 = quantize_measures(normalize_measures(raw, 6));
        auto r = build_representation(ms2, 6);
        CHECK_FALSE(certify_representation(r));
        // codes are prefix-free among siblings and follow the tree order
        for (const auto& node : r.nodes) CHECK(node.code.back() == '1');
    }
}

TEST_CASE("halving subset") {
    CHECK(halving_subset({Rational(1), Rational(-1), Rational(1)}) == FinSet{0, 2});
    CHECK(halving_subset({Rational(1), Rational(2)}) == FinSet{0, 1});
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10000; ++t) {
        std::vector<Rational> v;
        unsigned n = 1 + rng() % 10;
        Rational total = 0;
        for (unsigned i = 0; i < n; ++i) {
            v.push_back(rnd(rng, -9, 9, 7));
            total += abs(v.back());
        }
        Rational s = 0;
        for (unsigned i : halving_subset(v).elements()) s += v[i];
        CHECK(2 * abs(s) >= total);
    }
}

TEST_CASE("unconditional norm") {
    FinVectorSeq x;
    x.vectors = {Coeffs{{0, Rational(3)}}};
    Budget b = Budget::unlimited();
    CHECK(unconditional_norm(x, {{0, 1}}, b) == 3);
    FinVectorSeq d;
    d.norm = FinVectorSeq::Norm::L1;
    d.vectors = {Coeffs{{0, 1}}, Coeffs{{1, 2}}, Coeffs{{2, 3}}};
    CHECK(unconditional_norm(d, {{0, 1}, {1, 1}, {2, 1}}, b) == 6);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        FinVectorSeq y;
        for (int i = 0; i < 5; ++i) {
            Coeffs c;
            for (unsigned k = 0; k < 4; ++k) c[k] = rnd(rng, -3, 3, 2);
            for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
            y.vectors.push_back(c);
        }
        std::map<unsigned, Rational> a, flipped;
        for (unsigned i = 0; i < 5; ++i) {
            a[i] = rnd(rng, -4, 4, 3);
            flipped[i] = (rng() & 1) ? Rational(-a[i]) : a[i];
        }
        CHECK(unconditional_norm(y, a, b) == unconditional_norm(y, flipped, b));
        CHECK(unconditional_norm(y, a, b) >= y.combination_norm(a));
    }
}

TEST_CASE("sign averages") {
    Budget b = Budget::unlimited();
    auto r = sign_average_report({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, b);
    CHECK(r.e_sq == 2);
    CHECK(r.sum_sq == 2);
    auto r2 = sign_average_report({{Rational(1), Rational(0)}, {Rational(1), Rational(0)}}, b);
    CHECK(r2.e_sq == 2);
    CHECK(r2.parallelogram);
    CHECK(std::abs(r2.e_lin - 1.0) < 1e-12);

    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        unsigned n = 1 + rng() % 8, dim = 1 + rng() % 4;
        std::vector<std::vector<Rational>> v(n);
        for (auto& vec : v)
            for (unsigned j = 0; j < dim; ++j) vec.push_back(rnd(rng, -6, 6, 5));
        auto rep = sign_average_report(v, b, std::make_pair(2.0, 1.0));
        CHECK(rep.parallelogram);
        CHECK(rep.halving);
        // Hilbert space has cotype 2 with constant 1 for E‖·‖²; with E‖·‖ Khintchine–Kahane gives √2
        auto rep2 = sign_average_report(v, b, std::make_pair(2.0, std::sqrt(2.0)));
        CHECK(*rep2.cotype);
    }
}

TEST_CASE("rademacher example") {
    auto x = rademacher_sequence(6);
    CHECK(x.vectors[0] == Coeffs{{0, 1}});
    CHECK(x.vectors[1] == Coeffs{{1, Rational(1, 2)}, {2, Rational(1, 2)}});
    CHECK(x.vectors[2] == Coeffs{{1, Rational(1, 2)}, {2, Rational(-1, 2)}});
    Rational e(1, 8);
    CHECK(x.vectors[3] == Coeffs{{3, e}, {4, e}, {5, e}, {6, e}});
    CHECK(x.vectors[4] == Coeffs{{3, e}, {4, e}, {5, Rational(-e)}, {6, Rational(-e)}});
    CHECK(x.vectors[5] == Coeffs{{3, e}, {4, Rational(-e)}, {5, e}, {6, Rational(-e)}});
    CHECK(x.sum_norm(FinSet{3, 4, 5}) == Rational(3, 4));

    auto lit = rademacher_sequence(6, true);
    CHECK(lit.vectors[1] == x.vectors[1]);
    CHECK(lit.vectors[2] == x.vectors[2]);
    CHECK(lit.sum_norm(FinSet{3, 4, 5}) == Rational(1, 2));

    // each later block is a full sign table on its dyadic interval
    auto big = rademacher_sequence(triangular(5));
    for (unsigned k = 1; k < big.size(); ++k) {
        unsigned n = 1;
        while (triangular(n + 1) <= k) ++n;
        CHECK(big.vectors[k].size() == (1u << n));
        CHECK(big.vector_norm(big.vectors[k]) == Rational(1, n));
    }
}

TEST_CASE("c0 non-P example") {
    CHECK(c0_non_p_index(0).n == 0);
    CHECK(c0_non_p_index(1).n == 1);
    CHECK(c0_non_p_index(3).n == 2);
    // A_0 = even numbers: I_0^0 = {0}, I_1^0 = {2,4}, I_2^0 = {6,8,10}
    CHECK(c0_non_p_index(0).m == 0);
    CHECK(c0_non_p_index(2).m == 1);
    CHECK(c0_non_p_index(4).m == 1);
    CHECK(c0_non_p_index(6).m == 2);
    auto audit = c0_non_p_audit(64);
    REQUIRE(!audit.empty());
    CHECK(audit[0].n == 0);
    CHECK(audit[0].measured == 1);  // every full I_m^0 gives #I/(m+1) = 1
    for (const auto& b : audit) CHECK(b.measured <= b.full_interval);
    CHECK(audit[1].measured > audit[1].inline_claim);
}

TEST_CASE("dyadic density profile") {
    FinSet A;
    for (unsigned n = 1; n < 8; ++n) A.insert((1u << n) - 1);
    auto p = dyadic_profile(A, 8);
    CHECK(p.phi[0] == 0);
    for (unsigned n = 1; n < 8; ++n) CHECK(p.phi[n] == Rational(1) / pow2(n));
    for (const auto& s : p.square_partials) CHECK(s < Rational(1, 3));
    auto y = dyadic_sequence(4);
    CHECK(y.size() == 15);
    CHECK(y.vector_norm(y.vectors[7]) == Rational(1, 8));
}

TEST_CASE("block sequence coloring") {
    FinVectorSeq x;
    x.vectors = {Coeffs{{0, 1}}, Coeffs{{1, 1}}, Coeffs{{2, 1}}};
    auto bs = bs_coloring(x);
    CHECK(bs(0, 1) == 1);
    CHECK(bs(1, 2) == 1);
    FinVectorSeq same;
    same.vectors = {Coeffs{{0, 1}}, Coeffs{{0, 1}}};
    CHECK(bs_coloring(same)(0, 1) == 0);
    FinVectorSeq dec;
    dec.vectors = {Coeffs{{3, 1}}, Coeffs{{1, 1}}};
    CHECK(bs_coloring(dec)(0, 1) == 0);
    FinVectorSeq zero;
    zero.vectors = {Coeffs{}, Coeffs{{0, 1}}};
    CHECK(bs_coloring(zero)(0, 1) == 1);

    auto t = block_truncation(x, FinSet{0, 1, 2});
    CHECK(t[0] == x.vectors[0]);
    CHECK(t[2] == x.vectors[2]);
    FinVectorSeq over;
    over.vectors = {Coeffs{{0, 1}, {1, 1}}, Coeffs{{0, Rational(1, 16)}, {2, 1}}};
    auto t2 = block_truncation(over, FinSet{0, 1});
    CHECK(t2[1] == Coeffs{{2, 1}});
    CHECK(block_truncation(over, FinSet{1})[0] == over.vectors[1]);
}

TEST_CASE("bs gap audit") {
    FinVectorSeq x;
    x.vectors = {Coeffs{{0, 1}}, Coeffs{{1, 1}}, Coeffs{{2, 1}}};
    auto g = bs_gap_audit(x, FinSet{0, 1, 2}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(g.lhs == 0);
    auto z = bs_gap_audit(x, FinSet{0, 1}, {});
    CHECK(z.lhs == 0);
    CHECK(z.rhs == 0);

    FinVectorSeq near;
    near.vectors = {Coeffs{{0, 1}}, Coeffs{{0, Rational(1, 4)}, {1, 1}}};
    auto a = bs_gap_audit(near, FinSet{0, 1}, {{0, 1}, {1, 1}});
    CHECK(a.lhs <= a.rhs);
    CHECK(a.holds);
    FinVectorSeq bad;
    bad.vectors = {Coeffs{{0, 1}}, Coeffs{{0, 1}}};
    CHECK_THROWS_AS(bs_gap_audit(bad, FinSet{0, 1}, {}), Error);

    std::mt19937_64 rng(30);
    for (int t = 0; t < 200; ++t) {
        FinVectorSeq y;
        unsigned top = 0;
        for (unsigned n = 0; n < 6; ++n) {
            Coeffs c;
            for (unsigned k = 0; k <= top; ++k)
                if (rng() % 2) c[k] = Rational(1, 1u << (k + n + 2 + rng() % 3));
            top += 1 + rng() % 2;
            c[top] = rnd(rng, 1, 8, 4);
            y.vectors.push_back(c);
        }
        FinSet H;
        auto bs = bs_coloring(y);
        for (unsigned n = 0; n < 6; ++n) {
            bool ok = true;
            for (unsigned m : H.elements()) ok = ok && bs(m, n) == 1;
            if (ok) H.insert(n);
        }
        std::map<unsigned, Rational> a;
        for (unsigned n = 0; n < 6; ++n) a[n] = rnd(rng, -5, 5, 2);
        CHECK(bs_gap_audit(y, H, a).holds);
    }
}

TEST_CASE("witness family") {
    auto space = std::make_shared<NodeBasisSpace>(CompactFamily(SetFamily(2, {FinSet{}, FinSet{0}, FinSet{1}})));
    FinVectorSeq x;
    x.model = FinVectorSeq::Model::NodeBasis;
    x.space = space;
    x.vectors = {Coeffs{{1, 1}}, Coeffs{{2, 1}}};
    auto w = witness_family(x, 2);
    CHECK(w.family.contains(FinSet{0}));
    CHECK(w.family.contains(FinSet{1}));
    CHECK_FALSE(w.family.contains(FinSet{0, 1}));

    FinVectorSeq zero = x;
    zero.vectors = {Coeffs{}, Coeffs{}};
    CHECK(witness_family(zero, 2).family.size() == 1);

    FinVectorSeq head = x;
    head.vectors = {Coeffs{{0, 5}}};
    CHECK(witness_family(head, 1).family.contains(FinSet{0}));

    std::mt19937_64 rng(44);
    for (int t = 0; t < 30; ++t) {
        auto sp = std::make_shared<NodeBasisSpace>(random_hereditary(rng, 4, 3));
        FinVectorSeq y;
        y.model = FinVectorSeq::Model::NodeBasis;
        y.space = sp;
        for (unsigned n = 0; n < 6; ++n) {
            Coeffs c;
            for (unsigned k = 0; k < sp->size(); ++k)
                if (rng() % 3 == 0) c[k] = rnd(rng, 0, 4, 4);
            for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
            y.vectors.push_back(c);
        }
        auto wf = witness_family(y, 6);
        CHECK(wf.family.family().is_hereditary());
        for (const auto& [s, tw] : wf.witness) CHECK(s.size() <= tw.size() + 1);
    }
}

TEST_CASE("tall colorings") {
    FinVectorSeq x;
    for (unsigned n = 0; n < 8; ++n) x.vectors.push_back(Coeffs{{n, 1}});
    auto A = cube_front(2);
    auto [bs, b] = tall_colorings(x, A, FinSet{0, 1, 2, 3});
    CHECK(bs == 1);
    CHECK(b == 1);
    FinVectorSeq y = x;
    y.vectors[3] = Coeffs{{3, 3}};
    CHECK(tall_colorings(y, A, FinSet{0, 1, 2, 3}).second == 0);
    CHECK_THROWS_AS(tall_colorings(x, A, FinSet{0, 1, 2}), Error);
}

TEST_CASE("tall bound audit") {
    auto space = std::make_shared<NodeBasisSpace>(CompactFamily(SetFamily(1, {FinSet{}})));
    FinVectorSeq x;
    x.model = FinVectorSeq::Model::NodeBasis;
    x.space = space;
    x.vectors = {Coeffs{{0, Rational(99, 100)}}, Coeffs{{0, Rational(24, 100)}}};
    auto G = witness_family(x, 2).family;
    auto r = tall_bound_audit(x, FinSet{0, 1}, G);
    CHECK(r.lhs == Rational(123, 100));
    CHECK(r.rhs_claim == 1);
    CHECK_FALSE(r.claim_holds);
    CHECK(r.proof_holds);

    auto e = tall_bound_audit(x, FinSet{}, G);
    CHECK(e.lhs == 0);
    CHECK(e.rhs_claim == 1);

    // deeper family: audit the proof bound on random instances
    std::mt19937_64 rng(71);
    auto deep = std::make_shared<NodeBasisSpace>(
        CompactFamily::closure_of(SetFamily(4, {FinSet{0, 1, 2}, FinSet{0, 3}, FinSet{1, 2, 3}})));
    for (int t = 0; t < 100; ++t) {
        FinVectorSeq y;
        y.model = FinVectorSeq::Model::NodeBasis;
        y.space = deep;
        for (unsigned n = 0; n < 5; ++n) {
            Coeffs c;
            for (unsigned k = 0; k < deep->size(); ++k)
                if (rng() % 4 == 0) c[k] = rnd(rng, 1, 4, 8);
            y.vectors.push_back(c);
        }
        FinSet R;
        auto bsc = bs_coloring(y);
        for (unsigned n = 0; n < 5; ++n) {
            bool ok = true;
            for (unsigned m : R.elements()) ok = ok && bsc(m, n) == 1;
            if (ok) R.insert(n);
        }
        auto a = tall_bound_audit(y, R, witness_family(y, 5).family);
        CHECK(a.proof_holds);
        CHECK(a.lhs <= a.rhs_proof);
    }
}

TEST_CASE("c0 hom1 audit") {
    FinVectorSeq x;
    for (unsigned n = 0; n < 5; ++n) x.vectors.push_back(Coeffs{{n, 1}});
    auto r = c0_hom1_audit(x, FinSet::range(0, 5));
    CHECK(r.sup == 1);
    CHECK(r.bound == 2);
    CHECK(r.holds);
    auto s = c0_hom1_audit(x, FinSet{2});
    CHECK(s.holds);
    FinVectorSeq bad;
    bad.vectors = {Coeffs{{0, 1}}, Coeffs{{0, 1}}};
    CHECK_THROWS_AS(c0_hom1_audit(bad, FinSet{0, 1}), Error);
}
