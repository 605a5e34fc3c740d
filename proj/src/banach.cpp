#include "ideallab/banach.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

namespace ideallab {

Rational eval_norm(const CompactFamily& K, const FinSet& F, const std::vector<Rational>& a) {
    const auto& members = K.members();
    if (a.empty()) {
        for (auto it = members.rbegin(); it != members.rend(); ++it)
            if (it->subset_of(F)) return Rational(it->size());
        return 0;
    }
    if (!F.empty() && F.max() >= a.size()) throw Error(ErrorKind::InvalidParams, "coefficient list shorter than F");
    Rational best = 0;
    for (const auto& s : members) {
        if (!s.subset_of(F)) continue;
        Rational sum = 0;
        s.for_each([&](unsigned n) { sum += a[n]; });
        best = std::max(best, abs(sum));
    }
    return best;
}

CompactFamily schreier_family(unsigned window) {
    std::vector<FinSet> members{FinSet{}};
    for (unsigned m = 0; m < window; ++m) {
        FinSet cur{m};
        std::function<void(unsigned)> rec = [&](unsigned from) {
            members.push_back(cur);
            if (cur.size() == m + 1) return;
            for (unsigned n = from; n < window; ++n) {
                cur.insert(n);
                rec(n + 1);
                cur.erase(n);
            }
        };
        rec(m + 1);
    }
    return CompactFamily(SetFamily(window, members));
}

SchreierAudit schreier_lower_bound_audit(const FinSet& F) {
    unsigned window = F.empty() ? 0 : F.max() + 1;
    return schreier_lower_bound_audit(F, schreier_family(window));
}

SchreierAudit schreier_lower_bound_audit(const FinSet& F, const CompactFamily& S) {
    SchreierAudit r;
    r.norm = static_cast<unsigned>(eval_norm(S, F).get_num().get_ui());
    r.bound = Rational(F.size(), 2);
    r.bound.canonicalize();
    r.holds = r.norm >= r.bound;
    return r;
}

// ---------------------------------------------------------------- node basis

NodeBasisSpace::NodeBasisSpace(SetFamily family) : family_(std::move(family)) {
    if (nodes().empty() || !nodes().front().empty()) throw Error(ErrorKind::InvalidParams, "𝓕 must contain ∅");
    for (const auto& t : nodes())
        if (!t.empty()) {
            FinSet parent = t;
            parent.erase(t.max());
            if (!family_.contains(parent))
                throw Error(ErrorKind::InvalidParams, "𝓕 is not closed under initial segments at " + t.str());
        }
}

unsigned NodeBasisSpace::theta(const FinSet& t) const {
    auto it = std::lower_bound(nodes().begin(), nodes().end(), t, canonical_less);
    if (it == nodes().end() || *it != t) throw Error(ErrorKind::InvalidParams, t.str() + " is not a node of 𝓕");
    return static_cast<unsigned>(it - nodes().begin());
}

namespace {

Rational coeff(const Coeffs& x, unsigned k) {
    auto it = x.find(k);
    return it == x.end() ? Rational(0) : it->second;
}

// x(t_k) for every node, using that the parent of t precedes t canonically
std::vector<Rational> node_values(const NodeBasisSpace& space, const Coeffs& x) {
    std::vector<Rational> val(space.size());
    for (unsigned k = 0; k < space.size(); ++k) {
        const FinSet& t = space.node(k);
        val[k] = coeff(x, k);
        if (!t.empty()) {
            FinSet parent = t;
            parent.erase(t.max());
            val[k] += val[space.theta(parent)];
        }
    }
    return val;
}

}  // namespace

Rational node_eval(const NodeBasisSpace& space, const Coeffs& x, const FinSet& t) {
    Rational sum = coeff(x, space.theta(FinSet{}));
    FinSet prefix;
    for (unsigned n : t.elements()) {
        prefix.insert(n);
        sum += coeff(x, space.theta(prefix));
    }
    return sum;
}

Rational sup_norm(const NodeBasisSpace& space, const Coeffs& x) {
    Rational best = 0;
    for (const auto& v : node_values(space, x)) best = std::max(best, abs(v));
    return best;
}

Coeffs add_scaled(const Coeffs& acc, const Coeffs& v, const Rational& c) {
    Coeffs out = acc;
    if (c == 0) return out;
    for (const auto& [k, val] : v) {
        Rational s = coeff(out, k) + c * val;
        if (s == 0) out.erase(k);
        else out[k] = s;
    }
    return out;
}

int max_support(const Coeffs& v) { return v.empty() ? -1 : static_cast<int>(v.rbegin()->first); }

Rational FinVectorSeq::vector_norm(const Coeffs& v) const {
    if (model == Model::NodeBasis) {
        if (!space) throw Error(ErrorKind::InvalidParams, "node-basis sequence without a space");
        return sup_norm(*space, v);
    }
    Rational r = 0;
    for (const auto& [k, c] : v) {
        if (norm == Norm::L1) r += abs(c);
        else r = std::max(r, abs(c));
    }
    return r;
}

Rational FinVectorSeq::combination_norm(const std::map<unsigned, Rational>& a) const {
    Coeffs acc;
    for (const auto& [n, c] : a) {
        if (n >= vectors.size()) throw Error(ErrorKind::WindowOverflow, "vector index beyond the sequence");
        acc = add_scaled(acc, vectors[n], c);
    }
    return vector_norm(acc);
}

Rational FinVectorSeq::sum_norm(const FinSet& F) const {
    std::map<unsigned, Rational> a;
    F.for_each([&](unsigned n) { a[n] = 1; });
    return combination_norm(a);
}

// ---------------------------------------------------------------- representation

Representation build_representation(const std::vector<RationalMeasure>& ms, unsigned window) {
    Representation rep;
    rep.window = window;
    rep.measures = ms;
    rep.g.resize(window);
    struct Pending {
        std::vector<Rational> prefix;
        std::string code;
        std::vector<std::size_t> members;
    };
    std::vector<Pending> level{{{}, "", {}}};
    for (std::size_t k = 0; k < ms.size(); ++k) level[0].members.push_back(k);
    if (ms.empty()) return rep;
    for (unsigned d = 0; d < window; ++d) {
        std::vector<Pending> next;
        for (const auto& node : level) {
            std::map<Rational, std::vector<std::size_t>> children;
            for (std::size_t k : node.members) children[ms[k].at(d)].push_back(k);
            unsigned i = 0;
            for (auto& [value, members] : children) {
                Pending child{node.prefix, node.code + std::string(i, '0') + "1", std::move(members)};
                child.prefix.push_back(value);
                rep.nodes.push_back({child.prefix, child.code});
                if (value != 0) rep.g[d].emplace_back(child.code, value);
                next.push_back(std::move(child));
                ++i;
            }
        }
        level = std::move(next);
    }
    return rep;
}

Rational Representation::g_sum_norm(const FinSet& F) const {
    std::unordered_map<std::string, Rational> weight;
    F.for_each([&](unsigned n) {
        if (n >= g.size()) throw Error(ErrorKind::WindowOverflow, "F outside the representation window");
        for (const auto& [code, v] : g[n]) weight[code] += v;
    });
    // the value at α ∈ 2^ℕ sums the weights of all codes that are prefixes of α
    Rational best = 0;
    for (const auto& [code, w] : weight) {
        Rational acc = 0;
        for (std::size_t len = 1; len <= code.size(); ++len) {
            auto it = weight.find(code.substr(0, len));
            if (it != weight.end()) acc += it->second;
        }
        best = std::max(best, abs(acc));
    }
    return best;
}

Rational Representation::phi(const FinSet& F) const {
    Rational best = 0;
    for (const auto& mu : measures) best = std::max(best, mu(F));
    return best;
}

std::optional<FinSet> certify_representation(const Representation& rep) {
    for (const auto& F : all_subsets(FinSet::range(0, rep.window)))
        if (rep.g_sum_norm(F) != rep.phi(F)) return F;
    return std::nullopt;
}

// ---------------------------------------------------------------- signs

FinSet halving_subset(const std::vector<Rational>& values) {
    FinSet pos, neg;
    Rational sp = 0, sn = 0;
    for (unsigned i = 0; i < values.size(); ++i) {
        if (values[i] > 0) {
            pos.insert(i);
            sp += values[i];
        } else if (values[i] < 0) {
            neg.insert(i);
            sn -= values[i];
        }
    }
    return sp >= sn ? pos : neg;
}

Rational unconditional_norm(const FinVectorSeq& x, const std::map<unsigned, Rational>& a, Budget& budget) {
    std::vector<std::pair<unsigned, Rational>> active;
    Rational best = 0;
    for (const auto& [n, c] : a)
        if (c != 0) {
            active.emplace_back(n, c);
            best = std::max(best, abs(c));
        }
    if (active.size() > 20) throw Error(ErrorKind::BudgetExceeded, "more than 20 active coordinates");
    for (std::uint64_t mask = 0; mask < (1ull << active.size()); ++mask) {
        budget.tick();
        std::map<unsigned, Rational> signed_a;
        for (std::size_t i = 0; i < active.size(); ++i)
            signed_a[active[i].first] = (mask >> i & 1) ? Rational(-active[i].second) : active[i].second;
        best = std::max(best, x.combination_norm(signed_a));
    }
    return best;
}

namespace {

Rational norm_sq(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const auto& c : v) s += c * c;
    return s;
}

Rational norm_sup(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const auto& c : v) s = std::max(s, abs(c));
    return s;
}

}  // namespace

SignAverageReport sign_average_report(const std::vector<std::vector<Rational>>& vectors, Budget& budget,
                                      std::optional<std::pair<double, double>> cotype) {
    std::size_t n = vectors.size();
    if (n > 16) throw Error(ErrorKind::BudgetExceeded, "sign averages are limited to 16 vectors");
    std::size_t dim = 0;
    for (const auto& v : vectors) dim = std::max(dim, v.size());
    auto combo = [&](std::uint64_t mask, bool signs) {
        std::vector<Rational> s(dim, 0);
        for (std::size_t k = 0; k < n; ++k) {
            bool bit = mask >> k & 1;
            if (!signs && !bit) continue;
            for (std::size_t j = 0; j < vectors[k].size(); ++j) s[j] += (signs && bit) ? -vectors[k][j] : vectors[k][j];
        }
        return s;
    };
    SignAverageReport r;
    Rational sq = 0, sup_lin = 0, sup_sub = 0;
    double lin = 0, sub = 0;
    std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        budget.tick();
        auto s = combo(mask, true);
        Rational q = norm_sq(s);
        sq += q;
        lin += std::sqrt(q.get_d());
        sup_lin += norm_sup(s);
        auto t = combo(mask, false);
        sub += std::sqrt(norm_sq(t).get_d());
        sup_sub += norm_sup(t);
    }
    r.e_sq = sq / Rational(Integer(total));
    r.sum_sq = 0;
    for (const auto& v : vectors) r.sum_sq += norm_sq(v);
    r.e_lin = lin / static_cast<double>(total);
    r.subset_avg = sub / static_cast<double>(total);
    r.e_lin_sup = sup_lin / Rational(Integer(total));
    r.subset_avg_sup = sup_sub / Rational(Integer(total));
    r.parallelogram = r.e_sq == r.sum_sq;
    r.halving = r.e_lin <= 2 * r.subset_avg * (1 + 1e-12) && r.e_lin_sup <= 2 * r.subset_avg_sup;
    if (cotype) {
        auto [q, C] = *cotype;
        double lhs = 0;
        for (const auto& v : vectors) lhs += std::pow(std::sqrt(norm_sq(v).get_d()), q);
        lhs = std::pow(lhs, 1.0 / q);
        r.cotype = lhs <= C * r.e_lin * (1 + 1e-12);
    }
    return r;
}

// ---------------------------------------------------------------- example sequences

unsigned triangular(unsigned n) { return n * (n + 1) / 2; }

FinVectorSeq rademacher_sequence(unsigned count, bool literal) {
    FinVectorSeq x;
    x.model = FinVectorSeq::Model::Coordinate;
    x.norm = FinVectorSeq::Norm::L1;
    for (unsigned k = 0; k < count; ++k) {
        Coeffs v;
        if (k == 0) {
            v[0] = 1;
        } else {
            unsigned n = 1;
            while (triangular(n + 1) <= k) ++n;
            if (n >= 30) throw Error(ErrorKind::Overflow, "Rademacher index too large");
            Rational c(1, n * (1u << n));
            unsigned lo = (1u << n) - 1, hi = (2u << n) - 1;
            for (unsigned j = lo; j < hi; ++j) {
                unsigned e = literal ? j >> (triangular(n + 1) - k) : (j - lo) >> (triangular(n + 1) - k - 1);
                v[j] = e % 2 ? Rational(-c) : c;
            }
        }
        x.vectors.push_back(std::move(v));
    }
    return x;
}

C0Index c0_non_p_index(unsigned k) {
    unsigned n = 0, q = k + 1;
    while (q % 2 == 0) {
        q /= 2;
        ++n;
    }
    unsigned p = (q - 1) / 2;  // position of k inside A_n
    unsigned m = 0;
    for (unsigned start = 0;; ++m) {
        unsigned len = (n + 1) * (n + m + 1);
        if (p < start + len) break;
        start += len;
    }
    return {n, m};
}

FinVectorSeq c0_non_p_sequence(unsigned window) {
    FinVectorSeq x;
    for (unsigned k = 0; k < window; ++k) {
        auto [n, m] = c0_non_p_index(k);
        x.vectors.push_back(Coeffs{{m, Rational(1, n + m + 1)}});
    }
    return x;
}

std::vector<C0BlockProfile> c0_non_p_audit(unsigned window) {
    FinVectorSeq x = c0_non_p_sequence(window);
    std::map<unsigned, FinSet> blocks;
    for (unsigned k = 0; k < window; ++k) blocks[c0_non_p_index(k).n].insert(k);
    std::vector<C0BlockProfile> out;
    for (const auto& [n, A] : blocks) {
        // coefficients are nonnegative, so the whole block attains the maximum over F ⊆ A_n
        out.push_back({n, x.sum_norm(A), Rational(1, n + 1), Rational(n + 1)});
    }
    return out;
}

DyadicProfile dyadic_profile(const FinSet& A, unsigned levels) {
    DyadicProfile p;
    Rational acc = 0;
    for (unsigned n = 0; n < levels; ++n) {
        FinSet block = FinSet::range((1u << n) - 1, (2u << n) - 1);
        Rational v = Rational((A & block).size()) / pow2(static_cast<int>(n));
        p.phi.push_back(v);
        acc += v * v;
        p.square_partials.push_back(acc);
    }
    return p;
}

FinVectorSeq dyadic_sequence(unsigned levels) {
    FinVectorSeq x;
    for (unsigned n = 0; n < levels; ++n)
        for (unsigned k = (1u << n) - 1; k < (2u << n) - 1; ++k)
            x.vectors.push_back(Coeffs{{n, Rational(1) / pow2(static_cast<int>(n))}});
    return x;
}

// ---------------------------------------------------------------- block sequence coloring

PairColoring bs_coloring(const FinVectorSeq& x) {
    auto vecs = std::make_shared<std::vector<Coeffs>>(x.vectors);
    return PairColoring{[vecs](unsigned m, unsigned n) -> unsigned {
                            if (n >= vecs->size())
                                throw Error(ErrorKind::WindowOverflow, "index beyond the vector sequence");
                            int top = max_support((*vecs)[m]);
                            if (top > max_support((*vecs)[n])) return 0;
                            for (const auto& [k, c] : (*vecs)[n]) {
                                if (static_cast<int>(k) > top) break;
                                if (abs(c) > pow2(-static_cast<int>(k) - 1) * pow2(-static_cast<int>(m) - 1)) return 0;
                            }
                            return 1;
                        },
                        2, "bs"};
}

bool bs_hom1(const FinVectorSeq& x, const FinSet& H) {
    auto cols = hom_check(bs_coloring(x), H);
    return cols.empty() || cols == std::set<unsigned>{1};
}

std::vector<Coeffs> block_truncation(const FinVectorSeq& x, const FinSet& s) {
    std::vector<Coeffs> out;
    int cut = -1, last_top = -1;
    for (unsigned n : s.elements()) {
        if (n >= x.size()) throw Error(ErrorKind::WindowOverflow, "index beyond the vector sequence");
        Coeffs v;
        for (const auto& [k, c] : x.vectors[n])
            if (static_cast<int>(k) > cut) v[k] = c;
        if (!v.empty()) {
            if (static_cast<int>(v.begin()->first) <= last_top)
                throw std::logic_error("truncations do not form a block sequence");
            last_top = max_support(v);
        }
        cut = std::max(cut, max_support(x.vectors[n]));
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

Rational truncated_sum_norm(const FinVectorSeq& x, const FinSet& s, const std::map<unsigned, Rational>& a) {
    auto trunc = block_truncation(x, s);
    auto elems = s.elements();
    Coeffs acc;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        auto it = a.find(elems[i]);
        Rational c = it == a.end() ? Rational(1) : it->second;
        acc = add_scaled(acc, trunc[i], c);
    }
    return x.vector_norm(acc);
}

}  // namespace

GapAudit bs_gap_audit(const FinVectorSeq& x, const FinSet& H, const std::map<unsigned, Rational>& a) {
    if (!bs_hom1(x, H)) throw Error(ErrorKind::NotHomogeneous, H.str() + " is not 1-homogeneous for bs");
    std::map<unsigned, Rational> aH;
    Rational amax = 0;
    H.for_each([&](unsigned n) {
        auto it = a.find(n);
        aH[n] = it == a.end() ? Rational(0) : it->second;
        amax = std::max(amax, abs(aH[n]));
    });
    GapAudit r;
    r.lhs = abs(Rational(x.combination_norm(aH) - truncated_sum_norm(x, H, aH)));
    r.rhs = H.empty() ? Rational(0) : amax / pow2(static_cast<int>(H.min()));
    r.holds = r.lhs <= r.rhs;
    return r;
}

WitnessFamily witness_family(const FinVectorSeq& x, unsigned window) {
    if (x.model != FinVectorSeq::Model::NodeBasis || !x.space)
        throw Error(ErrorKind::InvalidParams, "witness_family needs a node-basis sequence");
    const NodeBasisSpace& sp = *x.space;
    unsigned N = std::min<unsigned>(window, static_cast<unsigned>(x.size()));
    std::map<FinSet, FinSet, CanonicalLess> witness;
    for (const auto& t : sp.nodes()) {
        std::vector<unsigned> path{sp.theta(FinSet{})};
        FinSet prefix;
        for (unsigned e : t.elements()) {
            prefix.insert(e);
            path.push_back(sp.theta(prefix));
        }
        FinSet s;
        std::function<void(unsigned)> rec = [&](unsigned from) {
            if (!witness.count(s)) witness.emplace(s, t);
            if (s.size() > t.size() + 1) throw std::logic_error("witness family member exceeds #t + 1");
            for (unsigned n = from; n < N; ++n) {
                bool ok = false;
                for (unsigned u : path) {
                    if (coeff(x.vectors[n], u) < pow2(-static_cast<int>(u))) continue;
                    bool fresh = true;
                    s.for_each([&](unsigned m) {
                        if (coeff(x.vectors[m], u) != 0) fresh = false;
                    });
                    if (fresh) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) continue;
                s.insert(n);
                rec(n + 1);
                s.erase(n);
            }
        };
        rec(0);
    }
    std::vector<FinSet> members;
    for (const auto& [s, t] : witness) members.push_back(s);
    return WitnessFamily{CompactFamily(SetFamily(window, members)), witness};
}

std::pair<unsigned, unsigned> tall_colorings(const FinVectorSeq& x, const UniformFront& A, const FinSet& s) {
    if (A.rank().is_zero()) throw Error(ErrorKind::InvalidParams, "tall coloring needs a front of rank ≥ 1");
    FinSet s0;
    try {
        s0 = front_step(A, s);
    } catch (const Error&) {
        throw Error(ErrorKind::NotInFront, s.str() + " has no initial segment in the front");
    }
    FinSet s1 = s - s0;
    if (s1.empty() || !A.contains(s1)) throw Error(ErrorKind::NotInFront, s.str() + " is not in A ⊕ A");
    auto e = s.elements();
    unsigned bs = bs_coloring(x)(e[0], e[1]);
    Rational n0 = truncated_sum_norm(x, s0, {});
    Rational n1 = truncated_sum_norm(x, s1, {});
    unsigned b = 2 * n0 >= n1 ? 1 : 0;
    return {bs, b};
}

TallAudit tall_bound_audit(const FinVectorSeq& x, const FinSet& R, const CompactFamily& G) {
    if (x.model != FinVectorSeq::Model::NodeBasis || !x.space)
        throw Error(ErrorKind::InvalidParams, "tall_bound_audit needs a node-basis sequence");
    if (!bs_hom1(x, R)) throw Error(ErrorKind::NotHomogeneous, R.str() + " is not 1-homogeneous for bs");
    TallAudit r;
    r.lhs = x.sum_norm(R);
    r.sup_g = 0;
    for (const auto& s : G.members())
        if (s.subset_of(R)) r.sup_g = std::max(r.sup_g, x.sum_norm(s));
    r.rhs_claim = 1 + r.sup_g;
    const NodeBasisSpace& sp = *x.space;
    Rational tail = 0;
    for (const auto& t : sp.nodes()) {
        Rational acc = 2;  // u = ∅, θ = 0
        FinSet prefix;
        for (unsigned e : t.elements()) {
            prefix.insert(e);
            acc += pow2(1 - static_cast<int>(sp.theta(prefix)));
        }
        tail = std::max(tail, acc);
    }
    r.rhs_proof = r.sup_g + tail;
    r.claim_holds = r.lhs <= r.rhs_claim;
    r.proof_holds = r.lhs <= r.rhs_proof;
    return r;
}

C0Hom1Audit c0_hom1_audit(const FinVectorSeq& x, const FinSet& H) {
    if (x.model != FinVectorSeq::Model::Coordinate || x.norm != FinVectorSeq::Norm::Sup)
        throw Error(ErrorKind::InvalidParams, "c0_hom1_audit needs the coordinate sup-norm model");
    if (!bs_hom1(x, H)) throw Error(ErrorKind::NotHomogeneous, H.str() + " is not 1-homogeneous for bs");
    if (H.size() > 20) throw Error(ErrorKind::BudgetExceeded, "c0_hom1_audit is limited to #H ≤ 20");
    C0Hom1Audit r;
    r.sup = 0;
    Rational top = 0;
    H.for_each([&](unsigned n) { top = std::max(top, x.vector_norm(x.vectors[n])); });
    for (const auto& F : all_subsets(H)) r.sup = std::max(r.sup, x.sum_norm(F));
    r.bound = top + 1;
    r.holds = r.sup <= r.bound;
    return r;
}

}  // namespace ideallab
