#include "ideallab/measures.hpp"

#include "ideallab/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ideallab {

RationalMeasure::RationalMeasure(std::map<unsigned, Rational> weights) {
    for (auto& [n, w] : weights) {
        if (w < 0) throw Error(ErrorKind::InvalidParams, "negative weight at " + std::to_string(n));
        if (w > 0) weights_.emplace(n, w);
    }
}

RationalMeasure RationalMeasure::point_mass(unsigned n, const Rational& w) { return RationalMeasure({{n, w}}); }

RationalMeasure RationalMeasure::counting(unsigned window) {
    std::map<unsigned, Rational> w;
    for (unsigned n = 0; n < window; ++n) w[n] = 1;
    return RationalMeasure(std::move(w));
}

Rational RationalMeasure::operator()(const FinSet& A) const {
    Rational total = 0;
    for (const auto& [n, w] : weights_)
        if (A.contains(n)) total += w;
    return total;
}

Rational RationalMeasure::at(unsigned n) const {
    auto it = weights_.find(n);
    return it == weights_.end() ? Rational(0) : it->second;
}

SupSubmeasure::SupSubmeasure(std::vector<RationalMeasure> measures, unsigned window)
    : measures_(std::move(measures)), window_(window) {}

Rational SupSubmeasure::operator()(const FinSet& A) const {
    FinSet inside = A.below(window_);
    Rational best = 0;
    for (const auto& mu : measures_) {
        Rational v = mu(inside);
        if (v > best) best = v;
    }
    return best;
}

Rational phi_eval(const SupSubmeasure& phi, const FinSet& A) {
    if (!A.empty() && A.max() >= phi.window())
        throw Error(ErrorKind::InvalidParams, "set " + A.str() + " outside window");
    return phi(A);
}

MembershipProfile membership_profile(const SupSubmeasure& phi, const FinSet& A, IdealKind kind,
                                     const Rational& bound) {
    MembershipProfile p{kind, phi.window(), bound, 0, {}, 0, false, ""};
    FinSet inside = A.below(phi.window());
    switch (kind) {
        case IdealKind::Fin: {
            p.value = phi(inside);
            p.half_window_value = phi(inside.below((phi.window() + 1) / 2));
            p.within_bound = p.value <= bound;
            std::string growth = p.value > p.half_window_value ? "grows under window doubling"
                                                               : "stable under window doubling";
            p.verdict = std::string(p.within_bound ? "within bound" : "exceeds bound") + "; " + growth;
            break;
        }
        case IdealKind::Exh: {
            for (unsigned n = 0; n <= phi.window(); ++n) p.tail.push_back(phi(inside - FinSet::range(0, n)));
            p.value = p.tail.size() >= 2 ? p.tail[p.tail.size() - 2] : p.tail.back();
            p.within_bound = p.value <= bound;
            p.verdict = p.within_bound ? "tail within bound at window edge" : "tail exceeds bound at window edge";
            break;
        }
        case IdealKind::Sum: {
            inside.for_each([&](unsigned n) { p.value += phi(FinSet{n}); });
            p.within_bound = p.value <= bound;
            p.verdict = p.within_bound ? "partial sum within bound" : "partial sum exceeds bound";
            break;
        }
    }
    return p;
}

std::vector<RationalMeasure> normalize_measures(const std::vector<RationalMeasure>& ms, unsigned window) {
    std::vector<RationalMeasure> out;
    std::size_t rounds = std::max<std::size_t>(ms.size(), window);
    for (std::size_t k = 0; k < rounds; ++k) {
        if (k < ms.size()) {
            std::map<unsigned, Rational> capped;
            for (const auto& [n, w] : ms[k].weights()) capped[n] = w > 1 ? Rational(1) : w;
            out.emplace_back(std::move(capped));
        }
        if (k < window) {
            Rational w(1, static_cast<unsigned long>(k + 1));
            w.canonicalize();
            out.push_back(RationalMeasure::point_mass(static_cast<unsigned>(k), w));
        }
    }
    return out;
}

std::vector<RationalMeasure> quantize_measures(const std::vector<RationalMeasure>& ms) {
    std::vector<RationalMeasure> out;
    for (const auto& mu : ms) {
        std::map<unsigned, Rational> q;
        for (const auto& [n, w] : mu.weights()) {
            // i/2^n < w <= (i+1)/2^n, keep i/2^n
            Rational grid = pow2(static_cast<int>(n));
            Integer i = ceil(Rational(w * grid)) - 1;
            Rational lam(i);
            lam /= grid;
            q[n] = lam;
        }
        out.emplace_back(std::move(q));
    }
    return out;
}

std::vector<FinSet> cardinal_interval(const FinSet& X, const Rational& alpha, const Rational& beta) {
    if (alpha < 0 || beta > 1 || alpha > beta)
        throw Error(ErrorKind::InvalidParams, "need 0 <= alpha <= beta <= 1");
    std::vector<FinSet> out;
    Rational size = X.size();
    for (unsigned k = 0; k <= X.size(); ++k) {
        Rational r = k;
        if (alpha * size <= r && r <= beta * size) {
            auto part = subsets_of_size(X, k);
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return out;
}

SetFamily hat_cover(const FinSet& X, const std::vector<FinSet>& members) {
    if (members.size() > FinSet::kCapacity) throw Error(ErrorKind::WindowOverflow, "too many members to index");
    std::vector<FinSet> hats;
    X.for_each([&](unsigned x) {
        FinSet hat;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (!members[i].contains(x)) hat.insert(static_cast<unsigned>(i));
        hats.push_back(hat);
    });
    return SetFamily(static_cast<unsigned>(members.size()), std::move(hats));
}

Rational kelley_number(const FinSet& X, const SetFamily& cover) {
    if (cover.empty()) throw Error(ErrorKind::NotACovering, "empty cover");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    X.for_each([&](unsigned x) {
        std::size_t count = 0;
        for (const auto& S : cover.members())
            if (S.contains(x)) ++count;
        if (count == 0) throw Error(ErrorKind::NotACovering, "point " + std::to_string(x) + " is uncovered");
        best = std::min(best, count);
    });
    if (X.empty()) return 1;
    Rational d(static_cast<unsigned long>(best), static_cast<unsigned long>(cover.size()));
    d.canonicalize();
    return d;
}

FinSet kelley_witness(const FinSet& X, const SetFamily& cover, const RationalMeasure& mu) {
    Rational target = kelley_number(X, cover) * mu(X);
    for (const auto& S : cover.members())
        if (mu(S & X) >= target) return S;
    throw std::logic_error("no member reaches the Kelley bound");
}

namespace {

void cover_search(const FinSet& uncovered, const std::vector<FinSet>& family, unsigned used, unsigned& best) {
    if (uncovered.empty()) {
        best = std::min(best, used);
        return;
    }
    if (used + 1 >= best) return;
    // branch on the uncovered point with the fewest covering members
    unsigned pivot = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    uncovered.for_each([&](unsigned x) {
        std::size_t c = 0;
        for (const auto& S : family)
            if (S.contains(x)) ++c;
        if (c < fewest) {
            fewest = c;
            pivot = x;
        }
    });
    if (fewest == 0) return;
    for (const auto& S : family)
        if (S.contains(pivot)) cover_search(uncovered - S, family, used + 1, best);
}

void hitting_search(const std::vector<FinSet>& sets, const FinSet& chosen, unsigned used, unsigned& best) {
    const FinSet* pick = nullptr;
    for (const auto& S : sets)
        if (!S.intersects(chosen) && (pick == nullptr || S.size() < pick->size())) pick = &S;
    if (pick == nullptr) {
        best = std::min(best, used);
        return;
    }
    if (used + 1 >= best) return;
    pick->for_each([&](unsigned x) {
        FinSet next = chosen;
        next.insert(x);
        hitting_search(sets, next, used + 1, best);
    });
}

}  // namespace

std::optional<unsigned> min_cover_size(const FinSet& X, const std::vector<FinSet>& family) {
    FinSet all;
    for (const auto& S : family) all |= S;
    if (!X.subset_of(all)) return std::nullopt;
    unsigned best = static_cast<unsigned>(family.size()) + 1;
    cover_search(X, family, 0, best);
    return best;
}

unsigned covering_submeasure(const FinSet& X, const std::vector<FinSet>& interval, const std::vector<FinSet>& A) {
    for (const auto& S : interval)
        if (S == X) throw Error(ErrorKind::Unbounded, "interval contains X itself (beta = 1)");
    for (const auto& S : A)
        if (std::find(interval.begin(), interval.end(), S) == interval.end())
            throw Error(ErrorKind::InvalidParams, "member " + S.str() + " is not in the interval");

    // min #F with every member missing some point of F: a hitting set of the complements
    std::vector<FinSet> complements;
    for (const auto& S : A) complements.push_back(X - S);
    unsigned by_hitting = X.size() + 1;
    hitting_search(complements, FinSet(), 0, by_hitting);

    // least r such that some r-subset of X lies in no member
    unsigned by_covering = X.size() + 1;
    for (unsigned r = 0; r <= X.size() && by_covering > X.size(); ++r) {
        for (const auto& s : subsets_of_size(X, r)) {
            bool inside = false;
            for (const auto& S : A)
                if (s.subset_of(S)) {
                    inside = true;
                    break;
                }
            if (!inside) {
                by_covering = r;
                break;
            }
        }
    }
    if (by_hitting != by_covering)
        throw std::logic_error("covering submeasure definitions disagree: " + std::to_string(by_hitting) + " vs " +
                               std::to_string(by_covering));
    return by_hitting;
}

unsigned amalgam_submeasure(const std::vector<CoveringBlock>& blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks[i].X.intersects(blocks[j].X))
                throw Error(ErrorKind::InvalidParams, "blocks are not pairwise disjoint");
    unsigned best = 0;
    for (const auto& b : blocks) best = std::max(best, covering_submeasure(b.X, b.interval, b.A));
    return best;
}

namespace {

void check_nonnegative(const StepFunctions& g) {
    for (std::size_t n = 0; n < g.size(); ++n)
        for (std::size_t j = 0; j < g[n].size(); ++j)
            if (g[n][j] < 0)
                throw Error(ErrorKind::NegativeFunction,
                            "g_" + std::to_string(n) + " is negative at sample " + std::to_string(j));
}

const Rational& sample(const StepFunctions& g, std::size_t n, std::size_t j) {
    if (j >= g[n].size()) throw Error(ErrorKind::InvalidParams, "sample index out of range");
    return g[n][j];
}

}  // namespace

std::vector<RationalMeasure> measures_from_functions(const StepFunctions& g, const std::vector<std::size_t>& alpha,
                                                     std::size_t count) {
    check_nonnegative(g);
    if (alpha.empty() && count > 0) throw Error(ErrorKind::InvalidParams, "empty sample enumeration");
    std::vector<RationalMeasure> out;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t point = alpha[k % alpha.size()];
        std::map<unsigned, Rational> w;
        for (std::size_t n = 0; n < g.size() && n < k; ++n) w[static_cast<unsigned>(n)] = sample(g, n, point);
        out.emplace_back(std::move(w));
    }
    return out;
}

Rational step_sum_norm(const StepFunctions& g, const FinSet& A) {
    std::size_t points = g.empty() ? 0 : g[0].size();
    Rational best = 0;
    for (std::size_t j = 0; j < points; ++j) {
        Rational v = 0;
        A.for_each([&](unsigned n) {
            if (n < g.size()) v += sample(g, n, j);
        });
        v = abs(v);
        if (v > best) best = v;
    }
    return best;
}

RationalMeasure summable_extension(const StepFunctions& g, const std::vector<std::size_t>& x) {
    check_nonnegative(g);
    std::map<unsigned, Rational> w;
    for (std::size_t n = 0; n < g.size(); ++n) {
        Rational total = 0;
        for (std::size_t k = 0; k < x.size(); ++k) total += sample(g, n, x[k]) * pow2(-static_cast<int>(k));
        w[static_cast<unsigned>(n)] = total;
    }
    RationalMeasure mu(std::move(w));
    if (g.size() <= 12) {
        for (const auto& A : all_subsets(FinSet::range(0, static_cast<unsigned>(g.size()))))
            if (mu(A) > 2 * step_sum_norm(g, A)) throw std::logic_error("summable extension exceeds 2*norm");
    }
    return mu;
}

}  // namespace ideallab
