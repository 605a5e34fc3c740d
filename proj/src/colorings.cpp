#include "ideallab/colorings.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

namespace ideallab {

namespace {

constexpr std::size_t kCanonicalSize = 8192;

struct CanonicalTable {
    std::vector<Rational> values;
    std::map<Rational, unsigned> index;
};

const CanonicalTable& canonical_table() {
    static const CanonicalTable table = [] {
        CanonicalTable t;
        for (unsigned q = 2; t.values.size() < kCanonicalSize; ++q)
            for (unsigned p = 1; p < q; ++p)
                if (std::gcd(p, q) == 1) {
                    t.index.emplace(Rational(p, q), static_cast<unsigned>(t.values.size()));
                    t.values.emplace_back(p, q);
                }
        return t;
    }();
    return table;
}

}  // namespace

FrontColoring FrontColoring::from_pairs(const PairColoring& c) {
    return FrontColoring{cube_front(2),
                         [c](const FinSet& s) {
                             auto e = s.elements();
                             return c.rule(e[0], e[1]);
                         },
                         c.colors, c.name};
}

RationalEnumeration RationalEnumeration::canonical() {
    RationalEnumeration t;
    t.canonical_ = true;
    return t;
}

RationalEnumeration::RationalEnumeration(std::vector<Rational> values) : values_(std::move(values)) {
    std::vector<Rational> sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidParams, "enumeration is not injective");
}

Rational RationalEnumeration::operator()(unsigned n) const {
    const auto& v = canonical_ ? canonical_table().values : values_;
    if (n >= v.size()) throw Error(ErrorKind::WindowOverflow, "θ(" + std::to_string(n) + ") outside the enumeration");
    return v[n];
}

std::optional<unsigned> RationalEnumeration::index_of(const Rational& q) const {
    if (canonical_) {
        const auto& idx = canonical_table().index;
        auto it = idx.find(q);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }
    for (unsigned i = 0; i < values_.size(); ++i)
        if (values_[i] == q) return i;
    return std::nullopt;
}

std::set<unsigned> hom_check(const FrontColoring& c, const FinSet& A) {
    std::set<unsigned> out;
    for (const auto& s : c.front.enumerate(A)) out.insert(c.rule(s));
    return out;
}

std::set<unsigned> hom_check(const PairColoring& c, const FinSet& A) {
    std::set<unsigned> out;
    auto e = A.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) out.insert(c.rule(e[i], e[j]));
    return out;
}

namespace {

struct CoverSearch {
    const FrontColoring& c;
    std::vector<unsigned> elems;
    unsigned k;
    Budget& budget;
    std::vector<FinSet> pieces;
    std::vector<int> piece_color;  // −1 while no front member lies inside the piece

    // colors of the members of 𝒢↾(P ∪ {x}) that contain x
    std::optional<int> extend_color(const FinSet& P, unsigned x, int color) {
        FinSet Q = P;
        Q.insert(x);
        for (const auto& s : c.front.enumerate(Q)) {
            if (!s.contains(x)) continue;
            int col = static_cast<int>(c.rule(s));
            if (color < 0) color = col;
            else if (col != color) return std::nullopt;
        }
        return color;
    }

    bool rec(std::size_t i) {
        budget.tick();
        if (i == elems.size()) return true;
        unsigned x = elems[i];
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            auto col = extend_color(pieces[p], x, piece_color[p]);
            if (!col) continue;
            int saved = piece_color[p];
            pieces[p].insert(x);
            piece_color[p] = *col;
            if (rec(i + 1)) return true;
            pieces[p].erase(x);
            piece_color[p] = saved;
        }
        if (pieces.size() < k) {
            auto col = extend_color(FinSet{}, x, -1);
            if (col) {
                pieces.push_back(FinSet{x});
                piece_color.push_back(*col);
                if (rec(i + 1)) return true;
                pieces.pop_back();
                piece_color.pop_back();
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<FinSet>> cover_by_homogeneous(const FrontColoring& c, const FinSet& M, unsigned k,
                                                        Budget& budget) {
    CoverSearch search{c, M.elements(), k, budget, {}, {}};
    if (!search.rec(0)) return std::nullopt;
    return search.pieces;
}

std::pair<FinSet, unsigned> ramsey_extract(const PairColoring& c, const FinSet& ground) {
    if (ground.size() < 2) throw Error(ErrorKind::InvalidParams, "ramsey_extract needs at least two points");
    std::vector<unsigned> rest = ground.elements();
    std::vector<std::pair<unsigned, unsigned>> pivots;  // (pivot, color toward later pivots)
    unsigned last = 0;
    while (!rest.empty()) {
        unsigned p = rest.front();
        std::vector<std::vector<unsigned>> by_color(c.colors);
        for (std::size_t i = 1; i < rest.size(); ++i) by_color[c.rule(p, rest[i])].push_back(rest[i]);
        if (rest.size() == 1) {
            last = p;
            break;
        }
        unsigned best = 0;
        for (unsigned col = 1; col < c.colors; ++col)
            if (by_color[col].size() > by_color[best].size()) best = col;
        pivots.emplace_back(p, best);
        rest = std::move(by_color[best]);
    }
    std::vector<unsigned> tally(c.colors, 0);
    for (const auto& [p, col] : pivots) ++tally[col];
    unsigned color = static_cast<unsigned>(std::max_element(tally.begin(), tally.end()) - tally.begin());
    FinSet out{last};
    for (const auto& [p, col] : pivots)
        if (col == color) out.insert(p);
    return {out, color};
}

GalvinColoring::GalvinColoring(CompactFamily K) : K_(std::move(K)) {}

unsigned GalvinColoring::operator()(const FinSet& M) const {
    FinSet prefix;
    if (!K_.contains(prefix)) return 1;
    for (unsigned n : M.elements()) {
        prefix.insert(n);
        if (!K_.contains(prefix)) return 1;
    }
    return 0;
}

bool GalvinColoring::window_check() const {
    for (const auto& H : all_subsets(FinSet::range(0, K_.window()))) {
        bool hom0 = true;
        for (const auto& N : all_subsets(H))
            if ((*this)(N) != 0) {
                hom0 = false;
                break;
            }
        if (hom0 != K_.contains(H)) return false;
    }
    return true;
}

PairColoring q_coloring(const RationalEnumeration& theta) {
    return PairColoring{[theta](unsigned m, unsigned n) { return theta(m) < theta(n) ? 1u : 0u; }, 2, "q"};
}

FrontColoring conv_coloring(const RationalEnumeration& theta) {
    return FrontColoring{cube_front(3),
                         [theta](const FinSet& s) {
                             auto e = s.elements();
                             Rational gap = abs(Rational(theta(e[1]) - theta(e[2])));
                             return gap < Rational(1, e[0] + 1) ? 1u : 0u;
                         },
                         2, "conv"};
}

ConvHom0Audit conv_hom0_audit(const RationalEnumeration& theta, const FinSet& window) {
    auto pts = window.elements();
    std::vector<Rational> th;
    for (unsigned n : pts) th.push_back(theta(n));
    ConvHom0Audit audit;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        ++audit.sets;
        audit.largest = std::max(audit.largest, static_cast<unsigned>(cur.size()));
        if (!cur.empty() && cur.size() > pts[cur.front()] + 2 && !audit.violation) {
            FinSet s;
            for (auto i : cur) s.insert(pts[i]);
            audit.violation = s;
        }
        for (std::size_t k = from; k < pts.size(); ++k) {
            bool zero = true;
            for (std::size_t x = 0; x < cur.size() && zero; ++x)
                for (std::size_t y = x + 1; y < cur.size() && zero; ++y)
                    if (abs(Rational(th[cur[y]] - th[k])) < Rational(1, pts[cur[x]] + 1)) zero = false;
            if (!zero) continue;
            cur.push_back(k);
            rec(k + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return audit;
}

FinSet conv_zero_builder(const RationalEnumeration& theta, const FinSet& A, unsigned r) {
    auto elems = A.elements();
    if (r > elems.size()) throw Error(ErrorKind::InsufficientDensity, "A has fewer than r points");
    if (r <= 2) return FinSet(std::vector<unsigned>(elems.begin(), elems.begin() + r));
    std::vector<Rational> th;
    for (unsigned n : elems) th.push_back(theta(n));
    FrontColoring conv = conv_coloring(theta);

    for (std::size_t ai = 0; ai < elems.size(); ++ai) {
        Rational gap(1, elems[ai] + 1);
        for (std::size_t start = 0; start < elems.size(); ++start) {
            // chain a_0 < … < a_{2r+1} in A, θ increasing with steps above 1/(a+1)
            std::vector<std::size_t> chain{start};
            while (chain.size() < 2 * r + 2) {
                std::optional<std::size_t> next;
                for (std::size_t j = chain.back() + 1; j < elems.size(); ++j)
                    if (th[j] - th[chain.back()] > gap && (!next || th[j] < th[*next])) next = j;
                if (!next) break;
                chain.push_back(*next);
            }
            if (chain.size() < 2 * r + 2) continue;
            FinSet D;
            std::size_t from = ai + 1;
            for (unsigned k = 1; k <= r; ++k) {
                std::optional<std::size_t> pick;
                for (std::size_t j = from; j < elems.size() && !pick; ++j)
                    if (th[chain[2 * k]] < th[j] && th[j] < th[chain[2 * k + 1]]) pick = j;
                if (!pick) break;
                D.insert(elems[*pick]);
                from = *pick + 1;
            }
            if (D.size() != r) continue;
            if (hom_check(conv, D) != std::set<unsigned>{0})
                throw std::logic_error("conv_zero_builder produced a non-homogeneous set");
            return D;
        }
    }
    throw Error(ErrorKind::InsufficientDensity, "no admissible configuration inside A");
}

unsigned ed_fin_block(unsigned n) {
    unsigned b = 0;
    while ((2ull << b) - 1 <= n) ++b;
    return b;
}

PairColoring ed_fin_coloring() {
    return PairColoring{[](unsigned m, unsigned n) { return ed_fin_block(m) != ed_fin_block(n) ? 1u : 0u; }, 2,
                        "ed_fin"};
}

int submeasure_bucket(const Rational& weight) {
    if (weight <= 0) return -1;
    int j = 0;
    Rational w = weight;
    while (w < 1) {
        w *= 2;
        ++j;
    }
    return j;
}

PairColoring submeasure_blocks_coloring(const SupSubmeasure& phi) {
    std::vector<int> bucket;
    for (unsigned n = 0; n < phi.window(); ++n) bucket.push_back(submeasure_bucket(phi(FinSet{n})));
    return PairColoring{[bucket](unsigned m, unsigned n) {
                            if (n >= bucket.size())
                                throw Error(ErrorKind::WindowOverflow, "point outside the submeasure window");
                            return bucket[m] == bucket[n] ? 0u : 1u;
                        },
                        2, "submeasure_blocks"};
}

Integer devlin_number(unsigned d) {
    if (d == 0) throw Error(ErrorKind::InvalidParams, "devlin_number needs d ≥ 1");
    if (d > 8) throw Error(ErrorKind::Overflow, "devlin_number is capped at d = 8");
    std::vector<Integer> T(d + 1);
    T[1] = 1;
    for (unsigned k = 2; k <= d; ++k) T[k] = (k - 1) * T[k - 1];
    for (unsigned k = 2; k <= d; ++k)
        for (unsigned j = k; j <= d; ++j) T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j];
    return T[d];
}

}  // namespace ideallab
