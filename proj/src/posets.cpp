#include "ideallab/posets.hpp"

#include "ideallab/banach.hpp"
#include "ideallab/errors.hpp"

#include <algorithm>

namespace ideallab {

Poset::Poset(const FinSet& ground, const std::function<bool(unsigned, unsigned)>& less)
    : ground_(ground), points_(ground.elements()) {
    std::size_t n = points_.size();
    rel_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rel_[i * n + j] = less(points_[i], points_[j]);
    for (std::size_t i = 0; i < n; ++i) {
        if (this->less(i, i)) throw Error(ErrorKind::InvalidParams, "relation is not irreflexive");
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (this->less(i, j) && this->less(j, k) && !this->less(i, k))
                    throw Error(ErrorKind::InvalidParams, "relation is not transitive at (" +
                                                              std::to_string(points_[i]) + "," +
                                                              std::to_string(points_[j]) + "," +
                                                              std::to_string(points_[k]) + ")");
    }
}

bool Poset::less_points(unsigned a, unsigned b) const {
    auto ia = std::lower_bound(points_.begin(), points_.end(), a) - points_.begin();
    auto ib = std::lower_bound(points_.begin(), points_.end(), b) - points_.begin();
    if (ia >= static_cast<long>(points_.size()) || points_[ia] != a || ib >= static_cast<long>(points_.size()) ||
        points_[ib] != b)
        throw Error(ErrorKind::InvalidParams, "point outside the poset");
    return less(ia, ib);
}

Poset poset_from_coloring(const PairColoring& c, unsigned i, const FinSet& window) {
    Poset P;
    P.ground_ = window;
    P.points_ = window.elements();
    std::size_t n = P.points_.size();
    P.rel_.assign(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) P.rel_[a * n + b] = c.rule(P.points_[a], P.points_[b]) == i;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!P.less(a, b)) continue;
            for (std::size_t d = b + 1; d < n; ++d)
                if (P.less(b, d) && !P.less(a, d))
                    throw Error(ErrorKind::NotComparability,
                                "color " + std::to_string(i) + " is not transitive on {" +
                                    std::to_string(P.points_[a]) + "," + std::to_string(P.points_[b]) + "," +
                                    std::to_string(P.points_[d]) + "}");
        }
    return P;
}

namespace {

bool augment(const Poset& P, std::size_t u, std::vector<int>& match_right, std::vector<char>& seen) {
    for (std::size_t v = 0; v < P.size(); ++v) {
        if (!P.less(u, v) || seen[v]) continue;
        seen[v] = 1;
        if (match_right[v] < 0 || augment(P, static_cast<std::size_t>(match_right[v]), match_right, seen)) {
            match_right[v] = static_cast<int>(u);
            return true;
        }
    }
    return false;
}

}  // namespace

DilworthResult width_and_dilworth(const Poset& P) {
    std::size_t n = P.size();
    std::vector<int> match_right(n, -1);
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<char> seen(n, 0);
        augment(P, u, match_right, seen);
    }
    std::vector<int> next(n, -1), prev(n, -1);
    for (std::size_t v = 0; v < n; ++v)
        if (match_right[v] >= 0) {
            next[match_right[v]] = static_cast<int>(v);
            prev[v] = match_right[v];
        }
    DilworthResult res;
    for (std::size_t u = 0; u < n; ++u) {
        if (prev[u] >= 0) continue;
        FinSet chain;
        for (int x = static_cast<int>(u); x >= 0; x = next[x]) chain.insert(P.points()[x]);
        res.chains.push_back(chain);
    }
    // König: alternating reachability from unmatched left vertices
    std::vector<char> zl(n, 0), zr(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t u = 0; u < n; ++u)
        if (next[u] < 0) {
            zl[u] = 1;
            stack.push_back(u);
        }
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (!P.less(u, v) || zr[v] || next[u] == static_cast<int>(v)) continue;
            zr[v] = 1;
            int w = match_right[v];
            if (w >= 0 && !zl[w]) {
                zl[w] = 1;
                stack.push_back(static_cast<std::size_t>(w));
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        if (zl[x] && !zr[x]) res.antichain.insert(P.points()[x]);
    res.width = static_cast<unsigned>(res.chains.size());
    if (res.antichain.size() != res.width) throw std::logic_error("Dilworth cover and antichain sizes differ");
    return res;
}

std::vector<FinSet> mirsky_cover(const Poset& P) {
    std::size_t n = P.size();
    std::vector<unsigned> level(n, 0);
    // points in increasing order of the natural order need not be a linear extension; iterate to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u = 0; u < n; ++u)
                if (P.less(u, v) && level[v] < level[u] + 1) {
                    level[v] = level[u] + 1;
                    changed = true;
                }
    }
    unsigned top = n ? *std::max_element(level.begin(), level.end()) + 1 : 0;
    std::vector<FinSet> out(top);
    for (std::size_t v = 0; v < n; ++v) out[level[v]].insert(P.points()[v]);
    return out;
}

unsigned longest_chain(const Poset& P) { return static_cast<unsigned>(mirsky_cover(P).size()); }

CompactFamily homogeneous_family(const PairColoring& c, unsigned i, const FinSet& window) {
    std::vector<unsigned> pts = window.elements();
    std::vector<FinSet> members;
    FinSet cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        members.push_back(cur);
        for (std::size_t k = from; k < pts.size(); ++k) {
            bool ok = true;
            cur.for_each([&](unsigned x) {
                if (ok && c.rule(x, pts[k]) != i) ok = false;
            });
            if (!ok) continue;
            cur.insert(pts[k]);
            rec(k + 1);
            cur.erase(pts[k]);
        }
    };
    rec(0);
    unsigned w = window.empty() ? 0 : window.max() + 1;
    return CompactFamily(SetFamily(w, members));
}

DualityReport window_duality_check(const PairColoring& c, unsigned i, const FinSet& M) {
    Poset P = poset_from_coloring(c, i, M);
    DualityReport r;
    r.color = i;
    r.mirsky_pieces = mirsky_cover(P);
    r.longest_chain = static_cast<unsigned>(r.mirsky_pieces.size());
    auto dil = width_and_dilworth(P);
    r.width = dil.width;
    r.dilworth_pieces = dil.chains;
    r.pieces_verified = true;
    FinSet unionm, uniond;
    for (const auto& piece : r.mirsky_pieces) {
        auto cols = hom_check(c, piece);
        if (!cols.empty() && cols != std::set<unsigned>{1 - i}) r.pieces_verified = false;
        unionm |= piece;
    }
    for (const auto& piece : r.dilworth_pieces) {
        auto cols = hom_check(c, piece);
        if (!cols.empty() && cols != std::set<unsigned>{i}) r.pieces_verified = false;
        uniond |= piece;
    }
    if (unionm != M || uniond != M) r.pieces_verified = false;
    Rational norm = eval_norm(homogeneous_family(c, i, M), M);
    r.hom_norm = static_cast<unsigned>(norm.get_num().get_ui());
    r.passed = r.pieces_verified && r.hom_norm == r.longest_chain;
    return r;
}

}  // namespace ideallab
