#pragma once

#include "ideallab/colorings.hpp"
#include "ideallab/core_sets.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ideallab {

// Strict partial order on a finite ground set.
class Poset {
public:
    // less(a, b) for a, b in ground; throws InvalidParams unless irreflexive and transitive.
    Poset(const FinSet& ground, const std::function<bool(unsigned, unsigned)>& less);

    const FinSet& ground() const { return ground_; }
    const std::vector<unsigned>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool less(std::size_t i, std::size_t j) const { return rel_[i * points_.size() + j]; }
    bool comparable(std::size_t i, std::size_t j) const { return less(i, j) || less(j, i); }
    bool less_points(unsigned a, unsigned b) const;

private:
    Poset() = default;
    friend Poset poset_from_coloring(const PairColoring&, unsigned, const FinSet&);
    FinSet ground_;
    std::vector<unsigned> points_;
    std::vector<bool> rel_;
};

// m ≺ n iff m < n and c{m,n} = i; NotComparability with a witnessing triple otherwise.
Poset poset_from_coloring(const PairColoring& c, unsigned i, const FinSet& window);

struct DilworthResult {
    unsigned width;
    std::vector<FinSet> chains;  // a minimum chain cover
    FinSet antichain;            // a maximum antichain
};

DilworthResult width_and_dilworth(const Poset& P);

// Levels by length of the longest chain ending at each point.
std::vector<FinSet> mirsky_cover(const Poset& P);
unsigned longest_chain(const Poset& P);

struct DualityReport {
    unsigned color;
    unsigned longest_chain;              // largest i-homogeneous subset of M
    unsigned width;                      // largest (1−i)-homogeneous subset of M
    std::vector<FinSet> mirsky_pieces;   // (1−i)-homogeneous
    std::vector<FinSet> dilworth_pieces; // i-homogeneous
    unsigned hom_norm;                   // ‖Σ_{n∈M} p_n‖ over hom_i(c)↾M
    bool pieces_verified;
    bool passed;
};

DualityReport window_duality_check(const PairColoring& c, unsigned i, const FinSet& M);

// All i-homogeneous subsets of the window, as a compact family.
CompactFamily homogeneous_family(const PairColoring& c, unsigned i, const FinSet& window);

}  // namespace ideallab
