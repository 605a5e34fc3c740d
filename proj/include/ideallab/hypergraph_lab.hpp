#pragma once

#include "ideallab/core_sets.hpp"
#include "ideallab/errors.hpp"
#include "ideallab/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace ideallab {

// X^{[α,β]} together with the vertex sets it contributes to 𝔛.
struct MazurBlock {
    FinSet X;
    Rational alpha, beta;
    std::vector<FinSet> vertices;  // X^{[α,β]}, canonically ordered
};

MazurBlock make_block(const FinSet& X, const Rational& alpha, const Rational& beta);

// A vertex of 𝔛 = ⊔ X_n^{[α,β]}: block index and the set.
struct MazurVertex {
    unsigned block;
    FinSet set;
};

// 1 iff no block is covered by 𝒜 ∩ 𝔛_n.
unsigned mazur_coloring(const std::vector<MazurBlock>& blocks, const std::vector<MazurVertex>& A);

// Vertices 0..n−1; edges are vertex-index sets. `uniformity` is 0 for mixed edge sizes.
class Hypergraph {
public:
    Hypergraph(unsigned vertex_count, std::vector<FinSet> edges, unsigned uniformity = 0);

    unsigned vertex_count() const { return n_; }
    unsigned uniformity() const { return d_; }
    const std::vector<FinSet>& edges() const { return edges_; }
    bool has_edge(const FinSet& e) const { return lookup_.count(e) != 0; }
    bool independent(const FinSet& S) const;  // no edge inside S
    bool complete(const FinSet& S) const;     // every uniformity-subset of S is an edge
    Hypergraph induced(const FinSet& S) const;  // relabels S.elements() as 0..#S−1

private:
    unsigned n_;
    unsigned d_ = 0;
    std::vector<FinSet> edges_;
    std::unordered_set<FinSet, FinSetHash> lookup_;
};

// ℋ₀(𝔠_n): d-sets of X^{[α,β]} that cover X.
Hypergraph block_hypergraph(const MazurBlock& block, unsigned d);
// ℋ₀(𝔠) on the disjoint union of the blocks, vertices numbered block by block.
Hypergraph amalgam_hypergraph(const std::vector<MazurBlock>& blocks, unsigned d);

struct GillisResult {
    std::vector<Integer> a;  // a[l] for 1 ≤ l ≤ d; a[0] = 0
    unsigned m0 = 0;
    unsigned k = 0;          // m0·(d−1)
    unsigned scan_limit = 0;
};

GillisResult gillis_bound(unsigned d, const Rational& alpha, const Rational& beta);

// Largest complete set (a 0-homogeneous family), by branch and bound.
FinSet max_complete_set(const Hypergraph& H, Budget& budget);

struct ChromaticResult {
    unsigned lower = 0;
    unsigned upper = 0;
    bool exact = false;
    std::vector<unsigned> coloring;  // witness for `upper`
    std::uint64_t nodes = 0;
};

ChromaticResult chromatic_number(const Hypergraph& H, Budget& budget, unsigned cap = 40);
bool proper_coloring(const Hypergraph& H, const std::vector<unsigned>& colors);

// Refines per-block partitions (block-local vertex indices) into r·d pieces of the amalgam.
struct AmalgamRefinement {
    std::vector<std::vector<FinSet>> pieces;  // pieces[n][i] = 𝒬_i^{(n)}, i < r·d
    std::vector<FinSet> amalgam;              // 𝒬_i in amalgam numbering
    bool verified = false;
};

AmalgamRefinement amalgam_refinement(const std::vector<MazurBlock>& blocks,
                                     const std::vector<std::vector<FinSet>>& partitions, unsigned r, unsigned d);

enum class CoverVerdict { Universal, Counterexample, Budget };
std::string verdict_name(CoverVerdict v);

struct CoverSearchResult {
    CoverVerdict verdict = CoverVerdict::Budget;
    std::vector<FinSet> sets;             // [n]^{n/p}, canonically ordered
    std::vector<unsigned> counterexample;  // a color per set
    std::uint64_t nodes = 0;
    unsigned workers = 1;
};

// Whether every r-coloring of [n]^{n/p} has p+r distinct monochromatic sets covering [n].
CoverSearchResult mono_cover_search(unsigned n, unsigned p, unsigned r, Budget& budget, unsigned workers = 1);
bool color_class_covers(const std::vector<FinSet>& cls, unsigned n, unsigned need);

// Equi_δ(n,p): surjections n → p with class sizes in [(n/p)(1−δ), (n/p)(1+δ)].
using EquiMap = std::vector<unsigned>;

std::vector<std::vector<unsigned>> equi_size_vectors(unsigned n, unsigned p, const Rational& delta);
Integer equi_count(unsigned n, unsigned p, const Rational& delta);
std::vector<EquiMap> equi_enumerate(unsigned n, unsigned p, const Rational& delta);
Rational hamming(const EquiMap& F, const EquiMap& G);

class EquiSampler {
public:
    EquiSampler(unsigned n, unsigned p, const Rational& delta, std::uint64_t seed);
    EquiMap operator()();

private:
    unsigned p_;
    std::vector<std::vector<unsigned>> sizes_;
    std::discrete_distribution<std::size_t> pick_;
    std::mt19937_64 rng_;
};

// Coordinates separating F from the nearest H ∈ Equi_δ(n,2) with d(H,G) ≤ ρ/n; −1 if there is none.
long equi_ball_distance(const EquiMap& F, const EquiMap& G, unsigned rho, const Rational& delta);

// p = 2 only. 𝒮 ranges over Hamming balls holding an η-fraction of a base sample.
struct ConcentrationEstimate {
    unsigned n;
    double min_fattening;  // smallest estimated μ(𝒮_ε) over the sampled 𝒮
    double deficit;        // 1 − min_fattening
};

struct ConcentrationReport {
    std::vector<ConcentrationEstimate> rows;
    bool non_decreasing;
};

ConcentrationReport equi_concentration(const std::vector<unsigned>& ns, unsigned p, const Rational& delta,
                                       const Rational& eta, const Rational& eps, unsigned trials,
                                       std::uint64_t seed, unsigned pool = 400);

// 𝔛 = ⋃_{1≤n≤N} [2n]^n in the ≺ order, the family ℬ and its covering coloring.
class SchreierMazur {
public:
    explicit SchreierMazur(unsigned max_n);

    const std::vector<FinSet>& vertices() const { return vertices_; }
    unsigned block_of(unsigned v) const { return block_.at(v); }
    bool member(const FinSet& s) const;  // #s = min_{A∈s} #A
    unsigned color(const FinSet& s) const;  // 1 iff no [2n]^n is covered
    FinSet selection(const std::vector<unsigned>& picks) const;  // ⋃_n î_n, picks[n−1] < 2n
    bool selection_homogeneous(const FinSet& S) const;  // every ℬ-member inside S has color 1

private:
    unsigned max_n_;
    std::vector<FinSet> vertices_;
    std::vector<unsigned> block_;
};

}  // namespace ideallab
