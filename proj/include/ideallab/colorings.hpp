#pragma once

#include "ideallab/core_sets.hpp"
#include "ideallab/errors.hpp"
#include "ideallab/fronts.hpp"
#include "ideallab/measures.hpp"
#include "ideallab/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ideallab {

// c: [ℕ]² → r, called as rule(m, n) with m < n.
struct PairColoring {
    std::function<unsigned(unsigned, unsigned)> rule;
    unsigned colors = 2;
    std::string name;

    unsigned operator()(unsigned m, unsigned n) const { return m < n ? rule(m, n) : rule(n, m); }
};

// c: 𝒢 → r on the members of a front.
struct FrontColoring {
    UniformFront front;
    std::function<unsigned(const FinSet&)> rule;
    unsigned colors = 2;
    std::string name;

    static FrontColoring from_pairs(const PairColoring& c);
};

// θ: ℕ → ℚ ∩ (0,1).
class RationalEnumeration {
public:
    // Reduced fractions by denominator, then numerator: 1/2, 1/3, 2/3, 1/4, 3/4, ...
    static RationalEnumeration canonical();
    // θ(n) = values[n]; must be injective.
    explicit RationalEnumeration(std::vector<Rational> values);

    Rational operator()(unsigned n) const;
    std::optional<unsigned> index_of(const Rational& q) const;  // canonical enumeration only

private:
    RationalEnumeration() = default;
    bool canonical_ = false;
    std::vector<Rational> values_;
};

// Colors attained on 𝒢↾A; empty means homogeneous for every color.
std::set<unsigned> hom_check(const FrontColoring& c, const FinSet& A);
std::set<unsigned> hom_check(const PairColoring& c, const FinSet& A);

// Partition of M into at most k homogeneous pieces, or nullopt once the search is exhausted.
std::optional<std::vector<FinSet>> cover_by_homogeneous(const FrontColoring& c, const FinSet& M, unsigned k,
                                                        Budget& budget);

// Greedy pivoting; the result is homogeneous of the returned color.
std::pair<FinSet, unsigned> ramsey_extract(const PairColoring& c, const FinSet& ground);

class GalvinColoring {
public:
    explicit GalvinColoring(CompactFamily K);
    // 1 iff some initial segment of the prefix M lies outside K.
    unsigned operator()(const FinSet& M) const;
    const CompactFamily& family() const { return K_; }
    // Hom₀ ∩ window = K: H ∈ K iff every N ⊆ H gets color 0.
    bool window_check() const;

private:
    CompactFamily K_;
};

PairColoring q_coloring(const RationalEnumeration& theta);
FrontColoring conv_coloring(const RationalEnumeration& theta);

// r-element 𝔠onv-0-homogeneous D ⊆ A with θ increasing on D.
FinSet conv_zero_builder(const RationalEnumeration& theta, const FinSet& A, unsigned r);

// Every 0-homogeneous s ⊆ window checked against #s ≤ min s + 2.
struct ConvHom0Audit {
    std::uint64_t sets = 0;
    unsigned largest = 0;
    std::optional<FinSet> violation;
};
ConvHom0Audit conv_hom0_audit(const RationalEnumeration& theta, const FinSet& window);

unsigned ed_fin_block(unsigned n);  // s_n = [2^n − 1, 2^{n+1} − 1)
PairColoring ed_fin_coloring();
// c{m,n} = 0 iff φ{m}, φ{n} fall in the same dyadic bucket.
PairColoring submeasure_blocks_coloring(const SupSubmeasure& phi);
int submeasure_bucket(const Rational& weight);  // −1 for weight 0

Integer devlin_number(unsigned d);

}  // namespace ideallab
