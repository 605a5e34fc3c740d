#pragma once

#include "ideallab/core_sets.hpp"
#include "ideallab/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ideallab {

// Finitely supported measure on ℕ with nonnegative rational point weights.
class RationalMeasure {
public:
    RationalMeasure() = default;
    explicit RationalMeasure(std::map<unsigned, Rational> weights);

    static RationalMeasure point_mass(unsigned n, const Rational& w = 1);
    static RationalMeasure counting(unsigned window);

    Rational operator()(const FinSet& A) const;
    Rational at(unsigned n) const;
    const std::map<unsigned, Rational>& weights() const { return weights_; }
    bool operator==(const RationalMeasure& o) const { return weights_ == o.weights_; }

private:
    std::map<unsigned, Rational> weights_;  // strictly positive entries only
};

// φ = max_k μ_k on the window [0, window).
class SupSubmeasure {
public:
    SupSubmeasure(std::vector<RationalMeasure> measures, unsigned window);

    Rational operator()(const FinSet& A) const;
    const std::vector<RationalMeasure>& measures() const { return measures_; }
    unsigned window() const { return window_; }

private:
    std::vector<RationalMeasure> measures_;
    unsigned window_;
};

Rational phi_eval(const SupSubmeasure& phi, const FinSet& A);

enum class IdealKind { Fin, Exh, Sum };

struct MembershipProfile {
    IdealKind kind;
    unsigned window;
    Rational bound;
    Rational value;                // Fin: φ(A); Exh: last tail value; Sum: Σ φ({n})
    std::vector<Rational> tail;    // Exh: φ(A∖[0,n)) for n = 0..window
    Rational half_window_value;    // Fin: φ(A ∩ [0, window/2)), for the doubling comparison
    bool within_bound;
    std::string verdict;
};

MembershipProfile membership_profile(const SupSubmeasure& phi, const FinSet& A, IdealKind kind,
                                     const Rational& bound);

std::vector<RationalMeasure> normalize_measures(const std::vector<RationalMeasure>& ms, unsigned window);
std::vector<RationalMeasure> quantize_measures(const std::vector<RationalMeasure>& ms);

// X^{[α,β]}: subsets A of X with α#X ≤ #A ≤ β#X, canonically ordered.
std::vector<FinSet> cardinal_interval(const FinSet& X, const Rational& alpha, const Rational& beta);

// The covering {x̂}_{x∈X} of an indexed family: x̂ is the set of indices i with x ∉ members[i].
SetFamily hat_cover(const FinSet& X, const std::vector<FinSet>& members);

Rational kelley_number(const FinSet& X, const SetFamily& cover);
FinSet kelley_witness(const FinSet& X, const SetFamily& cover, const RationalMeasure& mu);

// Minimum number of members of `family` whose union contains X, if any.
std::optional<unsigned> min_cover_size(const FinSet& X, const std::vector<FinSet>& family);

unsigned covering_submeasure(const FinSet& X, const std::vector<FinSet>& interval,
                             const std::vector<FinSet>& A);

struct CoveringBlock {
    FinSet X;
    std::vector<FinSet> interval;
    std::vector<FinSet> A;  // 𝒜 ∩ 𝔛_n
};

unsigned amalgam_submeasure(const std::vector<CoveringBlock>& blocks);

// g[n][j] = g_n(p_j) on finitely many sample points p_j; the enumeration
// (α_k) is `alpha` read cyclically, producing `count` measures.
using StepFunctions = std::vector<std::vector<Rational>>;

std::vector<RationalMeasure> measures_from_functions(const StepFunctions& g, const std::vector<std::size_t>& alpha,
                                                     std::size_t count);

// ‖Σ_{n∈A} g_n‖ over the sample points.
Rational step_sum_norm(const StepFunctions& g, const FinSet& A);

RationalMeasure summable_extension(const StepFunctions& g, const std::vector<std::size_t>& x);

}  // namespace ideallab
