#pragma once

#include "ideallab/colorings.hpp"
#include "ideallab/core_sets.hpp"
#include "ideallab/errors.hpp"
#include "ideallab/fronts.hpp"
#include "ideallab/measures.hpp"
#include "ideallab/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ideallab {

// ‖Σ_{n∈F} a_n p_n^K‖ = max_{A∈K} |Σ_{n∈F∩A} a_n|; an empty `a` means a ≡ 1.
Rational eval_norm(const CompactFamily& K, const FinSet& F, const std::vector<Rational>& a = {});

// {s ⊆ [0,window) : #s ≤ min s + 1}
CompactFamily schreier_family(unsigned window);

struct SchreierAudit {
    unsigned norm;
    Rational bound;  // #F / 2
    bool holds;
};
SchreierAudit schreier_lower_bound_audit(const FinSet& F);
SchreierAudit schreier_lower_bound_audit(const FinSet& F, const CompactFamily& schreier);

// C(𝓕) with the node basis f_k = 𝟙{t : t_k ⊑ t}, t_k enumerated canonically.
// 𝓕 must contain ∅ and be closed under initial segments.
class NodeBasisSpace {
public:
    explicit NodeBasisSpace(SetFamily family);
    explicit NodeBasisSpace(const CompactFamily& family) : NodeBasisSpace(family.family()) {}

    const SetFamily& family() const { return family_; }
    const std::vector<FinSet>& nodes() const { return family_.members(); }
    const FinSet& node(unsigned k) const { return nodes().at(k); }
    unsigned theta(const FinSet& t) const;
    std::size_t size() const { return nodes().size(); }

private:
    SetFamily family_;
};

using Coeffs = std::map<unsigned, Rational>;  // coordinate → nonzero coefficient

Rational node_eval(const NodeBasisSpace& space, const Coeffs& x, const FinSet& t);
Rational sup_norm(const NodeBasisSpace& space, const Coeffs& x);

struct FinVectorSeq {
    enum class Model { Coordinate, NodeBasis };
    enum class Norm { Sup, L1 };  // Coordinate model only

    Model model = Model::Coordinate;
    Norm norm = Norm::Sup;
    std::shared_ptr<const NodeBasisSpace> space;  // NodeBasis model only
    std::vector<Coeffs> vectors;

    std::size_t size() const { return vectors.size(); }
    Rational vector_norm(const Coeffs& v) const;
    // ‖Σ_n a_n x_n‖ over the entries of `a`
    Rational combination_norm(const std::map<unsigned, Rational>& a) const;
    Rational sum_norm(const FinSet& F) const;  // a ≡ 1 on F
};

Coeffs add_scaled(const Coeffs& acc, const Coeffs& v, const Rational& c);
int max_support(const Coeffs& v);  // −1 for the zero vector

// §4 representation: prefix tree of the measures, binary codes, and g_n on cylinders.
struct Representation {
    struct Node {
        std::vector<Rational> prefix;  // ⟨μ(0),…,μ(d−1)⟩
        std::string code;              // ρ(prefix)
    };
    unsigned window = 0;
    std::vector<RationalMeasure> measures;
    std::vector<Node> nodes;  // depth ≥ 1, breadth first
    std::vector<std::vector<std::pair<std::string, Rational>>> g;  // g[n]: (ρ(s), s(n)) for |s| = n+1

    Rational g_sum_norm(const FinSet& F) const;  // sup over 2^ℕ, by binary-trie traversal
    Rational phi(const FinSet& F) const;         // max_k μ_k(F)
};

Representation build_representation(const std::vector<RationalMeasure>& ms, unsigned window);
// Checks ‖Σ_F g‖∞ = sup_k μ_k(F) for every F ⊆ window; returns the first failing F.
std::optional<FinSet> certify_representation(const Representation& rep);

// Same-sign majority class G₀ with |Σ_{G₀}| ≥ ½ Σ |v|.
FinSet halving_subset(const std::vector<Rational>& values);

// max{max |a_n|, max_θ ‖Σ θ_n a_n x_n‖}
Rational unconditional_norm(const FinVectorSeq& x, const std::map<unsigned, Rational>& a, Budget& budget);

struct SignAverageReport {
    Rational e_sq;         // 𝔼_θ ‖Σ θ_k y_k‖²  (Euclidean)
    Rational sum_sq;       // Σ ‖y_k‖²
    double e_lin;          // 𝔼_θ ‖Σ θ_k y_k‖
    double subset_avg;     // 𝔼_A ‖Σ_{k∈A} y_k‖
    Rational e_lin_sup;    // same two averages in the sup norm, exact
    Rational subset_avg_sup;
    bool parallelogram;    // e_sq == sum_sq
    bool halving;          // e_lin ≤ 2 subset_avg (relative 1e−12) and the exact sup-norm version
    std::optional<bool> cotype;  // (Σ‖y‖^q)^{1/q} ≤ C e_lin, when (q, C) supplied
};

SignAverageReport sign_average_report(const std::vector<std::vector<Rational>>& vectors, Budget& budget,
                                      std::optional<std::pair<double, double>> cotype = std::nullopt);

// Rademacher sequence in ℓ₁; `literal` uses the floor exponent as printed, otherwise the
// reading that reproduces the explicit listing x₁, x₂, x₃, ….
FinVectorSeq rademacher_sequence(unsigned count, bool literal = false);
unsigned triangular(unsigned n);

// c₀ non-P example with A_n = {k : ν₂(k+1) = n} and I_m^n of size (n+1)(n+m+1).
struct C0Index {
    unsigned n, m;
};
C0Index c0_non_p_index(unsigned k);
FinVectorSeq c0_non_p_sequence(unsigned window);
struct C0BlockProfile {
    unsigned n;
    Rational measured;    // max over F ⊆ A_n ∩ window of ‖Σ_F x_k‖∞
    Rational inline_claim;  // 1/(n+1)
    Rational full_interval; // n+1, attained once some I_m^n lies inside the window
};
std::vector<C0BlockProfile> c0_non_p_audit(unsigned window);

// φ_n(A) = #(A ∩ [2^n − 1, 2^{n+1} − 1)) / 2^n and the ℓ₂ partial sums Σ_{j≤n} φ_j(A)².
struct DyadicProfile {
    std::vector<Rational> phi;
    std::vector<Rational> square_partials;
};
DyadicProfile dyadic_profile(const FinSet& A, unsigned levels);
FinVectorSeq dyadic_sequence(unsigned levels);

PairColoring bs_coloring(const FinVectorSeq& x);
bool bs_hom1(const FinVectorSeq& x, const FinSet& H);
std::vector<Coeffs> block_truncation(const FinVectorSeq& x, const FinSet& s);  // indexed like s.elements()

struct GapAudit {
    Rational lhs, rhs;
    bool holds;
};
GapAudit bs_gap_audit(const FinVectorSeq& x, const FinSet& H, const std::map<unsigned, Rational>& a);

struct WitnessFamily {
    CompactFamily family;
    std::map<FinSet, FinSet, CanonicalLess> witness;  // member → t ∈ 𝓕
};
WitnessFamily witness_family(const FinVectorSeq& x, unsigned window);

// s ∈ 𝒜⊕𝒜 ↦ (𝔟𝔰{min s, min ₊s}, 𝔟(s))
std::pair<unsigned, unsigned> tall_colorings(const FinVectorSeq& x, const UniformFront& A, const FinSet& s);

struct TallAudit {
    Rational lhs;         // ‖Σ_{n∈R} x_n‖
    Rational sup_g;       // max over 𝒢↾R
    Rational rhs_claim;   // 1 + sup_g
    Rational rhs_proof;   // sup_g + max_t Σ_{u⊑t} 2^{1−θ(u)}
    bool claim_holds;
    bool proof_holds;
};
TallAudit tall_bound_audit(const FinVectorSeq& x, const FinSet& R, const CompactFamily& G);

struct C0Hom1Audit {
    Rational sup;    // max over F ⊆ H of ‖Σ_F x_n‖∞
    Rational bound;  // max_{n∈H} ‖x_n‖ + 1
    bool holds;
};
C0Hom1Audit c0_hom1_audit(const FinVectorSeq& x, const FinSet& H);

}  // namespace ideallab
