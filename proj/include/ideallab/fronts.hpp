#pragma once

#include "ideallab/core_sets.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ideallab {

// Ordinal below ω^ω in Cantor normal form: Σ_k ω^k · coeff[k].
class Ordinal {
public:
    static constexpr unsigned kMaxExponent = 32;

    Ordinal() = default;
    Ordinal(std::uint64_t n);  // finite ordinal
    static Ordinal omega_power(unsigned k, std::uint64_t coeff = 1);
    static Ordinal omega() { return omega_power(1); }

    std::uint64_t coeff(unsigned k) const { return k < terms_.size() ? terms_[k] : 0; }
    unsigned degree() const;  // largest exponent with nonzero coefficient (0 for 0)
    bool is_zero() const { return terms_.empty(); }
    bool is_successor() const { return coeff(0) > 0; }
    bool is_limit() const { return !is_zero() && !is_successor(); }
    bool is_finite() const { return terms_.size() <= 1; }
    std::uint64_t finite_value() const;  // requires is_finite()

    Ordinal predecessor() const;           // requires is_successor()
    Ordinal fundamental(std::uint64_t n) const;  // α[n] for limit α

    friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
    friend Ordinal operator*(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Ordinal& a, const Ordinal& b) { return !(a == b); }
    friend bool operator<(const Ordinal& a, const Ordinal& b);

    std::string str() const;

private:
    void set(unsigned k, std::uint64_t c);
    void trim();
    std::vector<std::uint64_t> terms_;  // terms_[k] = coefficient of ω^k, no trailing zeros
};

namespace detail {
class FrontNode;
}

// Nash-Williams uniform front on ℕ given by its rank and residual rule.
class UniformFront {
public:
    explicit UniformFront(std::shared_ptr<const detail::FrontNode> node);

    const Ordinal& rank() const;
    UniformFront residual(unsigned n) const;  // the front 𝒜_{{n}} on ℕ/n
    bool contains(const FinSet& s) const;
    // Members that are subsets of `allowed`, in canonical order.
    std::vector<FinSet> enumerate(const FinSet& allowed) const;
    std::string describe() const;

private:
    std::shared_ptr<const detail::FrontNode> node_;
};

UniformFront canonical_front(const Ordinal& rank);  // residual ranks follow predecessor / α[n]
UniformFront cube_front(unsigned d);                 // [ℕ]^d
UniformFront empty_set_front();                       // {∅}
UniformFront schreier_front();                        // #s = min s + 1
UniformFront oplus(const UniformFront& a, const UniformFront& b);   // {s∪t : s∈b, t∈a, s<t}
UniformFront otimes(const UniformFront& a, const UniformFront& b);  // 𝒜-blocks with minima in ℬ
UniformFront uniform_envelope(const CompactFamily& G);

// Rank of the well-founded tree (𝒢, ⊏): 0 for {∅}.
unsigned tree_rank(const CompactFamily& G);

// The unique initial segment of M lying in the front; M is a finite prefix of an infinite set.
FinSet front_step(const UniformFront& front, const FinSet& M);

// True if no enumerated member is a proper initial segment of another.
bool is_thin(const std::vector<FinSet>& members);

// Parses `schreier`, `cube(d)`, `empty`, `oplus(a,b)`, `otimes(a,b)`.
UniformFront parse_front(const std::string& expr);

}  // namespace ideallab
