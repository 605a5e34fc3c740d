#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ideallab {

// Finite subset of [0, kCapacity) stored as a fixed-width bit-vector.
class FinSet {
public:
    static constexpr unsigned kWords = 4;
    static constexpr unsigned kCapacity = 64 * kWords;

    FinSet() = default;
    FinSet(std::initializer_list<unsigned> elements);
    explicit FinSet(const std::vector<unsigned>& elements);

    static FinSet range(unsigned lo, unsigned hi);  // [lo, hi)
    static FinSet from_mask(std::uint64_t mask);
    static FinSet parse(std::string_view text);     // "{1,3,7}"

    bool contains(unsigned n) const {
        return n < kCapacity && ((words_[n >> 6] >> (n & 63)) & 1u);
    }
    void insert(unsigned n);
    void erase(unsigned n);

    bool empty() const;
    unsigned size() const;
    unsigned min() const;  // throws on empty
    unsigned max() const;  // throws on empty
    std::vector<unsigned> elements() const;
    std::uint64_t word(unsigned i) const { return words_[i]; }
    std::uint64_t mask64() const;  // requires all elements < 64

    FinSet operator|(const FinSet& o) const;
    FinSet operator&(const FinSet& o) const;
    FinSet operator-(const FinSet& o) const;  // set difference
    FinSet& operator|=(const FinSet& o);
    FinSet& operator&=(const FinSet& o);
    bool subset_of(const FinSet& o) const;
    bool intersects(const FinSet& o) const;

    FinSet tail() const;                   // s without its minimum
    FinSet above(unsigned n) const;        // {m in s : m > n}
    FinSet below(unsigned n) const;        // s ∩ [0, n)
    FinSet initial_segment(unsigned k) const;  // first k elements

    bool operator==(const FinSet& o) const { return words_ == o.words_; }
    bool operator!=(const FinSet& o) const { return words_ != o.words_; }

    std::string str() const;
    std::size_t hash() const;

    template <class F>
    void for_each(F&& f) const {
        for (unsigned w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

// Cardinality first, then lexicographic on increasing enumerations.
bool canonical_less(const FinSet& a, const FinSet& b);

struct CanonicalLess {
    bool operator()(const FinSet& a, const FinSet& b) const { return canonical_less(a, b); }
};

struct FinSetHash {
    std::size_t operator()(const FinSet& s) const { return s.hash(); }
};

// s = t ∩ [0, n] for some n.
bool is_initial_segment(const FinSet& s, const FinSet& t);
bool is_proper_initial_segment(const FinSet& s, const FinSet& t);

// All subsets of `ground` of the given size, in canonical order.
std::vector<FinSet> subsets_of_size(const FinSet& ground, unsigned k);
std::vector<FinSet> all_subsets(const FinSet& ground);  // canonical order

enum class ClosureMode { Subset, InitialSegment };

// Duplicate-free family of FinSets within [0, window), canonically ordered.
class SetFamily {
public:
    explicit SetFamily(unsigned window = 64);
    SetFamily(unsigned window, std::vector<FinSet> members);

    unsigned window() const { return window_; }
    const std::vector<FinSet>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(const FinSet& s) const;

    bool is_hereditary() const;
    bool is_initial_segment_closed() const;
    unsigned max_cardinality() const;

    std::string str() const;  // one member per line
    bool operator==(const SetFamily& o) const { return members_ == o.members_; }

private:
    unsigned window_;
    std::vector<FinSet> members_;
};

// A SetFamily that is hereditary, ⊑-closed and contains ∅.
class CompactFamily {
public:
    // Throws NotHereditary unless the family is already closed.
    explicit CompactFamily(SetFamily family);
    static CompactFamily closure_of(const SetFamily& family);

    const SetFamily& family() const { return family_; }
    const std::vector<FinSet>& members() const { return family_.members(); }
    unsigned window() const { return family_.window(); }
    bool contains(const FinSet& s) const { return family_.contains(s); }
    std::size_t size() const { return family_.size(); }

private:
    SetFamily family_;
};

SetFamily restrict(const SetFamily& fam, const FinSet& A);
CompactFamily restrict(const CompactFamily& K, const FinSet& A);
SetFamily hereditary_sq_closure(const SetFamily& fam, ClosureMode mode);
SetFamily max_elements(const SetFamily& fam, ClosureMode mode);
unsigned cb_rank_window(const CompactFamily& K);

}  // namespace ideallab
