#include "ideallab/core_sets.hpp"

#include "ideallab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace ideallab {

FinSet::FinSet(std::initializer_list<unsigned> elements) {
    for (unsigned n : elements) insert(n);
}

FinSet::FinSet(const std::vector<unsigned>& elements) {
    for (unsigned n : elements) insert(n);
}

FinSet FinSet::range(unsigned lo, unsigned hi) {
    FinSet s;
    for (unsigned n = lo; n < hi; ++n) s.insert(n);
    return s;
}

FinSet FinSet::from_mask(std::uint64_t mask) {
    FinSet s;
    s.words_[0] = mask;
    return s;
}

FinSet FinSet::parse(std::string_view text) {
    FinSet s;
    std::size_t i = 0;
    while (i < text.size() && text[i] == ' ') ++i;
    if (i == text.size() || text[i] != '{') throw Error(ErrorKind::InvalidParams, "set must start with '{'");
    ++i;
    while (i < text.size()) {
        char c = text[i];
        if (c == '}') return s;
        if (c == ',' || c == ' ') {
            ++i;
            continue;
        }
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc()) throw Error(ErrorKind::InvalidParams, "bad element in set: " + std::string(text));
        s.insert(value);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    throw Error(ErrorKind::InvalidParams, "unterminated set: " + std::string(text));
}

void FinSet::insert(unsigned n) {
    if (n >= kCapacity)
        throw Error(ErrorKind::WindowOverflow, "element " + std::to_string(n) + " exceeds capacity");
    words_[n >> 6] |= std::uint64_t{1} << (n & 63);
}

void FinSet::erase(unsigned n) {
    if (n < kCapacity) words_[n >> 6] &= ~(std::uint64_t{1} << (n & 63));
}

bool FinSet::empty() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

unsigned FinSet::size() const {
    unsigned c = 0;
    for (auto w : words_) c += static_cast<unsigned>(std::popcount(w));
    return c;
}

unsigned FinSet::min() const {
    for (unsigned w = 0; w < kWords; ++w)
        if (words_[w]) return w * 64 + static_cast<unsigned>(std::countr_zero(words_[w]));
    throw Error(ErrorKind::InvalidParams, "min of empty set");
}

unsigned FinSet::max() const {
    for (unsigned w = kWords; w-- > 0;)
        if (words_[w]) return w * 64 + 63 - static_cast<unsigned>(std::countl_zero(words_[w]));
    throw Error(ErrorKind::InvalidParams, "max of empty set");
}

std::vector<unsigned> FinSet::elements() const {
    std::vector<unsigned> out;
    out.reserve(size());
    for_each([&](unsigned n) { out.push_back(n); });
    return out;
}

std::uint64_t FinSet::mask64() const {
    for (unsigned w = 1; w < kWords; ++w)
        if (words_[w]) throw Error(ErrorKind::WindowOverflow, "set does not fit in 64 bits");
    return words_[0];
}

FinSet FinSet::operator|(const FinSet& o) const {
    FinSet r = *this;
    r |= o;
    return r;
}

FinSet FinSet::operator&(const FinSet& o) const {
    FinSet r = *this;
    r &= o;
    return r;
}

FinSet FinSet::operator-(const FinSet& o) const {
    FinSet r;
    for (unsigned w = 0; w < kWords; ++w) r.words_[w] = words_[w] & ~o.words_[w];
    return r;
}

FinSet& FinSet::operator|=(const FinSet& o) {
    for (unsigned w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
}

FinSet& FinSet::operator&=(const FinSet& o) {
    for (unsigned w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
}

bool FinSet::subset_of(const FinSet& o) const {
    for (unsigned w = 0; w < kWords; ++w)
        if (words_[w] & ~o.words_[w]) return false;
    return true;
}

bool FinSet::intersects(const FinSet& o) const {
    for (unsigned w = 0; w < kWords; ++w)
        if (words_[w] & o.words_[w]) return true;
    return false;
}

FinSet FinSet::tail() const {
    FinSet r = *this;
    if (!r.empty()) r.erase(r.min());
    return r;
}

FinSet FinSet::above(unsigned n) const {
    if (n + 1 >= kCapacity) return FinSet();
    return *this - range(0, n + 1);
}

FinSet FinSet::below(unsigned n) const {
    FinSet r;
    for (unsigned w = 0; w < kWords; ++w) {
        unsigned lo = w * 64;
        if (n >= lo + 64) r.words_[w] = words_[w];
        else if (n > lo) r.words_[w] = words_[w] & ((std::uint64_t{1} << (n - lo)) - 1);
    }
    return r;
}

FinSet FinSet::initial_segment(unsigned k) const {
    FinSet r;
    unsigned taken = 0;
    for_each([&](unsigned n) {
        if (taken < k) {
            r.insert(n);
            ++taken;
        }
    });
    return r;
}

std::string FinSet::str() const {
    std::string out = "{";
    bool first = true;
    for_each([&](unsigned n) {
        if (!first) out += ',';
        out += std::to_string(n);
        first = false;
    });
    out += '}';
    return out;
}

std::size_t FinSet::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

bool canonical_less(const FinSet& a, const FinSet& b) {
    unsigned ca = a.size(), cb = b.size();
    if (ca != cb) return ca < cb;
    for (unsigned w = 0; w < FinSet::kWords; ++w) {
        std::uint64_t x = a.word(w) ^ b.word(w);
        if (x) {
            std::uint64_t low = x & (~x + 1);
            return (a.word(w) & low) != 0;
        }
    }
    return false;
}

bool is_initial_segment(const FinSet& s, const FinSet& t) {
    if (!s.subset_of(t)) return false;
    if (s.empty()) return true;
    return t.below(s.max() + 1) == s;
}

bool is_proper_initial_segment(const FinSet& s, const FinSet& t) {
    return s != t && is_initial_segment(s, t);
}

namespace {

void subsets_rec(const std::vector<unsigned>& elems, std::size_t from, unsigned k, FinSet& cur,
                 std::vector<FinSet>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i + k <= elems.size(); ++i) {
        cur.insert(elems[i]);
        subsets_rec(elems, i + 1, k - 1, cur, out);
        cur.erase(elems[i]);
    }
}

}  // namespace

std::vector<FinSet> subsets_of_size(const FinSet& ground, unsigned k) {
    std::vector<FinSet> out;
    auto elems = ground.elements();
    if (k > elems.size()) return out;
    FinSet cur;
    subsets_rec(elems, 0, k, cur, out);
    return out;
}

std::vector<FinSet> all_subsets(const FinSet& ground) {
    std::vector<FinSet> out;
    for (unsigned k = 0; k <= ground.size(); ++k) {
        auto part = subsets_of_size(ground, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

SetFamily::SetFamily(unsigned window) : window_(window) {
    if (window > FinSet::kCapacity)
        throw Error(ErrorKind::WindowOverflow, "window " + std::to_string(window) + " exceeds capacity");
}

SetFamily::SetFamily(unsigned window, std::vector<FinSet> members) : SetFamily(window) {
    FinSet ground = FinSet::range(0, window);
    for (const auto& s : members)
        if (!s.subset_of(ground))
            throw Error(ErrorKind::WindowOverflow, "member " + s.str() + " outside window " + std::to_string(window));
    std::sort(members.begin(), members.end(), canonical_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
}

bool SetFamily::contains(const FinSet& s) const {
    return std::binary_search(members_.begin(), members_.end(), s, canonical_less);
}

bool SetFamily::is_hereditary() const {
    for (const auto& s : members_) {
        bool ok = true;
        s.for_each([&](unsigned n) {
            if (!ok) return;
            FinSet t = s;
            t.erase(n);
            if (!contains(t)) ok = false;
        });
        if (!ok) return false;
    }
    return members_.empty() || contains(FinSet());
}

bool SetFamily::is_initial_segment_closed() const {
    for (const auto& s : members_) {
        if (s.empty()) continue;
        FinSet t = s;
        t.erase(s.max());
        if (!contains(t)) return false;
    }
    return true;
}

unsigned SetFamily::max_cardinality() const {
    return members_.empty() ? 0 : members_.back().size();
}

std::string SetFamily::str() const {
    std::string out;
    for (const auto& s : members_) {
        out += s.str();
        out += '\n';
    }
    return out;
}

CompactFamily::CompactFamily(SetFamily family) : family_(std::move(family)) {
    if (!family_.contains(FinSet())) throw Error(ErrorKind::NotHereditary, "family does not contain the empty set");
    if (!family_.is_hereditary()) throw Error(ErrorKind::NotHereditary, "family is not closed under subsets");
}

CompactFamily CompactFamily::closure_of(const SetFamily& family) {
    SetFamily closed = hereditary_sq_closure(family, ClosureMode::Subset);
    std::vector<FinSet> members = closed.members();
    members.push_back(FinSet());
    return CompactFamily(SetFamily(family.window(), std::move(members)));
}

SetFamily restrict(const SetFamily& fam, const FinSet& A) {
    std::vector<FinSet> out;
    for (const auto& s : fam.members())
        if (s.subset_of(A)) out.push_back(s);
    return SetFamily(fam.window(), std::move(out));
}

CompactFamily restrict(const CompactFamily& K, const FinSet& A) {
    return CompactFamily(restrict(K.family(), A));
}

SetFamily hereditary_sq_closure(const SetFamily& fam, ClosureMode mode) {
    std::unordered_set<FinSet, FinSetHash> seen;
    for (const auto& s : fam.members()) {
        if (mode == ClosureMode::Subset) {
            if (seen.count(s)) continue;
            for (const auto& t : all_subsets(s)) seen.insert(t);
        } else {
            auto elems = s.elements();
            FinSet prefix;
            seen.insert(prefix);
            for (unsigned n : elems) {
                prefix.insert(n);
                seen.insert(prefix);
            }
        }
    }
    return SetFamily(fam.window(), std::vector<FinSet>(seen.begin(), seen.end()));
}

SetFamily max_elements(const SetFamily& fam, ClosureMode mode) {
    std::vector<FinSet> out;
    const auto& ms = fam.members();
    for (const auto& s : ms) {
        bool dominated = false;
        for (const auto& t : ms) {
            if (t.size() <= s.size()) continue;
            bool ext = mode == ClosureMode::Subset ? s.subset_of(t) : is_initial_segment(s, t);
            if (ext) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(s);
    }
    return SetFamily(fam.window(), std::move(out));
}

unsigned cb_rank_window(const CompactFamily& K) {
    // Derivative steps until empty = height of the ⊑-tree, leaves counting 1.
    const auto& ms = K.members();
    std::unordered_map<FinSet, unsigned, FinSetHash> height;
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
        const FinSet& s = *it;
        unsigned h = height.count(s) ? height[s] : 1;
        height[s] = h;
        if (s.empty()) continue;
        FinSet parent = s;
        parent.erase(s.max());
        unsigned& ph = height[parent];
        ph = std::max(ph, h + 1);
    }
    return ms.empty() ? 0 : height[FinSet()];
}

}  // namespace ideallab
