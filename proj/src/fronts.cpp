#include "ideallab/fronts.hpp"

#include "ideallab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace ideallab {

// ---------------------------------------------------------------- Ordinal

Ordinal::Ordinal(std::uint64_t n) {
    if (n) terms_.push_back(n);
}

Ordinal Ordinal::omega_power(unsigned k, std::uint64_t coeff) {
    Ordinal o;
    o.set(k, coeff);
    return o;
}

void Ordinal::set(unsigned k, std::uint64_t c) {
    if (k > kMaxExponent) throw Error(ErrorKind::OrdinalOverflow, "exponent above cap");
    if (terms_.size() <= k) terms_.resize(k + 1, 0);
    terms_[k] = c;
    trim();
}

void Ordinal::trim() {
    while (!terms_.empty() && terms_.back() == 0) terms_.pop_back();
}

unsigned Ordinal::degree() const { return terms_.empty() ? 0 : static_cast<unsigned>(terms_.size() - 1); }

std::uint64_t Ordinal::finite_value() const {
    if (!is_finite()) throw Error(ErrorKind::InvalidParams, "ordinal " + str() + " is infinite");
    return coeff(0);
}

Ordinal Ordinal::predecessor() const {
    if (!is_successor()) throw Error(ErrorKind::InvalidParams, "ordinal " + str() + " has no predecessor");
    Ordinal o = *this;
    o.terms_[0] -= 1;
    o.trim();
    return o;
}

Ordinal Ordinal::fundamental(std::uint64_t n) const {
    if (!is_limit()) throw Error(ErrorKind::InvalidParams, "ordinal " + str() + " is not a limit");
    unsigned k = 1;
    while (coeff(k) == 0) ++k;
    Ordinal o = *this;
    o.terms_[k] -= 1;
    o.terms_[k - 1] = n;
    o.trim();
    return o;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    unsigned e = b.degree();
    Ordinal r;
    r.terms_.assign(std::max(a.terms_.size(), b.terms_.size()), 0);
    for (unsigned k = 0; k < r.terms_.size(); ++k) {
        if (k > e) r.terms_[k] = a.coeff(k);
        else if (k == e) r.terms_[k] = a.coeff(k) + b.coeff(k);
        else r.terms_[k] = b.coeff(k);
    }
    r.trim();
    return r;
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    unsigned d = a.degree();
    Ordinal r;
    for (unsigned e = b.degree() + 1; e-- > 0;) {
        std::uint64_t c = b.coeff(e);
        if (c == 0) continue;
        Ordinal term;
        if (e == 0) {
            term = a;
            term.set(d, a.coeff(d) * c);
        } else {
            term = Ordinal::omega_power(d + e, c);
        }
        r = r + term;
    }
    return r;
}

bool operator<(const Ordinal& a, const Ordinal& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t k = a.terms_.size(); k-- > 0;)
        if (a.terms_[k] != b.terms_[k]) return a.terms_[k] < b.terms_[k];
    return false;
}

std::string Ordinal::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (unsigned k = degree() + 1; k-- > 0;) {
        std::uint64_t c = coeff(k);
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (k == 0) {
            out += std::to_string(c);
            continue;
        }
        out += k == 1 ? "ω" : "ω^" + std::to_string(k);
        if (c > 1) out += "·" + std::to_string(c);
    }
    return out;
}

// ---------------------------------------------------------------- fronts

namespace detail {

class FrontNode {
public:
    explicit FrontNode(Ordinal rank) : rank_(std::move(rank)) {}
    virtual ~FrontNode() = default;
    const Ordinal& rank() const { return rank_; }
    virtual UniformFront residual(unsigned n) const = 0;
    virtual std::string describe() const = 0;

private:
    Ordinal rank_;
};

namespace {

class CanonicalNode : public FrontNode {
public:
    explicit CanonicalNode(const Ordinal& r) : FrontNode(r) {}
    UniformFront residual(unsigned n) const override {
        if (rank().is_successor()) return canonical_front(rank().predecessor());
        return canonical_front(rank().fundamental(n));
    }
    std::string describe() const override {
        if (rank() == Ordinal::omega()) return "schreier";
        if (rank().is_finite()) return "cube(" + std::to_string(rank().finite_value()) + ")";
        return "canonical(" + rank().str() + ")";
    }
};

class OplusNode : public FrontNode {
public:
    OplusNode(UniformFront top, UniformFront bottom)
        : FrontNode(top.rank() + bottom.rank()), top_(std::move(top)), bottom_(std::move(bottom)) {}
    UniformFront residual(unsigned n) const override { return oplus(top_, bottom_.residual(n)); }
    std::string describe() const override {
        return "oplus(" + top_.describe() + "," + bottom_.describe() + ")";
    }

private:
    UniformFront top_, bottom_;
};

class OtimesNode : public FrontNode {
public:
    OtimesNode(UniformFront a, UniformFront b) : FrontNode(a.rank() * b.rank()), a_(std::move(a)), b_(std::move(b)) {}
    UniformFront residual(unsigned n) const override {
        // rest of the first block, followed by 𝒜 ⊗ ℬ_{{n}} above it
        return oplus(otimes(a_, b_.residual(n)), a_.residual(n));
    }
    std::string describe() const override { return "otimes(" + a_.describe() + "," + b_.describe() + ")"; }

private:
    UniformFront a_, b_;
};

unsigned rank_of_members(const std::vector<FinSet>& members) {
    unsigned r = 0;
    for (const auto& s : members) r = std::max(r, s.size());
    return r;
}

class EnvelopeNode : public FrontNode {
public:
    // members: a hereditary family containing ∅, with tree rank `rho`
    EnvelopeNode(std::vector<FinSet> members, unsigned rho) : FrontNode(Ordinal(rho)), members_(std::move(members)) {}
    UniformFront residual(unsigned n) const override {
        unsigned below = static_cast<unsigned>(rank().finite_value()) - 1;
        std::vector<FinSet> sub;
        bool present = false;
        for (const auto& s : members_) {
            if (s.empty() || s.min() != n) continue;
            present = true;
            sub.push_back(s.tail());
        }
        if (!present) return cube_front(below);
        unsigned rho_n = rank_of_members(sub);
        UniformFront inner(std::make_shared<EnvelopeNode>(std::move(sub), rho_n));
        if (rho_n == 0) inner = empty_set_front();
        if (rho_n == below) return inner;
        return oplus(cube_front(below - rho_n), inner);
    }
    std::string describe() const override { return "envelope(" + std::to_string(members_.size()) + " sets)"; }

private:
    std::vector<FinSet> members_;
};

}  // namespace
}  // namespace detail

UniformFront::UniformFront(std::shared_ptr<const detail::FrontNode> node) : node_(std::move(node)) {}

const Ordinal& UniformFront::rank() const { return node_->rank(); }

UniformFront UniformFront::residual(unsigned n) const {
    if (rank().is_zero()) throw Error(ErrorKind::InvalidParams, "the front {∅} has no residuals");
    return node_->residual(n);
}

bool UniformFront::contains(const FinSet& s) const {
    if (rank() == Ordinal::omega() && describe() == "schreier") return !s.empty() && s.size() == s.min() + 1;
    if (rank().is_finite() && describe().rfind("cube(", 0) == 0) return s.size() == rank().finite_value();
    UniformFront cur = *this;
    bool inside = true;
    s.for_each([&](unsigned n) {
        if (!inside) return;
        if (cur.rank().is_zero()) {
            inside = false;
            return;
        }
        cur = cur.residual(n);
    });
    return inside && cur.rank().is_zero();
}

namespace {

void enumerate_rec(const UniformFront& cur, const std::vector<unsigned>& elems, std::size_t from, FinSet& prefix,
                   std::vector<FinSet>& out) {
    if (cur.rank().is_zero()) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t i = from; i < elems.size(); ++i) {
        prefix.insert(elems[i]);
        enumerate_rec(cur.residual(elems[i]), elems, i + 1, prefix, out);
        prefix.erase(elems[i]);
    }
}

}  // namespace

std::vector<FinSet> UniformFront::enumerate(const FinSet& allowed) const {
    std::vector<FinSet> out;
    FinSet prefix;
    enumerate_rec(*this, allowed.elements(), 0, prefix, out);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::string UniformFront::describe() const { return node_->describe(); }

UniformFront canonical_front(const Ordinal& rank) {
    if (rank.degree() > Ordinal::kMaxExponent) throw Error(ErrorKind::OrdinalOverflow, "rank above cap");
    return UniformFront(std::make_shared<detail::CanonicalNode>(rank));
}

UniformFront cube_front(unsigned d) { return canonical_front(Ordinal(d)); }

UniformFront empty_set_front() { return canonical_front(Ordinal()); }

UniformFront schreier_front() { return canonical_front(Ordinal::omega()); }

UniformFront oplus(const UniformFront& a, const UniformFront& b) {
    if (b.rank().is_zero()) return a;
    if (a.rank().is_zero()) return b;
    return UniformFront(std::make_shared<detail::OplusNode>(a, b));
}

UniformFront otimes(const UniformFront& a, const UniformFront& b) {
    if (a.rank().is_zero()) throw Error(ErrorKind::InvalidParams, "otimes needs a nonzero-rank block front");
    if (b.rank().is_zero()) return empty_set_front();
    return UniformFront(std::make_shared<detail::OtimesNode>(a, b));
}

unsigned tree_rank(const CompactFamily& G) { return cb_rank_window(G) - 1; }

UniformFront uniform_envelope(const CompactFamily& G) {
    unsigned rho = tree_rank(G);
    if (rho == 0) return empty_set_front();
    return UniformFront(std::make_shared<detail::EnvelopeNode>(G.members(), rho));
}

FinSet front_step(const UniformFront& front, const FinSet& M) {
    UniformFront cur = front;
    FinSet s;
    for (unsigned n : M.elements()) {
        if (cur.rank().is_zero()) return s;
        s.insert(n);
        cur = cur.residual(n);
    }
    if (cur.rank().is_zero()) return s;
    throw Error(ErrorKind::PrefixTooShort, "prefix " + M.str() + " exhausted before reaching the front");
}

bool is_thin(const std::vector<FinSet>& members) {
    std::unordered_set<FinSet, FinSetHash> all(members.begin(), members.end());
    for (const auto& s : members) {
        FinSet prefix;
        for (unsigned n : s.elements()) {
            if (prefix != s && all.count(prefix)) return false;
            prefix.insert(n);
        }
    }
    return true;
}

namespace {

struct FrontParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw Error(ErrorKind::InvalidParams, std::string("expected '") + c + "' in front expression: " + text);
        ++pos;
    }
    std::string word() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }
    unsigned number() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw Error(ErrorKind::InvalidParams, "expected a number in: " + text);
        return static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
    }
    UniformFront parse() {
        std::string w = word();
        if (w == "schreier") return schreier_front();
        if (w == "empty") return empty_set_front();
        if (w == "cube") {
            expect('(');
            unsigned d = number();
            expect(')');
            return cube_front(d);
        }
        if (w == "oplus" || w == "otimes") {
            expect('(');
            UniformFront a = parse();
            expect(',');
            UniformFront b = parse();
            expect(')');
            return w == "oplus" ? oplus(a, b) : otimes(a, b);
        }
        throw Error(ErrorKind::InvalidParams, "unknown front '" + w + "' in: " + text);
    }
};

}  // namespace

UniformFront parse_front(const std::string& expr) {
    FrontParser p{expr};
    UniformFront f = p.parse();
    p.skip();
    if (p.pos != expr.size()) throw Error(ErrorKind::InvalidParams, "trailing input in front expression: " + expr);
    return f;
}

}  // namespace ideallab
