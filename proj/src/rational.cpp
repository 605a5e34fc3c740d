#include "ideallab/rational.hpp"

#include "ideallab/errors.hpp"

#include <cctype>

namespace ideallab {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::InvalidParams, "empty rational");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t decimals = s.size() - dot - 1;
        if (digits.empty() || digits == "-") throw Error(ErrorKind::InvalidParams, "bad decimal: " + s);
        Integer num;
        if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::InvalidParams, "bad decimal: " + s);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidParams, "bad rational: " + s);
    if (q.get_den() == 0) throw Error(ErrorKind::InvalidParams, "zero denominator: " + s);
    q.canonicalize();
    return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow2(int exponent) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(p);
    Rational r(1, p);
    r.canonicalize();
    return r;
}

Integer ceil(const Rational& q) {
    Integer z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

Integer floor(const Rational& q) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

}  // namespace ideallab
