#include "cskpoly/rational.hpp"

#include "cskpoly/errors.hpp"

#include <cctype>
#include <cstddef>

namespace cskpoly {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // Trim surrounding whitespace.
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error("ParseError", "empty rational literal");
    s = s.substr(b, e - b + 1);

    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        // Terminating decimal: digits '.' digits  ->  p / 10^k
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = false;
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
            negative = head[0] == '-';
            head = head.substr(1);
        }
        if (head.empty()) head = "0";
        if (!all_digits(head) || !all_digits(frac))
            throw Error("ParseError", "bad decimal literal: " + text);
        mpz_class num(head + frac, 10); // explicit base: leading zeros must not mean octal
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        if (negative) q = -q;
        return q;
    }

    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw Error("ParseError", "bad rational literal: " + text);
    if (q.get_den() == 0)
        throw Error("ParseError", "zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_str();
}

Rational rational_pow(const Rational& base, unsigned long exp) {
    Rational out = 1;
    Rational b = base;
    unsigned long n = exp;
    while (n > 0) {
        if (n & 1UL) out *= b;
        b *= b;
        n >>= 1UL;
    }
    return out;
}

} // namespace cskpoly
