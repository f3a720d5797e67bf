#ifndef TORICRAY_RATIONAL_HPP
#define TORICRAY_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "toricray/errors.hpp"

namespace toricray {

// Exact rational arithmetic for everything weight- and trace-related.
// A stability question (F1 = 0 vs F1 != 0) must never depend on rounding.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline BigInt floor_rational(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quot = n / d; // truncates toward zero
    if (n % d != 0 && n < 0) quot -= 1;
    return quot;
}

inline BigInt ceil_rational(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quot = n / d;
    if (n % d != 0 && n > 0) quot += 1;
    return quot;
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline long to_long(const BigInt& z) { return z.convert_to<long>(); }

// Parses "3", "-5/2", "0.25" (decimal fractions become exact rationals).
inline Rational parse_rational(const std::string& s) {
    std::string str = s;
    auto first = str.find_first_not_of(" \t");
    auto last = str.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("empty rational literal");
    str = str.substr(first, last - first + 1);
    try {
        auto slash = str.find('/');
        if (slash != std::string::npos) {
            BigInt n(str.substr(0, slash)), d(str.substr(slash + 1));
            if (d == 0) throw ConfigError("zero denominator in '" + s + "'");
            return Rational(n, d);
        }
        auto dot = str.find('.');
        if (dot != std::string::npos) {
            std::string digits = str.substr(0, dot) + str.substr(dot + 1);
            size_t frac_len = str.size() - dot - 1;
            BigInt den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            if (digits.empty() || digits == "-" || digits == "+")
                throw ConfigError("bad rational literal '" + s + "'");
            return Rational(BigInt(digits), den);
        }
        return Rational(BigInt(str), 1);
    } catch (const std::exception& e) {
        throw ConfigError("cannot parse rational '" + s + "': " + e.what());
    }
}

inline std::string rational_str(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) out += "/" + denominator(q).str();
    return out;
}

} // namespace toricray

#endif
