#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

#include "ktq/errors.hpp"

namespace ktq {

// Arbitrary-precision integers and rationals over GMP.  mpq keeps values in
// lowest terms with a positive denominator, which is exactly the canonical
// form everything downstream relies on, and its comparisons run in time
// proportional to the operand size (the header-only rational backend routes
// even equality tests through an ordering that repeatedly divides).
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

// Canonical text form: "p" for integers, "p/q" otherwise (q > 0).
inline std::string rational_to_string(const Rational& q) {
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

// Parses "p" or "p/q" with optional leading minus.  Rejects q == 0.
inline Rational rational_from_string(const std::string& s) {
    auto bad = [&]() -> InvalidInput { return InvalidInput("malformed rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q == 0) throw bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

}  // namespace ktq
