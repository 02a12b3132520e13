#pragma once

#include <gmpxx.h>

#include <string>

#include "limaut/errors.hpp"

namespace limaut {

using Rational = mpq_class;

// Accepts "p", "p/q" and "-p/q". Throws InputError on zero denominators or junk.
Rational parse_rational(const std::string& text);

// Lowest terms, "p" when the denominator is 1.
std::string format_rational(const Rational& r);

// p/q in lowest terms (mpq_class(p, q) does not reduce).
inline Rational fraction(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace limaut
