#pragma once

#include <gmpxx.h>

#include <string>

namespace liftcoc {

// Exact rational arithmetic everywhere; no floating point.
using Rat = mpq_class;
using Int = mpz_class;

// Canonical "p/q" form: reduced, q > 0, plain "p" when q == 1.
std::string rat_str(const Rat &q);

// Inverse of rat_str. Throws std::invalid_argument on malformed input.
Rat rat_parse(const std::string &s);

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace liftcoc
