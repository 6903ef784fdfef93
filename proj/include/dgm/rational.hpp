#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dgm {

/* Exact arbitrary-precision rational scalar.  GMP keeps values canonical
   (reduced, positive denominator, 0 = 0/1), which is exactly the invariant
   the engine needs: equality of cohomology classes must never depend on
   rounding. */
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/* Accepts "3", "-3", "3/4", "-3/4".  Whitespace is the caller's problem. */
inline Rational rat_parse(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("unparseable rational: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace dgm
