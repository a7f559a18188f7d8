#ifndef REGLAB_RATIONAL_HPP
#define REGLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "reglab/errors.hpp"

namespace reglab {

// Exact rational scalar. mpq_class keeps values canonicalized
// (gcd 1, positive denominator), which is the invariant we rely on.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a/b" or "a" (decimal integers, optional sign).
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace reglab

#endif
