#pragma once

#include <gmpxx.h>
#include <string>

namespace shlr {

// Exact rational scalar. Everything in the engine is computed over Q;
// there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

// Canonical "p/q" form; integers print without the denominator.
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace shlr
