#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace maxrep {

/// Exact rational scalar. All exact-backend arithmetic routes through GMP;
/// no rounding ever happens on this type.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p/q" or "p". Throws on malformed input or zero denominator.
inline Rat rat_parse(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

} // namespace maxrep
