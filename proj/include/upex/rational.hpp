#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace upex {

// Exact rational coordinate type. All geometric predicates in this
// project are computed over Rat; nothing is ever rounded.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_strings(const std::string& num, const std::string& den) {
    Rat r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

inline int sign(const Rat& r) { return sgn(r); }

inline std::string to_string(const Rat& r) {
    return r.get_str();
}

// True if the value fits a 64-bit numerator/denominator pair.
inline bool fits_int64(const Rat& r) {
    return r.get_num().fits_slong_p() && r.get_den().fits_slong_p();
}

}  // namespace upex
