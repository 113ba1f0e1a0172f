#ifndef NAREP_NUMERICS_HPP
#define NAREP_NUMERICS_HPP

#include "narep/hpreal.hpp"

namespace narep {

// The real root > 1 of x^3 - x^2 - 1, certified by a sign change across
// a +-10^-(digits) bracket.
HPReal dominant_root(long digits = HPReal::default_digits());

// Modulus of the complex conjugate root pair of x^3 - x^2 - 1; the product
// of all three roots is 1, so this is alpha^(-1/2).
HPReal complex_root_magnitude(long digits = HPReal::default_digits());

} // namespace narep

#endif
