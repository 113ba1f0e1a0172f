#ifndef NAREP_BIGNAT_HPP
#define NAREP_BIGNAT_HPP

#include <gmpxx.h>
#include <string>

namespace narep {

using BigNat = mpz_class;

inline BigNat bignat_pow(const BigNat& base, unsigned long exp) {
    BigNat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline std::size_t decimal_digits(const BigNat& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 10);
}

} // namespace narep

#endif
