#ifndef NAREP_CONTFRAC_HPP
#define NAREP_CONTFRAC_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "narep/bignat.hpp"
#include "narep/hpreal.hpp"

namespace narep {

struct ContinuedFraction {
    HPReal target;
    std::vector<BigNat> partial_quotients;
    // (p_i, q_i), same indexing as partial_quotients
    std::vector<std::pair<BigNat, BigNat>> convergents;
};

// Expands target into at most max_terms partial quotients. Every returned
// quotient is certified: it is the quotient of every real within one ulp
// of target, so finite precision can never produce a wrong entry, only a
// shorter list. A list shorter than max_terms means the input precision is
// exhausted (for a rational target, that it terminated).
ContinuedFraction cf_expand(const HPReal& target, std::size_t max_terms);

} // namespace narep

#endif
