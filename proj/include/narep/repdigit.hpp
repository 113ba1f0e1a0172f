#ifndef NAREP_REPDIGIT_HPP
#define NAREP_REPDIGIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "narep/bignat.hpp"

namespace narep {

// A base-g number whose digits are all equal: d * (g^len - 1)/(g - 1).
// Bases 2..12; digits above nine render as A, B.
struct Repdigit {
    int base = 10;
    int digit = 1;
    int length = 1;

    BigNat value() const;
    std::string render() const;

    friend bool operator==(const Repdigit&, const Repdigit&) = default;
};

// validates base/digit/length ranges; throws std::invalid_argument
Repdigit make_repdigit(int base, int digit, int length);

// d * (base^length - 1)/(base - 1), exact
BigNat repdigit_value(int digit, int length, int base);

// all-equal-digits numeral, e.g. parse_repdigit("33", 4)
Repdigit parse_repdigit(const std::string& text, int base);

// every repdigit with length <= max_length and value <= max_value, ascending
// by value; for a fixed base the value order is total (lengths stratify:
// every length-L value is below every length-(L+1) value)
std::vector<Repdigit> enumerate_repdigits(int base, int max_length, const BigNat& max_value);

std::optional<Repdigit> as_repdigit(const BigNat& v, int base);

// "[1,2,2,33]_4" style rendering of a factor list
std::string render_product(const std::vector<Repdigit>& factors);

} // namespace narep

#endif
