#include "narep/repdigit.hpp"

#include <stdexcept>

namespace narep {

namespace {

const char* kDigits = "0123456789AB";

void check(int base, int digit, int length) {
    if (base < 2 || base > 12)
        throw std::invalid_argument("base out of range: " + std::to_string(base));
    if (digit < 1 || digit >= base)
        throw std::invalid_argument("digit out of range for base " + std::to_string(base) +
                                    ": " + std::to_string(digit));
    if (length < 1)
        throw std::invalid_argument("length must be positive: " + std::to_string(length));
}

BigNat repunit(int base, int length) {
    // (base^length - 1)/(base - 1)
    BigNat r = bignat_pow(BigNat(base), static_cast<unsigned long>(length)) - 1;
    return r / (base - 1);
}

} // namespace

BigNat Repdigit::value() const {
    check(base, digit, length);
    return digit * repunit(base, length);
}

std::string Repdigit::render() const {
    check(base, digit, length);
    return std::string(static_cast<std::size_t>(length), kDigits[digit]);
}

Repdigit make_repdigit(int base, int digit, int length) {
    check(base, digit, length);
    return Repdigit{base, digit, length};
}

BigNat repdigit_value(int digit, int length, int base) {
    check(base, digit, length);
    return digit * repunit(base, length);
}

Repdigit parse_repdigit(const std::string& text, int base) {
    if (base < 2 || base > 12)
        throw std::invalid_argument("base out of range: " + std::to_string(base));
    if (text.empty())
        throw std::invalid_argument("empty numeral");
    int digit = -1;
    for (int d = 1; d < base; ++d)
        if (kDigits[d] == text[0])
            digit = d;
    if (digit < 0)
        throw std::invalid_argument("not a nonzero base-" + std::to_string(base) +
                                    " digit: " + text.substr(0, 1));
    for (char c : text)
        if (c != text[0])
            throw std::invalid_argument("digits differ in numeral: " + text);
    return Repdigit{base, digit, static_cast<int>(text.size())};
}

std::vector<Repdigit> enumerate_repdigits(int base, int max_length, const BigNat& max_value) {
    if (base < 2 || base > 12)
        throw std::invalid_argument("base out of range: " + std::to_string(base));
    if (max_length < 1)
        throw std::invalid_argument("max_length must be positive");
    std::vector<Repdigit> out;
    for (int len = 1; len <= max_length; ++len) {
        BigNat unit = repunit(base, len);
        if (unit > max_value)
            break;
        for (int d = 1; d < base; ++d) {
            if (d * unit > max_value)
                break;
            out.push_back(Repdigit{base, d, len});
        }
    }
    return out;
}

std::optional<Repdigit> as_repdigit(const BigNat& v, int base) {
    if (base < 2 || base > 12)
        throw std::invalid_argument("base out of range: " + std::to_string(base));
    if (v <= 0)
        return std::nullopt;
    std::string s = v.get_str(base);
    for (char c : s)
        if (c != s[0])
            return std::nullopt;
    int digit = s[0] <= '9' ? s[0] - '0' : s[0] - 'a' + 10;
    return Repdigit{base, digit, static_cast<int>(s.size())};
}

std::string render_product(const std::vector<Repdigit>& factors) {
    std::string out = "[";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i)
            out += ",";
        out += factors[i].render();
    }
    out += "]_" + std::to_string(factors.empty() ? 0 : factors.front().base);
    return out;
}

} // namespace narep
