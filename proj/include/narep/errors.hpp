#ifndef NAREP_ERRORS_HPP
#define NAREP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace narep {

// Working precision is too low for the requested computation to certify
// its result.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// The computation ran to completion but could not reach a certified
// conclusion (e.g. no usable convergent in range).
class inconclusive_error : public std::runtime_error {
public:
    explicit inconclusive_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace narep

#endif
