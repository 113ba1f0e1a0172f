#ifndef NAREP_SEARCH_HPP
#define NAREP_SEARCH_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "narep/bignat.hpp"
#include "narep/repdigit.hpp"

namespace narep {

struct SolutionRecord {
    int g = 0;
    long k = 0;
    BigNat n_k;
    std::array<Repdigit, 4> factors; // ascending by value
    std::string rendered;

    friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

struct SearchConfig {
    int g_min = 2;
    int g_max = 12;
    long k_max = 2000;
    // per-base cap on factor length; missing entries use default_t_max
    std::map<int, long> t_max_per_g;
    int parallelism = 0; // 0 picks hardware concurrency
};

// proven per-base length cap, with slack
long default_t_max(int g);

// All multisets {r1 <= r2 <= r3 <= r4} of base-g repdigits with length <=
// t_max and product N, in ascending lexicographic order of values.
std::vector<std::array<Repdigit, 4>> factor_as_four_repdigits(const BigNat& N, int g,
                                                              long t_max);

// Every (g, k) in the configured range whose sequence value is a product
// of four repdigits, one record per factorization, ordered by
// (g, k, factor values). Output is independent of parallelism.
std::vector<SolutionRecord> search_all(const SearchConfig& config);

// Direct quadruple enumeration over all repdigit values, as a structurally
// independent cross-check of search_all. Single base, ordered by
// (k, factor values).
std::vector<SolutionRecord> brute_force_oracle(int g, long k_max, long t_max);

struct VerifyReport {
    bool ok = false;
    std::size_t distinct_values = 0;
    std::size_t record_count = 0;
    std::string message;
};

// Reruns the search over the frozen dataset's range and compares record
// sets exactly. Empty path uses the build-time data directory.
VerifyReport verify_table1(const std::string& data_path = std::string());

} // namespace narep

#endif
