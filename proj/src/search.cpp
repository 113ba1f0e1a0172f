#include "narep/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "narep/narayana.hpp"

#ifndef NAREP_DATA_DIR
#define NAREP_DATA_DIR "data"
#endif

namespace narep {

namespace {

std::vector<Repdigit> to_vec(const std::array<Repdigit, 4>& a) {
    return std::vector<Repdigit>(a.begin(), a.end());
}

std::array<long, 2> factor_key(const Repdigit& r) {
    return {static_cast<long>(r.length), static_cast<long>(r.digit)};
}

bool record_less(const SolutionRecord& a, const SolutionRecord& b) {
    if (a.g != b.g) return a.g < b.g;
    if (a.k != b.k) return a.k < b.k;
    for (int i = 0; i < 4; ++i) {
        auto ka = factor_key(a.factors[i]);
        auto kb = factor_key(b.factors[i]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

SolutionRecord make_record(int g, long k, const BigNat& n, const std::array<Repdigit, 4>& f) {
    SolutionRecord r;
    r.g = g;
    r.k = k;
    r.n_k = n;
    r.factors = f;
    r.rendered = render_product(to_vec(f));
    return r;
}

} // namespace

long default_t_max(int g) {
    static const std::map<int, long> caps = {
        {2, 274}, {3, 175}, {4, 140}, {5, 120}, {6, 108}, {7, 99},
        {8, 93}, {9, 90}, {10, 85}, {11, 82}, {12, 81},
    };
    auto it = caps.find(g);
    if (it == caps.end()) throw std::invalid_argument("base must be in 2..12");
    return it->second;
}

std::vector<std::array<Repdigit, 4>> factor_as_four_repdigits(const BigNat& N, int g,
                                                              long t_max) {
    if (g < 2 || g > 12) throw std::invalid_argument("base must be in 2..12");
    if (t_max < 1) throw std::invalid_argument("length cap must be positive");
    std::vector<std::array<Repdigit, 4>> out;
    if (N <= 0) return out;

    BigNat vmax = repdigit_value(g - 1, static_cast<int>(t_max), g);
    BigNat vmax4 = vmax * vmax;
    vmax4 *= vmax4;
    if (vmax4 < N) return out;

    std::vector<Repdigit> reps = enumerate_repdigits(g, static_cast<int>(t_max), N);
    std::vector<BigNat> vals;
    vals.reserve(reps.size());
    for (const auto& r : reps) vals.push_back(r.value());

    std::array<Repdigit, 4> pick{};
    // descend over r1 <= r2 <= r3 dividing what remains; the last factor is
    // whatever quotient is left, accepted iff it is itself a usable repdigit
    auto close_last = [&](std::size_t start, const BigNat& rem) {
        if (start < vals.size() && rem < vals[start]) return;
        auto last = as_repdigit(rem, g);
        if (!last || last->length > t_max) return;
        pick[3] = *last;
        out.push_back(pick);
    };

    for (std::size_t i = 0; i < vals.size(); ++i) {
        const BigNat& v1 = vals[i];
        BigNat v1_4 = v1 * v1;
        v1_4 *= v1_4;
        if (v1_4 > N) break;
        if (!mpz_divisible_p(N.get_mpz_t(), v1.get_mpz_t())) continue;
        BigNat rem1 = N / v1;
        pick[0] = reps[i];
        for (std::size_t j = i; j < vals.size(); ++j) {
            const BigNat& v2 = vals[j];
            if (v2 * v2 * v2 > rem1) break;
            if (!mpz_divisible_p(rem1.get_mpz_t(), v2.get_mpz_t())) continue;
            BigNat rem2 = rem1 / v2;
            pick[1] = reps[j];
            for (std::size_t l = j; l < vals.size(); ++l) {
                const BigNat& v3 = vals[l];
                if (v3 * v3 > rem2) break;
                if (!mpz_divisible_p(rem2.get_mpz_t(), v3.get_mpz_t())) continue;
                pick[2] = reps[l];
                close_last(l, rem2 / v3);
            }
        }
    }
    return out;
}

std::vector<SolutionRecord> search_all(const SearchConfig& config) {
    if (config.g_min < 2 || config.g_max > 12 || config.g_min > config.g_max)
        throw std::invalid_argument("base range must sit inside 2..12");
    if (config.k_max < 1) throw std::invalid_argument("k_max must be positive");

    narayana(static_cast<unsigned long>(config.k_max)); // warm the memo serially

    auto t_cap = [&](int g) {
        auto it = config.t_max_per_g.find(g);
        return it != config.t_max_per_g.end() ? it->second : default_t_max(g);
    };

    struct Task {
        int g;
        long k;
    };
    std::vector<Task> tasks;
    for (int g = config.g_min; g <= config.g_max; ++g)
        for (long k = 1; k <= config.k_max; ++k) tasks.push_back({g, k});

    std::vector<std::vector<SolutionRecord>> per_task(tasks.size());
    auto run_task = [&](std::size_t i) {
        const Task& t = tasks[i];
        BigNat n = narayana(static_cast<unsigned long>(t.k));
        for (const auto& f : factor_as_four_repdigits(n, t.g, t_cap(t.g)))
            per_task[i].push_back(make_record(t.g, t.k, n, f));
    };

    unsigned workers = config.parallelism > 0
                           ? static_cast<unsigned>(config.parallelism)
                           : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr first_err;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    try {
                        run_task(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!first_err) first_err = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_err) std::rethrow_exception(first_err);
    }

    std::vector<SolutionRecord> out;
    for (auto& v : per_task)
        for (auto& r : v) out.push_back(std::move(r));
    return out; // task order is already (g, k); factorizations ascend within
}

std::vector<SolutionRecord> brute_force_oracle(int g, long k_max, long t_max) {
    if (g < 2 || g > 12) throw std::invalid_argument("base must be in 2..12");
    if (k_max < 1 || t_max < 1) throw std::invalid_argument("bounds must be positive");

    std::map<BigNat, std::vector<long>> targets;
    for (long k = 1; k <= k_max; ++k)
        targets[narayana(static_cast<unsigned long>(k))].push_back(k);
    const BigNat n_max = narayana(static_cast<unsigned long>(k_max));

    std::vector<Repdigit> reps = enumerate_repdigits(g, static_cast<int>(t_max), n_max);
    std::vector<BigNat> vals;
    for (const auto& r : reps) vals.push_back(r.value());

    std::vector<SolutionRecord> out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        BigNat p1 = vals[i];
        if (p1 > n_max) break;
        for (std::size_t j = i; j < vals.size(); ++j) {
            BigNat p2 = p1 * vals[j];
            if (p2 > n_max) break;
            for (std::size_t l = j; l < vals.size(); ++l) {
                BigNat p3 = p2 * vals[l];
                if (p3 > n_max) break;
                for (std::size_t m = l; m < vals.size(); ++m) {
                    BigNat p4 = p3 * vals[m];
                    if (p4 > n_max) break;
                    auto hit = targets.find(p4);
                    if (hit == targets.end()) continue;
                    std::array<Repdigit, 4> f = {reps[i], reps[j], reps[l], reps[m]};
                    for (long k : hit->second) out.push_back(make_record(g, k, p4, f));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
        return record_less(a, b);
    });
    return out;
}

VerifyReport verify_table1(const std::string& data_path) {
    VerifyReport rep;
    std::string path = data_path.empty()
                           ? std::string(NAREP_DATA_DIR) + "/expected_solutions.json"
                           : data_path;
    std::ifstream in(path);
    if (!in) {
        rep.message = "cannot open " + path;
        return rep;
    }
    nlohmann::json doc = nlohmann::json::parse(in);

    const int g_min = doc.at("bases").at(0).get<int>();
    const int g_max = doc.at("bases").at(1).get<int>();
    const long k_max = doc.at("k_max").get<long>();

    using Key = std::tuple<int, long, std::string>;
    std::set<Key> expected;
    std::set<std::string> values;
    for (const auto& r : doc.at("records")) {
        const int g = r.at("g").get<int>();
        const long k = r.at("k").get<long>();
        std::vector<Repdigit> fs;
        for (const auto& f : r.at("factors"))
            fs.push_back(make_repdigit(g, f.at("d").get<int>(), f.at("len").get<int>()));
        expected.emplace(g, k, render_product(fs));
        values.insert(r.at("N").dump());
    }
    rep.distinct_values = values.size();
    rep.record_count = expected.size();

    SearchConfig cfg;
    cfg.g_min = g_min;
    cfg.g_max = g_max;
    cfg.k_max = k_max;
    std::set<Key> found;
    for (const auto& r : search_all(cfg)) found.emplace(r.g, r.k, r.rendered);

    std::size_t missing = 0, extra = 0;
    for (const auto& e : expected)
        if (!found.count(e)) ++missing;
    for (const auto& f : found)
        if (!expected.count(f)) ++extra;

    if (missing == 0 && extra == 0 && found.size() == expected.size()) {
        rep.ok = true;
        rep.message = std::to_string(rep.distinct_values) +
                      " Narayana values, all factorizations matched";
    } else {
        rep.message = "mismatch: " + std::to_string(missing) + " expected records missing, " +
                      std::to_string(extra) + " unexpected records found";
    }
    return rep;
}

} // namespace narep
