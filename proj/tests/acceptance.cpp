// End-to-end checks over the library and the CLI. Each criterion prints one
// verdict line; the exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include <narep/baker.hpp>
#include <narep/contfrac.hpp>
#include <narep/hpreal.hpp>
#include <narep/narayana.hpp>
#include <narep/numerics.hpp>
#include <narep/reduction.hpp>
#include <narep/repdigit.hpp>
#include <narep/search.hpp>

#include "expected.hpp"

using namespace narep;
namespace nt = narep::testing;

namespace {

int failures = 0;

void verdict(int n, bool ok, const std::string& detail) {
    std::printf("[AC%d] %s - %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

using Key = std::tuple<int, long, std::string>;

struct FrozenRecord {
    int g;
    long k;
    std::string rendered;
    std::array<int, 4> lengths; // ascending
};

std::vector<FrozenRecord> load_frozen() {
    std::ifstream in(std::string(NAREP_DATA_DIR) + "/expected_solutions.json");
    if (!in) throw std::runtime_error("frozen dataset not found");
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<FrozenRecord> out;
    for (const auto& r : doc.at("records")) {
        FrozenRecord rec;
        rec.g = r.at("g").get<int>();
        rec.k = r.at("k").get<long>();
        std::vector<Repdigit> fs;
        std::size_t i = 0;
        for (const auto& f : r.at("factors")) {
            fs.push_back(make_repdigit(rec.g, f.at("d").get<int>(), f.at("len").get<int>()));
            rec.lengths[i++] = f.at("len").get<int>();
        }
        std::sort(rec.lengths.begin(), rec.lengths.end());
        rec.rendered = render_product(fs);
        out.push_back(std::move(rec));
    }
    return out;
}

std::set<Key> key_set(const std::vector<FrozenRecord>& v) {
    std::set<Key> s;
    for (const auto& r : v) s.emplace(r.g, r.k, r.rendered);
    return s;
}

std::set<Key> key_set(const std::vector<SolutionRecord>& v) {
    std::set<Key> s;
    for (const auto& r : v) s.emplace(r.g, r.k, r.rendered);
    return s;
}

bool within(double x, double ref, double tol) { return std::fabs(x / ref - 1.0) <= tol; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ac1_search_matches_frozen(const std::vector<FrozenRecord>& frozen, bool long_run) {
    auto want = key_set(frozen);
    SearchConfig cfg;
    cfg.k_max = 2000;
    auto recs = search_all(cfg);
    bool ok = recs.size() == want.size() && key_set(recs) == want;

    const std::set<long> value_set = {1, 2, 3, 4, 6, 9, 13, 28, 60, 88, 129, 189};
    std::set<BigNat> values;
    for (const auto& r : recs) values.insert(r.n_k);
    ok = ok && values.size() == value_set.size();
    for (long v : value_set) ok = ok && values.count(BigNat(v)) == 1;

    std::string detail = "bases 2..12, k <= 2000: " + std::to_string(recs.size()) +
                         " records over " + std::to_string(values.size()) +
                         " values, " + (ok ? "set-identical to" : "differing from") +
                         " the " + std::to_string(want.size()) + " frozen ones";
    if (long_run) {
        cfg.k_max = 8051;
        auto deep = search_all(cfg);
        bool deep_ok = deep.size() == want.size() && key_set(deep) == want;
        ok = ok && deep_ok;
        detail += deep_ok ? "; k <= 8051 adds nothing" : "; k <= 8051 DIVERGES";
    }
    verdict(1, ok, detail);
}

void ac2_stage_chain() {
    bool ok = true;
    double t_coeff = 0;
    for (int g = 2; g <= 12; ++g) {
        auto stages = derive_stage_bounds(g);
        ok = ok && stages.size() == 4;
        for (const auto& st : stages) {
            double cr = st.coefficient.to_double() / st.reference_coefficient;
            double mr = st.matveev_constant.to_double() / st.reference_matveev;
            ok = ok && cr >= 0.5 && cr <= 1.05 && mr >= 0.5 && mr <= 1.05;
        }
        if (g == 12) t_coeff = stages[3].coefficient.to_double();
    }
    double closed_t = 16.0 * std::pow(186.0, 4) * t_coeff;
    double closed_k = 12.0 * closed_t;
    bool closed_ok = within(closed_t, nt::closed_t_reference, 0.05) &&
                     within(closed_k, nt::closed_k_reference, 0.05);
    ok = ok && closed_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "stage coefficients in [0.5x, 1.05x] of references for all bases; "
                  "closed forms %.3e / %.3e within 5%%",
                  closed_t, closed_k);
    verdict(2, ok, buf);
}

void ac3_absolute_bounds() {
    auto b = theorem1_bounds(12);
    double t = b.t_bound.to_double();
    double k = b.k_bound.to_double();
    bool ok = within(t, nt::t12_reference, 0.05) && within(k, nt::k12_reference, 0.05) &&
              k < nt::k12_reference;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "base 12: t < %.4e and k < %.4e, within 5%% of the references and "
                  "below the cap",
                  t, k);
    verdict(3, ok, buf);
}

// returns per-base step bounds for the record check
std::map<int, std::array<long, 4>> ac4_reduction() {
    BigNat M = reduction_default_M();
    std::map<int, std::array<long, 4>> bounds;
    bool ok = true;
    std::string worst;

    FullReductionResult full = full_reduction(2, 12, M);
    ok = full.steps.size() == 44;
    for (const auto& s : full.steps) {
        long ref = nt::reduction_reference.at(s.g).step[s.step - 1].bound;
        bool cell = s.variable_bound <= ref + nt::reduction_slack &&
                    s.min_epsilon.sign() > 0;
        if (!cell) {
            ok = false;
            worst = " (base " + std::to_string(s.g) + " step " + std::to_string(s.step) +
                    " at " + std::to_string(s.variable_bound) + " vs " +
                    std::to_string(ref) + ")";
        }
        bounds[s.g][static_cast<std::size_t>(s.step - 1)] = s.variable_bound;
    }

    // every selected convergent must have denominator past 6M
    const long d = 460;
    BigNat six_m = 6 * M;
    HPReal log_alpha = hp_log(dominant_root(d));
    for (int g = 2; g <= 12; ++g) {
        HPReal tau = log_alpha / hp_log(HPReal::from_int(g, d));
        auto cf = cf_expand(tau, 260);
        std::size_t first = 0;
        while (first < cf.convergents.size() && cf.convergents[first].second <= six_m)
            ++first;
        for (const auto& s : full.steps)
            if (s.g == g) ok = ok && s.used_index >= first + 1;
    }

    verdict(4, ok,
            "44 cells with positive epsilon, bounds within +" +
                std::to_string(nt::reduction_slack) +
                " of the references, every convergent past 6M" + worst);
    return bounds;
}

void ac5_no_record_excluded(const std::vector<FrozenRecord>& frozen,
                            const std::map<int, std::array<long, 4>>& bounds) {
    bool ok = true;
    for (const auto& r : frozen) {
        const auto& b = bounds.at(r.g);
        for (std::size_t i = 0; i < 4; ++i)
            if (r.lengths[i] > b[i]) ok = false;
    }
    verdict(5, ok, "sorted factor lengths of all " + std::to_string(frozen.size()) +
                       " frozen records fit under the per-base step bounds");
}

void ac6_growth_and_residuals() {
    const long d = 400;
    auto rep = growth_bounds_check(1000, d);
    bool ok = rep.corrected_lower_holds && rep.upper_holds;
    ok = ok && std::find(rep.lower_violations.begin(), rep.lower_violations.end(), 10ul) !=
                   rep.lower_violations.end();

    HPReal inv_sqrt = hp_div(HPReal::from_int(1, d), hp_sqrt(dominant_root(d), MPFR_RNDU),
                             MPFR_RNDD);
    HPReal thr = HPReal::from_int(1, d);
    bool res_ok = true;
    for (unsigned long n = 1; n <= 1000; ++n) {
        thr = hp_mul(thr, inv_sqrt, MPFR_RNDD); // alpha^(-n/2), rounded down
        HPReal est = binet_estimate(n, d);
        HPReal res = hp_abs(est - HPReal::from_bignat(narayana(n), d));
        if (!(res < thr)) {
            res_ok = false;
            break;
        }
    }
    ok = ok && res_ok;
    verdict(6, ok,
            "n <= 1000: estimate residual below alpha^(-n/2), corrected growth "
            "envelope holds, uncorrected lower exponent fails at n = 10");
}

void ac7_search_vs_enumeration() {
    bool ok = true;
    for (int g = 2; g <= 5; ++g) {
        SearchConfig cfg;
        cfg.g_min = cfg.g_max = g;
        cfg.k_max = 30;
        cfg.t_max_per_g[g] = 8;
        auto fast = search_all(cfg);
        auto slow = brute_force_oracle(g, 30, 8);
        ok = ok && fast.size() == slow.size() &&
             std::equal(fast.begin(), fast.end(), slow.begin());
    }
    verdict(7, ok, "descent search equals direct enumeration for bases 2..5, "
                   "k <= 30, lengths <= 8");
}

void ac8_cli_determinism(const std::string& cli) {
    if (cli.empty()) {
        verdict(8, false, "no CLI path given");
        return;
    }
    auto run = [&cli](const std::string& args, const std::string& out) {
        std::string cmd = "'" + cli + "' " + args + " > " + out + " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    bool ran = run("reduce --all --jobs 1", "/tmp/narep_acc_r1.txt") &&
               run("reduce --all --jobs 4", "/tmp/narep_acc_r4.txt") &&
               run("reduce --all --jobs 4", "/tmp/narep_acc_r4b.txt") &&
               run("search --jobs 1", "/tmp/narep_acc_s1.txt") &&
               run("search --jobs 4", "/tmp/narep_acc_s4.txt") &&
               run("search --jobs 4", "/tmp/narep_acc_s4b.txt");
    std::string r4 = read_file("/tmp/narep_acc_r4.txt");
    std::string s4 = read_file("/tmp/narep_acc_s4.txt");
    bool ok = ran && !r4.empty() && !s4.empty() &&
              r4 == read_file("/tmp/narep_acc_r1.txt") &&
              r4 == read_file("/tmp/narep_acc_r4b.txt") &&
              s4 == read_file("/tmp/narep_acc_s1.txt") &&
              s4 == read_file("/tmp/narep_acc_s4b.txt");
    verdict(8, ok, "repeated reduce --all and search runs byte-identical, and "
                   "identical across --jobs 1 and --jobs 4");
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    bool long_run = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            cli = argv[++i];
        else if (a == "--long")
            long_run = true;
        else {
            std::fprintf(stderr, "usage: acceptance [--cli PATH] [--long]\n");
            return 2;
        }
    }

    auto frozen = load_frozen();

    ac1_search_matches_frozen(frozen, long_run);
    ac2_stage_chain();
    ac3_absolute_bounds();
    auto bounds = ac4_reduction();
    ac5_no_record_excluded(frozen, bounds);
    ac6_growth_and_residuals();
    ac7_search_vs_enumeration();
    ac8_cli_determinism(cli);

    std::printf("%d/8 criteria passed\n", 8 - failures);
    return failures;
}
