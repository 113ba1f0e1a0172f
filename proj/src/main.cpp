#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "narep/baker.hpp"
#include "narep/errors.hpp"
#include "narep/hpreal.hpp"
#include "narep/narayana.hpp"
#include "narep/reduction.hpp"
#include "narep/search.hpp"

namespace {

using nlohmann::json;

const char* kStepVariable[5] = {"", "l", "m", "n", "t"};

std::string num(const narep::HPReal& x, int sig) { return x.str(sig); }

std::string bounds_markdown(int g, const std::vector<narep::StageBound>& stages,
                            const narep::AbsoluteBounds& abs) {
    std::ostringstream os;
    os << "## bounds, base " << g << "\n\n";
    os << "| stage | coefficient | shape | matveev constant |\n";
    os << "|---|---|---|---|\n";
    for (const auto& s : stages) {
        os << "| " << s.stage << " | " << num(s.coefficient, 6) << " | (log t)^" << s.t_power
           << " (log g)^" << s.g_power << " | " << num(s.matveev_constant, 6) << " |\n";
    }
    os << "\n";
    os << "t_bound: " << num(abs.t_bound, 6) << "\n";
    os << "k_bound: " << num(abs.k_bound, 6) << "\n";
    return os.str();
}

json bounds_json(int g, const std::vector<narep::StageBound>& stages,
                 const narep::AbsoluteBounds& abs) {
    json stage_rows = json::array();
    for (const auto& s : stages) {
        stage_rows.push_back({
            {"stage", s.stage},
            {"coefficient", num(s.coefficient, 25)},
            {"t_power", s.t_power},
            {"g_power", s.g_power},
            {"matveev_constant", num(s.matveev_constant, 25)},
        });
    }
    return json{{"g", g},
                {"stages", stage_rows},
                {"t_bound", num(abs.t_bound, 25)},
                {"k_bound", num(abs.k_bound, 25)}};
}

std::string bounds_csv(int g, const std::vector<narep::StageBound>& stages,
                       const narep::AbsoluteBounds& abs) {
    std::ostringstream os;
    os << "g,stage,coefficient,t_power,g_power,matveev_constant\n";
    for (const auto& s : stages) {
        os << g << "," << s.stage << "," << num(s.coefficient, 12) << "," << s.t_power << ","
           << s.g_power << "," << num(s.matveev_constant, 12) << "\n";
    }
    os << "g,t_bound,k_bound\n";
    os << g << "," << num(abs.t_bound, 12) << "," << num(abs.k_bound, 12) << "\n";
    return os.str();
}

int run_bounds(int g, bool all, const std::string& format, long digits) {
    std::vector<int> gs;
    if (all)
        for (int b = 2; b <= 12; ++b) gs.push_back(b);
    else
        gs.push_back(g);

    json out_json = json::array();
    std::ostringstream out_text;
    for (int b : gs) {
        auto stages = narep::derive_stage_bounds(b, digits);
        auto abs = narep::theorem1_bounds(b, digits);
        if (format == "json")
            out_json.push_back(bounds_json(b, stages, abs));
        else if (format == "csv")
            out_text << bounds_csv(b, stages, abs);
        else
            out_text << bounds_markdown(b, stages, abs) << "\n";
    }
    if (format == "json")
        std::cout << (out_json.size() == 1 ? out_json[0] : out_json).dump(1) << "\n";
    else
        std::cout << out_text.str();
    return 0;
}

int run_reduce(int g, bool all, int step, const std::string& format,
               const narep::ReduceOptions& opts) {
    int g_min = all ? 2 : g;
    int g_max = all ? 12 : g;
    narep::BigNat M = narep::reduction_default_M();

    std::vector<narep::StepResult> steps;
    narep::FullReductionResult full;
    bool have_full = false;
    if (step == 0) {
        full = narep::full_reduction(g_min, g_max, M, opts);
        steps = full.steps;
        have_full = true;
    } else {
        for (int b = g_min; b <= g_max; ++b) steps.push_back(narep::reduce_step(b, step, M, opts));
    }

    if (format == "json") {
        json rows = json::array();
        for (const auto& r : steps) {
            rows.push_back({
                {"g", r.g},
                {"step", r.step},
                {"variable", kStepVariable[r.step]},
                {"min_epsilon", num(r.min_epsilon, 30)},
                {"used_index", r.used_index},
                {"bound", r.variable_bound},
            });
        }
        json doc{{"M", M.get_str()}, {"steps", rows}};
        if (have_full) {
            doc["l_max"] = full.l_max;
            doc["m_max"] = full.m_max;
            doc["n_max"] = full.n_max;
            doc["t_max"] = full.t_max;
            doc["k_max"] = full.k_max;
        }
        std::cout << doc.dump(1) << "\n";
        return 0;
    }

    std::ostringstream os;
    if (format == "csv") {
        os << "g,step,variable,q_index,min_epsilon,bound\n";
        for (const auto& r : steps)
            os << r.g << "," << r.step << "," << kStepVariable[r.step] << "," << r.used_index
               << "," << num(r.min_epsilon, 12) << "," << r.variable_bound << "\n";
    } else {
        os << "| g | step | variable | q index | min epsilon | bound |\n";
        os << "|---|---|---|---|---|---|\n";
        for (const auto& r : steps)
            os << "| " << r.g << " | " << r.step << " | " << kStepVariable[r.step] << " | "
               << r.used_index << " | " << num(r.min_epsilon, 2) << " | " << r.variable_bound
               << " |\n";
        if (have_full) {
            os << "\n";
            os << "l <= " << full.l_max << ", m <= " << full.m_max << ", n <= " << full.n_max
               << ", t <= " << full.t_max << ", k <= " << full.k_max << "\n";
        }
    }
    std::cout << os.str();
    return 0;
}

json record_json(const narep::SolutionRecord& r) {
    json factors = json::array();
    for (const auto& f : r.factors) factors.push_back({{"d", f.digit}, {"len", f.length}});
    return json{{"g", r.g},
                {"k", r.k},
                {"N", r.n_k.get_str()},
                {"factors", factors},
                {"rendered", r.rendered}};
}

int print_records(const std::vector<narep::SolutionRecord>& records, const std::string& format) {
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : records) rows.push_back(record_json(r));
        std::cout << json{{"count", records.size()}, {"records", rows}}.dump(1) << "\n";
        return 0;
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "g,k,N,rendered\n";
        for (const auto& r : records)
            os << r.g << "," << r.k << "," << r.n_k.get_str() << "," << r.rendered << "\n";
    } else {
        os << "| g | k | N | factorization |\n";
        os << "|---|---|---|---|\n";
        for (const auto& r : records)
            os << "| " << r.g << " | " << r.k << " | " << r.n_k.get_str() << " | " << r.rendered
               << " |\n";
        os << "\n" << records.size() << " records\n";
    }
    std::cout << os.str();
    return 0;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"products of four repdigits in the Narayana sequence"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    std::string format = "markdown";
    long precision = 0;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "markdown", "csv"}));
    app.add_option("--precision", precision, "working precision in decimal digits");

    int g = 0;
    bool all = false;

    auto* bounds = app.add_subcommand("bounds", "stage and closed-form index bounds");
    bounds->add_option("--g", g, "base, 2..12");
    bounds->add_flag("--all", all, "all bases 2..12");

    auto* reduce = app.add_subcommand("reduce", "lattice reduction of the length bounds");
    int step = 0;
    std::string selection = "best";
    narep::ReduceOptions ropts;
    int jobs = 0;
    reduce->add_option("--g", g, "base, 2..12");
    reduce->add_flag("--all", all, "all bases 2..12");
    reduce->add_option("--step", step, "single step 1..4 (default: all)")
        ->check(CLI::Range(1, 4));
    reduce->add_option("--selection", selection, "convergent selection")
        ->check(CLI::IsMember({"best", "first"}));
    reduce->add_option("--l-cap", ropts.l_cap, "carried cap on l (default 257)");
    reduce->add_option("--m-cap", ropts.m_cap, "carried cap on m (default 265)");
    reduce->add_option("--n-cap", ropts.n_cap, "carried cap on n (default 271)");
    reduce->add_option("--jobs", jobs, "worker threads (0 = auto)");

    auto* search = app.add_subcommand("search", "find all solutions in range");
    long k_max = 2000;
    long t_max = 0;
    search->add_option("--g", g, "single base, 2..12 (default: all)");
    search->add_option("--k-max", k_max, "largest sequence index");
    search->add_option("--t-max", t_max, "override the per-base length cap");
    search->add_option("--jobs", jobs, "worker threads (0 = auto)");

    auto* oracle = app.add_subcommand("oracle", "direct quadruple enumeration cross-check");
    oracle->add_option("--g", g, "base, 2..12")->required();
    oracle->add_option("--k-max", k_max, "largest sequence index");
    oracle->add_option("--t-max", t_max, "length cap")->required();

    auto* verify = app.add_subcommand("verify", "check against the frozen dataset");
    std::string what = "table1";
    std::string data_path;
    verify->add_option("what", what, "dataset name")->check(CLI::IsMember({"table1"}));
    verify->add_option("--data", data_path, "path to the dataset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        long digits = precision > 0 ? precision : narep::HPReal::default_digits();
        if (bounds->parsed()) {
            if (!all && (g < 2 || g > 12)) {
                std::cerr << "bounds needs --g in 2..12 or --all\n";
                return 2;
            }
            return run_bounds(g, all, format, digits);
        }
        if (reduce->parsed()) {
            if (!all && (g < 2 || g > 12)) {
                std::cerr << "reduce needs --g in 2..12 or --all\n";
                return 2;
            }
            ropts.selection = selection == "first" ? narep::ConvergentSelection::first_fit
                                                   : narep::ConvergentSelection::bound_minimizing;
            ropts.threads = jobs;
            if (precision > 0) ropts.digits = precision;
            return run_reduce(g, all, step, format, ropts);
        }
        if (search->parsed()) {
            narep::SearchConfig cfg;
            if (g != 0) {
                if (g < 2 || g > 12) {
                    std::cerr << "search --g must be in 2..12\n";
                    return 2;
                }
                cfg.g_min = cfg.g_max = g;
            }
            cfg.k_max = k_max;
            cfg.parallelism = jobs;
            if (t_max > 0)
                for (int b = cfg.g_min; b <= cfg.g_max; ++b) cfg.t_max_per_g[b] = t_max;
            return print_records(narep::search_all(cfg), format);
        }
        if (oracle->parsed()) {
            return print_records(narep::brute_force_oracle(g, k_max, t_max), format);
        }
        if (verify->parsed()) {
            auto rep = narep::verify_table1(data_path);
            std::cout << rep.message << "\n";
            return rep.ok ? 0 : 1;
        }
    } catch (const narep::inconclusive_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const narep::precision_error& e) {
        std::cerr << "insufficient precision: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int main(int argc, char** argv) {
    return run(argc, argv);
}
