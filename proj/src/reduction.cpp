#include "narep/reduction.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <cmath>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "narep/baker.hpp"
#include "narep/contfrac.hpp"
#include "narep/errors.hpp"
#include "narep/numerics.hpp"

namespace narep {

namespace {

// below this magnitude the sign of a float epsilon is adjudicated exactly
constexpr double kEpsGuard = 1e-11;
// relative closeness to a ceiling boundary that forces exact adjudication
constexpr double kThrRelGuard = 1e-9;
constexpr int kMaxCeil = 512;
constexpr std::size_t kMaxSlots = 80;

HPReal dist_to_int(const HPReal& x) {
    HPReal f = hp_frac(x);
    HPReal omf = hp_sub(HPReal::from_int(1, f.digits()), f, MPFR_RNDN);
    return f < omf ? f : omf;
}

HPReal pow2_exact(long e, long digits) {
    HPReal r = HPReal::from_int(1, digits);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDU);
    return r;
}

struct Instance {
    int ip = 0;
    long l = 0, m = 0, n = 0; // 0 marks an absent exponent
};

struct ConvTables {
    BigNat q;
    double mt = 0;
    double ln_q = 0;
    HPReal m_dist; // M * ||tau q||, kept exact for adjudication
    std::vector<double> U;
    std::vector<double> y;
};

struct ExactDecision {
    bool positive = false;
    long ceil_v = 0;
    double eps = 0;
};

// Everything precision-dependent for one base: tau, the mu building blocks
// already divided by log g, the certified convergents, and lazily built
// per-convergent lookup tables.
class BaseContext {
public:
    BaseContext(int g, long digits, long max_exp, const BigNat& M)
        : g_(g), wd_(digits), max_exp_(max_exp), M_(M) {
        HPReal alpha = dominant_root(wd_);
        HPReal ln_alpha = hp_log(alpha, MPFR_RNDN);
        lng_ = hp_log(HPReal::from_int(g_, wd_), MPFR_RNDN);
        tau_ = ln_alpha / lng_;

        HPReal a = hp_pow_si(alpha, 2) /
                   (hp_pow_si(alpha, 3) + HPReal::from_int(2, wd_));
        HPReal gm14 = hp_pow_si(HPReal::from_int(g_ - 1, wd_), 4);
        HPReal base_log = hp_log(a * gm14, MPFR_RNDN);

        std::set<long> prods;
        for (long d1 = 1; d1 < g_; ++d1)
            for (long d2 = d1; d2 < g_; ++d2)
                for (long d3 = d2; d3 < g_; ++d3)
                    for (long d4 = d3; d4 < g_; ++d4)
                        prods.insert(d1 * d2 * d3 * d4);
        products_.assign(prods.begin(), prods.end());

        // mu = mu0[ip] + sum_e ye[e], everything divided by log g up front
        mu0_.reserve(products_.size());
        for (long P : products_)
            mu0_.push_back((base_log - hp_log(HPReal::from_int(P, wd_), MPFR_RNDN)) / lng_);
        ye_.reserve(max_exp_ + 1);
        ye_.push_back(HPReal::from_int(0, wd_));
        for (long e = 1; e <= max_exp_; ++e) {
            HPReal ge = hp_pow_si(HPReal::from_int(g_, wd_), -e);
            ye_.push_back(-hp_log1p(-ge, MPFR_RNDN) / lng_);
        }

        cf_ = cf_expand(tau_, 260);
        BigNat sixM = 6 * M_;
        std::size_t i = 0;
        while (i < cf_.convergents.size() && cf_.convergents[i].second <= sixM) ++i;
        if (i == cf_.convergents.size())
            throw inconclusive_error("no certified convergent exceeds 6M");
        i0_ = i;
        m_hp_ = HPReal::from_bignat(M_, wd_);
    }

    int g() const { return g_; }
    long digits() const { return wd_; }
    std::size_t i0() const { return i0_; }
    std::size_t product_count() const { return products_.size(); }
    const HPReal& lng() const { return lng_; }
    double lng_d() const { return lng_.to_double(); }

    // table for the slot-th convergent at or after i0; lock-free once built
    const ConvTables& table(std::size_t slot) {
        if (slot < built_.load(std::memory_order_acquire)) return *tables_[slot];
        std::lock_guard<std::mutex> lk(mu_);
        while (built_.load(std::memory_order_relaxed) <= slot) {
            std::size_t next = built_.load(std::memory_order_relaxed);
            std::size_t abs_i = i0_ + next;
            if (next >= kMaxSlots || abs_i >= cf_.convergents.size())
                throw inconclusive_error("certified convergents exhausted");
            tables_[next] = std::make_unique<ConvTables>(build(abs_i));
            built_.store(next + 1, std::memory_order_release);
        }
        return *tables_[slot];
    }

    HPReal eps_exact(std::size_t slot, const Instance& inst) {
        std::size_t abs_i = i0_ + slot;
        HPReal qh = HPReal::from_bignat(cf_.convergents[abs_i].second, wd_);
        HPReal mu = mu0_[inst.ip];
        for (long e : {inst.l, inst.m, inst.n})
            if (e > 0) mu = mu + ye_[e];
        HPReal d_mu = dist_to_int(mu * qh);
        HPReal d_tau = dist_to_int(tau_ * qh);
        return d_mu - m_hp_ * d_tau;
    }

    // exact sign of epsilon and, when positive, exact ceil(V) for the
    // given step coefficient
    ExactDecision decide(const HPReal& A_exact, std::size_t slot, const Instance& inst) {
        ExactDecision out;
        HPReal eps = eps_exact(slot, inst);
        if (eps.sign() <= 0) return out;
        out.positive = true;
        out.eps = eps.to_double();
        std::size_t abs_i = i0_ + slot;
        HPReal qh = HPReal::from_bignat(cf_.convergents[abs_i].second, wd_);
        HPReal V = (hp_log(A_exact * qh, MPFR_RNDN) - hp_log(eps, MPFR_RNDN)) / lng_;
        HPReal close = dist_to_int(V);
        HPReal noise("1e-50", wd_);
        if (close < noise)
            throw precision_error("ceil(V) straddles an integer at working precision");
        out.ceil_v = to_bignat_ceil(V).get_si();
        return out;
    }

private:
    ConvTables build(std::size_t abs_i) {
        ConvTables t;
        t.q = cf_.convergents[abs_i].second;
        HPReal qh = HPReal::from_bignat(t.q, wd_);
        HPReal d_tau = dist_to_int(tau_ * qh);
        t.m_dist = m_hp_ * d_tau;
        t.mt = t.m_dist.to_double();
        t.ln_q = hp_log(qh, MPFR_RNDN).to_double();
        t.U.reserve(mu0_.size());
        for (const auto& m0 : mu0_) t.U.push_back(hp_frac(m0 * qh).to_double());
        t.y.reserve(ye_.size());
        t.y.push_back(0.0);
        for (std::size_t e = 1; e < ye_.size(); ++e)
            t.y.push_back(hp_frac(ye_[e] * qh).to_double());
        return t;
    }

    int g_;
    long wd_;
    long max_exp_;
    BigNat M_;
    HPReal lng_, tau_, m_hp_;
    std::vector<long> products_;
    std::vector<HPReal> mu0_;
    std::vector<HPReal> ye_;
    ContinuedFraction cf_;
    std::size_t i0_ = 0;
    std::mutex mu_;
    std::array<std::unique_ptr<ConvTables>, kMaxSlots> tables_;
    std::atomic<std::size_t> built_{0};
};

struct SlotThr {
    std::vector<double> thr; // thr[b] = A q g^-b
    long bmin = 0;           // smallest b with thr[b] <= 1/2 (understated)
};

// Per-step ceiling thresholds: ceil(V) at a slot is the smallest b with
// eps >= thr[b], so the inner loop needs no logarithms.
class StepEngine {
public:
    StepEngine(BaseContext& ctx, int step) : ctx_(ctx), step_(step) {
        long p2 = 1L << (6 - step);
        A_exact_ = HPReal::from_int(p2, ctx.digits()) / ctx.lng();
        lnA_ = std::log(static_cast<double>(p2)) - std::log(ctx.lng_d());
    }

    const HPReal& A_exact() const { return A_exact_; }

    const SlotThr& thr(std::size_t slot) {
        if (slot < built_.load(std::memory_order_acquire)) return *slots_[slot];
        const ConvTables& warm = ctx_.table(slot); // may build, has its own lock
        (void)warm;
        std::lock_guard<std::mutex> lk(mu_);
        while (built_.load(std::memory_order_relaxed) <= slot) {
            std::size_t next = built_.load(std::memory_order_relaxed);
            const ConvTables& tt = ctx_.table(next);
            auto s = std::make_unique<SlotThr>();
            double lnAq = lnA_ + tt.ln_q;
            double lng = ctx_.lng_d();
            s->thr.resize(kMaxCeil + 1);
            s->bmin = kMaxCeil;
            for (int b = 0; b <= kMaxCeil; ++b) {
                s->thr[b] = std::exp(lnAq - b * lng);
                if (s->bmin == kMaxCeil && s->thr[b] <= 0.5 * (1 + 1e-9))
                    s->bmin = b;
            }
            slots_[next] = std::move(s);
            built_.store(next + 1, std::memory_order_release);
        }
        return *slots_[slot];
    }

private:
    BaseContext& ctx_;
    int step_;
    HPReal A_exact_;
    double lnA_ = 0;
    std::mutex mu_;
    std::array<std::unique_ptr<SlotThr>, kMaxSlots> slots_;
    std::atomic<std::size_t> built_{0};
};

// smallest b with thr[b] <= eps, or -1 when eps sits too close to a
// boundary to trust doubles. thr[b] > 1/2 >= eps for b < bmin, so the
// scan starts at bmin and is short in practice.
long ceil_from_thr(const SlotThr& th, double eps) {
    const auto& t = th.thr;
    std::size_t b = static_cast<std::size_t>(th.bmin);
    while (b < t.size() && t[b] > eps) ++b;
    if (b == t.size()) return -1; // beyond the table, let exact path decide
    if (std::fabs(eps - t[b]) <= kThrRelGuard * t[b]) return -1;
    if (b > 0 && std::fabs(eps - t[b - 1]) <= kThrRelGuard * t[b - 1]) return -1;
    return static_cast<long>(b);
}

struct WalkOutcome {
    long bound = 0;
    std::size_t slot = 0;
    double eps = 0;
};

WalkOutcome walk_instance(BaseContext& ctx, StepEngine& eng, const Instance& inst,
                          ConvergentSelection sel) {
    long best = LONG_MAX;
    std::size_t best_slot = 0;
    double best_eps = 2.0;
    for (std::size_t r = 0;; ++r) {
        if (r >= kMaxSlots)
            throw inconclusive_error("instance did not settle within the slot window");
        const ConvTables& T = ctx.table(r);
        const SlotThr& th = eng.thr(r);
        if (best != LONG_MAX && th.bmin >= best) break;

        double f = T.U[inst.ip] + T.y[inst.l] + T.y[inst.m] + T.y[inst.n];
        f -= std::floor(f);
        double d = f <= 0.5 ? f : 1.0 - f;
        double eps = d - T.mt;

        long b = -1;
        if (std::fabs(eps) <= kEpsGuard) {
            ExactDecision ed = ctx.decide(eng.A_exact(), r, inst);
            if (!ed.positive) continue;
            b = ed.ceil_v;
            eps = ed.eps;
        } else if (eps < 0) {
            continue;
        } else {
            b = ceil_from_thr(th, eps);
            if (b < 0) {
                ExactDecision ed = ctx.decide(eng.A_exact(), r, inst);
                if (!ed.positive) continue;
                b = ed.ceil_v;
                eps = ed.eps;
            }
        }
        if (b < best) {
            best = b;
            best_slot = r;
            best_eps = eps;
        }
        if (sel == ConvergentSelection::first_fit) break;
    }
    if (best == LONG_MAX)
        throw inconclusive_error("no convergent in the window gives positive epsilon");
    return {best, best_slot, best_eps};
}

struct ChunkAcc {
    long max_bound = -1;
    Instance max_inst;
    std::size_t max_slot = 0;
    double min_eps = 2.0;
    Instance min_inst;
    std::size_t min_slot = 0;

    void take(const Instance& inst, const WalkOutcome& w) {
        if (w.bound > max_bound) {
            max_bound = w.bound;
            max_inst = inst;
            max_slot = w.slot;
        }
        if (w.eps < min_eps) {
            min_eps = w.eps;
            min_inst = inst;
            min_slot = w.slot;
        }
    }

    void fold(const ChunkAcc& o) {
        if (o.max_bound > max_bound) {
            max_bound = o.max_bound;
            max_inst = o.max_inst;
            max_slot = o.max_slot;
        }
        if (o.min_eps < min_eps) {
            min_eps = o.min_eps;
            min_inst = o.min_inst;
            min_slot = o.min_slot;
        }
    }
};

} // namespace

ReductionOutcome dujella_petho(const ReductionProblem& problem, std::size_t max_terms) {
    if (problem.M <= 0) throw std::invalid_argument("M must be positive");
    if (problem.A.sign() <= 0) throw std::invalid_argument("A must be positive");
    if (problem.B.cmp(1) <= 0) throw std::invalid_argument("B must exceed 1");

    long wd = problem.tau.digits();
    ContinuedFraction cf = cf_expand(problem.tau, max_terms);
    BigNat sixM = 6 * problem.M;
    HPReal m_hp = HPReal::from_bignat(problem.M, wd);

    for (std::size_t idx = 0; idx < cf.convergents.size(); ++idx) {
        const BigNat& q = cf.convergents[idx].second;
        if (q <= sixM) continue;
        HPReal qh = HPReal::from_bignat(q, wd);
        HPReal eps = dist_to_int(problem.mu * qh) - m_hp * dist_to_int(problem.tau * qh);

        // one-ulp input uncertainty amplified by q, with generous headroom
        long qbits = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
        long prec_bits = mpfr_get_prec(problem.tau.raw());
        HPReal slack = pow2_exact(qbits + 32 - prec_bits, wd);
        HPReal eps_lo = hp_sub(eps, slack, MPFR_RNDD);
        HPReal eps_hi = hp_add(eps, slack, MPFR_RNDU);
        if (eps_hi.sign() <= 0) continue;
        if (eps_lo.sign() <= 0)
            throw inconclusive_error("epsilon sign unresolved at input precision");

        HPReal aq = problem.A * qh;
        HPReal v_hi = hp_div(hp_sub(hp_log(aq, MPFR_RNDU), hp_log(eps_lo, MPFR_RNDD), MPFR_RNDU),
                             hp_log(problem.B, MPFR_RNDD), MPFR_RNDU);
        HPReal v_lo = hp_div(hp_sub(hp_log(aq, MPFR_RNDD), hp_log(eps_hi, MPFR_RNDU), MPFR_RNDD),
                             hp_log(problem.B, MPFR_RNDU), MPFR_RNDD);
        BigNat c_hi = to_bignat_ceil(v_hi);
        BigNat c_lo = to_bignat_ceil(v_lo);
        if (c_hi != c_lo)
            throw inconclusive_error("w bound straddles an integer at input precision");

        ReductionOutcome out;
        out.convergent_index = idx + 1;
        out.q = q;
        out.epsilon = eps_lo;
        out.w_bound = c_hi.get_si();
        return out;
    }
    throw inconclusive_error("no convergent with q > 6M and positive epsilon");
}

StepResult reduce_step(int g, int step, const BigNat& M, const ReduceOptions& opts) {
    if (g < 2 || g > 12) throw std::invalid_argument("base must be in 2..12");
    if (step < 1 || step > 4) throw std::invalid_argument("step must be in 1..4");
    if (M <= 0) throw std::invalid_argument("M must be positive");

    long digits = opts.digits > 0 ? opts.digits
                                  : std::max<long>(HPReal::default_digits(), 460);
    long max_exp = std::max({opts.l_cap, opts.m_cap, opts.n_cap, 1L});
    BaseContext ctx(g, digits, max_exp, M);
    StepEngine eng(ctx, step);

    // warm the shared tables before the parallel scan
    ctx.table(0);
    eng.thr(0);

    const long l_cap = opts.l_cap;
    const long m_cap = opts.m_cap;
    const long n_cap = opts.n_cap;
    const int nP = static_cast<int>(ctx.product_count());

    struct Chunk {
        long l_from = 0, l_to = 0; // inclusive; step 1 uses one sentinel chunk
    };
    std::vector<Chunk> chunks;
    if (step == 1) {
        chunks.push_back({0, 0});
    } else {
        unsigned hw = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
        long per = std::max<long>(1, l_cap / static_cast<long>(hw * 4));
        for (long l = 1; l <= l_cap; l += per)
            chunks.push_back({l, std::min(l_cap, l + per - 1)});
    }

    auto run_chunk = [&](const Chunk& c, ChunkAcc& acc) {
        Instance inst;
        if (step == 1) {
            for (int ip = 0; ip < nP; ++ip) {
                inst.ip = ip;
                acc.take(inst, walk_instance(ctx, eng, inst, opts.selection));
            }
            return;
        }
        for (long l = c.l_from; l <= c.l_to; ++l) {
            inst.l = l;
            if (step == 2) {
                for (int ip = 0; ip < nP; ++ip) {
                    inst.ip = ip;
                    acc.take(inst, walk_instance(ctx, eng, inst, opts.selection));
                }
                continue;
            }
            for (long m = l; m <= m_cap; ++m) {
                inst.m = m;
                if (step == 3) {
                    for (int ip = 0; ip < nP; ++ip) {
                        inst.ip = ip;
                        acc.take(inst, walk_instance(ctx, eng, inst, opts.selection));
                    }
                    continue;
                }
                for (long n = m; n <= n_cap; ++n) {
                    inst.n = n;
                    for (int ip = 0; ip < nP; ++ip) {
                        inst.ip = ip;
                        acc.take(inst, walk_instance(ctx, eng, inst, opts.selection));
                    }
                }
            }
        }
    };

    std::vector<ChunkAcc> accs(chunks.size());
    unsigned workers = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(chunks.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunks.size(); ++i) run_chunk(chunks[i], accs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr first_err;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= chunks.size()) return;
                    try {
                        run_chunk(chunks[i], accs[i]);
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

    // deterministic fold in chunk order, ties keep the earliest instance
    ChunkAcc total;
    for (const auto& acc : accs) total.fold(acc);

    // exact recheck of the reported extremes
    ExactDecision top = ctx.decide(eng.A_exact(), total.max_slot, total.max_inst);
    if (!top.positive || top.ceil_v != total.max_bound)
        throw precision_error("scan extremum failed exact recheck");
    HPReal min_eps = ctx.eps_exact(total.min_slot, total.min_inst);
    if (min_eps.sign() <= 0)
        throw precision_error("minimal epsilon failed exact recheck");

    StepResult res;
    res.g = g;
    res.step = step;
    res.min_epsilon = min_eps;
    res.used_index = ctx.i0() + total.min_slot + 1;
    res.variable_bound = total.max_bound;
    return res;
}

FullReductionResult full_reduction(int g_min, int g_max, const BigNat& M,
                                   const ReduceOptions& opts) {
    if (g_min < 2 || g_max > 12 || g_min > g_max)
        throw std::invalid_argument("base range must sit inside 2..12");

    FullReductionResult out;
    for (int g = g_min; g <= g_max; ++g) {
        long t_bound_g = 0;
        for (int step = 1; step <= 4; ++step) {
            ReduceOptions o = opts;
            StepResult r;
            for (int attempt = 0;; ++attempt) {
                try {
                    r = reduce_step(g, step, M, o);
                    break;
                } catch (const inconclusive_error&) {
                    if (attempt >= 2) throw;
                    o.digits = (o.digits > 0 ? o.digits
                                             : std::max<long>(HPReal::default_digits(), 460)) * 2;
                }
            }
            out.steps.push_back(r);
            switch (step) {
                case 1: out.l_max = std::max(out.l_max, r.variable_bound); break;
                case 2: out.m_max = std::max(out.m_max, r.variable_bound); break;
                case 3: out.n_max = std::max(out.n_max, r.variable_bound); break;
                case 4:
                    out.t_max = std::max(out.t_max, r.variable_bound);
                    t_bound_g = r.variable_bound;
                    break;
            }
        }
        out.k_max = std::max(out.k_max, lemma4_k_bound(t_bound_g, g));
    }
    return out;
}

BigNat reduction_default_M() {
    BigNat m(35);
    for (int i = 0; i < 72; ++i) m *= 10;
    return m;
}

} // namespace narep
