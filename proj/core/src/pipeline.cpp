#include "fibnar/pipeline.hpp"

#include "fibnar/algebraic.hpp"
#include "fibnar/bounds.hpp"
#include "fibnar/reduction.hpp"
#include "fibnar/version.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace fibnar {

namespace {

// |Gamma| < A lambda^-m must hold in both sign cases of the exponential
// comparison; the negative case costs a factor 2, so A must exceed
// 4/log(lambda) = 10.47.
constexpr const char* kSmallKA = "10.5";
constexpr const char* kLargeKA = "6";

long checked_long(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p())
        throw std::runtime_error(std::string(what) + ": value out of long range");
    return z.get_si();
}

PrecisionPolicy policy_of(const PipelineConfig& cfg) {
    return {static_cast<mpfr_prec_t>(cfg.prec_start), static_cast<mpfr_prec_t>(cfg.prec_max)};
}

// n cap from an m cap through m >= (n-2) tau + 1, using the certified lower
// endpoint of tau.
long n_cap_from_m_cap(long m_cap, const Ball& tau) {
    const mpfr_prec_t p = tau.precision();
    Mpf lo = tau.lower(p);
    Ball tau_lo = Ball::of_endpoints(lo, lo, p);
    Ball n = Ball::exact(m_cap - 1, p) / tau_lo + Ball::exact(2L, p);
    return checked_long(floor_upper(n), "n cap");
}

// Strict integer cap from k/2 < L.
long k_cap_from_threshold(const Ball& threshold) {
    mpq_class two_l = threshold.upper_rational() * 2;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), two_l.get_num_mpz_t(), two_l.get_den_mpz_t());
    if (mpq_class(fl) == two_l) fl -= 1;
    return checked_long(fl, "k cap");
}

SmallKEntry reduce_one_k(long k, const PipelineConfig& cfg) {
    BoundChainReport rep = small_k_absolute_bounds(k);

    ReductionProblem prob;
    prob.tau = small_k_tau(k);
    prob.mu = small_k_mu(k);
    prob.A = Ball::of_decimal(kSmallKA, 64);
    prob.B = lambda_algebraic().refine(static_cast<mpfr_prec_t>(cfg.prec_start));
    prob.M = rep.n_bound_int;  // bounds n, hence also u = n - 1
    prob.max_terms = cfg.cf_max_terms;
    prob.policy = policy_of(cfg);

    ReductionOutcome out = baker_davenport(prob);

    SmallKEntry e;
    e.k = k;
    e.reduction = make_reduction_record(out, "alpha-lambda", k, prob.M, kSmallKA, "lambda");
    e.m_cap = checked_long(out.u_bound, "m cap");
    e.n_cap = n_cap_from_m_cap(e.m_cap, prob.tau.eval(out.precision_used));
    return e;
}

}  // namespace

SmallKStageRecord run_small_k_stage(const PipelineConfig& cfg) {
    if (cfg.small_k_lo < 2 || cfg.small_k_lo > cfg.small_k_hi)
        throw std::domain_error("run_small_k_stage: bad k range");

    const size_t count = static_cast<size_t>(cfg.small_k_hi - cfg.small_k_lo + 1);
    std::vector<SmallKEntry> entries(count);
    std::vector<std::exception_ptr> errors(count);

    unsigned workers = cfg.parallelism ? cfg.parallelism : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));

    std::atomic<long> next{cfg.small_k_lo};
    auto work = [&] {
        for (;;) {
            long k = next.fetch_add(1);
            if (k > cfg.small_k_hi) return;
            size_t idx = static_cast<size_t>(k - cfg.small_k_lo);
            try {
                entries[idx] = reduce_one_k(k, cfg);
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (size_t i = 0; i < count; ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& ex) {
                throw reduction_failed("small-k stage failed at k=" +
                                       std::to_string(cfg.small_k_lo + static_cast<long>(i)) +
                                       ": " + ex.what());
            }
        }
    }

    SmallKStageRecord stage;
    stage.per_k = std::move(entries);
    for (const SmallKEntry& e : stage.per_k) {
        stage.m_cap = std::max(stage.m_cap, e.m_cap);
        stage.n_cap = std::max(stage.n_cap, e.n_cap);
    }
    stage.k_cap = stage.n_cap - 2;
    stage.pass = true;
    return stage;
}

LargeKStageRecord run_large_k_stage(const PipelineConfig& cfg) {
    LargeKStageRecord stage;
    BoundChainReport rep0 = large_k_absolute_bounds();
    stage.chain = rep0.constants;
    stage.chain["k_bound_published"] = rep0.k_bound_published;
    stage.chain["k_bound_derived"] = rep0.k_bound_derived;
    stage.chain["k_bound"] = rep0.k_bound;
    stage.chain["n_bound"] = rep0.n_bound;
    stage.chain["m_bound"] = rep0.m_bound;

    ReductionProblem prob;
    prob.tau = large_k_tau();
    prob.mu = large_k_mu();
    prob.A = Ball::exact(6L, 64);
    prob.B = Ball::exact(2L, 64);
    prob.M = rep0.m_bound_int;
    prob.max_terms = cfg.cf_max_terms;
    prob.policy = policy_of(cfg);

    ReductionOutcome out1 = baker_davenport(prob);
    stage.pass1_M = prob.M.get_str();
    stage.pass1 = make_reduction_record(out1, "lambda-log2", 0, prob.M, kLargeKA, "2");
    stage.pass1_k_cap = k_cap_from_threshold(out1.exclusion_threshold);

    // Second pass with the m bound recomputed for k <= pass1 cap.
    BoundChainReport rep1 = small_k_absolute_bounds(std::max<long>(stage.pass1_k_cap, 2));
    ReductionProblem prob2 = prob;
    prob2.tau = large_k_tau();
    prob2.mu = large_k_mu();
    prob2.M = rep1.m_bound_int;
    ReductionOutcome out2 = baker_davenport(prob2);
    stage.pass2_M = prob2.M.get_str();
    stage.pass2 = make_reduction_record(out2, "lambda-log2", 0, prob2.M, kLargeKA, "2");
    stage.pass2_k_cap = k_cap_from_threshold(out2.exclusion_threshold);

    stage.pass = stage.pass2_k_cap <= cfg.small_k_hi;
    return stage;
}

Pow2StageRecord run_pow2_stage(const PipelineConfig& cfg) {
    Pow2StageRecord stage;
    stage.m_max = cfg.pow2_m_max;
    stage.hits = narayana_powers_of_two(cfg.pow2_m_max, /*include_unit_values=*/false);
    stage.pass = stage.hits == std::vector<Pow2Hit>{{4, 1}, {6, 2}};
    return stage;
}

SearchStageRecord run_search_stage(const PipelineConfig& cfg, long k_cap, long n_cap,
                                   long m_cap) {
    SearchStageRecord stage;
    stage.k_lo = 2;
    stage.k_hi = std::max(cfg.search_k_hi_min, k_cap);
    stage.n_max = std::max(cfg.search_n_max_min, n_cap);
    stage.m_max = std::max(cfg.search_m_max_min, m_cap);
    SolutionSetReport rep = verify_solution_set(stage.k_lo, stage.k_hi, stage.n_max,
                                                stage.m_max, cfg.parallelism);
    stage.nontrivial = rep.nontrivial;
    stage.pass = rep.pass;
    return stage;
}

namespace {

std::vector<ZetaSample> measure_zeta_excess() {
    std::vector<ZetaSample> out;
    for (long k : {2L, 3L, 5L, 10L, 20L, 50L, 100L, 220L}) {
        KFibStream s(k, k + 2);
        mpq_class best(0);
        for (long n = k + 2; n <= k + 40; ++n) {
            const mpz_class& f = s.next();
            mpz_class p2;
            mpz_setbit(p2.get_mpz_t(), static_cast<mp_bitcnt_t>(n - 2));
            mpq_class excess(f < p2 ? p2 - f : f - p2, p2);
            excess.canonicalize();
            if (excess > best) best = excess;
        }
        out.push_back({k, best.get_d()});
    }
    return out;
}

}  // namespace

Certificate run_pipeline(const PipelineConfig& cfg) {
    Certificate cert;
    cert.version = FIBNAR_VERSION;
    cert.config = cfg;

    NarayanaConstants nc = narayana_constants(static_cast<mpfr_prec_t>(cfg.prec_start));
    cert.constants.lambda = BallRecord::of(nc.lambda);
    cert.constants.c_lambda = BallRecord::of(nc.c_lambda);
    cert.constants.c_beta_abs = BallRecord::of(nc.c_beta_abs);
    cert.constants.zeta_excess = measure_zeta_excess();

    for (const auto& p : trivial_index_pairs()) cert.trivial_pairs.push_back(p);

    cert.pow2 = run_pow2_stage(cfg);
    cert.small_k = run_small_k_stage(cfg);
    cert.large_k = run_large_k_stage(cfg);
    cert.search = run_search_stage(cfg, cert.small_k.k_cap, cert.small_k.n_cap,
                                   cert.small_k.m_cap);

    cert.verdict = cert.pow2.pass && cert.small_k.pass && cert.large_k.pass &&
                   cert.search.pass && cert.search.k_hi >= cert.small_k.k_cap &&
                   cert.search.n_max >= cert.small_k.n_cap &&
                   cert.search.m_max >= cert.small_k.m_cap;
    return cert;
}

// ---------------------------------------------------------------------------
// Verification: re-derive everything from the recorded exact inputs.
// ---------------------------------------------------------------------------

namespace {

bool balls_intersect(const Ball& a, const Ball& b) {
    return a.lower_rational() <= b.upper_rational() &&
           b.lower_rational() <= a.upper_rational();
}

struct VerifyFailure {
    std::string label;
};

void require(bool ok, const std::string& label) {
    if (!ok) throw VerifyFailure{label};
}

// Re-derives one reduction record: q must be a convergent of tau at the
// recorded index, exceed 6M, have certified eps > 0 consistent with the
// record, and reproduce the recorded u_bound.
void check_reduction(const ReductionRecord& rec, const AdaptiveReal& tau,
                     const AdaptiveReal& mu, const Ball& A, const Ball& B,
                     const PipelineConfig& cfg, const std::string& label) {
    require(rec.convergent_index >= 0, label + ": negative convergent index");
    mpz_class M(rec.M);
    mpz_class q(rec.q);
    require(q > 6 * M, label + ": q <= 6M");

    PrecisionPolicy pol = policy_of(cfg);
    ContinuedFraction cf = continued_fraction(tau, rec.convergent_index + 1, pol);
    require(static_cast<long>(cf.convergents.size()) > rec.convergent_index,
            label + ": continued fraction too short");
    require(cf.convergents[static_cast<size_t>(rec.convergent_index)].second == q,
            label + ": q is not the recorded convergent");

    const mpfr_prec_t p = static_cast<mpfr_prec_t>(rec.precision);
    Ball tau_b = tau.eval(p);
    Ball mu_b = mu.eval(p);
    Ball qb = Ball::exact(q, p);
    Ball eps = nearest_int_distance(mu_b * qb) -
               Ball::exact(M, p) * nearest_int_distance(tau_b * qb);
    require(eps.surely_positive(), label + ": epsilon not certified positive");
    require(balls_intersect(eps, rec.epsilon.to_ball()),
            label + ": recomputed epsilon inconsistent with record");

    Ball threshold = log(A * qb / eps) / log(B);
    require(balls_intersect(threshold, rec.exclusion_threshold.to_ball()),
            label + ": recomputed threshold inconsistent with record");
    require(floor_upper(threshold) == mpz_class(rec.u_bound),
            label + ": u_bound mismatch");
}

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
    try {
        require(cert.format == "fibnar-certificate/1", "format: unknown certificate format");
        const PipelineConfig& cfg = cert.config;

        // Trivial list must be exactly the canonical one.
        {
            const auto& canon = trivial_index_pairs();
            require(cert.trivial_pairs.size() == canon.size(), "trivial_pairs: wrong size");
            for (size_t i = 0; i < canon.size(); ++i)
                require(cert.trivial_pairs[i] == canon[i], "trivial_pairs: wrong entry");
        }

        // Constants must be consistent with a fresh computation.
        {
            NarayanaConstants nc = narayana_constants(static_cast<mpfr_prec_t>(cfg.prec_start));
            require(balls_intersect(nc.lambda, cert.constants.lambda.to_ball()),
                    "constants: lambda");
            require(balls_intersect(nc.c_lambda, cert.constants.c_lambda.to_ball()),
                    "constants: c_lambda");
            require(balls_intersect(nc.c_beta_abs, cert.constants.c_beta_abs.to_ball()),
                    "constants: c_beta_abs");
        }

        // Power-of-two branch.
        {
            require(cert.pow2.m_max >= cfg.pow2_m_max, "pow2: scan cap below configured");
            auto hits = narayana_powers_of_two(cert.pow2.m_max, false);
            require(hits == cert.pow2.hits, "pow2: hit list mismatch");
            bool pass = hits == std::vector<Pow2Hit>{{4, 1}, {6, 2}};
            require(pass == cert.pow2.pass, "pow2: pass flag mismatch");
        }

        // Small-k stage.
        {
            const SmallKStageRecord& s = cert.small_k;
            require(static_cast<long>(s.per_k.size()) == cfg.small_k_hi - cfg.small_k_lo + 1,
                    "small_k: wrong number of entries");
            long m_cap = 0, n_cap = 0;
            for (size_t i = 0; i < s.per_k.size(); ++i) {
                const SmallKEntry& e = s.per_k[i];
                long k = cfg.small_k_lo + static_cast<long>(i);
                std::string label = "small_k[k=" + std::to_string(k) + "]";
                require(e.k == k, label + ": out-of-order entry");
                BoundChainReport rep = small_k_absolute_bounds(k);
                require(rep.n_bound_int == mpz_class(e.reduction.M), label + ": M mismatch");
                check_reduction(e.reduction, small_k_tau(k), small_k_mu(k),
                                Ball::of_decimal(kSmallKA, 64),
                                lambda_algebraic().refine(static_cast<mpfr_prec_t>(cfg.prec_start)),
                                cfg, label);
                require(mpz_class(e.reduction.u_bound) == e.m_cap, label + ": m_cap mismatch");
                Ball tau_b = small_k_tau(k).eval(static_cast<mpfr_prec_t>(e.reduction.precision));
                require(n_cap_from_m_cap(e.m_cap, tau_b) == e.n_cap, label + ": n_cap mismatch");
                m_cap = std::max(m_cap, e.m_cap);
                n_cap = std::max(n_cap, e.n_cap);
            }
            require(s.m_cap == m_cap, "small_k: aggregate m_cap mismatch");
            require(s.n_cap == n_cap, "small_k: aggregate n_cap mismatch");
            require(s.k_cap == n_cap - 2, "small_k: aggregate k_cap mismatch");
            require(s.pass, "small_k: stage not marked pass");
        }

        // Large-k stage.
        {
            const LargeKStageRecord& s = cert.large_k;
            BoundChainReport rep0 = large_k_absolute_bounds();
            require(mpz_class(s.pass1_M) == rep0.m_bound_int, "large_k: pass1 M mismatch");
            check_reduction(s.pass1, large_k_tau(), large_k_mu(), Ball::exact(6L, 64),
                            Ball::exact(2L, 64), cfg, "large_k pass1");
            require(k_cap_from_threshold(s.pass1.exclusion_threshold.to_ball()) ==
                        s.pass1_k_cap,
                    "large_k: pass1 k cap mismatch");
            BoundChainReport rep1 =
                small_k_absolute_bounds(std::max<long>(s.pass1_k_cap, 2));
            require(mpz_class(s.pass2_M) == rep1.m_bound_int, "large_k: pass2 M mismatch");
            check_reduction(s.pass2, large_k_tau(), large_k_mu(), Ball::exact(6L, 64),
                            Ball::exact(2L, 64), cfg, "large_k pass2");
            require(k_cap_from_threshold(s.pass2.exclusion_threshold.to_ball()) ==
                        s.pass2_k_cap,
                    "large_k: pass2 k cap mismatch");
            require((s.pass2_k_cap <= cfg.small_k_hi) == s.pass,
                    "large_k: pass flag mismatch");
            require(s.pass, "large_k: contradiction not closed");
        }

        // Exhaustive search over a dominating box.
        {
            const SearchStageRecord& s = cert.search;
            require(s.k_lo == 2, "search: k_lo must be 2");
            require(s.k_hi >= std::max(cfg.search_k_hi_min, cert.small_k.k_cap),
                    "search: k box below caps");
            require(s.n_max >= std::max(cfg.search_n_max_min, cert.small_k.n_cap),
                    "search: n box below caps");
            require(s.m_max >= std::max(cfg.search_m_max_min, cert.small_k.m_cap),
                    "search: m box below caps");
            SolutionSetReport rep =
                verify_solution_set(s.k_lo, s.k_hi, s.n_max, s.m_max, cfg.parallelism);
            require(rep.pass == s.pass, "search: pass flag mismatch");
            require(rep.nontrivial.size() == s.nontrivial.size(),
                    "search: nontrivial count mismatch");
            for (size_t i = 0; i < rep.nontrivial.size(); ++i)
                require(rep.nontrivial[i] == s.nontrivial[i], "search: solution list mismatch");
            require(s.pass, "search: stage not marked pass");
        }

        bool verdict = cert.pow2.pass && cert.small_k.pass && cert.large_k.pass &&
                       cert.search.pass;
        require(cert.verdict == verdict, "verdict: inconsistent with stages");
        require(cert.verdict, "verdict: fail");
        return {true, ""};
    } catch (const VerifyFailure& f) {
        return {false, f.label};
    } catch (const std::exception& ex) {
        return {false, std::string("verification error: ") + ex.what()};
    }
}

VerifyResult verify_certificate_file(const std::string& path) {
    Certificate cert;
    try {
        cert = load_certificate(path);
    } catch (const std::exception& ex) {
        return {false, std::string("malformed certificate: ") + ex.what()};
    }
    return verify_certificate(cert);
}

}  // namespace fibnar
