#include "fibnar/reduction.hpp"

#include "fibnar/algebraic.hpp"

namespace fibnar {

namespace {

mpz_class floor_q(const mpq_class& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

// Partial quotients shared by every value in the enclosure, by running the
// Euclidean expansion on both endpoints simultaneously.
std::vector<mpz_class> interval_quotients(const Ball& b, long max_terms) {
    std::vector<mpz_class> out;
    mpq_class lo = b.lower_rational();
    mpq_class hi = b.upper_rational();
    const bool exact = (lo == hi);
    while (static_cast<long>(out.size()) < max_terms) {
        mpz_class flo = floor_q(lo);
        mpz_class fhi = floor_q(hi);
        if (flo != fhi) break;
        out.push_back(flo);
        mpq_class frac_lo = lo - mpq_class(flo);
        mpq_class frac_hi = hi - mpq_class(fhi);
        if (exact) {
            if (frac_lo == 0) break;  // rational expansion terminated
            lo = hi = mpq_class(1) / frac_lo;
            continue;
        }
        if (frac_lo == 0) break;  // endpoint hit an integer: cannot certify more
        // Inversion reverses the interval order.
        mpq_class nlo = mpq_class(1) / frac_hi;
        mpq_class nhi = mpq_class(1) / frac_lo;
        lo = nlo;
        hi = nhi;
    }
    return out;
}

void append_convergents(ContinuedFraction& cf) {
    mpz_class pm1 = 1, pm2 = 0;  // p_{i-1}, p_{i-2}
    mpz_class qm1 = 0, qm2 = 1;  // q_{i-1}, q_{i-2}
    cf.convergents.clear();
    cf.convergents.reserve(cf.partial_quotients.size());
    for (const mpz_class& a : cf.partial_quotients) {
        mpz_class p = a * pm1 + pm2;
        mpz_class q = a * qm1 + qm2;
        cf.convergents.emplace_back(p, q);
        pm2 = pm1; pm1 = p;
        qm2 = qm1; qm1 = q;
    }
}

}  // namespace

ContinuedFraction continued_fraction(const AdaptiveReal& x, long terms,
                                     const PrecisionPolicy& policy) {
    if (terms < 1) throw std::domain_error("continued_fraction: terms must be >= 1");
    for (mpfr_prec_t p = policy.start; p <= policy.max; p *= 2) {
        Ball b;
        try {
            b = x.eval(p);
        } catch (const refine_needed&) {
            continue;
        }
        std::vector<mpz_class> quots = interval_quotients(b, terms);
        if (static_cast<long>(quots.size()) >= terms || b.is_exact()) {
            ContinuedFraction cf;
            cf.partial_quotients = std::move(quots);
            append_convergents(cf);
            return cf;
        }
    }
    throw precision_exhausted("continued_fraction: could not certify " +
                              std::to_string(terms) + " terms");
}

Ball nearest_int_distance(const Ball& x) {
    const mpfr_prec_t p = std::max<mpfr_prec_t>(x.precision(), 64);
    Mpf n0(p);
    mpfr_rint(n0.get(), x.mid().get(), MPFR_RNDN);
    Ball n0b = Ball::of_endpoints(n0, n0, p);
    Ball dist = abs(x - n0b);

    const mpq_class half(1, 2);
    Mpf lo = dist.lower(p);
    Mpf hi = dist.upper(p);
    Mpf halfm(p);
    mpfr_set_q(halfm.get(), half.get_mpq_t(), MPFR_RNDN);  // exact
    if (dist.upper_rational() > half) {
        // x may be closer to a different integer; only [0, 1/2] is known.
        mpfr_set_zero(lo.get(), 1);
        if (mpfr_greater_p(hi.get(), halfm.get())) mpfr_set(hi.get(), halfm.get(), MPFR_RNDU);
    }
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    return Ball::of_endpoints(lo, hi, p);
}

ReductionOutcome baker_davenport(const ReductionProblem& prob) {
    if (prob.M < 1) throw std::domain_error("baker_davenport: M must be >= 1");
    if (!(prob.A.lower_rational() > 0))
        throw std::domain_error("baker_davenport: A must be certified positive");
    if (!(prob.B.lower_rational() > 1))
        throw std::domain_error("baker_davenport: B must be certified > 1");

    const mpz_class six_m = 6 * prob.M;
    bool hit_term_budget = false;

    for (mpfr_prec_t p = prob.policy.start; p <= prob.policy.max; p *= 2) {
        Ball tau_b, mu_b;
        try {
            tau_b = prob.tau.eval(p);
            mu_b = prob.mu.eval(p);
        } catch (const refine_needed&) {
            continue;
        }
        std::vector<mpz_class> quots = interval_quotients(tau_b, prob.max_terms);
        ContinuedFraction cf;
        cf.partial_quotients = quots;
        append_convergents(cf);

        long skipped = 0;
        bool undecided = false;
        bool found_candidate = false;
        for (size_t i = 0; i < cf.convergents.size(); ++i) {
            const mpz_class& q = cf.convergents[i].second;
            if (q <= six_m) continue;
            found_candidate = true;
            Ball qb = Ball::exact(q, p);
            Ball eps = nearest_int_distance(mu_b * qb) -
                       Ball::exact(prob.M, p) * nearest_int_distance(tau_b * qb);
            if (eps.surely_positive()) {
                ReductionOutcome out;
                out.q = q;
                out.convergent_index = static_cast<long>(i);
                out.epsilon = eps;
                try {
                    out.exclusion_threshold = log(prob.A * qb / eps) / log(prob.B);
                } catch (const refine_needed&) {
                    undecided = true;
                    break;
                }
                out.u_bound = floor_upper(out.exclusion_threshold);
                out.precision_used = p;
                out.skipped = skipped;
                return out;
            }
            if (eps.surely_negative() || !(eps.upper_rational() > 0)) {
                ++skipped;  // genuinely nonpositive: move to the next convergent
                continue;
            }
            undecided = true;  // sign not decidable here: refine and retry
            break;
        }
        if (!undecided) {
            if (!found_candidate && static_cast<long>(quots.size()) >= prob.max_terms) {
                hit_term_budget = true;
                break;
            }
            if (found_candidate && static_cast<long>(quots.size()) >= prob.max_terms) {
                hit_term_budget = true;
                break;
            }
            // Otherwise the certified prefix was too short; refine.
        }
    }
    throw reduction_failed(hit_term_budget
                               ? "baker_davenport: no qualifying convergent within term budget"
                               : "baker_davenport: precision cap reached without a decision");
}

AdaptiveReal small_k_tau(long k) {
    return log(dominant_root_alpha(k)) / log(narayana_lambda());
}

AdaptiveReal small_k_mu(long k) {
    AdaptiveReal lambda = narayana_lambda();
    AdaptiveReal num = f_k_alpha(k) / (narayana_c_lambda() * pow_i(lambda, 2));
    return log(num) / log(lambda);
}

AdaptiveReal large_k_tau() {
    return log(narayana_lambda()) / log(AdaptiveReal::exact(2L));
}

AdaptiveReal large_k_mu() {
    AdaptiveReal log2 = log(AdaptiveReal::exact(2L));
    AdaptiveReal num = AdaptiveReal::exact(2L) * log(narayana_lambda()) +
                       AdaptiveReal::exact(2L) * log2 + log(narayana_c_lambda());
    return num / log2;
}

AdaptiveReal small_k_linear_form(long k, long n, long m) {
    return AdaptiveReal::exact(n - 1) * small_k_tau(k) - AdaptiveReal::exact(m) +
           small_k_mu(k);
}

AdaptiveReal large_k_linear_form(long n, long m) {
    return AdaptiveReal::exact(m) * large_k_tau() - AdaptiveReal::exact(n) + large_k_mu();
}

}  // namespace fibnar
