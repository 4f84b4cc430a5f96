#pragma once

#include "fibnar/real.hpp"

#include <utility>
#include <vector>

namespace fibnar {

/// Raised when a reduction cannot be completed within the term budget or
/// precision policy.
class reduction_failed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Certified prefix of the simple continued fraction of a real number, with
/// the convergents p_i/q_i computed exactly.
struct ContinuedFraction {
    std::vector<mpz_class> partial_quotients;                // a_0, a_1, ...
    std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_i, q_i)
};

/// First `terms` partial quotients of x, certified: a quotient is emitted
/// only when the continued fractions of both enclosure endpoints agree on
/// it, refining x as needed. For exact rational x the (terminating) full
/// expansion may be shorter than `terms`.
ContinuedFraction continued_fraction(const AdaptiveReal& x, long terms,
                                     const PrecisionPolicy& policy = {});

/// Certified enclosure of the distance from x to the nearest integer:
/// min over integers z of |x - z|. Always in [0, 1/2]; the enclosure widens
/// (never fails) when x's enclosure makes the nearest integer ambiguous.
Ball nearest_int_distance(const Ball& x);

/// An instance of the reduction lemma: given a convergent p/q of tau with
/// q > 6M and eps := ||mu q|| - M ||tau q|| > 0, the inequality
/// 0 < |u tau - v + mu| < A B^-w has no solution in positive integers u, v
/// with u <= M and w >= log(A q / eps)/log B. (The classical statement has
/// w = u; the proof only uses u <= M on the left and the B-exponent w on the
/// right, so the two roles may be played by different quantities as long as
/// the caller's inequality has that shape.)
struct ReductionProblem {
    AdaptiveReal tau;   // irrational (caller-asserted)
    AdaptiveReal mu;
    Ball A;             // > 0
    Ball B;             // > 1
    mpz_class M;        // >= 1, arbitrary size
    long max_terms = 600;
    PrecisionPolicy policy{};
};

struct ReductionOutcome {
    mpz_class q;                     // chosen convergent denominator, q > 6M
    long convergent_index = -1;      // 0-based position in the expansion
    Ball epsilon;                    // certified strictly positive
    Ball exclusion_threshold;        // enclosure of log(A q / eps)/log B
    mpz_class u_bound;               // floor of the threshold's upper bound
    mpfr_prec_t precision_used = 0;
    long skipped = 0;                // convergents with q > 6M but eps <= 0
};

/// Scans the convergents of tau in increasing order and returns the first
/// q > 6M whose eps is certified positive. An eps that is certified
/// nonpositive moves to the next convergent; an undecided sign raises the
/// working precision. Throws reduction_failed when the term budget or the
/// precision cap runs out.
ReductionOutcome baker_davenport(const ReductionProblem& prob);

/// tau and mu of the order-k linear form:
/// (n-1) tau_k - m + mu_k  with  tau_k = log(alpha)/log(lambda),
/// mu_k = log(f_k(alpha) / (C_lambda lambda^2)) / log(lambda).
AdaptiveReal small_k_tau(long k);
AdaptiveReal small_k_mu(long k);

/// tau and mu of the power-of-two linear form:
/// m tau - n + mu  with  tau = log(lambda)/log 2,
/// mu = (2 log lambda + 2 log 2 + log C_lambda)/log 2.
AdaptiveReal large_k_tau();
AdaptiveReal large_k_mu();

/// Certified value of the order-k linear form at concrete indices
/// (diagnostic; vanishes nowhere on nontrivial instances).
AdaptiveReal small_k_linear_form(long k, long n, long m);
/// Certified value of the power-of-two linear form at concrete indices.
AdaptiveReal large_k_linear_form(long n, long m);

}  // namespace fibnar
