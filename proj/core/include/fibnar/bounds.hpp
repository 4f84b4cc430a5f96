#pragma once

#include "fibnar/algebraic.hpp"

#include <map>
#include <string>
#include <vector>

namespace fibnar {

/// Parameter block for the standard lower bound on nonzero linear forms in
/// logarithms: t algebraic numbers in a field of degree D, integer exponents
/// bounded by B, and height parameters A_i. The arithmetic preconditions
/// (t >= 1, D >= 1, B >= 1, A_i >= 0.16) are checked here; the height
/// conditions A_i >= D h(eta_i) and A_i >= |log eta_i| are the caller's
/// responsibility and are recorded in the certificate.
struct MatveevInstance {
    long count;                       // t
    long field_degree;                // D
    Ball coeff_bound;                 // B
    std::vector<Ball> height_params;  // A_1..A_t

    MatveevInstance(long t, long D, Ball B, std::vector<Ball> A);
};

/// The exponent E with |Lambda| >= exp(E):
/// E = -1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D)(1 + log B) A_1...A_t.
/// Consumers take the lower endpoint of the returned enclosure (rounding
/// toward -inf keeps the bound conservative).
Ball matveev_lower_bound(const MatveevInstance& inst, mpfr_prec_t prec = 256);

/// Resolves a <= C (log a)^r into the absolute bound a < 2^r C (log C)^r.
/// Requires r >= 1 and C > (4 r^2)^r.
Ball sanchez_luca_resolve(long r, const Ball& C, mpfr_prec_t prec = 256);

/// Admissible window for m given n, from the growth inequalities of the two
/// sequences: (n-2) log(alpha)/log(lambda) + 1 <= m <= (n-1) log(alpha)/log(lambda) + 2.
/// loose_lo/loose_hi are the k-independent relaxation (1.4n - 1.95, 1.9n + 0.16);
/// the relaxed lower end assumes alpha > 7/4, which holds only for k >= 3.
struct AdmissibleMRange {
    Ball certified_lo;
    Ball certified_hi;
    double loose_lo;
    double loose_hi;
};
AdmissibleMRange relate_m_n(long n, const AdaptiveReal& alpha, const AdaptiveReal& lambda,
                            mpfr_prec_t prec = 256);

/// Absolute bounds on the solution indices, carrying both the published
/// constants and an independently re-derived chain; the effective fields are
/// the larger (safer) of the two. All uppers are rounded outward.
struct BoundChainReport {
    long k = 0;  // 0 for the k-independent (large-k) report

    double n_bound_published = 0;
    double n_bound_derived = 0;
    double n_bound = 0;  // effective
    double m_bound_published = 0;
    double m_bound_derived = 0;
    double m_bound = 0;
    double k_bound_published = 0;  // large-k report only
    double k_bound_derived = 0;
    double k_bound = 0;

    mpz_class n_bound_int;  // ceil of the effective n bound
    mpz_class m_bound_int;

    std::map<std::string, double> constants;  // labeled intermediate values
};

/// Bound chain for a fixed recurrence order k >= 2 (the n >= k+2 branch):
/// n < C k^4 log^3 k and the matching m bound.
BoundChainReport small_k_absolute_bounds(long k);

/// Bound chain for the k > 220 regime: absolute k, n, m bounds with no free
/// parameter.
BoundChainReport large_k_absolute_bounds();

}  // namespace fibnar
