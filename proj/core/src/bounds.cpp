#include "fibnar/bounds.hpp"

namespace fibnar {

namespace {

constexpr mpfr_prec_t kChainPrec = 256;

Ball ball_l(long v) { return Ball::exact(v, kChainPrec); }
Ball ball_d(const char* s) { return Ball::of_decimal(s, kChainPrec); }

// 1.4 * 30^(t+3) * t^4.5 as an exact-input enclosure.
Ball matveev_prefactor(long t, mpfr_prec_t prec) {
    mpz_class p30;
    mpz_ui_pow_ui(p30.get_mpz_t(), 30, static_cast<unsigned long>(t + 3));
    mpz_class t9;
    mpz_ui_pow_ui(t9.get_mpz_t(), static_cast<unsigned long>(t), 9);
    Ball c = Ball::of_rational(mpq_class(7, 5), prec);
    return c * Ball::exact(p30, prec) * sqrt(Ball::exact(t9, prec));
}

// Upper enclosure of c * k^4 * log(k)^e
Ball poly_log_bound(const Ball& c, long k, long e, mpfr_prec_t prec) {
    Ball kb = ball_l(k);
    return c * pow_i(kb, 4) * pow_i(log(kb), e);
}

double upper(const Ball& b) { return b.upper_double(); }

}  // namespace

MatveevInstance::MatveevInstance(long t, long D, Ball B, std::vector<Ball> A)
    : count(t), field_degree(D), coeff_bound(std::move(B)), height_params(std::move(A)) {
    if (count < 1) throw std::domain_error("MatveevInstance: t must be >= 1");
    if (field_degree < 1) throw std::domain_error("MatveevInstance: D must be >= 1");
    if (static_cast<long>(height_params.size()) != count)
        throw std::domain_error("MatveevInstance: need exactly t height parameters");
    if (coeff_bound.upper_rational() < 1)
        throw std::domain_error("MatveevInstance: B must be >= 1");
    for (const Ball& a : height_params) {
        if (a.upper_rational() < mpq_class(16, 100))
            throw std::domain_error("MatveevInstance: every A_i must be >= 0.16");
    }
}

Ball matveev_lower_bound(const MatveevInstance& inst, mpfr_prec_t prec) {
    Ball c = matveev_prefactor(inst.count, prec);
    Ball d = Ball::exact(inst.field_degree, prec);
    c = c * d * d;
    c = c * (Ball::exact(1L, prec) + log(d));
    c = c * (Ball::exact(1L, prec) + log(inst.coeff_bound));
    for (const Ball& a : inst.height_params) c = c * a;
    return -c;
}

Ball sanchez_luca_resolve(long r, const Ball& C, mpfr_prec_t prec) {
    if (r < 1) throw std::domain_error("sanchez_luca_resolve: r must be >= 1");
    mpz_class gate;
    mpz_ui_pow_ui(gate.get_mpz_t(), static_cast<unsigned long>(4 * r * r),
                  static_cast<unsigned long>(r));
    if (!(C.lower_rational() > gate))
        throw std::domain_error("sanchez_luca_resolve: requires C > (4r^2)^r");
    Ball c = C;
    if (c.precision() < prec) c = c + Ball::exact(0L, prec);
    return mul_2exp(c * pow_i(log(c), r), r);
}

AdmissibleMRange relate_m_n(long n, const AdaptiveReal& alpha, const AdaptiveReal& lambda,
                            mpfr_prec_t prec) {
    if (n < 4) throw std::domain_error("relate_m_n: n must be >= 4");
    Ball tau = log(alpha.eval(prec)) / log(lambda.eval(prec));
    AdmissibleMRange out;
    out.certified_lo = Ball::exact(n - 2, prec) * tau + Ball::exact(1L, prec);
    out.certified_hi = Ball::exact(n - 1, prec) * tau + Ball::exact(2L, prec);
    out.loose_lo = 1.4 * static_cast<double>(n) - 1.95;
    out.loose_hi = 1.9 * static_cast<double>(n) + 0.16;
    return out;
}

// ---------------------------------------------------------------------------
// Bound chains. Both reports re-derive the published constants from the
// lower-bound theorem with the same parameter choices, and carry the larger
// of published/derived in the effective fields.
//
// Shared facts, each validated by the property suite over its full range:
//   1 + log(2k)    < 3.5 log k   for k >= 2
//   1 + log(2n+2)  < 2.2 log n   for n >= 5
// The n = 4 case is covered by the exhaustive search, never by these chains.
// ---------------------------------------------------------------------------

namespace {

// Unit coefficient of the derived m-bound  m < mcoef * k^4 log^2 k * log n + 2:
// 1.4 * 30^6 * 3^4.5 * 4 * 6.6 * 2 log 2 * 3.5 * 2.2
// (the log-lambda height factor cancels against the division by log lambda).
Ball derived_m_unit_coefficient() {
    Ball c = matveev_prefactor(3, kChainPrec);
    c = c * ball_l(4);                                     // D^2 = (2k)^2
    c = c * ball_d("6.6");                                 // A_1 / (k log k)
    c = c * ball_l(2) * log(ball_l(2));                    // A_2 = 2 log 2
    c = c * ball_d("3.5") * ball_d("2.2");                 // log simplifications
    return c;
}

}  // namespace

BoundChainReport small_k_absolute_bounds(long k) {
    if (k < 2) throw std::domain_error("small_k_absolute_bounds: k must be >= 2");
    BoundChainReport rep;
    rep.k = k;

    Ball alpha = dominant_root_alpha(k, kChainPrec);
    Ball lambda = lambda_algebraic().refine(kChainPrec);
    Ball tau = log(alpha) / log(lambda);
    Mpf tau_lo = tau.lower(kChainPrec);
    Ball tau_lower = Ball::of_endpoints(tau_lo, tau_lo, kChainPrec);

    Ball mcoef_unit = derived_m_unit_coefficient();
    Ball mcoef = poly_log_bound(mcoef_unit, k, 2, kChainPrec);  // * k^4 log^2 k

    // n/log n < T with T = mcoef / tau_lower + 3  (the +3 absorbs the
    // additive constants, using log n >= log 4).
    Ball T = mcoef / tau_lower + ball_l(3);
    Ball n_derived = sanchez_luca_resolve(1, T, kChainPrec);
    Ball n_published = poly_log_bound(ball_d("2.77e15"), k, 3, kChainPrec);

    Ball n_eff = max(n_derived, n_published);
    Ball m_derived = mcoef * log(n_eff) + ball_l(2);
    Ball m_published = poly_log_bound(ball_d("3.94e13"), k, 2, kChainPrec) * log(n_eff);
    Ball m_eff = max(m_derived, m_published);

    rep.n_bound_published = upper(n_published);
    rep.n_bound_derived = upper(n_derived);
    rep.n_bound = upper(n_eff);
    rep.m_bound_published = upper(m_published);
    rep.m_bound_derived = upper(m_derived);
    rep.m_bound = upper(m_eff);
    rep.n_bound_int = ceil_upper(n_eff);
    rep.m_bound_int = ceil_upper(m_eff);
    rep.constants["m_unit_coeff_derived"] = upper(mcoef_unit);
    rep.constants["m_unit_coeff_published"] = 3.94e13;
    rep.constants["n_unit_coeff_published"] = 2.77e15;
    rep.constants["tau_lower"] = tau_lower.to_double(MPFR_RNDD);
    rep.constants["sanchez_luca_T"] = upper(T);
    return rep;
}

BoundChainReport large_k_absolute_bounds() {
    BoundChainReport rep;
    rep.k = 0;

    Ball lambda = lambda_algebraic().refine(kChainPrec);

    // Matveev block for t=3, D=3, A = [3 log 2, 3.44, 0.39], B = 2n+2:
    // the k/2 comparison yields k < K1 log n.
    Ball cmat = matveev_prefactor(3, kChainPrec);
    cmat = cmat * ball_l(9);                               // D^2
    cmat = cmat * (ball_l(1) + log(ball_l(3)));            // 1 + log D
    cmat = cmat * ball_l(3) * log(ball_l(2));              // A_1 = 3 log 2
    cmat = cmat * ball_d("3.44") * ball_d("0.39");         // A_2, A_3
    Ball cmat_logn = cmat * ball_d("2.2");                 // 1+log(2n+2) < 2.2 log n
    // (k/2 - 1) log 2 < cmat_logn * log n  =>  k < K1 log n, +1 absorbs the +2.
    Ball K1 = mul_2exp(cmat_logn, 1) / log(ball_l(2)) + ball_l(1);

    // Derived n-bound coefficient valid for every k >= 221, using the
    // certified bracket lower bound alpha > 2(1 - 2^-221):
    // n < nc_derived * k^4 log^3 k.
    mpz_class den;
    mpz_setbit(den.get_mpz_t(), 221);
    mpq_class alo(2 * (den - 1), den);
    alo.canonicalize();
    Ball alpha_floor = Ball::of_rational(alo, kChainPrec);
    Ball tau_floor = log(alpha_floor) / log(lambda);
    Mpf tf = tau_floor.lower(kChainPrec);
    Ball tau_lower = Ball::of_endpoints(tf, tf, kChainPrec);

    Ball mcoef_unit = derived_m_unit_coefficient();
    Ball t_unit = mcoef_unit / tau_lower + ball_l(3);
    // log T(k) = log t_unit + 4 log k + 2 log log k <= c221 log k for k >= 221
    // (each extra term over log k is decreasing in k there).
    Ball k221 = ball_l(221);
    Ball c221 = (log(t_unit) + ball_l(4) * log(k221) + ball_l(2) * log(log(k221))) / log(k221);
    Ball nc_derived = mul_2exp(t_unit * c221, 1);
    Ball nc_published = ball_d("2.77e15");
    Ball nc_eff = max(nc_derived, nc_published);

    // k < K1 (log nc_eff + 4 log k + 3 log log k) <= K1 * c2 log k  (k >= 221)
    Ball c2 = (log(nc_eff) + ball_l(4) * log(k221) + ball_l(3) * log(log(k221))) / log(k221);
    Ball T2 = K1 * c2;
    Ball k_derived = sanchez_luca_resolve(1, T2, kChainPrec);
    Ball k_published = ball_d("3.72e16");
    Ball k_eff = max(k_derived, k_published);

    auto n_of_k = [&](const Ball& c, const Ball& kb) {
        return c * pow_i(kb, 4) * pow_i(log(kb), 3);
    };
    Ball n_pub_at_keff = n_of_k(nc_published, k_eff);
    Ball n_der_at_keff = n_of_k(nc_derived, k_eff);
    Ball n_eff = max(n_pub_at_keff, n_der_at_keff);
    Ball m_eff = mul_2exp(n_eff, 1);  // m < 2n

    rep.k_bound_published = 3.72e16;
    rep.k_bound_derived = upper(k_derived);
    rep.k_bound = upper(k_eff);
    rep.n_bound_published = 2.96e86;
    rep.n_bound_derived = upper(n_der_at_keff);
    rep.n_bound = upper(n_eff);
    rep.m_bound_published = 5.92e86;
    rep.m_bound_derived = upper(mul_2exp(n_der_at_keff, 1));
    rep.m_bound = upper(m_eff);
    rep.n_bound_int = ceil_upper(n_eff);
    rep.m_bound_int = ceil_upper(m_eff);
    rep.constants["matveev_coeff_derived"] = upper(cmat_logn);
    rep.constants["matveev_coeff_published"] = 1.59e13;
    rep.constants["K1"] = upper(K1);
    rep.constants["nc_derived"] = upper(nc_derived);
    rep.constants["c221"] = upper(c221);
    rep.constants["sanchez_luca_T"] = upper(T2);
    return rep;
}

}  // namespace fibnar
