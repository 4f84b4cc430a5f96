#include "fibnar/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fibnar {

namespace {

mpq_class mpq_from_mpfr(mpfr_srcptr x) {
    Mpf t(mpfr_get_prec(x));
    mpfr_set(t.get(), x, MPFR_RNDN);
    return t.to_rational();
}

void mpfr_from_mpq(mpfr_ptr out, const mpq_class& q, mpfr_rnd_t rnd) {
    mpfr_set_q(out, q.get_mpq_t(), rnd);
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPolynomial minpoly, mpq_class lo, mpq_class hi)
    : minpoly_(minpoly.primitive_part()), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (minpoly_.degree() < 1)
        throw std::domain_error("AlgebraicNumber: constant polynomial");
    if (lo_ >= hi_) throw std::domain_error("AlgebraicNumber: empty interval");
    sign_lo_ = minpoly_.sign_at(lo_);
    int sign_hi = minpoly_.sign_at(hi_);
    if (sign_lo_ == 0 || sign_hi == 0 || sign_lo_ == sign_hi)
        throw std::domain_error("AlgebraicNumber: no sign change across interval");
}

Ball AlgebraicNumber::refine(mpfr_prec_t prec) const {
    const mpfr_prec_t w = prec + 64;

    if (minpoly_.degree() == 1) {
        mpq_class root(-minpoly_.coeff(0), minpoly_.coeff(1));
        root.canonicalize();
        size_t numbits = mpz_sizeinbase(root.get_num_mpz_t(), 2);
        return Ball::of_rational(root, prec + static_cast<mpfr_prec_t>(numbits) + 8);
    }

    // Initial narrowing by exact rational bisection.
    mpq_class lo = lo_, hi = hi_;
    int slo = sign_lo_;
    const mpq_class coarse(1, 1 << 24);
    for (int i = 0; i < 40 && hi - lo > coarse; ++i) {
        mpq_class mid = (lo + hi) / 2;
        int s = minpoly_.sign_at(mid);
        if (s == 0) {  // landed exactly on the root
            return Ball::of_rational(mid, w);
        }
        if (s == slo) lo = mid; else hi = mid;
    }

    // Newton iterations at working precision (not certified yet).
    IntPolynomial deriv = minpoly_.derivative();
    Mpf x(w);
    mpfr_from_mpq(x.get(), (lo + hi) / 2, MPFR_RNDN);
    Mpf step(w);
    for (int iter = 0; iter < 80; ++iter) {
        Mpf fx = minpoly_.eval_approx(x.get(), w);
        if (mpfr_zero_p(fx.get())) break;
        Mpf dfx = deriv.eval_approx(x.get(), w);
        if (mpfr_zero_p(dfx.get())) break;
        mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
        if (mpfr_zero_p(step.get())) break;
        mpfr_exp_t ex = mpfr_zero_p(x.get()) ? 0 : mpfr_get_exp(x.get());
        if (mpfr_get_exp(step.get()) <= ex - (prec + 8)) break;
    }

    // Certify a sign change across [x - delta, x + delta] with exact integer
    // arithmetic. The interval must stay inside the isolating interval so the
    // bracketed root is the right one.
    {
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.get());
        const long dexp = static_cast<long>(prec) + 2;  // delta = 2^-dexp
        long shift_den = std::max<long>(dexp, e < 0 ? -static_cast<long>(e) : 0);
        // x = num / 2^shift_den, delta = delta_num / 2^shift_den
        mpz_class num;
        mpz_mul_2exp(num.get_mpz_t(), mant.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(shift_den + e));
        mpz_class delta_num;
        mpz_setbit(delta_num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift_den - dexp));
        mpz_class a = num - delta_num;
        mpz_class b = num + delta_num;
        mpz_class den;
        mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(shift_den));
        mpq_class aq(a, den), bq(b, den);
        aq.canonicalize();
        bq.canonicalize();
        if (aq > lo_ && bq < hi_) {
            int sa = minpoly_.sign_at_dyadic(a, shift_den);
            int sb = minpoly_.sign_at_dyadic(b, shift_den);
            if (sa == 0) return Ball::of_rational(aq, w);
            if (sb == 0) return Ball::of_rational(bq, w);
            if (sa != sb) {
                Mpf alo(w), bhi(w);
                mpfr_from_mpq(alo.get(), aq, MPFR_RNDD);
                mpfr_from_mpq(bhi.get(), bq, MPFR_RNDU);
                return Ball::of_endpoints(alo, bhi, w);
            }
        }
    }

    // Fallback: certified bisection all the way down. Slow but always sound.
    mpq_class target(mpz_class(1), mpz_class(1));
    mpz_mul_2exp(target.get_den().get_mpz_t(), target.get_den().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(prec + 2));
    while (hi - lo > target) {
        mpq_class mid = (lo + hi) / 2;
        int s = minpoly_.sign_at(mid);
        if (s == 0) return Ball::of_rational(mid, w);
        if (s == slo) lo = mid; else hi = mid;
    }
    Mpf flo(w), fhi(w);
    mpfr_from_mpq(flo.get(), lo, MPFR_RNDD);
    mpfr_from_mpq(fhi.get(), hi, MPFR_RNDU);
    return Ball::of_endpoints(flo, fhi, w);
}

AdaptiveReal AlgebraicNumber::to_real() const {
    return AdaptiveReal::from_evaluator(
        [a = *this](mpfr_prec_t p) { return a.refine(p); });
}

AlgebraicNumber alpha_algebraic(long k) {
    if (k < 2) throw std::domain_error("alpha_algebraic: k must be >= 2");
    // Bracket (2(1 - 2^-k), 2): the dominant root always lies here.
    mpz_class den;
    mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    mpq_class lo(2 * (den - 1), den);
    lo.canonicalize();
    return AlgebraicNumber(IntPolynomial::k_fibonacci_characteristic(k), lo, mpq_class(2));
}

AlgebraicNumber lambda_algebraic() {
    return AlgebraicNumber(IntPolynomial::narayana_characteristic(), mpq_class(1), mpq_class(2));
}

AlgebraicNumber c_lambda_algebraic() {
    return AlgebraicNumber(IntPolynomial({mpz_class(-1), mpz_class(10), mpz_class(-31), mpz_class(31)}),
                           mpq_class(0), mpq_class(1));
}

AdaptiveReal dominant_root_alpha(long k) {
    return alpha_algebraic(k).to_real();
}

Ball dominant_root_alpha(long k, mpfr_prec_t prec) {
    return alpha_algebraic(k).refine(prec);
}

NarayanaConstants narayana_constants(mpfr_prec_t prec) {
    if (prec < 64) throw std::domain_error("narayana_constants: precision must be >= 64");
    Ball lam = lambda_algebraic().refine(prec + 8);
    Ball clam = Ball::exact(1L, prec) / (pow_i(lam, 3) + Ball::exact(2L, prec));
    // The two companion coefficients are a conjugate pair; by Vieta on the
    // minimal polynomial 31x^3 - 31x^2 + 10x - 1 the product of all three
    // roots is 1/31, so |C_beta|^2 = 1/(31 C_lambda).
    Ball cbeta = Ball::exact(1L, prec) / sqrt(Ball::exact(31L, prec) * clam);
    return {lam, clam, cbeta};
}

// Fresh expression nodes on every call: evaluation caches then stay local to
// one task, which keeps certificate bytes independent of thread scheduling.
AdaptiveReal narayana_lambda() {
    return lambda_algebraic().to_real();
}

AdaptiveReal narayana_c_lambda() {
    return AdaptiveReal::exact(1L) / (pow_i(narayana_lambda(), 3) + AdaptiveReal::exact(2L));
}

AdaptiveReal narayana_c_beta_abs() {
    return AdaptiveReal::exact(1L) / sqrt(AdaptiveReal::exact(31L) * narayana_c_lambda());
}

AdaptiveReal f_k_alpha(long k, const AdaptiveReal& alpha) {
    AdaptiveReal num = alpha - AdaptiveReal::exact(1L);
    AdaptiveReal den = AdaptiveReal::exact(k + 1) * (alpha - AdaptiveReal::exact(2L)) +
                       AdaptiveReal::exact(2L);
    return num / den;
}

AdaptiveReal f_k_alpha(long k) {
    return f_k_alpha(k, dominant_root_alpha(k));
}

// ---------------------------------------------------------------------------
// Validated complex roots: Aberth-Ehrlich iteration refined at escalating
// precision, then certified with Weierstrass residual disks. If the disks
// D(z_i, d|W_i|) with W_i = p(z_i)/(lead * prod_{j!=i}(z_i - z_j)) are
// pairwise disjoint, each contains exactly one root of p.
// ---------------------------------------------------------------------------

namespace {

struct CBall {
    Ball re, im;
};

CBall cadd(const CBall& a, const CBall& b) { return {a.re + b.re, a.im + b.im}; }
CBall csub(const CBall& a, const CBall& b) { return {a.re - b.re, a.im - b.im}; }
CBall cmul(const CBall& a, const CBall& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Ball cabs(const CBall& a) { return sqrt(a.re * a.re + a.im * a.im); }

struct Cx {
    Mpf re, im;
    explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
};

// out = a * b (round to nearest; approximation only)
void cx_mul(Cx& out, const Cx& a, const Cx& b, Cx& tmp) {
    mpfr_mul(tmp.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(tmp.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(tmp.re.get(), tmp.re.get(), tmp.im.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(tmp.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), out.im.get(), tmp.im.get(), MPFR_RNDN);
    mpfr_set(out.re.get(), tmp.re.get(), MPFR_RNDN);
}

// out = a / b
void cx_div(Cx& out, const Cx& a, const Cx& b, mpfr_prec_t w) {
    Mpf n2(w), t1(w), t2(w);
    mpfr_mul(n2.get(), b.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n2.get(), n2.get(), t1.get(), MPFR_RNDN);
    // re = (a.re b.re + a.im b.im)/n2
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    // im = (a.im b.re - a.re b.im)/n2
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), t2.get(), out.im.get(), MPFR_RNDN);
    mpfr_div(out.re.get(), t1.get(), n2.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), out.im.get(), n2.get(), MPFR_RNDN);
}

// p(z) for approximate complex z (Horner, round to nearest).
void cx_poly_eval(Cx& out, const IntPolynomial& p, const Cx& z, mpfr_prec_t w) {
    Cx tmp(w);
    mpfr_set_z(out.re.get(), p.leading().get_mpz_t(), MPFR_RNDN);
    mpfr_set_zero(out.im.get(), 1);
    Mpf c(w);
    for (int i = p.degree() - 1; i >= 0; --i) {
        cx_mul(out, out, z, tmp);
        mpfr_set_z(c.get(), p.coeff(i).get_mpz_t(), MPFR_RNDN);
        mpfr_add(out.re.get(), out.re.get(), c.get(), MPFR_RNDN);
    }
}

CBall cball_exact(const Cx& z, mpfr_prec_t w) {
    Mpf re = z.re, im = z.im;
    return {Ball::of_endpoints(re, re, w), Ball::of_endpoints(im, im, w)};
}

// Certified p(z) for an exact dyadic complex point.
CBall cball_poly_eval(const IntPolynomial& p, const CBall& z, mpfr_prec_t w) {
    CBall acc{Ball::exact(p.leading(), w), Ball::exact(0L, w)};
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = cmul(acc, z);
        acc.re = acc.re + Ball::exact(p.coeff(i), w);
    }
    return acc;
}

}  // namespace

namespace detail {

std::vector<Ball> root_moduli(const IntPolynomial& poly, mpfr_prec_t prec,
                              const PrecisionPolicy& policy) {
    IntPolynomial p = poly.primitive_part();
    const int d = p.degree();
    if (d < 1) throw std::domain_error("root_moduli: constant polynomial");
    if (d == 1) {
        mpq_class root(-p.coeff(0), p.coeff(1));
        root.canonicalize();
        if (root < 0) root = -root;
        return {Ball::of_rational(root, prec + 64)};
    }

    IntPolynomial dp = p.derivative();

    // Cauchy bound for the seed circle radius.
    double maxratio = 1.0;
    double lead = std::abs(p.leading().get_d());
    for (int i = 0; i < d; ++i)
        maxratio = std::max(maxratio, std::abs(p.coeff(i).get_d()) / lead);
    double seed_radius = std::min(1.0 + maxratio, 1e6);

    std::vector<double> seed_re(static_cast<size_t>(d)), seed_im(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        double theta = 2.0 * M_PI * (i + 0.3) / d + 0.137;
        seed_re[static_cast<size_t>(i)] = seed_radius * std::cos(theta);
        seed_im[static_cast<size_t>(i)] = seed_radius * std::sin(theta);
    }

    const mpfr_prec_t w0 = std::max<mpfr_prec_t>(128, prec + 64);
    for (mpfr_prec_t w = w0; w <= std::max(policy.max, w0); w *= 2) {
        std::vector<Cx> z;
        z.reserve(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            Cx c(w);
            mpfr_set_d(c.re.get(), seed_re[static_cast<size_t>(i)], MPFR_RNDN);
            mpfr_set_d(c.im.get(), seed_im[static_cast<size_t>(i)], MPFR_RNDN);
            z.push_back(std::move(c));
        }

        // Aberth-Ehrlich sweeps.
        Cx pv(w), dv(w), nwt(w), sum(w), term(w), diff(w), corr(w);
        bool converged = false;
        for (int sweep = 0; sweep < 600 && !converged; ++sweep) {
            converged = true;
            for (int i = 0; i < d; ++i) {
                cx_poly_eval(pv, p, z[static_cast<size_t>(i)], w);
                cx_poly_eval(dv, dp, z[static_cast<size_t>(i)], w);
                if (mpfr_zero_p(dv.re.get()) && mpfr_zero_p(dv.im.get())) continue;
                cx_div(nwt, pv, dv, w);
                mpfr_set_zero(sum.re.get(), 1);
                mpfr_set_zero(sum.im.get(), 1);
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    mpfr_sub(diff.re.get(), z[static_cast<size_t>(i)].re.get(),
                             z[static_cast<size_t>(j)].re.get(), MPFR_RNDN);
                    mpfr_sub(diff.im.get(), z[static_cast<size_t>(i)].im.get(),
                             z[static_cast<size_t>(j)].im.get(), MPFR_RNDN);
                    if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
                    Cx one(w);
                    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                    cx_div(term, one, diff, w);
                    mpfr_add(sum.re.get(), sum.re.get(), term.re.get(), MPFR_RNDN);
                    mpfr_add(sum.im.get(), sum.im.get(), term.im.get(), MPFR_RNDN);
                }
                // corr = nwt / (1 - nwt*sum)
                cx_mul(term, nwt, sum, diff);
                mpfr_ui_sub(term.re.get(), 1, term.re.get(), MPFR_RNDN);
                mpfr_neg(term.im.get(), term.im.get(), MPFR_RNDN);
                cx_div(corr, nwt, term, w);
                mpfr_sub(z[static_cast<size_t>(i)].re.get(), z[static_cast<size_t>(i)].re.get(),
                         corr.re.get(), MPFR_RNDN);
                mpfr_sub(z[static_cast<size_t>(i)].im.get(), z[static_cast<size_t>(i)].im.get(),
                         corr.im.get(), MPFR_RNDN);
                // convergence: |corr| below ~2^-(w-16) relative to |z|+1
                mpfr_exp_t ce = -w;
                if (!mpfr_zero_p(corr.re.get())) ce = std::max(ce, mpfr_get_exp(corr.re.get()));
                if (!mpfr_zero_p(corr.im.get())) ce = std::max(ce, mpfr_get_exp(corr.im.get()));
                mpfr_exp_t ze = 1;
                if (!mpfr_zero_p(z[static_cast<size_t>(i)].re.get()))
                    ze = std::max(ze, mpfr_get_exp(z[static_cast<size_t>(i)].re.get()));
                if (ce > ze - (w - 16)) converged = false;
            }
        }

        // Weierstrass residual validation in ball arithmetic.
        try {
            std::vector<CBall> zb;
            zb.reserve(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) zb.push_back(cball_exact(z[static_cast<size_t>(i)], w));

            std::vector<Ball> radius;
            radius.reserve(static_cast<size_t>(d));
            bool radii_ok = true;
            for (int i = 0; i < d; ++i) {
                CBall num = cball_poly_eval(p, zb[static_cast<size_t>(i)], w);
                CBall den{Ball::exact(p.leading(), w), Ball::exact(0L, w)};
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    den = cmul(den, csub(zb[static_cast<size_t>(i)], zb[static_cast<size_t>(j)]));
                }
                Ball dennorm = cabs(den);
                if (!dennorm.surely_positive()) throw refine_needed("coincident approximations");
                Ball wnorm = cabs(num) / dennorm * Ball::exact(static_cast<long>(d), w);
                radius.push_back(wnorm);
                Mpf bound(32);
                mpfr_set_ui_2exp(bound.get(), 1, -(prec + 4), MPFR_RNDN);
                if (mpfr_greater_p(wnorm.upper(64).get(), bound.get())) radii_ok = false;
            }
            if (!radii_ok) continue;

            // Pairwise disjoint disks => exactly one root per disk.
            bool disjoint = true;
            for (int i = 0; i < d && disjoint; ++i) {
                for (int j = i + 1; j < d && disjoint; ++j) {
                    Ball dist = cabs(csub(zb[static_cast<size_t>(i)], zb[static_cast<size_t>(j)]));
                    Ball rsum = radius[static_cast<size_t>(i)] + radius[static_cast<size_t>(j)];
                    if (!rsum.surely_less(dist)) disjoint = false;
                }
            }
            if (!disjoint) continue;

            std::vector<Ball> moduli;
            moduli.reserve(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) {
                Ball center = cabs(zb[static_cast<size_t>(i)]);
                Ball r = radius[static_cast<size_t>(i)];
                Mpf lo(w), hi(w);
                mpfr_sub(lo.get(), center.lower(w).get(), r.upper(w).get(), MPFR_RNDD);
                if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
                mpfr_add(hi.get(), center.upper(w).get(), r.upper(w).get(), MPFR_RNDU);
                moduli.push_back(Ball::of_endpoints(lo, hi, w));
            }
            return moduli;
        } catch (const refine_needed&) {
            continue;
        }
    }
    throw precision_exhausted("root_moduli: could not validate roots of " + p.str());
}

Ball log_height_all_roots(const IntPolynomial& poly, mpfr_prec_t prec,
                          const PrecisionPolicy& policy) {
    IntPolynomial p = poly.primitive_part();
    const int d = p.degree();
    std::vector<Ball> moduli = root_moduli(p, prec + 8, policy);
    Ball acc = log(Ball::exact(p.leading(), prec + 8));
    Ball one = Ball::exact(1L, prec + 8);
    for (const Ball& m : moduli) {
        Ball clamped = max(m, one);
        acc = acc + log(clamped);
    }
    return acc / Ball::exact(static_cast<long>(d), prec + 8);
}

Ball log_height_cubic(const IntPolynomial& poly, mpfr_prec_t prec,
                      const PrecisionPolicy& policy) {
    IntPolynomial p = poly.primitive_part();
    if (p.degree() != 3) throw std::domain_error("log_height_cubic: degree != 3");

    // Cauchy bound gives a sign change bracket for a real root (odd degree).
    mpz_class maxc = 0;
    for (int i = 0; i < 3; ++i) {
        mpz_class a = ::abs(p.coeff(i));
        if (a > maxc) maxc = a;
    }
    mpz_class bound = 2 + maxc / p.leading();
    AlgebraicNumber real_root(p, mpq_class(-bound), mpq_class(bound));

    for (mpfr_prec_t w = std::max<mpfr_prec_t>(prec + 32, policy.start); w <= policy.max; w *= 2) {
        Ball rho = real_root.refine(w);
        // Deflate: p / (x - rho) = q2 x^2 + q1 x + q0 in ball arithmetic.
        Ball q2 = Ball::exact(p.coeff(3), w);
        Ball q1 = Ball::exact(p.coeff(2), w) + q2 * rho;
        Ball q0 = Ball::exact(p.coeff(1), w) + q1 * rho;
        Ball disc = q1 * q1 - mul_2exp(q0 * q2, 2);
        if (disc.surely_positive())
            throw refine_needed("log_height_cubic: three real roots");
        if (!disc.surely_negative()) continue;  // undecided, refine
        try {
            // Conjugate pair with common modulus sqrt(q0/q2).
            Ball pair_modulus = sqrt(q0 / q2);
            Ball one = Ball::exact(1L, w);
            Ball acc = log(Ball::exact(p.leading(), w));
            acc = acc + log(max(abs(rho), one));
            acc = acc + mul_2exp(log(max(pair_modulus, one)), 1);
            return acc / Ball::exact(3L, w);
        } catch (const refine_needed&) {
            continue;
        }
    }
    throw precision_exhausted("log_height_cubic: could not separate roots of " + p.str());
}

}  // namespace detail

Ball log_height(const IntPolynomial& minpoly, mpfr_prec_t prec, const PrecisionPolicy& policy) {
    IntPolynomial p = minpoly.primitive_part();
    const int d = p.degree();
    if (d < 1 || d > 64)
        throw std::domain_error("log_height: degree must be in [1, 64]");
    if (d == 1) {
        // h(a/b) = log max(|a|, b) for a/b in lowest terms.
        mpz_class a = ::abs(p.coeff(0));
        mpz_class b = p.coeff(1);
        return log(Ball::exact(a > b ? a : b, prec + 8));
    }
    if (d == 3) {
        try {
            return detail::log_height_cubic(p, prec, policy);
        } catch (const refine_needed&) {
            // three real roots: fall through to the general method
        }
    }
    return detail::log_height_all_roots(p, prec, policy);
}

}  // namespace fibnar
