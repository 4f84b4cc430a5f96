#include "fibnar/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace fibnar {

namespace {

// rad += 2^(exp(mid) - prec - 1), an upper bound for the half-ulp error of a
// round-to-nearest midpoint operation that reported an inexact result.
void add_half_ulp(mpfr_ptr rad, mpfr_srcptr mid) {
    mpfr_t ulp;
    mpfr_init2(ulp, 32);
    if (mpfr_zero_p(mid)) {
        // A nonzero value rounded to zero: bounded by the smallest
        // representable magnitude. Cannot happen at sane exponents.
        mpfr_set_ui_2exp(ulp, 1, mpfr_get_emin(), MPFR_RNDU);
    } else {
        mpfr_exp_t e = mpfr_get_exp(mid);
        mpfr_set_ui_2exp(ulp, 1, e - mpfr_get_prec(mid) - 1, MPFR_RNDU);
    }
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

}  // namespace

mpq_class Mpf::to_rational() const {
    if (mpfr_zero_p(v_)) return mpq_class(0);
    if (!mpfr_number_p(v_)) throw std::domain_error("Mpf::to_rational: not a finite number");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= mpq_class(scale);
    } else {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= mpq_class(scale);
    }
    q.canonicalize();
    return q;
}

void Ball::add_rounding_error(int ternary) {
    if (ternary != 0) add_half_ulp(rad_.get(), mid_.get());
}

Ball Ball::exact(long v, mpfr_prec_t prec) {
    Ball b(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);  // exact: 64-bit prec holds any long
    return b;
}

Ball Ball::exact(const mpz_class& v, mpfr_prec_t prec) {
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    Ball b(std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(bits) + 1));
    mpfr_set_z(b.mid_.get(), v.get_mpz_t(), MPFR_RNDN);
    return b;
}

Ball Ball::of_rational(const mpq_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.mid_.get(), v.get_mpq_t(), MPFR_RNDN);
    b.add_rounding_error(t);
    return b;
}

Ball Ball::of_double(double v, mpfr_prec_t prec) {
    Ball b(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_d(b.mid_.get(), v, MPFR_RNDN);  // exact: doubles are 53-bit dyadics
    return b;
}

Ball Ball::of_decimal(const std::string& s, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_str(b.mid_.get(), s.c_str(), 10, MPFR_RNDN);
    if (t == -1 && !mpfr_number_p(b.mid_.get()))
        throw std::domain_error("Ball::of_decimal: unparsable constant '" + s + "'");
    // mpfr_set_str returns 0 on success without ternary info; re-read with
    // directed roundings to detect and bound any representation error.
    Mpf up(prec);
    mpfr_set_str(up.get(), s.c_str(), 10, MPFR_RNDU);
    Mpf down(prec);
    mpfr_set_str(down.get(), s.c_str(), 10, MPFR_RNDD);
    if (!mpfr_equal_p(up.get(), down.get())) add_half_ulp(b.rad_.get(), b.mid_.get());
    return b;
}

Ball Ball::of_endpoints(const Mpf& lo, const Mpf& hi, mpfr_prec_t prec) {
    if (mpfr_greater_p(lo.get(), hi.get()))
        throw std::domain_error("Ball::of_endpoints: lo > hi");
    Ball b(prec);
    int t = mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
    t |= mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
    // radius = max(hi - mid, mid - lo), rounded up
    Mpf r1(kRadiusPrec), r2(kRadiusPrec);
    mpfr_sub(r1.get(), hi.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), b.mid_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(b.rad_.get(), r1.get(), r2.get(), MPFR_RNDU);
    if (mpfr_sgn(b.rad_.get()) < 0) mpfr_set_zero(b.rad_.get(), 1);
    b.add_rounding_error(t);
    return b;
}

Ball Ball::with_radius(Mpf mid, Mpf rad) {
    if (mpfr_sgn(rad.get()) < 0)
        throw std::domain_error("Ball::with_radius: negative radius");
    Ball b(mid.precision());
    b.mid_ = std::move(mid);
    mpfr_set(b.rad_.get(), rad.get(), MPFR_RNDU);
    return b;
}

Ball Ball::of_hex(const std::string& mid_hex, const std::string& rad_hex, mpfr_prec_t prec) {
    Ball b(prec);
    if (mpfr_set_str(b.mid_.get(), mid_hex.c_str(), 16, MPFR_RNDN) != 0)
        throw std::domain_error("Ball::of_hex: bad midpoint '" + mid_hex + "'");
    if (mpfr_set_str(b.rad_.get(), rad_hex.c_str(), 16, MPFR_RNDU) != 0 ||
        mpfr_sgn(b.rad_.get()) < 0)
        throw std::domain_error("Ball::of_hex: bad radius '" + rad_hex + "'");
    return b;
}

Mpf Ball::lower(mpfr_prec_t prec) const {
    Mpf r(prec);
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
}

Mpf Ball::upper(mpfr_prec_t prec) const {
    Mpf r(prec);
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

double Ball::lower_double() const { return lower(64).to_double(MPFR_RNDD); }
double Ball::upper_double() const { return upper(64).to_double(MPFR_RNDU); }

mpq_class Ball::lower_rational() const { return mid_.to_rational() - rad_.to_rational(); }
mpq_class Ball::upper_rational() const { return mid_.to_rational() + rad_.to_rational(); }

bool Ball::surely_positive() const {
    Mpf lo = lower(precision());
    return mpfr_sgn(lo.get()) > 0;
}

bool Ball::surely_negative() const {
    Mpf hi = upper(precision());
    return mpfr_sgn(hi.get()) < 0;
}

bool Ball::contains(const mpq_class& x) const {
    // |x - mid| <= rad, exactly (all quantities are rational).
    mpq_class d = x - mid_.to_rational();
    if (d < 0) d = -d;
    return d <= rad_.to_rational();
}

bool Ball::inside(double lo, double hi) const {
    return lower_double() >= lo && upper_double() <= hi;
}

bool Ball::surely_less(const Ball& o) const {
    Mpf a = upper(precision());
    Mpf b = o.lower(o.precision());
    return mpfr_less_p(a.get(), b.get()) != 0;
}

std::string Ball::str(size_t digits) const {
    char* ms = nullptr;
    char* rs = nullptr;
    mpfr_asprintf(&ms, "%.*Rg", static_cast<int>(digits), mid_.get());
    mpfr_asprintf(&rs, "%.3Rg", rad_.get());
    std::string out = std::string(ms) + " +/- " + rs;
    mpfr_free_str(ms);
    mpfr_free_str(rs);
    return out;
}

std::string Ball::mid_hex() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", mid_.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Ball::rad_hex() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", rad_.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    // |ma|*rb + |mb|*ra + ra*rb, all rounded up
    Mpf am(Ball::kRadiusPrec), bm(Ball::kRadiusPrec), term(Ball::kRadiusPrec);
    mpfr_abs(am.get(), a.mid_.get(), MPFR_RNDU);
    mpfr_abs(bm.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_mul(term.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_set(r.rad_.get(), term.get(), MPFR_RNDU);
    mpfr_mul(term.get(), bm.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), term.get(), MPFR_RNDU);
    mpfr_mul(term.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), term.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    if (b.may_contain_zero())
        throw refine_needed("Ball division: divisor enclosure contains zero");
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    // |x/y - ma/mb| <= (ra*|mb| + rb*|ma|) / (|mb| * (|mb| - rb))
    Mpf am(Ball::kRadiusPrec), bm(Ball::kRadiusPrec);
    mpfr_abs(am.get(), a.mid_.get(), MPFR_RNDU);
    mpfr_abs(bm.get(), b.mid_.get(), MPFR_RNDD);
    Mpf num(Ball::kRadiusPrec), term(Ball::kRadiusPrec), den(Ball::kRadiusPrec);
    mpfr_mul(num.get(), a.rad_.get(), bm.get(), MPFR_RNDU);
    mpfr_mul(term.get(), b.rad_.get(), am.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), term.get(), MPFR_RNDU);
    mpfr_sub(den.get(), bm.get(), b.rad_.get(), MPFR_RNDD);
    mpfr_mul(den.get(), den.get(), bm.get(), MPFR_RNDD);
    if (mpfr_sgn(den.get()) <= 0)
        throw refine_needed("Ball division: divisor enclosure too wide");
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
}

Ball operator-(const Ball& a) {
    Ball r = a;
    mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);  // exact
    return r;
}

Ball abs(const Ball& x) {
    if (!x.may_contain_zero()) {
        Ball r = x;
        if (x.surely_negative()) return -r;
        return r;
    }
    // Enclosure straddles zero: |x| lies in [0, |mid| + rad].
    Mpf hi(x.precision());
    mpfr_abs(hi.get(), x.mid().get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), x.rad().get(), MPFR_RNDU);
    Mpf lo(x.precision());
    return Ball::of_endpoints(lo, hi, x.precision());
}

// Shared endpoint transform for monotone increasing functions.
Ball monotone_increasing(const Ball& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t),
                         mpfr_prec_t prec, bool clamp_lo_zero) {
    Mpf lo = x.lower(prec);
    Mpf hi = x.upper(prec);
    if (clamp_lo_zero && mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    Mpf flo(prec), fhi(prec);
    fn(flo.get(), lo.get(), MPFR_RNDD);
    fn(fhi.get(), hi.get(), MPFR_RNDU);
    return Ball::of_endpoints(flo, fhi, prec);
}

Ball log(const Ball& x) {
    if (!x.surely_positive())
        throw refine_needed("Ball log: enclosure not strictly positive");
    return monotone_increasing(x, mpfr_log, x.precision(), false);
}

Ball exp(const Ball& x) {
    return monotone_increasing(x, mpfr_exp, x.precision(), false);
}

Ball sqrt(const Ball& x) {
    Mpf hi = x.upper(x.precision());
    if (mpfr_sgn(hi.get()) < 0)
        throw std::domain_error("Ball sqrt: enclosure entirely negative");
    return monotone_increasing(x, mpfr_sqrt, x.precision(), true);
}

Ball pow_i(const Ball& x, long e) {
    if (e == 0) return Ball::exact(1L, x.precision());
    if (e < 0) return Ball::exact(1L, x.precision()) / pow_i(x, -e);
    if (x.surely_positive()) {
        // Monotone on positive enclosures: transform the endpoints.
        mpfr_prec_t p = x.precision();
        Mpf lo = x.lower(p);
        Mpf hi = x.upper(p);
        Mpf flo(p), fhi(p);
        mpfr_pow_si(flo.get(), lo.get(), e, MPFR_RNDD);
        mpfr_pow_si(fhi.get(), hi.get(), e, MPFR_RNDU);
        return Ball::of_endpoints(flo, fhi, p);
    }
    // General case: binary powering with ball multiplication.
    Ball acc = Ball::exact(1L, x.precision());
    Ball base = x;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

Ball mul_2exp(const Ball& x, long e) {
    Ball r = x;
    mpfr_mul_2si(r.mid_.get(), r.mid_.get(), e, MPFR_RNDN);  // exact
    mpfr_mul_2si(r.rad_.get(), r.rad_.get(), e, MPFR_RNDU);  // exact
    return r;
}

Ball max(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    Mpf lo(p), hi(p);
    Mpf alo = a.lower(p), blo = b.lower(p);
    Mpf ahi = a.upper(p), bhi = b.upper(p);
    mpfr_max(lo.get(), alo.get(), blo.get(), MPFR_RNDD);
    mpfr_max(hi.get(), ahi.get(), bhi.get(), MPFR_RNDU);
    return Ball::of_endpoints(lo, hi, p);
}

Ball min(const Ball& a, const Ball& b) {
    return -max(-a, -b);
}

mpz_class ceil_upper(const Ball& x) {
    mpq_class u = x.upper_rational();
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
    return z;
}

mpz_class floor_upper(const Ball& x) {
    mpq_class u = x.upper_rational();
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
    return z;
}

}  // namespace fibnar
