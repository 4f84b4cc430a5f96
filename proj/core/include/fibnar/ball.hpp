#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace fibnar {

/// Requested when a computation cannot be decided soundly at the current
/// working precision (enclosure too wide, divisor straddles zero, ...).
/// Callers double the precision and retry.
class refine_needed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The precision-doubling policy hit its hard cap without reaching a
/// decision. Always a hard failure, never a silent pass.
class precision_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimal RAII wrapper over mpfr_t.
class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpf(const Mpf& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision, exact
    }
    Mpf(Mpf&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Mpf& operator=(const Mpf& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpf& operator=(Mpf&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpf() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /// Exact rational value (mpfr numbers are dyadic).
    mpq_class to_rational() const;

private:
    mpfr_t v_;
};

/// Certified enclosure of a real number as midpoint +/- radius.
///
/// The true value is guaranteed to lie in [mid - rad, mid + rad]. Every
/// operation propagates radii with outward rounding, so enclosures are sound
/// by construction; they may grow, never lie. Midpoints carry the ball's
/// working precision, radii a small fixed precision rounded up.
class Ball {
public:
    static constexpr mpfr_prec_t kRadiusPrec = 64;

    Ball() : Ball(kRadiusPrec) {}
    explicit Ball(mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrec) {}

    static Ball exact(long v, mpfr_prec_t prec = 64);
    static Ball exact(const mpz_class& v, mpfr_prec_t prec);
    static Ball of_rational(const mpq_class& v, mpfr_prec_t prec);
    static Ball of_double(double v, mpfr_prec_t prec = 64);
    /// Decimal string constant; any representation error is absorbed into
    /// the radius.
    static Ball of_decimal(const std::string& s, mpfr_prec_t prec);
    /// Enclosure [lo, hi] (endpoints in any order are rejected).
    static Ball of_endpoints(const Mpf& lo, const Mpf& hi, mpfr_prec_t prec);
    static Ball with_radius(Mpf mid, Mpf rad);
    /// Exact round-trip via mpfr hex-float strings.
    static Ball of_hex(const std::string& mid_hex, const std::string& rad_hex,
                       mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mid_.precision(); }
    const Mpf& mid() const { return mid_; }
    const Mpf& rad() const { return rad_; }
    bool is_exact() const { return rad_.is_zero(); }

    Mpf lower(mpfr_prec_t prec) const;  // rounded toward -inf
    Mpf upper(mpfr_prec_t prec) const;  // rounded toward +inf
    double mid_double() const { return mid_.to_double(); }
    double rad_double() const { return rad_.to_double(MPFR_RNDU); }
    double lower_double() const;
    double upper_double() const;
    mpq_class lower_rational() const;
    mpq_class upper_rational() const;

    bool surely_positive() const;                 // mid - rad > 0
    bool surely_negative() const;                 // mid + rad < 0
    bool may_contain_zero() const { return !surely_positive() && !surely_negative(); }
    bool contains(const mpq_class& x) const;      // exact check
    bool contains_zero() const { return contains(mpq_class(0)); }
    /// True if [mid-rad, mid+rad] is contained in [lo, hi].
    bool inside(double lo, double hi) const;
    bool surely_less(const Ball& o) const;        // upper(this) < lower(o)

    std::string str(size_t digits = 20) const;    // "<mid> +/- <rad>"
    std::string mid_hex() const;
    std::string rad_hex() const;

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    /// Throws refine_needed if the divisor enclosure contains zero.
    friend Ball operator/(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a);

    Ball& operator+=(const Ball& b) { *this = *this + b; return *this; }
    Ball& operator-=(const Ball& b) { *this = *this - b; return *this; }
    Ball& operator*=(const Ball& b) { *this = *this * b; return *this; }
    Ball& operator/=(const Ball& b) { *this = *this / b; return *this; }

private:
    Mpf mid_;
    Mpf rad_;

    void add_rounding_error(int ternary);
    friend Ball monotone_increasing(const Ball& x,
                                    int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t),
                                    mpfr_prec_t prec, bool clamp_lo_zero);
};

Ball abs(const Ball& x);
/// Natural log; throws refine_needed unless the enclosure is strictly positive.
Ball log(const Ball& x);
Ball exp(const Ball& x);
/// Square root; a lower endpoint slightly below zero is clamped to zero,
/// an upper endpoint below zero is a domain error.
Ball sqrt(const Ball& x);
/// Integer power. Exact 1 for e == 0 regardless of the base enclosure.
Ball pow_i(const Ball& x, long e);
/// Exact scaling by 2^e.
Ball mul_2exp(const Ball& x, long e);
Ball max(const Ball& a, const Ball& b);
Ball min(const Ball& a, const Ball& b);

/// Smallest integer >= upper endpoint, exact.
mpz_class ceil_upper(const Ball& x);
/// Largest integer <= upper endpoint (floor of the upper bound), exact.
mpz_class floor_upper(const Ball& x);

}  // namespace fibnar
