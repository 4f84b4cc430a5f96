#pragma once

#include "fibnar/ball.hpp"

#include <string>
#include <vector>

namespace fibnar {

/// Dense univariate polynomial with exact integer coefficients,
/// stored in ascending order (coeff(0) is the constant term).
class IntPolynomial {
public:
    IntPolynomial() : c_{mpz_class(0)} {}
    explicit IntPolynomial(std::vector<mpz_class> ascending);
    /// Parses "c0,c1,...,cd" (ascending order).
    static IntPolynomial parse(const std::string& csv);
    /// x^k - x^(k-1) - ... - x - 1, the characteristic polynomial of the
    /// order-k Fibonacci recurrence. Requires k >= 2.
    static IntPolynomial k_fibonacci_characteristic(long k);
    /// x^3 - x^2 - 1, the characteristic polynomial of the Narayana
    /// recurrence.
    static IntPolynomial narayana_characteristic();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const mpz_class& leading() const { return c_.back(); }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive.
    IntPolynomial primitive_part() const;
    IntPolynomial derivative() const;

    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;
    /// Exact sign of p(num / 2^exp2) for exp2 >= 0, via an integer Horner
    /// scheme (no rationals).
    int sign_at_dyadic(const mpz_class& num, long exp2) const;

    /// Certified enclosure of p(x) by Horner evaluation in ball arithmetic.
    Ball eval(const Ball& x) const;
    /// Plain round-to-nearest Horner at the given precision (not certified;
    /// used for Newton iterations whose results are certified separately).
    Mpf eval_approx(mpfr_srcptr x, mpfr_prec_t prec) const;

    std::string str() const;

    bool operator==(const IntPolynomial&) const = default;

private:
    std::vector<mpz_class> c_;
    void trim();
};

}  // namespace fibnar
