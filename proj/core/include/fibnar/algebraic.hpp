#pragma once

#include "fibnar/polynomial.hpp"
#include "fibnar/real.hpp"

#include <vector>

namespace fibnar {

/// A real algebraic number: primitive integer minimal polynomial with
/// positive leading coefficient, together with a rational isolating interval
/// containing exactly one real root (opposite signs at the endpoints).
class AlgebraicNumber {
public:
    AlgebraicNumber(IntPolynomial minpoly, mpq_class lo, mpq_class hi);

    const IntPolynomial& minpoly() const { return minpoly_; }
    const mpq_class& lower() const { return lo_; }
    const mpq_class& upper() const { return hi_; }

    /// Certified enclosure with radius <= 2^-prec.
    Ball refine(mpfr_prec_t prec) const;
    /// The number as a lazily refinable real.
    AdaptiveReal to_real() const;

private:
    IntPolynomial minpoly_;
    mpq_class lo_, hi_;
    int sign_lo_;
};

/// The unique root of x^k - x^(k-1) - ... - 1 in (2(1 - 2^-k), 2), as an
/// algebraic number. Requires k >= 2.
AlgebraicNumber alpha_algebraic(long k);
/// The real root of x^3 - x^2 - 1 (in (1, 2)).
AlgebraicNumber lambda_algebraic();
/// The real root of 31x^3 - 31x^2 + 10x - 1 (in (0, 1)).
AlgebraicNumber c_lambda_algebraic();

/// Dominant root of the order-k recurrence, refinable on demand.
AdaptiveReal dominant_root_alpha(long k);
/// Certified enclosure of the dominant root with radius <= 2^-prec.
Ball dominant_root_alpha(long k, mpfr_prec_t prec);

/// Certified constants of the Narayana recurrence: the dominant root lambda,
/// the Binet coefficient C_lambda = 1/(lambda^3 + 2), and the common modulus
/// |C_beta| of the conjugate pair of companion coefficients.
struct NarayanaConstants {
    Ball lambda;
    Ball c_lambda;
    Ball c_beta_abs;
};
/// Requires prec >= 64.
NarayanaConstants narayana_constants(mpfr_prec_t prec);

AdaptiveReal narayana_lambda();
AdaptiveReal narayana_c_lambda();
AdaptiveReal narayana_c_beta_abs();

/// The dominant-term coefficient (alpha - 1) / (2 + (k+1)(alpha - 2)) of the
/// order-k recurrence's Binet-style decomposition.
AdaptiveReal f_k_alpha(long k, const AdaptiveReal& alpha);
AdaptiveReal f_k_alpha(long k);

/// Logarithmic (Weil) height of the algebraic number defined by the given
/// minimal polynomial: (1/d) (log a_d + sum_i log max(|root_i|, 1)) over all
/// complex roots. The polynomial is normalized to its primitive part with
/// positive leading coefficient. Requires a squarefree polynomial of degree
/// 1..64; throws precision_exhausted if the roots cannot be validated at the
/// requested precision.
Ball log_height(const IntPolynomial& minpoly, mpfr_prec_t prec,
                const PrecisionPolicy& policy = {});

namespace detail {
/// Height via validated simultaneous root enclosures (Aberth iteration plus
/// Weierstrass residual disks). Any degree in [1, 64].
Ball log_height_all_roots(const IntPolynomial& p, mpfr_prec_t prec,
                          const PrecisionPolicy& policy);
/// Height of a cubic via its isolated real root and the quadratic cofactor;
/// requires exactly one real root (negative discriminant of the cofactor).
/// Throws refine_needed if the cofactor turns out to have real roots.
Ball log_height_cubic(const IntPolynomial& p, mpfr_prec_t prec,
                      const PrecisionPolicy& policy);
/// Validated moduli of all complex roots (multiplicity-free polynomials).
std::vector<Ball> root_moduli(const IntPolynomial& p, mpfr_prec_t prec,
                              const PrecisionPolicy& policy);
}  // namespace detail

}  // namespace fibnar
