#include "fibnar/polynomial.hpp"

#include <sstream>

namespace fibnar {

IntPolynomial::IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) {
    if (c_.empty()) c_.push_back(mpz_class(0));
    trim();
}

void IntPolynomial::trim() {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::parse(const std::string& csv) {
    std::vector<mpz_class> coeffs;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // trim whitespace
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::domain_error("IntPolynomial::parse: empty coefficient");
        coeffs.emplace_back(tok.substr(b, e - b + 1));
    }
    if (coeffs.empty()) throw std::domain_error("IntPolynomial::parse: no coefficients");
    return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::k_fibonacci_characteristic(long k) {
    if (k < 2) throw std::domain_error("k_fibonacci_characteristic: k must be >= 2");
    std::vector<mpz_class> c(static_cast<size_t>(k) + 1, mpz_class(-1));
    c.back() = 1;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::narayana_characteristic() {
    return IntPolynomial({mpz_class(-1), mpz_class(0), mpz_class(-1), mpz_class(1)});
}

IntPolynomial IntPolynomial::primitive_part() const {
    mpz_class g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) return *this;  // zero polynomial
    if (leading() < 0) g = -g;
    std::vector<mpz_class> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c / g);
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() == 0) return IntPolynomial();
    std::vector<mpz_class> out;
    out.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long>(i));
    return IntPolynomial(std::move(out));
}

mpq_class IntPolynomial::eval(const mpq_class& x) const {
    mpq_class acc(c_.back());
    for (size_t i = c_.size() - 1; i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

int IntPolynomial::sign_at(const mpq_class& x) const {
    return sgn(eval(x));
}

int IntPolynomial::sign_at_dyadic(const mpz_class& num, long exp2) const {
    if (exp2 < 0) throw std::domain_error("sign_at_dyadic: exp2 must be >= 0");
    // sign(p(num/2^exp2)) = sign(sum_i c_i num^i 2^(exp2*(d-i))) via Horner:
    // H_d = c_d; H_i = H_{i+1}*num + c_i * 2^(exp2*(d-i)).
    const auto d = c_.size() - 1;
    mpz_class acc(c_.back());
    mpz_class shifted;
    for (size_t i = d; i-- > 0;) {
        acc *= num;
        mpz_mul_2exp(shifted.get_mpz_t(), c_[i].get_mpz_t(),
                     static_cast<mp_bitcnt_t>(exp2) * static_cast<mp_bitcnt_t>(d - i));
        acc += shifted;
    }
    return sgn(acc);
}

Ball IntPolynomial::eval(const Ball& x) const {
    mpfr_prec_t p = x.precision();
    Ball acc = Ball::exact(c_.back(), p);
    for (size_t i = c_.size() - 1; i-- > 0;) {
        acc = acc * x + Ball::exact(c_[i], p);
    }
    return acc;
}

Mpf IntPolynomial::eval_approx(mpfr_srcptr x, mpfr_prec_t prec) const {
    Mpf acc(prec);
    mpfr_set_z(acc.get(), c_.back().get_mpz_t(), MPFR_RNDN);
    Mpf t(prec);
    for (size_t i = c_.size() - 1; i-- > 0;) {
        mpfr_mul(acc.get(), acc.get(), x, MPFR_RNDN);
        mpfr_set_z(t.get(), c_[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    }
    return acc;
}

std::string IntPolynomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeff(i);
        if (c == 0 && degree() > 0) continue;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class a = ::abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace fibnar
