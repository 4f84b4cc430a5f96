#include "fibnar/real.hpp"

#include <utility>

namespace fibnar {

AdaptiveReal::AdaptiveReal() : AdaptiveReal(exact(0L)) {}

AdaptiveReal AdaptiveReal::from_evaluator(Evaluator fn) {
    AdaptiveReal r;
    r.node_ = std::make_shared<Node>();
    r.node_->fn = std::move(fn);
    return r;
}

AdaptiveReal AdaptiveReal::exact(long v) {
    return from_evaluator([v](mpfr_prec_t p) { return Ball::exact(v, p); });
}

AdaptiveReal AdaptiveReal::exact(mpz_class v) {
    return from_evaluator([v = std::move(v)](mpfr_prec_t p) { return Ball::exact(v, p); });
}

AdaptiveReal AdaptiveReal::of_rational(mpq_class v) {
    return from_evaluator([v = std::move(v)](mpfr_prec_t p) { return Ball::of_rational(v, p); });
}

Ball AdaptiveReal::eval(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(node_->mu);
    if (node_->cache && node_->cache_prec >= prec) return *node_->cache;
    Ball b = node_->fn(prec);
    node_->cache = b;
    node_->cache_prec = prec;
    return b;
}

AdaptiveReal operator+(const AdaptiveReal& a, const AdaptiveReal& b) {
    return AdaptiveReal::from_evaluator(
        [a, b](mpfr_prec_t p) { return a.eval(p) + b.eval(p); });
}

AdaptiveReal operator-(const AdaptiveReal& a, const AdaptiveReal& b) {
    return AdaptiveReal::from_evaluator(
        [a, b](mpfr_prec_t p) { return a.eval(p) - b.eval(p); });
}

AdaptiveReal operator*(const AdaptiveReal& a, const AdaptiveReal& b) {
    return AdaptiveReal::from_evaluator(
        [a, b](mpfr_prec_t p) { return a.eval(p) * b.eval(p); });
}

AdaptiveReal operator/(const AdaptiveReal& a, const AdaptiveReal& b) {
    return AdaptiveReal::from_evaluator(
        [a, b](mpfr_prec_t p) { return a.eval(p) / b.eval(p); });
}

AdaptiveReal operator-(const AdaptiveReal& a) {
    return AdaptiveReal::from_evaluator([a](mpfr_prec_t p) { return -a.eval(p); });
}

AdaptiveReal log(const AdaptiveReal& x) {
    return AdaptiveReal::from_evaluator([x](mpfr_prec_t p) { return log(x.eval(p)); });
}

AdaptiveReal sqrt(const AdaptiveReal& x) {
    return AdaptiveReal::from_evaluator([x](mpfr_prec_t p) { return sqrt(x.eval(p)); });
}

AdaptiveReal abs(const AdaptiveReal& x) {
    return AdaptiveReal::from_evaluator([x](mpfr_prec_t p) { return abs(x.eval(p)); });
}

AdaptiveReal pow_i(const AdaptiveReal& x, long e) {
    return AdaptiveReal::from_evaluator([x, e](mpfr_prec_t p) { return pow_i(x.eval(p), e); });
}

Ball refine_until(const AdaptiveReal& x, const std::function<bool(const Ball&)>& accept,
                  const PrecisionPolicy& policy) {
    for (mpfr_prec_t p = policy.start; p <= policy.max; p *= 2) {
        try {
            Ball b = x.eval(p);
            if (accept(b)) return b;
        } catch (const refine_needed&) {
            // widen and retry
        }
    }
    throw precision_exhausted("refine_until: no decision up to " +
                              std::to_string(policy.max) + " bits");
}

int certified_sign(const AdaptiveReal& x, const PrecisionPolicy& policy) {
    Ball b = refine_until(
        x, [](const Ball& c) { return c.surely_positive() || c.surely_negative(); }, policy);
    return b.surely_positive() ? 1 : -1;
}

}  // namespace fibnar
