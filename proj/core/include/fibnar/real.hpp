#pragma once

#include "fibnar/ball.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

namespace fibnar {

/// Precision-doubling policy used by every "refine until decidable" loop.
struct PrecisionPolicy {
    mpfr_prec_t start = 256;
    mpfr_prec_t max = 16384;
};

/// A real number with certified error radius and on-demand refinement.
///
/// Values form a lazy expression DAG: eval(prec) recomputes the whole
/// subexpression at the requested working precision and returns a sound
/// enclosure. Nodes cache their highest-precision result, so repeated
/// evaluation at a precision already reached is free. All values are
/// immutable; eval is safe to call concurrently.
class AdaptiveReal {
public:
    using Evaluator = std::function<Ball(mpfr_prec_t)>;

    AdaptiveReal();  // exact zero
    static AdaptiveReal from_evaluator(Evaluator fn);
    static AdaptiveReal exact(long v);
    static AdaptiveReal exact(mpz_class v);
    static AdaptiveReal of_rational(mpq_class v);

    /// Certified enclosure computed with working precision >= prec.
    /// May throw refine_needed out of the underlying evaluator; callers
    /// inside decision loops catch it and retry at doubled precision.
    Ball eval(mpfr_prec_t prec) const;

    friend AdaptiveReal operator+(const AdaptiveReal&, const AdaptiveReal&);
    friend AdaptiveReal operator-(const AdaptiveReal&, const AdaptiveReal&);
    friend AdaptiveReal operator*(const AdaptiveReal&, const AdaptiveReal&);
    friend AdaptiveReal operator/(const AdaptiveReal&, const AdaptiveReal&);
    friend AdaptiveReal operator-(const AdaptiveReal&);

private:
    struct Node {
        Evaluator fn;
        mutable std::mutex mu;
        mutable std::optional<Ball> cache;
        mutable mpfr_prec_t cache_prec = 0;
    };
    std::shared_ptr<Node> node_;
};

AdaptiveReal log(const AdaptiveReal& x);
AdaptiveReal sqrt(const AdaptiveReal& x);
AdaptiveReal abs(const AdaptiveReal& x);
AdaptiveReal pow_i(const AdaptiveReal& x, long e);

/// Evaluates x at doubling precisions until accept(enclosure) holds.
/// refine_needed from the evaluator also triggers doubling. Throws
/// precision_exhausted when the policy cap is reached without acceptance.
Ball refine_until(const AdaptiveReal& x, const std::function<bool(const Ball&)>& accept,
                  const PrecisionPolicy& policy = {});

/// Certified sign (+1 or -1). Throws precision_exhausted if the enclosure
/// still straddles zero at the precision cap (the value may be zero).
int certified_sign(const AdaptiveReal& x, const PrecisionPolicy& policy = {});

}  // namespace fibnar
