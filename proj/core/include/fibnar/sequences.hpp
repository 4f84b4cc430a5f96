#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace fibnar {

/// Exact order-k Fibonacci number F_n^(k): the sum of the k previous terms,
/// with F_{-(k-2)} = ... = F_0 = 0 and F_1 = 1. Requires k >= 2 and
/// n >= -(k-2).
mpz_class k_fib(long k, long n);

/// Exact Narayana number N_m: N_m = N_{m-1} + N_{m-3} with N_0 = 0,
/// N_1 = N_2 = 1. Requires m >= 0.
mpz_class narayana(long m);

/// Lazily yields consecutive order-k Fibonacci terms from a start index,
/// keeping only the k-term sliding window and its running sum.
class KFibStream {
public:
    /// Requires k >= 2 and from >= -(k-2).
    KFibStream(long k, long from);

    long k() const { return k_; }
    /// Index of the value the next call to next() will return.
    long index() const { return idx_; }
    /// Value at the current index; the reference stays valid until the next
    /// call. Advances the stream.
    const mpz_class& next();

private:
    long k_;
    long idx_;
    std::vector<mpz_class> window_;  // ring buffer of the last k values
    size_t pos_ = 0;
    mpz_class sum_;
    mpz_class out_;
};

/// Lazily yields consecutive Narayana terms from a start index.
class NarayanaStream {
public:
    /// Requires from >= 0.
    explicit NarayanaStream(long from);

    long index() const { return idx_; }
    const mpz_class& next();

private:
    long idx_;
    mpz_class w0_, w1_, w2_;  // N_{idx-3}, N_{idx-2}, N_{idx-1}
    mpz_class out_;
};

}  // namespace fibnar
