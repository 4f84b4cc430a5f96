#include "fibnar/sequences.hpp"

namespace fibnar {

KFibStream::KFibStream(long k, long from) : k_(k), idx_(from) {
    if (k < 2) throw std::domain_error("KFibStream: k must be >= 2");
    if (from < -(k - 2)) throw std::domain_error("KFibStream: index below -(k-2)");
    // Window and running sum as they stand just before emitting index `from`.
    // All terms with index <= 0 are zero, so starting anywhere at or below 1
    // needs only a zero window.
    window_.assign(static_cast<size_t>(k), mpz_class(0));
    sum_ = 0;
    if (from > 1) {
        // Fast-forward from index 1.
        idx_ = 1;
        while (idx_ < from) next();
        // idx_ == from now; state is consistent.
    }
}

const mpz_class& KFibStream::next() {
    if (idx_ <= 0) {
        out_ = 0;
        ++idx_;
        return out_;
    }
    if (idx_ == 1) {
        out_ = 1;
    } else {
        out_ = sum_;
    }
    // Slide: evict F_{idx-k}, admit F_{idx}.
    sum_ -= window_[pos_];
    sum_ += out_;
    window_[pos_] = out_;
    pos_ = (pos_ + 1) % window_.size();
    ++idx_;
    return out_;
}

mpz_class k_fib(long k, long n) {
    KFibStream s(k, n);
    return s.next();
}

NarayanaStream::NarayanaStream(long from) : idx_(0) {
    if (from < 0) throw std::domain_error("NarayanaStream: negative index");
    // Roll the window (N_i, N_{i+1}, N_{i+2}) forward until i == from.
    w0_ = 0; w1_ = 1; w2_ = 1;  // N_0, N_1, N_2
    while (idx_ < from) {
        mpz_class d = w2_ + w0_;
        w0_ = w1_;
        w1_ = w2_;
        w2_ = d;
        ++idx_;
    }
}

const mpz_class& NarayanaStream::next() {
    out_ = w0_;
    mpz_class d = w2_ + w0_;
    w0_ = w1_;
    w1_ = w2_;
    w2_ = d;
    ++idx_;
    return out_;
}

mpz_class narayana(long m) {
    NarayanaStream s(m);
    return s.next();
}

}  // namespace fibnar
