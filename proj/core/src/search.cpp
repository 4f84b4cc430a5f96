#include "fibnar/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace fibnar {

const std::vector<std::array<long, 2>>& trivial_index_pairs() {
    static const std::vector<std::array<long, 2>> pairs = {
        {0, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 4}};
    return pairs;
}

namespace {

bool is_trivial_pair(long n, long m) {
    for (const auto& p : trivial_index_pairs())
        if (p[0] == n && p[1] == m) return true;
    return false;
}

// Run of consecutive indices sharing one value in a monotone stream.
struct Plateau {
    long first = 0;
    long last = 0;
    mpz_class value;
    bool exhausted = false;
};

template <typename Stream>
class PlateauReader {
public:
    PlateauReader(Stream s, long max_index) : s_(std::move(s)), max_(max_index) {
        advance();
    }

    const Plateau& current() const { return cur_; }

    void advance() {
        if (pending_done_) {
            cur_.exhausted = true;
            return;
        }
        if (!has_pending_) {
            if (s_.index() > max_) {
                cur_.exhausted = true;
                return;
            }
            pending_idx_ = s_.index();
            pending_val_ = s_.next();
            has_pending_ = true;
        }
        cur_.first = cur_.last = pending_idx_;
        cur_.value = pending_val_;
        cur_.exhausted = false;
        // Extend the plateau while the stream repeats the value.
        for (;;) {
            if (s_.index() > max_) {
                pending_done_ = true;
                break;
            }
            pending_idx_ = s_.index();
            pending_val_ = s_.next();
            if (pending_val_ == cur_.value) {
                cur_.last = pending_idx_;
            } else {
                break;
            }
        }
    }

private:
    Stream s_;
    long max_;
    Plateau cur_;
    long pending_idx_ = 0;
    mpz_class pending_val_;
    bool has_pending_ = false;
    bool pending_done_ = false;
};

std::vector<Solution> intersect_one_k(long k, long n_max, long m_max) {
    std::vector<Solution> out;
    PlateauReader<KFibStream> f(KFibStream(k, 0), n_max);
    PlateauReader<NarayanaStream> g(NarayanaStream(0), m_max);
    while (!f.current().exhausted && !g.current().exhausted) {
        const Plateau& a = f.current();
        const Plateau& b = g.current();
        int c = cmp(a.value, b.value);
        if (c == 0) {
            for (long n = a.first; n <= a.last; ++n) {
                for (long m = b.first; m <= b.last; ++m) {
                    Solution s;
                    s.k = k;
                    s.n = n;
                    s.m = m;
                    s.value = a.value;
                    s.trivial = is_trivial_pair(n, m);
                    out.push_back(std::move(s));
                }
            }
            f.advance();
            g.advance();
        } else if (c < 0) {
            f.advance();
        } else {
            g.advance();
        }
    }
    return out;
}

}  // namespace

std::vector<Solution> intersect_bruteforce(long k_lo, long k_hi, long n_max, long m_max,
                                           unsigned parallelism) {
    if (k_lo < 2 || k_lo > k_hi)
        throw std::domain_error("intersect_bruteforce: need 2 <= k_lo <= k_hi");
    if (n_max < 1 || m_max < 1)
        throw std::domain_error("intersect_bruteforce: need n_max, m_max >= 1");

    unsigned workers = parallelism ? parallelism : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(k_hi - k_lo + 1));

    std::vector<std::vector<Solution>> partial(static_cast<size_t>(k_hi - k_lo + 1));
    std::atomic<long> next_k{k_lo};
    auto work = [&] {
        for (;;) {
            long k = next_k.fetch_add(1);
            if (k > k_hi) return;
            partial[static_cast<size_t>(k - k_lo)] = intersect_one_k(k, n_max, m_max);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<Solution> out;
    for (auto& chunk : partial)
        out.insert(out.end(), std::make_move_iterator(chunk.begin()),
                   std::make_move_iterator(chunk.end()));
    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.n != b.n) return a.n < b.n;
        return a.m < b.m;
    });
    return out;
}

std::vector<Pow2Hit> narayana_powers_of_two(long m_max, bool include_unit_values) {
    if (m_max < 1) throw std::domain_error("narayana_powers_of_two: m_max must be >= 1");
    std::vector<Pow2Hit> out;
    NarayanaStream s(0);
    while (s.index() <= m_max) {
        long m = s.index();
        const mpz_class& v = s.next();
        if (v == 0) continue;
        // power of two <=> exactly one bit set
        if (mpz_popcount(v.get_mpz_t()) == 1) {
            long l = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) - 1;
            if (l == 0 && !include_unit_values) continue;
            out.push_back({m, l});
        }
    }
    return out;
}

SolutionSetReport check_solution_set(const std::vector<Solution>& solutions, long k_lo,
                                     long k_hi, long n_max, long m_max) {
    SolutionSetReport rep;
    for (const Solution& s : solutions)
        if (!s.trivial) rep.nontrivial.push_back(s);

    auto expected = [&](long k, long n, long m) {
        if (k == 2 && n == 4 && m == 5) return true;
        if (k == 3 && n == 6 && m == 9) return true;
        if (k >= 3 && n == 4 && m == 6) return true;
        return false;
    };
    for (const Solution& s : rep.nontrivial)
        if (!expected(s.k, s.n, s.m)) rep.unexpected.push_back(s);

    auto found = [&](long k, long n, long m) {
        for (const Solution& s : rep.nontrivial)
            if (s.k == k && s.n == n && s.m == m) return true;
        return false;
    };
    if (k_lo <= 2 && 2 <= k_hi && n_max >= 4 && m_max >= 5 && !found(2, 4, 5))
        rep.missing.push_back({2, 4, 5});
    if (k_lo <= 3 && 3 <= k_hi && n_max >= 6 && m_max >= 9 && !found(3, 6, 9))
        rep.missing.push_back({3, 6, 9});
    if (n_max >= 4 && m_max >= 6) {
        for (long k = std::max<long>(3, k_lo); k <= k_hi; ++k)
            if (!found(k, 4, 6)) rep.missing.push_back({k, 4, 6});
    }

    rep.pass = rep.unexpected.empty() && rep.missing.empty();
    return rep;
}

SolutionSetReport verify_solution_set(long k_lo, long k_hi, long n_max, long m_max,
                                      unsigned parallelism) {
    return check_solution_set(intersect_bruteforce(k_lo, k_hi, n_max, m_max, parallelism),
                              k_lo, k_hi, n_max, m_max);
}

}  // namespace fibnar
