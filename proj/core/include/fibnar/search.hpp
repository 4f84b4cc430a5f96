#pragma once

#include "fibnar/sequences.hpp"

#include <array>
#include <vector>

namespace fibnar {

/// One coincidence F_n^(k) = N_m = value. Trivial solutions are the index
/// pairs caused by the shared initial segment 0, 1, 1, 2 of both sequences:
/// (n, m) in {(0,0), (1,1), (1,2), (1,3), (2,1), (2,2), (2,3), (3,4)},
/// valid for every k.
struct Solution {
    long k = 0;
    long n = 0;
    long m = 0;
    mpz_class value;
    bool trivial = false;

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.k == b.k && a.n == b.n && a.m == b.m && a.value == b.value &&
               a.trivial == b.trivial;
    }
};

/// The trivial (n, m) index pairs, valid for every k >= 2.
const std::vector<std::array<long, 2>>& trivial_index_pairs();

/// Complete list of all coincidences F_n^(k) = N_m with k in [k_lo, k_hi],
/// 0 <= n <= n_max, 0 <= m <= m_max, found by a two-pointer merge over the
/// two monotone streams for each k (plateaus of equal values emit every index
/// pair). Exact integer comparisons throughout. Results are sorted by
/// (k, n, m) regardless of worker count.
std::vector<Solution> intersect_bruteforce(long k_lo, long k_hi, long n_max, long m_max,
                                           unsigned parallelism = 0);

/// Narayana numbers that are powers of two.
struct Pow2Hit {
    long m = 0;
    long l = 0;  // N_m = 2^l
    friend bool operator==(const Pow2Hit& a, const Pow2Hit& b) {
        return a.m == b.m && a.l == b.l;
    }
};

/// All m <= m_max with N_m = 2^l. The N_m = 1 = 2^0 entries (m = 1, 2, 3)
/// are reported only when include_unit_values is set.
std::vector<Pow2Hit> narayana_powers_of_two(long m_max, bool include_unit_values = false);

/// Outcome of checking a solution list against the expected nontrivial set
/// {(2,4,5) -> 3, (3,6,9) -> 13} and {(k,4,6) -> 4 : k >= 3} over the given
/// search box.
struct SolutionSetReport {
    bool pass = false;
    std::vector<Solution> nontrivial;               // what the search found
    std::vector<Solution> unexpected;               // found but not expected
    std::vector<std::array<long, 3>> missing;       // expected but not found
};

/// Checks a precomputed solution list (as produced by intersect_bruteforce
/// over the same box) against the expected set.
SolutionSetReport check_solution_set(const std::vector<Solution>& solutions, long k_lo,
                                     long k_hi, long n_max, long m_max);

/// Runs the exhaustive search over the box and checks the result.
SolutionSetReport verify_solution_set(long k_lo, long k_hi, long n_max, long m_max,
                                      unsigned parallelism = 0);

}  // namespace fibnar
