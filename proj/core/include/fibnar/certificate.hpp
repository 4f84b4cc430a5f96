#pragma once

#include "fibnar/ball.hpp"
#include "fibnar/search.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace fibnar {

/// Exact serializable snapshot of a Ball (hex-float midpoint and radius plus
/// the working precision; round-trips bit-exactly).
struct BallRecord {
    std::string mid;
    std::string rad;
    long prec = 0;

    static BallRecord of(const Ball& b);
    Ball to_ball() const;
};

/// Everything needed to re-check one reduction: the linear-form ingredients
/// by name, the instance parameters as exact decimals, and the certified
/// outcome.
struct ReductionRecord {
    std::string tau_kind;  // "alpha-lambda" (per-k) or "lambda-log2"
    long k = 0;            // order for per-k forms, 0 otherwise
    std::string M;         // decimal integer
    std::string A;         // decimal constant
    std::string B_kind;    // "lambda" or "2"
    std::string q;         // decimal convergent denominator
    long convergent_index = -1;
    BallRecord epsilon;
    BallRecord exclusion_threshold;
    std::string u_bound;   // decimal integer
    long precision = 0;
    long skipped = 0;
};

struct SmallKEntry {
    long k = 0;
    ReductionRecord reduction;
    long m_cap = 0;
    long n_cap = 0;
};

struct SmallKStageRecord {
    std::vector<SmallKEntry> per_k;
    long m_cap = 0;
    long n_cap = 0;
    long k_cap = 0;
    bool pass = false;
};

struct LargeKStageRecord {
    std::map<std::string, double> chain;  // labeled bound-chain constants
    std::string pass1_M;
    ReductionRecord pass1;
    long pass1_k_cap = 0;
    std::string pass2_M;
    ReductionRecord pass2;
    long pass2_k_cap = 0;
    bool pass = false;
};

struct Pow2StageRecord {
    long m_max = 0;
    std::vector<Pow2Hit> hits;  // among m >= 4
    bool pass = false;
};

struct SearchStageRecord {
    long k_lo = 2;
    long k_hi = 0;
    long n_max = 0;
    long m_max = 0;
    std::vector<Solution> nontrivial;
    bool pass = false;
};

/// Empirical excess of F_n^(k) over 2^(n-2) just past the power-of-two
/// prefix: max |F_n/2^(n-2) - 1| over k+2 <= n <= k+40.
struct ZetaSample {
    long k = 0;
    double max_excess = 0;
};

struct CertificateConstants {
    BallRecord lambda;
    BallRecord c_lambda;
    BallRecord c_beta_abs;
    std::vector<ZetaSample> zeta_excess;
};

struct PipelineConfig {
    long small_k_lo = 2;
    long small_k_hi = 220;
    long prec_start = 256;
    long prec_max = 16384;
    long cf_max_terms = 600;
    unsigned parallelism = 0;  // 0: hardware concurrency
    long pow2_m_max = 10000;
    // Minimum exhaustive-search box; the pipeline widens it to dominate
    // every derived cap.
    long search_k_hi_min = 198;
    long search_n_max_min = 200;
    long search_m_max_min = 277;
};

struct Certificate {
    std::string format = "fibnar-certificate/1";
    std::string version;
    PipelineConfig config;
    CertificateConstants constants;
    std::vector<std::array<long, 2>> trivial_pairs;
    Pow2StageRecord pow2;
    SmallKStageRecord small_k;
    LargeKStageRecord large_k;
    SearchStageRecord search;
    bool verdict = false;
};

/// Deterministic serialization: object keys sorted, reals as exact hex
/// triples, no timestamps. Identical runs produce identical bytes.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);
void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

std::string config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const std::string& text);

/// Assembles the serializable record of a completed reduction (defined in
/// reduction.hpp).
struct ReductionOutcome;
ReductionRecord make_reduction_record(const ReductionOutcome& out,
                                      const std::string& tau_kind, long k,
                                      const mpz_class& M, const std::string& A,
                                      const std::string& B_kind);

// JSON text for CLI output (same deterministic formatting as certificates).
std::string to_json_string(const ReductionRecord& r);
std::string to_json_string(const SmallKStageRecord& s);
std::string to_json_string(const LargeKStageRecord& s);
std::string to_json_string(const std::vector<Solution>& list);
std::string to_json_string(const std::vector<Pow2Hit>& list);

}  // namespace fibnar
