#pragma once

#include "fibnar/certificate.hpp"

namespace fibnar {

/// Per-k reduction over the configured small-k range. Aggregates the m cap,
/// derives the n cap through the certified per-k root ratio, and the k cap
/// through k <= n - 2. Throws reduction_failed (with the failing k in the
/// message) if any reduction cannot be certified.
SmallKStageRecord run_small_k_stage(const PipelineConfig& cfg);

/// Absolute-bound chain plus two reduction passes for the k > 220 regime.
/// Passes iff the final k cap falls below the small-k threshold, closing the
/// case by contradiction.
LargeKStageRecord run_large_k_stage(const PipelineConfig& cfg);

/// Exhaustive power-of-two scan of the Narayana sequence.
Pow2StageRecord run_pow2_stage(const PipelineConfig& cfg);

/// Exhaustive search over a box dominating both the configured minimums and
/// the supplied derived caps.
SearchStageRecord run_search_stage(const PipelineConfig& cfg, long k_cap, long n_cap,
                                   long m_cap);

/// Full pipeline: constants, power-of-two branch, both stages, final search,
/// verdict.
Certificate run_pipeline(const PipelineConfig& cfg);

struct VerifyResult {
    bool ok = false;
    std::string first_failure;  // empty when ok
};

/// Re-derives every recorded quantity from the recorded exact inputs and
/// precision policy: continued-fraction convergents, epsilon signs, bound
/// inequalities, the exhaustive searches, and all aggregates. Any mismatch
/// fails, naming the first offending record.
VerifyResult verify_certificate(const Certificate& cert);
VerifyResult verify_certificate_file(const std::string& path);

}  // namespace fibnar
