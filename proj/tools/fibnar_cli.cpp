// fibnar: certified search for order-k Fibonacci numbers in the Narayana
// sequence. Subcommands cover sequence generation, certified constants,
// bound evaluation, continued-fraction reduction, exhaustive search, and the
// full proof pipeline with certificate emission and verification.

#include <CLI11.hpp>

#include "fibnar/algebraic.hpp"
#include "fibnar/bounds.hpp"
#include "fibnar/pipeline.hpp"
#include "fibnar/reduction.hpp"
#include "fibnar/search.hpp"
#include "fibnar/sequences.hpp"
#include "fibnar/version.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fibnar;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_pipeline_run(const std::string& config_path, const std::string& out_path) {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = config_from_json(read_file(config_path));
    std::cerr << "pipeline: power-of-two scan to m <= " << cfg.pow2_m_max << "\n";
    Certificate cert = run_pipeline(cfg);
    std::cerr << "pipeline: small-k m cap " << cert.small_k.m_cap << ", n cap "
              << cert.small_k.n_cap << ", k cap " << cert.small_k.k_cap << "\n";
    std::cerr << "pipeline: large-k pass-1 cap " << cert.large_k.pass1_k_cap
              << ", pass-2 cap " << cert.large_k.pass2_k_cap << "\n";
    std::cerr << "pipeline: search box k<=" << cert.search.k_hi << " n<=" << cert.search.n_max
              << " m<=" << cert.search.m_max << ", " << cert.search.nontrivial.size()
              << " nontrivial solutions\n";
    if (!out_path.empty()) {
        save_certificate(cert, out_path);
        std::cerr << "pipeline: certificate written to " << out_path << "\n";
    } else {
        std::cout << certificate_to_json(cert);
    }
    std::cerr << "pipeline: verdict " << (cert.verdict ? "pass" : "FAIL") << "\n";
    return cert.verdict ? 0 : 1;
}

int cmd_pipeline_verify(const std::string& path) {
    VerifyResult res = verify_certificate_file(path);
    if (res.ok) {
        std::cout << "verified: pass\n";
        return 0;
    }
    std::cout << "verification failed: " << res.first_failure << "\n";
    return 1;
}

Ball parse_ball_arg(const std::string& s) { return Ball::of_decimal(s, 128); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"validated search for order-k Fibonacci numbers that are Narayana numbers"};
    app.set_version_flag("--version", FIBNAR_VERSION);
    app.require_subcommand(1);

    // --- seq ---
    auto* seq = app.add_subcommand("seq", "exact sequence terms");
    seq->require_subcommand(1);
    long seq_k = 2, seq_n = 0, seq_m = 0;
    auto* seq_kfib = seq->add_subcommand("kfib", "order-k Fibonacci term");
    seq_kfib->add_option("--k", seq_k, "recurrence order (>= 2)")->required();
    seq_kfib->add_option("--n", seq_n, "index (>= -(k-2))")->required();
    auto* seq_nar = seq->add_subcommand("narayana", "Narayana term");
    seq_nar->add_option("--m", seq_m, "index (>= 0)")->required();

    // --- root / height ---
    auto* root = app.add_subcommand("root", "certified dominant roots");
    root->require_subcommand(1);
    long root_k = 2;
    long root_prec = 128;
    auto* root_alpha = root->add_subcommand("alpha", "dominant root of the order-k recurrence");
    root_alpha->add_option("--k", root_k, "recurrence order")->required();
    root_alpha->add_option("--prec", root_prec, "target precision in bits");
    auto* root_lambda = root->add_subcommand("lambda", "dominant root of x^3 - x^2 - 1");
    root_lambda->add_option("--prec", root_prec, "target precision in bits");

    auto* height = app.add_subcommand("height", "logarithmic height from a minimal polynomial");
    std::string height_poly;
    long height_prec = 128;
    height->add_option("--minpoly", height_poly, "coefficients c0,c1,... (ascending)")
        ->required();
    height->add_option("--prec", height_prec, "target precision in bits");

    // --- bounds ---
    auto* bounds = app.add_subcommand("bounds", "absolute index bounds");
    bounds->require_subcommand(1);
    long bounds_k = 2;
    auto* bounds_small = bounds->add_subcommand("small-k", "bound chain for a fixed order k");
    bounds_small->add_option("--k", bounds_k, "recurrence order")->required();
    bounds->add_subcommand("large-k", "absolute bound chain for the k > 220 regime");

    // --- reduce ---
    auto* reduce = app.add_subcommand("reduce", "continued-fraction reduction");
    std::string reduce_tau = "lambda-log2";
    std::string reduce_mu_kind = "large-k";
    std::string reduce_M = "1";
    std::string reduce_A, reduce_B;
    long reduce_terms = 600;
    reduce->add_option("--tau", reduce_tau, "lambda-log2 | alpha-lambda:K");
    reduce->add_option("--mu-kind", reduce_mu_kind, "small-k | large-k");
    reduce->add_option("--M", reduce_M, "decimal bound M (arbitrary size)")->required();
    reduce->add_option("--A", reduce_A, "constant A (default per mu-kind)");
    reduce->add_option("--B", reduce_B, "constant B (default per mu-kind)");
    reduce->add_option("--max-terms", reduce_terms, "continued-fraction term budget");

    // --- search ---
    auto* search = app.add_subcommand("search", "exact exhaustive search");
    search->require_subcommand(1);
    long s_klo = 2, s_khi = 198, s_nmax = 200, s_mmax = 277, s_pow2_mmax = 10000;
    auto* search_int = search->add_subcommand("intersect", "all coincidences in a box");
    search_int->add_option("--k-lo", s_klo, "lowest order");
    search_int->add_option("--k-hi", s_khi, "highest order");
    search_int->add_option("--n-max", s_nmax, "largest n");
    search_int->add_option("--m-max", s_mmax, "largest m");
    auto* search_pow2 = search->add_subcommand("pow2", "powers of two in the Narayana sequence");
    search_pow2->add_option("--m-max", s_pow2_mmax, "largest m");

    // --- pipeline ---
    auto* pipeline = app.add_subcommand("pipeline", "full proof pipeline and certificates");
    pipeline->require_subcommand(1);
    std::string pl_config, pl_out, pl_cert;
    auto* pl_run = pipeline->add_subcommand("run", "run all stages and emit a certificate");
    pl_run->add_option("--config", pl_config, "pipeline config JSON");
    pl_run->add_option("--out", pl_out, "certificate output path (stdout if omitted)");
    auto* pl_verify = pipeline->add_subcommand("verify", "re-check an emitted certificate");
    pl_verify->add_option("certificate", pl_cert, "certificate path")->required();
    auto* pl_small = pipeline->add_subcommand("small-k", "run only the small-k stage");
    pl_small->add_option("--config", pl_config, "pipeline config JSON");
    auto* pl_large = pipeline->add_subcommand("large-k", "run only the large-k stage");
    pl_large->add_option("--config", pl_config, "pipeline config JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (seq_kfib->parsed()) {
            std::cout << k_fib(seq_k, seq_n).get_str() << "\n";
            return 0;
        }
        if (seq_nar->parsed()) {
            std::cout << narayana(seq_m).get_str() << "\n";
            return 0;
        }
        if (root_alpha->parsed()) {
            std::cout << dominant_root_alpha(root_k, static_cast<mpfr_prec_t>(root_prec))
                             .str(static_cast<size_t>(root_prec) / 3 + 2)
                      << "\n";
            return 0;
        }
        if (root_lambda->parsed()) {
            std::cout << lambda_algebraic()
                             .refine(static_cast<mpfr_prec_t>(root_prec))
                             .str(static_cast<size_t>(root_prec) / 3 + 2)
                      << "\n";
            return 0;
        }
        if (height->parsed()) {
            IntPolynomial p = IntPolynomial::parse(height_poly);
            std::cout << log_height(p, static_cast<mpfr_prec_t>(height_prec))
                             .str(static_cast<size_t>(height_prec) / 3 + 2)
                      << "\n";
            return 0;
        }
        if (bounds_small->parsed()) {
            BoundChainReport rep = small_k_absolute_bounds(bounds_k);
            std::cout << "{\n  \"k\": " << rep.k << ",\n  \"n_bound\": " << rep.n_bound
                      << ",\n  \"n_bound_published\": " << rep.n_bound_published
                      << ",\n  \"n_bound_derived\": " << rep.n_bound_derived
                      << ",\n  \"m_bound\": " << rep.m_bound
                      << ",\n  \"M\": \"" << rep.n_bound_int.get_str() << "\"\n}\n";
            return 0;
        }
        if (bounds->get_subcommand("large-k")->parsed()) {
            BoundChainReport rep = large_k_absolute_bounds();
            std::cout << "{\n  \"k_bound\": " << rep.k_bound
                      << ",\n  \"k_bound_published\": " << rep.k_bound_published
                      << ",\n  \"k_bound_derived\": " << rep.k_bound_derived
                      << ",\n  \"n_bound\": " << rep.n_bound
                      << ",\n  \"m_bound\": " << rep.m_bound
                      << ",\n  \"M\": \"" << rep.m_bound_int.get_str() << "\"\n}\n";
            return 0;
        }
        if (reduce->parsed()) {
            ReductionProblem prob;
            long k = 0;
            if (reduce_tau == "lambda-log2") {
                prob.tau = large_k_tau();
            } else if (reduce_tau.rfind("alpha-lambda:", 0) == 0) {
                k = std::stol(reduce_tau.substr(13));
                prob.tau = small_k_tau(k);
            } else {
                throw std::domain_error("unknown --tau: " + reduce_tau);
            }
            std::string a_str, b_kind;
            if (reduce_mu_kind == "small-k") {
                if (k < 2) throw std::domain_error("--mu-kind small-k needs --tau alpha-lambda:K");
                prob.mu = small_k_mu(k);
                a_str = reduce_A.empty() ? "10.5" : reduce_A;
                prob.B = reduce_B.empty() ? lambda_algebraic().refine(256)
                                          : parse_ball_arg(reduce_B);
                b_kind = reduce_B.empty() ? "lambda" : reduce_B;
            } else if (reduce_mu_kind == "large-k") {
                prob.mu = large_k_mu();
                a_str = reduce_A.empty() ? "6" : reduce_A;
                prob.B = reduce_B.empty() ? Ball::exact(2L, 64) : parse_ball_arg(reduce_B);
                b_kind = reduce_B.empty() ? "2" : reduce_B;
            } else {
                throw std::domain_error("unknown --mu-kind: " + reduce_mu_kind);
            }
            prob.A = parse_ball_arg(a_str);
            prob.M = mpz_class(reduce_M);
            prob.max_terms = reduce_terms;
            ReductionOutcome out = baker_davenport(prob);
            std::cout << to_json_string(
                make_reduction_record(out, reduce_tau, k, prob.M, a_str, b_kind));
            return 0;
        }
        if (search_int->parsed()) {
            std::cout << to_json_string(intersect_bruteforce(s_klo, s_khi, s_nmax, s_mmax));
            return 0;
        }
        if (search_pow2->parsed()) {
            std::cout << to_json_string(narayana_powers_of_two(s_pow2_mmax));
            return 0;
        }
        if (pl_run->parsed()) return cmd_pipeline_run(pl_config, pl_out);
        if (pl_verify->parsed()) return cmd_pipeline_verify(pl_cert);
        if (pl_small->parsed()) {
            PipelineConfig cfg;
            if (!pl_config.empty()) cfg = config_from_json(read_file(pl_config));
            SmallKStageRecord stage = run_small_k_stage(cfg);
            std::cout << to_json_string(stage);
            return stage.pass ? 0 : 1;
        }
        if (pl_large->parsed()) {
            PipelineConfig cfg;
            if (!pl_config.empty()) cfg = config_from_json(read_file(pl_config));
            LargeKStageRecord stage = run_large_k_stage(cfg);
            std::cout << to_json_string(stage);
            return stage.pass ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
