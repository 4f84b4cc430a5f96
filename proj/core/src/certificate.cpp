#include "fibnar/certificate.hpp"

#include "fibnar/reduction.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace fibnar {

using nlohmann::json;

BallRecord BallRecord::of(const Ball& b) {
    return {b.mid_hex(), b.rad_hex(), static_cast<long>(b.precision())};
}

Ball BallRecord::to_ball() const {
    return Ball::of_hex(mid, rad, static_cast<mpfr_prec_t>(prec));
}

// --- JSON bindings (object keys stay sorted, so bytes are deterministic) ---

void to_json(json& j, const BallRecord& r) {
    j = json{{"mid", r.mid}, {"prec", r.prec}, {"rad", r.rad}};
}
void from_json(const json& j, BallRecord& r) {
    j.at("mid").get_to(r.mid);
    j.at("rad").get_to(r.rad);
    j.at("prec").get_to(r.prec);
}

void to_json(json& j, const ReductionRecord& r) {
    j = json{{"A", r.A},
             {"B_kind", r.B_kind},
             {"M", r.M},
             {"convergent_index", r.convergent_index},
             {"epsilon", r.epsilon},
             {"exclusion_threshold", r.exclusion_threshold},
             {"k", r.k},
             {"precision", r.precision},
             {"q", r.q},
             {"skipped", r.skipped},
             {"tau_kind", r.tau_kind},
             {"u_bound", r.u_bound}};
}
void from_json(const json& j, ReductionRecord& r) {
    j.at("A").get_to(r.A);
    j.at("B_kind").get_to(r.B_kind);
    j.at("M").get_to(r.M);
    j.at("convergent_index").get_to(r.convergent_index);
    j.at("epsilon").get_to(r.epsilon);
    j.at("exclusion_threshold").get_to(r.exclusion_threshold);
    j.at("k").get_to(r.k);
    j.at("precision").get_to(r.precision);
    j.at("q").get_to(r.q);
    j.at("skipped").get_to(r.skipped);
    j.at("tau_kind").get_to(r.tau_kind);
    j.at("u_bound").get_to(r.u_bound);
}

void to_json(json& j, const SmallKEntry& e) {
    j = json{{"k", e.k}, {"m_cap", e.m_cap}, {"n_cap", e.n_cap}, {"reduction", e.reduction}};
}
void from_json(const json& j, SmallKEntry& e) {
    j.at("k").get_to(e.k);
    j.at("m_cap").get_to(e.m_cap);
    j.at("n_cap").get_to(e.n_cap);
    j.at("reduction").get_to(e.reduction);
}

void to_json(json& j, const SmallKStageRecord& s) {
    j = json{{"k_cap", s.k_cap},
             {"m_cap", s.m_cap},
             {"n_cap", s.n_cap},
             {"pass", s.pass},
             {"per_k", s.per_k}};
}
void from_json(const json& j, SmallKStageRecord& s) {
    j.at("k_cap").get_to(s.k_cap);
    j.at("m_cap").get_to(s.m_cap);
    j.at("n_cap").get_to(s.n_cap);
    j.at("pass").get_to(s.pass);
    j.at("per_k").get_to(s.per_k);
}

void to_json(json& j, const LargeKStageRecord& s) {
    j = json{{"chain", s.chain},
             {"pass", s.pass},
             {"pass1", s.pass1},
             {"pass1_M", s.pass1_M},
             {"pass1_k_cap", s.pass1_k_cap},
             {"pass2", s.pass2},
             {"pass2_M", s.pass2_M},
             {"pass2_k_cap", s.pass2_k_cap}};
}
void from_json(const json& j, LargeKStageRecord& s) {
    j.at("chain").get_to(s.chain);
    j.at("pass").get_to(s.pass);
    j.at("pass1").get_to(s.pass1);
    j.at("pass1_M").get_to(s.pass1_M);
    j.at("pass1_k_cap").get_to(s.pass1_k_cap);
    j.at("pass2").get_to(s.pass2);
    j.at("pass2_M").get_to(s.pass2_M);
    j.at("pass2_k_cap").get_to(s.pass2_k_cap);
}

void to_json(json& j, const Pow2Hit& h) {
    j = json{{"l", h.l}, {"m", h.m}};
}
void from_json(const json& j, Pow2Hit& h) {
    j.at("l").get_to(h.l);
    j.at("m").get_to(h.m);
}

void to_json(json& j, const Pow2StageRecord& s) {
    j = json{{"hits", s.hits}, {"m_max", s.m_max}, {"pass", s.pass}};
}
void from_json(const json& j, Pow2StageRecord& s) {
    j.at("hits").get_to(s.hits);
    j.at("m_max").get_to(s.m_max);
    j.at("pass").get_to(s.pass);
}

void to_json(json& j, const Solution& s) {
    j = json{{"k", s.k}, {"m", s.m}, {"n", s.n}, {"trivial", s.trivial},
             {"value", s.value.get_str()}};
}
void from_json(const json& j, Solution& s) {
    j.at("k").get_to(s.k);
    j.at("m").get_to(s.m);
    j.at("n").get_to(s.n);
    j.at("trivial").get_to(s.trivial);
    s.value = mpz_class(j.at("value").get<std::string>());
}

void to_json(json& j, const SearchStageRecord& s) {
    j = json{{"k_hi", s.k_hi},
             {"k_lo", s.k_lo},
             {"m_max", s.m_max},
             {"n_max", s.n_max},
             {"nontrivial", s.nontrivial},
             {"pass", s.pass}};
}
void from_json(const json& j, SearchStageRecord& s) {
    j.at("k_hi").get_to(s.k_hi);
    j.at("k_lo").get_to(s.k_lo);
    j.at("m_max").get_to(s.m_max);
    j.at("n_max").get_to(s.n_max);
    j.at("nontrivial").get_to(s.nontrivial);
    j.at("pass").get_to(s.pass);
}

void to_json(json& j, const ZetaSample& z) {
    j = json{{"k", z.k}, {"max_excess", z.max_excess}};
}
void from_json(const json& j, ZetaSample& z) {
    j.at("k").get_to(z.k);
    j.at("max_excess").get_to(z.max_excess);
}

void to_json(json& j, const CertificateConstants& c) {
    j = json{{"c_beta_abs", c.c_beta_abs},
             {"c_lambda", c.c_lambda},
             {"lambda", c.lambda},
             {"zeta_excess", c.zeta_excess}};
}
void from_json(const json& j, CertificateConstants& c) {
    j.at("c_beta_abs").get_to(c.c_beta_abs);
    j.at("c_lambda").get_to(c.c_lambda);
    j.at("lambda").get_to(c.lambda);
    j.at("zeta_excess").get_to(c.zeta_excess);
}

void to_json(json& j, const PipelineConfig& c) {
    j = json{{"cf_max_terms", c.cf_max_terms},
             {"parallelism", c.parallelism},
             {"pow2_m_max", c.pow2_m_max},
             {"prec_max", c.prec_max},
             {"prec_start", c.prec_start},
             {"search_k_hi_min", c.search_k_hi_min},
             {"search_m_max_min", c.search_m_max_min},
             {"search_n_max_min", c.search_n_max_min},
             {"small_k_hi", c.small_k_hi},
             {"small_k_lo", c.small_k_lo}};
}
void from_json(const json& j, PipelineConfig& c) {
    PipelineConfig d;
    c.cf_max_terms = j.value("cf_max_terms", d.cf_max_terms);
    c.parallelism = j.value("parallelism", d.parallelism);
    c.pow2_m_max = j.value("pow2_m_max", d.pow2_m_max);
    c.prec_max = j.value("prec_max", d.prec_max);
    c.prec_start = j.value("prec_start", d.prec_start);
    c.search_k_hi_min = j.value("search_k_hi_min", d.search_k_hi_min);
    c.search_m_max_min = j.value("search_m_max_min", d.search_m_max_min);
    c.search_n_max_min = j.value("search_n_max_min", d.search_n_max_min);
    c.small_k_hi = j.value("small_k_hi", d.small_k_hi);
    c.small_k_lo = j.value("small_k_lo", d.small_k_lo);
}

void to_json(json& j, const Certificate& c) {
    j = json{{"config", c.config},
             {"constants", c.constants},
             {"format", c.format},
             {"large_k", c.large_k},
             {"pow2", c.pow2},
             {"search", c.search},
             {"small_k", c.small_k},
             {"trivial_pairs", c.trivial_pairs},
             {"verdict", c.verdict},
             {"version", c.version}};
}
void from_json(const json& j, Certificate& c) {
    j.at("config").get_to(c.config);
    j.at("constants").get_to(c.constants);
    j.at("format").get_to(c.format);
    j.at("large_k").get_to(c.large_k);
    j.at("pow2").get_to(c.pow2);
    j.at("search").get_to(c.search);
    j.at("small_k").get_to(c.small_k);
    j.at("trivial_pairs").get_to(c.trivial_pairs);
    j.at("verdict").get_to(c.verdict);
    j.at("version").get_to(c.version);
}

std::string certificate_to_json(const Certificate& cert) {
    json j = cert;
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    return j.get<Certificate>();
}

void save_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_certificate: cannot open " + path);
    out << certificate_to_json(cert);
    if (!out) throw std::runtime_error("save_certificate: write failed for " + path);
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_certificate: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return certificate_from_json(ss.str());
}

std::string config_to_json(const PipelineConfig& cfg) {
    json j = cfg;
    return j.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    return j.get<PipelineConfig>();
}

ReductionRecord make_reduction_record(const ReductionOutcome& out, const std::string& tau_kind,
                                      long k, const mpz_class& M, const std::string& A,
                                      const std::string& B_kind) {
    ReductionRecord r;
    r.tau_kind = tau_kind;
    r.k = k;
    r.M = M.get_str();
    r.A = A;
    r.B_kind = B_kind;
    r.q = out.q.get_str();
    r.convergent_index = out.convergent_index;
    r.epsilon = BallRecord::of(out.epsilon);
    r.exclusion_threshold = BallRecord::of(out.exclusion_threshold);
    r.u_bound = out.u_bound.get_str();
    r.precision = static_cast<long>(out.precision_used);
    r.skipped = out.skipped;
    return r;
}

std::string to_json_string(const ReductionRecord& r) {
    return json(r).dump(2) + "\n";
}
std::string to_json_string(const SmallKStageRecord& s) {
    return json(s).dump(2) + "\n";
}
std::string to_json_string(const LargeKStageRecord& s) {
    return json(s).dump(2) + "\n";
}
std::string to_json_string(const std::vector<Solution>& list) {
    return json(list).dump(2) + "\n";
}
std::string to_json_string(const std::vector<Pow2Hit>& list) {
    return json(list).dump(2) + "\n";
}

}  // namespace fibnar
