#ifndef FILIFORM_CERTIFICATE_HPP
#define FILIFORM_CERTIFICATE_HPP

#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "filiform/json_io.hpp"

namespace filiform {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t residual_count = 0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/*
 * Self-contained verdict record. Witness payloads (derivation matrices,
 * two-forms, the affine structure itself) are embedded so every named check
 * can be recomputed from the certificate and the algebra alone.
 */
struct Certificate {
  std::string kind;     // "affine-synthesis" or "char-nilpotency"
  std::string verdict;  // success, NoStrategySucceeded, NotCharNilpotent, CharNilpotentLikely
  std::string algebra_hash;
  std::string algebra_name;
  std::string tool_version = kToolVersion;
  std::optional<std::string> strategy;
  io::json witnesses = io::json::object();
  std::vector<CheckResult> checks;
  io::json attempts = io::json::array();
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::optional<std::string> timestamp;

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline CheckResult count_check(std::string name, std::size_t residuals) {
  return {std::move(name), residuals == 0, residuals};
}

inline CheckResult bool_check(std::string name, bool ok) { return {std::move(name), ok, ok ? 0u : 1u}; }

inline std::size_t differing_entries(const AffineStructure& a, const AffineStructure& b) {
  if (a.dim() != b.dim()) return a.dim() * a.dim() * a.dim() + 1;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.gamma(i, j, k) != b.gamma(i, j, k)) ++count;
  return count;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// Recompute every check implied by (kind, verdict, strategy) from the witness payloads.
inline std::vector<CheckResult> run_certificate_checks(const LieAlgebra& a, const Certificate& cert) {
  using detail::bool_check;
  using detail::count_check;
  std::vector<CheckResult> checks;
  checks.push_back(count_check("jacobi", jacobi_report(a).size()));
  const io::json& w = cert.witnesses;

  if (cert.kind == "char-nilpotency") {
    if (cert.verdict == "NotCharNilpotent") {
      Matrix m = io::matrix_from_json(w.at("derivation"));
      checks.push_back(count_check("witness_is_derivation", is_derivation(a, m).size()));
      checks.push_back(bool_check("witness_not_nilpotent", !is_nilpotent(m)));
    }
    return checks;
  }
  if (cert.kind != "affine-synthesis" || cert.verdict != "success" || !cert.strategy) return checks;

  const AffineStructure structure = io::affine_from_json(w.at("structure"));
  std::optional<AffineStructure> rebuilt;
  const Strategy s = parse_strategy(*cert.strategy);
  if (s == Strategy::Regular || s == Strategy::DerivedRegular) {
    Matrix f = io::matrix_from_json(w.at("derivation"));
    auto violations = is_derivation(a, f);
    checks.push_back(count_check("witness_is_derivation", violations.size()));
    if (s == Strategy::Regular) {
      bool regular = violations.empty() && is_regular(f);
      checks.push_back(bool_check("witness_regular", regular));
      if (regular) rebuilt = from_regular_derivation(a, f);
    } else {
      bool regular = violations.empty() && is_regular(restrict_to_derived(a, f));
      checks.push_back(bool_check("witness_regular_on_derived", regular));
      if (regular) rebuilt = from_derived_regular(a, f);
    }
  } else if (s == Strategy::Symplectic) {
    TwoForm theta = io::two_form_from_json(w.at("two_form"));
    auto residual = dtheta_residual(a, theta);
    checks.push_back(count_check("two_form_closed", residual.size()));
    bool nondeg = nondegenerate(theta);
    checks.push_back(bool_check("two_form_nondegenerate", nondeg));
    if (residual.empty() && nondeg) rebuilt = from_symplectic(a, theta);
  }
  checks.push_back(count_check("structure_from_witness",
                               rebuilt ? detail::differing_entries(*rebuilt, structure) : 1));
  AffineReport report = verify_affine(a, structure);
  checks.push_back(count_check("torsion", report.torsion_violations.size()));
  checks.push_back(count_check("left_symmetry", report.leftsym_violations.size()));
  return checks;
}

inline Certificate certify(const LieAlgebra& a, const Synthesis& s, bool reproducible = true) {
  Certificate cert;
  cert.kind = "affine-synthesis";
  cert.algebra_hash = io::algebra_hash(a);
  cert.algebra_name = a.name();
  cert.seed = s.seed;
  cert.trials = s.trials;
  if (!reproducible) cert.timestamp = detail::utc_timestamp();
  for (const auto& at : s.attempts)
    cert.attempts.push_back({{"strategy", to_string(at.strategy)}, {"succeeded", at.succeeded}, {"reason", at.reason}});
  if (s.succeeded()) {
    cert.verdict = "success";
    cert.strategy = to_string(*s.strategy);
    if (s.derivation) cert.witnesses["derivation"] = io::to_json(*s.derivation);
    if (s.form) cert.witnesses["two_form"] = io::to_json(*s.form);
    cert.witnesses["structure"] = io::to_json(*s.structure);
  } else {
    cert.verdict = "NoStrategySucceeded";
    cert.notes.push_back(kSearchDisclaimer);
  }
  cert.checks = run_certificate_checks(a, cert);
  return cert;
}

inline Certificate certify(const LieAlgebra& a, const CharNilpVerdict& v, bool reproducible = true) {
  Certificate cert;
  cert.kind = "char-nilpotency";
  cert.verdict = to_string(v.kind);
  cert.algebra_hash = io::algebra_hash(a);
  cert.algebra_name = a.name();
  cert.seed = v.seed;
  cert.trials = v.trials;
  if (!reproducible) cert.timestamp = detail::utc_timestamp();
  if (v.witness) cert.witnesses["derivation"] = io::to_json(*v.witness);
  if (v.kind == CharNilpKind::CharNilpotentLikely)
    cert.notes.push_back("probabilistic: no non-nilpotent derivation among " +
                         std::to_string(v.deterministic_candidates) + " deterministic candidates and " +
                         std::to_string(v.trials) + " seeded combinations");
  cert.checks = run_certificate_checks(a, cert);
  return cert;
}

struct Reverification {
  bool hash_matches = false;
  std::vector<CheckResult> recorded;
  std::vector<CheckResult> recomputed;

  bool statuses_reproduced() const { return recorded == recomputed; }
  bool passed() const {
    if (!hash_matches || !statuses_reproduced()) return false;
    for (const auto& c : recomputed)
      if (!c.passed) return false;
    return true;
  }
};

/// Checks are only recomputed against the algebra the certificate names.
inline Reverification reverify(const LieAlgebra& a, const Certificate& cert) {
  Reverification r;
  r.hash_matches = io::algebra_hash(a) == cert.algebra_hash;
  r.recorded = cert.checks;
  if (r.hash_matches) r.recomputed = run_certificate_checks(a, cert);
  return r;
}

namespace io {

inline json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"residual_count", c.residual_count}};
}

inline json to_json(const Certificate& c) {
  json checks = json::array();
  for (const auto& ch : c.checks) checks.push_back(to_json(ch));
  json j{{"kind", c.kind},
         {"verdict", c.verdict},
         {"algebra_hash", c.algebra_hash},
         {"algebra_name", c.algebra_name},
         {"tool_version", c.tool_version},
         {"witnesses", c.witnesses},
         {"checks", checks},
         {"attempts", c.attempts},
         {"notes", c.notes},
         {"seed", c.seed},
         {"trials", c.trials}};
  j["strategy"] = c.strategy ? json(*c.strategy) : json(nullptr);
  if (c.timestamp) j["timestamp"] = *c.timestamp;
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  detail::reject_unknown_fields(j,
                                {"kind", "verdict", "algebra_hash", "algebra_name", "tool_version", "witnesses",
                                 "checks", "attempts", "notes", "seed", "trials", "strategy", "timestamp"},
                                "certificate");
  Certificate c;
  try {
    c.kind = j.at("kind").get<std::string>();
    c.verdict = j.at("verdict").get<std::string>();
    c.algebra_hash = j.at("algebra_hash").get<std::string>();
    c.algebra_name = j.value("algebra_name", std::string());
    c.tool_version = j.value("tool_version", std::string());
    c.witnesses = j.value("witnesses", json::object());
    c.attempts = j.value("attempts", json::array());
    c.notes = j.value("notes", std::vector<std::string>{});
    c.seed = j.value("seed", std::uint64_t{0});
    c.trials = j.value("trials", std::size_t{0});
    if (j.contains("strategy") && !j["strategy"].is_null()) c.strategy = j["strategy"].get<std::string>();
    if (j.contains("timestamp")) c.timestamp = j["timestamp"].get<std::string>();
    for (const auto& ch : j.at("checks")) {
      CheckResult r;
      r.name = ch.at("name").get<std::string>();
      r.passed = ch.at("status").get<std::string>() == "pass";
      r.residual_count = ch.at("residual_count").get<std::size_t>();
      c.checks.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate: ") + e.what());
  }
  return c;
}

}  // namespace io

}  // namespace filiform

#endif  // FILIFORM_CERTIFICATE_HPP
