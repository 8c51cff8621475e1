// Command-line front end. Every invocation prints one JSON document.
//
// Exit codes: 0 success / pass, 1 checked-and-failed (a mathematical
// negative verdict), 2 usage or I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "filiform/filiform.hpp"

namespace {

using filiform::io::json;
using namespace filiform;

constexpr int kPass = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct AlgebraSource {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::string> lambdas;
  std::string t = "0";
  std::string file;
};

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = kDefaultTrials;
  std::string out;
  bool reproducible = false;
};

json read_json(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

FamilyParams family_params(const AlgebraSource& src) {
  FamilyParams p;
  p.family = parse_family(src.family);
  p.n = src.n;
  p.k = src.k;
  for (const auto& l : src.lambdas) p.lambdas.push_back(Rational::parse(l));
  p.t = Rational::parse(src.t);
  if (p.family == Family::Benoist) p.n = 11;
  else if (p.n == 0) throw Error(ErrorKind::BadDimension, "--n is required for family " + src.family);
  return p;
}

LieAlgebra load_algebra(const AlgebraSource& src) {
  if (!src.family.empty()) {
    if (!src.file.empty()) throw Error(ErrorKind::Parse, "give either --family or --algebra, not both");
    return build(family_params(src)).algebra;
  }
  return io::algebra_from_json(read_json(src.file));
}

void add_source_options(CLI::App* cmd, AlgebraSource& src) {
  cmd->add_option("--family", src.family, "Ln, Qn, QnZ, Ank, Bnk, Cn, Benoist");
  cmd->add_option("--n", src.n, "dimension");
  cmd->add_option("--k", src.k, "shift parameter (Ank, Bnk)");
  cmd->add_option("--lambda", src.lambdas, "lambda parameter, repeatable, e.g. 1 or -3/2");
  cmd->add_option("--t", src.t, "Benoist parameter (rational)");
  cmd->add_option("--algebra", src.file, "algebra JSON file ('-' or omitted: standard input)");
}

json algebra_header(const LieAlgebra& a) {
  return {{"algebra", a.name()}, {"algebra_hash", io::algebra_hash(a)}};
}

int emit(const json& payload, const Common& common) {
  const std::string text = payload.dump(2) + "\n";
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(common.out);
    if (!out) throw Error(ErrorKind::Parse, "cannot write '" + common.out + "'");
    out << text;
  }
  return kPass;
}

json echo_search(const Common& c) { return {{"seed", c.seed}, {"trials", c.trials}}; }

// ---------------------------------------------------------------------------

int catalog_list(const Common& common) {
  json families = json::array({
      {{"family", "Ln"}, {"params", "--n (>= 3)"}},
      {{"family", "Qn"}, {"params", "--n (even, >= 6); Y-presentation"}},
      {{"family", "QnZ"}, {"params", "--n (even, >= 6); adapted Z-presentation"}},
      {{"family", "Ank"}, {"params", "--n --k (2 <= k <= n-3) --lambda x (t-1 times, t = floor((n-k+1)/2))"}},
      {{"family", "Bnk"}, {"params", "--n (even) --k --lambda x (t-1 times, t = floor((n-k)/2))"}},
      {{"family", "Cn"}, {"params", "--n (= 2m+2) --lambda x (m-1 times)"}},
      {{"family", "Benoist"}, {"params", "--t (rational); dimension 11"}},
  });
  return emit({{"command", "catalog list"}, {"families", families}}, common);
}

int catalog_show(const AlgebraSource& src, const Common& common) {
  if (src.family.empty()) throw Error(ErrorKind::Parse, "catalog show requires --family");
  FamilyMember member = build(family_params(src));
  if (!member.jacobi.empty())
    std::cerr << "warning: parameters violate the Jacobi identity on " << member.jacobi.size()
              << " basis triples (see 'verify jacobi')\n";
  return emit(io::to_json(member.algebra), common);
}

int verify_jacobi(const LieAlgebra& a, const Common& common) {
  auto report = jacobi_report(a);
  json out = algebra_header(a);
  out["command"] = "verify jacobi";
  out["passed"] = report.empty();
  out["violations"] = io::to_json(report);
  emit(out, common);
  return report.empty() ? kPass : kNegative;
}

int verify_series(const LieAlgebra& a, const Common& common, bool filiform_check) {
  auto jacobi = jacobi_report(a);
  json out = algebra_header(a);
  out["command"] = filiform_check ? "verify filiform" : "verify nilpotent";
  out["jacobi_violations"] = jacobi.size();
  if (!jacobi.empty()) {
    out["passed"] = false;
    out["reason"] = "not a Lie algebra";
    emit(out, common);
    return kNegative;
  }
  auto series = lower_central_series(a);
  bool nilpotent = series.back().dim() == 0;
  bool filiform = is_filiform(a);
  out["series_dims"] = series_dims(series);
  out["nilpotent"] = nilpotent;
  out["filiform"] = filiform;
  bool passed = filiform_check ? filiform : nilpotent;
  out["passed"] = passed;
  emit(out, common);
  return passed ? kPass : kNegative;
}

int der_space(const LieAlgebra& a, const Common& common) {
  auto space = derivation_space(a);
  json basis = json::array();
  for (const auto& m : space.basis) basis.push_back(io::to_json(m));
  json out = algebra_header(a);
  out["command"] = "der space";
  out["dim"] = space.dim();
  out["basis"] = basis;
  return emit(out, common);
}

int der_diag(const LieAlgebra& a, const Common& common) {
  auto weights = diagonal_derivations(a);
  json basis = json::array();
  for (const auto& w : weights.basis()) basis.push_back(io::to_json(w));
  json out = algebra_header(a);
  out["command"] = "der diag";
  out["dim"] = weights.dim();
  out["basis"] = basis;
  return emit(out, common);
}

int der_regular(const LieAlgebra& a, const Common& common, bool derived) {
  auto space = derivation_space(a);
  auto found = derived ? find_derived_regular_derivation(space, common.seed, common.trials)
                       : find_regular_derivation(space, common.seed, common.trials);
  json out = algebra_header(a);
  out.update(echo_search(common));
  out["command"] = derived ? "der derived-regular" : "der regular";
  out["found"] = found.has_value();
  if (found) {
    out["derivation"] = io::to_json(*found);
    if (derived) {
      Matrix r = restrict_to_derived(a, *found);
      out["restriction"] = io::to_json(r);
      out["restriction_determinant"] = determinant(r).to_string();
    } else {
      out["determinant"] = determinant(*found).to_string();
    }
  } else {
    out["note"] = kSearchDisclaimer;
  }
  emit(out, common);
  return found ? kPass : kNegative;
}

int der_char_nilp(const LieAlgebra& a, const Common& common) {
  auto verdict = char_nilpotent_verdict(a, common.seed, common.trials);
  return emit(io::to_json(certify(a, verdict, common.reproducible)), common);
}

int der_torus(const LieAlgebra& a, const AlgebraSource& src, const std::string& maps_file, const Common& common) {
  std::vector<Matrix> maps;
  if (!maps_file.empty()) {
    json j = read_json(maps_file);
    if (!j.is_array()) throw Error(ErrorKind::Parse, "--maps expects a JSON array of matrices");
    for (const auto& m : j) maps.push_back(io::matrix_from_json(m));
  } else {
    if (src.family.empty()) throw Error(ErrorKind::Parse, "der torus needs --maps or a catalog --family");
    maps = standard_torus(parse_family(src.family), a.dim());
  }
  auto report = verify_torus(a, maps);
  json out = algebra_header(a);
  out["command"] = "der torus";
  json mj = json::array();
  for (const auto& m : maps) mj.push_back(io::to_json(m));
  out["maps"] = mj;
  out["report"] = io::to_json(report);
  out["passed"] = report.passed();
  emit(out, common);
  return report.passed() ? kPass : kNegative;
}

json reverification_json(const Reverification& r) {
  json recorded = json::array();
  for (const auto& c : r.recorded) recorded.push_back(io::to_json(c));
  json recomputed = json::array();
  for (const auto& c : r.recomputed) recomputed.push_back(io::to_json(c));
  return {{"hash_matches", r.hash_matches},
          {"statuses_reproduced", r.statuses_reproduced()},
          {"recorded", recorded},
          {"recomputed", recomputed},
          {"passed", r.passed()}};
}

int der_verify_witness(const LieAlgebra& a, const std::string& cert_file, const Common& common) {
  if (cert_file.empty()) throw Error(ErrorKind::Parse, "der verify-witness requires --certificate");
  Certificate cert = io::certificate_from_json(read_json(cert_file));
  auto r = reverify(a, cert);
  json out = algebra_header(a);
  out["command"] = "der verify-witness";
  out["certificate_kind"] = cert.kind;
  out["verdict"] = cert.verdict;
  out["reverification"] = reverification_json(r);
  out["passed"] = r.passed();
  emit(out, common);
  return r.passed() ? kPass : kNegative;
}

int affine_synth(const LieAlgebra& a, const std::string& strategy, const Common& common) {
  auto s = synthesize(a, parse_strategy(strategy), common.seed, common.trials);
  emit(io::to_json(certify(a, s, common.reproducible)), common);
  return s.succeeded() ? kPass : kNegative;
}

int affine_verify(const LieAlgebra& a, const std::string& structure_file, const Common& common) {
  if (structure_file.empty()) throw Error(ErrorKind::Parse, "affine verify requires --structure");
  json doc = read_json(structure_file);
  json out = algebra_header(a);
  out["command"] = "affine verify";
  bool passed = true;
  AffineStructure structure;
  if (doc.contains("kind")) {
    Certificate cert = io::certificate_from_json(doc);
    if (!cert.witnesses.contains("structure"))
      throw Error(ErrorKind::Parse, "certificate carries no affine structure");
    auto r = reverify(a, cert);
    out["reverification"] = reverification_json(r);
    passed = r.passed();
    structure = io::affine_from_json(cert.witnesses["structure"]);
    if (!r.hash_matches) {
      out["passed"] = false;
      emit(out, common);
      return kNegative;
    }
  } else {
    structure = io::affine_from_json(doc);
  }
  auto report = verify_affine(a, structure);
  out["report"] = io::to_json(report);
  passed = passed && report.passed();
  out["passed"] = passed;
  emit(out, common);
  return passed ? kPass : kNegative;
}

int affine_symplectic_find(const LieAlgebra& a, const Common& common) {
  auto form = find_symplectic(a, common.seed, common.trials);
  json out = algebra_header(a);
  out.update(echo_search(common));
  out["command"] = "affine symplectic-find";
  out["closed_forms_dim"] = a.dim() % 2 == 1 ? 0 : closed_two_forms(a).size();
  out["found"] = form.has_value();
  if (form) out["two_form"] = io::to_json(*form);
  else out["note"] = a.dim() % 2 == 1 ? "odd dimension" : kSearchDisclaimer;
  emit(out, common);
  return form ? kPass : kNegative;
}

int io_validate(const std::string& kind, const std::string& file, const Common& common) {
  json doc = read_json(file);
  json out{{"command", "io validate"}, {"kind", kind}};
  try {
    if (kind == "algebra") {
      auto a = io::algebra_from_json(doc);
      out["dim"] = a.dim();
      out["algebra_hash"] = io::algebra_hash(a);
    } else if (kind == "two-form") {
      out["dim"] = io::two_form_from_json(doc).dim();
    } else if (kind == "structure") {
      out["dim"] = io::affine_from_json(doc).dim();
    } else if (kind == "certificate") {
      out["verdict"] = io::certificate_from_json(doc).verdict;
    } else if (kind == "matrix") {
      auto m = io::matrix_from_json(doc);
      out["rows"] = m.rows();
      out["cols"] = m.cols();
    } else {
      throw Error(ErrorKind::Parse, "unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    out["valid"] = false;
    out["error"] = e.what();
    emit(out, common);
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  out["valid"] = true;
  return emit(out, common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for filiform Lie algebras, derivations and affine structures"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--trials", common.trials, "random trials per search")->capture_default_str();
  app.add_option("--out", common.out, "write the JSON payload to FILE instead of standard output");
  app.add_flag("--reproducible", common.reproducible, "omit the timestamp field");

  AlgebraSource src;
  std::string strategy = "auto";
  std::string maps_file;
  std::string certificate_file;
  std::string structure_file;
  std::string kind;
  std::string file;

  auto* catalog = app.add_subcommand("catalog", "catalog access")->require_subcommand(1);
  auto* catalog_list_cmd = catalog->add_subcommand("list", "list families");
  auto* catalog_show_cmd = catalog->add_subcommand("show", "print an algebra as JSON");
  add_source_options(catalog_show_cmd, src);

  auto* verify = app.add_subcommand("verify", "axiom and series checks")->require_subcommand(1);
  auto* verify_jacobi_cmd = verify->add_subcommand("jacobi", "Jacobi identity on all basis triples");
  auto* verify_filiform_cmd = verify->add_subcommand("filiform", "filiformity of the lower central series");
  auto* verify_nilpotent_cmd = verify->add_subcommand("nilpotent", "nilpotency");
  for (auto* c : {verify_jacobi_cmd, verify_filiform_cmd, verify_nilpotent_cmd}) add_source_options(c, src);

  auto* der = app.add_subcommand("der", "derivation analysis")->require_subcommand(1);
  auto* der_space_cmd = der->add_subcommand("space", "basis of Der(g)");
  auto* der_diag_cmd = der->add_subcommand("diag", "diagonal derivations (weight vectors)");
  auto* der_regular_cmd = der->add_subcommand("regular", "search for an invertible derivation");
  auto* der_derived_cmd = der->add_subcommand("derived-regular", "search for a derivation regular on D(g)");
  auto* der_char_cmd = der->add_subcommand("char-nilp", "characteristic nilpotency verdict");
  auto* der_torus_cmd = der->add_subcommand("torus", "verify a torus of derivations");
  auto* der_witness_cmd = der->add_subcommand("verify-witness", "re-verify a certificate's witnesses");
  for (auto* c : {der_space_cmd, der_diag_cmd, der_regular_cmd, der_derived_cmd, der_char_cmd, der_torus_cmd,
                  der_witness_cmd})
    add_source_options(c, src);
  der_torus_cmd->add_option("--maps", maps_file, "JSON array of matrices (default: the family's standard torus)");
  der_witness_cmd->add_option("--certificate", certificate_file, "certificate JSON")->required();

  auto* affine = app.add_subcommand("affine", "affine structures")->require_subcommand(1);
  auto* affine_synth_cmd = affine->add_subcommand("synth", "synthesize and certify an affine structure");
  auto* affine_verify_cmd = affine->add_subcommand("verify", "verify an affine structure or certificate");
  auto* affine_symp_cmd = affine->add_subcommand("symplectic-find", "search for a symplectic form");
  for (auto* c : {affine_synth_cmd, affine_verify_cmd, affine_symp_cmd}) add_source_options(c, src);
  affine_synth_cmd->add_option("--strategy", strategy, "auto, regular, derived-regular, symplectic")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "regular", "derived-regular", "symplectic"}));
  affine_verify_cmd->add_option("--structure", structure_file, "affine structure or certificate JSON")->required();

  auto* io_cmd = app.add_subcommand("io", "file validation")->require_subcommand(1);
  auto* io_validate_cmd = io_cmd->add_subcommand("validate", "validate a JSON document against its schema");
  io_validate_cmd->add_option("--kind", kind, "algebra, two-form, structure, certificate, matrix")
      ->required()
      ->check(CLI::IsMember({"algebra", "two-form", "structure", "certificate", "matrix"}));
  io_validate_cmd->add_option("--file", file, "document ('-' or omitted: standard input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*catalog_list_cmd) return catalog_list(common);
    if (*catalog_show_cmd) return catalog_show(src, common);
    if (*io_validate_cmd) return io_validate(kind, file, common);

    const LieAlgebra a = load_algebra(src);
    if (*verify_jacobi_cmd) return verify_jacobi(a, common);
    if (*verify_filiform_cmd) return verify_series(a, common, true);
    if (*verify_nilpotent_cmd) return verify_series(a, common, false);
    if (*der_space_cmd) return der_space(a, common);
    if (*der_diag_cmd) return der_diag(a, common);
    if (*der_regular_cmd) return der_regular(a, common, false);
    if (*der_derived_cmd) return der_regular(a, common, true);
    if (*der_char_cmd) return der_char_nilp(a, common);
    if (*der_torus_cmd) return der_torus(a, src, maps_file, common);
    if (*der_witness_cmd) return der_verify_witness(a, certificate_file, common);
    if (*affine_synth_cmd) return affine_synth(a, strategy, common);
    if (*affine_verify_cmd) return affine_verify(a, structure_file, common);
    if (*affine_symp_cmd) return affine_symplectic_find(a, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cerr << "usage error: no command\n";
  return kUsage;
}
