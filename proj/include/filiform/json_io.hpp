#ifndef FILIFORM_JSON_IO_HPP
#define FILIFORM_JSON_IO_HPP

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "filiform/affine.hpp"

namespace filiform::io {

using json = nlohmann::json;

// All indices in documents are 1-based.

inline json to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorKind::Parse, "expected a rational string, got " + j.dump());
}

inline json to_json(const SparseVector& v) {
  json out = json::object();
  for (const auto& [k, c] : v) out[std::to_string(k + 1)] = c.to_string();
  return out;
}

namespace detail {

inline void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, std::string(what) + ": expected a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key()))
      throw Error(ErrorKind::Parse, std::string(what) + ": unknown field '" + item.key() + "'");
}

inline const json& require(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Parse, std::string(what) + ": missing field '" + key + "'");
  return *it;
}

inline std::size_t index_from_json(const json& j, std::size_t dim, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Parse, std::string(what) + ": index must be an integer");
  long v = j.get<long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    throw Error(ErrorKind::Parse, std::string(what) + ": index " + std::to_string(v) + " outside 1.." +
                                      std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

inline std::size_t index_from_key(const std::string& key, std::size_t dim, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty())
    throw Error(ErrorKind::Parse, std::string(what) + ": coefficient key '" + key + "' is not an index");
  return index_from_json(json(v), dim, what);
}

inline SparseVector coeffs_from_json(const json& j, std::size_t dim, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, std::string(what) + ": coeffs must be an object");
  SparseVector out;
  for (const auto& item : j.items()) {
    Rational c = rational_from_json(item.value());
    if (!c.is_zero()) out[index_from_key(item.key(), dim, what)] = c;
  }
  return out;
}

inline std::size_t dim_from_json(const json& j, const char* what) {
  const json& d = require(j, "dim", what);
  if (!d.is_number_integer() || d.get<long>() < 0)
    throw Error(ErrorKind::Parse, std::string(what) + ": dim must be a nonnegative integer");
  return d.get<std::size_t>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebra: {"name", "dim", "basis", "brackets": [{"i", "j", "coeffs": {"k": "p/q"}}], "notes"?}

inline json structure_json(const LieAlgebra& a) {
  json brackets = json::array();
  for (const auto& [key, coeffs] : a.structure())
    brackets.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"coeffs", to_json(coeffs)}});
  return brackets;
}

inline json to_json(const LieAlgebra& a) {
  json j{{"name", a.name()}, {"dim", a.dim()}, {"basis", a.basis_names()}, {"brackets", structure_json(a)}};
  if (!a.notes().empty()) j["notes"] = a.notes();
  return j;
}

inline LieAlgebra algebra_from_json(const json& j) {
  constexpr const char* what = "algebra";
  detail::reject_unknown_fields(j, {"name", "dim", "basis", "brackets", "notes"}, what);
  const std::size_t n = detail::dim_from_json(j, what);
  std::string name = j.value("name", std::string("unnamed"));
  std::vector<std::string> basis;
  if (j.contains("basis")) {
    if (!j["basis"].is_array()) throw Error(ErrorKind::Parse, "algebra: basis must be an array of strings");
    for (const auto& b : j["basis"]) {
      if (!b.is_string()) throw Error(ErrorKind::Parse, "algebra: basis must be an array of strings");
      basis.push_back(b.get<std::string>());
    }
    if (basis.size() != n) throw Error(ErrorKind::Parse, "algebra: basis length differs from dim");
  }
  LieAlgebra a(n, name, basis);
  const json& brackets = detail::require(j, "brackets", what);
  if (!brackets.is_array()) throw Error(ErrorKind::Parse, "algebra: brackets must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : brackets) {
    detail::reject_unknown_fields(b, {"i", "j", "coeffs"}, "bracket");
    std::size_t i = detail::index_from_json(detail::require(b, "i", "bracket"), n, "bracket");
    std::size_t jj = detail::index_from_json(detail::require(b, "j", "bracket"), n, "bracket");
    if (i >= jj) throw Error(ErrorKind::Parse, "bracket: entries must have i < j");
    if (!seen.insert({i, jj}).second)
      throw Error(ErrorKind::Parse, "bracket: duplicate entry for (" + std::to_string(i + 1) + "," +
                                        std::to_string(jj + 1) + ")");
    for (const auto& [k, c] : detail::coeffs_from_json(detail::require(b, "coeffs", "bracket"), n, "bracket"))
      a.add_bracket(i, jj, k, c);
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) throw Error(ErrorKind::Parse, "algebra: notes must be an array of strings");
    for (const auto& note : j["notes"]) {
      if (!note.is_string()) throw Error(ErrorKind::Parse, "algebra: notes must be an array of strings");
      a.add_note(note.get<std::string>());
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Two-form: {"dim", "entries": [{"i", "j", "value"}]}, i < j

inline json to_json(const TwoForm& t) {
  json entries = json::array();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i + 1; j < t.dim(); ++j)
      if (!t.gram()(i, j).is_zero())
        entries.push_back({{"i", i + 1}, {"j", j + 1}, {"value", t.gram()(i, j).to_string()}});
  return {{"dim", t.dim()}, {"entries", entries}};
}

inline TwoForm two_form_from_json(const json& j) {
  constexpr const char* what = "two-form";
  detail::reject_unknown_fields(j, {"dim", "entries"}, what);
  const std::size_t n = detail::dim_from_json(j, what);
  TwoForm t(n);
  const json& entries = detail::require(j, "entries", what);
  if (!entries.is_array()) throw Error(ErrorKind::Parse, "two-form: entries must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : entries) {
    detail::reject_unknown_fields(e, {"i", "j", "value"}, "two-form entry");
    std::size_t i = detail::index_from_json(detail::require(e, "i", what), n, what);
    std::size_t jj = detail::index_from_json(detail::require(e, "j", what), n, what);
    if (i >= jj) throw Error(ErrorKind::Parse, "two-form: entries must have i < j");
    if (!seen.insert({i, jj}).second) throw Error(ErrorKind::Parse, "two-form: duplicate entry");
    t.set(i, jj, rational_from_json(detail::require(e, "value", what)));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Matrices: row-major arrays of rational strings

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix: expected an array of rows");
  std::vector<Vector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::Parse, "matrix: each row must be an array");
    Vector v;
    for (const auto& x : row) v.push_back(rational_from_json(x));
    if (!rows.empty() && v.size() != rows.front().size()) throw Error(ErrorKind::Parse, "matrix: ragged rows");
    rows.push_back(std::move(v));
  }
  return Matrix::from_rows(rows);
}

inline json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Affine structure: {"dim", "gamma": [{"i", "j", "coeffs"}], "provenance": {...}}

inline json to_json(const Provenance& p) {
  json j{{"strategy", p.strategy}, {"inputs", p.inputs}};
  if (p.seed) j["seed"] = *p.seed;
  return j;
}

inline json to_json(const AffineStructure& s) {
  const std::size_t n = s.dim();
  json gamma = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVector v = to_sparse(s.left(i).column(j));
      if (!v.empty()) gamma.push_back({{"i", i + 1}, {"j", j + 1}, {"coeffs", to_json(v)}});
    }
  return {{"dim", n}, {"gamma", gamma}, {"provenance", to_json(s.provenance())}};
}

inline AffineStructure affine_from_json(const json& j) {
  constexpr const char* what = "affine structure";
  detail::reject_unknown_fields(j, {"dim", "gamma", "provenance"}, what);
  const std::size_t n = detail::dim_from_json(j, what);
  AffineStructure s(n);
  const json& gamma = detail::require(j, "gamma", what);
  if (!gamma.is_array()) throw Error(ErrorKind::Parse, "affine structure: gamma must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& g : gamma) {
    detail::reject_unknown_fields(g, {"i", "j", "coeffs"}, "gamma entry");
    std::size_t i = detail::index_from_json(detail::require(g, "i", what), n, what);
    std::size_t jj = detail::index_from_json(detail::require(g, "j", what), n, what);
    if (!seen.insert({i, jj}).second) throw Error(ErrorKind::Parse, "affine structure: duplicate gamma entry");
    for (const auto& [k, c] : detail::coeffs_from_json(detail::require(g, "coeffs", what), n, what))
      s.set_gamma(i, jj, k, c);
  }
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    detail::reject_unknown_fields(p, {"strategy", "inputs", "seed"}, "provenance");
    Provenance prov;
    prov.strategy = p.value("strategy", std::string());
    if (p.contains("inputs")) prov.inputs = p["inputs"].get<std::map<std::string, std::string>>();
    if (p.contains("seed")) prov.seed = p["seed"].get<std::uint64_t>();
    s.set_provenance(std::move(prov));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const std::vector<JacobiViolation>& report) {
  json out = json::array();
  for (const auto& v : report)
    out.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"residual", to_json(v.residual)}});
  return out;
}

inline json to_json(const std::vector<DerivationViolation>& report) {
  json out = json::array();
  for (const auto& v : report) out.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"residual", to_json(v.residual)}});
  return out;
}

inline json to_json(const std::vector<CoboundaryEntry>& report) {
  json out = json::array();
  for (const auto& v : report)
    out.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"value", v.value.to_string()}});
  return out;
}

inline json to_json(const AffineReport& r) {
  json torsion = json::array();
  for (const auto& v : r.torsion_violations)
    torsion.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"residual", to_json(v.residual)}});
  json leftsym = json::array();
  for (const auto& v : r.leftsym_violations)
    leftsym.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"residual", to_json(v.residual)}});
  return {{"passed", r.passed()}, {"torsion_violations", torsion}, {"leftsym_violations", leftsym}};
}

inline json to_json(const TorusReport& r) {
  json not_der = json::array();
  for (const auto& [index, violations] : r.not_derivations)
    not_der.push_back({{"map", index + 1}, {"violations", to_json(violations)}});
  json noncomm = json::array();
  for (const auto& [s, t] : r.noncommuting) noncomm.push_back(json::array({s + 1, t + 1}));
  json nondiag = json::array();
  for (auto s : r.not_diagonalizable) nondiag.push_back(s + 1);
  return {{"passed", r.passed()},
          {"not_derivations", not_der},
          {"noncommuting_pairs", noncomm},
          {"not_diagonalizable", nondiag},
          {"notes", r.notes}};
}

// ---------------------------------------------------------------------------
// Hashing

/// sha256 over the canonical dump of dim + brackets; names and notes do not affect it.
inline std::string algebra_hash(const LieAlgebra& a) {
  const std::string canonical = json{{"dim", a.dim()}, {"brackets", structure_json(a)}}.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest.data(), &length, EVP_sha256(), nullptr);
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace filiform::io

#endif  // FILIFORM_JSON_IO_HPP
