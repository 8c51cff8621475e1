#ifndef FILIFORM_CATALOG_HPP
#define FILIFORM_CATALOG_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "filiform/derivations.hpp"

namespace filiform {

enum class Family { Ln, Qn, QnAdapted, Ank, Bnk, Cn, Benoist };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::Ln: return "Ln";
    case Family::Qn: return "Qn";
    case Family::QnAdapted: return "QnZ";
    case Family::Ank: return "Ank";
    case Family::Bnk: return "Bnk";
    case Family::Cn: return "Cn";
    case Family::Benoist: return "Benoist";
  }
  return "unknown";
}

inline Family parse_family(const std::string& s) {
  static const std::map<std::string, Family> table{
      {"Ln", Family::Ln},   {"Qn", Family::Qn},   {"QnZ", Family::QnAdapted}, {"QnAdapted", Family::QnAdapted},
      {"Ank", Family::Ank}, {"Bnk", Family::Bnk}, {"Cn", Family::Cn},         {"Benoist", Family::Benoist}};
  auto it = table.find(s);
  if (it == table.end()) throw Error(ErrorKind::UnknownFamily, "unknown family '" + s + "'");
  return it->second;
}

struct FamilyParams {
  Family family = Family::Ln;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Rational> lambdas;
  Rational t;
};

/// A constructed family member together with its Jacobi residuals; a
/// nonempty report means the parameters violate the Jacobi constraints.
struct FamilyMember {
  LieAlgebra algebra;
  std::vector<JacobiViolation> jacobi;
};

namespace detail {

inline std::vector<std::string> basis_labels(char letter, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(1, letter) + std::to_string(i));
  return names;
}

// 1-based convenience: [Y_i, Y_j] += c Y_k
inline void put(LieAlgebra& a, std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
  a.add_bracket(i - 1, j - 1, k - 1, c);
}

inline Rational sign_power(std::size_t exponent) { return exponent % 2 == 0 ? Rational(1) : Rational(-1); }

inline std::string lambda_label(const std::vector<Rational>& lambdas) {
  std::string s = "(";
  for (std::size_t i = 0; i < lambdas.size(); ++i) s += (i ? "," : "") + lambdas[i].to_string();
  return s + ")";
}

inline void require_lambdas(const std::vector<Rational>& lambdas, std::size_t expected, const std::string& family) {
  if (lambdas.size() != expected)
    throw Error(ErrorKind::WrongLambdaCount, family + " expects " + std::to_string(expected) +
                                                 " lambda parameters, got " + std::to_string(lambdas.size()));
  if (std::all_of(lambdas.begin(), lambdas.end(), [](const Rational& x) { return x.is_zero(); }))
    throw Error(ErrorKind::AllZeroLambdas, family + " lambda parameters must not all vanish");
}

}  // namespace detail

inline LieAlgebra make_Ln(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::BadDimension, "L_n requires n >= 3");
  LieAlgebra a(n, "L_" + std::to_string(n), detail::basis_labels('Y', n));
  for (std::size_t j = 2; j <= n - 1; ++j) detail::put(a, 1, j, j + 1, 1);
  return a;
}

/// Q_n in the Y-presentation, or in the adapted Z-presentation when `adapted`.
inline LieAlgebra make_Qn(std::size_t n, bool adapted) {
  if (n < 6 || n % 2 == 1) throw Error(ErrorKind::BadDimension, "Q_n requires even n >= 6");
  const std::size_t p = n / 2;
  if (!adapted) {
    LieAlgebra a(n, "Q_" + std::to_string(n), detail::basis_labels('Y', n));
    for (std::size_t j = 2; j <= n - 1; ++j) detail::put(a, 1, j, j + 1, 1);
    for (std::size_t i = 2; i <= p; ++i) detail::put(a, i, n - i + 1, n, detail::sign_power(i + 1));
    return a;
  }
  LieAlgebra a(n, "Q_" + std::to_string(n) + "^Z", detail::basis_labels('Z', n));
  for (std::size_t j = 2; j <= n - 2; ++j) detail::put(a, 1, j, j + 1, 1);
  for (std::size_t i = 2; i <= p; ++i) detail::put(a, i, n - i + 1, n, detail::sign_power(i + 1));
  a.add_note(
      "Z-presentation built from its bracket display; the change of basis is taken with Z1 = Y1 + Y2 "
      "(the printed Z1 = Y1 - Y2 does not reproduce the display)");
  return a;
}

/// a_ij keyed by 1-based (i, j), i < j.
using AijTable = std::map<std::pair<std::size_t, std::size_t>, Rational>;

/*
 * Structure constants a_ij of [Y_i, Y_j] = a_ij Y_{i+j+k-2} for 2 <= i < j
 * and i+j+k-2 <= n. The first off-diagonal is a_{i,i+1} = lambda_{i-1}
 * (zero past the supplied lambdas); further entries follow
 *   a_ij = a_{i,j+1} + a_{i+1,j}   solved as   a_{i,j+1} = a_ij - a_{i+1,j},
 * with a_ii = 0.
 */
inline AijTable fill_aij(std::size_t n, std::size_t k, const std::vector<Rational>& lambdas) {
  if (k < 2 || k + 3 > n) throw Error(ErrorKind::BadRange, "fill_aij requires 2 <= k <= n-3");
  const std::size_t slots = (n - k + 1) / 2 - 1;  // i = 2..t with 2i+k-1 <= n
  if (lambdas.size() > slots)
    throw Error(ErrorKind::BadRange, std::to_string(lambdas.size()) + " lambdas but only " +
                                         std::to_string(slots) + " in-range positions");
  AijTable a;
  auto get = [&](std::size_t i, std::size_t j) -> Rational {
    if (i == j) return Rational(0);
    auto it = a.find({i, j});
    return it == a.end() ? Rational(0) : it->second;
  };
  for (std::size_t gap = 1;; ++gap) {
    bool any = false;
    for (std::size_t i = 2; 2 * i + gap + k - 2 <= n; ++i) {
      const std::size_t j = i + gap;
      any = true;
      if (gap == 1) a[{i, j}] = i - 1 <= lambdas.size() ? lambdas[i - 2] : Rational(0);
      else a[{i, j}] = get(i, j - 1) - get(i + 1, j - 1);
    }
    if (!any) break;
  }
  return a;
}

inline FamilyMember make_Ank(std::size_t n, std::size_t k, const std::vector<Rational>& lambdas) {
  if (k < 2 || k + 3 > n) throw Error(ErrorKind::BadRange, "A_n^k requires 2 <= k <= n-3");
  const std::size_t t = (n - k + 1) / 2;
  detail::require_lambdas(lambdas, t - 1, "A_n^k");
  LieAlgebra a(n, "A_" + std::to_string(n) + "^" + std::to_string(k) + detail::lambda_label(lambdas),
               detail::basis_labels('Y', n));
  for (std::size_t i = 2; i <= n - 1; ++i) detail::put(a, 1, i, i + 1, 1);
  for (const auto& [ij, c] : fill_aij(n, k, lambdas)) detail::put(a, ij.first, ij.second, ij.first + ij.second + k - 2, c);
  auto report = jacobi_report(a);
  return {std::move(a), std::move(report)};
}

inline FamilyMember make_Bnk(std::size_t n, std::size_t k, const std::vector<Rational>& lambdas) {
  if (n < 6 || n % 2 == 1) throw Error(ErrorKind::BadDimension, "B_n^k requires even n >= 6");
  if (k < 2 || k + 3 > n) throw Error(ErrorKind::BadRange, "B_n^k requires 2 <= k <= n-3");
  const std::size_t m = n / 2;
  const std::size_t t = (n - k) / 2;
  detail::require_lambdas(lambdas, t == 0 ? 0 : t - 1, "B_n^k");
  LieAlgebra a(n, "B_" + std::to_string(n) + "^" + std::to_string(k) + detail::lambda_label(lambdas),
               detail::basis_labels('Y', n));
  for (std::size_t i = 2; i <= n - 2; ++i) detail::put(a, 1, i, i + 1, 1);
  for (std::size_t i = 2; i <= m; ++i) detail::put(a, i, n - i + 1, n, detail::sign_power(i + 1));
  for (std::size_t i = 2; i <= t; ++i) detail::put(a, i, i + 1, 2 * i + k - 1, lambdas[i - 2]);
  for (const auto& [ij, c] : fill_aij(n, k, lambdas)) {
    const auto [i, j] = ij;
    if (j == i + 1 || j > n - 2 || i + j + k - 2 > n - 2) continue;
    detail::put(a, i, j, i + j + k - 2, c);
  }
  a.add_note("B_n^k: sign (-1)_n^{i+1} Y read as (-1)^{i+1} Y_n");
  a.add_note("B_n^k: target Y_{i+j-k-2} read as Y_{i+j+k-2}, matching the constraint i+j+k-2 <= n-2");
  auto report = jacobi_report(a);
  return {std::move(a), std::move(report)};
}

inline FamilyMember make_Cn(std::size_t n, const std::vector<Rational>& lambdas) {
  if (n < 6 || n % 2 == 1) throw Error(ErrorKind::BadDimension, "C_n requires n = 2m+2 with m >= 2");
  const std::size_t m = (n - 2) / 2;
  const std::size_t t = m - 1;
  detail::require_lambdas(lambdas, t, "C_n");
  LieAlgebra a(n, "C_" + std::to_string(n) + detail::lambda_label(lambdas), detail::basis_labels('Y', n));
  for (std::size_t i = 2; i <= n - 2; ++i) detail::put(a, 1, i, i + 1, 1);
  for (std::size_t i = 2; i <= m + 1; ++i) detail::put(a, i, n - i + 1, n, detail::sign_power(i + 1));
  for (std::size_t kk = 1; kk <= t; ++kk)
    for (std::size_t i = 2; 2 * i + 2 * kk < n + 1; ++i)  // i < n - i - 2k + 1
      detail::put(a, i, n - i - 2 * kk + 1, n, detail::sign_power(i + 1) * lambdas[kk - 1]);
  a.add_note("C_n: sign (-1)_n^{i-1} Y_n read as (-1)^{i+1} Y_n");
  a.add_note("C_n: lambda_k terms taken for k = 1..t and 2 <= i < n-i-2k+1");
  auto report = jacobi_report(a);
  return {std::move(a), std::move(report)};
}

/// The 11-dimensional Benoist family; constants are affine in t.
inline LieAlgebra make_benoist(const Rational& t) {
  LieAlgebra a(11, "Benoist(" + t.to_string() + ")", detail::basis_labels('X', 11));
  auto r = [](long p, long q = 1) { return Rational(p, q); };
  auto put = [&](std::size_t i, std::size_t j, std::vector<std::pair<std::size_t, Rational>> terms) {
    for (auto& [k, c] : terms) detail::put(a, i, j, k, c);
  };
  for (std::size_t i = 2; i <= 10; ++i) detail::put(a, 1, i, i + 1, 1);
  put(2, 4, {{6, r(1)}});
  put(2, 6, {{8, r(-5)}, {9, r(2)}, {10, r(2) * t}});
  put(2, 8, {{10, r(26, 5)}, {11, r(28, 25)}});
  put(3, 4, {{7, r(3)}, {8, r(-1)}, {9, -t}});
  put(3, 6, {{9, r(-12, 5)}, {10, r(-1, 25)}, {11, (r(-448) + r(1525) * t) / r(2000)}});
  put(3, 8, {{11, r(321, 80)}});
  put(4, 6, {{10, r(27, 5)}, {11, r(-24, 25)}});
  put(5, 6, {{11, r(1377, 80)}});
  put(2, 3, {{5, r(1)}});
  put(2, 5, {{7, r(-2)}, {8, r(1)}, {9, t}});
  put(2, 7, {{9, r(-13, 5)}, {10, r(51, 25)}, {11, (r(448) + r(2475) * t) / r(2000)}});
  put(2, 9, {{11, r(19, 16)}});
  put(3, 5, {{8, r(3)}, {9, r(-1)}, {10, -t}});
  put(3, 7, {{10, r(-39, 5)}, {11, r(23, 25)}});
  put(4, 5, {{9, r(27, 5)}, {10, r(-24, 25)}, {11, (r(448) - r(3525) * t) / r(2000)}});
  put(4, 7, {{11, r(-189, 16)}});
  return a;
}

/// Dispatch on family; Jacobi residuals are always attached.
inline FamilyMember build(const FamilyParams& p) {
  switch (p.family) {
    case Family::Ln: {
      auto a = make_Ln(p.n);
      return {a, jacobi_report(a)};
    }
    case Family::Qn:
    case Family::QnAdapted: {
      auto a = make_Qn(p.n, p.family == Family::QnAdapted);
      return {a, jacobi_report(a)};
    }
    case Family::Ank: return make_Ank(p.n, p.k, p.lambdas);
    case Family::Bnk: return make_Bnk(p.n, p.k, p.lambdas);
    case Family::Cn: return make_Cn(p.n, p.lambdas);
    case Family::Benoist: {
      auto a = make_benoist(p.t);
      return {a, jacobi_report(a)};
    }
  }
  throw Error(ErrorKind::UnknownFamily, "unhandled family");
}

/// The diagonal torus maps attached to L_n, Q_n (adapted basis) and C_n.
inline std::vector<Matrix> standard_torus(Family family, std::size_t n) {
  auto diag = [&](auto weight) {
    Vector w;
    for (std::size_t i = 1; i <= n; ++i) w.push_back(Rational(static_cast<long>(weight(i))));
    return Matrix::diagonal(w);
  };
  switch (family) {
    case Family::Ln:
      if (n < 3) throw Error(ErrorKind::BadDimension, "L_n requires n >= 3");
      return {diag([](std::size_t i) { return i == 1 ? 0 : 1; }),
              diag([](std::size_t i) { return i; })};
    case Family::QnAdapted:
      if (n < 6 || n % 2 == 1) throw Error(ErrorKind::BadDimension, "Q_n requires even n >= 6");
      return {diag([&](std::size_t i) { return i == 1 ? 0 : (i == n ? 2 : 1); }),
              diag([&](std::size_t i) -> long {
                if (i == 1) return 1;
                if (i == n) return static_cast<long>(n) - 3;
                return static_cast<long>(i) - 2;
              })};
    case Family::Cn:
      if (n < 6 || n % 2 == 1) throw Error(ErrorKind::BadDimension, "C_n requires n = 2m+2 with m >= 2");
      return {diag([&](std::size_t i) { return i == 1 ? 0 : (i == n ? 2 : 1); })};
    default:
      throw Error(ErrorKind::UnknownFamily, "no standard torus recorded for family " + to_string(family));
  }
}

}  // namespace filiform

#endif  // FILIFORM_CATALOG_HPP
