#ifndef FILIFORM_AFFINE_HPP
#define FILIFORM_AFFINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filiform/derivations.hpp"

namespace filiform {

struct Provenance {
  std::string strategy;
  std::map<std::string, std::string> inputs;
  std::optional<std::uint64_t> seed;
};

/*
 * Bilinear product e_i . e_j = sum_k gamma(i, j, k) e_k.
 *
 * Stored as the left-multiplication matrices L_i = (e_i . -), so that
 * gamma(i, j, k) = L_i(k, j). No symmetry is assumed.
 */
class AffineStructure {
 public:
  AffineStructure() = default;
  explicit AffineStructure(std::size_t dim) : left_(dim, Matrix(dim, dim)) {}
  AffineStructure(std::vector<Matrix> left, Provenance provenance)
      : left_(std::move(left)), provenance_(std::move(provenance)) {
    for (const auto& m : left_)
      if (m.rows() != left_.size() || m.cols() != left_.size())
        throw Error(ErrorKind::DimensionMismatch, "left multiplication matrices must be n x n");
  }

  std::size_t dim() const noexcept { return left_.size(); }

  const Rational& gamma(std::size_t i, std::size_t j, std::size_t k) const { return left_.at(i).at(k, j); }
  void set_gamma(std::size_t i, std::size_t j, std::size_t k, Rational value) {
    left_.at(i).at(k, j) = std::move(value);
  }

  const Matrix& left(std::size_t i) const { return left_.at(i); }
  const std::vector<Matrix>& left_matrices() const noexcept { return left_; }

  /// L_x = sum_i x_i L_i
  Matrix left(std::span<const Rational> x) const {
    Matrix out(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!x[i].is_zero()) out += left_[i] * x[i];
    return out;
  }

  Vector product(std::span<const Rational> x, std::span<const Rational> y) const {
    return left(x).apply(y);
  }

  const Provenance& provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  /// Entrywise equality of gamma; provenance is ignored.
  bool same_product(const AffineStructure& other) const { return left_ == other.left_; }

 private:
  std::vector<Matrix> left_;
  Provenance provenance_;
};

struct TorsionViolation {
  std::size_t i, j;  // i < j
  SparseVector residual;  // e_i.e_j - e_j.e_i - [e_i,e_j]
};

struct LeftSymmetryViolation {
  std::size_t i, j, k;  // i < j
  SparseVector residual;  // e_i.(e_j.e_k) - e_j.(e_i.e_k) - (e_i.e_j).e_k + (e_j.e_i).e_k
};

struct AffineReport {
  std::vector<TorsionViolation> torsion_violations;
  std::vector<LeftSymmetryViolation> leftsym_violations;

  bool passed() const noexcept { return torsion_violations.empty() && leftsym_violations.empty(); }
};

/// Both axioms checked on every basis pair / triple; by multilinearity this is exhaustive.
inline AffineReport verify_affine(const LieAlgebra& a, const AffineStructure& s) {
  require_dim(a, s.dim(), "verify_affine");
  const std::size_t n = a.dim();
  AffineReport report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector r = s.left(i).column(j) - s.left(j).column(i);
      r = r - to_dense(a.basis_bracket(i, j), n);
      if (!is_zero(r)) report.torsion_violations.push_back({i, j, to_sparse(r)});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix defect = commutator(s.left(i), s.left(j));
      defect -= s.left(s.left(i).column(j));
      defect += s.left(s.left(j).column(i));
      if (defect.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        Vector r = defect.column(k);
        if (!is_zero(r)) report.leftsym_violations.push_back({i, j, k, to_sparse(r)});
      }
    }
  return report;
}

/// L_X = f^{-1} ad(X) f for an invertible derivation f.
inline AffineStructure from_regular_derivation(const LieAlgebra& a, const Matrix& f) {
  require_map_shape(a, f, "from_regular_derivation");
  if (!check_derivation(a, f)) throw Error(ErrorKind::NotADerivation, "map is not a derivation");
  Matrix f_inv = invert(f);
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < a.dim(); ++i) left.push_back(f_inv * ad_basis(a, i) * f);
  return AffineStructure(std::move(left), Provenance{"regular", {{"algebra", a.name()}}, std::nullopt});
}

/*
 * L_X = g ad(X) f where f is a derivation whose restriction to D(g) is
 * invertible and g = iota (f|D)^{-1} pi. pi reads D(g)-coordinates off the
 * RREF pivot positions (projection along the coordinate complement), so g
 * vanishes on that complement. ad(X) f lands in D(g), so the choice of g
 * off D(g) never reaches the product.
 */
inline AffineStructure from_derived_regular(const LieAlgebra& a, const Matrix& f) {
  require_map_shape(a, f, "from_derived_regular");
  if (!check_derivation(a, f)) throw Error(ErrorKind::NotADerivation, "map is not a derivation");
  const std::size_t n = a.dim();
  const Subspace derived = derived_subalgebra(a);
  const std::size_t r = derived.dim();
  Matrix restricted = detail::restrict_to(f, derived);
  auto restricted_inv = try_invert(restricted);
  if (!restricted_inv)
    throw Error(ErrorKind::SingularOnDerived, "restriction of f to the derived subalgebra is singular");

  Matrix embed = Matrix::from_columns(derived.basis(), n);  // n x r
  Matrix project(r, n);
  for (std::size_t s = 0; s < r; ++s) project(s, derived.pivots()[s]) = Rational(1);
  Matrix g = r == 0 ? Matrix(n, n) : embed * *restricted_inv * project;

  std::vector<Matrix> left;
  for (std::size_t i = 0; i < n; ++i) left.push_back(g * ad_basis(a, i) * f);
  return AffineStructure(std::move(left),
                         Provenance{"derived-regular", {{"algebra", a.name()}}, std::nullopt});
}

/// L_X = -Theta^{-1} ad(X)^T Theta, the solution of theta(ad X(Y), Z) = -theta(Y, L_X Z).
inline AffineStructure from_symplectic(const LieAlgebra& a, const TwoForm& theta) {
  require_dim(a, theta.dim(), "from_symplectic");
  if (!is_closed(a, theta)) throw Error(ErrorKind::NotClosed, "two-form is not closed");
  if (!nondegenerate(theta)) throw Error(ErrorKind::Degenerate, "two-form is degenerate");
  const Matrix& gram = theta.gram();
  Matrix gram_inv = invert(gram);
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < a.dim(); ++i)
    left.push_back(gram_inv * ad_basis(a, i).transpose() * gram * Rational(-1));
  return AffineStructure(std::move(left), Provenance{"symplectic", {{"algebra", a.name()}}, std::nullopt});
}

/// Basis of the closed 2-forms: kernel of the d-theta system over the unknowns theta_ij, i < j.
inline std::vector<TwoForm> closed_two_forms(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      index[{i, j}] = unknowns.size();
      unknowns.emplace_back(i, j);
    }
  if (unknowns.empty()) return {};

  auto accumulate = [&](Vector& row, std::size_t x, const SparseVector& v) {
    // theta(e_x, v)
    for (const auto& [k, c] : v) {
      if (k == x) continue;
      if (x < k) row[index[{x, k}]] += c;
      else row[index[{k, x}]] -= c;
    }
  };
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector row = zero_vector(unknowns.size());
        accumulate(row, i, a.basis_bracket(j, k));
        accumulate(row, j, a.basis_bracket(k, i));
        accumulate(row, k, a.basis_bracket(i, j));
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  Subspace kernel = rows.empty() ? Subspace::full(unknowns.size()) : nullspace(Matrix::from_rows(rows));
  std::vector<TwoForm> out;
  for (const auto& v : kernel.basis()) {
    TwoForm t(n);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (!v[u].is_zero()) t.set(unknowns[u].first, unknowns[u].second, v[u]);
    out.push_back(std::move(t));
  }
  return out;
}

inline std::optional<TwoForm> find_symplectic(const LieAlgebra& a, std::uint64_t seed, std::size_t trials) {
  const std::size_t n = a.dim();
  if (n % 2 == 1) return std::nullopt;
  if (n == 0) return TwoForm(0);
  std::vector<TwoForm> closed = closed_two_forms(a);
  if (closed.empty()) return std::nullopt;
  CoefficientSampler sampler(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto coeffs = sampler.next_vector(closed.size());
    TwoForm candidate(n);
    for (std::size_t s = 0; s < closed.size(); ++s)
      if (!coeffs[s].is_zero()) candidate = candidate + coeffs[s] * closed[s];
    if (nondegenerate(candidate) && is_closed(a, candidate)) return candidate;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Synthesis

enum class Strategy { Auto, Regular, DerivedRegular, Symplectic };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Regular: return "regular";
    case Strategy::DerivedRegular: return "derived-regular";
    case Strategy::Symplectic: return "symplectic";
  }
  return "unknown";
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "regular") return Strategy::Regular;
  if (s == "derived-regular") return Strategy::DerivedRegular;
  if (s == "symplectic") return Strategy::Symplectic;
  throw Error(ErrorKind::Parse, "unknown strategy '" + s + "'");
}

struct StrategyAttempt {
  Strategy strategy;
  bool succeeded = false;
  std::string reason;
};

inline constexpr const char* kSearchDisclaimer =
    "search failure only; not a proof that no affine structure exists";

/// Outcome of synthesize; failed() corresponds to NoStrategySucceeded.
struct Synthesis {
  std::optional<AffineStructure> structure;
  std::optional<Strategy> strategy;
  std::optional<Matrix> derivation;  // witness for regular / derived-regular
  std::optional<TwoForm> form;       // witness for symplectic
  AffineReport verification;
  std::vector<StrategyAttempt> attempts;
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  bool succeeded() const noexcept { return structure.has_value(); }
};

namespace detail {

inline std::string describe(const std::vector<TorsionViolation>& t, const std::vector<LeftSymmetryViolation>& l) {
  return std::to_string(t.size()) + " torsion and " + std::to_string(l.size()) + " left-symmetry violations";
}

}  // namespace detail

/*
 * Tries, in order, regular derivation -> derived-regular derivation ->
 * symplectic form (or just the requested one). The first construction whose
 * output passes verify_affine wins. Failure is a search result, never a
 * non-existence claim.
 */
inline Synthesis synthesize(const LieAlgebra& a, Strategy strategy, std::uint64_t seed, std::size_t trials) {
  Synthesis out;
  out.seed = seed;
  out.trials = trials;

  std::vector<Strategy> order;
  if (strategy == Strategy::Auto) order = {Strategy::Regular, Strategy::DerivedRegular, Strategy::Symplectic};
  else order = {strategy};

  const auto jacobi = jacobi_report(a);
  if (!jacobi.empty()) {
    for (auto s : order)
      out.attempts.push_back({s, false, "input fails the Jacobi identity on " + std::to_string(jacobi.size()) +
                                            " basis triples"});
    return out;
  }

  std::optional<DerivationSpace> space;
  auto der = [&]() -> const DerivationSpace& {
    if (!space) space = derivation_space(a);
    return *space;
  };

  for (auto s : order) {
    StrategyAttempt attempt{s, false, {}};
    std::optional<AffineStructure> built;
    std::optional<Matrix> derivation;
    std::optional<TwoForm> form;
    switch (s) {
      case Strategy::Regular: {
        derivation = find_regular_derivation(der(), seed, trials);
        if (!derivation)
          attempt.reason = "no regular derivation found among " + std::to_string(trials) +
                           " seeded combinations of a " + std::to_string(der().dim()) +
                           "-dimensional Der(g)";
        else built = from_regular_derivation(a, *derivation);
        break;
      }
      case Strategy::DerivedRegular: {
        derivation = find_derived_regular_derivation(der(), seed, trials);
        if (!derivation)
          attempt.reason = "restriction to D(g) singular for every candidate: " +
                           std::to_string(diagonal_derivations(a).dim()) + " diagonal derivations and " +
                           std::to_string(trials) + " seeded combinations; no witness found";
        else built = from_derived_regular(a, *derivation);
        break;
      }
      case Strategy::Symplectic: {
        if (a.dim() % 2 == 1) {
          attempt.reason = "odd dimension " + std::to_string(a.dim()) + " admits no nondegenerate 2-form";
          break;
        }
        form = find_symplectic(a, seed, trials);
        if (!form)
          attempt.reason = "no nondegenerate closed 2-form found among " + std::to_string(trials) +
                           " seeded combinations of " + std::to_string(closed_two_forms(a).size()) +
                           " closed forms";
        else built = from_symplectic(a, *form);
        break;
      }
      case Strategy::Auto: break;
    }
    if (built) {
      AffineReport report = verify_affine(a, *built);
      if (report.passed()) {
        Provenance p = built->provenance();
        p.seed = seed;
        p.inputs["trials"] = std::to_string(trials);
        built->set_provenance(std::move(p));
        attempt.succeeded = true;
        out.attempts.push_back(attempt);
        out.structure = std::move(built);
        out.strategy = s;
        out.derivation = std::move(derivation);
        out.form = std::move(form);
        out.verification = std::move(report);
        return out;
      }
      attempt.reason = "constructed product failed verification: " +
                       detail::describe(report.torsion_violations, report.leftsym_violations);
    }
    out.attempts.push_back(attempt);
  }
  return out;
}

}  // namespace filiform

#endif  // FILIFORM_AFFINE_HPP
