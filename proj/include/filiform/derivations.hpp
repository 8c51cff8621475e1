#ifndef FILIFORM_DERIVATIONS_HPP
#define FILIFORM_DERIVATIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "filiform/lie_algebra.hpp"
#include "filiform/random.hpp"

namespace filiform {

struct DerivationViolation {
  std::size_t i, j;  // 0-based, i < j
  SparseVector residual;  // m[e_i,e_j] - [m e_i, e_j] - [e_i, m e_j]
};

inline void require_map_shape(const LieAlgebra& a, const Matrix& m, const char* what) {
  if (m.rows() != a.dim() || m.cols() != a.dim())
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": map must be " + std::to_string(a.dim()) + "x" +
                    std::to_string(a.dim()));
}

/// Empty result means m is a derivation.
inline std::vector<DerivationViolation> is_derivation(const LieAlgebra& a, const Matrix& m) {
  require_map_shape(a, m, "is_derivation");
  const std::size_t n = a.dim();
  std::vector<Vector> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(m.column(i));
  std::vector<DerivationViolation> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = m.apply(to_dense(a.basis_bracket(i, j), n));
      lhs = lhs - bracket(a, images[i], unit_vector(n, j));
      lhs = lhs - bracket(a, unit_vector(n, i), images[j]);
      if (!is_zero(lhs)) out.push_back({i, j, to_sparse(lhs)});
    }
  return out;
}

inline bool check_derivation(const LieAlgebra& a, const Matrix& m) { return is_derivation(a, m).empty(); }

/// Der(g) with an RREF basis (as vectors of row-major entries).
struct DerivationSpace {
  LieAlgebra algebra;
  std::vector<Matrix> basis;

  std::size_t dim() const noexcept { return basis.size(); }
};

/// The n^2 x n^2 linear system whose kernel is Der(g); unknown D(r, c) sits at column r*n + c.
inline Matrix derivation_system(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const SparseVector bij = a.basis_bracket(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vector row = zero_vector(n * n);
        // component k of D[e_i, e_j]
        for (const auto& [m, c] : bij) row[k * n + m] += c;
        // component k of [D e_i, e_j] + [e_i, D e_j]
        for (std::size_t r = 0; r < n; ++r) {
          Rational c1 = a.constant(r, j, k);
          if (!c1.is_zero()) row[r * n + i] -= c1;
          Rational c2 = a.constant(i, r, k);
          if (!c2.is_zero()) row[r * n + j] -= c2;
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
  if (rows.empty()) return Matrix(0, n * n);
  return Matrix::from_rows(rows);
}

inline Matrix reshape_square(std::span<const Rational> entries, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entries[r * n + c];
  return m;
}

inline DerivationSpace derivation_space(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  Subspace kernel = nullspace(derivation_system(a));
  DerivationSpace out{a, {}};
  for (const auto& v : kernel.basis()) out.basis.push_back(reshape_square(v, n));
  return out;
}

/// Weight vectors w with diag(w) a derivation: w_i + w_j = w_k whenever c_ij^k != 0.
inline Subspace diagonal_derivations(const LieAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> rows;
  for (const auto& [key, coeffs] : a.structure())
    for (const auto& [k, c] : coeffs) {
      Vector row = zero_vector(n);
      row[key.first] += Rational(1);
      row[key.second] += Rational(1);
      row[k] -= Rational(1);
      rows.push_back(std::move(row));
    }
  if (rows.empty()) return Subspace::full(n);
  return nullspace(Matrix::from_rows(rows));
}

inline bool is_regular(const Matrix& m) { return !determinant(m).is_zero(); }

/// Random search for an invertible derivation among seeded combinations of the basis.
inline std::optional<Matrix> find_regular_derivation(const DerivationSpace& space, std::uint64_t seed,
                                                     std::size_t trials) {
  const std::size_t n = space.algebra.dim();
  CoefficientSampler sampler(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix candidate = combine(space.basis, sampler.next_vector(space.dim()), n);
    if (is_regular(candidate) && check_derivation(space.algebra, candidate)) return candidate;
  }
  return std::nullopt;
}

namespace detail {

// Matrix of m on the RREF basis of an m-invariant subspace.
inline Matrix restrict_to(const Matrix& m, const Subspace& sub) {
  const std::size_t r = sub.dim();
  Matrix out(r, r);
  for (std::size_t s = 0; s < r; ++s) {
    Vector image = m.apply(sub.basis()[s]);
    if (!sub.contains(image))
      throw Error(ErrorKind::NotInvariant, "map does not preserve the subspace");
    Vector coords = sub.coordinates(image);
    for (std::size_t t = 0; t < r; ++t) out(t, s) = coords[t];
  }
  return out;
}

}  // namespace detail

/// Matrix of the derivation m on the RREF basis of D(g).
inline Matrix restrict_to_derived(const LieAlgebra& a, const Matrix& m) {
  require_map_shape(a, m, "restrict_to_derived");
  if (!check_derivation(a, m)) throw Error(ErrorKind::NotADerivation, "map is not a derivation");
  return detail::restrict_to(m, derived_subalgebra(a));
}

/*
 * Search for a derivation whose restriction to D(g) is invertible.
 * Diagonal derivations (from the RREF basis of diagonal_derivations) are
 * tried first, then seeded random combinations of the Der(g) basis. An
 * empty D(g) makes every derivation qualify (0x0 determinant is 1).
 */
inline std::optional<Matrix> find_derived_regular_derivation(const DerivationSpace& space,
                                                             std::uint64_t seed, std::size_t trials) {
  const LieAlgebra& a = space.algebra;
  const std::size_t n = a.dim();
  const Subspace derived = derived_subalgebra(a);
  auto qualifies = [&](const Matrix& m) {
    return check_derivation(a, m) && is_regular(detail::restrict_to(m, derived));
  };
  const Subspace weights = diagonal_derivations(a);
  for (const auto& w : weights.basis()) {
    Matrix candidate = Matrix::diagonal(w);
    if (qualifies(candidate)) return candidate;
  }
  CoefficientSampler sampler(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix candidate = combine(space.basis, sampler.next_vector(space.dim()), n);
    if (qualifies(candidate)) return candidate;
  }
  return std::nullopt;
}

enum class CharNilpKind { NotCharNilpotent, CharNilpotentLikely };

inline std::string to_string(CharNilpKind kind) {
  return kind == CharNilpKind::NotCharNilpotent ? "NotCharNilpotent" : "CharNilpotentLikely";
}

struct CharNilpVerdict {
  CharNilpKind kind = CharNilpKind::CharNilpotentLikely;
  std::optional<Matrix> witness;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Deterministic candidates examined before the random phase.
  std::size_t deterministic_candidates = 0;
};

/*
 * Looks for a non-nilpotent derivation: diagonal derivations first, then the
 * Der(g) basis, then `trials` seeded random combinations. A positive find is
 * a certificate; failing to find one only makes characteristic nilpotency
 * likely.
 */
inline CharNilpVerdict char_nilpotent_verdict(const LieAlgebra& a, std::uint64_t seed, std::size_t trials) {
  CharNilpVerdict verdict;
  verdict.seed = seed;
  verdict.trials = trials;
  const std::size_t n = a.dim();

  std::vector<Matrix> deterministic;
  const Subspace weights = diagonal_derivations(a);
  for (const auto& w : weights.basis()) deterministic.push_back(Matrix::diagonal(w));
  const DerivationSpace space = derivation_space(a);
  for (const auto& b : space.basis) deterministic.push_back(b);
  verdict.deterministic_candidates = deterministic.size();

  auto accept = [&](const Matrix& m) {
    if (is_nilpotent(m) || !check_derivation(a, m)) return false;
    verdict.kind = CharNilpKind::NotCharNilpotent;
    verdict.witness = m;
    return true;
  };
  for (const auto& m : deterministic)
    if (accept(m)) return verdict;
  CoefficientSampler sampler(seed);
  for (std::size_t t = 0; t < trials; ++t)
    if (accept(combine(space.basis, sampler.next_vector(space.dim()), n))) return verdict;
  return verdict;
}

// ---------------------------------------------------------------------------
// Tori

struct Diagonalizability {
  bool diagonalizable = false;
  /// False when the rational root search could not rule out missed roots.
  bool conclusive = true;
  /// True when some eigenvalue is irrational, so the rational test says
  /// nothing about semisimplicity over an extension.
  bool has_irrational_eigenvalues = false;
  std::vector<std::pair<Rational, std::size_t>> eigenvalues;  // value, geometric multiplicity
};

/// Diagonalizable over Q: all eigenvalues rational and eigenspaces fill Q^n.
inline Diagonalizability diagonalizable_over_rationals(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "diagonalizable: matrix not square");
  const std::size_t n = m.rows();
  Diagonalizability out;
  RationalRoots roots = rational_roots(characteristic_polynomial(m));
  out.conclusive = roots.exhaustive;
  std::size_t algebraic = 0;
  std::size_t geometric = 0;
  for (const auto& [value, multiplicity] : roots.roots) {
    algebraic += multiplicity;
    Matrix shifted = m - Matrix::identity(n) * value;
    std::size_t g = n - rank(shifted);
    geometric += g;
    out.eigenvalues.emplace_back(value, g);
  }
  if (algebraic < n && roots.exhaustive) out.has_irrational_eigenvalues = true;
  out.diagonalizable = algebraic == n && geometric == n;
  return out;
}

struct TorusReport {
  std::vector<std::pair<std::size_t, std::vector<DerivationViolation>>> not_derivations;
  std::vector<std::pair<std::size_t, std::size_t>> noncommuting;
  std::vector<std::size_t> not_diagonalizable;
  std::vector<std::string> notes;

  bool passed() const noexcept {
    return not_derivations.empty() && noncommuting.empty() && not_diagonalizable.empty();
  }
};

/// (a) each map is a derivation, (b) the maps commute pairwise, (c) each map is diagonalizable over Q.
inline TorusReport verify_torus(const LieAlgebra& a, const std::vector<Matrix>& maps) {
  TorusReport report;
  for (const auto& m : maps) require_map_shape(a, m, "verify_torus");
  for (std::size_t s = 0; s < maps.size(); ++s) {
    auto violations = is_derivation(a, maps[s]);
    if (!violations.empty()) report.not_derivations.emplace_back(s, std::move(violations));
  }
  for (std::size_t s = 0; s < maps.size(); ++s)
    for (std::size_t t = s + 1; t < maps.size(); ++t)
      if (!commutator(maps[s], maps[t]).is_zero()) report.noncommuting.emplace_back(s, t);
  for (std::size_t s = 0; s < maps.size(); ++s) {
    Diagonalizability d = diagonalizable_over_rationals(maps[s]);
    if (d.diagonalizable) continue;
    report.not_diagonalizable.push_back(s);
    if (!d.conclusive)
      report.notes.push_back("map " + std::to_string(s + 1) +
                             ": rational root search incomplete; diagonalizability undecided");
    else if (d.has_irrational_eigenvalues)
      report.notes.push_back("map " + std::to_string(s + 1) +
                             ": irrational eigenvalues; semisimplicity over an extension not tested");
  }
  return report;
}

}  // namespace filiform

#endif  // FILIFORM_DERIVATIONS_HPP
