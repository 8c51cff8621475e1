#ifndef FILIFORM_LIE_ALGEBRA_HPP
#define FILIFORM_LIE_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "filiform/linalg.hpp"

namespace filiform {

/// Sparse vector: basis index -> nonzero coefficient.
using SparseVector = std::map<std::size_t, Rational>;

inline Vector to_dense(const SparseVector& s, std::size_t n) {
  Vector v = zero_vector(n);
  for (const auto& [k, c] : s) v.at(k) = c;
  return v;
}

inline SparseVector to_sparse(std::span<const Rational> v) {
  SparseVector s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) s.emplace(k, v[k]);
  return s;
}

/*
 * Finite-dimensional Lie algebra over Q given by structure constants
 * [e_i, e_j] = sum_k c_ij^k e_k.
 *
 * Indices are 0-based here; names and all serialized forms are 1-based.
 * Only pairs i < j are stored, so antisymmetry and [e_i, e_i] = 0 hold by
 * construction. The Jacobi identity is not enforced; use jacobi_report.
 */
class LieAlgebra {
 public:
  using PairKey = std::pair<std::size_t, std::size_t>;

  LieAlgebra() = default;
  LieAlgebra(std::size_t dim, std::string name, std::vector<std::string> basis_names = {})
      : dim_(dim), name_(std::move(name)), basis_names_(std::move(basis_names)) {
    if (basis_names_.empty())
      for (std::size_t i = 0; i < dim_; ++i) basis_names_.push_back("e" + std::to_string(i + 1));
    if (basis_names_.size() != dim_)
      throw Error(ErrorKind::DimensionMismatch, "basis name count differs from dimension");
  }

  /// [e_i, e_j] += coeff * e_k; (i, j) may be given in either order.
  LieAlgebra& add_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& coeff) {
    if (i >= dim_ || j >= dim_ || k >= dim_)
      throw Error(ErrorKind::DimensionMismatch, "bracket index out of range");
    if (i == j || coeff.is_zero()) return *this;
    Rational c = coeff;
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    auto& entry = structure_[{i, j}];
    entry[k] += c;
    if (entry[k].is_zero()) entry.erase(k);
    if (entry.empty()) structure_.erase({i, j});
    return *this;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& basis_names() const noexcept { return basis_names_; }
  const std::map<PairKey, SparseVector>& structure() const noexcept { return structure_; }

  /// Free-form remarks attached by constructors (e.g. how a display was read).
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  void set_name(std::string name) { name_ = std::move(name); }

  /// c_ij^k for any ordered pair.
  Rational constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return Rational(0);
    bool flip = i > j;
    auto it = structure_.find(flip ? PairKey{j, i} : PairKey{i, j});
    if (it == structure_.end()) return Rational(0);
    auto kt = it->second.find(k);
    if (kt == it->second.end()) return Rational(0);
    return flip ? -kt->second : kt->second;
  }

  /// [e_i, e_j] as a sparse vector.
  SparseVector basis_bracket(std::size_t i, std::size_t j) const {
    if (i == j) return {};
    bool flip = i > j;
    auto it = structure_.find(flip ? PairKey{j, i} : PairKey{i, j});
    if (it == structure_.end()) return {};
    SparseVector out = it->second;
    if (flip)
      for (auto& [k, c] : out) c = -c;
    return out;
  }

  bool is_abelian() const noexcept { return structure_.empty(); }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.structure_ == b.structure_;
  }

 private:
  std::size_t dim_ = 0;
  std::string name_;
  std::vector<std::string> basis_names_;
  std::map<PairKey, SparseVector> structure_;
  std::vector<std::string> notes_;
};

inline LieAlgebra make_abelian(std::size_t n) { return LieAlgebra(n, "abelian" + std::to_string(n)); }

inline void require_dim(const LieAlgebra& a, std::size_t size, const char* what) {
  if (size != a.dim())
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(a.dim()) + ", got " +
                    std::to_string(size));
}

inline Vector bracket(const LieAlgebra& a, std::span<const Rational> x, std::span<const Rational> y) {
  require_dim(a, x.size(), "bracket");
  require_dim(a, y.size(), "bracket");
  Vector out = zero_vector(a.dim());
  for (const auto& [key, coeffs] : a.structure()) {
    const auto [i, j] = key;
    Rational w = x[i] * y[j] - x[j] * y[i];
    if (w.is_zero()) continue;
    for (const auto& [k, c] : coeffs) out[k] += w * c;
  }
  return out;
}

/// [e_i, v] for sparse v.
inline SparseVector bracket_basis_with(const LieAlgebra& a, std::size_t i, const SparseVector& v) {
  SparseVector out;
  for (const auto& [j, vj] : v) {
    for (const auto& [k, c] : a.basis_bracket(i, j)) {
      auto& slot = out[k];
      slot += vj * c;
      if (slot.is_zero()) out.erase(k);
    }
  }
  return out;
}

/// Matrix of y -> [x, y].
inline Matrix ad(const LieAlgebra& a, std::span<const Rational> x) {
  require_dim(a, x.size(), "ad");
  const std::size_t n = a.dim();
  Matrix m(n, n);
  for (const auto& [key, coeffs] : a.structure()) {
    const auto [i, j] = key;
    // x_i [e_i, e_j] lands in column j; x_j [e_j, e_i] lands in column i
    for (const auto& [k, c] : coeffs) {
      if (!x[i].is_zero()) m(k, j) += x[i] * c;
      if (!x[j].is_zero()) m(k, i) -= x[j] * c;
    }
  }
  return m;
}

inline Matrix ad_basis(const LieAlgebra& a, std::size_t i) { return ad(a, unit_vector(a.dim(), i)); }

struct JacobiViolation {
  std::size_t i, j, k;  // 0-based, i < j < k
  SparseVector residual;
};

/// Every basis triple i<j<k whose Jacobiator is nonzero, with the exact residual.
inline std::vector<JacobiViolation> jacobi_report(const LieAlgebra& a) {
  std::vector<JacobiViolation> out;
  const std::size_t n = a.dim();
  auto add_into = [](SparseVector& acc, const SparseVector& v) {
    for (const auto& [k, c] : v) {
      auto& slot = acc[k];
      slot += c;
      if (slot.is_zero()) acc.erase(k);
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        SparseVector r;
        add_into(r, bracket_basis_with(a, i, a.basis_bracket(j, k)));
        add_into(r, bracket_basis_with(a, j, a.basis_bracket(k, i)));
        add_into(r, bracket_basis_with(a, k, a.basis_bracket(i, j)));
        if (!r.empty()) out.push_back({i, j, k, std::move(r)});
      }
  return out;
}

inline bool is_lie_algebra(const LieAlgebra& a) { return jacobi_report(a).empty(); }

/// span{[e_i, v] : e_i basis, v in s}.
inline Subspace bracket_with_algebra(const LieAlgebra& a, const Subspace& s) {
  std::vector<Vector> images;
  for (const auto& v : s.basis()) {
    SparseVector sv = to_sparse(v);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      auto img = bracket_basis_with(a, i, sv);
      if (!img.empty()) images.push_back(to_dense(img, a.dim()));
    }
  }
  return span(images, a.dim());
}

/// [C^0 = g, C^1, C^2, ...], stopping at the first term equal to its predecessor.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& a) {
  std::vector<Subspace> series{Subspace::full(a.dim())};
  while (true) {
    Subspace next = bracket_with_algebra(a, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline std::vector<std::size_t> series_dims(const std::vector<Subspace>& series) {
  std::vector<std::size_t> dims;
  for (const auto& s : series) dims.push_back(s.dim());
  return dims;
}

inline Subspace derived_subalgebra(const LieAlgebra& a) {
  std::vector<Vector> images;
  for (const auto& [key, coeffs] : a.structure()) images.push_back(to_dense(coeffs, a.dim()));
  return span(images, a.dim());
}

inline bool is_nilpotent(const LieAlgebra& a) { return lower_central_series(a).back().dim() == 0; }

/// Nilpotent with dim C^i = n - i - 1 for i = 1..n-1.
inline bool is_filiform(const LieAlgebra& a) {
  const auto series = lower_central_series(a);
  const std::size_t n = a.dim();
  if (series.back().dim() != 0) return false;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    std::size_t expected = n - i - 1;
    std::size_t actual = i < series.size() ? series[i].dim() : 0;
    if (actual != expected) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Two-forms

/// Antisymmetric bilinear form theta(e_i, e_j) = gram(i, j).
class TwoForm {
 public:
  explicit TwoForm(std::size_t dim = 0) : gram_(dim, dim) {}

  explicit TwoForm(Matrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square()) throw Error(ErrorKind::DimensionMismatch, "gram matrix not square");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (gram_(i, j) != -gram_(j, i))
          throw Error(ErrorKind::Parse, "gram matrix is not antisymmetric");
  }

  /// theta(e_i, e_j) = value, theta(e_j, e_i) = -value.
  TwoForm& set(std::size_t i, std::size_t j, const Rational& value) {
    if (i == j) {
      if (!value.is_zero()) throw Error(ErrorKind::Parse, "two-form diagonal must vanish");
      return *this;
    }
    gram_.at(i, j) = value;
    gram_.at(j, i) = -value;
    return *this;
  }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const Matrix& gram() const noexcept { return gram_; }

  Rational operator()(std::span<const Rational> x, std::span<const Rational> y) const {
    Vector gy = gram_.apply(y);
    Rational acc(0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) acc += x[i] * gy[i];
    return acc;
  }

  friend TwoForm operator*(const Rational& c, const TwoForm& t) { return TwoForm(t.gram_ * c); }
  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) { return TwoForm(a.gram_ + b.gram_); }
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return a.gram_ == b.gram_; }

 private:
  Matrix gram_;
};

struct CoboundaryEntry {
  std::size_t i, j, k;  // 0-based, i < j < k
  Rational value;
};

/// Nonzero values of d theta(e_i, e_j, e_k) = theta(e_i,[e_j,e_k]) + theta(e_j,[e_k,e_i]) + theta(e_k,[e_i,e_j]).
inline std::vector<CoboundaryEntry> dtheta_residual(const LieAlgebra& a, const TwoForm& theta) {
  require_dim(a, theta.dim(), "dtheta_residual");
  const std::size_t n = a.dim();
  const Matrix& g = theta.gram();
  auto pair = [&](std::size_t x, const SparseVector& v) {
    Rational acc(0);
    for (const auto& [k, c] : v) acc += g(x, k) * c;
    return acc;
  };
  std::vector<CoboundaryEntry> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Rational v = pair(i, a.basis_bracket(j, k)) + pair(j, a.basis_bracket(k, i)) +
                     pair(k, a.basis_bracket(i, j));
        if (!v.is_zero()) out.push_back({i, j, k, std::move(v)});
      }
  return out;
}

inline bool is_closed(const LieAlgebra& a, const TwoForm& theta) { return dtheta_residual(a, theta).empty(); }

inline bool nondegenerate(const TwoForm& theta) {
  if (theta.dim() % 2 == 1) return false;
  return !determinant(theta.gram()).is_zero();
}

}  // namespace filiform

#endif  // FILIFORM_LIE_ALGEBRA_HPP
