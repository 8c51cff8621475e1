#ifndef FILIFORM_LINALG_HPP
#define FILIFORM_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "filiform/matrix.hpp"

namespace filiform {

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

/*
 * Reduced row-echelon form.
 *
 * Forward pass is fraction-free (Bareiss): every update is
 *   row_i <- (pivot * row_i - a_ic * row_r) / previous_pivot
 * which keeps integer input integral. The pivot is the first nonzero entry
 * of the column at or below the current row. A back-substitution pass then
 * normalizes pivots to 1 and clears the entries above them.
 */
inline RrefResult rref(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  // Zero rows never change; move them to the bottom up front.
  std::vector<bool> live(rows);
  {
    std::size_t write = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      bool nonzero = !is_zero(m.row(r));
      if (nonzero) {
        if (write != r) std::swap_ranges(m.row(r).begin(), m.row(r).end(), m.row(write).begin());
        live[write++] = true;
      }
    }
    for (std::size_t r = write; r < rows; ++r) live[r] = false;
  }

  std::vector<std::size_t> pivots;
  Rational previous(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(r).begin());
      std::swap(live[p], live[r]);
    }
    const Rational pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (!live[i]) continue;
      const Rational a = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        Rational v = pivot * m(i, j);
        if (!a.is_zero() && !m(r, j).is_zero()) v -= a * m(r, j);
        if (!v.is_zero()) v /= previous;
        m(i, j) = std::move(v);
      }
      m(i, c) = Rational(0);
      if (is_zero(m.row(i))) live[i] = false;
    }
    previous = pivot;
    pivots.push_back(c);
    ++r;
  }

  for (std::size_t s = pivots.size(); s-- > 0;) {
    const std::size_t pc = pivots[s];
    const Rational inv = Rational(1) / m(s, pc);
    for (std::size_t j = pc; j < cols; ++j)
      if (!m(s, j).is_zero()) m(s, j) *= inv;
    for (std::size_t t = 0; t < s; ++t) {
      const Rational factor = m(t, pc);
      if (factor.is_zero()) continue;
      for (std::size_t j = pc; j < cols; ++j)
        if (!m(s, j).is_zero()) m(t, j) -= factor * m(s, j);
    }
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Linear subspace of Q^n described by an RREF basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  static Subspace full(std::size_t n) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(unit_vector(n, i));
    return from_rref_rows(n, std::move(vs));
  }

  /// Coordinates of v in the RREF basis. Only meaningful when contains(v).
  Vector coordinates(std::span<const Rational> v) const {
    Vector out;
    out.reserve(pivots_.size());
    for (auto p : pivots_) out.push_back(v[p]);
    return out;
  }

  Vector combine(std::span<const Rational> coords) const {
    if (coords.size() != basis_.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate count");
    Vector v = zero_vector(ambient_dim_);
    for (std::size_t s = 0; s < basis_.size(); ++s) axpy(v, coords[s], basis_[s]);
    return v;
  }

  bool contains(std::span<const Rational> v) const {
    if (v.size() != ambient_dim_) throw Error(ErrorKind::DimensionMismatch, "subspace membership");
    Vector residual(v.begin(), v.end());
    for (std::size_t s = 0; s < basis_.size(); ++s) axpy(residual, -v[pivots_[s]], basis_[s]);
    return is_zero(residual);
  }

  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const Vector& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

  static Subspace from_rref_rows(std::size_t ambient_dim, std::vector<Vector> rows) {
    Subspace s(ambient_dim);
    for (auto& row : rows) {
      auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return !x.is_zero(); });
      s.pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
      s.basis_.push_back(std::move(row));
    }
    return s;
  }

 private:
  std::size_t ambient_dim_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// RREF basis of the span of the given vectors.
inline Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw Error(ErrorKind::DimensionMismatch, "span: vector size");
  if (vectors.empty()) return Subspace(ambient_dim);
  auto reduced = rref(Matrix::from_rows(vectors));
  std::vector<Vector> rows;
  for (std::size_t s = 0; s < reduced.rank(); ++s) {
    auto row = reduced.reduced.row(s);
    rows.emplace_back(row.begin(), row.end());
  }
  return Subspace::from_rref_rows(ambient_dim, std::move(rows));
}

/// {v : m v = 0}.
inline Subspace nullspace(const Matrix& m) {
  auto [reduced, pivots] = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> vs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(n);
    v[f] = Rational(1);
    for (std::size_t s = 0; s < pivots.size(); ++s) v[pivots[s]] = -reduced(s, f);
    vs.push_back(std::move(v));
  }
  return span(vs, n);
}

inline Matrix invert(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "invert: matrix not square");
  const std::size_t n = m.rows();
  Matrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = Rational(1);
  }
  auto [reduced, pivots] = rref(std::move(augmented));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorKind::Singular, "matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = reduced(r, n + c);
  return inv;
}

inline std::optional<Matrix> try_invert(const Matrix& m) {
  try {
    return invert(m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return std::nullopt;
    throw;
  }
}

/// Exact determinant by Gaussian elimination; det of the 0x0 matrix is 1.
inline Rational determinant(Matrix m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant: matrix not square");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(c).begin());
      det = -det;
    }
    det *= m(c, c);
    const Rational inv = Rational(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Rational factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// m^n == 0, tested by repeated squaring up to an exponent >= n.
inline bool is_nilpotent(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "is_nilpotent: matrix not square");
  const std::size_t n = m.rows();
  Matrix power = m;
  for (std::size_t exponent = 1; exponent < n; exponent *= 2) {
    if (power.is_zero()) return true;
    power = power * power;
  }
  return power.is_zero();
}

// ---------------------------------------------------------------------------
// Polynomials over Q, coefficients stored lowest degree first.

using Polynomial = std::vector<Rational>;

inline Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Monic characteristic polynomial det(xI - m) by the Faddeev-LeVerrier recursion.
inline Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "characteristic polynomial");
  const std::size_t n = m.rows();
  Polynomial coeffs(n + 1);
  coeffs[n] = Rational(1);
  Matrix running(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    running = m * running;
    for (std::size_t i = 0; i < n; ++i) running(i, i) += coeffs[n - k + 1];
    Matrix product = m * running;
    Rational trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += product(i, i);
    coeffs[n - k] = -trace / Rational(static_cast<long>(k));
  }
  return coeffs;
}

struct RationalRoots {
  std::vector<std::pair<Rational, std::size_t>> roots;  // value, multiplicity
  /// False when an integer coefficient could not be fully factored, in which
  /// case some rational roots may have been missed.
  bool exhaustive = true;
};

namespace detail {

inline std::vector<mpz_class> divisors_of(mpz_class value, bool& complete) {
  value = abs(value);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  const unsigned long bound = 1000000;
  for (unsigned long p = 2; p <= bound && mpz_class(p) * p <= value; ++p) {
    if (mpz_divisible_ui_p(value.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(value.get_mpz_t(), p) != 0) {
      value /= p;
      ++e;
    }
    factors.emplace_back(mpz_class(p), e);
  }
  if (value > 1) {
    if (mpz_class(bound) * bound < value && mpz_probab_prime_p(value.get_mpz_t(), 30) == 0)
      complete = false;
    factors.emplace_back(value, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t existing = divs.size();
    mpz_class power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t d = 0; d < existing; ++d) divs.push_back(divs[d] * power);
    }
  }
  return divs;
}

inline Polynomial deflate(const Polynomial& p, const Rational& root) {
  // synthetic division by (x - root); assumes p(root) == 0
  Polynomial q(p.size() - 1);
  Rational carry(0);
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * root + p[i];
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace detail

/// Rational roots via the rational root theorem on the integer-scaled polynomial.
inline RationalRoots rational_roots(Polynomial p) {
  RationalRoots out;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.size() <= 1) return out;

  std::size_t zero_multiplicity = 0;
  while (p.front().is_zero()) {
    p.erase(p.begin());
    ++zero_multiplicity;
  }
  if (zero_multiplicity > 0) out.roots.emplace_back(Rational(0), zero_multiplicity);
  if (p.size() <= 1) return out;

  mpz_class lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  const Rational scale(lcm_den);
  mpz_class constant = (p.front() * scale).numerator();
  mpz_class leading = (p.back() * scale).numerator();

  bool complete = true;
  auto numerators = detail::divisors_of(constant, complete);
  auto denominators = detail::divisors_of(leading, complete);
  out.exhaustive = complete;

  std::vector<Rational> candidates;
  for (const auto& a : numerators)
    for (const auto& b : denominators) {
      Rational c(mpq_class(a, b));
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& c : candidates) {
    std::size_t multiplicity = 0;
    while (p.size() > 1 && evaluate(p, c).is_zero()) {
      p = detail::deflate(p, c);
      ++multiplicity;
    }
    if (multiplicity > 0) out.roots.emplace_back(c, multiplicity);
    if (p.size() <= 1) break;
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace filiform

#endif  // FILIFORM_LINALG_HPP
