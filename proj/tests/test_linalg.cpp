#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "filiform/catalog.hpp"
#include "filiform/linalg.hpp"

using namespace filiform;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<Vector> vs;
  for (auto row : r) {
    Vector v;
    for (long x : row) v.push_back(Rational(x));
    vs.push_back(v);
  }
  return Matrix::from_rows(vs);
}

Matrix random_matrix(std::mt19937& gen, std::size_t r, std::size_t c, int bound, bool fractions) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 4);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = fractions ? Rational(num(gen), den(gen)) : Rational(num(gen));
  return m;
}

// Textbook Gauss-Jordan with division at every step; shares nothing with rref().
Matrix naive_rref(Matrix m) {
  std::size_t lead = 0;
  for (std::size_t r = 0; r < m.rows() && lead < m.cols(); ++r, ++lead) {
    std::size_t i = r;
    while (m(i, lead).is_zero()) {
      if (++i == m.rows()) {
        i = r;
        if (++lead == m.cols()) return m;
      }
    }
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(r, c));
    Rational lv = m(r, lead);
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) /= lv;
    for (std::size_t k = 0; k < m.rows(); ++k) {
      if (k == r) continue;
      Rational f = m(k, lead);
      for (std::size_t c = 0; c < m.cols(); ++c) m(k, c) -= f * m(r, c);
    }
  }
  return m;
}

// Leibniz expansion; only used on tiny matrices.
Rational leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t a = 0; a < n; ++a) term *= m(a, perm[a]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// E_k = sum of k x k principal minors; char poly is x^n - E_1 x^{n-1} + E_2 x^{n-2} - ...
std::vector<Rational> principal_minor_sums(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rational> sums(n + 1, Rational(0));
  sums[0] = Rational(1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = m(idx[a], idx[b]);
    sums[idx.size()] += leibniz_det(sub);
  }
  return sums;
}

bool power_oracle_nilpotent(const Matrix& m) {
  Matrix p = Matrix::identity(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) p = p * m;
  return p.is_zero();
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational::parse("2/4").to_string(), "1/2");
  EXPECT_EQ(Rational::parse("-6/3").to_string(), "-2");
  EXPECT_EQ(Rational::parse("+7").to_string(), "7");
  EXPECT_EQ(Rational::parse("0/5").to_string(), "0");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ((Rational(26, 5) + Rational(28, 25)).to_string(), "158/25");
  EXPECT_EQ(((Rational(-448) + Rational(1525)) / Rational(2000)).to_string(), "1077/2000");
}

TEST(Rational, RejectsMalformed) {
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/", "/2", "1 /2", "--1"})
    EXPECT_THROW(Rational::parse(bad), Error) << bad;
  EXPECT_THROW(Rational(1) / Rational(0), Error);
}

TEST(Rref, Examples) {
  auto id = rref(Matrix::identity(3));
  EXPECT_EQ(id.reduced, Matrix::identity(3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));

  auto dup = rref(rows({{1, 2}, {2, 4}}));
  EXPECT_EQ(dup.reduced, rows({{1, 2}, {0, 0}}));
  EXPECT_EQ(dup.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, DerivationSystemOfL4HasRankNine) {
  Matrix system = derivation_system(make_Ln(4));
  EXPECT_EQ(system.cols(), 16u);
  EXPECT_EQ(rank(system), 9u);
  EXPECT_EQ(nullspace(system).dim(), 7u);
}

TEST(Rref, MatchesNaiveGaussJordanAndIsIdempotent) {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 5;
    std::size_t c = 1 + (trial / 5) % 6;
    Matrix m = random_matrix(gen, r, c, 3, trial % 2 == 0);
    if (trial % 7 == 0 && r > 1)  // force dependencies
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Rational(-2, 3);
    auto result = rref(m);
    EXPECT_EQ(result.reduced, naive_rref(m));
    EXPECT_EQ(rref(result.reduced).reduced, result.reduced);
    EXPECT_TRUE(std::is_sorted(result.pivots.begin(), result.pivots.end()));
    EXPECT_EQ(std::adjacent_find(result.pivots.begin(), result.pivots.end()), result.pivots.end());
  }
}

TEST(Nullspace, Examples) {
  EXPECT_EQ(nullspace(Matrix(3, 3)).dim(), 3u);
  Subspace ns = nullspace(rows({{1, 1}}));
  ASSERT_EQ(ns.dim(), 1u);
  EXPECT_EQ(ns.basis()[0], (Vector{Rational(1), Rational(-1)}));
}

TEST(Nullspace, RankNullityAndKernelMembership) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_matrix(gen, 1 + trial % 4, 2 + trial % 5, 2, trial % 3 == 0);
    Subspace ns = nullspace(m);
    EXPECT_EQ(rank(m) + ns.dim(), m.cols());
    for (const auto& v : ns.basis()) EXPECT_TRUE(is_zero(m.apply(v)));
  }
}

TEST(Invert, Examples) {
  Vector w{Rational(1), Rational(2), Rational(3), Rational(4)};
  Vector winv{Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4)};
  EXPECT_EQ(invert(Matrix::diagonal(w)), Matrix::diagonal(winv));
  EXPECT_EQ(invert(Matrix::identity(5)), Matrix::identity(5));

  auto L4 = make_Ln(4);
  try {
    invert(ad_basis(L4, 0));
    FAIL() << "ad(Y1) should be singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(Invert, TwoSidedInverseOnRandomMatrices) {
  std::mt19937 gen(3);
  int inverted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m = random_matrix(gen, 4, 4, 4, trial % 2 == 1);
    auto inv = try_invert(m);
    EXPECT_EQ(inv.has_value(), !leibniz_det(m).is_zero());
    if (!inv) continue;
    ++inverted;
    EXPECT_EQ(*inv * m, Matrix::identity(4));
    EXPECT_EQ(m * *inv, Matrix::identity(4));
  }
  EXPECT_GT(inverted, 20);
}

TEST(Determinant, AgreesWithLeibniz) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m = random_matrix(gen, 1 + trial % 5, 1 + trial % 5, 3, trial % 2 == 0);
    EXPECT_EQ(determinant(m), leibniz_det(m));
  }
  EXPECT_EQ(determinant(Matrix(0, 0)), Rational(1));
}

TEST(Nilpotent, Examples) {
  EXPECT_TRUE(is_nilpotent(rows({{0, 1, 2, 3}, {0, 0, 4, 5}, {0, 0, 0, 6}, {0, 0, 0, 0}})));
  EXPECT_FALSE(is_nilpotent(Matrix::identity(4)));
  EXPECT_TRUE(is_nilpotent(ad_basis(make_Ln(4), 0)));
}

TEST(Nilpotent, AgreesWithCharacteristicPolynomialOracle) {
  std::mt19937 gen(19);
  std::uniform_int_distribution<int> d(-3, 3);
  int nilpotent_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix m(4, 4);
    if (trial % 2 == 0) {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = Rational(d(gen));
    } else {
      // conjugate a strictly upper triangular matrix by a unimodular one
      Matrix n(4, 4), p = Matrix::identity(4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
          n(i, j) = Rational(d(gen));
          p(j, i) = Rational(d(gen));
        }
      m = p * n * invert(p);
    }
    auto sums = principal_minor_sums(m);
    bool oracle = std::all_of(sums.begin() + 1, sums.end(), [](const Rational& x) { return x.is_zero(); });
    EXPECT_EQ(is_nilpotent(m), oracle);
    EXPECT_EQ(is_nilpotent(m), power_oracle_nilpotent(m));
    nilpotent_seen += oracle;
  }
  EXPECT_GE(nilpotent_seen, 50);
}

TEST(CharacteristicPolynomial, MatchesPrincipalMinors) {
  std::mt19937 gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(gen, 4, 4, 3, trial % 2 == 0);
    Polynomial p = characteristic_polynomial(m);
    auto sums = principal_minor_sums(m);
    for (std::size_t k = 0; k <= 4; ++k)
      EXPECT_EQ(p[4 - k], k % 2 ? -sums[k] : sums[k]);
  }
}

TEST(RationalRoots, FindsAllRationalRootsWithMultiplicity) {
  // x (x - 1/2) (x + 3)^2 = x^4 + 11/2 x^3 + 6 x^2 - 9/2 x
  Polynomial p{Rational(0), Rational(-9, 2), Rational(6), Rational(11, 2), Rational(1)};
  auto r = rational_roots(p);
  EXPECT_TRUE(r.exhaustive);
  ASSERT_EQ(r.roots.size(), 3u);
  EXPECT_EQ(r.roots[0], std::make_pair(Rational(-3), std::size_t{2}));
  EXPECT_EQ(r.roots[1], std::make_pair(Rational(0), std::size_t{1}));
  EXPECT_EQ(r.roots[2], std::make_pair(Rational(1, 2), std::size_t{1}));

  // x^2 - 2 has none
  EXPECT_TRUE(rational_roots({Rational(-2), Rational(0), Rational(1)}).roots.empty());
}

TEST(Span, Examples) {
  Subspace s = span({{Rational(1), Rational(0)}, {Rational(1), Rational(0)}}, 2);
  EXPECT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.basis()[0], (Vector{Rational(1), Rational(0)}));
  EXPECT_EQ(span({}, 4).dim(), 0u);
  EXPECT_EQ(span({}, 4).ambient_dim(), 4u);

  auto L4 = make_Ln(4);
  std::vector<Vector> images;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) images.push_back(bracket(L4, unit_vector(4, i), unit_vector(4, j)));
  EXPECT_EQ(span(images, 4), span({unit_vector(4, 2), unit_vector(4, 3)}, 4));
}

TEST(Span, DimensionMismatchIsReported) {
  EXPECT_THROW(span({{Rational(1)}}, 2), Error);
}
