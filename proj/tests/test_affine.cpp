#include <gtest/gtest.h>

#include <random>

#include "filiform/affine.hpp"
#include "filiform/catalog.hpp"

using namespace filiform;

namespace {

Matrix diag(std::initializer_list<long> w) {
  Vector v;
  for (long x : w) v.push_back(Rational(x));
  return Matrix::diagonal(v);
}

Vector e(std::size_t n, std::size_t one_based) { return unit_vector(n, one_based - 1); }

Vector random_vector(std::mt19937& gen, std::size_t n) {
  std::uniform_int_distribution<int> d(-4, 4);
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Rational(d(gen)));
  return v;
}

// Axioms on arbitrary vectors, through product() only.
void expect_axioms_on_random_vectors(const LieAlgebra& a, const AffineStructure& s, unsigned seed) {
  std::mt19937 gen(seed);
  for (int trial = 0; trial < 10; ++trial) {
    Vector x = random_vector(gen, a.dim()), y = random_vector(gen, a.dim()), z = random_vector(gen, a.dim());
    EXPECT_EQ(s.product(x, y) - s.product(y, x), bracket(a, x, y));
    Vector lhs = s.product(x, s.product(y, z)) - s.product(s.product(x, y), z);
    Vector rhs = s.product(y, s.product(x, z)) - s.product(s.product(y, x), z);
    EXPECT_EQ(lhs, rhs);
  }
}

void expect_torsion_tensor(const LieAlgebra& a, const AffineStructure& s) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        EXPECT_EQ(s.gamma(i, j, k) - s.gamma(j, i, k), a.constant(i, j, k));
}

TwoForm l4_symplectic() {
  TwoForm t(4);
  t.set(0, 3, Rational(1)).set(1, 2, Rational(1));
  return t;
}

}  // namespace

TEST(VerifyAffine, Examples) {
  auto L4 = make_Ln(4);
  EXPECT_TRUE(verify_affine(L4, from_regular_derivation(L4, diag({1, 2, 3, 4}))).passed());

  auto zero = verify_affine(L4, AffineStructure(4));
  ASSERT_FALSE(zero.torsion_violations.empty());
  EXPECT_EQ(zero.torsion_violations[0].i, 0u);
  EXPECT_EQ(zero.torsion_violations[0].j, 1u);
  EXPECT_EQ(to_dense(zero.torsion_violations[0].residual, 4), scaled(e(4, 3), Rational(-1)));
  EXPECT_TRUE(zero.leftsym_violations.empty());

  EXPECT_TRUE(verify_affine(make_abelian(3), AffineStructure(3)).passed());
}

TEST(VerifyAffine, DetectsLeftSymmetryFailure) {
  // Half-bracket product x.y = [x,y]/2 is torsion-free but not left-symmetric on L_4.
  auto L4 = make_Ln(4);
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < 4; ++i) left.push_back(ad_basis(L4, i) * Rational(1, 2));
  AffineStructure s(left, {});
  auto r = verify_affine(L4, s);
  EXPECT_TRUE(r.torsion_violations.empty());
  EXPECT_FALSE(r.leftsym_violations.empty());
}

TEST(FromRegularDerivation, HandValuesOnL4) {
  auto L4 = make_Ln(4);
  auto s = from_regular_derivation(L4, diag({1, 2, 3, 4}));
  EXPECT_EQ(s.product(e(4, 1), e(4, 2)), scaled(e(4, 3), Rational(2, 3)));
  EXPECT_EQ(s.product(e(4, 2), e(4, 1)), scaled(e(4, 3), Rational(-1, 3)));
  EXPECT_EQ(s.gamma(0, 1, 2), Rational(2, 3));
  EXPECT_EQ(s.product(e(4, 1), e(4, 2)) - s.product(e(4, 2), e(4, 1)), bracket(L4, e(4, 1), e(4, 2)));
  expect_torsion_tensor(L4, s);
}

TEST(FromRegularDerivation, Errors) {
  auto C6 = make_Cn(6, {Rational(1)}).algebra;
  try {
    from_regular_derivation(C6, diag({0, 1, 1, 1, 1, 2}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::Singular);
  }
  try {
    from_regular_derivation(make_Ln(4), Matrix::identity(4));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotADerivation);
  }
}

TEST(FromRegularDerivation, ScalingInvariance) {
  auto L6 = make_Ln(6);
  Matrix f = standard_torus(Family::Ln, 6)[1];
  auto base = from_regular_derivation(L6, f);
  for (Rational c : {Rational(2), Rational(-1, 3), Rational(7, 5)})
    EXPECT_TRUE(from_regular_derivation(L6, f * c).same_product(base));
}

TEST(FromRegularDerivation, SoundOnRandomRegularDerivations) {
  for (const auto& a : {make_Ln(6), make_Qn(8, false), make_Qn(6, true)}) {
    auto f = find_regular_derivation(derivation_space(a), 3, 32);
    ASSERT_TRUE(f.has_value()) << a.name();
    auto s = from_regular_derivation(a, *f);
    EXPECT_TRUE(verify_affine(a, s).passed()) << a.name();
    expect_torsion_tensor(a, s);
    expect_axioms_on_random_vectors(a, s, 4);
  }
}

TEST(FromDerivedRegular, HandValuesOnC6) {
  auto C6 = make_Cn(6, {Rational(1)}).algebra;
  auto s = from_derived_regular(C6, diag({0, 1, 1, 1, 1, 2}));
  EXPECT_EQ(s.product(e(6, 2), e(6, 5)), scaled(e(6, 6), Rational(-1, 2)));
  EXPECT_TRUE(is_zero(s.product(e(6, 2), e(6, 1))));
  EXPECT_TRUE(verify_affine(C6, s).passed());
  expect_torsion_tensor(C6, s);
  expect_axioms_on_random_vectors(C6, s, 5);
}

TEST(FromDerivedRegular, AgreesWithDirectDefinition) {
  // nabla_X Y = (f|_D)^{-1}([X, f(Y)]), solved here in the coordinates of D.
  std::vector<std::pair<LieAlgebra, Matrix>> cases{
      {make_Cn(6, {Rational(1)}).algebra, diag({0, 1, 1, 1, 1, 2})},
      {make_Cn(8, {Rational(1), Rational(2)}).algebra, diag({0, 1, 1, 1, 1, 1, 1, 2})},
      {make_Ln(4), diag({1, 2, 3, 4})},
      {make_Ln(5), standard_torus(Family::Ln, 5)[0]}};
  for (const auto& [a, f] : cases) {
    const std::size_t n = a.dim();
    auto s = from_derived_regular(a, f);
    EXPECT_TRUE(verify_affine(a, s).passed()) << a.name();
    Subspace D = derived_subalgebra(a);
    Matrix basis = Matrix::from_columns(D.basis(), n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vector target = bracket(a, e(n, i + 1), f.apply(e(n, j + 1)));
        ASSERT_TRUE(D.contains(target));
        // v in D with f v = target: solve (f * basis) c = target by RREF of the augmented system
        Matrix fb = f * basis;
        Matrix aug(n, fb.cols() + 1);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < fb.cols(); ++c) aug(r, c) = fb(r, c);
          aug(r, fb.cols()) = target[r];
        }
        auto red = rref(aug);
        ASSERT_TRUE(red.pivots.empty() || red.pivots.back() < fb.cols());
        Vector coords(fb.cols(), Rational(0));
        for (std::size_t p = 0; p < red.pivots.size(); ++p) coords[red.pivots[p]] = red.reduced(p, fb.cols());
        EXPECT_EQ(s.product(e(n, i + 1), e(n, j + 1)), basis.apply(coords)) << a.name() << " " << i << "," << j;
      }
  }
}

TEST(FromDerivedRegular, L4AgreesWithRegularConstruction) {
  auto L4 = make_Ln(4);
  Matrix f = diag({1, 2, 3, 4});
  EXPECT_TRUE(from_derived_regular(L4, f).same_product(from_regular_derivation(L4, f)));
}

TEST(FromDerivedRegular, Errors) {
  try {
    from_derived_regular(make_Ln(4), Matrix(4, 4));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::SingularOnDerived);
  }
  try {
    from_derived_regular(make_Ln(4), Matrix::identity(4));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotADerivation);
  }
}

TEST(FromSymplectic, HandValuesOnL4) {
  auto L4 = make_Ln(4);
  auto s = from_symplectic(L4, l4_symplectic());
  EXPECT_EQ(s.product(e(4, 1), e(4, 2)), e(4, 3));
  EXPECT_TRUE(is_zero(s.product(e(4, 2), e(4, 1))));
  EXPECT_TRUE(verify_affine(L4, s).passed());
  expect_torsion_tensor(L4, s);
  expect_axioms_on_random_vectors(L4, s, 6);
}

TEST(FromSymplectic, DefiningIdentity) {
  // theta(ad X (Y), Z) = -theta(Y, X.Z) on all basis triples
  auto L4 = make_Ln(4);
  TwoForm th = l4_symplectic();
  auto s = from_symplectic(L4, th);
  for (std::size_t x = 1; x <= 4; ++x)
    for (std::size_t y = 1; y <= 4; ++y)
      for (std::size_t z = 1; z <= 4; ++z)
        EXPECT_EQ(th(bracket(L4, e(4, x), e(4, y)), e(4, z)), -th(e(4, y), s.product(e(4, x), e(4, z))));
}

TEST(FromSymplectic, Errors) {
  auto L4 = make_Ln(4);
  TwoForm open(4);
  open.set(1, 3, Rational(1));
  try {
    from_symplectic(L4, open);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotClosed);
  }
  TwoForm degenerate(4);
  degenerate.set(0, 1, Rational(1));
  try {
    from_symplectic(L4, degenerate);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::Degenerate);
  }
}

TEST(FromSymplectic, ScalingInvariance) {
  auto L4 = make_Ln(4);
  auto base = from_symplectic(L4, l4_symplectic());
  for (Rational c : {Rational(2), Rational(-3, 5)})
    EXPECT_TRUE(from_symplectic(L4, c * l4_symplectic()).same_product(base));
}

TEST(FindSymplectic, Examples) {
  auto L4 = make_Ln(4);
  auto th = find_symplectic(L4, 0, 32);
  ASSERT_TRUE(th.has_value());
  EXPECT_TRUE(is_closed(L4, *th));
  EXPECT_TRUE(nondegenerate(*th));
  EXPECT_TRUE((*th)(e(4, 2), e(4, 4)).is_zero());
  EXPECT_TRUE((*th)(e(4, 3), e(4, 4)).is_zero());

  EXPECT_FALSE(find_symplectic(make_benoist(Rational(1)), 0, 32).has_value());

  auto ab = find_symplectic(make_abelian(4), 0, 32);
  ASSERT_TRUE(ab.has_value());
  EXPECT_TRUE(nondegenerate(*ab));
}

TEST(ClosedTwoForms, L4SpaceHasFourParameters) {
  // theta_24 = theta_34 = 0, the other four free
  auto forms = closed_two_forms(make_Ln(4));
  EXPECT_EQ(forms.size(), 4u);
  for (const auto& f : forms) EXPECT_TRUE(is_closed(make_Ln(4), f));
}

TEST(Synthesize, Examples) {
  auto L12 = make_Ln(12);
  auto s = synthesize(L12, Strategy::Auto, 0, 32);
  ASSERT_TRUE(s.succeeded());
  EXPECT_EQ(*s.strategy, Strategy::Regular);
  EXPECT_TRUE(verify_affine(L12, *s.structure).passed());
  EXPECT_EQ(s.structure->provenance().seed, std::optional<std::uint64_t>(0));

  auto b = synthesize(make_benoist(Rational(1)), Strategy::Auto, 0, 16);
  EXPECT_FALSE(b.succeeded());
  ASSERT_EQ(b.attempts.size(), 3u);
  for (const auto& at : b.attempts) EXPECT_FALSE(at.reason.empty());
  EXPECT_NE(b.attempts[2].reason.find("odd"), std::string::npos);
}

TEST(Synthesize, C6WithExplicitStrategies) {
  auto C6 = make_Cn(6, {Rational(1)}).algebra;
  auto d = synthesize(C6, Strategy::DerivedRegular, 0, 32);
  ASSERT_TRUE(d.succeeded());
  EXPECT_EQ(*d.derivation, diag({0, 1, 1, 1, 1, 2}));
  EXPECT_TRUE(verify_affine(C6, *d.structure).passed());
  EXPECT_TRUE(d.structure->same_product(from_derived_regular(C6, diag({0, 1, 1, 1, 1, 2}))));

  // auto takes the regular route first; this presentation admits one
  auto a = synthesize(C6, Strategy::Auto, 0, 32);
  ASSERT_TRUE(a.succeeded());
  EXPECT_EQ(*a.strategy, Strategy::Regular);
  EXPECT_TRUE(verify_affine(C6, *a.structure).passed());
}

TEST(Synthesize, SymplecticOnly) {
  auto L4 = make_Ln(4);
  auto s = synthesize(L4, Strategy::Symplectic, 0, 32);
  ASSERT_TRUE(s.succeeded());
  ASSERT_TRUE(s.form.has_value());
  EXPECT_TRUE(s.structure->same_product(from_symplectic(L4, *s.form)));
}

TEST(Synthesize, JacobiFailureBlocksEveryStrategy) {
  auto bad = make_Ln(4);
  bad.add_bracket(1, 3, 2, Rational(1));
  auto s = synthesize(bad, Strategy::Auto, 0, 8);
  EXPECT_FALSE(s.succeeded());
  EXPECT_EQ(s.attempts.size(), 3u);
}

TEST(Synthesize, DeterministicForFixedSeed) {
  auto Q8 = make_Qn(8, false);
  auto a = synthesize(Q8, Strategy::Auto, 11, 16);
  auto b = synthesize(Q8, Strategy::Auto, 11, 16);
  ASSERT_TRUE(a.succeeded());
  EXPECT_TRUE(a.structure->same_product(*b.structure));
  EXPECT_EQ(a.derivation, b.derivation);
}

TEST(Strategy, ParseRoundTrip) {
  for (auto s : {Strategy::Auto, Strategy::Regular, Strategy::DerivedRegular, Strategy::Symplectic})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_strategy("best"), Error);
}
