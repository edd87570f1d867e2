#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pillai/parse.hpp"
#include "pillai/qfield.hpp"

using namespace pillai;

namespace {

QFieldElement el(long x, long y, long d) { return QFieldElement(mpq_class(x), mpq_class(y), mpz_class(d)); }

bool height_le(const QFieldElement& lhs, const CertifiedReal& rhs) {
  return qf_height(lhs, 128).lo() <= rhs.hi();
}

}  // namespace

TEST(QField, SquarefreeSplit) {
  auto s = squarefree_split(mpz_class(32));
  EXPECT_EQ(s.kernel, 2);
  EXPECT_EQ(s.root, 4);
  s = squarefree_split(mpz_class(45));
  EXPECT_EQ(s.kernel, 5);
  EXPECT_EQ(s.root, 3);
  EXPECT_THROW(squarefree_split(mpz_class(0)), DomainError);
}

TEST(QField, RadicandIsReducedOnConstruction) {
  QFieldElement v(mpq_class(1), mpq_class(1), mpz_class(12));  // 1 + 2 sqrt(3)
  EXPECT_EQ(v.d(), 3);
  EXPECT_EQ(v.y(), 2);
  QFieldElement r(mpq_class(1), mpq_class(1), mpz_class(16));
  EXPECT_TRUE(r.is_rational());
  EXPECT_EQ(r.x(), 5);
}

TEST(QField, ArithmeticAndNorm) {
  QFieldElement theta(mpq_class(5, 2), mpq_class(1, 2), mpz_class(21));
  EXPECT_EQ(theta.norm(), 1);
  EXPECT_EQ(theta.trace(), 5);
  QFieldElement inv = QFieldElement(1) / theta;
  EXPECT_EQ(inv, theta.conj());
  EXPECT_EQ(theta * theta, QFieldElement(mpq_class(23, 2), mpq_class(5, 2), mpz_class(21)));
  EXPECT_EQ(pow(theta, -2) * pow(theta, 2), QFieldElement(1));
  EXPECT_EQ(theta.to_string(), "(5+sqrt(21))/2");
  EXPECT_EQ(el(2, 1, 3).to_string(), "2+sqrt(3)");
}

TEST(QField, FieldMismatchThrows) {
  EXPECT_THROW(el(1, 1, 3) + el(1, 1, 21), DomainError);
  EXPECT_THROW(QFieldElement(1) / QFieldElement(0), DomainError);
}

TEST(QField, ExactSign) {
  EXPECT_EQ(el(-2, 1, 3).sign(), -1);  // sqrt(3) < 2
  EXPECT_EQ(el(-1, 1, 3).sign(), 1);
  EXPECT_EQ(el(0, 0, 3).sign(), 0);
  EXPECT_TRUE(el(2, 1, 3) > el(3, 0, 3));
}

TEST(QField, SameField) {
  EXPECT_TRUE(same_field(mpz_class(12), mpz_class(3)));
  EXPECT_FALSE(same_field(mpz_class(12), mpz_class(21)));
  EXPECT_FALSE(same_field(mpz_class(32), mpz_class(45)));
  EXPECT_THROW(same_field(mpz_class(4), mpz_class(3)), DomainError);
}

TEST(QField, MinimalPolynomial) {
  IntPolynomial f = qf_minpoly(QFieldElement(mpq_class(3, 6), mpq_class(1, 6), mpz_class(3)));
  // (3 + sqrt 3)/6 is a root of 6x^2 - 6x + 1
  ASSERT_EQ(f.degree(), 2);
  EXPECT_EQ(f.coeffs[0], 1);
  EXPECT_EQ(f.coeffs[1], -6);
  EXPECT_EQ(f.coeffs[2], 6);
  IntPolynomial g = qf_minpoly(QFieldElement(mpq_class(-3, 4)));
  EXPECT_EQ(g.coeffs, (std::vector<mpz_class>{3, 4}));
}

TEST(QField, EvalEnclosesValue) {
  QFieldElement v(mpq_class(7, 14), mpq_class(1, 14), mpz_class(21));
  CertifiedReal r = v.eval(200);
  auto [lo, hi] = oracle::sqrt(mpq_class(21), 400);
  mpq_class vlo = mpq_class(1, 2) + lo / 14, vhi = mpq_class(1, 2) + hi / 14;
  EXPECT_LE(r.lo().to_mpq(), vhi);
  EXPECT_GE(r.hi().to_mpq(), vlo);
  EXPECT_LT(r.width().to_mpq(), mpq_class(1, 1) / pow2(190));
}

TEST(QField, HeightKnownValues) {
  EXPECT_NEAR(qf_height(QFieldElement(mpq_class(3, 2)), 128).mid().to_double(), std::log(3.0), 1e-15);
  // theta = 2 + sqrt 3 is a unit: h = log(theta)/2
  EXPECT_NEAR(qf_height(el(2, 1, 3), 128).mid().to_double(), std::log(2 + std::sqrt(3.0)) / 2, 1e-15);
  EXPECT_THROW(qf_height(el(2, 1, 3), 32), DomainError);
}

TEST(QField, HeightAgreesWithMpfr) {
  std::mt19937_64 rng(11);
  for (long d : {2L, 3L, 5L, 21L, 77L}) {
    for (int i = 0; i < 20; ++i) {
      QFieldElement v = oracle::random_element(rng, mpz_class(d));
      CertifiedReal h = qf_height(v, 128);
      double want = oracle::height(v);
      EXPECT_LE(h.lo().to_double(), want + 1e-14) << v.to_string();
      EXPECT_GE(h.hi().to_double(), want - 1e-14) << v.to_string();
    }
  }
}

TEST(QFieldProperty, HeightOfSumAndDifference) {
  std::mt19937_64 rng(24);
  CertifiedReal log2 = cr_ln(CertifiedReal(2, 160), 160);
  for (int i = 0; i < 100; ++i) {
    mpz_class d = std::vector<long>{2, 3, 5, 6, 7, 21}[i % 6];
    QFieldElement x = oracle::random_element(rng, d), y = oracle::random_element(rng, d);
    CertifiedReal rhs = qf_height(x, 128) + qf_height(y, 128) + log2;
    EXPECT_TRUE(height_le(x + y, rhs)) << x.to_string() << " + " << y.to_string();
    EXPECT_TRUE(height_le(x - y, rhs)) << x.to_string() << " - " << y.to_string();
  }
}

TEST(QFieldProperty, HeightOfProductAndQuotient) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 100; ++i) {
    mpz_class d = std::vector<long>{2, 3, 5, 6, 7, 21}[i % 6];
    QFieldElement x = oracle::random_element(rng, d), y = oracle::random_element(rng, d);
    CertifiedReal rhs = qf_height(x, 128) + qf_height(y, 128);
    EXPECT_TRUE(height_le(x * y, rhs));
    EXPECT_TRUE(height_le(x / y, rhs));
  }
}

TEST(QFieldProperty, HeightOfPower) {
  std::mt19937_64 rng(26);
  std::uniform_int_distribution<long> exp(-6, 6);
  for (int i = 0; i < 100; ++i) {
    mpz_class d = std::vector<long>{2, 3, 5, 6, 7, 21}[i % 6];
    QFieldElement x = oracle::random_element(rng, d);
    EXPECT_TRUE(qf_height_power_check(x, exp(rng), 128)) << x.to_string();
  }
  EXPECT_THROW(qf_height_power_check(el(1, 1, 2), 17, 128), DomainError);
}

TEST(QField, ParseFieldElement) {
  EXPECT_EQ(parse_field_element("(5+sqrt(21))/2"), QFieldElement(mpq_class(5, 2), mpq_class(1, 2), mpz_class(21)));
  EXPECT_EQ(parse_field_element("2 + sqrt(12)"), el(2, 2, 3));
  EXPECT_THROW(parse_field_element("sqrt(3"), DomainError);
}
