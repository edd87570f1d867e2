#include <gtest/gtest.h>

#include <memory>

#include "oracle.hpp"
#include "pillai/bounds.hpp"
#include "pillai/highprec.hpp"

using namespace pillai;

namespace {

mpq_class two_pow(long k) {
  return k >= 0 ? mpq_class(pow2(static_cast<unsigned long>(k))) : mpq_class(1) / pow2(static_cast<unsigned long>(-k));
}

struct Expr {
  mpq_class exact;
  CertifiedReal approx;
};

// Random tree of + - * / over small rationals, evaluated exactly and with
// intervals at `bits`. Divisors are kept away from zero in the exact value.
Expr random_tree(std::mt19937_64& rng, int depth, long bits) {
  std::uniform_int_distribution<int> pick(0, 4);
  int op = depth == 0 ? 4 : pick(rng);
  if (op == 4) {
    mpq_class v = oracle::random_rational(rng, 1000, 97);
    return {v, CertifiedReal::from_rational(v, bits)};
  }
  Expr a = random_tree(rng, depth - 1, bits), b = random_tree(rng, depth - 1, bits);
  switch (op) {
    case 0: return {a.exact + b.exact, a.approx + b.approx};
    case 1: return {a.exact - b.exact, a.approx - b.approx};
    case 2: return {a.exact * b.exact, a.approx * b.approx};
    default:
      if (abs(b.exact) < mpq_class(1, 8)) return {a.exact + b.exact, a.approx + b.approx};
      return {a.exact / b.exact, a.approx / b.approx};
  }
}

}  // namespace

TEST(Interval, BasicOperations) {
  CertifiedReal one(1, 64), two(2, 64);
  CertifiedReal s = one + CertifiedReal(2, 64);
  EXPECT_TRUE(s.is_point());
  EXPECT_EQ(s.lo().to_mpq(), 3);
  CertifiedReal a(Dyadic(1), Dyadic(2), 64), b(Dyadic(-1), Dyadic(1), 64);
  CertifiedReal p = a * b;
  EXPECT_EQ(p.lo().to_mpq(), -2);
  EXPECT_EQ(p.hi().to_mpq(), 2);
  CertifiedReal third = CertifiedReal(1, 8) / CertifiedReal(3, 8);
  EXPECT_TRUE(third.contains(mpq_class(1, 3)));
  EXPECT_LE(third.width().to_mpq(), two_pow(-6));
  EXPECT_THROW(one / b, PrecisionError);
  EXPECT_THROW(CertifiedReal(Dyadic(2), Dyadic(1), 64), ConsistencyError);
}

TEST(Interval, RandomExpressionTreesContainExactValue) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<long> prec(24, 256);
  std::uniform_int_distribution<int> depth(1, 6);
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    Expr e = random_tree(rng, depth(rng), prec(rng));
    if (!e.approx.contains(e.exact)) {
      ++failures;
      ADD_FAILURE() << "tree " << i << ": " << e.exact.get_str() << " outside " << render(e.approx);
    }
  }
  EXPECT_EQ(failures, 0);
}

TEST(Interval, SqrtAgreesWithMpfr) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> prec(64, 512);
  for (int i = 0; i < 200; ++i) {
    mpq_class x = abs(oracle::random_rational(rng, 100000, 999)) + mpq_class(1, 1000);
    long bits = prec(rng);
    CertifiedReal r = sqrt(CertifiedReal::from_rational(x, bits));
    auto [lo, hi] = oracle::sqrt(x, bits + 64);
    EXPECT_LE(r.lo().to_mpq(), hi);
    EXPECT_GE(r.hi().to_mpq(), lo);
    EXPECT_LE(r.width().to_mpq(), two_pow(8 - bits) * (r.hi().to_mpq() + 1));
  }
}

TEST(Interval, LnAgreesWithMpfr) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> prec(64, 768);
  for (int i = 0; i < 200; ++i) {
    mpq_class x = abs(oracle::random_rational(rng, 1000000, 9999)) + mpq_class(1, 100000);
    long bits = prec(rng);
    CertifiedReal r = cr_ln(CertifiedReal::from_rational(x, bits + 8), bits);
    auto [lo, hi] = oracle::ln(x, bits + 64);
    EXPECT_LE(r.lo().to_mpq(), hi) << x.get_str();
    EXPECT_GE(r.hi().to_mpq(), lo) << x.get_str();
    mpq_class mag = abs(lo) + 1;
    EXPECT_LE(r.width().to_mpq(), two_pow(8 - bits) * mag) << x.get_str() << " at " << bits;
  }
  EXPECT_THROW(cr_ln(CertifiedReal(0, 64), 64), DomainError);
}

TEST(Interval, KnownRoots) {
  CertifiedReal four = cr_sqrt(mpz_class(4), 64);
  EXPECT_TRUE(four.is_point());
  EXPECT_EQ(four.lo().to_mpq(), 2);
  CertifiedReal r3 = cr_sqrt(mpz_class(3), 128);
  EXPECT_TRUE(r3.lo().to_mpq() < parse_decimal("1.7320508075688772935274463415059") &&
              r3.hi().to_mpq() > parse_decimal("1.7320508075688772935274463415058"));
  CertifiedReal r21 = cr_sqrt(mpz_class(21), 128);
  EXPECT_TRUE(r21.lo().to_mpq() < parse_decimal("4.58257569495585") &&
              r21.hi().to_mpq() > parse_decimal("4.58257569495584"));
  CertifiedReal cube = root(CertifiedReal(27, 64), 3);
  EXPECT_TRUE(cube.contains(3));
}

TEST(Interval, KnownLogs) {
  CertifiedReal zero = cr_ln(CertifiedReal(1, 128), 128);
  EXPECT_TRUE(zero.contains(0));
  EXPECT_LE(zero.width().to_mpq(), two_pow(4 - 128));
  PairConfig cfg = PairConfig::make(2, 3);
  CertifiedReal la = cfg.log_theta_a(256);
  EXPECT_TRUE(la.lo().to_mpq() < parse_decimal("1.31695789692481670862504634731") &&
              la.hi().to_mpq() > parse_decimal("1.31695789692481670862504634730"));
  CertifiedReal lb = cfg.log_theta_b(256);
  EXPECT_TRUE(lb.lo().to_mpq() < parse_decimal("1.56679923697242") &&
              lb.hi().to_mpq() > parse_decimal("1.56679923697241"));
}

TEST(Interval, NearestIntegerDistance) {
  auto tight = [](const char* v) { return CertifiedReal::from_rational(parse_decimal(v), 128); };
  CertifiedReal a = cr_nearest_int_distance(tight("3.25"));
  EXPECT_EQ(a.lo().to_mpq(), mpq_class(1, 4));
  EXPECT_EQ(a.hi().to_mpq(), mpq_class(1, 4));
  CertifiedReal h = cr_nearest_int_distance(CertifiedReal(Dyadic(mpz_class(1), -1) - Dyadic(mpz_class(1), -100),
                                                          Dyadic(mpz_class(1), -1), 128));
  EXPECT_EQ(h.hi().to_mpq(), mpq_class(1, 2));
  EXPECT_GE(h.lo().to_mpq(), mpq_class(1, 2) - two_pow(-100));
  CertifiedReal w = cr_nearest_int_distance(tight("7.999"));
  EXPECT_TRUE(w.contains(parse_decimal("0.001")));
  EXPECT_THROW(cr_nearest_int_distance(CertifiedReal(Dyadic(0), Dyadic(1), 64)), PrecisionError);
}

TEST(Interval, Refine) {
  PairConfig cfg = PairConfig::make(2, 3);
  CertifiedReal sign = cr_refine(
      [&](long bits) { return cfg.log_theta_a(bits) * 5 - cfg.log_theta_b(bits) * 4; },
      [](const CertifiedReal& v) { return v.certainly_positive() || v.certainly_negative(); });
  EXPECT_TRUE(sign.certainly_positive());
  EXPECT_EQ(sign.prec(), PrecisionPolicy{}.start_bits);
  mpq_class tiny = parse_decimal("1e-60");
  CertifiedReal g = cr_refine([&](long bits) { return cfg.log_theta_a(bits) / cfg.log_theta_b(bits); },
                              [&](const CertifiedReal& v) { return v.width().to_mpq() <= tiny; });
  EXPECT_LE(g.prec(), 512);
  EXPECT_THROW(cr_refine([](long bits) { return cr_sqrt(mpz_class(2), bits); },
                         [](const CertifiedReal& v) { return v.width().sign() <= 0; }),
               PrecisionError);
  EXPECT_THROW((PrecisionPolicy{32, 64}.validate()), DomainError);
}

TEST(Decimal, ParseAndFormat) {
  EXPECT_EQ(parse_decimal("3.9e51"), mpq_class(pow10(50) * 39));
  EXPECT_EQ(parse_decimal("0.00006"), mpq_class(3, 50000));
  EXPECT_EQ(parse_decimal("008583"), 8583);
  EXPECT_EQ(parse_decimal("-1.5"), mpq_class(-3, 2));
  EXPECT_THROW(parse_decimal("1e"), DomainError);
  EXPECT_THROW(parse_decimal("abc"), DomainError);
  EXPECT_EQ(format_sci(mpq_class(38495, 10000) * pow10(51), 2, Rounding::Up), "3.9e+51");
  EXPECT_EQ(format_sci(mpq_class(38495, 10000) * pow10(51), 2, Rounding::Down), "3.8e+51");
  EXPECT_EQ(format_sci(mpq_class(-1, 3), 3), "-3.33e-01");
  EXPECT_EQ(format_sci(mpq_class(99999, 1), 3), "1.00e+05");
  EXPECT_EQ(format_fixed(mpq_class(-1, 8), 2, Rounding::Down), "-0.13");
  CertifiedReal third = CertifiedReal(1, 64) / CertifiedReal(3, 64);
  auto [lo, hi] = endpoints(third, 10);
  EXPECT_EQ(lo, "3.333333333e-01");
  EXPECT_EQ(hi, "3.333333334e-01");
}
