#pragma once

// Explicit bound arithmetic for q_{alpha,N} - q_{beta,M} = c with
// alpha = [0; (1, a)], beta = [0; (1, b)]: Matveev's lower bound for linear
// forms in three logarithms, the Petho-de Weger solver, and the closed-form
// bound on max(N, M).

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pillai/convergents.hpp"
#include "pillai/error.hpp"
#include "pillai/highprec.hpp"
#include "pillai/qfield.hpp"

namespace pillai {

inline CertifiedReal decimal(const std::string& text, long bits) {
  return CertifiedReal::from_rational(parse_decimal(text), bits);
}

struct PairConfig {
  long a = 0, b = 0;
  mpz_class da, db;
  ContinuedFraction cf_a, cf_b;
  BinetData alpha, beta;

  static PairConfig make(long a, long b) {
    if (a < 2 || b <= a) throw DomainError("pair needs 2 <= a < b");
    PairConfig c;
    c.a = a;
    c.b = b;
    c.da = a * a + 4 * a;
    c.db = b * b + 4 * b;
    if (is_square(c.da) || is_square(c.db)) throw DomainError("a^2 + 4a must be nonsquare");
    if (same_field(c.da, c.db)) {
      throw DomainError("theta_alpha and theta_beta lie in the same field; independence fails");
    }
    c.cf_a = lehmer_cf(a);
    c.cf_b = lehmer_cf(b);
    c.alpha = binet_data(c.cf_a);
    c.beta = binet_data(c.cf_b);
    return c;
  }

  CertifiedReal log_theta_a(long bits) const { return cr_ln(alpha.theta1.eval(bits + 8), bits); }
  CertifiedReal log_theta_b(long bits) const { return cr_ln(beta.theta1.eval(bits + 8), bits); }
};

// ---------------------------------------------------------------------------
// Matveev

struct MatveevInstance {
  long T = 3;
  long D = 4;
  std::vector<CertifiedReal> A;
  CertifiedReal B;
};

// 1.4 * 30^(T+3) * T^4.5 * D^2 * log(eD)
inline CertifiedReal matveev_constant(long T, long D, long bits) {
  if (T < 1 || D < 1) throw DomainError("Matveev constant needs T, D >= 1");
  CertifiedReal c = CertifiedReal::from_rational(mpq_class(7, 5), bits);
  c = c * pow(CertifiedReal(30, bits), static_cast<unsigned long>(T + 3));
  c = c * pow(CertifiedReal(T, bits), 4) * cr_sqrt(T, bits);
  c = c * (D * D);
  return c * (cr_ln(CertifiedReal(D, bits), bits) + 1);
}

inline CertifiedReal matveev_log_lower_bound(const MatveevInstance& inst) {
  if (static_cast<long>(inst.A.size()) != inst.T) {
    throw DomainError("Matveev instance needs exactly T values A'_j");
  }
  long bits = inst.B.prec();
  for (const auto& a : inst.A) bits = std::max(bits, a.prec());
  CertifiedReal floor_a = CertifiedReal::from_rational(mpq_class(4, 25), bits);
  for (const auto& a : inst.A) {
    if (a.lo() < floor_a.hi()) throw DomainError("Matveev instance needs every A'_j >= 0.16");
  }
  if (inst.B.lo() < Dyadic(1)) throw DomainError("Matveev instance needs B >= 1");
  CertifiedReal prod = matveev_constant(inst.T, inst.D, bits);
  for (const auto& a : inst.A) prod = prod * a;
  return -(prod * (cr_ln(inst.B, bits) + 1));
}

struct MatveevCoefficients {
  CertifiedReal first, second, third;
};

// The three applications with T = 3, D = 4 and B = 2 n1. A'_1 = 2 log theta_a,
// A'_2 = 2 log theta_b, and A'_3 is, in turn,
//   first_a3 * log theta_b,
//   second_a3 * log^3 theta_b * log n1,
//   third_a3 * log^5 theta_b * log^2 n1.
// Each coefficient is -bound / ((1 + log 2n1) * [the log theta / log n1 monomial]),
// which does not depend on the pair or on n1.
inline MatveevCoefficients matveev_coefficients(const PairConfig& cfg, const CertifiedReal& first_a3,
                                                const CertifiedReal& second_a3,
                                                const CertifiedReal& third_a3, long bits) {
  CertifiedReal la = cfg.log_theta_a(bits), lb = cfg.log_theta_b(bits);
  const long n1 = 1000000;
  CertifiedReal B(2 * n1, bits);
  CertifiedReal logn = cr_ln(CertifiedReal(n1, bits), bits);
  CertifiedReal logb = cr_ln(B, bits) + 1;
  auto coefficient = [&](const CertifiedReal& a3, const CertifiedReal& monomial) {
    MatveevInstance inst{3, 4, {la * 2, lb * 2, a3}, B};
    return -matveev_log_lower_bound(inst) / (logb * monomial);
  };
  MatveevCoefficients out;
  out.first = coefficient(first_a3 * lb, la * pow(lb, 2));
  out.second = coefficient(second_a3 * pow(lb, 3) * logn, la * pow(lb, 4) * logn);
  out.third = coefficient(third_a3 * pow(lb, 5) * pow(logn, 2), la * pow(lb, 6) * pow(logn, 2));
  return out;
}

// ---------------------------------------------------------------------------
// Petho-de Weger: the largest solution of x = a + g (log x)^c is below
// 2^c (a^(1/c) + g^(1/c) log(c^c g))^c when g > (e^2/c)^c.

inline CertifiedReal petho_deweger_solve(const CertifiedReal& a, long c, const CertifiedReal& g) {
  if (c < 1) throw DomainError("Petho-de Weger solver takes an integer c >= 1");
  if (a.lo().sign() < 0) throw DomainError("Petho-de Weger solver needs a >= 0");
  long bits = std::max(a.prec(), g.prec());
  if (!g.certainly_positive()) throw DomainError("precondition g > (e^2/c)^c violated (g <= 0)");
  // g > (e^2/c)^c  <=>  log g > c (2 - log c)
  CertifiedReal lhs = cr_ln(g, bits);
  CertifiedReal rhs = (2 - cr_ln(CertifiedReal(c, bits), bits)) * c;
  if (!rhs.certainly_less(lhs)) throw DomainError("precondition g > (e^2/c)^c violated");
  unsigned long uc = static_cast<unsigned long>(c);
  CertifiedReal inner = root(g, uc) * cr_ln(pow(CertifiedReal(c, bits), uc) * g, bits);
  if (!a.is_point() || a.lo().sign() != 0) inner = inner + root(a, uc);
  return pow(CertifiedReal(2, bits), uc) * pow(inner, uc);
}

// For a = 0: 2^c g (log(c^c g))^c = (2c)^c g (log(c g^(1/c)))^c; this is (2c)^c times g.
inline CertifiedReal petho_deweger_leading(long c, const CertifiedReal& g_coefficient) {
  if (c < 1) throw DomainError("Petho-de Weger solver takes an integer c >= 1");
  return pow(CertifiedReal(2 * c, g_coefficient.prec()), static_cast<unsigned long>(c)) *
         g_coefficient;
}

// ---------------------------------------------------------------------------
// Auxiliary inequalities used to reach the closed form; each is re-checked
// at the requested pair.

struct NamedCheck {
  std::string name;
  CertifiedReal lhs;
  CertifiedReal rhs;
  bool strict = true;
  bool holds = false;
};

inline std::vector<NamedCheck> auxiliary_inequalities(const PairConfig& cfg, long bits) {
  CertifiedReal la = cfg.log_theta_a(bits), lb = cfg.log_theta_b(bits);
  CertifiedReal ta = cfg.alpha.theta1.eval(bits), tb = cfg.beta.theta1.eval(bits);
  CertifiedReal ra = cr_sqrt(cfg.da, bits), rb = cr_sqrt(cfg.db, bits);
  CertifiedReal a(cfg.a, bits), b(cfg.b, bits);
  auto q = [&](long n, long d) { return CertifiedReal::from_rational(mpq_class(n, d), bits); };
  auto L = [&](const CertifiedReal& x) { return cr_ln(x, bits); };
  std::vector<NamedCheck> out;
  auto add = [&](std::string name, CertifiedReal lhs, CertifiedReal rhs, bool strict) {
    bool ok = strict ? lhs.certainly_less(rhs) : lhs.hi() <= rhs.lo();
    out.push_back({std::move(name), std::move(lhs), std::move(rhs), strict, ok});
  };
  add("log(9/8 theta_b / sqrt(d_b)) < 0.17", L(q(9, 8) * tb / rb), q(17, 100), true);
  add("(0.17 + log(2 sqrt(d_a))) / log theta_a < 1.60", (q(17, 100) + L(ra * 2)) / la, q(8, 5),
      true);
  add("(log(9/8 theta_a / sqrt(d_a)) + log(2 sqrt(d_b))) / log theta_b < 1.55",
      (L(q(9, 8) * ta / ra) + L(rb * 2)) / lb, q(31, 20), true);
  add("(sqrt(d_a) - a)/sqrt(d_a) + (sqrt(d_b) - b)/sqrt(d_b) <= 0.77",
      (ra - a) / ra + (rb - b) / rb, q(77, 100), false);
  add("1.54 sqrt(d_b) / (b + sqrt(d_b)) <= 0.94", q(154, 100) * rb / (b + rb), q(94, 100), false);
  add("(b + 2 + sqrt(d_b)) / (b + sqrt(d_b)) <= 1.27", (b + 2 + rb) / (b + rb), q(127, 100), false);
  add("9 theta_b / (2 (b + sqrt(d_b))) <= 2.85", tb * 9 / ((b + rb) * 2), q(285, 100),
      false);
  add("log 4b + log 4d_b < 5 log theta_b", L(b * 4) + L(CertifiedReal(cfg.db * 4, bits)), lb * 5,
      true);
  return out;
}

struct Theorem12Bound {
  CertifiedReal max_NM;
  CertifiedReal n1_bound;
};

// max(N, M) <= 1.1793e46 L^6 (log(9.06e14 L^2))^3 with L = log theta_b.
inline Theorem12Bound theorem12_bound(const PairConfig& cfg, long bits = 256) {
  for (const auto& chk : auxiliary_inequalities(cfg, bits)) {
    if (!chk.holds) {
      throw DomainError("closed-form bound does not apply to (" + std::to_string(cfg.a) + ", " +
                        std::to_string(cfg.b) + "): auxiliary inequality fails: " + chk.name);
    }
  }
  CertifiedReal L = cfg.log_theta_b(bits);
  CertifiedReal L2 = L * L;
  CertifiedReal inner = cr_ln(decimal("9.06e14", bits) * L2, bits);
  CertifiedReal max_nm = decimal("1.1793e46", bits) * pow(L2, 3) * pow(inner, 3);
  // N = 2n + j with j in {0, 1}
  return {max_nm, max_nm / 2};
}

// n1 < 1.60 + m1 log theta_b / log theta_a  and  m1 < 1.55 + n1 log theta_a / log theta_b
inline bool linking_inequalities(const PairConfig& cfg, const mpz_class& n1, const mpz_class& m1,
                                 const PrecisionPolicy& policy = {}) {
  if (n1 < 0 || m1 < 0) throw DomainError("linking inequalities need n1, m1 >= 0");
  for (long bits = policy.start_bits; bits <= policy.max_bits; bits *= 2) {
    CertifiedReal la = cfg.log_theta_a(bits), lb = cfg.log_theta_b(bits);
    CertifiedReal first = decimal("1.60", bits) + CertifiedReal(m1, bits) * lb / la;
    CertifiedReal second = decimal("1.55", bits) + CertifiedReal(n1, bits) * la / lb;
    CertifiedReal n(n1, bits), m(m1, bits);
    bool first_true = n.certainly_less(first), first_false = !(n.lo() < first.hi());
    bool second_true = m.certainly_less(second), second_false = !(m.lo() < second.hi());
    if (first_false || second_false) return false;
    if (first_true && second_true) return true;
  }
  throw PrecisionError("linking inequalities undecided at max precision");
}

// Heights of the leading Binet coefficients against the bounds used to feed
// Matveev's A'_3. The ratio lies in a degree-4 field; its height is bounded by
// h(c_a) + h(c_b), which is what the check certifies.
inline std::vector<NamedCheck> height_bound_checks(const PairConfig& cfg, long bits = 128) {
  auto L = [&](const mpz_class& v) { return cr_ln(CertifiedReal(v, bits), bits); };
  CertifiedReal half_a = (L(mpz_class(4 * cfg.a)) + L(4 * cfg.da)) / 2;
  CertifiedReal half_b = (L(mpz_class(4 * cfg.b)) + L(4 * cfg.db)) / 2;
  std::vector<NamedCheck> out;
  std::vector<CertifiedReal> ha, hb;
  for (size_t j = 0; j < cfg.alpha.s; ++j) {
    ha.push_back(qf_height(cfg.alpha.c1[j], bits));
    out.push_back({"h(" + cfg.alpha.c1[j].to_string() + ") <= (log 4a + log 4d_a)/2", ha.back(),
                   half_a, false, ha.back().hi() <= half_a.lo()});
  }
  for (size_t p = 0; p < cfg.beta.s; ++p) {
    hb.push_back(qf_height(cfg.beta.c1[p], bits));
    out.push_back({"h(" + cfg.beta.c1[p].to_string() + ") <= (log 4b + log 4d_b)/2", hb.back(),
                   half_b, false, hb.back().hi() <= half_b.lo()});
  }
  CertifiedReal full_b = half_b * 2;
  for (size_t j = 0; j < ha.size(); ++j) {
    for (size_t p = 0; p < hb.size(); ++p) {
      CertifiedReal h = ha[j] + hb[p];
      out.push_back({"h(" + cfg.alpha.c1[j].to_string() + " / " + cfg.beta.c1[p].to_string() +
                         ") <= log 4b + log 4d_b",
                     h, full_b, false, h.hi() <= full_b.lo()});
    }
  }
  CertifiedReal five = cfg.log_theta_b(bits) * 5;
  out.push_back({"log 4b + log 4d_b < 5 log theta_b", full_b, five, true,
                 full_b.certainly_less(five)});
  return out;
}

inline bool height_bound_check(const PairConfig& cfg, long bits = 128) {
  for (const auto& c : height_bound_checks(cfg, bits)) {
    if (!c.holds) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constant chain from Matveev's formula to the closed form, propagated without
// intermediate rounding.

struct ChainStep {
  std::string name;
  std::string rule;
  CertifiedReal value;
};

inline std::vector<ChainStep> bound_chain(long bits = 256) {
  std::vector<ChainStep> out;
  CertifiedReal C = matveev_constant(3, 4, bits);
  out.push_back({"matveev_base", "1.4*30^6*3^4.5*16*log(4e)", C});
  CertifiedReal k1 = C * 80;
  out.push_back({"matveev_first", "base * 2 * 2 * 20", k1});
  CertifiedReal small_gap = k1 * 2;
  out.push_back({"min_gap", "2 * matveev_first, using 1 + log 2n1 <= 2 log n1", small_gap});
  CertifiedReal a3_second = small_gap * 4;
  out.push_back({"a3_second", "4 * min_gap (height of the degree-4 quotient)", a3_second});
  CertifiedReal k2 = C * 4 * a3_second;
  out.push_back({"matveev_second", "base * 2 * 2 * a3_second", k2});
  CertifiedReal large_gap = k2 * 2;
  out.push_back({"max_gap", "2 * matveev_second", large_gap});
  CertifiedReal a3_third = large_gap * 4;
  out.push_back({"a3_third", "4 * max_gap", a3_third});
  CertifiedReal k3 = C * 4 * a3_third;
  out.push_back({"matveev_third", "base * 2 * 2 * a3_third", k3});
  CertifiedReal m1c = k3 * 2;
  out.push_back({"m1_coefficient", "2 * matveev_third", m1c});
  out.push_back({"pw_leading", "216 * m1_coefficient (c = 3)", petho_deweger_leading(3, m1c)});
  out.push_back({"max_index_leading", "2 * pw_leading", petho_deweger_leading(3, m1c) * 2});
  return out;
}

}  // namespace pillai
