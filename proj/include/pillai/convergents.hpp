#pragma once

// Convergent denominators q_i of a periodic continued fraction, the period
// trace, and the Binet closed form of each residue-class subsequence.

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "pillai/cfrac.hpp"
#include "pillai/error.hpp"
#include "pillai/qfield.hpp"

namespace pillai {

struct DenominatorTable {
  ContinuedFraction cf;
  std::vector<mpz_class> values;  // q_0 .. q_nmax

  const mpz_class& operator[](size_t i) const { return values.at(i); }
  size_t size() const { return values.size(); }
};

// q_{-1} = 0, q_0 = 1, q_k = a_k q_{k-1} + q_{k-2}; a_0 never enters.
inline DenominatorTable q_sequence(const ContinuedFraction& cf, long n_max) {
  cf.validate();
  if (n_max < 0) throw DomainError("q_sequence expects n_max >= 0");
  DenominatorTable t{cf, {}};
  t.values.reserve(static_cast<size_t>(n_max) + 1);
  mpz_class prev = 0, cur = 1;
  t.values.push_back(cur);
  for (long k = 1; k <= n_max; ++k) {
    mpz_class next = cf.term(static_cast<size_t>(k)) * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
    t.values.push_back(cur);
  }
  return t;
}

inline mpz_class trace_t(const std::vector<mpz_class>& period) {
  if (period.empty()) throw DomainError("trace of an empty period");
  mpz_class m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  for (const auto& b : period) {
    mpz_class n00 = m00 * b + m01, n10 = m10 * b + m11;
    m01 = m00;
    m11 = m10;
    m00 = n00;
    m10 = n10;
  }
  return m00 + m11;
}

struct BinetData {
  mpz_class t;
  size_t s = 0;
  size_t offset = 0;  // first index of the periodic regime of the q-sequence
  QFieldElement theta1, theta2;
  std::vector<QFieldElement> c1, c2;

  // q index of the i-th term of subsequence j
  size_t index(size_t j, size_t i) const { return s * i + j + offset; }
};

inline BinetData binet_data(const ContinuedFraction& cf) {
  cf.validate();
  BinetData bd;
  bd.t = trace_t(cf.period);
  bd.s = cf.s();
  bd.offset = cf.r() > 0 ? cf.r() - 1 : 0;
  mpz_class sign = bd.s % 2 ? -1 : 1;
  mpz_class disc = bd.t * bd.t - 4 * sign;
  if (is_square(disc)) throw DomainError("degenerate trace: t^2 - 4(-1)^s is a square");
  bd.theta1 = QFieldElement(mpq_class(bd.t, 2), mpq_class(1, 2), disc);
  bd.theta2 = QFieldElement(mpq_class(bd.t, 2), mpq_class(-1, 2), disc);
  DenominatorTable q = q_sequence(cf, static_cast<long>(bd.index(bd.s - 1, 1)));
  QFieldElement gap = bd.theta1 - bd.theta2;
  for (size_t j = 0; j < bd.s; ++j) {
    QFieldElement q0(mpq_class(q[bd.index(j, 0)])), q1(mpq_class(q[bd.index(j, 1)]));
    bd.c1.push_back((q1 - bd.theta2 * q0) / gap);
    bd.c2.push_back((q1 - bd.theta1 * q0) / gap);
  }
  return bd;
}

inline mpz_class binet_reconstruct(const BinetData& bd, size_t j, size_t i) {
  if (j >= bd.s) throw DomainError("binet_reconstruct: residue class out of range");
  long e = static_cast<long>(i);
  QFieldElement v = bd.c1[j] * pow(bd.theta1, e) - bd.c2[j] * pow(bd.theta2, e);
  if (!v.is_rational() || v.x().get_den() != 1) {
    throw ConsistencyError("Binet reconstruction is not an integer: " + v.to_string());
  }
  return v.x().get_num();
}

inline ContinuedFraction lehmer_cf(long a) {
  if (a < 1) throw DomainError("expansion [0; (1, a)] needs a >= 1");
  if (a == 1) return ContinuedFraction{{mpz_class(0)}, {mpz_class(1)}};
  return ContinuedFraction{{mpz_class(0)}, {mpz_class(1), mpz_class(a)}};
}

// Two-sided envelopes for the even and odd denominators of [0; (1, a)],
// decided by exact comparison in Q(sqrt(a^2 + 4a)).
inline bool growth_envelope_check(long a, long ell_max) {
  if (a < 2) throw DomainError("growth_envelope_check expects a >= 2");
  if (ell_max < 1) throw DomainError("growth_envelope_check expects ell_max >= 1");
  ContinuedFraction cf = lehmer_cf(a);
  DenominatorTable q = q_sequence(cf, 2 * ell_max + 1);
  mpz_class da = a * a + 4 * a;
  QFieldElement rt(0, 1, da);
  QFieldElement theta = QFieldElement(mpq_class(a + 2, 2), mpq_class(1, 2), da);
  QFieldElement lead = (QFieldElement(a) + rt) / (QFieldElement(2) * rt);
  QFieldElement odd = theta / rt;
  QFieldElement pw(1);
  for (long l = 1; l <= ell_max; ++l) {
    pw = pw * theta;
    QFieldElement even_q(mpq_class(q[static_cast<size_t>(2 * l)]));
    QFieldElement odd_q(mpq_class(q[static_cast<size_t>(2 * l + 1)]));
    if (!(QFieldElement(mpq_class(1, 2)) * pw < even_q)) return false;
    if (!(even_q < QFieldElement(mpq_class(11, 10)) * lead * pw)) return false;
    if (!(QFieldElement(mpq_class(7, 8)) * odd * pw < odd_q)) return false;
    if (!(odd_q < QFieldElement(mpq_class(9, 8)) * odd * pw)) return false;
  }
  return true;
}

}  // namespace pillai
