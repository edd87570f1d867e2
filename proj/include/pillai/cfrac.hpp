#pragma once

// Quadratic surds (P + sqrt D)/Q and their eventually periodic continued
// fractions; certified expansion of real intervals.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pillai/error.hpp"
#include "pillai/highprec.hpp"
#include "pillai/qfield.hpp"

namespace pillai {

class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(mpz_class p, mpz_class q, mpz_class d)
      : P_(std::move(p)), Q_(std::move(q)), D_(std::move(d)) {}

  const mpz_class& P() const { return P_; }
  const mpz_class& Q() const { return Q_; }
  const mpz_class& D() const { return D_; }

  bool is_canonical() const {
    return Q_ != 0 && mpz_divisible_p(mpz_class(D_ - P_ * P_).get_mpz_t(), Q_.get_mpz_t());
  }

  mpz_class floor() const {
    mpz_class s = sqrt(D_);
    if (Q_ > 0) return floor_div(P_ + s, Q_);
    return floor_div(-P_ - s - 1, -Q_);
  }

  QFieldElement to_field() const { return QFieldElement(mpq_class(P_, Q_), mpq_class(1, Q_), D_); }

  CertifiedReal eval(long bits) const { return to_field().eval(bits); }

  // Same value with the smallest integers that keep Q | D - P^2.
  QuadraticSurd reduced() const {
    QuadraticSurd cur = *this;
    for (bool changed = true; changed;) {
      changed = false;
      mpz_class g = gcd(cur.P_, cur.Q_);
      for (unsigned long p = 2; p <= 1000000UL && mpz_class(p) <= abs(g); ++p) {
        if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
        if (!mpz_divisible_ui_p(cur.D_.get_mpz_t(), p * p)) continue;
        QuadraticSurd t(cur.P_ / p, cur.Q_ / p, cur.D_ / (p * p));
        if (t.is_canonical()) {
          cur = t;
          changed = true;
          break;
        }
      }
    }
    return cur;
  }

  // Equality of the represented real numbers.
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.to_field() == b.to_field();
  }

  std::string to_string() const {
    std::string num = P_ == 0 ? "sqrt(" + D_.get_str() + ")"
                              : P_.get_str() + "+sqrt(" + D_.get_str() + ")";
    if (Q_ == 1) return P_ == 0 ? num : "(" + num + ")/1";
    return "(" + num + ")/" + Q_.get_str();
  }

 private:
  mpz_class P_, Q_ = 1, D_ = 2;
};

inline QuadraticSurd surd_canonicalize(const mpz_class& p, const mpz_class& q, const mpz_class& d) {
  if (q == 0) throw DomainError("surd with zero denominator");
  if (d <= 0) throw DomainError("surd with nonpositive radicand");
  if (is_square(d)) throw DomainError("not irrational: " + d.get_str() + " is a perfect square");
  QuadraticSurd s(p, q, d);
  if (s.is_canonical()) return s;
  mpz_class aq = abs(q);
  return QuadraticSurd(p * aq, q * aq, d * q * q);
}

// Irrational field element as a canonical surd.
inline QuadraticSurd surd_from_field(const QFieldElement& v) {
  if (v.is_rational()) throw DomainError("not irrational: rational value " + v.x().get_str());
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), v.x().get_den().get_mpz_t(), v.y().get_den().get_mpz_t());
  mpz_class xn = v.x().get_num() * (den / v.x().get_den());
  mpz_class yn = v.y().get_num() * (den / v.y().get_den());
  mpz_class sgn_ = yn < 0 ? -1 : 1;
  return surd_canonicalize(sgn_ * xn, sgn_ * den, yn * yn * v.d()).reduced();
}

struct ContinuedFraction {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;

  size_t r() const { return preperiod.size(); }
  size_t s() const { return period.size(); }

  const mpz_class& term(size_t k) const {
    if (k < preperiod.size()) return preperiod[k];
    return period[(k - preperiod.size()) % period.size()];
  }

  void validate() const {
    if (period.empty()) throw DomainError("continued fraction with empty period");
    for (size_t k = 1; k < r() + s(); ++k) {
      if (term(k) < 1) throw DomainError("partial quotients after the first must be >= 1");
    }
    if (preperiod.empty() && period[0] < 1) {
      throw DomainError("purely periodic expansion must start with a positive quotient");
    }
  }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

  std::string to_string() const {
    auto join = [](const std::vector<mpz_class>& v, size_t from) {
      std::string out;
      for (size_t i = from; i < v.size(); ++i) {
        if (i > from) out += ", ";
        out += v[i].get_str();
      }
      return out;
    };
    std::string out = "[";
    if (!preperiod.empty()) {
      out += preperiod[0].get_str() + "; ";
      if (preperiod.size() > 1) out += join(preperiod, 1) + ", ";
    }
    return out + "(" + join(period, 0) + ")]";
  }
};

inline ContinuedFraction cf_expand_surd(const QuadraticSurd& surd) {
  if (!surd.is_canonical()) throw DomainError("cf_expand_surd expects a canonical surd");
  if (is_square(surd.D())) throw DomainError("not irrational");
  const mpz_class& D = surd.D();
  mpz_class P = surd.P(), Q = surd.Q();
  std::map<std::pair<mpz_class, mpz_class>, size_t> seen;
  std::vector<mpz_class> quotients;
  for (;;) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      size_t start = it->second;
      std::vector<mpz_class> cycle(quotients.begin() + static_cast<long>(start), quotients.end());
      size_t len = cycle.size();
      for (size_t div = 1; div < len; ++div) {
        if (len % div) continue;
        bool repeats = true;
        for (size_t i = div; i < len && repeats; ++i) repeats = cycle[i] == cycle[i - div];
        if (repeats) {
          cycle.resize(div);
          break;
        }
      }
      return ContinuedFraction{
          std::vector<mpz_class>(quotients.begin(), quotients.begin() + static_cast<long>(start)),
          cycle};
    }
    seen.emplace(std::move(key), quotients.size());
    mpz_class a = QuadraticSurd(P, Q, D).floor();
    quotients.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
}

inline ContinuedFraction cf_expand_surd(const mpz_class& p, const mpz_class& q, const mpz_class& d) {
  return cf_expand_surd(surd_canonicalize(p, q, d));
}

struct Convergent {
  mpz_class p, q;
};

// Convergents p_k/q_k for k = 0 .. quotients.size()-1.
inline std::vector<Convergent> convergent_table(const std::vector<mpz_class>& quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  mpz_class p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  for (const auto& a : quotients) {
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    out.push_back({p, q});
  }
  return out;
}

inline Convergent convergents_from_quotients(const std::vector<mpz_class>& quotients, size_t k) {
  if (k >= quotients.size()) throw DomainError("convergent index out of range");
  return convergent_table(std::vector<mpz_class>(quotients.begin(),
                                                 quotients.begin() + static_cast<long>(k) + 1))
      .back();
}

inline QuadraticSurd cf_value_as_surd(const ContinuedFraction& cf) {
  cf.validate();
  // purely periodic tail y satisfies y = (p y + p') / (q y + q')
  auto tail = convergent_table(cf.period);
  mpz_class p = tail.back().p, q = tail.back().q;
  mpz_class pp = tail.size() > 1 ? tail[tail.size() - 2].p : mpz_class(1);
  mpz_class qp = tail.size() > 1 ? tail[tail.size() - 2].q : mpz_class(0);
  // q y^2 + (q' - p) y - p' = 0, positive root
  mpz_class disc = (qp - p) * (qp - p) + 4 * q * pp;
  if (is_square(disc)) throw DomainError("degenerate period: value is rational");
  QFieldElement y(mpq_class(p - qp, 2 * q), mpq_class(1, 2 * q), disc);
  if (cf.preperiod.empty()) return surd_from_field(y);
  auto head = convergent_table(cf.preperiod);
  mpz_class P1 = head.back().p, Q1 = head.back().q;
  mpz_class P2 = head.size() > 1 ? head[head.size() - 2].p : mpz_class(1);
  mpz_class Q2 = head.size() > 1 ? head[head.size() - 2].q : mpz_class(0);
  QFieldElement x = (QFieldElement(mpq_class(P1)) * y + QFieldElement(mpq_class(P2))) /
                    (QFieldElement(mpq_class(Q1)) * y + QFieldElement(mpq_class(Q2)));
  return surd_from_field(x);
}

// Partial quotients valid for every real in x; stops at the first ambiguity.
inline std::vector<mpz_class> cf_expand_real(const CertifiedReal& x, size_t max_terms) {
  if (max_terms < 1) throw DomainError("cf_expand_real expects max_terms >= 1");
  std::vector<mpz_class> out;
  mpq_class lo = x.lo().to_mpq(), hi = x.hi().to_mpq();
  while (out.size() < max_terms) {
    mpz_class a = floor_q(lo);
    if (floor_q(hi) != a) break;
    out.push_back(a);
    mpq_class flo = lo - a, fhi = hi - a;
    if (flo == 0) break;  // an endpoint is rational with a finite expansion here
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return out;
}

}  // namespace pillai
