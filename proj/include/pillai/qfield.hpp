#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt d): elements x + y*sqrt(d)
// with rational x, y and squarefree d >= 2.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "pillai/error.hpp"
#include "pillai/highprec.hpp"

namespace pillai {

struct SquarefreeSplit {
  mpz_class kernel;  // squarefree part
  mpz_class root;    // n = kernel * root^2
};

// Trial division to 10^6, then a perfect-square test on the cofactor.
inline SquarefreeSplit squarefree_split(const mpz_class& n) {
  if (n < 1) throw DomainError("squarefree kernel of a nonpositive integer");
  mpz_class rest = n, kernel = 1, root = 1;
  for (unsigned long p = 2; p <= 1000000UL; p += (p == 2 ? 1 : 2)) {
    if (mpz_class(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e % 2) kernel *= p;
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      root *= sqrt(rest);
    } else {
      kernel *= rest;
    }
  }
  return {kernel, root};
}

inline bool is_square(const mpz_class& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

inline bool same_field(const mpz_class& d1, const mpz_class& d2) {
  if (d1 < 2 || d2 < 2 || is_square(d1) || is_square(d2)) {
    throw DomainError("same_field expects nonsquare integers >= 2");
  }
  return squarefree_split(d1).kernel == squarefree_split(d2).kernel;
}

// Primitive integer polynomial, coefficients in ascending degree.
struct IntPolynomial {
  std::vector<mpz_class> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const mpz_class& leading() const { return coeffs.back(); }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs == b.coeffs;
  }

  std::string to_string() const {
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const mpz_class& c = coeffs[static_cast<size_t>(k)];
      if (c == 0) continue;
      mpz_class mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (mag != 1 || k == 0) out += mag.get_str();
      if (k >= 1) out += "x";
      if (k == 2) out += "^2";
    }
    return out.empty() ? "0" : out;
  }
};

class QFieldElement {
 public:
  QFieldElement() = default;
  QFieldElement(long x) : x_(x) {}  // NOLINT: rationals embed implicitly
  QFieldElement(mpq_class x) : x_(std::move(x)) { x_.canonicalize(); }  // NOLINT
  QFieldElement(mpq_class x, mpq_class y, const mpz_class& d) : x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
    if (d < 0) throw DomainError("quadratic field with negative radicand");
    if (y_ == 0 || d == 0) {
      y_ = 0;
      return;
    }
    SquarefreeSplit s = squarefree_split(d);
    y_ *= s.root;
    if (s.kernel == 1) {
      x_ += y_;
      y_ = 0;
    } else {
      d_ = s.kernel;
    }
  }

  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }
  // Radicand; 0 for a rational element.
  const mpz_class& d() const { return d_; }
  bool is_rational() const { return y_ == 0; }

  QFieldElement conj() const { return make(x_, -y_, d_); }
  mpq_class norm() const { return x_ * x_ - y_ * y_ * d_; }
  mpq_class trace() const { return 2 * x_; }

  // Exact sign of x + y*sqrt(d).
  int sign() const {
    int sx = sgn(x_), sy = sgn(y_);
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    mpq_class lhs = x_ * x_, rhs = y_ * y_ * d_;
    int c = cmp(lhs, rhs);
    return c > 0 ? sx : (c < 0 ? sy : 0);
  }

  CertifiedReal eval(long bits) const {
    CertifiedReal rx = CertifiedReal::from_rational(x_, bits + 4);
    if (y_ == 0) return rx.with_prec(bits);
    CertifiedReal ry = CertifiedReal::from_rational(y_, bits + 4);
    return (rx + ry * cr_sqrt(d_, bits + 4)).with_prec(bits);
  }

  QFieldElement operator-() const { return make(-x_, -y_, d_); }

  friend QFieldElement operator+(const QFieldElement& a, const QFieldElement& b) {
    return make(a.x_ + b.x_, a.y_ + b.y_, common_d(a, b));
  }
  friend QFieldElement operator-(const QFieldElement& a, const QFieldElement& b) {
    return make(a.x_ - b.x_, a.y_ - b.y_, common_d(a, b));
  }
  friend QFieldElement operator*(const QFieldElement& a, const QFieldElement& b) {
    mpz_class d = common_d(a, b);
    return make(a.x_ * b.x_ + a.y_ * b.y_ * d, a.x_ * b.y_ + a.y_ * b.x_, d);
  }
  friend QFieldElement operator/(const QFieldElement& a, const QFieldElement& b) {
    mpq_class n = b.norm();
    if (n == 0) throw DomainError("division by zero in quadratic field");
    QFieldElement num = a * b.conj();
    return make(num.x_ / n, num.y_ / n, num.d_);
  }

  friend bool operator==(const QFieldElement& a, const QFieldElement& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && (a.y_ == 0 || a.d_ == b.d_);
  }

  friend bool operator<(const QFieldElement& a, const QFieldElement& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator>(const QFieldElement& a, const QFieldElement& b) { return b < a; }

  std::string to_string() const {
    if (y_ == 0) return x_.get_str();
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), x_.get_den().get_mpz_t(), y_.get_den().get_mpz_t());
    mpz_class xn = x_.get_num() * (den / x_.get_den());
    mpz_class yn = y_.get_num() * (den / y_.get_den());
    std::string rad = "sqrt(" + d_.get_str() + ")";
    std::string ys;
    if (yn == 1) {
      ys = rad;
    } else if (yn == -1) {
      ys = "-" + rad;
    } else {
      ys = yn.get_str() + "*" + rad;
    }
    std::string num;
    if (xn == 0) {
      num = ys;
    } else {
      num = xn.get_str() + (yn > 0 ? "+" : "") + ys;
    }
    if (den == 1) return num;
    bool wrap = xn != 0 || yn != 1;
    return (wrap ? "(" + num + ")" : num) + "/" + den.get_str();
  }

 private:
  static QFieldElement make(mpq_class x, mpq_class y, const mpz_class& d) {
    QFieldElement r;
    r.x_ = std::move(x);
    r.y_ = std::move(y);
    if (r.y_ != 0) r.d_ = d;
    return r;
  }

  static mpz_class common_d(const QFieldElement& a, const QFieldElement& b) {
    if (a.y_ == 0) return b.d_;
    if (b.y_ == 0) return a.d_;
    if (a.d_ != b.d_) {
      throw DomainError("quadratic field mismatch: sqrt(" + a.d_.get_str() + ") vs sqrt(" +
                        b.d_.get_str() + ")");
    }
    return a.d_;
  }

  mpq_class x_, y_;
  mpz_class d_;
};

enum class FieldOp { Add, Sub, Mul, Div };

inline QFieldElement qf_arith(const QFieldElement& a, const QFieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  throw DomainError("unknown field operation");
}

inline QFieldElement pow(const QFieldElement& a, long m) {
  QFieldElement base = m < 0 ? QFieldElement(1) / a : a;
  unsigned long n = static_cast<unsigned long>(m < 0 ? -m : m);
  QFieldElement r(1);
  while (n > 0) {
    if (n & 1UL) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

inline IntPolynomial qf_minpoly(const QFieldElement& a) {
  auto primitive = [](std::vector<mpq_class> c) {
    mpz_class l = 1;
    for (auto& v : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (auto& v : c) {
      mpq_class s = v * l;
      z.push_back(s.get_num());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num().get_mpz_t());
    }
    if (z.back() < 0) g = -g;
    for (auto& v : z) v /= g;
    return IntPolynomial{z};
  };
  if (a.is_rational()) return primitive({-a.x(), mpq_class(1)});
  return primitive({a.norm(), -a.trace(), mpq_class(1)});
}

// Absolute logarithmic height, natural log.
inline CertifiedReal qf_height(const QFieldElement& a, long prec) {
  if (prec < 64) throw DomainError("qf_height expects prec >= 64");
  long w = prec + 16;
  IntPolynomial f = qf_minpoly(a);
  CertifiedReal sum = cr_ln(CertifiedReal(abs(f.leading()), w), w);
  std::vector<QFieldElement> roots{a};
  if (!a.is_rational()) roots.push_back(a.conj());
  for (const auto& r : roots) {
    QFieldElement m = r.sign() < 0 ? -r : r;
    if (!(m > QFieldElement(1))) continue;
    CertifiedReal l = cr_ln(m.eval(w), w);
    if (l.lo().sign() < 0) l = CertifiedReal(Dyadic(), l.hi(), w);
    sum = sum + l;
  }
  return (sum / f.degree()).with_prec(prec);
}

// h(a^m) against |m| h(a).
inline bool qf_height_power_check(const QFieldElement& a, long m, long prec) {
  if (m < -16 || m > 16) throw DomainError("qf_height_power_check expects |m| <= 16");
  if (a.sign() == 0 && m <= 0) throw DomainError("nonpositive power of zero");
  CertifiedReal lhs = qf_height(pow(a, m), prec);
  CertifiedReal rhs = qf_height(a, prec) * (m < 0 ? -m : m);
  return lhs.overlaps(rhs);
}

}  // namespace pillai
