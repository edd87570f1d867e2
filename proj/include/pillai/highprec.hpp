#pragma once

// Certified real arithmetic on dyadic intervals [lo, hi]. Every operation
// rounds lo toward -inf and hi toward +inf, so the true value is never lost.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <utility>

#include "pillai/error.hpp"

namespace pillai {

enum class Rounding { Down, Up, Nearest };

inline long bit_length(const mpz_class& v) {
  return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

inline mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

inline mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

inline mpz_class shift_left(const mpz_class& v, unsigned long k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class floor_q(const mpq_class& v) {
  return floor_div(v.get_num(), v.get_den());
}

inline mpz_class ceil_q(const mpq_class& v) {
  return ceil_div(v.get_num(), v.get_den());
}

// m * 2^e, kept with an odd mantissa (or m = 0, e = 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : m_(v) { normalize(); }  // NOLINT: integers embed implicitly
  explicit Dyadic(mpz_class m, long e = 0) : m_(std::move(m)), e_(e) { normalize(); }

  const mpz_class& mantissa() const { return m_; }
  long exponent() const { return e_; }
  int sign() const { return sgn(m_); }
  bool is_zero() const { return m_ == 0; }

  // floor(log2|x|); undefined for zero
  long magnitude() const { return bit_length(m_) - 1 + e_; }

  mpq_class to_mpq() const {
    mpq_class r(m_);
    if (e_ > 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e_));
    } else if (e_ < 0) {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e_));
    }
    return r;
  }

  double to_double() const {
    if (m_ == 0) return 0.0;
    long bl = bit_length(m_);
    long drop = std::max(0L, bl - 60);
    mpz_class top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), m_.get_mpz_t(), static_cast<unsigned long>(drop));
    return std::ldexp(top.get_d(), static_cast<int>(e_ + drop));
  }

  mpz_class floor() const {
    if (e_ >= 0) return shift_left(m_, static_cast<unsigned long>(e_));
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), m_.get_mpz_t(), static_cast<unsigned long>(-e_));
    return r;
  }

  mpz_class ceil() const {
    if (e_ >= 0) return shift_left(m_, static_cast<unsigned long>(e_));
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), m_.get_mpz_t(), static_cast<unsigned long>(-e_));
    return r;
  }

  Dyadic operator-() const { return Dyadic(-m_, e_); }

  Dyadic scaled(long k) const {  // x * 2^k, exact
    Dyadic r = *this;
    if (!r.is_zero()) r.e_ += k;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.e_, b.e_);
    mpz_class s = shift_left(a.m_, static_cast<unsigned long>(a.e_ - e)) +
                  shift_left(b.m_, static_cast<unsigned long>(b.e_ - e));
    return Dyadic(std::move(s), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.m_ * b.m_, a.e_ + b.e_);
  }

  friend int cmp(const Dyadic& a, const Dyadic& b) { return (a - b).sign(); }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

 private:
  void normalize() {
    if (m_ == 0) {
      e_ = 0;
      return;
    }
    unsigned long tz = mpz_scan1(m_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_tdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
      e_ += static_cast<long>(tz);
    }
  }

  mpz_class m_;
  long e_ = 0;
};

inline Dyadic round_to(const Dyadic& x, long bits, Rounding dir) {
  long bl = bit_length(x.mantissa());
  if (bl <= bits) return x;
  unsigned long shift = static_cast<unsigned long>(bl - bits);
  mpz_class m;
  if (dir == Rounding::Down) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  } else if (dir == Rounding::Up) {
    mpz_cdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  } else {
    mpz_class half = shift_left(x.mantissa(), 1) + pow2(shift);
    mpz_fdiv_q_2exp(m.get_mpz_t(), half.get_mpz_t(), shift + 1);
  }
  return Dyadic(std::move(m), x.exponent() + static_cast<long>(shift));
}

inline Dyadic div_round(const Dyadic& a, const Dyadic& b, long bits, Rounding dir) {
  if (b.is_zero()) throw DomainError("dyadic division by zero");
  if (a.is_zero()) return Dyadic();
  long s = std::max(0L, bits + bit_length(b.mantissa()) - bit_length(a.mantissa()) + 2);
  mpz_class num = shift_left(a.mantissa(), static_cast<unsigned long>(s));
  mpz_class q = dir == Rounding::Up ? ceil_div(num, b.mantissa()) : floor_div(num, b.mantissa());
  return round_to(Dyadic(std::move(q), a.exponent() - b.exponent() - s), bits,
                  dir == Rounding::Up ? Rounding::Up : Rounding::Down);
}

inline Dyadic from_rational(const mpq_class& v, long bits, Rounding dir) {
  return div_round(Dyadic(v.get_num()), Dyadic(v.get_den()), bits, dir);
}

// Largest s = m*2^e (m < 2^bits) with s <= sqrt(x), or smallest with s >= sqrt(x).
inline Dyadic sqrt_round(const Dyadic& x, long bits, Rounding dir) {
  if (x.sign() < 0) throw DomainError("square root of a negative number");
  if (x.is_zero()) return Dyadic();
  long e = x.exponent();
  long k = std::max(0L, bits + 2 - bit_length(x.mantissa()) / 2);
  long shift = 2 * k + ((e - 2 * k) % 2 != 0 ? 1 : 0);
  mpz_class m = shift_left(x.mantissa(), static_cast<unsigned long>(shift));
  long half_exp = (e - shift) / 2;
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  if (dir == Rounding::Up && rem != 0) root += 1;
  return round_to(Dyadic(std::move(root), half_exp), bits,
                  dir == Rounding::Up ? Rounding::Up : Rounding::Down);
}

// n-th root with directed rounding, x >= 0.
inline Dyadic root_round(const Dyadic& x, unsigned long n, long bits, Rounding dir) {
  if (n == 0) throw DomainError("zeroth root");
  if (x.sign() < 0) throw DomainError("root of a negative number");
  if (x.is_zero() || n == 1) return x;
  long e = x.exponent();
  long nl = static_cast<long>(n);
  long k = std::max(0L, bits + 2 - bit_length(x.mantissa()) / nl);
  long shift = nl * k;
  long r = ((e - shift) % nl + nl) % nl;
  shift += r;
  mpz_class m = shift_left(x.mantissa(), static_cast<unsigned long>(shift));
  long root_exp = (e - shift) / nl;
  mpz_class root;
  int exact = mpz_root(root.get_mpz_t(), m.get_mpz_t(), n);
  if (dir == Rounding::Up && !exact) root += 1;
  return round_to(Dyadic(std::move(root), root_exp), bits,
                  dir == Rounding::Up ? Rounding::Up : Rounding::Down);
}

// Integer-valued bit counts used by the precision driver.
struct PrecisionPolicy {
  long start_bits = 192;
  long max_bits = 4096;

  void validate() const {
    if (start_bits < 64) throw DomainError("precision policy: start_bits must be >= 64");
    if (max_bits < start_bits) throw DomainError("precision policy: max_bits < start_bits");
  }
};

class CertifiedReal {
 public:
  CertifiedReal() = default;
  CertifiedReal(long v, long prec) : lo_(v), hi_(v), prec_(prec) {}
  CertifiedReal(const mpz_class& v, long prec) : lo_(v), hi_(v), prec_(prec) {}
  CertifiedReal(Dyadic lo, Dyadic hi, long prec)
      : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
    if (hi_ < lo_) throw ConsistencyError("certified real with lo > hi");
  }

  static CertifiedReal from_rational(const mpq_class& v, long prec) {
    if (v.get_den() == 1) return CertifiedReal(v.get_num(), prec);
    return CertifiedReal(pillai::from_rational(v, prec, Rounding::Down),
                         pillai::from_rational(v, prec, Rounding::Up), prec);
  }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  long prec() const { return prec_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const { return (lo_ + hi_).scaled(-1); }
  bool is_point() const { return lo_ == hi_; }

  bool certainly_positive() const { return lo_.sign() > 0; }
  bool certainly_negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const mpq_class& v) const { return lo_.to_mpq() <= v && v <= hi_.to_mpq(); }
  bool certainly_less(const CertifiedReal& o) const { return hi_ < o.lo_; }
  bool overlaps(const CertifiedReal& o) const { return !(hi_ < o.lo_) && !(o.hi_ < lo_); }

  CertifiedReal with_prec(long bits) const {
    return CertifiedReal(round_to(lo_, bits, Rounding::Down), round_to(hi_, bits, Rounding::Up),
                         bits);
  }

  CertifiedReal operator-() const { return CertifiedReal(-hi_, -lo_, prec_); }

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    long p = std::max(a.prec_, b.prec_);
    return CertifiedReal(round_to(a.lo_ + b.lo_, p, Rounding::Down),
                         round_to(a.hi_ + b.hi_, p, Rounding::Up), p);
  }
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
    return a + (-b);
  }
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
    long p = std::max(a.prec_, b.prec_);
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) {
      return CertifiedReal(round_to(a.lo_ * b.lo_, p, Rounding::Down),
                           round_to(a.hi_ * b.hi_, p, Rounding::Up), p);
    }
    const Dyadic c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    Dyadic lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
      if (c[i] < lo) lo = c[i];
      if (c[i] > hi) hi = c[i];
    }
    return CertifiedReal(round_to(lo, p, Rounding::Down), round_to(hi, p, Rounding::Up), p);
  }
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
    if (b.contains_zero()) throw PrecisionError("division by an interval containing zero");
    long p = std::max(a.prec_, b.prec_);
    if (a.lo_.sign() >= 0 && b.lo_.sign() > 0) {
      return CertifiedReal(div_round(a.lo_, b.hi_, p, Rounding::Down),
                           div_round(a.hi_, b.lo_, p, Rounding::Up), p);
    }
    const Dyadic* num[2] = {&a.lo_, &a.hi_};
    const Dyadic* den[2] = {&b.lo_, &b.hi_};
    Dyadic lo, hi;
    bool first = true;
    for (auto* n : num) {
      for (auto* d : den) {
        Dyadic l = div_round(*n, *d, p, Rounding::Down);
        Dyadic h = div_round(*n, *d, p, Rounding::Up);
        if (first || l < lo) lo = l;
        if (first || h > hi) hi = h;
        first = false;
      }
    }
    return CertifiedReal(lo, hi, p);
  }

  friend CertifiedReal operator+(const CertifiedReal& a, long b) {
    return a + CertifiedReal(b, a.prec_);
  }
  friend CertifiedReal operator-(const CertifiedReal& a, long b) {
    return a - CertifiedReal(b, a.prec_);
  }
  friend CertifiedReal operator-(long a, const CertifiedReal& b) {
    return CertifiedReal(a, b.prec_) - b;
  }
  friend CertifiedReal operator*(const CertifiedReal& a, const mpz_class& b) {
    return a * CertifiedReal(b, a.prec_);
  }
  friend CertifiedReal operator*(const mpz_class& a, const CertifiedReal& b) { return b * a; }
  friend CertifiedReal operator*(const CertifiedReal& a, long b) {
    return a * CertifiedReal(b, a.prec_);
  }
  friend CertifiedReal operator*(long a, const CertifiedReal& b) { return b * a; }
  friend CertifiedReal operator/(const CertifiedReal& a, long b) {
    return a / CertifiedReal(b, a.prec_);
  }
  friend CertifiedReal operator/(long a, const CertifiedReal& b) {
    return CertifiedReal(a, b.prec_) / b;
  }

 private:
  Dyadic lo_, hi_;
  long prec_ = 64;
};

inline CertifiedReal abs(const CertifiedReal& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  return CertifiedReal(Dyadic(), std::max(-x.lo(), x.hi()), x.prec());
}

inline CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()),
                       std::max(a.prec(), b.prec()));
}

inline CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()),
                       std::max(a.prec(), b.prec()));
}

// Convex hull of two enclosures.
inline CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()),
                       std::max(a.prec(), b.prec()));
}

inline CertifiedReal pow(const CertifiedReal& x, unsigned long n) {
  CertifiedReal r(1, x.prec());
  CertifiedReal b = x;
  while (n > 0) {
    if (n & 1UL) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

inline CertifiedReal sqrt(const CertifiedReal& x) {
  if (x.certainly_negative() || x.lo().sign() < 0) {
    throw DomainError("square root of an interval reaching below zero");
  }
  return CertifiedReal(sqrt_round(x.lo(), x.prec(), Rounding::Down),
                       sqrt_round(x.hi(), x.prec(), Rounding::Up), x.prec());
}

inline CertifiedReal cr_sqrt(const mpz_class& n, long bits) {
  if (n < 1) throw DomainError("cr_sqrt expects a positive integer");
  return sqrt(CertifiedReal(n, bits));
}

inline CertifiedReal root(const CertifiedReal& x, unsigned long n) {
  if (x.lo().sign() < 0) throw DomainError("root of an interval reaching below zero");
  return CertifiedReal(root_round(x.lo(), n, x.prec(), Rounding::Down),
                       root_round(x.hi(), n, x.prec(), Rounding::Up), x.prec());
}

namespace detail {

// 2*atanh(z) partial sum over [z_lo, z_hi] with 0 <= z < 1/2, tail included.
inline std::pair<Dyadic, Dyadic> atanh_series(const Dyadic& z_lo, const Dyadic& z_hi, long w) {
  if (z_hi.is_zero()) return {Dyadic(), Dyadic()};
  // terms needed so that z_hi^(2K+1) < 2^-w; z_hi <= 1/3 in practice
  long zmag = -z_hi.magnitude() - 1;  // z_hi < 2^-zmag
  if (zmag < 1) zmag = 1;
  long terms = w / (2 * zmag) + 2;
  if (zmag == 1 && z_hi * Dyadic(3) <= Dyadic(1)) terms = w * 1000 / 3169 + 2;  // log2(3) > 1.584
  Dyadic sum_lo, sum_hi;
  Dyadic sq_lo = round_to(z_lo * z_lo, w, Rounding::Down);
  Dyadic sq_hi = round_to(z_hi * z_hi, w, Rounding::Up);
  Dyadic t_lo = z_lo, t_hi = z_hi;
  for (long i = 0; i < terms; ++i) {
    Dyadic den(2 * i + 1);
    sum_lo = round_to(sum_lo + div_round(t_lo, den, w, Rounding::Down), w, Rounding::Down);
    sum_hi = round_to(sum_hi + div_round(t_hi, den, w, Rounding::Up), w, Rounding::Up);
    t_lo = round_to(t_lo * sq_lo, w, Rounding::Down);
    t_hi = round_to(t_hi * sq_hi, w, Rounding::Up);
  }
  // tail: sum_{i>=K} z^(2i+1)/(2i+1) <= z^(2K+1) / ((2K+1)(1 - z^2)); t_hi is z_hi^(2K+1)
  Dyadic tail_den = round_to(Dyadic(2 * terms + 1) * (Dyadic(1) - sq_hi), w, Rounding::Down);
  sum_hi = round_to(sum_hi + div_round(t_hi, tail_den, w, Rounding::Up), w, Rounding::Up);
  return {sum_lo.scaled(1), sum_hi.scaled(1)};
}

inline const CertifiedReal& ln2_cached(long w) {
  thread_local CertifiedReal cache;
  thread_local long cached_bits = 0;
  if (cached_bits < w) {
    long bits = std::max(w, 2 * cached_bits);
    Dyadic third_lo = div_round(Dyadic(1), Dyadic(3), bits + 8, Rounding::Down);
    Dyadic third_hi = div_round(Dyadic(1), Dyadic(3), bits + 8, Rounding::Up);
    auto [lo, hi] = atanh_series(third_lo, third_hi, bits + 8);
    cache = CertifiedReal(round_to(lo, bits, Rounding::Down), round_to(hi, bits, Rounding::Up),
                          bits);
    cached_bits = bits;
  }
  return cache;
}

// ln of a positive dyadic point, enclosure at working precision w.
inline CertifiedReal ln_point(const Dyadic& v, long w) {
  long k = v.magnitude();
  Dyadic y = v.scaled(-k);  // y in [1, 2)
  Dyadic num = y - Dyadic(1);
  Dyadic den = y + Dyadic(1);
  Dyadic z_lo = div_round(num, den, w, Rounding::Down);
  Dyadic z_hi = div_round(num, den, w, Rounding::Up);
  auto [s_lo, s_hi] = atanh_series(z_lo, z_hi, w);
  CertifiedReal series(s_lo, s_hi, w);
  if (k == 0) return series;
  CertifiedReal l2 = ln2_cached(w).with_prec(w);
  return l2 * CertifiedReal(k, w) + series;
}

}  // namespace detail

inline CertifiedReal cr_ln(const CertifiedReal& x, long bits) {
  if (x.lo().sign() <= 0) throw DomainError("ln of an interval that is not strictly positive");
  long w = bits + 32;
  CertifiedReal lo = detail::ln_point(x.lo(), w);
  CertifiedReal hi = x.is_point() ? lo : detail::ln_point(x.hi(), w);
  return CertifiedReal(round_to(lo.lo(), bits, Rounding::Down),
                       round_to(hi.hi(), bits, Rounding::Up), bits);
}

inline CertifiedReal ln(const CertifiedReal& x) { return cr_ln(x, x.prec()); }

// Encloses ||v|| = distance to the nearest integer for every v in x.
inline CertifiedReal cr_nearest_int_distance(const CertifiedReal& x) {
  if (!(x.width() < Dyadic(mpz_class(1), -2))) {
    throw PrecisionError("nearest-integer distance: interval width >= 1/4");
  }
  auto dist = [](const Dyadic& v) {
    Dyadic f = v - Dyadic(v.floor());  // in [0, 1)
    Dyadic g = Dyadic(1) - f;
    return f < g ? f : g;
  };
  Dyadic a = dist(x.lo()), b = dist(x.hi());
  Dyadic lo = std::min(a, b), hi = std::max(a, b);
  if (x.lo().floor() != x.hi().floor() || x.lo().floor() == x.lo().ceil()) lo = Dyadic();
  Dyadic half(mpz_class(1), -1);
  Dyadic lo_shift = x.lo() - half, hi_shift = x.hi() - half;
  if (lo_shift.floor() != hi_shift.floor() || lo_shift.floor() == lo_shift.ceil()) hi = half;
  return CertifiedReal(lo, hi, x.prec());
}

// Recompute at start_bits, doubling until the predicate accepts.
inline CertifiedReal cr_refine(const std::function<CertifiedReal(long)>& compute,
                               const std::function<bool(const CertifiedReal&)>& predicate,
                               const PrecisionPolicy& policy = {}) {
  policy.validate();
  std::string last;
  for (long bits = policy.start_bits; bits <= policy.max_bits; bits *= 2) {
    try {
      CertifiedReal v = compute(bits);
      if (predicate(v)) return v;
      last = "predicate rejected enclosure of width 2^" +
             std::to_string(v.width().is_zero() ? 0 : v.width().magnitude());
    } catch (const PrecisionError& e) {
      last = e.what();
    }
  }
  throw PrecisionError("cannot certify within " + std::to_string(policy.max_bits) +
                       " bits (last attempt: " + last + ")");
}

// ---------------------------------------------------------------------------
// Decimal rendering

inline mpq_class parse_decimal(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '_') s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty decimal literal");
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, any = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    char c = s[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any = true;
      if (seen_point) ++frac_digits;
    } else {
      throw DomainError("malformed decimal literal: " + text);
    }
  }
  if (!any) throw DomainError("malformed decimal literal: " + text);
  long exp10 = 0;
  if (pos < s.size()) {
    std::string e = s.substr(pos + 1);
    if (e.empty()) throw DomainError("malformed decimal literal: " + text);
    size_t used = 0;
    try {
      exp10 = std::stol(e, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed decimal literal: " + text);
    }
    if (used != e.size()) throw DomainError("malformed decimal literal: " + text);
  }
  exp10 -= frac_digits;
  mpq_class v{mpz_class(digits, 10)};
  if (exp10 > 0) v *= mpq_class(pow10(static_cast<unsigned long>(exp10)));
  if (exp10 < 0) v /= mpq_class(pow10(static_cast<unsigned long>(-exp10)));
  v.canonicalize();
  return neg ? mpq_class(-v) : v;
}

namespace detail {

inline mpz_class round_q(const mpq_class& v, Rounding dir) {
  switch (dir) {
    case Rounding::Down: return floor_q(v);
    case Rounding::Up: return ceil_q(v);
    default: return floor_q(v + mpq_class(1, 2));
  }
}

inline Rounding mirror(Rounding r) {
  if (r == Rounding::Down) return Rounding::Up;
  if (r == Rounding::Up) return Rounding::Down;
  return r;
}

inline mpq_class scale10(const mpq_class& v, long k) {
  if (k >= 0) return v * mpq_class(pow10(static_cast<unsigned long>(k)));
  return v / mpq_class(pow10(static_cast<unsigned long>(-k)));
}

}  // namespace detail

// Scientific notation with `sig` significant digits, e.g. "3.8495e+51".
inline std::string format_sci(const mpq_class& v, int sig, Rounding dir = Rounding::Nearest) {
  if (sig < 1) sig = 1;
  if (v == 0) return "0";
  bool neg = v < 0;
  mpq_class a = neg ? mpq_class(-v) : v;
  Rounding r = neg ? detail::mirror(dir) : dir;
  long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  mpz_class lo_lim = pow10(static_cast<unsigned long>(sig - 1));
  mpz_class hi_lim = lo_lim * 10;
  mpz_class n;
  for (int guard = 0; guard < 8; ++guard) {
    n = detail::round_q(detail::scale10(a, sig - 1 - e), r);
    if (n >= hi_lim) {
      ++e;
    } else if (n < lo_lim) {
      --e;
    } else {
      break;
    }
  }
  std::string d = n.get_str();
  std::ostringstream out;
  if (neg) out << '-';
  out << d[0];
  if (d.size() > 1) out << '.' << d.substr(1);
  out << 'e' << (e < 0 ? '-' : '+');
  long ae = e < 0 ? -e : e;
  if (ae < 10) out << '0';
  out << ae;
  return out.str();
}

// Fixed notation with `decimals` digits after the point.
inline std::string format_fixed(const mpq_class& v, int decimals, Rounding dir = Rounding::Nearest) {
  bool neg = v < 0;
  mpq_class a = neg ? mpq_class(-v) : v;
  Rounding r = neg ? detail::mirror(dir) : dir;
  mpz_class n = detail::round_q(detail::scale10(a, decimals), r);
  std::string d = n.get_str();
  if (static_cast<int>(d.size()) <= decimals) d.insert(0, decimals + 1 - d.size(), '0');
  std::string out = (neg && n != 0) ? "-" : "";
  out += d.substr(0, d.size() - decimals);
  if (decimals > 0) out += "." + d.substr(d.size() - decimals);
  return out;
}

inline std::string format_sci(const Dyadic& v, int sig, Rounding dir = Rounding::Nearest) {
  return format_sci(v.to_mpq(), sig, dir);
}

// "mid ± 2^-k" where the decimal midpoint and radius together enclose x.
inline std::string render(const CertifiedReal& x) {
  mpq_class lo = x.lo().to_mpq(), hi = x.hi().to_mpq();
  if (lo == hi) return format_sci(lo, 25);
  mpq_class mid = (lo + hi) / 2;
  Dyadic rad = (x.hi() - x.lo()).scaled(-1);
  long mag_mid = mid == 0 ? 0 : from_rational(abs(mid), 64, Rounding::Down).magnitude();
  long bits_known = std::max(1L, mag_mid - rad.magnitude());
  int sig = static_cast<int>(std::clamp(bits_known * 30103L / 100000L + 2, 2L, 60L));
  std::string text = format_sci(mid, sig);
  mpq_class shown = parse_decimal(text);
  mpq_class need = std::max(abs(shown - lo), abs(hi - shown));
  Dyadic need_up = from_rational(need, 64, Rounding::Up);
  long k = -(need_up.magnitude() + 1);
  return text + " ± 2^" + std::to_string(-k);
}

// Endpoint strings for machine output: lo rounded down, hi rounded up.
inline std::pair<std::string, std::string> endpoints(const CertifiedReal& x, int sig = 25) {
  return {format_sci(x.lo(), sig, Rounding::Down), format_sci(x.hi(), sig, Rounding::Up)};
}

}  // namespace pillai
