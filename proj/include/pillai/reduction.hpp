#pragma once

// Baker-Davenport reduction in the Dujella-Petho form: for a convergent
// denominator q > 6M of gamma with eps = ||kappa q|| - M ||gamma q|| > 0 there
// is no solution of 0 < m gamma - n + kappa < A1 A2^-k with m <= M and
// k >= log(A1 q / eps) / log A2.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pillai/bounds.hpp"
#include "pillai/cfrac.hpp"
#include "pillai/error.hpp"
#include "pillai/highprec.hpp"

namespace pillai {

using RealFn = std::function<CertifiedReal(long bits)>;
using FamilyFn = std::function<std::vector<CertifiedReal>(long bits)>;

struct ReductionInstance {
  RealFn gamma;
  RealFn kappa;
  RealFn A1;
  RealFn A2;
  mpz_class M;
};

struct ReductionOptions {
  std::optional<size_t> start_index;  // default: first convergent with q > 6M
  size_t horizon = 24;                // convergents tried from the start index on
  PrecisionPolicy policy;
};

struct ReductionOutcome {
  mpz_class q;
  size_t q_index = 0;
  CertifiedReal epsilon;
  size_t argmin = 0;       // family member attaining the smallest epsilon
  long k_threshold = 0;    // no solutions with k >= k_threshold
  long k_bound = 0;        // largest k not excluded: k_threshold - 1
  CertifiedReal k_value;   // log(A1 q / eps) / log A2
  long bits = 0;
  std::vector<std::string> diagnostics;  // one line per rejected convergent
};

struct ExponentBound {
  CertifiedReal value;
  long threshold = 0;
  long bound = 0;
};

// log(A1 q / eps_lo) / log A2, taking the certified lower endpoint of eps.
inline ExponentBound exponent_bound(const CertifiedReal& A1, const mpz_class& q,
                                    const CertifiedReal& eps, const CertifiedReal& A2, long bits) {
  if (!eps.certainly_positive()) throw DomainError("exponent bound needs epsilon > 0");
  CertifiedReal eps_lo(eps.lo(), eps.lo(), bits);
  CertifiedReal v = cr_ln(A1 * q / eps_lo, bits) / cr_ln(A2, bits);
  ExponentBound out;
  out.value = v;
  mpz_class t = v.hi().ceil();
  out.threshold = t.get_si();
  out.bound = out.threshold - 1;
  return out;
}

namespace detail {

enum class Verdict { Accept, Reject, Undecided };

// First index with q > bound among a certified prefix, if present.
inline std::optional<size_t> first_exceeding(const std::vector<Convergent>& conv,
                                             const mpz_class& bound) {
  for (size_t k = 0; k < conv.size(); ++k) {
    if (conv[k].q > bound) return k;
  }
  return std::nullopt;
}

}  // namespace detail

// One convergent q certifies eps > 0 for every member at once.
inline ReductionOutcome dp_reduce_family(const RealFn& gamma, const FamilyFn& kappas,
                                         const RealFn& A1, const RealFn& A2, const mpz_class& M,
                                         const ReductionOptions& opt = {}) {
  opt.policy.validate();
  if (M < 1) throw DomainError("reduction needs M >= 1");
  mpz_class six_m = 6 * M;
  std::vector<std::string> diag;
  std::string last_issue = "no attempt";
  long resume = -1;  // accepted but too coarse: redo this index at higher precision
  for (long bits = opt.policy.start_bits; bits <= opt.policy.max_bits; bits *= 2) {
    bool at_max = bits * 2 > opt.policy.max_bits;
    CertifiedReal g = gamma(bits);
    CertifiedReal a1 = A1(bits), a2 = A2(bits);
    if (!a1.certainly_positive()) throw DomainError("reduction needs A1 > 0");
    if (!(a2.lo() > Dyadic(1))) throw DomainError("reduction needs A2 > 1");
    std::vector<mpz_class> quot = cf_expand_real(g, 4096);
    std::vector<Convergent> conv = convergent_table(quot);
    std::optional<size_t> first = detail::first_exceeding(conv, six_m);
    size_t start = 0;
    if (resume >= 0) {
      start = static_cast<size_t>(resume);
      if (start >= conv.size()) continue;
    } else if (opt.start_index) {
      start = *opt.start_index;
      if (start >= conv.size()) {
        last_issue = "convergent " + std::to_string(start) + " not certified";
        continue;
      }
      if (conv[start].q <= six_m) {
        throw DomainError("requested convergent q_" + std::to_string(start) + " is not > 6M");
      }
    } else {
      if (!first) {
        last_issue = "no certified convergent with q > 6M";
        continue;
      }
      start = *first;
    }
    std::vector<CertifiedReal> members;
    try {
      members = kappas(bits);
    } catch (const PrecisionError& e) {
      last_issue = e.what();
      continue;
    }
    if (members.empty()) throw DomainError("empty kappa family");
    if (resume < 0) diag.clear();
    resume = -1;
    bool escalate = false;
    for (size_t k = start; k < start + opt.horizon; ++k) {
      if (k >= conv.size()) {
        last_issue = "convergent " + std::to_string(k) + " not certified";
        escalate = true;
        break;
      }
      const mpz_class& q = conv[k].q;
      CertifiedReal gq_dist, eps_min;
      detail::Verdict verdict = detail::Verdict::Accept;
      size_t argmin = 0;
      try {
        gq_dist = cr_nearest_int_distance(g * q) * M;
        for (size_t i = 0; i < members.size(); ++i) {
          CertifiedReal e = cr_nearest_int_distance(members[i] * q) - gq_dist;
          if (i == 0 || e.lo() < eps_min.lo()) argmin = i;
          eps_min = i == 0 ? e : min(eps_min, e);
          if (e.hi().sign() <= 0) {
            verdict = detail::Verdict::Reject;
            break;
          }
          if (e.lo().sign() <= 0) verdict = detail::Verdict::Undecided;
        }
      } catch (const PrecisionError& e) {
        verdict = detail::Verdict::Undecided;
      }
      if (verdict == detail::Verdict::Accept) {
        // epsilon enters the bound through its lower endpoint; refine until it is tight
        if (!at_max && eps_min.width() > eps_min.lo().scaled(-40)) {
          resume = static_cast<long>(k);
          last_issue = "epsilon too coarse at q_" + std::to_string(k);
          escalate = true;
          break;
        }
        ExponentBound kb = exponent_bound(a1, q, eps_min, a2, bits);
        ReductionOutcome out;
        out.q = q;
        out.q_index = k;
        out.epsilon = eps_min;
        out.argmin = argmin;
        out.k_threshold = kb.threshold;
        out.k_bound = kb.bound;
        out.k_value = kb.value;
        out.bits = bits;
        out.diagnostics = diag;
        return out;
      }
      if (verdict == detail::Verdict::Undecided && !at_max) {
        last_issue = "sign of epsilon undecided at q_" + std::to_string(k);
        escalate = true;
        break;
      }
      std::ostringstream line;
      line << "q_" << k << ": epsilon "
           << (verdict == detail::Verdict::Reject ? "<= 0 (member " + std::to_string(argmin) + ")"
                                                   : "sign undecided at max precision");
      diag.push_back(line.str());
    }
    if (!escalate) {
      std::string msg = "reduction failed: no convergent in [" + std::to_string(start) + ", " +
                        std::to_string(start + opt.horizon) + ") gives epsilon > 0";
      for (const auto& d : diag) msg += "\n  " + d;
      throw ReductionError(msg);
    }
  }
  throw PrecisionError("reduction: cannot certify within " + std::to_string(opt.policy.max_bits) +
                       " bits (" + last_issue + ")");
}

inline ReductionOutcome dp_reduce(const ReductionInstance& inst, const ReductionOptions& opt = {}) {
  auto single = [&inst](long bits) { return std::vector<CertifiedReal>{inst.kappa(bits)}; };
  return dp_reduce_family(inst.gamma, single, inst.A1, inst.A2, inst.M, opt);
}

// ---------------------------------------------------------------------------
// Best approximations below a denominator cap

struct ClosestConvergents {
  size_t index_prev = 0, index_last = 0;
  Convergent prev, last;
  CertifiedReal gap_prev, gap_last;  // |gamma - p/q|
  CertifiedReal gap;                 // the smaller of the two
};

inline ClosestConvergents closest_convergents(const RealFn& gamma, const mpz_class& M,
                                              const PrecisionPolicy& policy = {}) {
  policy.validate();
  if (M < 1) throw DomainError("denominator cap must be >= 1");
  for (long bits = policy.start_bits; bits <= policy.max_bits; bits *= 2) {
    CertifiedReal g = gamma(bits);
    std::vector<Convergent> conv = convergent_table(cf_expand_real(g, 4096));
    std::optional<size_t> beyond = detail::first_exceeding(conv, M);
    if (!beyond) continue;
    size_t last = *beyond - 1;
    size_t prev = last > 0 ? last - 1 : last;
    auto gap = [&](const Convergent& c) {
      return abs(g - CertifiedReal::from_rational(mpq_class(c.p, c.q), bits));
    };
    ClosestConvergents out;
    out.index_prev = prev;
    out.index_last = last;
    out.prev = conv[prev];
    out.last = conv[last];
    out.gap_prev = gap(out.prev);
    out.gap_last = gap(out.last);
    if (!out.gap_last.certainly_positive() || !out.gap_prev.certainly_positive()) continue;
    out.gap = out.gap_last.hi() < out.gap_prev.lo() ? out.gap_last
              : out.gap_prev.hi() < out.gap_last.lo() ? out.gap_prev
                                                      : min(out.gap_last, out.gap_prev);
    return out;
  }
  throw PrecisionError("closest convergents: cannot certify within " +
                       std::to_string(policy.max_bits) + " bits");
}

struct LegendreOutcome {
  ClosestConvergents closest;
  long n1_bound = 0;
};

// The degenerate kappa = 0 cell: m1/n1 must be a convergent of
// log theta_a / log theta_b with n1 <= M, so
//   gap <= |gamma - m1/n1| < 1.54 / (n1 theta_a^n1 log theta_b),
// and the right side decreases in n1.
inline LegendreOutcome legendre_fallback(const PairConfig& cfg, const mpz_class& M,
                                         const PrecisionPolicy& policy = {}) {
  RealFn gamma = [&cfg](long bits) { return cfg.log_theta_a(bits) / cfg.log_theta_b(bits); };
  LegendreOutcome out;
  out.closest = closest_convergents(gamma, M, policy);
  long bits = policy.start_bits;
  CertifiedReal gap_lo(out.closest.gap.lo(), out.closest.gap.lo(), bits);
  CertifiedReal ta = cfg.alpha.theta1.eval(bits), lb = cfg.log_theta_b(bits);
  CertifiedReal c = decimal("1.54", bits) / lb;
  CertifiedReal power = ta;
  long n = 1;
  for (;; ++n) {
    CertifiedReal rhs = c / (power * n);
    if (rhs.hi() < gap_lo.lo()) break;  // this n and every larger one is excluded
    power = power * ta;
    if (n > 100000) throw ReductionError("Legendre fallback: bound did not converge");
  }
  out.n1_bound = n - 1;
  return out;
}

}  // namespace pillai
