// Acceptance checks, one per criterion: `acceptance N` runs criterion N,
// `acceptance` runs all of them. Each prints a single PASS/FAIL line.

#include <chrono>
#include <functional>
#include <iostream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "pillai/bounds.hpp"
#include "pillai/convergents.hpp"
#include "pillai/parse.hpp"
#include "pillai/reference.hpp"
#include "pillai/search.hpp"
#include "synthetic.hpp"

using namespace pillai;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

const ReferenceData& reference() {
  static const ReferenceData d = load_reference(PILLAI_REFERENCE_DATA);
  return d;
}

std::string failed_checks(const std::vector<Check>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (!c.match) out += "; " + c.name + ": " + c.computed + " vs " + c.printed;
  }
  return out;
}

Verdict search_scope(const std::string& scope, double limit_s) {
  auto t0 = std::chrono::steady_clock::now();
  Reproduction rep = reproduce_search(reference(), scope);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  size_t ok = 0;
  for (const auto& c : rep.checks) ok += c.match;
  std::ostringstream os;
  os << ok << "/" << rep.checks.size() << " checks";
  for (const auto& c : rep.checks) {
    if (c.name.find(" set") != std::string::npos) os << ", " << c.name << " " << c.computed;
  }
  os << failed_checks(rep.checks);
  if (secs >= limit_s) os << "; too slow";
  return {rep.all_match() && secs < limit_s, os.str()};
}

Verdict criterion1() { return search_scope("thm13", 30); }
Verdict criterion2() { return search_scope("appendix", 180); }

Verdict criterion3() {
  std::vector<std::string> bad;
  ContinuedFraction s27 = cf_expand_surd(0, 1, 27);
  if (s27.to_string() != "[5; (5, 10)]") bad.push_back("sqrt(27) -> " + s27.to_string());
  mpz_class t = trace_t(s27.period);
  if (t != 52) bad.push_back("trace " + t.get_str());
  std::vector<ContinuedFraction> cfs;
  for (long a = 2; a <= 7; ++a) cfs.push_back(lehmer_cf(a));
  cfs.push_back(s27);
  long checked = 0;
  for (const auto& cf : cfs) {
    DenominatorTable q = q_sequence(cf, 200);
    mpz_class tr = trace_t(cf.period), sign = cf.s() % 2 ? -1 : 1;
    size_t s = cf.s(), start = cf.r() > 0 ? cf.r() - 1 : 0;
    for (size_t i = start; i + 2 * s <= 200; ++i, ++checked) {
      if (q[i + 2 * s] - tr * q[i + s] + sign * q[i] != 0) bad.push_back(cf.to_string() + " at " + std::to_string(i));
    }
  }
  std::ostringstream os;
  os << "sqrt(27) = " << s27.to_string() << ", trace 52, recurrence " << checked << " identities over "
     << cfs.size() << " expansions";
  for (const auto& b : bad) os << "; " << b;
  return {bad.empty(), os.str()};
}

Verdict criterion4() {
  long checked = 0, bad = 0;
  for (long a = 2; a <= 7; ++a) {
    ContinuedFraction cf = lehmer_cf(a);
    BinetData bd = binet_data(cf);
    DenominatorTable q = q_sequence(cf, 200);
    for (size_t j = 0; j < bd.s; ++j) {
      for (size_t i = 0; bd.index(j, i) <= 200; ++i, ++checked) bad += binet_reconstruct(bd, j, i) != q[bd.index(j, i)];
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " indices reconstruct exactly"};
}

Verdict criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  Reproduction rep = reproduce_bounds(reference());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<Check> mine;
  for (const auto& c : rep.checks) {
    if (c.name.rfind("Matveev coefficient", 0) == 0) mine.push_back(c);
  }
  std::ostringstream os;
  for (const auto& c : mine) os << (os.tellp() ? ", " : "") << c.computed << (c.match ? "" : " (printed " + c.printed + ")");
  bool ok = mine.size() == 3 && secs < 1;
  for (const auto& c : mine) ok = ok && c.match;
  return {ok, os.str()};
}

Verdict criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  const ReferenceData& d = reference();
  PairConfig cfg = PairConfig::make(d.a, d.b);
  Theorem12Bound tb = theorem12_bound(cfg);
  std::string n1_up = format_sci(tb.n1_bound.hi(), 2, Rounding::Up);
  mpq_class rel = abs(tb.n1_bound.mid().to_mpq() - parse_decimal("3.9e51")) / parse_decimal("3.9e51");
  CertifiedReal pw = petho_deweger_leading(3, decimal("2.73e43", 256));
  bool pw_ok = agrees_to_sig(pw, "5.8968e45", 5);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = parse_decimal(n1_up) == parse_decimal("3.9e51") && rel <= mpq_class(2, 100) && pw_ok && secs < 1;
  return {ok, "n1 <= " + show(tb.n1_bound) + " (rounds up to " + n1_up + "), 216 g = " + show(pw)};
}

Verdict criterion7() {
  const ReferenceData& d = reference();
  ReferenceData t1 = d;
  t1.tables.clear();
  t1.rows.clear();
  for (const auto& t : d.tables) {
    if (t.id == "T1") t1.tables.push_back(t);
  }
  for (const auto& r : d.rows) {
    if (r.table == "T1") t1.rows.push_back(r);
  }
  auto t0 = std::chrono::steady_clock::now();
  // T1 has no degenerate cell, so the Legendre step does not run
  Reproduction rep;
  PairConfig cfg = PairConfig::make(d.a, d.b);
  std::vector<mpz_class> want;
  for (const auto& v : d.raw.at("gamma_cf_prefix")) want.emplace_back(v.get<long>());
  CertifiedReal gamma = cfg.log_theta_a(400) / cfg.log_theta_b(400);
  std::vector<mpz_class> prefix = cf_expand_real(gamma, want.size());
  rep.add("tables", "gamma expansion prefix", join_ints(prefix), join_ints(want), prefix == want);
  TablesReport tr = run_tables(cfg, t1.tables, t1.rows, d.M);
  for (const auto& r : tr.rows) {
    std::vector<long> got;
    for (const auto& b : r.bounds) got.push_back(b.bound);
    rep.add("tables", row_id(r.spec) + " epsilon", format_sci(r.outcome.epsilon.lo(), 6, Rounding::Down),
            r.spec.printed_epsilon, r.epsilon_match);
    rep.add("tables", row_id(r.spec) + " bound", bounds_text(got), bounds_text(r.spec.printed_bounds), r.bounds_match);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  size_t ok = 0;
  for (const auto& c : rep.checks) ok += c.match;
  std::ostringstream os;
  os << tr.rows.size() << " rows, " << ok << "/" << rep.checks.size() << " checks, gamma prefix " << join_ints(prefix)
     << failed_checks(rep.checks);
  return {rep.all_match() && !tr.rows.empty() && secs < 60, os.str()};
}

Verdict criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  Reproduction rep = reproduce_tables(reference());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<Check> mine;
  for (const auto& c : rep.checks) {
    if (c.name.rfind("T1", 0) != 0 && c.name != "gamma expansion prefix") mine.push_back(c);
  }
  size_t ok = 0, rows = 0;
  for (const auto& c : mine) {
    ok += c.match;
    rows += c.name.size() > 6 && c.name.compare(c.name.size() - 6, 6, " bound") == 0;
  }
  std::ostringstream os;
  os << rows << " rows, " << ok << "/" << mine.size() << " checks in " << static_cast<long>(secs) << " s"
     << failed_checks(mine);
  bool all = ok == mine.size() && !mine.empty() && secs < 1800;
  return {all, os.str()};
}

Verdict criterion9() {
  long violations = 0, checked = 0;
  std::string first;
  auto list = synthetic::instances(20);
  for (const auto& in : list) {
    ReductionOutcome out = dp_reduce(synthetic::to_reduction(in));
    synthetic::Enumeration e = synthetic::enumerate(in, out.k_threshold);
    violations += e.violations;
    checked += e.checked;
    if (e.violations && first.empty()) first = "; " + in.describe() + ": " + e.details.front();
  }
  return {violations == 0, std::to_string(list.size()) + " instances, " + std::to_string(checked) +
                               " (m, n, k) triples, " + std::to_string(violations) + " violations" + first};
}

Verdict criterion10() {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<long> prec(24, 256);
  std::uniform_int_distribution<int> depth_dist(1, 6);
  std::function<std::pair<mpq_class, CertifiedReal>(int, long)> tree = [&](int depth, long bits) {
    std::uniform_int_distribution<int> pick(0, 4);
    int op = depth == 0 ? 4 : pick(rng);
    if (op == 4) {
      mpq_class v = oracle::random_rational(rng, 1000, 97);
      return std::pair{v, CertifiedReal::from_rational(v, bits)};
    }
    auto [ea, ia] = tree(depth - 1, bits);
    auto [eb, ib] = tree(depth - 1, bits);
    if (op == 0 || (op == 3 && abs(eb) < mpq_class(1, 8))) return std::pair{mpq_class(ea + eb), ia + ib};
    if (op == 1) return std::pair{mpq_class(ea - eb), ia - ib};
    if (op == 2) return std::pair{mpq_class(ea * eb), ia * ib};
    return std::pair{mpq_class(ea / eb), ia / ib};
  };
  int tree_fail = 0;
  for (int i = 0; i < 500; ++i) {
    auto [exact, approx] = tree(depth_dist(rng), prec(rng));
    tree_fail += !approx.contains(exact);
  }
  int fn_fail = 0;
  std::uniform_int_distribution<long> fprec(64, 768);
  for (int i = 0; i < 200; ++i) {
    mpq_class x = abs(oracle::random_rational(rng, 1000000, 9999)) + mpq_class(1, 100000);
    long bits = fprec(rng);
    mpq_class tol = mpq_class(1) / pow2(static_cast<unsigned long>(bits - 8));
    CertifiedReal l = cr_ln(CertifiedReal::from_rational(x, bits + 8), bits);
    auto [llo, lhi] = oracle::ln(x, bits + 64);
    fn_fail += !(l.lo().to_mpq() <= lhi && l.hi().to_mpq() >= llo && l.width().to_mpq() <= tol * (abs(llo) + 1));
    CertifiedReal s = sqrt(CertifiedReal::from_rational(x, bits));
    auto [slo, shi] = oracle::sqrt(x, bits + 64);
    fn_fail += !(s.lo().to_mpq() <= shi && s.hi().to_mpq() >= slo && s.width().to_mpq() <= tol * (shi + 1));
  }
  return {tree_fail == 0 && fn_fail == 0, "500 trees, " + std::to_string(tree_fail) + " containment failures; " +
                                              "400 ln/sqrt oracle comparisons, " + std::to_string(fn_fail) + " failures"};
}

Verdict criterion11() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<long> exp(-6, 6);
  const std::vector<long> radicands{2, 3, 5, 6, 7, 21};
  CertifiedReal log2 = cr_ln(CertifiedReal(2, 160), 160);
  auto h = [](const QFieldElement& v) { return qf_height(v, 128); };
  int sum_fail = 0, prod_fail = 0, pow_fail = 0, bound_fail = 0, bound_total = 0;
  for (int i = 0; i < 100; ++i) {
    mpz_class d = radicands[i % radicands.size()];
    QFieldElement x = oracle::random_element(rng, d), y = oracle::random_element(rng, d);
    CertifiedReal s = h(x) + h(y);
    sum_fail += !(h(x + y).lo() <= (s + log2).hi() && h(x - y).lo() <= (s + log2).hi());
    prod_fail += !(h(x * y).lo() <= s.hi() && h(x / y).lo() <= s.hi());
    pow_fail += !qf_height_power_check(x, exp(rng), 128);
  }
  for (long a = 2; a <= 5; ++a) {
    for (long b = a + 1; b <= 5; ++b) {
      for (const auto& c : height_bound_checks(PairConfig::make(a, b))) {
        ++bound_total;
        bound_fail += !c.holds;
      }
    }
  }
  std::ostringstream os;
  os << "sum/difference " << sum_fail << ", product/quotient " << prod_fail << ", power " << pow_fail
     << " failures over 100 instances each; pair height bounds " << bound_total - bound_fail << "/" << bound_total;
  return {sum_fail + prod_fail + pow_fail + bound_fail == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                       criterion5, criterion6, criterion7,  criterion8,
                                                       criterion9, criterion10, criterion11};
  std::vector<int> which;
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[n - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << "  ["
              << std::fixed << std::setprecision(2) << secs << " s]" << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
