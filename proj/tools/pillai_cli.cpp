// pillai: command-line front end.
// Exit codes: 0 ok, 1 usage, 2 computation error, 3 reproduction mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pillai/bounds.hpp"
#include "pillai/cfrac.hpp"
#include "pillai/convergents.hpp"
#include "pillai/error.hpp"
#include "pillai/parse.hpp"
#include "pillai/reduction.hpp"
#include "pillai/reference.hpp"
#include "pillai/search.hpp"
#include "pillai/tables.hpp"

using namespace pillai;

namespace {

constexpr int kOk = 0, kUsage = 1, kComputation = 2, kMismatch = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long bits = 192;
  std::string format = "text";
  std::string out;
  std::string data = PILLAI_REFERENCE_DATA;
  std::string pair;
  std::string alpha, beta;
  long n = -1, m = -1;
  unsigned threads = 0;
  std::string input;
  std::string table;
  int row = 0;
  std::string sign = "+";
  bool from_first = false;
  long t_max = -1, s_max = -1;
  std::string scope = "all";
};

ordered_json bigint_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

ordered_json terms_json(const std::vector<mpz_class>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(bigint_json(x));
  return arr;
}

void emit(const Options& o, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << body;
}

PrecisionPolicy policy(const Options& o) {
  PrecisionPolicy p;
  p.start_bits = o.bits;
  p.validate();
  return p;
}

std::pair<long, long> parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--pair expects a,b");
  try {
    size_t u1 = 0, u2 = 0;
    long a = std::stol(text.substr(0, comma), &u1);
    long b = std::stol(text.substr(comma + 1), &u2);
    if (u1 != comma || u2 != text.size() - comma - 1) throw UsageError("--pair expects a,b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--pair expects two integers a,b");
  }
}

// Either --pair a,b (the expansions [0; (1, a)], [0; (1, b)]) or --alpha/--beta.
std::pair<ContinuedFraction, ContinuedFraction> expansions(const Options& o) {
  if (!o.pair.empty()) {
    if (!o.alpha.empty() || !o.beta.empty()) throw UsageError("use --pair or --alpha/--beta, not both");
    auto [a, b] = parse_pair(o.pair);
    if (a < 1 || b < 1) throw UsageError("--pair entries must be >= 1");
    return {lehmer_cf(a), lehmer_cf(b)};
  }
  if (o.alpha.empty() || o.beta.empty()) throw UsageError("need --pair a,b or both --alpha and --beta");
  return {parse_expansion(o.alpha), parse_expansion(o.beta)};
}

ReportFormat format_of(const Options& o) {
  try {
    return parse_format(o.format);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_expand(const Options& o) {
  ContinuedFraction cf = parse_expansion(o.input);
  switch (format_of(o)) {
    case ReportFormat::Json: {
      ordered_json j = {{"input", o.input},
                        {"expansion", cf.to_string()},
                        {"preperiod", terms_json(cf.preperiod)},
                        {"period", terms_json(cf.period)},
                        {"trace", bigint_json(trace_t(cf.period))}};
      emit(o, j.dump(2));
      break;
    }
    case ReportFormat::Text: emit(o, cf.to_string()); break;
    case ReportFormat::Csv: {
      std::ostringstream os;
      os << "index,term\n";
      for (size_t i = 0; i < cf.r() + cf.s(); ++i) os << i << "," << cf.term(i).get_str() << "\n";
      emit(o, os.str());
      break;
    }
  }
  return kOk;
}

int cmd_sequence(const Options& o) {
  if (o.n < 0) throw UsageError("sequence needs --n >= 0");
  ContinuedFraction cf = parse_expansion(o.input);
  DenominatorTable q = q_sequence(cf, o.n);
  switch (format_of(o)) {
    case ReportFormat::Json: {
      ordered_json j = {{"expansion", cf.to_string()}, {"q", terms_json(q.values)}};
      emit(o, j.dump(2));
      break;
    }
    case ReportFormat::Text: {
      std::string s;
      for (size_t i = 0; i < q.size(); ++i) s += (i ? " " : "") + q[i].get_str();
      emit(o, s);
      break;
    }
    case ReportFormat::Csv: {
      std::ostringstream os;
      os << "index,q\n";
      for (size_t i = 0; i < q.size(); ++i) os << i << "," << q[i].get_str() << "\n";
      emit(o, os.str());
      break;
    }
  }
  return kOk;
}

int cmd_search(const Options& o) {
  auto [ca, cb] = expansions(o);
  long n = o.n < 0 ? 400 : o.n, m = o.m < 0 ? 340 : o.m;
  if (n < 1 || m < 1) throw UsageError("search needs --n, --m >= 1");
  auto records = multi_rep_search(ca, cb, n, m, o.threads);
  emit(o, search_report(records, format_of(o)));
  return kOk;
}

int cmd_bound(const Options& o) {
  if (o.pair.empty()) throw UsageError("bound needs --pair a,b");
  auto [a, b] = parse_pair(o.pair);
  PairConfig cfg = PairConfig::make(a, b);
  long bits = std::max(o.bits, 128L);
  std::vector<NamedCheck> aux = auxiliary_inequalities(cfg, bits);
  std::vector<NamedCheck> heights = height_bound_checks(cfg, bits);
  std::optional<Theorem12Bound> tb;
  std::string why;
  try {
    tb = theorem12_bound(cfg, bits);
  } catch (const DomainError& e) {
    why = e.what();
  }
  ReportFormat fmt = format_of(o);
  if (fmt == ReportFormat::Json) {
    ordered_json j = {{"pair", {a, b}},
                      {"theta_alpha", cfg.alpha.theta1.to_string()},
                      {"theta_beta", cfg.beta.theta1.to_string()}};
    if (tb) {
      auto [lo, hi] = endpoints(tb->max_NM, 12);
      auto [nlo, nhi] = endpoints(tb->n1_bound, 12);
      j["max_NM"] = {{"lo", lo}, {"hi", hi}};
      j["n1_bound"] = {{"lo", nlo}, {"hi", nhi}};
    } else {
      j["max_NM"] = nullptr;
      j["not_applicable"] = why;
    }
    ordered_json checks = ordered_json::array();
    for (const auto* list : {&aux, &heights}) {
      for (const auto& c : *list) {
        checks.push_back({{"name", c.name}, {"lhs", show(c.lhs, 10)}, {"rhs", show(c.rhs, 10)},
                          {"holds", c.holds}});
      }
    }
    j["checks"] = checks;
    emit(o, j.dump(2));
  } else {
    std::vector<Check> rows;
    for (const auto* list : {&aux, &heights}) {
      for (const auto& c : *list) rows.push_back({"bound", c.name, show(c.lhs), show(c.rhs), c.holds});
    }
    std::ostringstream os;
    if (fmt == ReportFormat::Csv) {
      os << checks_csv(rows);
    } else {
      os << "pair (" << a << ", " << b << "): theta_alpha = " << cfg.alpha.theta1.to_string()
         << ", theta_beta = " << cfg.beta.theta1.to_string() << "\n";
      if (tb) {
        os << "max(N1, M1) <= " << format_sci(tb->max_NM.hi(), 6, Rounding::Up) << "\n";
        os << "n1 <= " << format_sci(tb->n1_bound.hi(), 6, Rounding::Up) << "\n";
      } else {
        os << "closed-form bound not applicable: " << why << "\n";
      }
      os << checks_text(rows);
    }
    emit(o, os.str());
  }
  return kOk;
}

int cmd_reduce(const Options& o) {
  if (o.table.empty() || o.row < 1) throw UsageError("reduce needs --table and --row");
  if (o.sign != "+" && o.sign != "-") throw UsageError("--sign must be + or -");
  ReferenceData d = load_reference(o.data);
  const TableSpec& t = find_table(d, o.table);
  RowSpec row = find_row(d, o.table, o.row, o.sign[0]);
  if (o.from_first) row.start_index.reset();
  FamilyRange range = printed_range(t);
  if (o.t_max >= 0) range.t_max = o.t_max;
  if (o.s_max >= 0) range.s_max = o.s_max;
  PairConfig cfg = PairConfig::make(d.a, d.b);
  ReductionOptions opt;
  opt.policy = policy(o);
  RowResult r = run_table_row(cfg, t, row, range, d.M, opt);
  ReportFormat fmt = format_of(o);
  if (fmt == ReportFormat::Json) {
    emit(o, row_json(r).dump(2));
  } else {
    std::vector<long> got;
    for (const auto& b : r.bounds) got.push_back(b.bound);
    std::vector<Check> rows{
        {"reduce", row_id(row) + " epsilon", format_sci(r.outcome.epsilon.lo(), 6, Rounding::Down),
         row.printed_epsilon, r.epsilon_match},
        {"reduce", row_id(row) + " bound", bounds_text(got), bounds_text(row.printed_bounds), r.bounds_match}};
    std::ostringstream os;
    if (fmt == ReportFormat::Csv) {
      os << checks_csv(rows);
    } else {
      os << row_id(row) << ": c = ";
      for (size_t i = 0; i < r.c_values.size(); ++i) os << (i ? ", " : "") << r.c_values[i];
      os << "\nq_" << r.outcome.q_index << " = " << r.outcome.q.get_str() << "\n";
      os << "epsilon = " << render(r.outcome.epsilon) << " over " << r.members << " member(s)\n";
      for (const auto& c : r.excluded) os << "excluded cell (" << c.t << ", " << c.s << ")\n";
      for (const auto& line : r.outcome.diagnostics) os << "skipped " << line << "\n";
      os << checks_text(rows);
    }
    emit(o, os.str());
  }
  return r.match() ? kOk : kMismatch;
}

int cmd_reproduce(const Options& o) {
  static const std::vector<std::string> scopes{"thm13", "appendix", "tables", "bounds", "all"};
  if (std::find(scopes.begin(), scopes.end(), o.scope) == scopes.end()) {
    throw UsageError("unknown scope '" + o.scope + "' (thm13, appendix, tables, bounds, all)");
  }
  ReferenceData d = load_reference(o.data);
  ReductionOptions opt;
  opt.policy = policy(o);
  Reproduction rep;
  bool all = o.scope == "all";
  if (all || o.scope == "thm13") rep.merge(reproduce_search(d, "thm13"), "thm13");
  if (all || o.scope == "appendix") rep.merge(reproduce_search(d, "appendix"), "appendix");
  if (all || o.scope == "bounds") rep.merge(reproduce_bounds(d, std::max(o.bits, 256L)), "bounds");
  if (all || o.scope == "tables") rep.merge(reproduce_tables(d, opt), "tables");
  size_t bad = 0;
  for (const auto& c : rep.checks) bad += !c.match;
  switch (format_of(o)) {
    case ReportFormat::Json: {
      ordered_json j = {{"scope", o.scope},
                        {"all_match", bad == 0},
                        {"mismatches", bad},
                        {"checks", checks_json(rep.checks)},
                        {"detail", rep.detail}};
      emit(o, j.dump(2));
      break;
    }
    case ReportFormat::Text: {
      std::ostringstream os;
      os << checks_text(rep.checks);
      os << rep.checks.size() - bad << "/" << rep.checks.size() << " checks match";
      emit(o, os.str());
      break;
    }
    case ReportFormat::Csv: emit(o, checks_csv(rep.checks)); break;
  }
  if (bad > 0) {
    std::cerr << "reproduction mismatch (" << bad << "):\n";
    for (const auto& c : rep.checks) {
      if (!c.match) std::cerr << "  " << c.name << ": computed " << c.computed << ", printed " << c.printed << "\n";
    }
    return kMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple representations c = q_a[N] - q_b[M] of convergent denominators"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  if (const char* env = std::getenv("PILLAI_BITS")) {
    try {
      o.bits = std::stol(env);
    } catch (const std::logic_error&) {
      std::cerr << "PILLAI_BITS must be an integer\n";
      return kUsage;
    }
  }
  app.add_option("--bits", o.bits, "starting precision in bits (default 192, env PILLAI_BITS)")
      ->check(CLI::Range(64L, 4096L));
  app.add_option("--format", o.format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--out", o.out, "write output to this file");
  app.add_option("--data", o.data, "reference data file");

  auto* expand = app.add_subcommand("expand", "continued fraction of a quadratic surd");
  expand->add_option("input", o.input, "surd such as sqrt(27) or (5+sqrt(21))/2, or [a0; (b0, ...)]")
      ->required();

  auto* sequence = app.add_subcommand("sequence", "convergent denominators q_0 .. q_n");
  sequence->add_option("input", o.input, "surd or bracket expansion")->required();
  sequence->add_option("--n", o.n, "last index")->required();

  auto* search = app.add_subcommand("search", "integers with two distinct representations");
  search->add_option("--pair", o.pair, "a,b for [0; (1, a)] and [0; (1, b)]");
  search->add_option("--alpha", o.alpha, "first expansion (surd or bracket form)");
  search->add_option("--beta", o.beta, "second expansion (surd or bracket form)");
  search->add_option("--n", o.n, "largest N (default 400)");
  search->add_option("--m", o.m, "largest M (default 340)");
  search->add_option("--threads", o.threads, "worker threads (default: all cores)");

  auto* bound = app.add_subcommand("bound", "closed-form bound and its auxiliary inequalities");
  bound->add_option("--pair", o.pair, "a,b")->required();

  auto* reduce = app.add_subcommand("reduce", "run one reduction table row from the reference data");
  reduce->add_option("--table", o.table, "T1, T2.1, T2.2 or T3")->required();
  reduce->add_option("--row", o.row, "row number within the table")->required();
  reduce->add_option("--sign", o.sign, "+ or - (sign of the log-linear form)");
  reduce->add_flag("--from-first", o.from_first, "start at the first convergent with q > 6M");
  reduce->add_option("--t-max", o.t_max, "override the t range");
  reduce->add_option("--s-max", o.s_max, "override the s range");

  auto* reproduce = app.add_subcommand("reproduce", "diff computed values against the reference data");
  reproduce->add_option("scope", o.scope, "thm13, appendix, tables, bounds or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*expand) return cmd_expand(o);
    if (*sequence) return cmd_sequence(o);
    if (*search) return cmd_search(o);
    if (*bound) return cmd_bound(o);
    if (*reduce) return cmd_reduce(o);
    if (*reproduce) return cmd_reproduce(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputation;
  }
  return kUsage;
}
