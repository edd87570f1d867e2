#pragma once

// Published values as a data file, and the reproduction runs that diff the
// computed values against them.

#include <gmpxx.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pillai/bounds.hpp"
#include "pillai/cfrac.hpp"
#include "pillai/convergents.hpp"
#include "pillai/error.hpp"
#include "pillai/highprec.hpp"
#include "pillai/reduction.hpp"
#include "pillai/search.hpp"
#include "pillai/tables.hpp"

namespace pillai {

using ordered_json = nlohmann::ordered_json;

struct ReferenceData {
  ordered_json raw;
  long a = 0, b = 0;
  mpz_class M;
  std::vector<TableSpec> tables;
  std::vector<RowSpec> rows;
};

inline Side parse_side(const std::string& s) {
  if (s == "alpha") return Side::Alpha;
  if (s == "beta") return Side::Beta;
  throw DomainError("reference data: unknown side '" + s + "'");
}

inline mpz_class parse_integer_decimal(const std::string& text) {
  mpq_class v = parse_decimal(text);
  if (v.get_den() != 1) throw DomainError("expected an integer, got " + text);
  return v.get_num();
}

inline ReferenceData reference_from_json(const ordered_json& j) {
  ReferenceData d;
  try {
    d.raw = j;
    d.a = j.at("pair").at(0).get<long>();
    d.b = j.at("pair").at(1).get<long>();
    d.M = parse_integer_decimal(j.at("M").get<std::string>());
    for (const auto& t : j.at("tables")) {
      TableSpec s;
      s.id = t.at("id").get<std::string>();
      s.alpha_terms = t.at("alpha_terms").get<size_t>();
      s.beta_terms = t.at("beta_terms").get<size_t>();
      s.plus_divisor = parse_side(t.at("plus_divisor").get<std::string>());
      s.a1_numerator = t.at("a1").at("numerator").get<std::string>();
      s.a1_times_theta_a = t.at("a1").at("times_theta_alpha").get<bool>();
      std::string log = t.at("a1").at("log").get<std::string>();
      if (log != "branch") s.a1_log = parse_side(log);
      for (const auto& x : t.at("a2")) s.a2.push_back(parse_side(x.get<std::string>()));
      s.epsilon_slack = t.at("epsilon_slack").get<std::string>();
      if (t.contains("t_from")) {
        s.t_from = RangeSource{t["t_from"].at("table").get<std::string>(), t["t_from"].at("slot").get<size_t>()};
        s.printed_t_max = t.at("printed_t_max").get<long>();
      }
      if (t.contains("s_from")) {
        s.s_from = RangeSource{t["s_from"].at("table").get<std::string>(), t["s_from"].at("slot").get<size_t>()};
        s.printed_s_max = t.at("printed_s_max").get<long>();
      }
      d.tables.push_back(std::move(s));
    }
    for (const auto& r : j.at("rows")) {
      RowSpec s;
      s.table = r.at("table").get<std::string>();
      s.row = r.at("row").get<int>();
      std::string sign = r.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw DomainError("reference data: bad sign " + sign);
      s.sign = sign[0];
      s.c_alpha = r.at("c_alpha").get<std::vector<size_t>>();
      s.c_beta = r.at("c_beta").get<std::vector<size_t>>();
      s.printed_q_index = r.at("q_index").get<size_t>();
      s.start_index = s.printed_q_index;
      s.printed_epsilon = r.at("epsilon").get<std::string>();
      s.printed_bounds = r.at("bounds").get<std::vector<long>>();
      d.rows.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed reference data: ") + e.what());
  }
  return d;
}

inline ReferenceData load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open reference data " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse reference data " + path + ": " + e.what());
  }
  return reference_from_json(j);
}

inline const TableSpec& find_table(const ReferenceData& d, const std::string& id) {
  for (const auto& t : d.tables) {
    if (t.id == id) return t;
  }
  throw DomainError("no table '" + id + "' in reference data");
}

inline const RowSpec& find_row(const ReferenceData& d, const std::string& table, int row, char sign) {
  for (const auto& r : d.rows) {
    if (r.table == table && r.row == row && r.sign == sign) return r;
  }
  throw DomainError("no row " + table + "/" + std::to_string(row) + sign + " in reference data");
}

// Printed shift ranges, for running a single row outside the full pipeline.
inline FamilyRange printed_range(const TableSpec& t) { return {t.printed_t_max, t.printed_s_max}; }

// ---------------------------------------------------------------------------
// Reproduction reports

struct Check {
  std::string scope, name, computed, printed;
  bool match = false;
};

struct Reproduction {
  ordered_json detail = ordered_json::object();
  std::vector<Check> checks;

  bool all_match() const {
    for (const auto& c : checks) {
      if (!c.match) return false;
    }
    return true;
  }
  void add(std::string scope, std::string name, std::string computed, std::string printed, bool match) {
    checks.push_back({std::move(scope), std::move(name), std::move(computed), std::move(printed), match});
  }
  void merge(Reproduction other, const std::string& key) {
    detail[key] = std::move(other.detail);
    for (auto& c : other.checks) checks.push_back(std::move(c));
  }
};

inline std::string join_ints(const std::vector<mpz_class>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "}";
}

inline ordered_json records_json(const std::vector<MultiRepRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json reps = ordered_json::array();
    for (const auto& p : r.reps) {
      reps.push_back({{"N", p.N}, {"M", p.M}, {"qa", p.qa.get_str()}, {"qb", p.qb.get_str()}});
    }
    arr.push_back({{"c", r.c.get_str()}, {"reps", reps}});
  }
  return arr;
}

// scope "thm13" or "appendix": search cases whose id starts with it.
inline Reproduction reproduce_search(const ReferenceData& d, const std::string& scope) {
  Reproduction rep;
  for (const auto& s : d.raw.at("searches")) {
    std::string id = s.at("id").get<std::string>();
    if (id.rfind(scope, 0) != 0) continue;
    long a = s.at("pair").at(0).get<long>(), b = s.at("pair").at(1).get<long>();
    ContinuedFraction ca = lehmer_cf(a), cb = lehmer_cf(b);
    auto records = multi_rep_search(ca, cb, s.at("n_max").get<long>(), s.at("m_max").get<long>());
    std::vector<mpz_class> got = record_values(records), want;
    for (const auto& v : s.at("set")) want.emplace_back(v.get<long>());
    rep.add(scope, id + " set", join_ints(got), join_ints(want), got == want);
    size_t shown = 0, verified = 0, present = 0;
    for (const auto& rec : s.at("displayed")) {
      mpz_class c(rec.at("c").get<long>());
      const MultiRepRecord* found = nullptr;
      for (const auto& r : records) {
        if (r.c == c) found = &r;
      }
      for (const auto& p : rec.at("reps")) {
        ++shown;
        Representation want_rep{p.at("N").get<long>(), p.at("M").get<long>(),
                                mpz_class(p.at("qa").get<long>()), mpz_class(p.at("qb").get<long>())};
        bool ok = verify_representation(ca, cb, c, want_rep.N, want_rep.M) &&
                  want_rep.qa - want_rep.qb == c &&
                  q_sequence(ca, want_rep.N)[static_cast<size_t>(want_rep.N)] == want_rep.qa;
        verified += ok;
        if (found && std::find(found->reps.begin(), found->reps.end(), want_rep) != found->reps.end()) {
          ++present;
        }
      }
    }
    rep.add(scope, id + " displayed representations verify", std::to_string(verified),
            std::to_string(shown), verified == shown);
    rep.add(scope, id + " displayed representations present", std::to_string(present),
            std::to_string(shown), present == shown);
    rep.detail[id] = {{"pair", {a, b}},
                      {"window", {s.at("n_max"), s.at("m_max")}},
                      {"set", join_ints(got)},
                      {"records", records_json(records)}};
  }
  if (rep.checks.empty()) throw DomainError("no search cases for scope '" + scope + "'");
  return rep;
}

// Agreement of a certified value with a printed decimal at `sig` significant
// figures: both endpoints round to the printed text.
inline bool agrees_to_sig(const CertifiedReal& x, const std::string& printed, int sig) {
  mpq_class want = parse_decimal(printed);
  return parse_decimal(format_sci(x.lo(), sig)) == want && parse_decimal(format_sci(x.hi(), sig)) == want;
}

inline std::string show(const CertifiedReal& x, int sig = 6) { return format_sci(x.mid(), sig); }

inline Reproduction reproduce_bounds(const ReferenceData& d, long bits = 256) {
  Reproduction rep;
  PairConfig cfg = PairConfig::make(d.a, d.b);
  const auto& bj = d.raw.at("bounds");

  const auto& mj = bj.at("matveev_coefficients");
  auto in = mj.at("a3_inputs");
  int sig = mj.at("sig").get<int>();
  MatveevCoefficients mc = matveev_coefficients(cfg, decimal(in.at(0).get<std::string>(), bits),
                                                decimal(in.at(1).get<std::string>(), bits),
                                                decimal(in.at(2).get<std::string>(), bits), bits);
  std::vector<CertifiedReal> coeffs{mc.first, mc.second, mc.third};
  const char* names[] = {"first", "second", "third"};
  ordered_json mjson = ordered_json::object();
  for (size_t i = 0; i < 3; ++i) {
    std::string printed = mj.at("printed").at(i).get<std::string>();
    rep.add("bounds", std::string("Matveev coefficient (") + names[i] + ")", show(coeffs[i]), printed,
            agrees_to_sig(coeffs[i], printed, sig));
    auto [lo, hi] = endpoints(coeffs[i], 12);
    mjson[names[i]] = {{"lo", lo}, {"hi", hi}, {"printed", printed}};
  }
  rep.detail["matveev_coefficients"] = mjson;

  const auto& pj = bj.at("petho_deweger");
  CertifiedReal pw = petho_deweger_leading(pj.at("c").get<long>(), decimal(pj.at("g").get<std::string>(), bits));
  std::string pw_printed = pj.at("printed").get<std::string>();
  rep.add("bounds", "Petho-de Weger leading constant", show(pw), pw_printed,
          agrees_to_sig(pw, pw_printed, pj.at("sig").get<int>()));
  rep.detail["petho_deweger"] = {{"value", show(pw, 8)}, {"printed", pw_printed}};

  Theorem12Bound tb = theorem12_bound(cfg, bits);
  const auto& nj = bj.at("n1_bound");
  std::string n1_printed = nj.at("printed").get<std::string>();
  mpq_class n1_want = parse_decimal(n1_printed);
  std::string rounded_up = format_sci(tb.n1_bound.hi(), nj.at("sig").get<int>(), Rounding::Up);
  mpq_class rel = abs(tb.n1_bound.mid().to_mpq() - n1_want) / n1_want;
  bool n1_ok = parse_decimal(rounded_up) == n1_want && rel <= mpq_class(2, 100);
  rep.add("bounds", "n1 bound", show(tb.n1_bound), n1_printed, n1_ok);
  auto [nlo, nhi] = endpoints(tb.n1_bound, 12);
  rep.detail["theorem12"] = {{"max_NM", show(tb.max_NM, 8)},
                             {"n1_bound", {{"lo", nlo}, {"hi", nhi}}},
                             {"n1_rounded_up", rounded_up},
                             {"printed", n1_printed}};

  ordered_json aux = ordered_json::array();
  for (const auto& c : auxiliary_inequalities(cfg, bits)) {
    rep.add("bounds", "auxiliary: " + c.name, show(c.lhs), show(c.rhs), c.holds);
    aux.push_back({{"name", c.name}, {"lhs", show(c.lhs, 10)}, {"rhs", show(c.rhs, 10)}, {"holds", c.holds}});
  }
  rep.detail["auxiliary"] = aux;
  ordered_json heights = ordered_json::array();
  for (const auto& c : height_bound_checks(cfg)) {
    rep.add("bounds", "height: " + c.name, show(c.lhs), show(c.rhs), c.holds);
    heights.push_back({{"name", c.name}, {"lhs", show(c.lhs, 10)}, {"rhs", show(c.rhs, 10)}, {"holds", c.holds}});
  }
  rep.detail["heights"] = heights;
  ordered_json chain = ordered_json::array();
  for (const auto& s : bound_chain(bits)) {
    chain.push_back({{"name", s.name}, {"rule", s.rule}, {"value", show(s.value, 8)}});
  }
  rep.detail["constant_chain"] = chain;
  return rep;
}

inline std::string row_id(const RowSpec& r) {
  return r.table + "/" + std::to_string(r.row) + (r.sign == '+' ? " L>0" : " L<0");
}

inline ordered_json row_json(const RowResult& r) {
  auto [lo, hi] = endpoints(r.outcome.epsilon, 12);
  ordered_json bounds = ordered_json::array();
  for (const auto& b : r.bounds) bounds.push_back(b.bound);
  ordered_json excluded = ordered_json::array();
  for (const auto& c : r.excluded) excluded.push_back({c.t, c.s});
  return {{"table", r.spec.table},
          {"row", r.spec.row},
          {"lambda_sign", std::string(1, r.spec.sign)},
          {"c_values", r.c_values},
          {"q_selected", r.outcome.q.get_str()},
          {"q_index", r.outcome.q_index},
          {"epsilon_lo", lo},
          {"epsilon_hi", hi},
          {"k_bound", r.bounds.empty() ? 0 : r.bounds[0].bound},
          {"k_bounds", bounds},
          {"members", r.members},
          {"argmin_cell", {r.argmin_cell.t, r.argmin_cell.s}},
          {"excluded_cells", excluded},
          {"shift_range", {r.range.t_max, r.range.s_max}},
          {"bits", r.outcome.bits},
          {"printed_q_index", r.spec.printed_q_index ? ordered_json(*r.spec.printed_q_index) : ordered_json()},
          {"paper_epsilon", r.spec.printed_epsilon},
          {"paper_bound", r.spec.printed_bounds.empty() ? 0 : r.spec.printed_bounds[0]},
          {"printed_bounds", r.spec.printed_bounds},
          {"epsilon_match", r.epsilon_match},
          {"bounds_match", r.bounds_match},
          {"match", r.match()}};
}

inline std::string bounds_text(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "/" : "") + std::to_string(v[i]);
  return s;
}

inline Reproduction reproduce_tables(const ReferenceData& d, const ReductionOptions& opt = {}) {
  Reproduction rep;
  PairConfig cfg = PairConfig::make(d.a, d.b);

  // gamma's certified expansion prefix
  std::vector<mpz_class> want_prefix;
  for (const auto& v : d.raw.at("gamma_cf_prefix")) want_prefix.emplace_back(v.get<long>());
  long bits = opt.policy.start_bits;
  CertifiedReal gamma = cfg.log_theta_a(bits) / cfg.log_theta_b(bits);
  std::vector<mpz_class> prefix = cf_expand_real(gamma, want_prefix.size());
  rep.add("tables", "gamma expansion prefix", join_ints(prefix), join_ints(want_prefix),
          prefix == want_prefix);

  TablesReport tr = run_tables(cfg, d.tables, d.rows, d.M, opt);
  for (const auto& t : d.tables) {
    const FamilyRange& r = tr.ranges.at(t.id);
    if (t.t_from) {
      rep.add("tables", t.id + " t range", std::to_string(r.t_max), std::to_string(t.printed_t_max),
              r.t_max == t.printed_t_max);
    }
    if (t.s_from) {
      rep.add("tables", t.id + " s range", std::to_string(r.s_max), std::to_string(t.printed_s_max),
              r.s_max == t.printed_s_max);
    }
  }
  ordered_json rows = ordered_json::array();
  for (const auto& r : tr.rows) {
    std::vector<long> got;
    for (const auto& b : r.bounds) got.push_back(b.bound);
    rep.add("tables", row_id(r.spec) + " epsilon", format_sci(r.outcome.epsilon.lo(), 6, Rounding::Down),
            r.spec.printed_epsilon, r.epsilon_match);
    rep.add("tables", row_id(r.spec) + " bound", bounds_text(got), bounds_text(r.spec.printed_bounds),
            r.bounds_match);
    rows.push_back(row_json(r));
  }
  rep.detail["rows"] = rows;

  const auto& lj = d.raw.at("legendre");
  if (!tr.legendre) {
    rep.add("tables", "degenerate cell routed to the Legendre bound", "none", "1 row", false);
  } else {
    const LegendreOutcome& L = *tr.legendre;
    std::vector<long> cell = lj.at("cell").get<std::vector<long>>();
    bool cell_ok = true;
    for (const auto& r : tr.rows) {
      if (r.excluded.empty()) continue;
      cell_ok = cell_ok && r.excluded.size() == 1 && r.excluded[0] == Cell{cell.at(0), cell.at(1)};
    }
    std::string routed;
    for (const auto& s : tr.legendre_rows) routed += (routed.empty() ? "" : ", ") + s;
    rep.add("tables", "degenerate cell (" + std::to_string(cell[0]) + "," + std::to_string(cell[1]) + ")",
            routed, "last table row", cell_ok);
    std::string gap_printed = lj.at("gap_lower").get<std::string>();
    bool gap_ok = L.closest.gap.lo().to_mpq() >= parse_decimal(gap_printed);
    rep.add("tables", "Legendre gap lower bound", format_sci(L.closest.gap.lo(), 6, Rounding::Down),
            gap_printed, gap_ok);
    long n1_printed = lj.at("n1_bound").get<long>();
    rep.add("tables", "Legendre n1 bound", std::to_string(L.n1_bound), std::to_string(n1_printed),
            L.n1_bound == n1_printed);
    std::vector<size_t> idx = lj.at("indices").get<std::vector<size_t>>();
    bool idx_ok = idx.size() == 2 && idx[0] == L.closest.index_prev && idx[1] == L.closest.index_last;
    rep.add("tables", "Legendre convergent indices",
            std::to_string(L.closest.index_prev) + "," + std::to_string(L.closest.index_last),
            std::to_string(idx.at(0)) + "," + std::to_string(idx.at(1)), idx_ok);
    rep.detail["legendre"] = {{"rows", tr.legendre_rows},
                              {"index_prev", L.closest.index_prev},
                              {"index_last", L.closest.index_last},
                              {"gap_lo", format_sci(L.closest.gap.lo(), 8, Rounding::Down)},
                              {"n1_bound", L.n1_bound}};
  }
  return rep;
}

inline std::string checks_text(const std::vector<Check>& checks) {
  std::ostringstream os;
  size_t w = 0;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  for (const auto& c : checks) {
    os << (c.match ? "match    " : "MISMATCH ") << c.name << std::string(w - c.name.size() + 2, ' ')
       << c.computed << "  vs  " << c.printed << "\n";
  }
  return os.str();
}

inline std::string checks_csv(const std::vector<Check>& checks) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  };
  std::ostringstream os;
  os << "scope,name,computed,reference,match\n";
  for (const auto& c : checks) {
    os << c.scope << "," << quote(c.name) << "," << quote(c.computed) << "," << quote(c.printed) << ","
       << (c.match ? "true" : "false") << "\n";
  }
  return os.str();
}

inline ordered_json checks_json(const std::vector<Check>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"scope", c.scope}, {"name", c.name}, {"computed", c.computed},
                   {"printed", c.printed}, {"match", c.match}});
  }
  return arr;
}

}  // namespace pillai
