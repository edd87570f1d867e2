#pragma once

// Reduction tables: each row fixes the Binet coefficients on both sides and a
// sign of the log-linear form, builds the kappa value (or a family over the
// shifts t = n1 - n2, s = m1 - m2) and runs the reduction.

#include <gmpxx.h>

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/bounds.hpp"
#include "pillai/error.hpp"
#include "pillai/highprec.hpp"
#include "pillai/qfield.hpp"
#include "pillai/reduction.hpp"

namespace pillai {

enum class Side { Alpha, Beta };

inline Side other(Side s) { return s == Side::Alpha ? Side::Beta : Side::Alpha; }
inline const char* side_name(Side s) { return s == Side::Alpha ? "alpha" : "beta"; }

// Where a family range comes from: the largest bound in slot `slot` over all
// rows of table `table`.
struct RangeSource {
  std::string table;
  size_t slot = 0;
};

struct TableSpec {
  std::string id;
  size_t alpha_terms = 1;             // 2: c1 - c2 theta_a^-t over t = 1..t_max
  size_t beta_terms = 1;              // 2: c1 - c2 theta_b^-s over s = 1..s_max
  Side plus_divisor = Side::Beta;     // log theta normalising the positive branch
  std::string a1_numerator;           // decimal constant
  bool a1_times_theta_a = false;
  std::optional<Side> a1_log;         // fixed A1 divisor; the branch divisor when empty
  std::vector<Side> a2;               // one exponent bound per entry
  std::string epsilon_slack = "1e-5";
  std::optional<RangeSource> t_from, s_from;
  long printed_t_max = 0, printed_s_max = 0;
};

struct RowSpec {
  std::string table;
  int row = 0;
  char sign = '+';
  std::vector<size_t> c_alpha, c_beta;  // residue classes j of the c1 coefficients
  std::optional<size_t> start_index;
  std::optional<size_t> printed_q_index;
  std::string printed_epsilon;
  std::vector<long> printed_bounds;
};

struct FamilyRange {
  long t_max = 0, s_max = 0;
};

struct Cell {
  long t = 0, s = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct RowResult {
  RowSpec spec;
  std::vector<std::string> c_values;
  FamilyRange range;
  size_t members = 0;
  ReductionOutcome outcome;
  std::vector<ExponentBound> bounds;
  Cell argmin_cell;
  std::vector<Cell> excluded;  // cells whose kappa vanishes identically
  bool epsilon_match = false, bounds_match = false, index_match = false;
  bool match() const { return epsilon_match && bounds_match; }
};

namespace detail {

// One side of the log ratio: c1 or c1 - c2 theta^-shift for each shift.
struct SideFamily {
  std::vector<long> shifts;         // {0} for a single coefficient
  std::vector<QFieldElement> exact;
  QFieldElement c1, c2, theta;
  bool two_term = false;

  CertifiedReal log_value(size_t i, long bits) const {
    long w = bits + 16;
    CertifiedReal v = c1.eval(w);
    if (two_term) {
      CertifiedReal inv = CertifiedReal(1, w) / theta.eval(w);
      v = v - c2.eval(w) * pow(inv, shifts[i]);
    }
    return cr_ln(v, bits);
  }
};

inline SideFamily side_family(const BinetData& bd, const std::vector<size_t>& cls, long range,
                              const char* label) {
  if (cls.empty() || cls.size() > 2) throw DomainError("row needs one or two coefficients per side");
  for (size_t j : cls) {
    if (j >= bd.s) throw DomainError("coefficient class out of range");
  }
  SideFamily f;
  f.c1 = bd.c1[cls[0]];
  f.theta = bd.theta1;
  f.two_term = cls.size() == 2;
  if (!f.two_term) {
    f.shifts = {0};
    f.exact = {f.c1};
  } else {
    if (range < 1) throw DomainError(std::string("empty shift range on the ") + label + " side");
    f.c2 = bd.c1[cls[1]];
    QFieldElement inv = QFieldElement(1) / bd.theta1, pw(1);
    for (long t = 1; t <= range; ++t) {
      pw = pw * inv;
      f.shifts.push_back(t);
      f.exact.push_back(f.c1 - f.c2 * pw);
    }
  }
  for (size_t i = 0; i < f.exact.size(); ++i) {
    if (f.exact[i].sign() <= 0) {
      throw DomainError(std::string("nonpositive coefficient on the ") + label + " side at shift " +
                        std::to_string(f.shifts[i]));
    }
  }
  return f;
}

}  // namespace detail

inline RowResult run_table_row(const PairConfig& cfg, const TableSpec& table, const RowSpec& row,
                               const FamilyRange& range, const mpz_class& M,
                               const ReductionOptions& base = {}) {
  if (row.sign != '+' && row.sign != '-') throw DomainError("row sign must be '+' or '-'");
  if (row.c_alpha.size() != table.alpha_terms || row.c_beta.size() != table.beta_terms) {
    throw DomainError("row " + table.id + "/" + std::to_string(row.row) +
                      " has the wrong number of coefficients");
  }
  RowResult res;
  res.spec = row;
  res.range = range;
  for (size_t j : row.c_alpha) res.c_values.push_back(cfg.alpha.c1.at(j).to_string());
  for (size_t j : row.c_beta) res.c_values.push_back(cfg.beta.c1.at(j).to_string());

  detail::SideFamily fa = detail::side_family(cfg.alpha, row.c_alpha, range.t_max, "alpha");
  detail::SideFamily fb = detail::side_family(cfg.beta, row.c_beta, range.s_max, "beta");

  std::vector<std::pair<size_t, size_t>> cells;
  for (size_t i = 0; i < fa.exact.size(); ++i) {
    for (size_t k = 0; k < fb.exact.size(); ++k) {
      Cell c{fa.shifts[i], fb.shifts[k]};
      if (fa.exact[i] == fb.exact[k]) {
        res.excluded.push_back(c);  // log ratio is exactly zero
      } else {
        cells.emplace_back(i, k);
      }
    }
  }
  if (cells.empty()) throw DomainError("every cell of the family is degenerate");
  res.members = cells.size();

  Side div = row.sign == '+' ? table.plus_divisor : other(table.plus_divisor);
  Side a1_div = table.a1_log.value_or(div);
  auto log_theta = [&cfg](Side s, long bits) {
    return s == Side::Alpha ? cfg.log_theta_a(bits) : cfg.log_theta_b(bits);
  };

  RealFn gamma = [&](long bits) { return log_theta(other(div), bits) / log_theta(div, bits); };
  FamilyFn kappas = [&](long bits) {
    std::vector<CertifiedReal> la, lb;
    for (size_t i = 0; i < fa.exact.size(); ++i) la.push_back(fa.log_value(i, bits));
    for (size_t k = 0; k < fb.exact.size(); ++k) lb.push_back(fb.log_value(k, bits));
    CertifiedReal d = log_theta(div, bits);
    std::vector<CertifiedReal> out;
    out.reserve(cells.size());
    for (auto [i, k] : cells) {
      CertifiedReal ratio = la[i] - lb[k];
      out.push_back(div == Side::Beta ? ratio / d : -ratio / d);
    }
    return out;
  };
  RealFn A1 = [&](long bits) {
    CertifiedReal v = decimal(table.a1_numerator, bits);
    if (table.a1_times_theta_a) v = v * cfg.alpha.theta1.eval(bits);
    return v / log_theta(a1_div, bits);
  };
  if (table.a2.empty()) throw DomainError("table " + table.id + " lists no exponent bound");
  auto theta = [&cfg](Side s, long bits) {
    return s == Side::Alpha ? cfg.alpha.theta1.eval(bits) : cfg.beta.theta1.eval(bits);
  };
  RealFn A2 = [&](long bits) { return theta(table.a2[0], bits); };

  ReductionOptions opt = base;
  if (row.start_index) opt.start_index = row.start_index;
  res.outcome = dp_reduce_family(gamma, kappas, A1, A2, M, opt);
  auto [ci, ck] = cells[res.outcome.argmin];
  res.argmin_cell = Cell{fa.shifts[ci], fb.shifts[ck]};

  long bits = res.outcome.bits;
  CertifiedReal a1 = A1(bits);
  for (Side s : table.a2) {
    res.bounds.push_back(exponent_bound(a1, res.outcome.q, res.outcome.epsilon, theta(s, bits), bits));
  }

  if (!row.printed_epsilon.empty()) {
    mpq_class printed = parse_decimal(row.printed_epsilon);
    mpq_class slack = parse_decimal(table.epsilon_slack);
    res.epsilon_match = res.outcome.epsilon.lo().to_mpq() >= printed &&
                        res.outcome.epsilon.hi().to_mpq() <= printed + slack;
  }
  res.bounds_match = row.printed_bounds.size() == res.bounds.size();
  for (size_t i = 0; res.bounds_match && i < res.bounds.size(); ++i) {
    res.bounds_match = res.bounds[i].bound == row.printed_bounds[i];
  }
  res.index_match = row.printed_q_index && *row.printed_q_index == res.outcome.q_index;
  return res;
}

struct TablesReport {
  std::vector<RowResult> rows;
  std::map<std::string, FamilyRange> ranges;
  std::optional<LegendreOutcome> legendre;
  std::vector<std::string> legendre_rows;  // rows that routed a cell to the fallback
};

inline long max_bound(const std::vector<RowResult>& rows, const RangeSource& src) {
  long best = 0;
  bool seen = false;
  for (const auto& r : rows) {
    if (r.spec.table != src.table) continue;
    if (src.slot >= r.bounds.size()) throw DomainError("range source slot out of range");
    best = seen ? std::max(best, r.bounds[src.slot].bound) : r.bounds[src.slot].bound;
    seen = true;
  }
  if (!seen) throw DomainError("range source table " + src.table + " has not been run");
  return best;
}

// Runs the tables in order; each table's shift ranges come from the bounds of
// the tables before it. Rows of one table run concurrently.
inline TablesReport run_tables(const PairConfig& cfg, const std::vector<TableSpec>& tables,
                               const std::vector<RowSpec>& rows, const mpz_class& M,
                               const ReductionOptions& opt = {}) {
  TablesReport rep;
  for (const auto& table : tables) {
    FamilyRange range;
    if (table.t_from) range.t_max = max_bound(rep.rows, *table.t_from);
    if (table.s_from) range.s_max = max_bound(rep.rows, *table.s_from);
    rep.ranges[table.id] = range;
    std::vector<std::future<RowResult>> jobs;
    for (const auto& row : rows) {
      if (row.table != table.id) continue;
      jobs.push_back(std::async(std::launch::async, [&cfg, &table, row, range, &M, &opt] {
        return run_table_row(cfg, table, row, range, M, opt);
      }));
    }
    for (auto& j : jobs) {
      RowResult r = j.get();
      if (!r.excluded.empty()) {
        rep.legendre_rows.push_back(r.spec.table + "/" + std::to_string(r.spec.row) + r.spec.sign);
      }
      rep.rows.push_back(std::move(r));
    }
  }
  if (!rep.legendre_rows.empty()) rep.legendre = legendre_fallback(cfg, M, opt.policy);
  return rep;
}

}  // namespace pillai
