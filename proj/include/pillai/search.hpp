#pragma once

// Integers c with two representations c = q_a[N] - q_b[M] whose index pairs
// differ in both coordinates, over a finite window of N and M.

#include <gmpxx.h>

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pillai/cfrac.hpp"
#include "pillai/convergents.hpp"
#include "pillai/error.hpp"

namespace pillai {

struct Representation {
  long N = 0, M = 0;
  mpz_class qa, qb;

  friend bool operator==(const Representation& x, const Representation& y) {
    return x.N == y.N && x.M == y.M && x.qa == y.qa && x.qb == y.qb;
  }
};

struct MultiRepRecord {
  mpz_class c;
  std::vector<Representation> reps;  // every representation in the window, by (N, M)

  friend bool operator==(const MultiRepRecord& x, const MultiRepRecord& y) {
    return x.c == y.c && x.reps == y.reps;
  }
};

inline bool distinct(const Representation& x, const Representation& y) {
  return x.N != y.N && x.M != y.M;
}

inline bool has_two_distinct(const std::vector<Representation>& reps) {
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t k = i + 1; k < reps.size(); ++k) {
      if (distinct(reps[i], reps[k])) return true;
    }
  }
  return false;
}

inline std::vector<MultiRepRecord> multi_rep_search(const ContinuedFraction& cf_a,
                                                    const ContinuedFraction& cf_b, long n_max,
                                                    long m_max, unsigned threads = 0) {
  if (n_max < 1 || m_max < 1) throw DomainError("search window needs n_max, m_max >= 1");
  DenominatorTable qa = q_sequence(cf_a, n_max);
  DenominatorTable qb = q_sequence(cf_b, m_max);
  using Groups = std::map<mpz_class, std::vector<Representation>>;

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_max + 1));
  auto work = [&](long first, long last) {
    Groups g;
    for (long N = first; N < last; ++N) {
      for (long M = 0; M <= m_max; ++M) {
        const mpz_class& a = qa[static_cast<size_t>(N)];
        const mpz_class& b = qb[static_cast<size_t>(M)];
        g[a - b].push_back({N, M, a, b});
      }
    }
    return g;
  };
  std::vector<std::future<Groups>> parts;
  long chunk = (n_max + 1 + threads - 1) / threads;
  for (long first = 0; first <= n_max; first += chunk) {
    parts.push_back(std::async(std::launch::async, work, first, std::min(first + chunk, n_max + 1)));
  }
  Groups all;
  for (auto& p : parts) {
    for (auto& [c, reps] : p.get()) {
      auto& dst = all[c];
      dst.insert(dst.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
    }
  }
  std::vector<MultiRepRecord> out;
  for (auto& [c, reps] : all) {
    if (reps.size() < 2) continue;
    std::sort(reps.begin(), reps.end(), [](const Representation& x, const Representation& y) {
      return x.N != y.N ? x.N < y.N : x.M < y.M;
    });
    if (has_two_distinct(reps)) out.push_back({c, std::move(reps)});
  }
  return out;
}

inline bool verify_representation(const ContinuedFraction& cf_a, const ContinuedFraction& cf_b,
                                  const mpz_class& c, long N, long M) {
  if (N < 0 || M < 0) throw DomainError("representation indices must be >= 0");
  return q_sequence(cf_a, N)[static_cast<size_t>(N)] - q_sequence(cf_b, M)[static_cast<size_t>(M)] ==
         c;
}

inline std::vector<mpz_class> record_values(const std::vector<MultiRepRecord>& records) {
  std::vector<mpz_class> out;
  for (const auto& r : records) out.push_back(r.c);
  return out;
}

enum class ReportFormat { Json, Text, Csv };

inline ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  if (name == "csv") return ReportFormat::Csv;
  throw DomainError("unknown format '" + name + "' (json, text, csv)");
}

// Big integers are written as bare JSON number literals, digit for digit.
inline std::string search_report(const std::vector<MultiRepRecord>& records, ReportFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case ReportFormat::Json: {
      if (records.empty()) return "[]";
      os << "[\n";
      for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << "  {\"c\": " << r.c.get_str() << ", \"reps\": [\n";
        for (size_t k = 0; k < r.reps.size(); ++k) {
          const auto& p = r.reps[k];
          os << "    {\"N\": " << p.N << ", \"M\": " << p.M << ", \"qa\": " << p.qa.get_str()
             << ", \"qb\": " << p.qb.get_str() << "}" << (k + 1 < r.reps.size() ? "," : "") << "\n";
        }
        os << "  ]}" << (i + 1 < records.size() ? "," : "") << "\n";
      }
      os << "]";
      break;
    }
    case ReportFormat::Text: {
      for (const auto& r : records) {
        os << "c = " << r.c.get_str() << "\n";
        for (const auto& p : r.reps) {
          os << "  q_{α," << p.N << "} − q_{β," << p.M << "} = " << p.qa.get_str()
             << " − " << p.qb.get_str() << " = " << r.c.get_str() << "\n";
        }
      }
      break;
    }
    case ReportFormat::Csv: {
      os << "c,N,M,qa,qb\n";
      for (const auto& r : records) {
        for (const auto& p : r.reps) {
          os << r.c.get_str() << "," << p.N << "," << p.M << "," << p.qa.get_str() << ","
             << p.qb.get_str() << "\n";
        }
      }
      break;
    }
  }
  return os.str();
}

}  // namespace pillai
