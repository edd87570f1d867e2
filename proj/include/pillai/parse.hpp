#pragma once

// Text syntax: surd expressions such as "sqrt(27)", "(-1+sqrt(3))/1",
// "(5+sqrt(21))/2", and bracket expansions "[0;(1,2)]", "[5; 5, (10, 4)]".

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "pillai/cfrac.hpp"
#include "pillai/error.hpp"
#include "pillai/qfield.hpp"

namespace pillai {

namespace detail {

class SurdParser {
 public:
  explicit SurdParser(const std::string& text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  QFieldElement parse() {
    QFieldElement v = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("cannot parse surd \"" + s_ + "\": " + why);
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  // accepts ASCII '-' and the Unicode minus sign
  bool eat_minus() {
    if (eat('-')) return true;
    if (s_.compare(pos_, 3, "\xE2\x88\x92") == 0) {
      pos_ += 3;
      return true;
    }
    return false;
  }

  QFieldElement expr() {
    QFieldElement v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat_minus()) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  QFieldElement term() {
    QFieldElement v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = v / unary();
      } else if (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == 's')) {
        v = v * unary();  // implicit product: 2sqrt(3), 3(1+sqrt(2))
      } else {
        return v;
      }
    }
  }

  QFieldElement unary() {
    if (eat('+')) return unary();
    if (eat_minus()) return -unary();
    return atom();
  }

  QFieldElement atom() {
    if (eat('(')) {
      QFieldElement v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 5, "sqrt(") == 0) {
      pos_ += 5;
      mpz_class n = integer();
      if (!eat(')')) fail("missing ')' after sqrt argument");
      if (n < 0) fail("negative radicand");
      return QFieldElement(0, 1, n);
    }
    return QFieldElement(mpq_class(integer()));
  }

  mpz_class integer() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer at position " + std::to_string(start));
    return mpz_class(s_.substr(start, pos_ - start), 10);
  }

  std::string s_;
  size_t pos_ = 0;
};

inline std::vector<mpz_class> parse_int_list(const std::string& text, const std::string& whole) {
  std::vector<mpz_class> out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) throw DomainError("cannot parse expansion \"" + whole + "\": empty entry");
    try {
      out.emplace_back(item, 10);
    } catch (const std::exception&) {
      throw DomainError("cannot parse expansion \"" + whole + "\": bad entry '" + item + "'");
    }
    item.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) flush();
  return out;
}

}  // namespace detail

inline QFieldElement parse_field_element(const std::string& text) {
  return detail::SurdParser(text).parse();
}

inline QuadraticSurd parse_surd(const std::string& text) {
  return surd_from_field(parse_field_element(text));
}

inline ContinuedFraction parse_cf(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.size() < 4 || s.front() != '[' || s.back() != ']') {
    throw DomainError("cannot parse expansion \"" + text + "\": expected [a0; ..., (b0, ...)]");
  }
  s = s.substr(1, s.size() - 2);
  size_t open = s.find('(');
  size_t close = s.rfind(')');
  if (open == std::string::npos || close != s.size() - 1) {
    throw DomainError("cannot parse expansion \"" + text + "\": missing parenthesised period");
  }
  std::string head = s.substr(0, open);
  std::string period = s.substr(open + 1, close - open - 1);
  ContinuedFraction cf;
  if (!head.empty()) {
    size_t semi = head.find(';');
    if (semi == std::string::npos) {
      throw DomainError("cannot parse expansion \"" + text + "\": missing ';'");
    }
    cf.preperiod.emplace_back(head.substr(0, semi), 10);
    std::string rest = head.substr(semi + 1);
    if (!rest.empty()) {
      if (rest.back() != ',') {
        throw DomainError("cannot parse expansion \"" + text + "\": expected ',' before period");
      }
      rest.pop_back();
      for (auto& v : detail::parse_int_list(rest, text)) cf.preperiod.push_back(v);
    }
  }
  cf.period = detail::parse_int_list(period, text);
  cf.validate();
  return cf;
}

// Either syntax; a bracket expansion is taken literally.
inline ContinuedFraction parse_expansion(const std::string& text) {
  for (char c : text) {
    if (c == '[') return parse_cf(text);
    if (!std::isspace(static_cast<unsigned char>(c))) break;
  }
  return cf_expand_surd(parse_surd(text));
}

}  // namespace pillai
