#include <cctype>
#include <limits>
#include <string>

#include "milnorflow/errors.hpp"
#include "milnorflow/polynomial.hpp"

namespace milnorflow {
namespace {

constexpr Exponent kMaxExponent = 1u << 20;
constexpr std::size_t kMaxVariables = 64;

struct RawTerm {
  Rational coeff{1};
  std::vector<std::pair<std::size_t, Exponent>> factors;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_ws();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    terms.push_back(term(negative));
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else throw SyntaxError(pos_, "'+', '-' or end of input");
      terms.push_back(term(negative));
    }
    return terms;
  }

  std::size_t max_index() const { return max_index_; }

 private:
  RawTerm term(bool negative) {
    RawTerm t;
    skip_ws();
    bool have_any = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coeff = coefficient();
      have_any = true;
    }
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        if (!have_any) throw SyntaxError(pos_, "coefficient or variable");
        ++pos_;
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(peek())))
          throw SyntaxError(pos_, "variable");
        t.factors.push_back(factor());
        have_any = true;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(peek()))) {
        t.factors.push_back(factor());
        have_any = true;
        continue;
      }
      break;
    }
    if (!have_any) throw SyntaxError(pos_, "term");
    if (negative) t.coeff = -t.coeff;
    return t;
  }

  Rational coefficient() {
    std::string num = digits("integer");
    skip_ws();
    if (accept('/')) {
      skip_ws();
      const std::size_t at = pos_;
      std::string den = digits("unsigned integer");
      Integer d(den);
      if (d == 0) throw SyntaxError(at, "nonzero denominator");
      return make_rational(Integer(num), d);
    }
    return Rational(Integer(num));
  }

  std::pair<std::size_t, Exponent> factor() {
    const std::size_t start = pos_;
    if (peek() != 'z') {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      throw UnknownVariable("unknown variable '" + std::string(text_.substr(start, end - start)) +
                            "' at offset " + std::to_string(start));
    }
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError(pos_, "variable index after 'z'");
    const std::size_t index = small_uint(kMaxVariables - 1, "variable index");
    max_index_ = std::max(max_index_, index);
    skip_ws();
    Exponent e = 1;
    if (accept('^')) {
      skip_ws();
      e = static_cast<Exponent>(small_uint(kMaxExponent, "unsigned integer exponent"));
    }
    return {index, e};
  }

  std::size_t small_uint(std::size_t limit, const char* what) {
    const std::size_t at = pos_;
    std::string d = digits(what);
    if (d.size() > 9 || std::stoul(d) > limit) throw SyntaxError(at, std::string(what) + " <= " + std::to_string(limit));
    return std::stoul(d);
  }

  std::string digits(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw SyntaxError(pos_, what);
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool accept(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  Parser parser(text);
  std::vector<RawTerm> raw = parser.parse();
  if (nvars == 0) {
    nvars = std::max<std::size_t>(2, parser.max_index() + 1);
  } else if (parser.max_index() >= nvars) {
    throw UnknownVariable("variable z" + std::to_string(parser.max_index()) + " outside z0..z" +
                          std::to_string(nvars - 1));
  }
  Polynomial p(nvars);
  for (const RawTerm& t : raw) {
    Monomial m(nvars);
    for (auto [var, e] : t.factors) m[var] += e;
    p.add_term(m, t.coeff);
  }
  return p;
}

}  // namespace milnorflow
