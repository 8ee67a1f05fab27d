#include "galmod/expr_parser.hpp"

#include <cctype>
#include <optional>

namespace galmod {

namespace {

class Parser {
 public:
  Parser(const FieldTower* t, int p, std::string_view s) : t_(t), p_(p), s_(s) {}

  AlgebraElem parse_all() {
    AlgebraElem f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return f;
  }

  Series parse_series_all() {
    Series c = poly();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  /// Unsigned decimal integer; value returned exactly (checked for overflow).
  long long integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000'000LL) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  long long signed_integer() {
    bool neg = false;
    if (eat('-')) {
      neg = true;
    } else {
      eat('+');
    }
    const long long v = integer();
    return neg ? -v : v;
  }

  /// t ('^' int)?
  int t_power() {
    expect('t');
    if (!eat('^')) return 1;
    return static_cast<int>(signed_integer());
  }

  /// int ('*' t-power)? | t-power
  Series monomial() {
    if (peek() == 't') return Series::monomial(p_, 1, t_power());
    const long long c = integer();
    const std::size_t save = pos_;
    if (eat('*')) {
      if (peek() == 't') return Series::monomial(p_, c, t_power());
      pos_ = save;
    }
    return Series::constant(p_, c);
  }

  /// Signed sum of monomials.
  Series poly() {
    Series out = Series::zero(p_);
    bool neg = eat('-');
    if (!neg) eat('+');
    for (;;) {
      const Series m = monomial();
      out += neg ? -m : m;
      if (eat('+')) {
        neg = false;
      } else if (eat('-')) {
        neg = true;
      } else {
        return out;
      }
    }
  }

  /// True when the parenthesised group at pos_ only contains coefficient
  /// characters.
  bool paren_is_coef() {
    std::size_t k = pos_ + 1;
    int depth = 1;
    for (; k < s_.size() && depth > 0; ++k) {
      const char c = s_[k];
      if (c == '(') return false;
      if (c == ')') {
        --depth;
        continue;
      }
      if (!(std::isdigit(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)) || c == 't' ||
            c == '^' || c == '+' || c == '-' || c == '*')) {
        return false;
      }
    }
    return depth == 0;
  }

  std::optional<Series> coef() {
    const char c = peek();
    if (c == 't' || std::isdigit(static_cast<unsigned char>(c))) return monomial();
    if (c == '(' && paren_is_coef()) {
      ++pos_;
      Series s = poly();
      expect(')');
      return s;
    }
    return std::nullopt;
  }

  AlgebraElem factor() {
    AlgebraElem f = primary();
    while (eat('^')) f = f.pow(static_cast<int>(integer()));
    return f;
  }

  AlgebraElem primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      AlgebraElem f = expr();
      expect(')');
      return f;
    }
    if (c == 'e') {
      ++pos_;
      return AlgebraElem::identity(*t_);
    }
    if (c == 's') {
      const std::size_t at = pos_;
      ++pos_;
      if (eat('1')) return AlgebraElem::group(*t_, t_->group_index({1, 0}));
      if (peek() == '2') {
        if (t_->levels() < 2) {
          pos_ = at;
          fail("s2 is not defined for a single step");
        }
        ++pos_;
        return AlgebraElem::group(*t_, t_->group_index({0, 1}));
      }
      fail("expected s1 or s2");
    }
    fail("expected factor");
  }

  bool at_term_end() {
    const char c = peek();
    return c == '\0' || c == '+' || c == '-' || c == ')';
  }

  AlgebraElem term() {
    if (auto c = coef()) {
      // Coefficients may be chained: 2*t^3*s1.
      Series k = *c;
      while (true) {
        if (at_term_end()) return AlgebraElem::identity(*t_).scaled(k);
        expect('*');
        if (auto more = coef()) {
          k = k * *more;
          continue;
        }
        break;
      }
      AlgebraElem f = factor();
      while (eat('*')) f = f * factor();
      return f.scaled(k);
    }
    AlgebraElem f = factor();
    while (eat('*')) f = f * factor();
    return f;
  }

  AlgebraElem expr() {
    AlgebraElem f(*t_);
    if (eat('-')) {
      f -= term();
    } else {
      f += term();
    }
    for (;;) {
      if (eat('+')) {
        f += term();
      } else if (eat('-')) {
        f -= term();
      } else {
        return f;
      }
    }
  }

  const FieldTower* t_;
  int p_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElem parse_elem(const FieldTower& t, std::string_view text) { return Parser(&t, t.p(), text).parse_all(); }

Series parse_series(int p, std::string_view text) { return Parser(nullptr, p, text).parse_series_all(); }

}  // namespace galmod
