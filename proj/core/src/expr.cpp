#include "biex/expr.hpp"

#include <cctype>

namespace biex {

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& str) : s(str) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(i) + ": " +
                                msg + " in \"" + s + "\"");
  }

  RatFn2 parse() {
    RatFn2 e = expr();
    skip();
    if (i != s.size()) fail("trailing input");
    return e;
  }

  RatFn2 expr() {
    RatFn2 acc = peek('-') ? (accept('-'), RatFn2() - term()) : term();
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RatFn2 term() {
    RatFn2 acc = factor();
    while (true) {
      if (accept('*'))
        acc = acc * factor();
      else if (accept('/'))
        acc = acc / factor();
      else
        return acc;
    }
  }

  RatFn2 factor() {
    RatFn2 b = base();
    if (accept('^')) {
      bool neg = accept('-');
      long e = integer();
      return b.pow(neg ? -e : e);
    }
    return b;
  }

  long integer() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected integer");
    return std::stol(s.substr(start, i - start));
  }

  RatFn2 base() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    char c = s[i];
    if (c == '(') {
      ++i;
      RatFn2 e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (c == 'x') {
      ++i;
      return RatFn2(Poly2Q::x(), Poly2Q::constant(BigRational(1)));
    }
    if (c == 'y') {
      ++i;
      return RatFn2(Poly2Q::y(), Poly2Q::constant(BigRational(1)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      BigInt n(s.substr(start, i - start));
      return RatFn2(Poly2Q::constant(BigRational(n)), Poly2Q::constant(BigRational(1)));
    }
    if (c == '-') {
      ++i;
      return RatFn2() - factor();
    }
    fail("unexpected character");
  }
};

}  // namespace

RatFn2 parse_ratfn(const std::string& s) { return Parser(s).parse(); }

PolyQ parse_poly_x(const std::string& s) {
  RatFn2 f = parse_ratfn(s);
  if (f.num.deg_y() > 0 || f.den.deg_y() > 0)
    throw std::invalid_argument("expected a polynomial in x only: \"" + s + "\"");
  if (f.den.deg_x() > 0)
    throw std::invalid_argument("expected a polynomial (denominator must be constant): \"" + s +
                                "\"");
  BigRational d = f.den.eval(BigRational(0), BigRational(0));
  std::vector<BigRational> coeffs;
  for (long k = 0; k <= f.num.deg_x(); ++k) {
    const auto& grid = f.num.grid();
    BigRational c = (size_t(k) < grid.size() && !grid[k].empty()) ? grid[k][0] : BigRational(0);
    coeffs.push_back(c / d);
  }
  return PolyQ(std::move(coeffs));
}

}  // namespace biex
