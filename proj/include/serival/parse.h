#ifndef SERIVAL_PARSE_H
#define SERIVAL_PARSE_H

// Recursive-descent reader for the textual syntax shared by every literal
// type (field elements, series, polynomials in Z or X/Y, completed
// elements). The grammar is
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := primary ['^' exponent]
//   primary  := integer | identifier | '(' expr ')'
//   exponent := ['-'] integer | '(' integer arithmetic ')'
//
// The meaning of identifiers, and which divisions are legal, is decided by
// an Algebra policy supplying number/variable/add/sub/mul/div/neg/pow.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "serival/error.h"
#include "serival/poly.h"
#include "serival/ratfunc.h"

namespace serival {

template <class Algebra>
class ExpressionParser {
 public:
  using Value = typename Algebra::Value;

  ExpressionParser(const Algebra& algebra, std::string_view text) : algebra_(algebra), text_(text) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Value expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Value v = term();
    if (negate) v = algebra_.neg(v);
    for (;;) {
      if (accept('+')) {
        v = algebra_.add(v, term());
      } else if (accept('-')) {
        v = algebra_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (accept('*')) {
        v = algebra_.mul(v, factor());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Value d = factor();
        try {
          v = algebra_.div(v, d);
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception& e) {
          throw ParseError(e.what(), at);
        }
      } else {
        return v;
      }
    }
  }

  Value factor() {
    Value v = primary();
    if (accept('^')) v = algebra_.pow(v, exponent());
    return v;
  }

  Value primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return algebra_.number(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      try {
        return algebra_.variable(name);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(e.what(), start);
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  mpz_class integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  long small_integer() {
    const mpz_class z = integer();
    if (!z.fits_slong_p() || z > 1000000) fail("exponent too large");
    return z.get_si();
  }

  long exponent() {
    if (accept('-')) return -exponent_atom();
    return exponent_atom();
  }

  long exponent_atom() {
    if (accept('(')) {
      const long v = exponent_sum();
      expect(')');
      return v;
    }
    return small_integer();
  }

  long exponent_sum() {
    long v = exponent_product();
    for (;;) {
      if (accept('+')) {
        v += exponent_product();
      } else if (accept('-')) {
        v -= exponent_product();
      } else {
        return v;
      }
    }
  }

  long exponent_product() {
    long v = accept('-') ? -exponent_atom() : exponent_atom();
    while (accept('*')) v *= exponent_atom();
    return v;
  }

  const Algebra& algebra_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class Algebra>
typename Algebra::Value parse_expression(const Algebra& algebra, std::string_view text) {
  return ExpressionParser<Algebra>(algebra, text).parse();
}

/// Polynomials over `field` in the named variables; division only when exact.
struct PolyAlgebra {
  using Value = Poly;
  Field field;
  std::vector<std::string> names;

  Poly number(const mpz_class& z) const {
    return Poly::constant(field, nvars(), field.from_rational(mpq_class(z)));
  }
  Poly variable(const std::string& name) const;
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly sub(const Poly& a, const Poly& b) const { return a - b; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
  Poly neg(const Poly& a) const { return -a; }
  Poly div(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, long e) const;
  int nvars() const { return static_cast<int>(names.size()); }
};

/// Rational functions over `field` in the named variables.
struct RatFuncAlgebra {
  using Value = RatFunc;
  Field field;
  std::vector<std::string> names;

  RatFunc number(const mpz_class& z) const {
    return RatFunc::constant(field, nvars(), field.from_rational(mpq_class(z)));
  }
  RatFunc variable(const std::string& name) const;
  RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
  RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
  RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
  RatFunc neg(const RatFunc& a) const { return -a; }
  RatFunc div(const RatFunc& a, const RatFunc& b) const { return a / b; }
  RatFunc pow(const RatFunc& a, long e) const { return a.pow(e); }
  int nvars() const { return static_cast<int>(names.size()); }
};

Poly parse_poly(std::string_view text, const Field& field, const std::vector<std::string>& names);

/// Field elements of K = k(t1..tn), e.g. "(t1^2+1)/(t1-1)".
RatFunc parse_ratfunc(std::string_view text, const Field& field, int nvars);

}  // namespace serival

#endif  // SERIVAL_PARSE_H
