#include "serival/ratfunc.h"

#include <stdexcept>

#include "serival/error.h"

namespace serival {

RatFunc::RatFunc(Field field, int nvars)
    : num_(field, nvars), den_(Poly::constant(field, nvars, field.one())) {}

RatFunc RatFunc::normalize(Poly num, Poly den) {
  if (num.nvars() != den.nvars() || num.field() != den.field()) {
    throw std::invalid_argument("rational function ring mismatch");
  }
  if (den.is_zero()) throw DivisionByZero("division by zero in K");
  const Field field = den.field();
  const int nvars = den.nvars();
  if (num.is_zero()) return RatFunc(field, nvars);
  if (nvars <= kMaxGcdVars && !den.is_constant()) {
    const Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
  }
  const Scalar lead = den.leading_term().second;
  if (!lead.is_one()) {
    const Scalar inv = lead.inverse();
    num *= inv;
    den *= inv;
  }
  return RatFunc(std::move(num), std::move(den));
}

RatFunc RatFunc::from_poly(Poly num) {
  Poly one = Poly::constant(num.field(), num.nvars(), num.field().one());
  return RatFunc(std::move(num), std::move(one));
}

RatFunc RatFunc::constant(Field field, int nvars, const Scalar& value) {
  return from_poly(Poly::constant(field, nvars, value));
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero in K");
  return normalize(den_, num_);
}

RatFunc RatFunc::scaled(const Scalar& c) const {
  if (c.is_zero()) return RatFunc(field(), nvars());
  return RatFunc(num_ * c, den_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc::normalize(a.num_ + b.num_, a.den_);
  }
  return RatFunc::normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(a.field(), a.nvars());
  if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ * b.num_, a.den_);
  if (!a.is_reduced()) return RatFunc::normalize(a.num_ * b.num_, a.den_ * b.den_);
  // Cross-cancel first so the products stay small.
  const Poly g1 = gcd(a.num_, b.den_);
  const Poly g2 = gcd(b.num_, a.den_);
  Poly n1 = g1.is_constant() ? a.num_ : *divide_exact(a.num_, g1);
  Poly d2 = g1.is_constant() ? b.den_ : *divide_exact(b.den_, g1);
  Poly n2 = g2.is_constant() ? b.num_ : *divide_exact(b.num_, g2);
  Poly d1 = g2.is_constant() ? a.den_ : *divide_exact(a.den_, g2);
  Poly num = n1 * n2;
  Poly den = d1 * d2;
  const Scalar lead = den.leading_term().second;
  if (!lead.is_one()) {
    const Scalar inv = lead.inverse();
    num *= inv;
    den *= inv;
  }
  return RatFunc(std::move(num), std::move(den));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field()) return false;
  if (a.is_reduced()) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  return RatFunc(num_.pow(static_cast<unsigned>(exponent)), den_.pow(static_cast<unsigned>(exponent)));
}

std::string RatFunc::to_string(std::span<const std::string> names) const {
  if (den_.is_constant()) return num_.to_string(names);
  const bool simple_num = num_.size() == 1;
  const bool simple_den = den_.size() == 1;
  std::string n = num_.to_string(names);
  std::string d = den_.to_string(names);
  if (!simple_num) n = "(" + n + ")";
  if (!simple_den) {
    d = "(" + d + ")";
  } else if (d.find('*') != std::string::npos) {
    d = "(" + d + ")";
  }
  return n + "/" + d;
}

std::string RatFunc::to_string() const {
  const auto names = indexed_names("t", nvars());
  return to_string(names);
}

}  // namespace serival
