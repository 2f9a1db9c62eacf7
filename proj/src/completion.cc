#include "serival/completion.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <vector>

#include "serival/error.h"
#include "serival/parse.h"

namespace serival {
namespace {

std::atomic<int> g_degree_budget{200};

// Precision bound contributed by one factor of a product: its own precision
// shifted by the other factor's order. Exact stays exact even when the
// shift is negative.
int shifted_prec(int prec, int other_order) {
  if (prec >= kExactPrec) return kExactPrec;
  return sat_add(prec, other_order);
}

void check_budget(const RatFunc& c) {
  const int budget = g_degree_budget.load(std::memory_order_relaxed);
  if (c.degree() > budget) {
    throw DegreeBudgetExceeded("rational-function coefficient of degree " + std::to_string(c.degree()) +
                               " exceeds the degree budget " + std::to_string(budget));
  }
}

RatFunc zero_coefficient(const Field& field, int nvars) { return RatFunc(field, nvars - 1); }

}  // namespace

int degree_budget() { return g_degree_budget.load(); }

void set_degree_budget(int budget) {
  if (budget < 1) throw std::invalid_argument("degree budget must be positive");
  g_degree_budget.store(budget);
}

CompletedElement::CompletedElement(Field field, int nvars, int tprec)
    : field_(std::move(field)), nvars_(nvars), tprec_(std::min(tprec, kExactPrec)) {
  if (nvars < 1) throw std::invalid_argument("completed elements need N >= 1");
}

CompletedElement CompletedElement::from_coefficients(Field field, int nvars,
                                                     std::map<int, RatFunc> coeffs, int tprec) {
  CompletedElement e(std::move(field), nvars, tprec);
  for (auto& [j, c] : coeffs) {
    if (c.nvars() != nvars - 1) throw std::invalid_argument("coefficient has the wrong number of variables");
    if (c.field() != e.field_) throw std::invalid_argument("coefficient over a different field");
    if (j < e.tprec_ && !c.is_zero()) e.coeffs_.emplace(j, std::move(c));
  }
  return e;
}

CompletedElement CompletedElement::term(const RatFunc& c, int nvars, int j, int tprec) {
  return from_coefficients(c.field(), nvars, {{j, c}}, tprec);
}

RatFunc CompletedElement::coefficient(int j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? zero_coefficient(field_, nvars_) : it->second;
}

int CompletedElement::max_coefficient_degree() const {
  int d = 0;
  for (const auto& [j, c] : coeffs_) d = std::max(d, c.degree());
  return d;
}

CompletedElement CompletedElement::truncated(int tprec) const {
  if (tprec >= tprec_) return *this;
  CompletedElement e(field_, nvars_, tprec);
  for (const auto& [j, c] : coeffs_) {
    if (j < tprec) e.coeffs_.emplace(j, c);
  }
  return e;
}

CompletedElement CompletedElement::shifted(int k) const {
  CompletedElement e(field_, nvars_, shifted_prec(tprec_, k));
  for (const auto& [j, c] : coeffs_) e.coeffs_.emplace(j + k, c);
  return e;
}

CompletedElement CompletedElement::scaled(const RatFunc& c) const {
  if (c.is_zero()) return CompletedElement(field_, nvars_, kExactPrec);
  CompletedElement e(field_, nvars_, tprec_);
  for (const auto& [j, a] : coeffs_) {
    RatFunc p = a * c;
    check_budget(p);
    e.coeffs_.emplace(j, std::move(p));
  }
  return e;
}

CompletedElement CompletedElement::operator-() const {
  CompletedElement e = *this;
  for (auto& [j, c] : e.coeffs_) c = -c;
  return e;
}

void CompletedElement::check_compatible(const CompletedElement& other) const {
  if (nvars_ != other.nvars_ || field_ != other.field_) {
    throw std::invalid_argument("completed elements from different rings");
  }
}

CompletedElement operator+(const CompletedElement& a, const CompletedElement& b) {
  a.check_compatible(b);
  CompletedElement e(a.field_, a.nvars_, std::min(a.tprec_, b.tprec_));
  for (const auto& [j, c] : a.coeffs_) {
    if (j < e.tprec_) e.coeffs_.emplace(j, c);
  }
  for (const auto& [j, c] : b.coeffs_) {
    if (j >= e.tprec_) continue;
    auto it = e.coeffs_.find(j);
    if (it == e.coeffs_.end()) {
      e.coeffs_.emplace(j, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) e.coeffs_.erase(it);
    }
  }
  return e;
}

CompletedElement operator*(const CompletedElement& a, const CompletedElement& b) {
  a.check_compatible(b);
  const int prec = std::min(shifted_prec(a.tprec_, ord_hat(b).bound()),
                            shifted_prec(b.tprec_, ord_hat(a).bound()));
  CompletedElement e(a.field_, a.nvars_, prec);
  for (const auto& [i, ca] : a.coeffs_) {
    for (const auto& [j, cb] : b.coeffs_) {
      if (i + j >= prec) break;
      auto it = e.coeffs_.find(i + j);
      if (it == e.coeffs_.end()) {
        e.coeffs_.emplace(i + j, ca * cb);
      } else {
        it->second += ca * cb;
      }
    }
  }
  std::erase_if(e.coeffs_, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& [j, c] : e.coeffs_) check_budget(c);
  return e;
}

CompletedElement CompletedElement::pow(unsigned exponent) const {
  CompletedElement result = term(RatFunc::constant(field_, nvars_ - 1, field_.one()), nvars_, 0);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

bool operator==(const CompletedElement& a, const CompletedElement& b) {
  if (a.nvars_ != b.nvars_ || a.field_ != b.field_ || a.tprec_ != b.tprec_) return false;
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin(); ia != a.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

std::string CompletedElement::to_string() const {
  const std::string t = "T" + std::to_string(nvars_);
  std::string out;
  for (const auto& [j, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    const bool unit = c.is_constant() && c.num().constant_term().is_one();
    std::string power = j == 0 ? "" : (j == 1 ? t : t + "^" + std::to_string(j));
    if (unit) {
      out += power.empty() ? "1" : power;
    } else {
      out += "(" + c.to_string() + ")";
      if (!power.empty()) out += "*" + power;
    }
  }
  if (out.empty()) out = "0";
  if (!is_exact()) out += " @" + std::to_string(tprec_);
  return out;
}

CompletedElement divide(const CompletedElement& a, const CompletedElement& b, int cap) {
  if (b.is_zero()) {
    if (b.is_exact()) throw DivisionByZero("division by zero in the completion");
    throw PrecisionError("divisor indistinguishable from 0 at this precision");
  }
  if (a.nvars() != b.nvars() || a.field() != b.field()) {
    throw std::invalid_argument("completed elements from different rings");
  }
  const int v = b.low_index();
  if (a.is_zero()) return CompletedElement(a.field(), a.nvars(), shifted_prec(a.tprec(), -v));

  const int oa = a.low_index();
  const int ra = a.is_exact() ? kExactPrec : a.tprec() - oa;
  const int rb = b.is_exact() ? kExactPrec : b.tprec() - v;
  int rel = std::min(ra, rb);
  const bool single_term = b.coefficients().size() == 1;
  if (rel >= kExactPrec) {
    if (single_term) {
      const RatFunc inv = b.coefficients().begin()->second.inverse();
      return a.scaled(inv).shifted(-v);
    }
    rel = cap;
  }

  // Inverse of the unit part B = b / T^v to `rel` digits.
  std::vector<RatFunc> bcoef;
  bcoef.reserve(static_cast<std::size_t>(rel));
  for (int k = 0; k < rel; ++k) bcoef.push_back(b.coefficient(v + k));
  const RatFunc b0inv = bcoef[0].inverse();
  std::vector<RatFunc> inv(static_cast<std::size_t>(rel), zero_coefficient(a.field(), a.nvars()));
  inv[0] = b0inv;
  for (int k = 1; k < rel; ++k) {
    RatFunc acc = zero_coefficient(a.field(), a.nvars());
    for (int i = 1; i <= k; ++i) {
      if (!bcoef[static_cast<std::size_t>(i)].is_zero()) {
        acc += bcoef[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
      }
    }
    inv[static_cast<std::size_t>(k)] = -(acc * b0inv);
    check_budget(inv[static_cast<std::size_t>(k)]);
  }

  std::map<int, RatFunc> q;
  for (int k = 0; k < rel; ++k) {
    RatFunc acc = zero_coefficient(a.field(), a.nvars());
    for (int i = 0; i <= k; ++i) {
      auto it = a.coefficients().find(oa + i);
      if (it != a.coefficients().end() && !inv[static_cast<std::size_t>(k - i)].is_zero()) {
        acc += it->second * inv[static_cast<std::size_t>(k - i)];
      }
    }
    check_budget(acc);
    if (!acc.is_zero()) q.emplace(oa - v + k, std::move(acc));
  }
  return CompletedElement::from_coefficients(a.field(), a.nvars(), std::move(q), oa - v + rel);
}

CompletedElement embed_blowup(const Series& s) {
  const int n = s.nvars();
  std::map<int, std::vector<Poly::Term>> pieces;
  for (const auto& [m, c] : s.poly().terms()) {
    std::vector<int> e(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = m.exponent(i);
    pieces[m.degree()].emplace_back(Monomial::from_exponents(e), c);
  }
  std::map<int, RatFunc> coeffs;
  for (auto& [j, terms] : pieces) {
    coeffs.emplace(j, RatFunc::from_poly(Poly::from_terms(s.field(), n - 1, std::move(terms))));
  }
  return CompletedElement::from_coefficients(s.field(), n, std::move(coeffs), s.prec());
}

OrderValue ord_hat(const CompletedElement& e) {
  if (e.is_zero()) return OrderValue::at_least(e.tprec());
  return OrderValue::exact(e.low_index());
}

OrderValue distance(const CompletedElement& z, const Series& x, const Series& y) {
  const OrderValue oy = ord(y);
  if (!oy.is_exact()) throw PrecisionError("denominator indistinguishable from 0 at this precision");
  const OrderValue o = ord_hat(embed_blowup(y) * z - embed_blowup(x));
  if (o.is_exact()) return OrderValue::exact(o.value() - oy.value());
  if (o.is_infinite()) return o;
  return OrderValue::at_least(o.bound() - oy.value());
}

namespace {

struct CompletedAlgebra {
  using Value = CompletedElement;
  Field field;
  int nvars;
  int cap;

  RatFunc coefficient_constant(const Scalar& c) const { return RatFunc::constant(field, nvars - 1, c); }
  Value number(const mpz_class& z) const {
    return CompletedElement::term(coefficient_constant(field.from_rational(mpq_class(z))), nvars, 0);
  }
  Value variable(const std::string& name) const {
    const std::string uniformizer = "T" + std::to_string(nvars);
    if (name == uniformizer || name == "TN") {
      return CompletedElement::term(coefficient_constant(field.one()), nvars, 1);
    }
    if (name.size() >= 2 && (name[0] == 't' || name[0] == 'T')) {
      int index = 0;
      try {
        index = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        index = 0;
      }
      if (index >= 1 && index < nvars && name.substr(1) == std::to_string(index)) {
        const RatFunc t = RatFunc::from_poly(Poly::variable(field, nvars - 1, index - 1));
        return CompletedElement::term(t, nvars, name[0] == 'T' ? 1 : 0);
      }
    }
    throw std::invalid_argument("unknown variable '" + name + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  Value div(const Value& a, const Value& b) const { return divide(a, b, cap); }
  Value pow(const Value& a, long e) const {
    if (e >= 0) return a.pow(static_cast<unsigned>(e));
    return divide(number(1), a.pow(static_cast<unsigned>(-e)), cap);
  }
};

}  // namespace

CompletedElement parse_completed(std::string_view text, const Field& field, int nvars) {
  const auto [expr, tprec] = split_precision(text);
  const int cap = tprec >= kExactPrec ? kDefaultDivisionCap : tprec;
  return parse_expression(CompletedAlgebra{field, nvars, cap}, expr).truncated(tprec);
}

}  // namespace serival
