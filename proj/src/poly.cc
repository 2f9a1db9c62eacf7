#include "serival/poly.h"

#include <algorithm>
#include <stdexcept>

#include "serival/error.h"

namespace serival {

Poly::Poly(Field field, int nvars) : field_(field), nvars_(nvars) {
  if (nvars < 0 || nvars > Monomial::kMaxVars) {
    throw std::invalid_argument("unsupported number of variables: " + std::to_string(nvars));
  }
}

Poly Poly::constant(Field field, int nvars, const Scalar& value) {
  return monomial(field, nvars, Monomial(), value);
}

Poly Poly::monomial(Field field, int nvars, const Monomial& m, const Scalar& c) {
  Poly p(field, nvars);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::variable(Field field, int nvars, int index, int exponent) {
  if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
  return monomial(field, nvars, Monomial::variable(index, exponent), field.one());
}

Poly Poly::from_terms(Field field, int nvars, std::vector<Term> terms) {
  Poly p(field, nvars);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Poly::degree_in(int index) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(index));
  return d;
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return field_.zero();
}

Poly Poly::homogeneous_part(int degree) const {
  Poly p(field_, nvars_);
  for (const auto& t : terms_) {
    if (t.first.degree() == degree) p.terms_.push_back(t);
  }
  return p;
}

Poly Poly::truncated(int prec) const {
  Poly p(field_, nvars_);
  for (const auto& t : terms_) {
    if (t.first.degree() >= prec) break;
    p.terms_.push_back(t);
  }
  return p;
}

Poly Poly::monic() const {
  if (is_zero() || leading_term().second.is_one()) return *this;
  Poly p = *this;
  p *= leading_term().second.inverse();
  return p;
}

void Poly::check_compatible(const Poly& other) const {
  if (nvars_ != other.nvars_ || field_ != other.field_) {
    throw std::invalid_argument("polynomial ring mismatch");
  }
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  if (other.is_zero()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Scalar s = a->second + b->second;
      if (!s.is_zero()) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

Poly Poly::multiply(const Poly& a, const Poly& b, int prec) {
  a.check_compatible(b);
  Poly p(a.field_, a.nvars_);
  if (a.is_zero() || b.is_zero()) return p;
  if (a.size() == 1 && (prec < 0 || a.terms_[0].first.degree() + b.total_degree() < prec)) {
    return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
  }
  if (b.size() == 1 && (prec < 0 || b.terms_[0].first.degree() + a.total_degree() < prec)) {
    return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
  }
  std::vector<Term> products;
  products.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms_) {
    if (prec >= 0 && ma.degree() + b.low_degree() >= prec) break;
    for (const auto& [mb, cb] : b.terms_) {
      if (prec >= 0 && ma.degree() + mb.degree() >= prec) break;
      products.emplace_back(ma * mb, ca * cb);
    }
  }
  return from_terms(a.field_, a.nvars_, std::move(products));
}

Poly Poly::times_monomial(const Monomial& m, const Scalar& c) const {
  Poly p(field_, nvars_);
  if (c.is_zero()) return p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the graded-lex order.
  for (const auto& [mt, ct] : terms_) p.terms_.emplace_back(mt * m, ct * c);
  return p;
}

Poly Poly::pow(unsigned exponent, int prec) const {
  Poly result = constant(field_, nvars_, field_.one());
  if (prec >= 0) result = result.truncated(prec);
  Poly base = *this;
  while (exponent != 0) {
    if (exponent & 1) result = multiply(result, base, prec);
    exponent >>= 1;
    if (exponent != 0) base = multiply(base, base, prec);
  }
  return result;
}

std::string Poly::to_string(std::span<const std::string> names, bool ascending) const {
  if (is_zero()) return "0";
  std::string out;
  auto render = [&](const Term& t, bool first) {
    const auto& [m, c] = t;
    const bool negative = c.is_negative();
    const Scalar magnitude = negative ? -c : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += magnitude.to_string();
    } else if (magnitude.is_one()) {
      out += mono;
    } else {
      out += magnitude.to_string() + "*" + mono;
    }
  };
  if (ascending) {
    for (std::size_t i = 0; i < terms_.size(); ++i) render(terms_[i], i == 0);
  } else {
    for (std::size_t i = terms_.size(); i-- > 0;) render(terms_[i], i + 1 == terms_.size());
  }
  return out;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.nvars() != b.nvars() || a.field() != b.field()) {
    throw std::invalid_argument("polynomial ring mismatch");
  }
  const auto& [lead_m, lead_c] = b.leading_term();
  const Scalar lead_inv = lead_c.inverse();
  if (b.is_monomial()) {
    Poly q(a.field(), a.nvars());
    std::vector<Poly::Term> terms;
    terms.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
      if (!lead_m.divides(m)) return std::nullopt;
      terms.emplace_back(m / lead_m, c * lead_inv);
    }
    return Poly::from_terms(a.field(), a.nvars(), std::move(terms));
  }
  Poly remainder = a;
  std::vector<Poly::Term> quotient;
  while (!remainder.is_zero()) {
    const auto& [rm, rc] = remainder.leading_term();
    if (!lead_m.divides(rm)) return std::nullopt;
    const Monomial qm = rm / lead_m;
    const Scalar qc = rc * lead_inv;
    remainder -= b.times_monomial(qm, qc);
    quotient.emplace_back(qm, qc);
  }
  return Poly::from_terms(a.field(), a.nvars(), std::move(quotient));
}

namespace {

// A polynomial viewed as univariate in its first variable; entry k is the
// coefficient of x1^k, a polynomial in the remaining variables.
using Dense = std::vector<Poly>;

Dense split_main(const Poly& p) {
  const int d = p.degree_in(0);
  std::vector<std::vector<Poly::Term>> buckets(static_cast<std::size_t>(std::max(d + 1, 0)));
  for (const auto& [m, c] : p.terms()) buckets[m.exponent(0)].emplace_back(m.without(0), c);
  Dense out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(p.field(), p.nvars() - 1, std::move(b)));
  return out;
}

Poly join_main(const Dense& u, const Field& field, int nvars) {
  std::vector<Poly::Term> terms;
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (const auto& [m, c] : u[k].terms()) terms.emplace_back(m.prepend(static_cast<int>(k)), c);
  }
  return Poly::from_terms(field, nvars, std::move(terms));
}

void trim(Dense& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Dense pseudo_remainder(Dense a, const Dense& b) {
  const Poly& lc = b.back();
  const std::size_t db = b.size() - 1;
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Poly la = a.back();
    for (auto& c : a) c *= lc;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    trim(a);
  }
  return a;
}

Poly content(const Dense& u) {
  Poly g;
  bool first = true;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = first ? c.monic() : gcd(g, c);
    first = false;
    if (g.is_constant()) break;
  }
  return g;
}

// Divides out the content and scales so the leading coefficient is monic.
Dense primitive_part(Dense u) {
  trim(u);
  if (u.empty()) return u;
  const Poly cont = content(u);
  if (!cont.is_constant()) {
    for (auto& c : u) {
      if (!c.is_zero()) c = *divide_exact(c, cont);
    }
  }
  const Scalar inv = u.back().leading_term().second.inverse();
  for (auto& c : u) c *= inv;
  return u;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field()) {
    throw std::invalid_argument("polynomial ring mismatch");
  }
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const Field field = a.field();
  const int nvars = a.nvars();
  if (a.is_constant() || b.is_constant()) return Poly::constant(field, nvars, field.one());
  if (a.is_monomial() || b.is_monomial()) {
    Monomial m = a.terms().front().first;
    for (const auto& t : a.terms()) m = m.meet(t.first);
    for (const auto& t : b.terms()) m = m.meet(t.first);
    return Poly::monomial(field, nvars, m, field.one());
  }
  Dense ua = split_main(a);
  Dense ub = split_main(b);
  const Poly ca = content(ua);
  const Poly cb = content(ub);
  const Poly common = gcd(ca, cb);
  ua = primitive_part(std::move(ua));
  ub = primitive_part(std::move(ub));
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (!ub.empty()) {
    Dense r = pseudo_remainder(ua, ub);
    ua = std::move(ub);
    ub = primitive_part(std::move(r));
  }
  ua = primitive_part(std::move(ua));
  Poly g = join_main(ua, field, nvars);
  Poly lifted_common = join_main(Dense{common}, field, nvars);
  return (g * lifted_common).monic();
}

std::vector<std::string> indexed_names(const std::string& prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

}  // namespace serival
