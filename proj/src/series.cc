#include "serival/series.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "serival/error.h"
#include "serival/parse.h"
#include "serival/rng.h"

namespace serival {

int OrderValue::value() const {
  if (!exact_) throw PrecisionError("order is only known to be " + to_string());
  return value_;
}

std::string OrderValue::to_string() const {
  if (exact_) return std::to_string(value_);
  if (is_infinite()) return "inf";
  return ">=" + std::to_string(value_);
}

OrderValue operator+(const OrderValue& a, const OrderValue& b) {
  const int s = sat_add(a.bound(), b.bound());
  if (a.is_exact() && b.is_exact()) return OrderValue::exact(s);
  return OrderValue::at_least(s);
}

OrderValue min_order(const OrderValue& a, const OrderValue& b) {
  if (a.is_exact() && b.is_exact()) return OrderValue::exact(std::min(a.bound(), b.bound()));
  if (a.is_exact() && a.bound() < b.bound()) return a;
  if (b.is_exact() && b.bound() < a.bound()) return b;
  return OrderValue::at_least(std::min(a.bound(), b.bound()));
}

Series::Series(Field field, int nvars, int prec) : poly_(field, nvars), prec_(prec) {
  if (prec < 0) throw std::invalid_argument("negative precision");
  prec_ = std::min(prec, kExactPrec);
}

Series::Series(Poly poly, int prec) : prec_(std::min(prec, kExactPrec)) {
  if (prec < 0) throw std::invalid_argument("negative precision");
  poly_ = prec_ >= kExactPrec ? std::move(poly) : poly.truncated(prec_);
}

Series Series::constant(Field field, int nvars, const Scalar& c, int prec) {
  return Series(Poly::constant(field, nvars, c), prec);
}

Series Series::variable(Field field, int nvars, int index, int exponent, int prec) {
  return Series(Poly::variable(field, nvars, index, exponent), prec);
}

Series Series::truncated(int prec) const {
  if (prec >= prec_) return *this;
  return Series(poly_, prec);
}

Series Series::homogeneous_part(int degree) const {
  return Series(poly_.homogeneous_part(degree), prec_);
}

Series operator+(const Series& a, const Series& b) {
  const int prec = std::min(a.prec_, b.prec_);
  Poly sum = a.poly_ + b.poly_;
  if (prec < kExactPrec) sum = sum.truncated(prec);
  Series s;
  s.poly_ = std::move(sum);
  s.prec_ = prec;
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  // Each factor is known modulo m^prec; the error term in a*b is bounded by
  // prec_a + ord(b) and prec_b + ord(a).
  const int prec = std::min(sat_add(a.prec_, ord(b).bound()), sat_add(b.prec_, ord(a).bound()));
  Series s;
  s.poly_ = Poly::multiply(a.poly_, b.poly_, prec >= kExactPrec ? -1 : prec);
  s.prec_ = prec;
  return s;
}

Series Series::pow(unsigned exponent) const {
  Series result = Series::constant(field(), nvars(), field().one());
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

std::string Series::to_string() const {
  const auto names = series_names(nvars());
  std::string out = poly_.to_string(names, /*ascending=*/true);
  if (!is_exact()) out += " @" + std::to_string(prec_);
  return out;
}

std::vector<std::string> series_names(int nvars) { return indexed_names("T", nvars); }

OrderValue ord(const Series& s) {
  if (s.poly().is_zero()) return OrderValue::at_least(s.prec());
  return OrderValue::exact(s.poly().low_degree());
}

bool congruent(const Series& a, const Series& b) {
  const int prec = std::min(a.prec(), b.prec());
  return (a.poly() - b.poly()).truncated(prec).is_zero();
}

Series initial_form(const Series& s) {
  const OrderValue o = ord(s);
  if (!o.is_exact()) throw PrecisionError("initial form of a series that vanishes to precision " +
                                          std::to_string(s.prec()));
  return Series::exact(s.poly().homogeneous_part(o.value()));
}

DivisionOutcome exact_divide(const Series& x, const Series& y, int quotient_cap) {
  if (x.nvars() != y.nvars() || x.field() != y.field()) {
    throw std::invalid_argument("series ring mismatch");
  }
  const OrderValue oy = ord(y);
  if (!oy.is_exact()) throw PrecisionError("divisor indistinguishable from 0 at this precision");
  const int v = oy.value();
  const int prec = std::min(x.prec(), y.prec());
  const int qprec = prec >= kExactPrec ? quotient_cap : prec - v;
  const Poly lead = y.poly().homogeneous_part(v);
  Poly remainder = x.poly().truncated(prec);
  std::vector<Poly::Term> quotient;
  bool terminated = false;
  while (true) {
    if (remainder.is_zero()) {
      terminated = true;
      break;
    }
    const int degree = remainder.low_degree();
    if (degree < v) return NotDivisible{degree};
    if (degree - v >= qprec) break;
    auto piece = divide_exact(remainder.homogeneous_part(degree), lead);
    if (!piece) return NotDivisible{degree};
    remainder -= Poly::multiply(*piece, y.poly(), prec >= kExactPrec ? -1 : prec);
    for (const auto& t : piece->terms()) quotient.push_back(t);
  }
  Poly q = Poly::from_terms(x.field(), x.nvars(), std::move(quotient));
  const int result_prec = (terminated && prec >= kExactPrec) ? kExactPrec : std::max(qprec, 0);
  return Series(std::move(q), result_prec);
}

Series random_series(const Field& field, int nvars, int prec, double density, std::uint64_t seed,
                     int height) {
  if (density < 0.0 || density > 1.0) throw std::invalid_argument("density must lie in [0, 1]");
  if (height < 1) throw std::invalid_argument("height must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Poly::Term> terms;
  std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
  // Walk all exponent vectors of total degree < prec in a fixed order.
  for (int degree = 0; degree < prec; ++degree) {
    std::fill(exps.begin(), exps.end(), 0);
    if (nvars == 0) break;
    exps[0] = degree;
    while (true) {
      if (uniform_unit(rng) < density) {
        Scalar c;
        if (field.is_rational()) {
          const long span = 2L * height;
          long num = static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(span))) - height;
          if (num >= 0) ++num;
          const long den = 1 + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(height)));
          c = field.from_rational(mpq_class(num, den));
        } else {
          const std::uint32_t p = field.characteristic();
          c = field.from_int(1 + static_cast<long>(uniform_below(rng, p - 1)));
        }
        terms.emplace_back(Monomial::from_exponents(exps), c);
      }
      // Next composition of `degree` into nvars parts (reverse lex).
      int i = nvars - 2;
      while (i >= 0 && exps[static_cast<std::size_t>(i)] == 0) --i;
      if (i < 0) break;
      --exps[static_cast<std::size_t>(i)];
      const int rest = exps[static_cast<std::size_t>(nvars - 1)] + 1;
      exps[static_cast<std::size_t>(nvars - 1)] = 0;
      exps[static_cast<std::size_t>(i + 1)] = rest;
    }
  }
  return Series(Poly::from_terms(field, nvars, std::move(terms)), prec);
}

std::pair<std::string_view, int> split_precision(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) return {text, kExactPrec};
  std::string_view tail = text.substr(at + 1);
  while (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
  while (!tail.empty() && tail.back() == ' ') tail.remove_suffix(1);
  if (tail.rfind("prec=", 0) == 0) tail.remove_prefix(5);
  int prec = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), prec);
  if (ec != std::errc() || ptr != tail.data() + tail.size() || prec < 0) {
    throw ParseError("malformed precision annotation", at);
  }
  return {text.substr(0, at), prec};
}

Series parse_series(std::string_view text, const Field& field, int nvars) {
  const auto [expr, prec] = split_precision(text);
  return Series(parse_poly(expr, field, series_names(nvars)), prec);
}

}  // namespace serival
