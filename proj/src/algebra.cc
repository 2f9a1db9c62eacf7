#include "serival/algebra.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "serival/error.h"
#include "serival/parse.h"

namespace serival {
namespace {

Series zero_series(const Field& field, int nvars) { return Series(field, nvars, kExactPrec); }

Series one_series(const Field& field, int nvars) { return Series::constant(field, nvars, field.one()); }

bool is_exact_zero(const Series& s) { return s.is_exact() && s.is_zero(); }

std::string wrap_coefficient(const Series& a, const std::vector<std::string>& names) {
  const std::string s = a.poly().to_string(names, /*ascending=*/true);
  if (a.poly().size() == 1) return s;
  return "(" + s + ")";
}

// Renders sum c_k * mono_k, with unit coefficients elided and signs folded.
std::string render_terms(const std::vector<std::pair<Series, std::string>>& terms,
                         const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [c, mono] : terms) {
    std::string piece;
    const Poly& p = c.poly();
    const bool unit = p.is_constant() && !p.is_zero() && p.constant_term().is_one();
    const bool minus_unit = p.is_constant() && !p.is_zero() && (-p.constant_term()).is_one();
    if (mono.empty()) {
      piece = p.size() == 1 ? p.to_string(names, true) : "(" + p.to_string(names, true) + ")";
    } else if (unit) {
      piece = mono;
    } else if (minus_unit) {
      piece = "-" + mono;
    } else {
      piece = wrap_coefficient(c, names) + "*" + mono;
    }
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

std::string power(const std::string& var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

std::string join_mono(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

int min_prec(const std::vector<Series>& coeffs) {
  int p = kExactPrec;
  for (const auto& c : coeffs) p = std::min(p, c.prec());
  return p;
}

}  // namespace

// ---------------------------------------------------------------- SeriesPoly

SeriesPoly::SeriesPoly(std::vector<Series> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  for (const auto& c : coeffs_) {
    if (c.nvars() != coeffs_.front().nvars() || c.field() != coeffs_.front().field()) {
      throw std::invalid_argument("coefficients from different series rings");
    }
  }
  while (coeffs_.size() > 1 && is_exact_zero(coeffs_.back())) coeffs_.pop_back();
}

int SeriesPoly::prec() const { return min_prec(coeffs_); }

bool SeriesPoly::is_monic() const {
  const Poly& p = leading().poly();
  return p.is_constant() && !p.is_zero() && p.constant_term().is_one();
}

SeriesPoly SeriesPoly::derivative() const {
  if (degree() == 0) return SeriesPoly({zero_series(field(), nvars())});
  std::vector<Series> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(coeff(i) * field().from_int(i));
  return SeriesPoly(std::move(d));
}

Series SeriesPoly::operator()(const Series& z) const {
  Series acc = leading();
  for (int i = degree() - 1; i >= 0; --i) acc = acc * z + coeff(i);
  return acc;
}

std::string SeriesPoly::to_string(const std::string& var) const {
  const auto names = series_names(nvars());
  std::vector<std::pair<Series, std::string>> terms;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i).is_zero()) terms.emplace_back(Series::exact(coeff(i).poly()), power(var, i));
  }
  std::string out = render_terms(terms, names);
  if (prec() < kExactPrec) out += " @" + std::to_string(prec());
  return out;
}

std::string HomogForm::to_string() const {
  const auto names = series_names(coeffs.front().nvars());
  const int d = degree();
  std::vector<std::pair<Series, std::string>> terms;
  for (int i = d; i >= 0; --i) {
    if (!coeff(i).is_zero()) {
      terms.emplace_back(Series::exact(coeff(i).poly()), join_mono(power("X", i), power("Y", d - i)));
    }
  }
  std::string out = render_terms(terms, names);
  if (min_prec(coeffs) < kExactPrec) out += " @" + std::to_string(min_prec(coeffs));
  return out;
}

HomogForm homogenize(const SeriesPoly& q) { return HomogForm{q.coefficients()}; }

SeriesPoly dehomogenize(const HomogForm& p, Chart chart) {
  std::vector<Series> c = p.coeffs;
  if (chart == Chart::kXEqualsOne) std::reverse(c.begin(), c.end());
  return SeriesPoly(std::move(c));
}

Series eval_P(const HomogForm& p, const Series& x, const Series& y) {
  const int d = p.degree();
  std::vector<Series> xp{one_series(x.field(), x.nvars())};
  std::vector<Series> yp{one_series(x.field(), x.nvars())};
  for (int i = 1; i <= d; ++i) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }
  Series acc = zero_series(x.field(), x.nvars());
  for (int i = 0; i <= d; ++i) {
    if (is_exact_zero(p.coeff(i))) continue;
    acc += p.coeff(i) * xp[static_cast<std::size_t>(i)] * yp[static_cast<std::size_t>(d - i)];
  }
  return acc;
}

SeriesPoly normalize_Qu(const SeriesPoly& q, const Series& u) {
  const int d = q.degree();
  if (d < 1) throw std::invalid_argument("normalize_Qu needs degree >= 1");
  if (u.is_zero()) throw std::invalid_argument("u must be nonzero");
  std::vector<Series> c;
  for (int i = 0; i < d; ++i) {
    c.push_back(q.coeff(i) * u.pow(static_cast<unsigned>(d - i)) *
                q.leading().pow(static_cast<unsigned>(d - i - 1)));
  }
  c.push_back(one_series(q.field(), q.nvars()));
  return SeriesPoly(std::move(c));
}

// ------------------------------------------------------------ distinguished

std::string DistinguishedReport::initial_form_text() const {
  if (initial_form.empty()) return "0";
  const auto names = series_names(initial_form.front().second.nvars());
  std::vector<std::pair<Series, std::string>> terms;
  for (auto it = initial_form.rbegin(); it != initial_form.rend(); ++it) {
    terms.emplace_back(it->second, power("Z", it->first));
  }
  return render_terms(terms, names);
}

DistinguishedReport is_distinguished(const SeriesPoly& q) {
  const int d = q.degree();
  DistinguishedReport rep;
  std::vector<OrderValue> orders;
  for (const auto& a : q.coefficients()) orders.push_back(ord(a));

  // Lowest weight ord(a_i) + i among the coefficients with an exact order.
  int weight = kExactPrec;
  for (int i = 0; i <= d; ++i) {
    if (orders[static_cast<std::size_t>(i)].is_exact()) {
      weight = std::min(weight, orders[static_cast<std::size_t>(i)].value() + i);
    }
  }
  if (weight >= kExactPrec) throw PrecisionError("every coefficient vanishes at this precision");
  for (int i = 0; i <= d; ++i) {
    const OrderValue& o = orders[static_cast<std::size_t>(i)];
    if (!o.is_exact() && sat_add(o.bound(), i) <= weight) {
      throw PrecisionError("initial form undetermined: coefficient " + std::to_string(i) +
                           " vanishes only to order " + o.to_string());
    }
    if (o.is_exact() && o.value() + i == weight) {
      rep.initial_form.emplace_back(i, initial_form(q.coeff(i)));
    }
  }
  rep.initial_weight = weight;

  const bool unit_lead = orders.back().is_exact() && orders.back().value() == 0;
  bool strict = unit_lead;
  bool in_m = unit_lead;
  for (int i = 0; i < d; ++i) {
    const OrderValue& o = orders[static_cast<std::size_t>(i)];
    // An at-least bound decides the predicates only when it clears them.
    if (o.bound() <= d - i) {
      if (!o.is_exact()) throw PrecisionError("coefficient " + std::to_string(i) + " too imprecise");
      strict = false;
    }
    if (o.bound() < 1) in_m = false;
  }
  rep.initial_is_Zd = strict;
  rep.weierstrass = in_m;
  return rep;
}

Series default_u(const SeriesPoly& q) {
  const int n = q.nvars();
  // With e = 2 every transformed coefficient has order >= 2(d - i) > d - i,
  // so the search stops at 2.
  for (int e = 1; e <= 2; ++e) {
    const Series u = Series::variable(q.field(), n, n - 1, e);
    if (is_distinguished(normalize_Qu(q, u)).initial_is_Zd) return u;
  }
  throw std::logic_error("no u = T_N^e with e <= 2 normalizes Q");
}

// ------------------------------------------------------------ quotient ring

QuotientRing::QuotientRing(SeriesPoly q) : q_(std::move(q)) {
  if (q_.degree() < 1) throw std::invalid_argument("quotient by a constant");
  if (!q_.is_monic()) {
    throw std::invalid_argument("quotient representation needs a monic polynomial; apply normalize_Qu first");
  }
}

QuotientRing::Element QuotientRing::from_series(const Series& s) const {
  Element e(static_cast<std::size_t>(degree()), zero_series(s.field(), s.nvars()));
  e[0] = s;
  return e;
}

QuotientRing::Element QuotientRing::zbar() const {
  std::vector<Series> c{zero_series(q_.field(), q_.nvars()), one_series(q_.field(), q_.nvars())};
  return reduce(std::move(c));
}

QuotientRing::Element QuotientRing::reduce(std::vector<Series> c) const {
  const int d = degree();
  while (static_cast<int>(c.size()) < d) c.push_back(zero_series(q_.field(), q_.nvars()));
  for (int k = static_cast<int>(c.size()) - 1; k >= d; --k) {
    const Series top = c[static_cast<std::size_t>(k)];
    if (is_exact_zero(top)) continue;
    for (int i = 0; i < d; ++i) {
      if (is_exact_zero(q_.coeff(i))) continue;
      auto& slot = c[static_cast<std::size_t>(k - d + i)];
      slot = slot - top * q_.coeff(i);
    }
  }
  c.resize(static_cast<std::size_t>(d));
  return c;
}

QuotientRing::Element QuotientRing::add(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QuotientRing::Element QuotientRing::sub(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QuotientRing::Element QuotientRing::mul(const Element& a, const Element& b) const {
  std::vector<Series> c(a.size() + b.size() - 1, zero_series(q_.field(), q_.nvars()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_exact_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (is_exact_zero(b[j])) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return reduce(std::move(c));
}

bool QuotientRing::congruent(const Element& a, const Element& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!serival::congruent(a[i], b[i])) return false;
  }
  return true;
}

OrderValue graded_order(const SeriesPoly& q, const QuotientRing::Element& g) {
  if (!is_distinguished(q).initial_is_Zd) throw std::domain_error("graded formula invalid: Q̄ ≠ Z^d");
  if (static_cast<int>(g.size()) != q.degree()) throw std::invalid_argument("element has the wrong length");
  OrderValue best = OrderValue::infinite();
  for (std::size_t i = 0; i < g.size(); ++i) {
    best = min_order(best, ord(g[i]) + OrderValue::exact(static_cast<int>(i)));
  }
  return best;
}

// ---------------------------------------------------------------- cofactors

CofactorExpansion cofactor_expand(const SeriesPoly& q, const Series& x, const Series& y,
                                  const std::optional<CompletedElement>& zbar, bool want_f) {
  const QuotientRing ring(q);
  const int d = q.degree();
  const Field& field = q.field();
  const int n = q.nvars();
  CofactorExpansion out;

  // b_i = a_{i+1} + a_{i+2} Zbar + ... + a_d Zbar^(d-i-1): already reduced.
  for (int i = 0; i < d; ++i) {
    QuotientRing::Element b(static_cast<std::size_t>(d), zero_series(field, n));
    for (int k = 0; k + i + 1 <= d; ++k) b[static_cast<std::size_t>(k)] = q.coeff(i + 1 + k);
    out.b.push_back(std::move(b));
  }
  out.recurrence_holds = QuotientRing::congruent(out.b[static_cast<std::size_t>(d - 1)],
                                                 ring.from_series(q.leading()));
  for (int i = 0; i + 1 < d; ++i) {
    const auto rhs = ring.add(ring.from_series(q.coeff(i + 1)),
                              ring.mul(ring.zbar(), out.b[static_cast<std::size_t>(i + 1)]));
    out.recurrence_holds = out.recurrence_holds && QuotientRing::congruent(out.b[static_cast<std::size_t>(i)], rhs);
  }

  std::vector<Series> xp{one_series(field, n)};
  std::vector<Series> yp{one_series(field, n)};
  for (int i = 1; i <= d; ++i) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }
  out.h.assign(static_cast<std::size_t>(d), zero_series(field, n));
  for (int i = 0; i < d; ++i) {
    const Series w = xp[static_cast<std::size_t>(i)] * yp[static_cast<std::size_t>(d - 1 - i)];
    for (int k = 0; k < d; ++k) {
      const Series& c = out.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (!is_exact_zero(c)) out.h[static_cast<std::size_t>(k)] += c * w;
    }
  }

  const HomogForm p = homogenize(q);
  out.p_value = eval_P(p, x, y);
  const auto linear = ring.sub(ring.from_series(x), ring.mul(ring.from_series(y), ring.zbar()));
  out.lhs = ring.mul(linear, out.h);
  out.identity_holds = QuotientRing::congruent(out.lhs, ring.from_series(out.p_value));

  if (want_f) {
    if (!ord(x).is_exact()) throw PrecisionError("f-sequence needs x with an exact order");
    Series partial = zero_series(field, n);
    out.expansion_holds = true;
    for (int k = 0; k < d; ++k) {
      partial += q.coeff(k) * xp[static_cast<std::size_t>(k)] * yp[static_cast<std::size_t>(d - k)];
      const Series num = (out.p_value - partial) * yp[static_cast<std::size_t>(k)];
      const auto quotient = exact_divide(num, xp[static_cast<std::size_t>(k + 1)]);
      if (!std::holds_alternative<Series>(quotient)) {
        throw std::logic_error("f_" + std::to_string(k) + " is not a series: obstruction at degree " +
                               std::to_string(std::get<NotDivisible>(quotient).degree));
      }
      out.f.push_back(std::get<Series>(quotient));
      out.expansion_holds = out.expansion_holds && congruent(out.f.back(), out.h[static_cast<std::size_t>(k)]);
    }
  }

  if (zbar) {
    const HatPoly qh = embed_poly(q);
    const OrderValue residual = ord_hat(eval_hat(qh, *zbar));
    if (residual.is_exact()) {
      throw PrecisionError("zbar is not a root: residual order " + residual.to_string() +
                           " below its precision");
    }
    CompletedElement hz(field, n, kExactPrec);
    for (int k = d - 1; k >= 0; --k) hz = hz * *zbar + embed_blowup(out.h[static_cast<std::size_t>(k)]);
    const CompletedElement lhs = (embed_blowup(x) - *zbar * embed_blowup(y)) * hz;
    out.completion_identity_holds = !ord_hat(lhs - embed_blowup(out.p_value)).is_exact();
  }
  return out;
}

// -------------------------------------------------------- completion polys

HatPoly embed_poly(const SeriesPoly& q) {
  HatPoly f;
  for (const auto& a : q.coefficients()) f.push_back(embed_blowup(a));
  return f;
}

CompletedElement eval_hat(const HatPoly& f, const CompletedElement& z) {
  CompletedElement acc = f.back();
  for (int i = static_cast<int>(f.size()) - 2; i >= 0; --i) acc = acc * z + f[static_cast<std::size_t>(i)];
  return acc;
}

HatPoly derivative(const HatPoly& f) {
  const Field& field = f.front().field();
  const int n = f.front().nvars();
  if (f.size() == 1) return {CompletedElement(field, n, kExactPrec)};
  HatPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) {
    d.push_back(f[i].scaled(RatFunc::constant(field, n - 1, field.from_int(static_cast<long>(i)))));
  }
  return d;
}

namespace {

// Degree after dropping trailing coefficients that are exactly zero.
int hat_degree(const HatPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d > 0 && f[static_cast<std::size_t>(d)].is_zero() && f[static_cast<std::size_t>(d)].is_exact()) --d;
  return d;
}

}  // namespace

HenselResult hensel_lift(const HatPoly& f, const CompletedElement& seed, int target) {
  const HatPoly df = derivative(f);
  CompletedElement z = seed;
  CompletedElement fz = eval_hat(f, z);
  CompletedElement dfz = eval_hat(df, z);
  OrderValue r = ord_hat(fz);
  OrderValue s = ord_hat(dfz);
  HenselResult out;
  out.steps.push_back({r, s});
  if (r.bound() >= target) {
    out.root = z;
    return out;
  }
  if (!s.is_exact()) throw HenselError("inseparable residual: Q'(seed) vanishes at this precision", r, s);
  if (!r.is_exact()) {
    throw PrecisionError("seed too imprecise: Q(seed) known only to order " + r.to_string());
  }
  if (r.value() <= 2 * s.value()) {
    throw HenselError("Newton condition fails: ord Q(seed) = " + r.to_string() + ", ord Q'(seed) = " +
                          s.to_string(),
                      r, s);
  }
  const int low = z.is_zero() ? 0 : std::min(0, z.low_index());
  const int work = target + s.value() + 1 - low * hat_degree(f);

  for (int iter = 0; iter < 64 && r.bound() < target; ++iter) {
    if (!r.is_exact()) throw PrecisionError("residual lost at precision " + r.to_string());
    const int shift = r.value() - s.value();
    const CompletedElement delta = divide(fz, dfz, std::max(1, work - shift));
    CompletedElement next = z - delta;
    if (!(next.is_exact() && eval_hat(f, next).is_zero())) next = next.truncated(work);
    z = std::move(next);
    fz = eval_hat(f, z);
    dfz = eval_hat(df, z);
    const OrderValue previous = r;
    r = ord_hat(fz);
    s = ord_hat(dfz);
    out.steps.push_back({r, s});
    if (!s.is_exact()) throw HenselError("inseparable residual: Q'(z) vanishes during lifting", r, s);
    if (r.is_exact() && r.value() <= previous.value()) {
      throw HenselError("residual order did not increase", r, s);
    }
  }
  if (r.bound() < target) throw HenselError("no convergence within 64 Newton steps", r, s);
  // z is only guaranteed to ord(Q(z)) - ord(Q'(z)) digits.
  if (r.is_exact() && !z.is_exact()) z = z.truncated(std::min(z.tprec(), r.value() - s.value()));
  out.root = z;
  return out;
}

HenselResult hensel_lift(const SeriesPoly& q, const CompletedElement& seed, int target) {
  return hensel_lift(embed_poly(q), seed, target);
}

// ---------------------------------------------------------------- roots

namespace {

using Dense = std::vector<Scalar>;  // univariate, low degree first

// Lifts far enough that the root itself carries `digits` T_N-digits.
HenselResult lift_digits(const HatPoly& f, const CompletedElement& seed, int digits) {
  HenselResult out = hensel_lift(f, seed, digits);
  if (!out.root.is_exact() && out.root.tprec() < digits) {
    out = hensel_lift(f, seed, 2 * digits - out.root.tprec());
  }
  if (!out.root.is_exact() && out.root.tprec() > digits) out.root = out.root.truncated(digits);
  return out;
}


void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Scalar eval_dense(const Dense& p, const Scalar& c) {
  Scalar acc = c.field().zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * c + *it;
  return acc;
}

Poly dense_to_poly(const Field& field, const Dense& p) {
  std::vector<Poly::Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) terms.emplace_back(Monomial::variable(0, static_cast<int>(i)), p[i]);
  }
  return Poly::from_terms(field, 1, std::move(terms));
}

Dense poly_to_dense(const Poly& p) {
  Dense d(static_cast<std::size_t>(std::max(p.total_degree() + 1, 0)), p.field().zero());
  for (const auto& [m, c] : p.terms()) d[static_cast<std::size_t>(m.exponent(0))] = c;
  return d;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  }
  return out;
}

// Nonzero roots in k of a univariate polynomial.
std::vector<Scalar> field_roots(const Field& field, Dense p, std::vector<std::string>& notes) {
  trim(p);
  std::vector<Scalar> roots;
  if (p.size() < 2) return roots;
  std::size_t low = 0;
  while (p[low].is_zero()) ++low;
  p.erase(p.begin(), p.begin() + static_cast<long>(low));
  if (p.size() < 2) return roots;
  if (!field.is_rational()) {
    const std::uint32_t q = field.characteristic();
    if (q > 100000) {
      notes.push_back("residual root search skipped: characteristic too large for trial");
      return roots;
    }
    for (std::uint32_t c = 1; c < q; ++c) {
      const Scalar s = field.from_int(c);
      if (eval_dense(p, s).is_zero()) roots.push_back(s);
    }
    return roots;
  }
  mpz_class lcm = 1;
  for (const auto& c : p) lcm = lcm * c.rational().get_den() / gcd(lcm, c.rational().get_den());
  const mpz_class a0 = mpq_class(p.front().rational() * lcm).get_num();
  const mpz_class an = mpq_class(p.back().rational() * lcm).get_num();
  const auto num = divisors(a0);
  const auto den = divisors(an);
  if (num.empty() || den.empty()) {
    notes.push_back("rational root search skipped: coefficients too large");
    return roots;
  }
  std::vector<mpq_class> seen;
  for (const auto& a : num) {
    for (const auto& b : den) {
      for (int sign : {1, -1}) {
        mpq_class cand(a * sign, b);
        cand.canonicalize();
        if (std::find(seen.begin(), seen.end(), cand) != seen.end()) continue;
        seen.push_back(cand);
        const Scalar s = field.from_rational(cand);
        if (eval_dense(p, s).is_zero()) roots.push_back(s);
      }
    }
  }
  return roots;
}

// Candidate roots w = c * t^alpha of sum_i r_i w^i with r_i in K.
std::vector<RatFunc> residual_roots(const Field& field, int nt, const std::vector<RatFunc>& r,
                                    std::vector<std::string>& notes) {
  std::vector<RatFunc> out;
  int top = static_cast<int>(r.size()) - 1;
  while (top > 0 && r[static_cast<std::size_t>(top)].is_zero()) --top;
  int low = 0;
  while (low < top && r[static_cast<std::size_t>(low)].is_zero()) ++low;
  if (top == low) return out;
  if (top - low == 1) {
    out.push_back(-(r[static_cast<std::size_t>(low)] / r[static_cast<std::size_t>(top)]));
    return out;
  }
  // Clear denominators.
  Poly common = Poly::constant(field, nt, field.one());
  for (int i = low; i <= top; ++i) {
    const Poly& den = r[static_cast<std::size_t>(i)].den();
    const Poly g = gcd(common, den);
    common = common * *divide_exact(den, g);
  }
  std::vector<Poly> p;
  int bound = 0;
  for (int i = low; i <= top; ++i) {
    const RatFunc& c = r[static_cast<std::size_t>(i)];
    p.push_back(c.num() * *divide_exact(common, c.den()));
    bound = std::max(bound, p.back().total_degree());
  }
  const int deg = top - low;
  std::vector<int> alpha(static_cast<std::size_t>(nt), -bound);
  for (;;) {
    // Substitute w = c t^alpha and group by resulting t-monomial.
    std::map<std::vector<int>, Dense> groups;
    for (int i = 0; i <= deg; ++i) {
      for (const auto& [m, coef] : p[static_cast<std::size_t>(i)].terms()) {
        std::vector<int> e(static_cast<std::size_t>(nt));
        for (int j = 0; j < nt; ++j) e[static_cast<std::size_t>(j)] = m.exponent(j) + (i + low) * alpha[static_cast<std::size_t>(j)];
        Dense& g = groups[e];
        if (static_cast<int>(g.size()) <= i + low) g.resize(static_cast<std::size_t>(i + low + 1), field.zero());
        g[static_cast<std::size_t>(i + low)] += coef;
      }
    }
    Poly g(field, 1);
    for (auto& [e, dense] : groups) {
      trim(dense);
      g = gcd(g, dense_to_poly(field, dense));
      if (g.is_constant() && !g.is_zero()) break;
    }
    if (!g.is_constant()) {
      for (const Scalar& c : field_roots(field, poly_to_dense(g), notes)) {
        std::vector<int> pos(static_cast<std::size_t>(nt));
        std::vector<int> neg(static_cast<std::size_t>(nt));
        for (int j = 0; j < nt; ++j) {
          pos[static_cast<std::size_t>(j)] = std::max(alpha[static_cast<std::size_t>(j)], 0);
          neg[static_cast<std::size_t>(j)] = std::max(-alpha[static_cast<std::size_t>(j)], 0);
        }
        const RatFunc w = RatFunc::normalize(Poly::monomial(field, nt, Monomial::from_exponents(pos), c),
                                             Poly::monomial(field, nt, Monomial::from_exponents(neg), field.one()));
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
      }
    }
    int j = 0;
    while (j < nt && alpha[static_cast<std::size_t>(j)] == bound) {
      alpha[static_cast<std::size_t>(j)] = -bound;
      ++j;
    }
    if (j == nt) break;
    ++alpha[static_cast<std::size_t>(j)];
  }
  return out;
}

// Multiplicity of w0 as a root of sum r_i w^i, by repeated synthetic division.
int residual_multiplicity(std::vector<RatFunc> r, const RatFunc& w0) {
  int m = 0;
  while (r.size() > 1) {
    std::vector<RatFunc> quotient(r.size() - 1, RatFunc(w0.field(), w0.nvars()));
    RatFunc carry(w0.field(), w0.nvars());
    for (int k = static_cast<int>(r.size()) - 1; k >= 1; --k) {
      carry = r[static_cast<std::size_t>(k)] + carry * w0;
      quotient[static_cast<std::size_t>(k - 1)] = carry;
    }
    if (!(r[0] + carry * w0).is_zero()) break;
    ++m;
    r = std::move(quotient);
  }
  return m;
}

// Synthetic division by (Z - z); throws if the remainder has an exact order.
HatPoly deflate(const HatPoly& f, const CompletedElement& z) {
  const int d = hat_degree(f);
  HatPoly q(static_cast<std::size_t>(d), CompletedElement(f.front().field(), f.front().nvars(), kExactPrec));
  CompletedElement carry(f.front().field(), f.front().nvars(), kExactPrec);
  for (int k = d; k >= 1; --k) {
    carry = f[static_cast<std::size_t>(k)] + carry * z;
    q[static_cast<std::size_t>(k - 1)] = carry;
  }
  const CompletedElement remainder = f[0] + carry * z;
  if (ord_hat(remainder).is_exact()) {
    throw PrecisionError("deflation residual too large: order " + ord_hat(remainder).to_string());
  }
  return q;
}

bool vanishes_at(const HatPoly& f, const CompletedElement& z) {
  const CompletedElement v = eval_hat(f, z);
  if (!v.is_zero()) return false;
  if (v.is_exact()) return true;
  // An approximate root only counts again if the value is zero to at least
  // half the root's own precision.
  return v.tprec() >= z.tprec() / 2;
}

struct Found {
  CompletedElement z;
  bool exact = false;
};

std::optional<Found> find_root(const HatPoly& f, int tprec, std::vector<std::string>& notes) {
  const int d = hat_degree(f);
  if (d < 1) return std::nullopt;
  const Field& field = f.front().field();
  const int n = f.front().nvars();
  if (f[0].is_zero() && f[0].is_exact()) return Found{CompletedElement(field, n, kExactPrec), true};

  // Lower convex hull of (i, ord f_i).
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= d; ++i) {
    const OrderValue o = ord_hat(f[static_cast<std::size_t>(i)]);
    if (o.is_exact()) pts.emplace_back(i, o.value());
  }
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                         static_cast<long>(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto [i1, o1] = hull[e];
    const auto [i2, o2] = hull[e + 1];
    if ((o1 - o2) % (i2 - i1) != 0) {
      notes.push_back("slope " + std::to_string(o1 - o2) + "/" + std::to_string(i2 - i1) +
                      " is not integral: no root in the completion along this branch");
      continue;
    }
    const int mu = (o1 - o2) / (i2 - i1);
    const int m0 = o1 + i1 * mu;
    std::vector<RatFunc> residual(static_cast<std::size_t>(d + 1), RatFunc(field, n - 1));
    for (int i = 0; i <= d; ++i) {
      const auto& c = f[static_cast<std::size_t>(i)];
      const OrderValue o = ord_hat(c);
      if (o.is_exact() && o.value() + i * mu == m0) residual[static_cast<std::size_t>(i)] = c.coefficient(o.value());
    }
    HatPoly g;
    for (int i = 0; i <= d; ++i) g.push_back(f[static_cast<std::size_t>(i)].shifted(i * mu - m0));
    for (const RatFunc& w0 : residual_roots(field, n - 1, residual, notes)) {
      const CompletedElement seed = CompletedElement::term(w0, n, 0);
      if (eval_hat(g, seed).is_zero() && eval_hat(g, seed).is_exact()) {
        return Found{seed.shifted(mu), true};
      }
      const int mult = residual_multiplicity(residual, w0);
      HatPoly h = g;
      for (int k = 1; k < mult; ++k) h = derivative(h);
      try {
        const HenselResult lifted = lift_digits(h, seed, tprec);
        if (mult > 1 && !vanishes_at(g, lifted.root)) {
          notes.push_back("multiple residual root " + w0.to_string() + " does not lift to a root");
          continue;
        }
        const bool exact = lifted.root.is_exact() && eval_hat(g, lifted.root).is_zero();
        return Found{lifted.root.shifted(mu), exact};
      } catch (const HenselError& e) {
        notes.push_back(std::string("lifting ") + w0.to_string() + " failed: " + e.what());
      } catch (const PrecisionError& e) {
        notes.push_back(std::string("lifting ") + w0.to_string() + " failed: " + e.what());
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Series, Series>> to_fraction(const CompletedElement& z) {
  if (!z.is_exact()) return std::nullopt;
  const Field& field = z.field();
  const int n = z.nvars();
  // Homogenize a polynomial in t_1..t_{n-1} of total degree deg into T_1..T_n.
  auto lift = [&](const Poly& p, int deg) {
    std::vector<Poly::Term> terms;
    for (const auto& [m, c] : p.terms()) {
      std::vector<int> e(static_cast<std::size_t>(n));
      for (int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = m.exponent(i);
      e[static_cast<std::size_t>(n - 1)] = deg - m.degree();
      terms.emplace_back(Monomial::from_exponents(e), c);
    }
    return Poly::from_terms(field, n, std::move(terms));
  };
  Poly u(field, n);
  Poly v = Poly::constant(field, n, field.one());
  for (const auto& [j, c] : z.coefficients()) {
    const int dn = std::max(c.num().total_degree(), 0);
    const int dd = std::max(c.den().total_degree(), 0);
    const int k = j - dn + dd;
    Poly num = lift(c.num(), dn);
    Poly den = lift(c.den(), dd);
    if (k >= 0) {
      num = num * Poly::variable(field, n, n - 1, k);
    } else {
      den = den * Poly::variable(field, n, n - 1, -k);
    }
    u = u * den + num * v;
    v = v * den;
    const Poly g = gcd(u, v);
    if (!g.is_zero() && !g.is_constant()) {
      u = *divide_exact(u, g);
      v = *divide_exact(v, g);
    }
  }
  // Monic v in graded-lex order.
  const Scalar lc = v.leading_term().second.inverse();
  u *= lc;
  v *= lc;
  return std::make_pair(Series::exact(std::move(u)), Series::exact(std::move(v)));
}

RootSplit root_split(const SeriesPoly& q, int tprec, SeedStrategy strategy,
                     const std::vector<CompletedElement>& seeds) {
  RootSplit out;
  HatPoly f = embed_poly(q);
  f.resize(static_cast<std::size_t>(hat_degree(f) + 1), f.front());

  auto record = [&](const CompletedElement& z, bool exact) {
    RootInfo info;
    info.z = z;
    info.exact = exact;
    f = deflate(f, z);
    while (hat_degree(f) >= 1 && vanishes_at(f, z)) {
      f = deflate(f, z);
      ++info.multiplicity;
    }
    if (exact) {
      if (auto uv = to_fraction(z)) {
        info.u = uv->first;
        info.v = uv->second;
        info.coprime = gcd(uv->first.poly(), uv->second.poly()).is_constant();
      }
    }
    out.lifted_precision = std::min(out.lifted_precision, z.tprec());
    out.roots.push_back(std::move(info));
  };

  if (strategy == SeedStrategy::kUserSeeds) {
    for (const auto& seed : seeds) {
      if (hat_degree(f) < 1) break;
      try {
        const HenselResult lifted = lift_digits(f, seed, tprec);
        const bool exact = lifted.root.is_exact() && eval_hat(f, lifted.root).is_zero();
        record(lifted.root, exact);
      } catch (const HenselError& e) {
        out.notes.push_back(std::string("seed ") + seed.to_string() + ": " + e.what());
      }
    }
  } else {
    while (hat_degree(f) >= 1) {
      auto found = find_root(f, tprec, out.notes);
      if (!found) break;
      record(found->z, found->exact);
    }
  }
  out.rootless_degree = hat_degree(f);
  f.resize(static_cast<std::size_t>(out.rootless_degree + 1), f.front());
  out.remainder = std::move(f);
  return out;
}

// ---------------------------------------------------------------- parsing

SeriesPoly parse_series_poly(std::string_view text, const Field& field, int nvars, const std::string& var) {
  const auto [expr, prec] = split_precision(text);
  auto names = series_names(nvars);
  names.push_back(var);
  const Poly p = parse_poly(expr, field, names);
  const int d = p.degree_in(nvars);
  if (d < 1) throw ParseError("expected a polynomial of degree >= 1 in " + var, 0);
  std::vector<std::vector<Poly::Term>> pieces(static_cast<std::size_t>(d + 1));
  for (const auto& [m, c] : p.terms()) pieces[static_cast<std::size_t>(m.exponent(nvars))].emplace_back(m.without(nvars), c);
  std::vector<Series> coeffs;
  for (auto& terms : pieces) coeffs.emplace_back(Poly::from_terms(field, nvars, std::move(terms)), prec);
  return SeriesPoly(std::move(coeffs));
}

HomogForm parse_homog(std::string_view text, const Field& field, int nvars) {
  const auto [expr, prec] = split_precision(text);
  auto names = series_names(nvars);
  names.push_back("X");
  names.push_back("Y");
  const Poly p = parse_poly(expr, field, names);
  if (p.is_zero()) throw ParseError("zero form", 0);
  int d = -1;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(nvars) + m.exponent(nvars + 1);
    if (d >= 0 && e != d) throw ParseError("form is not homogeneous in X and Y", 0);
    d = e;
  }
  if (d < 1) throw ParseError("expected degree >= 1 in X and Y", 0);
  std::vector<std::vector<Poly::Term>> pieces(static_cast<std::size_t>(d + 1));
  for (const auto& [m, c] : p.terms()) {
    pieces[static_cast<std::size_t>(m.exponent(nvars))].emplace_back(m.without(nvars + 1).without(nvars), c);
  }
  HomogForm form;
  for (auto& terms : pieces) form.coeffs.emplace_back(Poly::from_terms(field, nvars, std::move(terms)), prec);
  return form;
}

}  // namespace serival
