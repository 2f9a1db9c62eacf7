#include <random>

#include <gtest/gtest.h>

#include "serival/algebra.h"
#include "serival/error.h"
#include "serival/parse.h"

namespace serival {
namespace {

const Field kQ = Field::rationals();

Series S(const std::string& text, int nvars = 2, const Field& field = kQ) {
  return parse_series(text, field, nvars);
}
SeriesPoly Qp(const std::string& text, int nvars = 2, const Field& field = kQ) {
  return parse_series_poly(text, field, nvars);
}
CompletedElement C(const std::string& text, int nvars = 2, const Field& field = kQ) {
  return parse_completed(text, field, nvars);
}

TEST(SeriesPoly, ParseAndPrint) {
  const SeriesPoly q = Qp("Z^2 - (T1^2 + T2^3)");
  EXPECT_EQ(q.degree(), 2);
  EXPECT_EQ(q.coeff(0), S("-T1^2 - T2^3"));
  EXPECT_EQ(Qp(q.to_string()), q);
  EXPECT_EQ(Qp("Z^2 - T1*Z + 3 @5").to_string(), "Z^2 - T1*Z + 3 @5");
  EXPECT_THROW(Qp("T1 + T2"), ParseError);
}

TEST(NormalizeQu, ClosedFormDegreeTwo) {
  const Series a0 = S("T1 + T2^2"), a1 = S("T2"), a2 = S("1 + T1");
  const Series u = S("T1");
  const SeriesPoly qu = normalize_Qu(SeriesPoly({a0, a1, a2}), u);
  EXPECT_EQ(qu.coeff(0), a0 * u * u * a2);
  EXPECT_EQ(qu.coeff(1), a1 * u);
  EXPECT_TRUE(qu.is_monic());
}

TEST(NormalizeQu, DegreeThreeExponents) {
  // a_i u^(d-i) a_d^(d-i-1): a0 u^3 a3^2, a1 u^2 a3, a2 u.
  const Series a0 = S("T1"), a1 = S("T2"), a2 = S("1"), a3 = S("T1 + T2");
  const Series u = S("T2");
  const SeriesPoly qu = normalize_Qu(SeriesPoly({a0, a1, a2, a3}), u);
  EXPECT_EQ(qu.coeff(0), S("T1*T2^3*(T1 + T2)^2"));
  EXPECT_EQ(qu.coeff(1), S("T2^3*(T1 + T2)"));
  EXPECT_EQ(qu.coeff(2), S("T2"));
}

TEST(NormalizeQu, MonicWithUnitU) {
  const SeriesPoly q = Qp("Z^3 + T1*Z + T2^2");
  EXPECT_EQ(normalize_Qu(q, S("1")), q);
}

TEST(NormalizeQu, MakesInitialFormPure) {
  const SeriesPoly q = Qp("Z^2 + T2*Z + T1");
  EXPECT_FALSE(is_distinguished(q).initial_is_Zd);
  const SeriesPoly qu = normalize_Qu(q, S("T1"));
  // Transformed orders: ord(T1 * T1^2) = 3 > 2, ord(T2 * T1) = 2 > 1.
  EXPECT_EQ(ord(qu.coeff(0)), OrderValue::exact(3));
  EXPECT_EQ(ord(qu.coeff(1)), OrderValue::exact(2));
  EXPECT_TRUE(is_distinguished(qu).initial_is_Zd);
  EXPECT_EQ(is_distinguished(qu).initial_form_text(), "Z^2");
}

TEST(Distinguished, Examples) {
  for (int d : {2, 3, 4}) {
    const auto rep = is_distinguished(Qp("Z^" + std::to_string(d) + " - T1^" + std::to_string(d + 1)));
    EXPECT_TRUE(rep.initial_is_Zd) << d;
    EXPECT_TRUE(rep.weierstrass) << d;
  }
  const auto sq = is_distinguished(Qp("Z^2 - T1^2"));
  EXPECT_FALSE(sq.initial_is_Zd);
  EXPECT_TRUE(sq.weierstrass);
  EXPECT_EQ(sq.initial_form_text(), "Z^2 - T1^2");
  const auto lin = is_distinguished(Qp("Z + T1"));
  EXPECT_FALSE(lin.initial_is_Zd);
  EXPECT_EQ(lin.initial_form_text(), "Z + T1");
  EXPECT_EQ(lin.initial_weight, 1);
  EXPECT_FALSE(is_distinguished(Qp("T1*Z^2 + T2^5")).weierstrass);
}

TEST(Distinguished, DefaultU) {
  const SeriesPoly q = Qp("T1*Z^2 + Z + 1");
  const Series u = default_u(q);
  EXPECT_TRUE(is_distinguished(normalize_Qu(q, u)).initial_is_Zd);
  EXPECT_EQ(u, S("T2^2"));
  EXPECT_EQ(default_u(Qp("Z^2 + T1^2")), S("T2"));
}

TEST(Homogenize, Examples) {
  const HomogForm p = homogenize(Qp("Z^2 - T1^3"));
  EXPECT_EQ(p, parse_homog("X^2 - T1^3*Y^2", kQ, 2));
  EXPECT_EQ(p.to_string(), "X^2 - T1^3*Y^2");
  EXPECT_EQ(dehomogenize(p), Qp("Z^2 - T1^3"));
  // P(1, Y) reverses the coefficient sequence.
  EXPECT_EQ(dehomogenize(p, Chart::kXEqualsOne), Qp("1 - T1^3*Z^2"));
  EXPECT_THROW(parse_homog("X^2 + Y", kQ, 2), ParseError);
}

TEST(EvalP, Examples) {
  const HomogForm p = parse_homog("X^2 - T1^3*Y^2", kQ, 2);
  const Series v = eval_P(p, S("T1^2"), S("T1"));
  EXPECT_EQ(v, S("T1^4 - T1^5"));
  EXPECT_EQ(ord(v), OrderValue::exact(4));
  EXPECT_TRUE(eval_P(p, S("0"), S("0")).is_zero());
  EXPECT_EQ(eval_P(parse_homog("X*Y", kQ, 2), S("T1"), S("T2")), S("T1*T2"));
}

TEST(EvalP, AgreesWithDehomogenizedQuotientInCompletion) {
  std::mt19937_64 rng(5);
  const SeriesPoly q = Qp("(1 + T2)*Z^3 - T1*Z + T1^2 - T2");
  const HomogForm p = homogenize(q);
  const HatPoly qh = embed_poly(q);
  for (int trial = 0; trial < 10; ++trial) {
    const Series x = random_series(kQ, 2, 4, 0.5, rng());
    const Series y = random_series(kQ, 2, 4, 0.5, rng());
    if (!ord(y).is_exact()) continue;
    const CompletedElement ey = embed_blowup(y);
    const CompletedElement ratio = divide(embed_blowup(x), ey, 12);
    const CompletedElement rhs = ey.pow(3) * eval_hat(qh, ratio);
    const CompletedElement lhs = embed_blowup(eval_P(p, x, y));
    const int prec = std::min(lhs.tprec(), rhs.tprec());
    EXPECT_EQ(lhs.truncated(prec), rhs.truncated(prec));
  }
}

TEST(GradedOrder, Examples) {
  const SeriesPoly q = Qp("Z^2 - T1^3");
  EXPECT_EQ(graded_order(q, {S("T1^2"), S("0")}), OrderValue::exact(2));
  EXPECT_EQ(graded_order(q, {S("0"), S("1")}), OrderValue::exact(1));
  EXPECT_EQ(graded_order(q, {S("T1"), S("T2^2")}), OrderValue::exact(1));
  EXPECT_EQ(graded_order(q, {S("0 @4"), S("T1^4")}), OrderValue::at_least(4));
  EXPECT_THROW(graded_order(Qp("Z^2 - T1^2"), {S("1"), S("0")}), std::domain_error);
}

TEST(GradedOrder, LinearFormClosedForm) {
  // ord_O(x - Zbar y) = min(ord x, ord y + 1).
  const SeriesPoly q = Qp("Z^3 - T1^4 - T2^5");
  const QuotientRing ring(q);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Series x = random_series(kQ, 2, 6, 0.3, rng());
    const Series y = random_series(kQ, 2, 6, 0.3, rng());
    const auto g = ring.sub(ring.from_series(x), ring.mul(ring.from_series(y), ring.zbar()));
    EXPECT_EQ(graded_order(q, g), min_order(ord(x), ord(y) + OrderValue::exact(1)));
  }
}

TEST(QuotientRing, RejectsNonMonic) { EXPECT_THROW(QuotientRing(Qp("T1*Z^2 + 1")), std::invalid_argument); }

// Multiplies two polynomials in Z with series coefficients and reduces
// modulo a monic Q by schoolbook long division.
std::vector<Series> naive_reduce(std::vector<Series> c, const SeriesPoly& q) {
  const int d = q.degree();
  while (static_cast<int>(c.size()) > d) {
    const Series top = c.back();
    c.pop_back();
    const int shift = static_cast<int>(c.size()) - d;
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(shift + i)] -= top * q.coeff(i);
  }
  return c;
}

TEST(Cofactor, ClosedForms) {
  const SeriesPoly q = Qp("Z^2 + T1*T2*Z - T1^3");
  const QuotientRing ring(q);
  const auto ex = cofactor_expand(q, S("T1 + T2^2"), S("T2"));
  // b_{d-1} = a_d.
  EXPECT_TRUE(QuotientRing::congruent(ex.b[1], ring.from_series(q.leading())));
  // b_0 = a_1 + Zbar a_2.
  EXPECT_TRUE(QuotientRing::congruent(
      ex.b[0], ring.add(ring.from_series(q.coeff(1)), ring.mul(ring.zbar(), ring.from_series(q.coeff(2))))));
  EXPECT_TRUE(ex.recurrence_holds);
  EXPECT_TRUE(ex.identity_holds);
  EXPECT_TRUE(ex.expansion_holds);
}

TEST(Cofactor, IdentityAgainstNaiveExpansion) {
  std::mt19937_64 rng(23);
  for (const Field& field : {kQ, Field::prime(2)}) {
    for (int d : {2, 3}) {
      for (int trial = 0; trial < 8; ++trial) {
        std::vector<Series> a;
        for (int i = 0; i < d; ++i) a.push_back(random_series(field, 2, 8, 0.3, rng()));
        a.push_back(Series::constant(field, 2, field.one()));
        const SeriesPoly q(a);
        const Series x = random_series(field, 2, 8, 0.3, rng());
        const Series y = random_series(field, 2, 8, 0.3, rng());
        const auto ex = cofactor_expand(q, x, y, std::nullopt, ord(x).is_exact());
        // (x - Z y) * h as a polynomial in Z, reduced by long division.
        std::vector<Series> prod(static_cast<std::size_t>(d + 1), Series(field, 2, kExactPrec));
        for (int k = 0; k < d; ++k) {
          prod[static_cast<std::size_t>(k)] += x * ex.h[static_cast<std::size_t>(k)];
          prod[static_cast<std::size_t>(k + 1)] -= y * ex.h[static_cast<std::size_t>(k)];
        }
        const auto reduced = naive_reduce(prod, q);
        EXPECT_TRUE(congruent(reduced[0], ex.p_value));
        for (int k = 1; k < d; ++k) EXPECT_TRUE(reduced[static_cast<std::size_t>(k)].is_zero());
        EXPECT_TRUE(ex.identity_holds);
        EXPECT_TRUE(ex.recurrence_holds);
        if (ord(x).is_exact()) EXPECT_TRUE(ex.expansion_holds);
      }
    }
  }
}

TEST(Cofactor, FSequenceNeedsExactOrder) {
  EXPECT_THROW(cofactor_expand(Qp("Z^2 - T1^3"), S("0 @5"), S("T1")), PrecisionError);
  EXPECT_NO_THROW(cofactor_expand(Qp("Z^2 - T1^3"), S("0 @5"), S("T1"), std::nullopt, false));
}

TEST(Cofactor, IdentityInCompletionWithRoot) {
  const SeriesPoly q = Qp("Z^2 - T1^2 - T2^3");
  const auto root = hensel_lift(q, C("t1*T2"), 12).root;
  const auto ex = cofactor_expand(q, S("T1 + T2"), S("1 + T1*T2"), root);
  ASSERT_TRUE(ex.completion_identity_holds.has_value());
  EXPECT_TRUE(*ex.completion_identity_holds);
  EXPECT_THROW(cofactor_expand(q, S("T1"), S("1"), C("T2 @8")), PrecisionError);
}

TEST(Hensel, BinomialSeries) {
  // sqrt(1 + T) = sum binom(1/2, k) T^k.
  const SeriesPoly q = Qp("Z^2 - 1 - T1", 1);
  const auto res = hensel_lift(q, C("1", 1), 8);
  mpq_class binom = 1;
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(res.root.coefficient(k), RatFunc::constant(kQ, 0, kQ.from_rational(binom))) << k;
    binom *= mpq_class(1, 2) - k;
    binom /= k + 1;
  }
}

TEST(Hensel, ResidualExcessDoubles) {
  const auto res = hensel_lift(Qp("Z^2 - (T1^2 + T2^3)"), C("t1*T2"), 32);
  std::vector<int> residuals;
  for (const auto& st : res.steps) residuals.push_back(st.residual.bound());
  ASSERT_GE(residuals.size(), 6u);
  EXPECT_EQ(std::vector<int>(residuals.begin(), residuals.begin() + 5), (std::vector<int>{3, 4, 6, 10, 18}));
  EXPECT_GE(residuals.back(), 32);
  for (std::size_t i = 1; i < res.steps.size(); ++i) {
    const int s = res.steps[i].derivative.value();
    EXPECT_GE(residuals[i] - 2 * s, 2 * (residuals[i - 1] - 2 * s));
  }
}

TEST(Hensel, RescaledRoot) {
  // Z = T2 W turns Z^d - (T1^d + T2^(d+1)) into W^d - (t1^d + T2).
  for (int d : {2, 3}) {
    HatPoly g(static_cast<std::size_t>(d + 1), C("0"));
    g[0] = C("-t1^" + std::to_string(d) + " - T2");
    g[static_cast<std::size_t>(d)] = C("1");
    const auto res = hensel_lift(g, C("t1"), 10);
    EXPECT_FALSE(ord_hat(eval_hat(g, res.root)).is_exact());
    EXPECT_GE(ord_hat(eval_hat(g, res.root)).bound(), 10);
    // The same root scaled back solves the original polynomial.
    const SeriesPoly q = Qp("Z^" + std::to_string(d) + " - (T1^" + std::to_string(d) + " + T2^" + std::to_string(d + 1) + ")");
    EXPECT_GE(ord_hat(eval_hat(embed_poly(q), res.root.shifted(1))).bound(), 10 + d);
  }
}

TEST(Hensel, FailuresAreDiagnosed) {
  try {
    hensel_lift(Qp("Z^2 - T1^3"), C("t1*T2"), 10);
    FAIL();
  } catch (const HenselError& e) {
    EXPECT_EQ(e.residual, OrderValue::exact(2));
    EXPECT_EQ(e.derivative, OrderValue::exact(1));
  }
  const Field f2 = Field::prime(2);
  try {
    hensel_lift(Qp("Z^2 - (T1^2 + T2^3)", 2, f2), C("t1*T2", 2, f2), 10);
    FAIL();
  } catch (const HenselError& e) {
    EXPECT_NE(std::string(e.what()).find("inseparable residual"), std::string::npos);
  }
}

TEST(RootSplit, ProductOfLinearFactors) {
  const auto rs = root_split(Qp("Z^2 - (T1 + T2)*Z + T1*T2"), 10);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_EQ(rs.rootless_degree, 0);
  std::vector<CompletedElement> zs;
  for (const auto& r : rs.roots) {
    EXPECT_EQ(r.multiplicity, 1);
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(r.coprime);
    zs.push_back(r.z);
  }
  EXPECT_TRUE(std::find(zs.begin(), zs.end(), C("t1*T2")) != zs.end());
  EXPECT_TRUE(std::find(zs.begin(), zs.end(), C("T2")) != zs.end());
  for (const auto& r : rs.roots) {
    if (r.z == C("t1*T2")) {
      EXPECT_EQ(*r.u, S("T1"));
      EXPECT_EQ(*r.v, S("1"));
    }
  }
}

TEST(RootSplit, SquareDifference) {
  const auto rs = root_split(Qp("Z^2 - T1^2"), 10);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_EQ(rs.rootless_degree, 0);
  EXPECT_TRUE((rs.roots[0].z == C("t1*T2") && rs.roots[1].z == C("-t1*T2")) ||
              (rs.roots[1].z == C("t1*T2") && rs.roots[0].z == C("-t1*T2")));
}

TEST(RootSplit, NoRoots) {
  const auto none = root_split(Qp("Z^2 + 1"), 10);
  EXPECT_TRUE(none.roots.empty());
  EXPECT_EQ(none.rootless_degree, 2);
  for (int d : {2, 3}) {
    const auto rs = root_split(Qp("Z^" + std::to_string(d) + " - T1^" + std::to_string(d + 1)), 10);
    EXPECT_TRUE(rs.roots.empty());
    EXPECT_EQ(rs.rootless_degree, d);
    ASSERT_FALSE(rs.notes.empty());
  }
}

TEST(RootSplit, IrrationalRootsAreLifted) {
  for (int d : {2, 3}) {
    const std::string ds = std::to_string(d);
    const SeriesPoly q = Qp("Z^" + ds + " - (T1^" + ds + " + T2^" + std::to_string(d + 1) + ")");
    const auto rs = root_split(q, 10);
    // Over QQ: two real square roots for d = 2, one cube root for d = 3.
    EXPECT_EQ(static_cast<int>(rs.roots.size()), d == 2 ? 2 : 1);
    EXPECT_EQ(rs.rootless_degree, d == 2 ? 0 : 2);
    for (const auto& r : rs.roots) {
      EXPECT_FALSE(r.exact);
      EXPECT_FALSE(ord_hat(eval_hat(embed_poly(q), r.z)).is_exact());
    }
  }
}

TEST(RootSplit, MultiplicityAndReconstruction) {
  const SeriesPoly q = Qp("(Z - T1)^2*(Z + T2)");
  const auto rs = root_split(q, 10);
  int total = 0;
  HatPoly product = rs.remainder;
  for (const auto& r : rs.roots) {
    total += r.multiplicity;
    for (int k = 0; k < r.multiplicity; ++k) {
      HatPoly next(product.size() + 1, C("0"));
      for (std::size_t i = 0; i < product.size(); ++i) {
        next[i + 1] += product[i];
        next[i] -= r.z * product[i];
      }
      product = next;
    }
  }
  EXPECT_EQ(total, 3);
  const HatPoly expect = embed_poly(q);
  ASSERT_EQ(product.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(product[i], expect[i]);
}

TEST(RootSplit, UserSeeds) {
  const auto rs = root_split(Qp("Z^2 - (T1^2 + T2^3)"), 12, SeedStrategy::kUserSeeds, {C("-t1*T2")});
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_EQ(rs.roots[0].z.coefficient(1), parse_ratfunc("-t1", kQ, 1));
  EXPECT_EQ(rs.rootless_degree, 1);
}

TEST(ToFraction, Reconstructs) {
  const auto uv = to_fraction(C("(1/t1)*T2 + T2^2"));
  ASSERT_TRUE(uv.has_value());
  // T2/T1 * T2 + T2^2 = (T2^2 + T1 T2^2) / T1.
  EXPECT_EQ(uv->first, S("T2^2 + T1*T2^2"));
  EXPECT_EQ(uv->second, S("T1"));
  EXPECT_FALSE(to_fraction(C("T2 @4")).has_value());
}

}  // namespace
}  // namespace serival
