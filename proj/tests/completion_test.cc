#include <random>

#include <gtest/gtest.h>

#include "serival/completion.h"
#include "serival/error.h"
#include "serival/parse.h"

namespace serival {
namespace {

const Field kQ = Field::rationals();

Series S(const std::string& text, int nvars = 2, const Field& field = kQ) {
  return parse_series(text, field, nvars);
}

CompletedElement C(const std::string& text, int nvars = 2, const Field& field = kQ) {
  return parse_completed(text, field, nvars);
}

RatFunc R(const std::string& text, int nt = 1) { return parse_ratfunc(text, kQ, nt); }

TEST(Embed, Examples) {
  EXPECT_EQ(embed_blowup(S("T1^2 + T2^3")), C("(t1^2)*T2^2 + T2^3"));
  EXPECT_EQ(embed_blowup(S("T1 - T2")), C("(t1 - 1)*T2"));
  EXPECT_EQ(embed_blowup(S("T1*T2", 3)), C("(t1*t2)*T3^2", 3));
  // N = 1 is the identity embedding.
  EXPECT_EQ(embed_blowup(S("1 + T1^2 @5", 1)), C("1 + T1^2 @5", 1));
}

TEST(Embed, KeepsPrecision) {
  const CompletedElement e = embed_blowup(S("T1 + T2^2 @4"));
  EXPECT_EQ(e.tprec(), 4);
  EXPECT_EQ(e.coefficient(1), R("t1"));
}

TEST(OrdHat, Examples) {
  EXPECT_EQ(ord_hat(C("(t1^2)*T2^2 + T2^3")), OrderValue::exact(2));
  EXPECT_EQ(ord_hat(C("0 @7")), OrderValue::at_least(7));
}

TEST(HatArith, DivisionsMissingFromSeriesRing) {
  const CompletedElement q = embed_blowup(S("T1")) / embed_blowup(S("T2"));
  EXPECT_EQ(q, C("t1"));
  EXPECT_TRUE(q.in_valuation_ring());
  const CompletedElement r = embed_blowup(S("T2")) / embed_blowup(S("T1"));
  EXPECT_EQ(r, C("1/t1"));
  EXPECT_EQ(r.coefficient(0), R("1/t1"));
}

TEST(HatArith, LaurentQuotientIsFlagged) {
  const CompletedElement q = embed_blowup(S("T1")) / embed_blowup(S("T2^2"));
  EXPECT_EQ(q.low_index(), -1);
  EXPECT_FALSE(q.in_valuation_ring());
}

TEST(HatArith, GeometricSeries) {
  const CompletedElement q = divide(C("1"), C("1 - T2"), 5);
  EXPECT_EQ(q, C("1 + T2 + T2^2 + T2^3 + T2^4 @5"));
  EXPECT_THROW(divide(C("1"), C("0 @3")), PrecisionError);
  EXPECT_THROW(divide(C("1"), C("0")), DivisionByZero);
}

TEST(HatArith, ProductPrecision) {
  const CompletedElement p = C("T2 @4") * C("T2^2 @5");
  EXPECT_EQ(p.tprec(), 6);
  EXPECT_EQ(p, C("T2^3 @6"));
}

TEST(HatArith, DegreeBudget) {
  const int saved = degree_budget();
  set_degree_budget(4);
  EXPECT_THROW(C("t1^3") * C("t1^3"), DegreeBudgetExceeded);
  set_degree_budget(saved);
}

TEST(Parse, RoundTrip) {
  for (const std::string text : {"(t1^2)*T2^2 + T2^3 @8", "(-1/2)*T2^-1 + 1", "0 @3", "T2"}) {
    const CompletedElement e = C(text);
    EXPECT_EQ(C(e.to_string()), e) << text;
  }
  EXPECT_EQ(C("t1^2*TN^2 + TN^3"), C("(t1^2)*T2^2 + T2^3"));
  EXPECT_EQ(C("T1"), C("t1*T2"));
  EXPECT_EQ(C("(t1^2)*T2^2 + T2^3 @8").to_string(), "(t1^2)*T2^2 + T2^3 @8");
  EXPECT_THROW(C("t2"), ParseError);
}

class EmbedProperties : public ::testing::TestWithParam<int> {};

TEST_P(EmbedProperties, HomomorphismAndOrders) {
  const int nvars = GetParam();
  const Field field = nvars == 2 ? kQ : Field::prime(3);
  std::mt19937_64 rng(nvars * 7);
  for (int trial = 0; trial < 30; ++trial) {
    const Series a = random_series(field, nvars, 2 + static_cast<int>(rng() % 5), 0.5, rng());
    const Series b = random_series(field, nvars, 2 + static_cast<int>(rng() % 5), 0.5, rng());
    EXPECT_EQ(embed_blowup(a + b), embed_blowup(a) + embed_blowup(b));
    EXPECT_EQ(embed_blowup(a * b), embed_blowup(a) * embed_blowup(b));
    EXPECT_EQ(ord_hat(embed_blowup(a)), ord(a));
    // Injective: the difference embeds to zero only if it is zero.
    EXPECT_EQ(embed_blowup(a - b).is_zero(), (a - b).is_zero());
    if (ord(a).is_exact() && ord(b).is_exact()) {
      // V_N criterion: x/y lies in the valuation ring iff ord x >= ord y.
      const CompletedElement q = divide(embed_blowup(a), embed_blowup(b), 6);
      EXPECT_EQ(q.in_valuation_ring(), ord(a).value() >= ord(b).value());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Vars, EmbedProperties, ::testing::Values(2, 3));

TEST(Distance, ExactHit) {
  const CompletedElement z = embed_blowup(S("T1")) / embed_blowup(S("T2"));
  EXPECT_TRUE(distance(z, S("T1"), S("T2")).is_infinite());
  const CompletedElement zt = C("t1 @10") / C("1 @10");
  const OrderValue d = distance(zt, S("T1"), S("T2"));
  EXPECT_FALSE(d.is_exact());
  EXPECT_EQ(d.bound(), 10);
}

TEST(Distance, AgainstZero) { EXPECT_EQ(distance(C("t1*T2"), S("0"), S("1")), OrderValue::exact(1)); }

TEST(Distance, SquareRootOfT1SquaredPlusT2Cubed) {
  // z = t1 T2 sqrt(1 + T2/t1^2) = sum_k binom(1/2, k) t1^(1-2k) T2^(k+1),
  // built from the binomial series directly.
  const int digits = 8;
  std::map<int, RatFunc> coeffs;
  mpq_class binom = 1;
  for (int k = 0; k + 1 < digits; ++k) {
    const RatFunc tpow = R("t1").pow(1 - 2 * k);
    coeffs.emplace(k + 1, tpow.scaled(kQ.from_rational(binom)));
    binom *= mpq_class(1, 2) - k;
    binom /= k + 1;
  }
  const CompletedElement z = CompletedElement::from_coefficients(kQ, 2, coeffs, digits);
  EXPECT_EQ(z * z, embed_blowup(S("T1^2 + T2^3")).truncated((z * z).tprec()));
  EXPECT_EQ(distance(z, S("T1"), S("1")), OrderValue::exact(2));
  EXPECT_EQ(z.coefficient(2), R("1/(2*t1)"));
}

}  // namespace
}  // namespace serival
