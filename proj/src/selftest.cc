#include "serival/selftest.h"

#include <random>

#include "serival/algebra.h"
#include "serival/lab.h"
#include "serival/membership.h"

namespace serival {
namespace {

SelftestCheck ring_laws() {
  std::mt19937_64 rng(11);
  int bad = 0;
  for (const Field& f : {Field::prime(2), Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 20; ++t) {
      const Series a = random_series(f, 2, 6, 0.4, rng());
      const Series b = random_series(f, 2, 6, 0.4, rng());
      const Series c = random_series(f, 2, 6, 0.4, rng());
      if (!congruent((a * b) * c, a * (b * c))) ++bad;
      if (!congruent(a * (b + c), a * b + a * c)) ++bad;
      if (!congruent(a * b, b * a)) ++bad;
    }
  }
  return {"series ring laws", bad == 0, std::to_string(bad) + " violations in 180 checks"};
}

SelftestCheck cofactor_identity() {
  std::mt19937_64 rng(29);
  int cases = 0;
  int bad = 0;
  for (const Field& f : {Field::prime(2), Field::rationals()}) {
    for (int d : {2, 3}) {
      for (int t = 0; t < 10; ++t) {
        std::vector<Series> a;
        for (int i = 0; i < d; ++i) a.push_back(random_series(f, 2, 8, 0.3, rng()));
        a.push_back(Series::constant(f, 2, f.one()));
        const Series x = random_series(f, 2, 8, 0.3, rng());
        const Series y = random_series(f, 2, 8, 0.3, rng());
        const bool exact_order = ord(x).is_exact();
        const auto ex = cofactor_expand(SeriesPoly(a), x, y, std::nullopt, exact_order);
        ++cases;
        if (!ex.identity_holds || !ex.recurrence_holds || (exact_order && !ex.expansion_holds)) ++bad;
      }
    }
  }
  return {"cofactor identity", bad == 0, std::to_string(bad) + " of " + std::to_string(cases) + " failed"};
}

SelftestCheck hensel() {
  const Field q = Field::rationals();
  const auto res = hensel_lift(parse_series_poly("Z^2 - (T1^2 + T2^3)", q, 2), parse_completed("t1*T2", q, 2), 32);
  bool ok = res.steps.back().residual.bound() >= 32;
  std::string detail = "residual orders";
  for (std::size_t i = 0; i < res.steps.size(); ++i) {
    detail += " " + res.steps[i].residual.to_string();
    if (i > 0) {
      const int s = res.steps[i].derivative.value();
      ok = ok && res.steps[i].residual.bound() - 2 * s >= 2 * (res.steps[i - 1].residual.bound() - 2 * s);
    }
  }
  return {"hensel convergence", ok, detail};
}

SelftestCheck membership() {
  std::mt19937_64 rng(5);
  const Field f = Field::prime(3);
  int bad = 0;
  for (int t = 0; t < 20; ++t) {
    const Series g1 = random_series(f, 2, 6, 0.5, rng()).truncated(6);
    const Series g2 = random_series(f, 2, 6, 0.5, rng()).truncated(6);
    const Series e1 = random_series(f, 2, 6, 0.5, rng()) * Series::variable(f, 2, 0);
    const Series e2 = random_series(f, 2, 6, 0.5, rng()) * Series::variable(f, 2, 1);
    const auto w = in_ideal_mod((e1 * g1 + e2 * g2).truncated(6), {g1, g2}, 1, 6);
    if (!w || !w->verified) ++bad;
  }
  const Series one = Series::constant(f, 2, f.one());
  if (in_ideal_mod(one, {Series::variable(f, 2, 0), Series::variable(f, 2, 1)}, 0, 3)) ++bad;
  return {"membership witnesses", bad == 0, std::to_string(bad) + " failures in 21 problems"};
}

SelftestCheck envelope_and_reproducibility() {
  ScanParams p;
  p.field = Field::prime(2);
  p.prec = 3;
  p.workers = 1;
  const HomogForm form = parse_homog("X^2 - T1^3*Y^2", p.field, 2);
  const ScanReport one = lojasiewicz_scan(form, p);
  bool ok = one.verdict == Verdict::kPass;
  for (const auto& [k, v] : one.table.fit_points()) ok = ok && envelope_holds(one.fit, k, v);
  p.workers = 3;
  ok = ok && report_json(lojasiewicz_scan(form, p)) == report_json(one);
  p.mode = ScanMode::kSampled;
  p.samples = 500;
  p.prec = 4;
  const std::string sampled = report_csv(lojasiewicz_scan(form, p));
  p.workers = 1;
  ok = ok && report_csv(lojasiewicz_scan(form, p)) == sampled;
  return {"envelope soundness and reproducibility", ok, "F2 prec 3 exhaustive, prec 4 sampled"};
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  return {ring_laws(), cofactor_identity(), hensel(), membership(), envelope_and_reproducibility()};
}

}  // namespace serival
