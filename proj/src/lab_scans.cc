#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "serival/error.h"
#include "serival/lab.h"
#include "serival/membership.h"

namespace serival {
namespace {

std::vector<std::pair<int, int>> bounded_points(const BucketTable& t) { return t.fit_points(); }

bool nondecreasing(const std::vector<std::pair<int, int>>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].second < pts[i - 1].second) return false;
  }
  return true;
}

// min(ord x, ord y) when the truncations already decide it.
std::optional<int> decided_min(const OrderValue& ox, const OrderValue& oy) {
  if (ox.is_exact() && ox.value() <= oy.bound()) return ox.value();
  if (oy.is_exact() && oy.value() <= ox.bound()) return oy.value();
  return std::nullopt;
}

void add_counters(ScanCounters& into, const ScanCounters& c) {
  into.enumerated += c.enumerated;
  into.at_least += c.at_least;
  into.origin += c.origin;
  into.filtered += c.filtered;
  into.classes += c.classes;
}

std::string substitute(std::string text, const std::string& key, int value) {
  const std::string pattern = "{" + key + "}";
  for (std::size_t pos = text.find(pattern); pos != std::string::npos; pos = text.find(pattern, pos)) {
    text.replace(pos, pattern.size(), std::to_string(value));
  }
  return text;
}

}  // namespace

SolutionLines solution_lines(const HomogForm& p, int tprec) {
  SolutionLines out;
  const Field& field = p.coeffs.front().field();
  const int n = p.coeffs.front().nvars();
  const int d = p.degree();
  if (p.coeff(d).is_zero()) {
    out.lines.emplace_back(Series::constant(field, n, field.one()), Series(field, n, kExactPrec));
  }
  const SeriesPoly q = dehomogenize(p);
  if (q.degree() < 1) return out;
  try {
    const RootSplit split = root_split(q, tprec);
    for (const auto& r : split.roots) {
      if (r.exact && r.u && r.v) out.lines.emplace_back(*r.u, *r.v);
    }
    out.notes = split.notes;
  } catch (const std::exception& e) {
    out.complete = false;
    out.notes.push_back(std::string("root split failed: ") + e.what());
  }
  return out;
}

BestApproximant best_numerator(const CompletedElement& z, const Series& y, const ScanParams& params) {
  BestApproximant best;
  const Field& field = y.field();
  const int n = y.nvars();
  const int cutoff = params.effective_cutoff();
  const OrderValue oy = ord(y);
  best.x = Series(field, n, params.prec);
  if (!oy.is_exact()) {
    best.distance = OrderValue::at_least(0);
    return best;
  }

  // Pull the T_N^j coefficient back to a degree-j homogeneous x_j with
  // admissible coefficients; false when impossible.
  auto pull = [&](const RatFunc& c, int j, std::vector<Poly::Term>& terms) {
    if (j >= cutoff || !c.is_polynomial()) return false;
    const Scalar dinv = c.den().constant_term().inverse();
    std::vector<Poly::Term> add;
    for (const auto& [m, coef] : c.num().terms()) {
      if (m.degree() > j) return false;
      const Scalar v = coef * dinv;
      if (field.is_rational()) {
        const mpq_class& q = v.rational();
        if (q.get_den() != 1 || abs(q.get_num()) > params.height) return false;
      }
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      for (int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = m.exponent(i);
      e[static_cast<std::size_t>(n - 1)] = j - m.degree();
      add.emplace_back(Monomial::from_exponents(e), v);
    }
    terms.insert(terms.end(), add.begin(), add.end());
    return true;
  };

  const CompletedElement zt = z.truncated(std::min(z.tprec(), params.prec));
  const CompletedElement yz = embed_blowup(y) * zt;
  const int limit = std::min(yz.tprec(), params.prec);
  std::vector<Poly::Term> terms;
  bool failed = false;
  for (const auto& [j, c] : yz.coefficients()) {
    if (j >= limit) break;
    if (j < 0 || !pull(c, j, terms)) {
      best.distance = OrderValue::exact(j - oy.value());
      failed = true;
      break;
    }
  }
  if (!failed) best.distance = OrderValue::at_least(limit - oy.value());
  best.x = Series(Poly::from_terms(field, n, terms), params.prec);

  if (!failed && z.is_exact()) {
    // An exact z may equal x / y outright.
    const CompletedElement exact = embed_blowup(Series::exact(y.poly())) * z;
    if (exact.is_exact()) {
      std::vector<Poly::Term> all;
      bool ok = true;
      for (const auto& [j, c] : exact.coefficients()) {
        if (j < 0 || !pull(c, j, all)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        best.exact_hit = true;
        best.x = Series::exact(Poly::from_terms(field, n, all));
        best.distance = OrderValue::infinite();
      }
    }
  }
  return best;
}

ScanReport dioph_scan(const SeriesPoly& q, const CompletedElement& z, const ScanParams& params) {
  const OrderValue res = ord_hat(eval_hat(embed_poly(q), z));
  if (res.is_exact() && res.value() < std::min(z.tprec(), params.prec)) {
    throw std::invalid_argument("z is not a root of Q (residual order " + res.to_string() + ")");
  }
  ScanReport rep;
  rep.kind = "dioph";
  rep.subject = q.to_string();
  rep.params = params;
  rep.space = params.pair_space();

  const PairEvaluator eval = [&](const Series& y, const Series&, bool leaf) {
    const OrderValue oy = ord(y);
    if (!oy.is_exact()) return leaf ? PairOutcome::origin() : PairOutcome::open();
    const BestApproximant b = best_numerator(z, y, params);
    if (leaf && b.exact_hit) return PairOutcome::unbounded(oy.value());
    if (b.distance.is_exact()) return PairOutcome::resolved(oy.value(), b.distance.value());
    return leaf ? PairOutcome::at_least(oy.value()) : PairOutcome::open();
  };
  EngineResult er = run_pair_scan(params, eval, 1);
  // The engine enumerates y; store the optimal numerator as the witness.
  for (const auto& [k, b] : er.table.buckets()) {
    if (b.unbounded || b.has_value) {
      const BestApproximant best = best_numerator(z, b.wx, params);
      if (b.unbounded) {
        rep.table.record_unbounded(k, best.x, b.wx, b.count - b.censored);
      } else {
        rep.table.record(k, b.value, best.x, b.wx, b.count - b.censored);
      }
    }
    if (b.censored > 0) rep.table.record_censored(k, b.censored);
  }
  rep.counters = er.counters;

  const auto pts = bounded_points(rep.table);
  rep.fit = fit_envelope(pts, 1.0);
  rep.constants["a"] = rep.fit.slope;
  rep.constants["a_raw"] = rep.fit.raw_slope;
  rep.constants["minus_log_K"] = rep.fit.intercept;
  bool unbounded = false;
  for (const auto& [k, b] : rep.table.buckets()) unbounded = unbounded || b.unbounded;
  bool holds = true;
  for (const auto& [k, v] : pts) holds = holds && envelope_holds(rep.fit, k, v);
  if (unbounded) {
    rep.verdict = Verdict::kNotApplicable;
    rep.notes.push_back("exact hit: z is a quotient of scanned elements");
  } else if (er.budget_exceeded || pts.empty()) {
    rep.inconclusive = true;
    rep.verdict = Verdict::kInconclusive;
    if (pts.empty()) rep.notes.push_back("no finite distance observed at this precision");
  } else {
    rep.verdict = holds ? Verdict::kPass : Verdict::kFail;
  }
  if (er.budget_exceeded) rep.notes.push_back("budget exceeded after " + std::to_string(er.counters.classes) + " classes");
  return rep;
}

ScanReport lojasiewicz_scan(const HomogForm& p, const ScanParams& params) {
  ScanReport rep;
  rep.kind = "loja";
  rep.subject = p.to_string();
  rep.params = params;
  rep.space = params.pair_space();
  const SolutionLines lines = solution_lines(p, params.tprec);
  if (!lines.complete) rep.notes.push_back("warning: solution lines unknown; unfiltered pairs may inflate the envelope");
  for (const auto& note : lines.notes) rep.notes.push_back(note);

  const PairEvaluator eval = [&](const Series& x, const Series& y, bool leaf) {
    const OrderValue ox = ord(x), oy = ord(y);
    if (!ox.is_exact() && !oy.is_exact()) return leaf ? PairOutcome::origin() : PairOutcome::open();
    const auto m = decided_min(ox, oy);
    if (!m) return PairOutcome::open();
    if (leaf) {
      for (const auto& [u, v] : lines.lines) {
        if (!ord(u * y - v * x).is_exact()) return PairOutcome::filtered();
      }
    }
    const OrderValue op = ord(eval_P(p, x, y));
    if (op.is_exact()) return PairOutcome::resolved(*m, op.value());
    return leaf ? PairOutcome::at_least(*m) : PairOutcome::open();
  };
  EngineResult er = run_pair_scan(params, eval);
  rep.table = std::move(er.table);
  rep.counters = er.counters;

  const auto pts = bounded_points(rep.table);
  rep.fit = fit_envelope(pts);
  rep.constants["a"] = rep.fit.slope;
  rep.constants["b"] = rep.fit.intercept;
  rep.monotone = nondecreasing(pts);
  if (!rep.monotone) rep.notes.push_back("bucket maxima are not nondecreasing");
  bool holds = true;
  for (const auto& [k, v] : pts) holds = holds && envelope_holds(rep.fit, k, v);
  if (er.budget_exceeded) {
    rep.inconclusive = true;
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back("budget exceeded after " + std::to_string(er.counters.classes) + " classes");
  } else if (!holds) {
    rep.verdict = Verdict::kFail;
  } else if (!lines.lines.empty()) {
    rep.verdict = Verdict::kDegenerate;
    rep.notes.push_back(std::to_string(lines.lines.size()) + " rational solution line(s)");
  } else {
    rep.verdict = Verdict::kPass;
  }
  return rep;
}

ScanReport izumi_probe(const SeriesPoly& q, const ScanParams& params) {
  ScanReport rep;
  rep.kind = "izumi";
  rep.subject = q.to_string();
  rep.params = params;
  rep.space = params.pair_space();
  const QuotientRing ring(q);
  const HomogForm p = homogenize(q);
  const int d = q.degree();
  const OrderValue oa0 = ord(q.coeff(0));

  // Case 2 of the proof: ord P > ord(a0 y^d). Kept as key d ord y + ord a0
  // -> max ord P, checked against the fitted (A, B) afterwards.
  std::mutex mu;
  std::map<int, int> case2;

  const PairEvaluator eval = [&](const Series& x, const Series& y, bool leaf) {
    const OrderValue ox = ord(x), oy = ord(y);
    if (!ox.is_exact() && !oy.is_exact()) return leaf ? PairOutcome::origin() : PairOutcome::open();
    try {
      const CofactorExpansion cof = cofactor_expand(q, x, y, std::nullopt, false);
      const auto g = ring.sub(ring.from_series(x), ring.mul(ring.from_series(y), ring.zbar()));
      const OrderValue s1 = graded_order(q, g);
      const OrderValue s2 = graded_order(q, cof.h);
      const OrderValue op = ord(cof.p_value);
      if (s1.is_exact() && s2.is_exact() && op.is_exact()) {
        if (oy.is_exact() && oa0.is_exact() && op.value() > oa0.value() + d * oy.value()) {
          const int key = d * oy.value() + oa0.value();
          std::lock_guard lock(mu);
          auto [it, fresh] = case2.try_emplace(key, op.value());
          if (!fresh) it->second = std::max(it->second, op.value());
        }
        return PairOutcome::resolved(s1.value() + s2.value(), op.value());
      }
    } catch (const PrecisionError&) {
    }
    return leaf ? PairOutcome::at_least() : PairOutcome::open();
  };
  EngineResult er = run_pair_scan(params, eval);
  rep.table = std::move(er.table);
  rep.counters = er.counters;
  (void)p;

  const auto pts = bounded_points(rep.table);
  rep.fit = fit_envelope(pts, 1.0, 0.0);
  const double A = rep.fit.slope, B = rep.fit.intercept;
  rep.constants["A"] = A;
  rep.constants["B"] = B;
  long checked = 0, violated = 0;
  for (const auto& [k, v] : case2) {
    ++checked;
    if (v > A * k + B + 1e-9) ++violated;
  }
  rep.constants["case2_keys_checked"] = static_cast<double>(checked);
  rep.constants["case2_violations"] = static_cast<double>(violated);
  bool holds = true;
  for (const auto& [k, v] : pts) holds = holds && envelope_holds(rep.fit, k, v);
  if (er.budget_exceeded || pts.empty()) {
    rep.inconclusive = true;
    rep.verdict = Verdict::kInconclusive;
    if (er.budget_exceeded) rep.notes.push_back("budget exceeded");
  } else {
    rep.verdict = holds && violated == 0 ? Verdict::kPass : Verdict::kFail;
  }
  return rep;
}

ScanReport artin_estimate(const HomogForm& p, const ScanParams& params, const ArtinRange& range) {
  if (range.prec_offset < 0 || range.first < 0 || range.last < range.first) {
    throw std::invalid_argument("bad i range");
  }
  if (range.prec_offset == 0 && range.last + 1 >= params.prec) {
    throw std::invalid_argument("i range exceeds precision " + std::to_string(params.prec));
  }
  ScanReport rep;
  rep.kind = "artin";
  rep.subject = p.to_string();
  rep.params = params;
  const SolutionLines lines = solution_lines(p, params.tprec);
  if (!lines.complete) rep.notes.push_back("warning: solution lines unknown");

  int max_prec = params.prec;
  for (int i = range.first; i <= range.last; ++i) {
    ScanParams pp = params;
    if (range.prec_offset > 0) pp.prec = i + range.prec_offset;
    if (params.cutoff >= 0) pp.cutoff = std::min(params.cutoff, pp.prec);
    max_prec = pp.prec;
    const PairEvaluator eval = [&, i](const Series& x, const Series& y, bool leaf) {
      const OrderValue ox = ord(x), oy = ord(y);
      const bool low = (ox.is_exact() && ox.value() <= i) || (oy.is_exact() && oy.value() <= i);
      if (!low) {
        // x, y ≡ 0 mod m^(i+1): the origin is a nearby solution.
        if (ox.bound() >= i + 1 && oy.bound() >= i + 1) return PairOutcome::filtered();
        return PairOutcome::open();
      }
      for (const auto& [u, v] : lines.lines) {
        const OrderValue ow = ord(u * y - v * x);
        const int gen_order = std::min(ord(u).bound(), ord(v).bound());
        if (ow.is_exact() && ow.value() < i + 1 + gen_order) continue;
        if (!leaf) return PairOutcome::open();
        if (project_to_solution(x, y, u, v, i + 1, pp.prec)) return PairOutcome::filtered();
      }
      const OrderValue op = ord(eval_P(p, x, y));
      if (op.is_exact()) return PairOutcome::resolved(i, op.value());
      return leaf ? PairOutcome::at_least(i) : PairOutcome::open();
    };
    EngineResult er = run_pair_scan(pp, eval);
    rep.table.merge(er.table);
    add_counters(rep.counters, er.counters);
    rep.space += pp.pair_space();
    if (er.budget_exceeded) {
      rep.inconclusive = true;
      rep.notes.push_back("budget exceeded at i = " + std::to_string(i));
    }
  }

  const auto pts = bounded_points(rep.table);
  rep.fit = fit_envelope(pts);
  rep.monotone = nondecreasing(pts);
  rep.constants["slope"] = rep.fit.slope;
  rep.constants["intercept"] = rep.fit.intercept;

  // Proof shape 2 max{A, B} (i + i0) + C, with (A, B) from the Izumi probe.
  std::optional<double> AB;
  try {
    ScanParams ip = params;
    ip.prec = max_prec;
    if (params.cutoff >= 0) ip.cutoff = std::min(params.cutoff, ip.prec);
    const ScanReport iz = izumi_probe(dehomogenize(p), ip);
    if (!iz.inconclusive) {
      rep.constants["A"] = iz.constants.at("A");
      rep.constants["B"] = iz.constants.at("B");
      AB = std::max(iz.constants.at("A"), iz.constants.at("B"));
    } else {
      rep.notes.push_back("izumi probe inconclusive");
    }
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("izumi probe unavailable: ") + e.what());
  }
  int i0 = 0;
  for (const auto& [u, v] : lines.lines) {
    if (v.is_zero() || u.is_zero()) {
      i0 = std::max(i0, 1);
      continue;
    }
    const ArtinReesReport ar = artin_rees_probe(u, v, range.last, max_prec);
    if (ar.i0) i0 = std::max(i0, *ar.i0);
  }
  rep.constants["i0"] = i0;
  if (AB) {
    rep.constants["shape_slope"] = 2 * *AB;
    double C = -1e300;
    for (const auto& [i, b] : pts) C = std::max(C, b - 2 * *AB * (i + i0));
    if (!pts.empty()) rep.constants["C"] = C;
  }

  if (rep.inconclusive || pts.empty()) {
    rep.inconclusive = true;
    rep.verdict = Verdict::kInconclusive;
  } else if (!rep.monotone) {
    rep.verdict = Verdict::kFail;
    rep.notes.push_back("beta is not nondecreasing");
  } else if (!AB) {
    rep.verdict = Verdict::kInconclusive;
    rep.inconclusive = true;
  } else {
    rep.verdict = rep.fit.slope <= 2 * *AB + 1e-9 ? Verdict::kPass : Verdict::kFail;
  }
  return rep;
}

ScanReport greenberg_estimate(const SeriesPoly& q, const ScanParams& params, int i_first, int i_last) {
  if (q.nvars() != 1 || params.nvars != 1) throw std::invalid_argument("greenberg_estimate needs N = 1");
  if (i_first < 0 || i_last < i_first || i_last + 1 >= params.prec) {
    throw std::invalid_argument("i range exceeds precision " + std::to_string(params.prec));
  }
  ScanReport rep;
  rep.kind = "greenberg";
  rep.subject = q.to_string();
  rep.params = params;
  std::vector<CompletedElement> roots;
  try {
    const RootSplit split = root_split(q, params.tprec);
    for (const auto& r : split.roots) roots.push_back(r.z);
    rep.notes = split.notes;
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("root split failed: ") + e.what());
  }
  rep.constants["roots"] = static_cast<double>(roots.size());

  for (int i = i_first; i <= i_last; ++i) {
    const PairEvaluator eval = [&, i](const Series& z, const Series&, bool leaf) {
      for (const auto& r : roots) {
        const OrderValue od = ord_hat(embed_blowup(z) - r);
        if (od.bound() >= i + 1) return PairOutcome::filtered();
        if (!od.is_exact()) {
          if (!leaf) return PairOutcome::open();
        }
      }
      const OrderValue ov = ord(q(z));
      if (ov.is_exact()) return PairOutcome::resolved(i, ov.value());
      return leaf ? PairOutcome::at_least(i) : PairOutcome::open();
    };
    EngineResult er = run_pair_scan(params, eval, 1);
    rep.table.merge(er.table);
    add_counters(rep.counters, er.counters);
    if (er.budget_exceeded) {
      rep.inconclusive = true;
      rep.notes.push_back("budget exceeded at i = " + std::to_string(i));
    }
  }
  Count space = 1;
  for (int k = 0; k < params.monomial_count(); ++k) space *= params.alphabet();
  rep.space = space;

  const auto pts = bounded_points(rep.table);
  rep.monotone = nondecreasing(pts);
  rep.fit = fit_envelope(pts);
  const int d = q.degree();
  if (rep.inconclusive || static_cast<int>(pts.size()) != i_last - i_first + 1) {
    rep.inconclusive = true;
    rep.verdict = Verdict::kInconclusive;
    return rep;
  }
  if (roots.empty()) {
    bool constant = true;
    for (const auto& pt : pts) constant = constant && pt.second == pts.front().second;
    rep.constants["c"] = pts.front().second;
    rep.verdict = constant ? Verdict::kConstant : Verdict::kFail;
    if (!constant) rep.notes.push_back("no root but beta is not constant");
  } else {
    rep.constants["lambda"] = rep.fit.slope;
    rep.constants["mu"] = rep.fit.intercept;
    rep.verdict = rep.fit.slope <= d + 1e-9 ? Verdict::kAffine : Verdict::kFail;
  }
  return rep;
}

std::vector<ScanReport> family_scan(const FamilySpec& family, const ScanParams& params) {
  std::vector<ScanReport> out;
  for (int p = family.p_first; p <= family.p_last; ++p) {
    ScanReport rep;
    rep.kind = "family";
    const SeriesPoly q = parse_series_poly(substitute(family.poly, "p", p), params.field, params.nvars);
    rep.subject = q.to_string();
    rep.params = params;
    const CompletedElement seed = parse_completed(substitute(family.seed, "p", p), params.field, params.nvars);
    const CompletedElement z = hensel_lift(q, seed, params.tprec).root;
    for (int k = family.k_first; k <= family.k_last; ++k) {
      const Series x = parse_series(substitute(substitute(family.x, "p", p), "k", k), params.field, params.nvars);
      const Series y = parse_series(substitute(substitute(family.y, "p", p), "k", k), params.field, params.nvars);
      const OrderValue oy = ord(y);
      const OrderValue dist = distance(z, x, y);
      rep.counters.enumerated += 1;
      if (!oy.is_exact()) {
        rep.counters.origin += 1;
      } else if (dist.is_infinite()) {
        rep.table.record_unbounded(oy.value(), x, y, 1);
      } else if (!dist.is_exact()) {
        rep.counters.at_least += 1;
      } else {
        rep.table.record(oy.value(), dist.value(), x, y, 1);
      }
    }
    const auto pts = bounded_points(rep.table);
    rep.fit = fit_envelope(pts);
    rep.constants["p"] = p;
    rep.constants["growth"] = rep.fit.slope;
    rep.verdict = pts.empty() ? Verdict::kInconclusive : Verdict::kComplete;
    rep.inconclusive = pts.empty();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace serival
