#ifndef SERIVAL_LAB_H
#define SERIVAL_LAB_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "serival/algebra.h"
#include "serival/completion.h"
#include "serival/rng.h"
#include "serival/series.h"

namespace serival {

/// Pair counts overflow 64 bits (3^42 for height-1 pairs at precision 6).
using Count = unsigned __int128;
std::string count_string(Count c);

enum class ScanMode { kExhaustive, kSampled };

struct ScanParams {
  Field field = Field::prime(2);
  int nvars = 2;
  /// Enumerated elements are truncated series known mod m^prec.
  int prec = 4;
  /// Coefficients are enumerated on monomials of degree < cutoff (<= prec);
  /// -1 means prec.
  int cutoff = -1;
  /// Over QQ the coefficient alphabet is the integers in [-height, height].
  int height = 1;
  ScanMode mode = ScanMode::kExhaustive;
  long samples = 10000;
  std::uint64_t seed = 1;
  /// Exhaustive scans stop (inconclusive) after this many evaluated classes.
  std::uint64_t budget = std::uint64_t{1} << 24;
  /// 0: SERIVAL_WORKERS, else hardware concurrency.
  int workers = 0;
  /// T_N-precision of roots in V̂_N.
  int tprec = 32;
  std::vector<CompletedElement> root_seeds;

  int effective_cutoff() const { return cutoff < 0 ? prec : std::min(cutoff, prec); }
  /// Size of the coefficient alphabet.
  std::uint64_t alphabet() const;
  /// Number of monomials of degree < cutoff.
  int monomial_count() const;
  /// alphabet^(2 * monomial_count): the documented pair-space size.
  Count pair_space() const;
};

int resolved_workers(int requested);

enum class Verdict { kPass, kFail, kInconclusive, kNotApplicable, kDegenerate, kConstant, kAffine, kComplete };
std::string verdict_name(Verdict v);
/// 0 pass-like, 2 FAIL, 3 INCONCLUSIVE.
int verdict_exit_code(Verdict v);

struct Bucket {
  int key = 0;
  /// Extremal value; `unbounded` marks an exact hit (infinite order).
  int value = 0;
  bool has_value = false;
  bool unbounded = false;
  Series wx;
  Series wy;
  /// All pairs with this key, censored ones included.
  Count count = 0;
  /// Pairs of this key whose value is only known as a lower bound. A
  /// censored bucket's maximum is not an upper bound and is left out of fits.
  Count censored = 0;
};

/// key -> bucket; merging keeps the larger value, the earlier witness on
/// ties, and adds counts. Merging in enumeration order is independent of
/// how the enumeration was split.
class BucketTable {
 public:
  void record(int key, int value, const Series& x, const Series& y, Count weight);
  void record_unbounded(int key, const Series& x, const Series& y, Count weight);
  void record_censored(int key, Count weight);
  void merge(const BucketTable& later);
  const std::map<int, Bucket>& buckets() const { return buckets_; }
  bool empty() const { return buckets_.empty(); }
  /// (key, value) of the buckets usable for fitting: a finite value and no
  /// censored pairs.
  std::vector<std::pair<int, int>> fit_points() const;

 private:
  std::map<int, Bucket> buckets_;
};

struct Fit {
  /// Sup-envelope value <= slope * key + intercept through the bucket maxima.
  double slope = 0;
  double intercept = 0;
  /// Slope before any clamp.
  double raw_slope = 0;
  /// Least squares through the bucket maxima, for trend only.
  double ls_slope = 0;
  double ls_intercept = 0;
  std::string method = "max-consecutive-slope";
  int points = 0;
};

/// slope = max over consecutive points of Δvalue/Δkey (0 with fewer than two
/// points, never below `min_slope`); intercept = max residual, at least
/// `min_intercept`.
Fit fit_envelope(const std::vector<std::pair<int, int>>& points, double min_slope = 0,
                 double min_intercept = -1e300);
bool envelope_holds(const Fit& fit, int key, int value);

struct ScanCounters {
  Count enumerated = 0;
  Count at_least = 0;
  Count origin = 0;
  Count filtered = 0;
  std::uint64_t classes = 0;
};

struct ScanReport {
  std::string kind;
  std::string subject;
  ScanParams params;
  Count space = 0;
  ScanCounters counters;
  BucketTable table;
  Fit fit;
  Verdict verdict = Verdict::kInconclusive;
  bool inconclusive = false;
  bool monotone = true;
  /// Named empirical constants (a, b, A, B, lambda, mu, c, i0, ...).
  std::map<std::string, double> constants;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Enumeration engine.

/// Outcome for a partially known pair (x, y) (coefficients fixed below the
/// current degree, unknown above; precision is that degree, or prec at a
/// leaf).
struct PairOutcome {
  enum class Kind { kOpen, kResolved, kUnbounded, kAtLeast, kOrigin, kFiltered };
  Kind kind = Kind::kOpen;
  int key = 0;
  int value = 0;
  bool keyed = false;
  static PairOutcome open() { return {}; }
  static PairOutcome resolved(int key, int value) { return {Kind::kResolved, key, value, true}; }
  static PairOutcome unbounded(int key) { return {Kind::kUnbounded, key, 0, true}; }
  static PairOutcome at_least() { return {Kind::kAtLeast, 0, 0, false}; }
  /// Value beyond the precision for a pair whose key is known.
  static PairOutcome at_least(int key) { return {Kind::kAtLeast, key, 0, true}; }
  static PairOutcome origin() { return {Kind::kOrigin, 0, 0, false}; }
  static PairOutcome filtered() { return {Kind::kFiltered, 0, 0, false}; }
};

/// Must not return kOpen when `leaf` is true. A non-open outcome at an inner
/// node has to hold for every completion of the node.
using PairEvaluator = std::function<PairOutcome(const Series& x, const Series& y, bool leaf)>;

struct EngineResult {
  BucketTable table;
  ScanCounters counters;
  bool budget_exceeded = false;
};

/// Exhaustive: depth-first over the homogeneous parts of x and y, pruning a
/// node as soon as the evaluator resolves it and counting its whole subtree.
/// Sampled: params.samples uniform pairs, sample k drawn from its own
/// stream seeded by (seed, k). Work is split into contiguous ranges across
/// workers and merged in order. With arity 1 only x is enumerated and y is
/// passed as an empty Series.
EngineResult run_pair_scan(const ScanParams& params, const PairEvaluator& eval, int arity = 2);

/// Uniform element of the scan space (sample stream `rng`).
Series sample_element(const ScanParams& params, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Scans.

/// Solution lines u Y - v X = 0 of a homogeneous P, from the exact roots of
/// P(X, 1) plus the line Y = 0 when the X^d coefficient vanishes.
struct SolutionLines {
  std::vector<std::pair<Series, Series>> lines;
  bool complete = true;
  std::vector<std::string> notes;
};
SolutionLines solution_lines(const HomogForm& p, int tprec);

/// Best approximation with a fixed denominator: the x maximizing
/// ord(y z - x) among x in the scan space, found degree by degree (the
/// T_N^j coefficient of embed(x) is the degree-j part of x).
struct BestApproximant {
  Series x;
  OrderValue distance = OrderValue::at_least(0);
  bool exact_hit = false;
};
BestApproximant best_numerator(const CompletedElement& z, const Series& y, const ScanParams& params);

ScanReport dioph_scan(const SeriesPoly& q, const CompletedElement& z, const ScanParams& params);
ScanReport lojasiewicz_scan(const HomogForm& p, const ScanParams& params);

struct ArtinRange {
  int first = 0;
  int last = 3;
  /// Precision for index i is i + prec_offset; 0 keeps params.prec.
  int prec_offset = 3;
};
ScanReport artin_estimate(const HomogForm& p, const ScanParams& params, const ArtinRange& range);
ScanReport greenberg_estimate(const SeriesPoly& q, const ScanParams& params, int i_first, int i_last);
ScanReport izumi_probe(const SeriesPoly& q, const ScanParams& params);

/// Exponent-growth experiment for a user family: for each p, the root of
/// Q_p from `seed` and the approximants (x_k, y_k); "{p}" and "{k}" are
/// substituted textually before parsing.
struct FamilySpec {
  std::string poly;
  std::string seed;
  std::string x;
  std::string y;
  int p_first = 3;
  int p_last = 3;
  int k_first = 1;
  int k_last = 4;
};
/// One report per p: key ord(y_k), value ord(z_p - x_k / y_k).
std::vector<ScanReport> family_scan(const FamilySpec& family, const ScanParams& params);

// ---------------------------------------------------------------------------
// Reports.

std::string report_csv(const ScanReport& r);
std::string report_json(const ScanReport& r);
/// Two columns "key value" per bucket, gnuplot-compatible.
std::string report_plot(const ScanReport& r);

}  // namespace serival

#endif  // SERIVAL_LAB_H
