#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "serival/lab.h"
#include "serival/membership.h"

namespace serival {

std::string count_string(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s += static_cast<char>('0' + static_cast<int>(c % 10));
    c /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::uint64_t ScanParams::alphabet() const {
  return field.is_rational() ? static_cast<std::uint64_t>(2 * height + 1) : field.characteristic();
}

int ScanParams::monomial_count() const {
  return static_cast<int>(monomials_between(nvars, 0, effective_cutoff()).size());
}

Count ScanParams::pair_space() const {
  Count c = 1;
  for (int i = 0; i < 2 * monomial_count(); ++i) c *= alphabet();
  return c;
}

int resolved_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SERIVAL_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
    case Verdict::kNotApplicable: return "NOT-APPLICABLE";
    case Verdict::kDegenerate: return "DEGENERATE";
    case Verdict::kConstant: return "CONSTANT";
    case Verdict::kAffine: return "AFFINE";
    case Verdict::kComplete: return "COMPLETE";
  }
  return "?";
}

int verdict_exit_code(Verdict v) {
  if (v == Verdict::kFail) return 2;
  if (v == Verdict::kInconclusive) return 3;
  return 0;
}

void BucketTable::record(int key, int value, const Series& x, const Series& y, Count weight) {
  auto [it, inserted] = buckets_.try_emplace(key);
  Bucket& b = it->second;
  if (inserted) {
    b = Bucket{key, value, true, false, x, y, weight, 0};
    return;
  }
  b.count += weight;
  if (!b.unbounded && (!b.has_value || value > b.value)) {
    b.has_value = true;
    b.value = value;
    b.wx = x;
    b.wy = y;
  }
}

void BucketTable::record_unbounded(int key, const Series& x, const Series& y, Count weight) {
  auto [it, inserted] = buckets_.try_emplace(key);
  Bucket& b = it->second;
  if (inserted) {
    b = Bucket{key, 0, false, true, x, y, weight, 0};
    return;
  }
  b.count += weight;
  if (!b.unbounded) {
    b.unbounded = true;
    b.wx = x;
    b.wy = y;
  }
}

void BucketTable::record_censored(int key, Count weight) {
  auto [it, inserted] = buckets_.try_emplace(key);
  if (inserted) it->second.key = key;
  it->second.count += weight;
  it->second.censored += weight;
}

void BucketTable::merge(const BucketTable& later) {
  for (const auto& [key, b] : later.buckets_) {
    const Count plain = b.count - b.censored;
    if (b.unbounded) {
      record_unbounded(key, b.wx, b.wy, plain);
    } else if (b.has_value) {
      record(key, b.value, b.wx, b.wy, plain);
    }
    if (b.censored > 0) record_censored(key, b.censored);
  }
}

std::vector<std::pair<int, int>> BucketTable::fit_points() const {
  std::vector<std::pair<int, int>> pts;
  for (const auto& [k, b] : buckets_) {
    if (b.has_value && !b.unbounded && b.censored == 0) pts.emplace_back(k, b.value);
  }
  return pts;
}

Fit fit_envelope(const std::vector<std::pair<int, int>>& points, double min_slope, double min_intercept) {
  Fit f;
  f.points = static_cast<int>(points.size());
  if (points.empty()) return f;
  double slope = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double s = static_cast<double>(points[i].second - points[i - 1].second) /
                     static_cast<double>(points[i].first - points[i - 1].first);
    slope = i == 1 ? s : std::max(slope, s);
  }
  f.raw_slope = slope;
  f.slope = std::max(slope, min_slope);
  double intercept = -1e300;
  for (const auto& [k, v] : points) intercept = std::max(intercept, v - f.slope * k);
  f.intercept = std::max(intercept, min_intercept);

  const double n = static_cast<double>(points.size());
  double sk = 0, sv = 0, skk = 0, skv = 0;
  for (const auto& [k, v] : points) {
    sk += k;
    sv += v;
    skk += static_cast<double>(k) * k;
    skv += static_cast<double>(k) * v;
  }
  const double den = n * skk - sk * sk;
  if (points.size() >= 2 && den != 0) {
    f.ls_slope = (n * skv - sk * sv) / den;
    f.ls_intercept = (sv - f.ls_slope * sk) / n;
  } else {
    f.ls_intercept = sv / n;
  }
  return f;
}

bool envelope_holds(const Fit& fit, int key, int value) { return value <= fit.slope * key + fit.intercept + 1e-9; }

Series sample_element(const ScanParams& params, std::mt19937_64& rng) {
  const auto monos = monomials_between(params.nvars, 0, params.effective_cutoff());
  const std::uint64_t a = params.alphabet();
  std::vector<Poly::Term> terms;
  for (const auto& m : monos) {
    const std::uint64_t d = uniform_below(rng, a);
    if (d == 0) continue;
    long v;
    if (params.field.is_rational()) {
      v = (d % 2 == 1) ? static_cast<long>((d + 1) / 2) : -static_cast<long>(d / 2);
    } else {
      v = static_cast<long>(d);
    }
    terms.emplace_back(m, params.field.from_int(v));
  }
  return Series(Poly::from_terms(params.field, params.nvars, std::move(terms)), params.prec);
}

namespace {

struct Node {
  int level = 0;
  Poly x;
  Poly y;
};

class Engine {
 public:
  Engine(const ScanParams& params, const PairEvaluator& eval, int arity)
      : params_(params), eval_(eval), arity_(arity), cutoff_(params.effective_cutoff()) {
    const std::uint64_t a = params.alphabet();
    for (std::uint64_t d = 0; d < a; ++d) {
      long v = static_cast<long>(d);
      // Over QQ the digits run 0, 1, -1, 2, -2, ...
      if (params.field.is_rational()) v = (d % 2 == 1) ? static_cast<long>((d + 1) / 2) : -static_cast<long>(d / 2);
      digits_.push_back(params.field.from_int(v));
    }
    for (int j = 0; j < cutoff_; ++j) monos_.push_back(monomials_between(params.nvars, j, j + 1));
    weight_.assign(static_cast<std::size_t>(cutoff_ + 1), 1);
    for (int j = cutoff_ - 1; j >= 0; --j) {
      Count w = weight_[static_cast<std::size_t>(j + 1)];
      for (std::size_t k = 0; k < monos_[static_cast<std::size_t>(j)].size() * static_cast<std::size_t>(arity); ++k) {
        w *= a;
      }
      weight_[static_cast<std::size_t>(j)] = w;
    }
  }

  Node root() const { return Node{0, Poly(params_.field, params_.nvars), Poly(params_.field, params_.nvars)}; }
  bool exceeded() const { return exceeded_.load(); }
  std::uint64_t classes() const { return classes_.load(); }

  // Evaluates one node; returns true when it is open and has children.
  bool evaluate(const Node& node, BucketTable& table, ScanCounters& counters) {
    if (classes_.fetch_add(1) + 1 > params_.budget) {
      exceeded_ = true;
      return false;
    }
    const bool leaf = node.level >= cutoff_;
    const int pr = leaf ? params_.prec : node.level;
    const Series xs(node.x, pr);
    const Series ys = arity_ == 2 ? Series(node.y, pr) : Series();
    const PairOutcome out = eval_(xs, ys, leaf);
    const Count w = weight_[static_cast<std::size_t>(std::min(node.level, cutoff_))];
    if (out.kind == PairOutcome::Kind::kOpen) {
      if (leaf) throw std::logic_error("evaluator left a complete pair undecided");
      return true;
    }
    counters.enumerated += w;
    switch (out.kind) {
      case PairOutcome::Kind::kResolved:
        table.record(out.key, out.value, Series(node.x, params_.prec),
                     arity_ == 2 ? Series(node.y, params_.prec) : Series(), w);
        break;
      case PairOutcome::Kind::kUnbounded:
        table.record_unbounded(out.key, Series(node.x, params_.prec),
                               arity_ == 2 ? Series(node.y, params_.prec) : Series(), w);
        break;
      case PairOutcome::Kind::kAtLeast:
        counters.at_least += w;
        if (out.keyed) table.record_censored(out.key, w);
        break;
      case PairOutcome::Kind::kOrigin: counters.origin += w; break;
      case PairOutcome::Kind::kFiltered: counters.filtered += w; break;
      case PairOutcome::Kind::kOpen: break;
    }
    return false;
  }

  template <typename Visit>
  void for_each_child(const Node& node, Visit&& visit) {
    const auto& monos = monos_[static_cast<std::size_t>(node.level)];
    const std::size_t slots = monos.size() * static_cast<std::size_t>(arity_);
    std::vector<std::size_t> odo(slots, 0);
    const std::size_t a = digits_.size();
    for (;;) {
      std::vector<Poly::Term> tx = node.x.terms();
      std::vector<Poly::Term> ty = node.y.terms();
      for (std::size_t s = 0; s < slots; ++s) {
        if (odo[s] == 0) continue;
        auto& target = s < monos.size() ? tx : ty;
        target.emplace_back(monos[s % monos.size()], digits_[odo[s]]);
      }
      Node child{node.level + 1, Poly::from_terms(params_.field, params_.nvars, std::move(tx)),
                 Poly::from_terms(params_.field, params_.nvars, std::move(ty))};
      if (!visit(child)) return;
      std::size_t s = 0;
      while (s < slots && ++odo[s] == a) odo[s++] = 0;
      if (s == slots) return;
    }
  }

  void dfs(const Node& node, BucketTable& table, ScanCounters& counters) {
    if (!evaluate(node, table, counters)) return;
    for_each_child(node, [&](const Node& child) {
      dfs(child, table, counters);
      return !exceeded();
    });
  }

 private:
  const ScanParams& params_;
  const PairEvaluator& eval_;
  int arity_;
  int cutoff_;
  std::vector<Scalar> digits_;
  std::vector<std::vector<Monomial>> monos_;
  std::vector<Count> weight_;
  std::atomic<std::uint64_t> classes_{0};
  std::atomic<bool> exceeded_{false};
};

void add_counters(ScanCounters& into, const ScanCounters& c) {
  into.enumerated += c.enumerated;
  into.at_least += c.at_least;
  into.origin += c.origin;
  into.filtered += c.filtered;
}

struct Item {
  std::optional<Node> node;
  BucketTable table;
  ScanCounters counters;
};

template <typename Work>
void run_parallel(int workers, std::size_t jobs, Work&& work) {
  if (workers <= 1 || jobs <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
        try {
          work(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EngineResult run_pair_scan(const ScanParams& params, const PairEvaluator& eval, int arity) {
  if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
  if (params.prec < 1) throw std::invalid_argument("precision must be positive");
  const int workers = resolved_workers(params.workers);
  EngineResult result;

  if (params.mode == ScanMode::kSampled) {
    const std::size_t chunks = static_cast<std::size_t>(std::max(1, workers));
    std::vector<Item> parts(chunks);
    const long n = params.samples;
    run_parallel(workers, chunks, [&](std::size_t c) {
      const long lo = static_cast<long>(c) * n / static_cast<long>(chunks);
      const long hi = static_cast<long>(c + 1) * n / static_cast<long>(chunks);
      for (long k = lo; k < hi; ++k) {
        std::mt19937_64 rng(stream_seed(params.seed, static_cast<std::uint64_t>(k)));
        const Series x = sample_element(params, rng);
        const Series y = arity == 2 ? sample_element(params, rng) : Series();
        const PairOutcome out = eval(x, y, true);
        auto& part = parts[c];
        part.counters.enumerated += 1;
        switch (out.kind) {
          case PairOutcome::Kind::kResolved: part.table.record(out.key, out.value, x, y, 1); break;
          case PairOutcome::Kind::kUnbounded: part.table.record_unbounded(out.key, x, y, 1); break;
          case PairOutcome::Kind::kAtLeast:
            part.counters.at_least += 1;
            if (out.keyed) part.table.record_censored(out.key, 1);
            break;
          case PairOutcome::Kind::kOrigin: part.counters.origin += 1; break;
          case PairOutcome::Kind::kFiltered: part.counters.filtered += 1; break;
          case PairOutcome::Kind::kOpen: throw std::logic_error("evaluator left a complete pair undecided");
        }
      }
    });
    for (const auto& p : parts) {
      result.table.merge(p.table);
      add_counters(result.counters, p.counters);
    }
    result.counters.classes = static_cast<std::uint64_t>(n);
    return result;
  }

  Engine engine(params, eval, arity);
  // Expand a frontier breadth-first, keeping enumeration order, so that each
  // worker takes whole subtrees.
  std::vector<Item> items(1);
  items[0].node = engine.root();
  const std::size_t target = workers > 1 ? 8 * static_cast<std::size_t>(workers) : 1;
  while (!engine.exceeded()) {
    std::size_t open = 0;
    for (const auto& it : items) open += it.node.has_value();
    if (open == 0 || open >= target) break;
    std::vector<Item> next;
    for (auto& it : items) {
      if (!it.node) {
        next.push_back(std::move(it));
        continue;
      }
      Item done;
      if (engine.evaluate(*it.node, done.table, done.counters)) {
        engine.for_each_child(*it.node, [&](const Node& child) {
          Item c;
          c.node = child;
          next.push_back(std::move(c));
          return true;
        });
      } else {
        next.push_back(std::move(done));
      }
    }
    items = std::move(next);
  }
  run_parallel(workers, items.size(), [&](std::size_t j) {
    auto& it = items[j];
    if (it.node && !engine.exceeded()) engine.dfs(*it.node, it.table, it.counters);
  });
  for (const auto& it : items) {
    result.table.merge(it.table);
    add_counters(result.counters, it.counters);
  }
  result.counters.classes = engine.classes();
  result.budget_exceeded = engine.exceeded();
  return result;
}

}  // namespace serival
