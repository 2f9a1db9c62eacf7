// serival: command-line front end for the valuation lab.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "serival/algebra.h"
#include "serival/config.h"
#include "serival/error.h"
#include "serival/lab.h"
#include "serival/selftest.h"

namespace {

using namespace serival;

// Flags mirror the config keys; a set flag overrides the file.
struct Overrides {
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

struct Common {
  std::string config_path;
  std::string out;
  Overrides overrides;
};

void add_common(CLI::App* app, Common& c, bool scan) {
  app->add_option("--config", c.config_path, "key = value configuration file");
  Overrides& o = c.overrides;
  o.add(app, "--poly", "poly", "polynomial under test");
  o.add(app, "--field", "field", "F<p> or QQ");
  o.add(app, "--nvars", "nvars", "number of series variables N");
  o.add(app, "--tprec", "tprec", "T_N-precision of roots");
  o.add(app, "--seeds", "seeds", "root seeds separated by ';'");
  if (!scan) return;
  app->add_option("--out", c.out, "output prefix for .csv, .json and .dat");
  o.add(app, "--prec", "prec", "enumeration precision");
  o.add(app, "--cutoff", "cutoff", "enumerate monomials of degree < cutoff");
  o.add(app, "--height", "height", "coefficient height over QQ");
  o.add(app, "--mode", "mode", "exhaustive or sampled");
  o.add(app, "--samples", "samples", "number of samples");
  o.add(app, "--seed", "seed", "sampling seed");
  o.add(app, "--budget", "budget", "exhaustive class budget");
  o.add(app, "--workers", "workers", "worker threads (0: SERIVAL_WORKERS or all cores)");
}

LabConfig load(const Common& c) {
  LabConfig config = c.config_path.empty() ? LabConfig{} : load_config(c.config_path);
  for (const auto& [key, value] : c.overrides.values) apply_setting(config, key, value, "--" + key);
  return config;
}

void require_poly(const LabConfig& c) {
  if (c.poly.empty()) throw ConfigError("poly: missing (set --poly or poly = ...)");
}

HomogForm form_of(const LabConfig& c) {
  require_poly(c);
  if (c.poly.find('X') != std::string::npos || c.poly.find('Y') != std::string::npos) {
    return parse_homog(c.poly, c.scan.field, c.scan.nvars);
  }
  return homogenize(parse_series_poly(c.poly, c.scan.field, c.scan.nvars));
}

SeriesPoly poly_of(const LabConfig& c, int nvars) {
  require_poly(c);
  if (c.poly.find('X') != std::string::npos || c.poly.find('Y') != std::string::npos) {
    return dehomogenize(parse_homog(c.poly, c.scan.field, nvars));
  }
  return parse_series_poly(c.poly, c.scan.field, nvars);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void summarize(const ScanReport& r, const std::string& prefix) {
  std::cout << r.kind << ": " << r.subject << '\n';
  std::cout << "  space " << count_string(r.space) << ", classes " << r.counters.classes << ", at-least "
            << count_string(r.counters.at_least) << ", filtered " << count_string(r.counters.filtered) << '\n';
  for (const auto& [k, b] : r.table.buckets()) {
    std::cout << "  " << k << ": ";
    if (b.unbounded) {
      std::cout << "inf";
    } else if (b.has_value) {
      std::cout << b.value;
    } else {
      std::cout << "-";
    }
    if (b.censored > 0) std::cout << " (censored " << count_string(b.censored) << ")";
    std::cout << '\n';
  }
  std::printf("  fit: slope %g, intercept %g (least squares %g, %g)\n", r.fit.slope, r.fit.intercept, r.fit.ls_slope,
              r.fit.ls_intercept);
  for (const auto& [k, v] : r.constants) std::printf("  %s = %g\n", k.c_str(), v);
  for (const auto& n : r.notes) std::cout << "  note: " << n << '\n';
  std::cout << "  verdict: " << verdict_name(r.verdict) << '\n';
  write_file(prefix + ".csv", report_csv(r));
  write_file(prefix + ".json", report_json(r));
  write_file(prefix + ".dat", report_plot(r));
  std::cout << "  wrote " << prefix << ".{csv,json,dat}\n";
}

int finish(const std::vector<ScanReport>& reports, const std::vector<std::string>& prefixes) {
  int code = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    summarize(reports[i], prefixes[i]);
    const int c = verdict_exit_code(reports[i].verdict);
    if (c == 2 || (c == 3 && code == 0)) code = c;
  }
  return code;
}

std::string prefix_or(const Common& c, const std::string& kind) { return c.out.empty() ? "serival-" + kind : c.out; }

CompletedElement dioph_root(const LabConfig& c, const SeriesPoly& q) {
  if (!c.z.empty()) return parse_completed(c.z, c.scan.field, c.scan.nvars);
  const auto seeds = parse_seeds(c);
  const RootSplit split = root_split(q, c.scan.tprec,
                                     seeds.empty() ? SeedStrategy::kAutoSlopeZero : SeedStrategy::kUserSeeds, seeds);
  if (split.roots.empty()) throw std::runtime_error("no root of Q found; pass z or seeds");
  return split.roots.front().z;
}

int run_roots(const LabConfig& c) {
  const SeriesPoly q = poly_of(c, c.scan.nvars);
  const auto seeds = parse_seeds(c);
  const RootSplit split = root_split(q, c.scan.tprec,
                                     seeds.empty() ? SeedStrategy::kAutoSlopeZero : SeedStrategy::kUserSeeds, seeds);
  std::cout << "Q = " << q.to_string() << '\n';
  for (const auto& r : split.roots) {
    std::cout << "root " << r.z.to_string() << "  multiplicity " << r.multiplicity;
    if (r.exact && r.u && r.v) std::cout << "  = (" << r.u->to_string() << ") / (" << r.v->to_string() << ")";
    std::cout << '\n';
  }
  std::cout << "rootless degree " << split.rootless_degree << '\n';
  for (const auto& n : split.notes) std::cout << "note: " << n << '\n';
  return 0;
}

int run_selftest_command() {
  int failed = 0;
  for (const auto& check : run_selftest()) {
    std::cout << (check.ok ? "ok   " : "FAIL ") << check.name << ": " << check.detail << '\n';
    if (!check.ok) ++failed;
  }
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serival: Diophantine and Artin-function experiments over power series"};
  app.require_subcommand(1);
  Common common;

  auto* dioph = app.add_subcommand("dioph", "distance of rational approximants x/y to a root z of Q");
  add_common(dioph, common, true);
  common.overrides.add(dioph, "--z", "z", "the root z (default: first root found by root_split)");
  bool family = false;
  dioph->add_flag("--family", family, "run the family.* exponent-growth experiment from the config");

  auto* loja = app.add_subcommand("loja", "ord P(x, y) against min(ord x, ord y)");
  add_common(loja, common, true);

  auto* artin = app.add_subcommand("artin", "empirical Artin function of a homogeneous P");
  add_common(artin, common, true);
  common.overrides.add(artin, "--i-first", "i_first", "first index i");
  common.overrides.add(artin, "--i-last", "i_last", "last index i");
  common.overrides.add(artin, "--prec-offset", "prec_offset", "precision i + offset per index (0: --prec)");

  auto* green = app.add_subcommand("greenberg", "empirical Artin function of Q over k[[T]]");
  add_common(green, common, true);
  common.overrides.add(green, "--i-first", "i_first", "first index i");
  common.overrides.add(green, "--i-last", "i_last", "last index i");

  auto* izumi = app.add_subcommand("izumi", "fit A, B in A(ord(x - Zy) + ord h) + B >= ord P(x, y)");
  add_common(izumi, common, true);

  auto* roots = app.add_subcommand("roots", "split off the roots of Q in the completion");
  add_common(roots, common, false);

  app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "selftest") return run_selftest_command();
    LabConfig c = load(common);
    if (name == "roots") return run_roots(c);
    if (name == "loja") {
      return finish({lojasiewicz_scan(form_of(c), c.scan)}, {prefix_or(common, "loja")});
    }
    if (name == "artin") {
      return finish({artin_estimate(form_of(c), c.scan, ArtinRange{c.i_first, c.i_last, c.prec_offset})},
                    {prefix_or(common, "artin")});
    }
    if (name == "greenberg") {
      c.scan.nvars = 1;
      return finish({greenberg_estimate(poly_of(c, 1), c.scan, c.i_first, c.i_last)},
                    {prefix_or(common, "greenberg")});
    }
    if (name == "izumi") {
      return finish({izumi_probe(poly_of(c, c.scan.nvars), c.scan)}, {prefix_or(common, "izumi")});
    }
    if (family) {
      if (!c.family) throw ConfigError("--family: no family.* keys in the configuration");
      const auto reports = family_scan(*c.family, c.scan);
      std::vector<std::string> prefixes;
      for (int p = c.family->p_first; p <= c.family->p_last; ++p) {
        prefixes.push_back(prefix_or(common, "family") + "-p" + std::to_string(p));
      }
      prefixes.resize(reports.size());
      return finish(reports, prefixes);
    }
    const SeriesPoly q = poly_of(c, c.scan.nvars);
    return finish({dioph_scan(q, dioph_root(c, q), c.scan)}, {prefix_or(common, "dioph")});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const serival::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
