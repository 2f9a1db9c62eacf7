#include <sstream>

#include <json.hpp>

#include "serival/lab.h"

namespace serival {
namespace {

using nlohmann::ordered_json;

struct Columns {
  const char* key;
  const char* value;
};

Columns columns_for(const std::string& kind) {
  if (kind == "dioph") return {"ord_y", "max_distance"};
  if (kind == "loja") return {"min_ord", "max_ordP"};
  if (kind == "artin") return {"i", "beta"};
  if (kind == "greenberg") return {"i", "beta"};
  if (kind == "izumi") return {"ordO_sum", "max_ordP"};
  if (kind == "family") return {"ord_y", "distance"};
  return {"key", "value"};
}

std::string value_text(const Bucket& b) {
  if (b.unbounded) return "inf";
  return b.has_value ? std::to_string(b.value) : "";
}

std::string witness_text(const Series& s) { return s.poly().nvars() == 0 && s.poly().is_zero() ? "" : s.to_string(); }

ordered_json params_json(const ScanParams& p) {
  ordered_json j;
  j["field"] = p.field.name();
  j["nvars"] = p.nvars;
  j["prec"] = p.prec;
  j["cutoff"] = p.effective_cutoff();
  j["height"] = p.height;
  j["mode"] = p.mode == ScanMode::kExhaustive ? "exhaustive" : "sampled";
  j["samples"] = p.samples;
  j["seed"] = p.seed;
  j["budget"] = p.budget;
  j["tprec"] = p.tprec;
  return j;
}

}  // namespace

std::string report_csv(const ScanReport& r) {
  const Columns c = columns_for(r.kind);
  std::ostringstream out;
  const bool single = r.kind == "greenberg";
  out << c.key << ',' << c.value << (single ? ",witness_z" : ",witness_x,witness_y") << ",count,censored\n";
  for (const auto& [k, b] : r.table.buckets()) {
    out << k << ',' << value_text(b) << ',' << witness_text(b.wx);
    if (!single) out << ',' << witness_text(b.wy);
    out << ',' << count_string(b.count) << ',' << count_string(b.censored) << '\n';
  }
  return out.str();
}

std::string report_json(const ScanReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["kind"] = r.kind;
  j["subject"] = r.subject;
  j["params"] = params_json(r.params);
  j["space"] = count_string(r.space);
  j["counters"] = {{"enumerated", count_string(r.counters.enumerated)},
                   {"at_least", count_string(r.counters.at_least)},
                   {"origin", count_string(r.counters.origin)},
                   {"filtered", count_string(r.counters.filtered)},
                   {"classes", r.counters.classes}};
  const Columns c = columns_for(r.kind);
  ordered_json rows = ordered_json::array();
  for (const auto& [k, b] : r.table.buckets()) {
    ordered_json row;
    row[c.key] = k;
    if (b.has_value && !b.unbounded) {
      row[c.value] = b.value;
    } else {
      row[c.value] = nullptr;
    }
    row["unbounded"] = b.unbounded;
    row["count"] = count_string(b.count);
    row["censored"] = count_string(b.censored);
    row["witness"] = {{"x", witness_text(b.wx)}, {"y", witness_text(b.wy)}};
    rows.push_back(std::move(row));
  }
  j["buckets"] = std::move(rows);
  j["fit"] = {{"method", r.fit.method},
              {"slope", r.fit.slope},
              {"intercept", r.fit.intercept},
              {"raw_slope", r.fit.raw_slope},
              {"least_squares", {{"slope", r.fit.ls_slope}, {"intercept", r.fit.ls_intercept}}},
              {"points", r.fit.points}};
  ordered_json constants = ordered_json::object();
  for (const auto& [k, v] : r.constants) constants[k] = v;
  j["constants"] = std::move(constants);
  j["verdict"] = verdict_name(r.verdict);
  j["inconclusive"] = r.inconclusive;
  j["monotone"] = r.monotone;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string report_plot(const ScanReport& r) {
  const Columns c = columns_for(r.kind);
  std::ostringstream out;
  out << "# " << r.kind << ": " << r.subject << "\n# " << c.key << ' ' << c.value << '\n';
  for (const auto& [k, v] : r.table.fit_points()) out << k << ' ' << v << '\n';
  return out.str();
}

}  // namespace serival
