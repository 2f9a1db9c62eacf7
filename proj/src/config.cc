#include "serival/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace serival {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_integer(const std::string& value, const std::string& key, const std::string& where, T lo, T hi) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": " + key + ": not an integer: '" + value + "'");
  if (out < lo || out > hi) {
    throw ConfigError(where + ": " + key + ": " + value + " out of range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return out;
}

FamilySpec& family_of(LabConfig& c) {
  if (!c.family) c.family.emplace();
  return *c.family;
}

std::vector<std::string> split_seeds(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void apply_setting(LabConfig& c, const std::string& key, const std::string& value, const std::string& where) {
  constexpr int kBig = 1 << 20;
  auto integer = [&](int lo, int hi) { return parse_integer<int>(value, key, where, lo, hi); };
  ScanParams& s = c.scan;
  if (key == "field") {
    try {
      s.field = Field::parse(value);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": field: " + e.what());
    }
  } else if (key == "nvars") {
    s.nvars = integer(1, 6);
  } else if (key == "prec") {
    s.prec = integer(1, 64);
  } else if (key == "cutoff") {
    s.cutoff = integer(-1, 64);
  } else if (key == "height") {
    s.height = integer(1, 1000);
  } else if (key == "mode") {
    if (value == "exhaustive") {
      s.mode = ScanMode::kExhaustive;
    } else if (value == "sampled") {
      s.mode = ScanMode::kSampled;
    } else {
      throw ConfigError(where + ": mode: expected 'exhaustive' or 'sampled', got '" + value + "'");
    }
  } else if (key == "samples") {
    s.samples = parse_integer<long>(value, key, where, 1, 1L << 40);
  } else if (key == "seed") {
    s.seed = parse_integer<std::uint64_t>(value, key, where, 0, UINT64_MAX);
  } else if (key == "budget") {
    s.budget = parse_integer<std::uint64_t>(value, key, where, 1, UINT64_MAX);
  } else if (key == "workers") {
    s.workers = integer(0, 1024);
  } else if (key == "tprec") {
    s.tprec = integer(1, 4096);
  } else if (key == "poly") {
    c.poly = value;
  } else if (key == "z") {
    c.z = value;
  } else if (key == "seeds") {
    c.seeds = split_seeds(value);
  } else if (key == "i_first") {
    c.i_first = integer(0, kBig);
  } else if (key == "i_last") {
    c.i_last = integer(0, kBig);
  } else if (key == "prec_offset") {
    c.prec_offset = integer(0, 64);
  } else if (key == "family.poly") {
    family_of(c).poly = value;
  } else if (key == "family.seed") {
    family_of(c).seed = value;
  } else if (key == "family.x") {
    family_of(c).x = value;
  } else if (key == "family.y") {
    family_of(c).y = value;
  } else if (key == "family.p_first") {
    family_of(c).p_first = integer(0, kBig);
  } else if (key == "family.p_last") {
    family_of(c).p_last = integer(0, kBig);
  } else if (key == "family.k_first") {
    family_of(c).k_first = integer(0, kBig);
  } else if (key == "family.k_last") {
    family_of(c).k_last = integer(0, kBig);
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

LabConfig parse_config(std::string_view text, const std::string& origin, LabConfig base) {
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = origin + ":" + std::to_string(number);
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (value.empty()) throw ConfigError(where + ": " + key + ": missing value");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    apply_setting(base, key, value, where);
  }
  return base;
}

LabConfig load_config(const std::string& path, LabConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path, std::move(base));
}

std::vector<CompletedElement> parse_seeds(const LabConfig& c) {
  std::vector<CompletedElement> out;
  for (const auto& s : c.seeds) {
    try {
      out.push_back(parse_completed(s, c.scan.field, c.scan.nvars));
    } catch (const std::exception& e) {
      throw ConfigError("seeds: '" + s + "': " + e.what());
    }
  }
  return out;
}

}  // namespace serival
