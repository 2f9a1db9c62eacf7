#ifndef SERIVAL_CONFIG_H
#define SERIVAL_CONFIG_H

// Flat key = value configuration for the lab. One setting per line, `#`
// starts a comment, blank lines are ignored, a key may appear once:
//
//   field = F2          # F<p>, GF(p) or QQ (default QQ)
//   poly  = X^2 - T1^3*Y^2
//   prec  = 6
//   mode  = exhaustive  # or sampled
//
// Integer keys: nvars prec cutoff height samples seed budget workers tprec
// i_first i_last prec_offset. Text keys: poly z seeds (root seeds separated
// by ';'). Family keys: family.poly family.seed family.x family.y (text,
// with {p} and {k} placeholders) and family.p_first family.p_last
// family.k_first family.k_last.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "serival/lab.h"

namespace serival {

/// "origin:line: message".
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct LabConfig {
  LabConfig() { scan.field = Field::rationals(); }
  /// The field defaults to QQ here.
  ScanParams scan;
  std::string poly;
  std::string z;
  std::vector<std::string> seeds;
  int i_first = 0;
  int i_last = 3;
  int prec_offset = 3;
  std::optional<FamilySpec> family;
};

/// Sets one key. `where` prefixes error messages.
void apply_setting(LabConfig& config, const std::string& key, const std::string& value, const std::string& where);

LabConfig parse_config(std::string_view text, const std::string& origin, LabConfig base = {});
LabConfig load_config(const std::string& path, LabConfig base = {});

/// Root seeds parsed in the configured field; throws ConfigError.
std::vector<CompletedElement> parse_seeds(const LabConfig& config);

}  // namespace serival

#endif  // SERIVAL_CONFIG_H
