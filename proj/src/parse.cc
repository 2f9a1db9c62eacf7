#include "serival/parse.h"

#include <algorithm>
#include <stdexcept>

namespace serival {
namespace {

int index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown variable '" + name + "' (expected one of: " + known + ")");
  }
  return static_cast<int>(it - names.begin());
}

}  // namespace

Poly PolyAlgebra::variable(const std::string& name) const {
  return Poly::variable(field, nvars(), index_of(names, name));
}

Poly PolyAlgebra::div(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  auto q = divide_exact(a, b);
  if (!q) throw std::invalid_argument("division is not exact in the polynomial ring");
  return *q;
}

Poly PolyAlgebra::pow(const Poly& a, long e) const {
  if (e < 0) {
    if (!a.is_constant() || a.is_zero()) {
      throw std::invalid_argument("negative exponent on a non-constant polynomial");
    }
    return Poly::constant(field, nvars(), a.constant_term().inverse().pow(static_cast<unsigned long>(-e)));
  }
  return a.pow(static_cast<unsigned>(e));
}

RatFunc RatFuncAlgebra::variable(const std::string& name) const {
  return RatFunc::from_poly(Poly::variable(field, nvars(), index_of(names, name)));
}

Poly parse_poly(std::string_view text, const Field& field, const std::vector<std::string>& names) {
  return parse_expression(PolyAlgebra{field, names}, text);
}

RatFunc parse_ratfunc(std::string_view text, const Field& field, int nvars) {
  return parse_expression(RatFuncAlgebra{field, indexed_names("t", nvars)}, text);
}

}  // namespace serival
