#ifndef SERIVAL_SELFTEST_H
#define SERIVAL_SELFTEST_H

#include <string>
#include <vector>

namespace serival {

struct SelftestCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Quick invariant suite: ring laws, cofactor identity, Hensel convergence,
/// membership witnesses, envelope soundness and scan reproducibility.
std::vector<SelftestCheck> run_selftest();

}  // namespace serival

#endif  // SERIVAL_SELFTEST_H
