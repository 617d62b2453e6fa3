#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spinfock {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// The fixed list of verification suites.
const std::vector<std::string>& verify_suites();

/// Runs one suite at the quick or full caps. Unknown names throw.
VerifyReport run_suite(const std::string& suite, bool full);

/// Index-parallel loop; the worker count is capped by SPINFOCK_THREADS.
/// Results must be written to disjoint slots so the outcome is
/// order-independent.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

}  // namespace spinfock
