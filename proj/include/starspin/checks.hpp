#ifndef STARSPIN_CHECKS_HPP
#define STARSPIN_CHECKS_HPP

// Self-contained verification suites over the whole library, one per core
// identity family, each reporting its worst deviation against a pinned
// tolerance. The CLI `check all` subcommand and the acceptance runner both
// consume these.

#include <string>
#include <vector>

namespace starspin {

struct CheckResult {
  std::string name;
  double worst;  // largest deviation found, or deviation/tolerance ratio
  double tol;    // the bound `worst` is held to
  bool pass;
};

/// Tolerance used where a suite's bound is the adjustable default: the
/// STARSPIN_TOL environment variable when set and parseable, 1e-10 otherwise.
double default_check_tol();

/// Runs the fifteen suites in their fixed order. Deterministic.
std::vector<CheckResult> run_all_checks();

}  // namespace starspin

#endif
