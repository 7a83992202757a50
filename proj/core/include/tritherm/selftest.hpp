#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

namespace tritherm {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string message;  // empty on pass
};

// Named invariant checks behind the `verify` subcommand. Each check draws
// from its own seeded raw-mt19937_64 stream (no std distributions, so the
// sampled cases are identical on every platform) and reports pass/fail with
// a diagnostic. Order and names are stable.
std::vector<SelftestResult> run_selftests(unsigned long seed, mpfr_prec_t prec,
                                          unsigned threads);

}  // namespace tritherm
