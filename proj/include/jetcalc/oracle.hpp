#pragma once

#include <cstdint>
#include <string>

#include "jetcalc/eval.hpp"
#include "jetcalc/varcalc.hpp"

namespace jetcalc {

// Exact evaluation at random rational points. Opaque functions get random
// values memoized per (name, derivative counts, arguments), so formal
// derivatives are independent symbols at each point.
struct OracleOptions {
  int points = 50;
  uint64_t seed = 20240611;
  // Attempts per requested point before giving up (irrational powers,
  // vanishing denominators).
  int retries = 8;
};

struct OracleResult {
  int evaluated = 0;
  int nonzero = 0;
  int skipped = 0;
  std::string first_failure;
  bool passed(const OracleOptions& o) const { return nonzero == 0 && evaluated >= o.points; }
};

OracleResult numeric_zero_check(const Expr& e, const JetSpace& space, const OracleOptions& opts = {});

// D_t T + Div X evaluated off the solution space, with lead-derivative values
// taken from the solved forms at the same point.
OracleResult numeric_conservation_check(const PdeSystem& sys, const Current& c, const OracleOptions& opts = {});

}  // namespace jetcalc
