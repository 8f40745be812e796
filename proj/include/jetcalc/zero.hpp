#pragma once

#include "jetcalc/expr.hpp"

namespace jetcalc {

enum class ZeroVerdict { Zero, NonZero, Undetermined };

const char* to_string(ZeroVerdict v);

struct ZeroResult {
  ZeroVerdict verdict = ZeroVerdict::Undetermined;
  // The expression that was finally inspected; differs from the input only
  // when compound denominators were cleared.
  Expr cleared;
  bool denominators_cleared = false;
};

// Decides zero for generalized polynomials. Compound denominators are
// cleared first. Opaque function nodes and surviving compound bases are
// treated as independent symbols, so a nonzero result there is only
// "undetermined".
ZeroResult zero_test(const Expr& e);

inline bool is_zero(const Expr& e) { return zero_test(e).verdict == ZeroVerdict::Zero; }

}  // namespace jetcalc
