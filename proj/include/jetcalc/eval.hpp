#pragma once

#include <functional>
#include <map>
#include <stdexcept>

#include "jetcalc/expr.hpp"

namespace jetcalc {

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Values for every base an expression may contain.
struct NumericPoint {
  std::map<JetVar, Rational> jet;
  std::vector<Rational> indep;
  std::vector<Rational> params;
  // Value of an opaque node at numeric arguments.
  std::function<Rational(const FuncNode&, const std::vector<Rational>&)> func;
};

// Exact evaluation. Throws EvalError for a missing binding or a power that
// is not an exact rational (e.g. a negative base with a non-integer exponent).
Rational eval_numeric(const Expr& e, const NumericPoint& pt);

}  // namespace jetcalc
