#include "jetcalc/eval.hpp"

namespace jetcalc {

namespace {

Rational eval_base(const Base& b, const NumericPoint& pt) {
  switch (b.kind()) {
    case BaseKind::Jet: {
      auto it = pt.jet.find(b.jet());
      if (it == pt.jet.end()) throw EvalError("no value for jet variable");
      return it->second;
    }
    case BaseKind::Indep:
      if (static_cast<size_t>(b.index()) >= pt.indep.size()) throw EvalError("no value for independent variable");
      return pt.indep[b.index()];
    case BaseKind::Slot:
      throw EvalError("cannot evaluate a function-argument slot");
    case BaseKind::Func: {
      if (!pt.func) throw EvalError("no evaluator for opaque function " + b.func().decl->name);
      std::vector<Rational> args;
      for (auto& a : b.func().args) args.push_back(eval_numeric(a, pt));
      return pt.func(b.func(), args);
    }
    case BaseKind::Compound:
      return eval_numeric(b.compound(), pt);
  }
  throw EvalError("unknown base");
}

}  // namespace

Rational eval_numeric(const Expr& e, const NumericPoint& pt) {
  Rational sum = 0;
  for (auto& t : e.terms()) {
    Rational v;
    try {
      v = t.coeff.evaluate(pt.params);
    } catch (const std::exception& ex) {
      throw EvalError(ex.what());
    }
    for (auto& f : t.mono) {
      Rational b = eval_base(f.base, pt);
      Rational ex;
      try {
        ex = f.exp.evaluate(pt.params);
      } catch (const std::exception& err) {
        throw EvalError(err.what());
      }
      auto p = rational_power(b, ex);
      if (!p) throw EvalError("power is not an exact rational at this point");
      v *= *p;
    }
    sum += v;
  }
  return sum;
}

}  // namespace jetcalc
