#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>

#include "jetcalc/expr.hpp"

namespace jetcalc {

// Builds f^{(counts)}(args), applying the declaration's derivative rules.
Expr make_func(const std::shared_ptr<const FunctionDecl>& decl, std::vector<int> counts,
               std::vector<Expr> args);

// D_iv, with iv = 0 for t and iv = i for x^i.
Expr total_derivative(const Expr& e, int iv);
Expr total_derivative(const Expr& e, const MultiIndex& J);

// Formal partial derivative with respect to a Jet, Indep or Slot base.
Expr partial(const Expr& e, const Base& v);
inline Expr partial(const Expr& e, const JetVar& v) { return partial(e, Base::jet(v)); }
// Derivative in a free parameter; throws if the parameter occurs in an exponent.
Expr partial_param(const Expr& e, int param);

// Replaces Jet/Indep/Slot leaves (also inside function arguments and
// compound bases) for which the callback returns a value.
using LeafMap = std::function<std::optional<Expr>(const Base&)>;
Expr substitute(const Expr& e, const LeafMap& f);
Expr substitute(const Expr& e, const std::map<JetVar, Expr>& bindings);

// Binds free parameters to numeric values.
Expr bind_params(const Expr& e, std::span<const std::optional<Rational>> values);

// Visits every factor, recursing into function arguments and compound bases.
void visit_factors(const Expr& e, const std::function<void(const Factor&)>& f);
std::set<JetVar> jet_vars(const Expr& e);
// Largest derivative order of any jet variable, -1 if none.
int max_order(const Expr& e);
bool has_opaque(const Expr& e);
bool has_compound(const Expr& e);
bool depends_on_dep(const Expr& e, int dep);

}  // namespace jetcalc
