#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetcalc/detsys.hpp"

namespace jetcalc {

class BuildError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ConservedCurrent {
  Current current;
  std::string method;  // homotopy | scaling | dimensional | direct | user
  VectorExpr multiplier;
  std::optional<Coeff> omega;
  size_t trivial_freedom = 0;  // direct method: free coefficients pinned to 0
  std::vector<std::string> notes;
};

// D_t T + Div X - G.Q == 0 identically.
ZeroResult verify_characteristic(const PdeSystem& sys, const Current& c, const VectorExpr& Q);
// (D_t T + Div X)|_E == 0.
ZeroResult verify_conservation(const PdeSystem& sys, const Current& c);

ConservedCurrent current_from_multiplier_homotopy(const PdeSystem& sys, const VectorExpr& Q,
                                                  const VectorExpr& u0 = {});
ConservedCurrent current_from_multiplier_scaling(const PdeSystem& sys, const VectorExpr& Q,
                                                 const ScalingAction& action);

// The augmented system carries constants promoted to dependent variables;
// Q holds the original multiplier followed by the auxiliary ones. `values`
// fixes those variables afterwards, giving a current for `original`.
ConservedCurrent verify_dimensional_scaling(const PdeSystem& augmented, const VectorExpr& Q,
                                            const ScalingAction& action, const std::map<int, Rational>& values,
                                            const PdeSystem& original);

// Unknown rational coefficients over the given bases; empty bases select
// monomials over the low-order variables.
ConservedCurrent current_from_multiplier_direct(const PdeSystem& sys, const VectorExpr& Q,
                                                std::vector<Expr> T_basis = {},
                                                std::vector<std::vector<Expr>> X_basis = {});

VectorExpr multiplier_from_current(const PdeSystem& sys, const Current& c);

struct EquivalenceResult {
  Triviality verdict = Triviality::Undetermined;  // Trivial means equivalent
  VectorExpr difference_multiplier;
};
EquivalenceResult current_equivalence(const PdeSystem& sys, const Current& a, const Current& b,
                                      const std::vector<Expr>& chi_basis = {});

}  // namespace jetcalc
