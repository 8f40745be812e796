#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetcalc/pde_system.hpp"

namespace jetcalc {

using VectorExpr = std::vector<Expr>;

// comp[0] is the density T, comp[i] the flux X^i.
struct Current {
  std::vector<Expr> comp;

  Current() = default;
  explicit Current(int n_indep) : comp(static_cast<size_t>(n_indep)) {}
  const Expr& T() const { return comp.at(0); }
  int size() const { return static_cast<int>(comp.size()); }
  friend Current operator+(const Current& a, const Current& b);
  friend Current operator-(const Current& a, const Current& b);
  Current scaled(const Coeff& c) const;
};

class VarCalcError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// D_t comp[0] + sum_i D_i comp[i].
Expr divergence(const Current& c);

// Linearization of f in the direction v (one entry per dependent variable).
Expr frechet(const Expr& f, const VectorExpr& v);
// Component alpha: sum_J (-D)_J (w df/du^alpha_J).
VectorExpr frechet_adjoint(const Expr& f, const Expr& w, int n_dep);
// Psi with w frechet(f,v) - v . frechet_adjoint(f,w) == Div Psi.
Current adjoint_current(const Expr& f, const VectorExpr& v, const Expr& w, int n_indep);

VectorExpr euler(const Expr& f, int n_dep);
Expr euler_component(const Expr& f, int dep);
// E^{(J)}_{u^dep}(f) = sum_{K>=J} binom(K,J) (-D)_{K-J} df/du_K.
Expr higher_euler(const Expr& f, int dep, const MultiIndex& J);
// Symmetric tensor components E^{(J)} J!/|J|! for every J of order l.
std::map<MultiIndex, Expr> higher_euler_tensor(const Expr& f, int dep, int l, int n_indep);
Current euler_current(const Expr& f, const VectorExpr& v, int n_indep);

// F with Div F == f for f in the kernel of the Euler operator, by the linear
// homotopy u -> u0 + l (u - u0). u0 holds constants, empty meaning zero.
Current divergence_antiderivative(const Expr& f, const JetSpace& space, const VectorExpr& u0 = {});

struct HelmholtzResidual {
  int eq = 0;
  int dep = 0;
  MultiIndex J;
  Expr residual;
};

struct HelmholtzReport {
  bool square = false;
  bool odd_order = false;
  bool variational = false;
  int order = 0;
  std::vector<HelmholtzResidual> residuals;  // nonzero ones only
};

HelmholtzReport helmholtz_check(const PdeSystem& sys);
// L = sum_alpha u^alpha int_0^1 G^alpha(l u) dl.
Expr lagrangian_from_system(const PdeSystem& sys);

struct ScalingResult {
  Coeff s;
  Coeff omega;
  VectorExpr P;
  Current F;
};

// Weight of f under the action; throws if f is not homogeneous.
Coeff scaling_weight(const Expr& f, const ScalingAction& action);
// omega f - P . E(f) - Div F == 0 with P the scaling characteristic.
ScalingResult scaling_identity(const Expr& f, const ScalingAction& action, int n_indep);

// Every multi-index of order <= k over n variables.
std::vector<MultiIndex> multi_indices_upto(int k, int n);

}  // namespace jetcalc
