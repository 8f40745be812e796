#include "jetcalc/current_builder.hpp"

#include <algorithm>

#include "jetcalc/calculus.hpp"

namespace jetcalc {

namespace {

Expr dot(const VectorExpr& a, const VectorExpr& b) {
  Expr out;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) out += a[i] * b[i];
  return out;
}

void require_multiplier(const PdeSystem& sys, const VectorExpr& Q) {
  if (static_cast<int>(Q.size()) != sys.n_eq())
    throw BuildError("multiplier has " + std::to_string(Q.size()) + " components, expected " +
                     std::to_string(sys.n_eq()));
}

Current restrict_current(const PdeSystem& sys, const Current& c) {
  Current out(c.size());
  for (int i = 0; i < c.size(); ++i) out.comp[i] = sys.restrict(c.comp[i]);
  return out;
}

// E_{u^dep_K}(f) = sum_L (-D)_L df/du^dep_{K+L}.
Expr shifted_euler(const Expr& f, int dep, const MultiIndex& K) {
  Expr out;
  for (auto& v : jet_vars(f)) {
    if (v.dep != dep || !v.mi.covers(K)) continue;
    MultiIndex L = v.mi.minus(K);
    Expr d = total_derivative(partial(f, v), L);
    if (L.order() % 2) d = -d;
    out += d;
  }
  return out;
}

bool omega_is_zero(const Coeff& w) { return w.is_zero(); }

}  // namespace

ZeroResult verify_characteristic(const PdeSystem& sys, const Current& c, const VectorExpr& Q) {
  require_multiplier(sys, Q);
  return zero_test(divergence(c) - dot(sys.G(), Q));
}

ZeroResult verify_conservation(const PdeSystem& sys, const Current& c) {
  return zero_test(sys.restrict(divergence(c)));
}

ConservedCurrent current_from_multiplier_homotopy(const PdeSystem& sys, const VectorExpr& Q, const VectorExpr& u0) {
  require_multiplier(sys, Q);
  ConservedCurrent r;
  r.method = "homotopy";
  r.multiplier = Q;
  try {
    r.current = divergence_antiderivative(dot(sys.G(), Q), sys.space, u0);
  } catch (const VarCalcError& e) {
    throw BuildError(e.what());
  }
  if (!u0.empty()) r.notes.push_back("homotopy base point shifted from zero");
  return r;
}

ConservedCurrent current_from_multiplier_scaling(const PdeSystem& sys, const VectorExpr& Q,
                                                 const ScalingAction& action) {
  require_multiplier(sys, Q);
  Expr f = dot(sys.G(), Q);
  ScalingResult sr;
  try {
    sr = scaling_identity(f, action, sys.n_indep());
  } catch (const VarCalcError& e) {
    throw BuildError(e.what());
  }
  if (omega_is_zero(sr.omega)) throw BuildError("critical weight; use homotopy or dimensional scaling");
  ConservedCurrent r;
  r.method = "scaling";
  r.multiplier = Q;
  r.omega = sr.omega;
  r.current = restrict_current(sys, sr.F).scaled(sr.omega.inverse());
  return r;
}

ConservedCurrent verify_dimensional_scaling(const PdeSystem& augmented, const VectorExpr& Q,
                                            const ScalingAction& action, const std::map<int, Rational>& values,
                                            const PdeSystem& original) {
  require_multiplier(augmented, Q);
  auto vv = verify_multiplier(augmented, Q);
  if (vv.verdict != ZeroVerdict::Zero) {
    std::string which;
    for (size_t k = 0; k < vv.components.size(); ++k)
      if (vv.components[k].verdict != ZeroVerdict::Zero)
        which += (which.empty() ? "" : ", ") + augmented.space.dep[k];
    throw BuildError("augmented multiplier fails its determining system (Euler residual in " + which + ")");
  }
  Expr f = dot(augmented.G(), Q);
  ScalingResult sr;
  try {
    sr = scaling_identity(f, action, augmented.n_indep());
  } catch (const VarCalcError& e) {
    throw BuildError(e.what());
  }
  if (omega_is_zero(sr.omega)) throw BuildError("critical weight for this dimensional action; choose another");
  Current c = restrict_current(augmented, sr.F).scaled(sr.omega.inverse());
  LeafMap fix = [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet) return std::nullopt;
    auto it = values.find(b.jet().dep);
    if (it == values.end()) return std::nullopt;
    if (b.jet().mi.order() == 0) return Expr(it->second);
    return Expr();
  };
  for (auto& e : c.comp) e = substitute(e, fix);
  for (auto& e : c.comp)
    for (auto& v : jet_vars(e))
      if (v.dep >= original.n_dep())
        throw BuildError("current still depends on the promoted variable " + augmented.space.dep[v.dep]);
  ConservedCurrent r;
  r.method = "dimensional";
  // Report the multiplier of the original system.
  for (int a = 0; a < original.n_eq() && a < static_cast<int>(Q.size()); ++a) r.multiplier.push_back(substitute(Q[a], fix));
  r.omega = sr.omega;
  r.current = c;
  return r;
}

ConservedCurrent current_from_multiplier_direct(const PdeSystem& sys, const VectorExpr& Q, std::vector<Expr> T_basis,
                                                std::vector<std::vector<Expr>> X_basis) {
  require_multiplier(sys, Q);
  int n = sys.n_indep();
  Expr f = dot(sys.G(), Q);
  if (T_basis.empty() || X_basis.empty()) {
    auto low = sys.low_order_variables();
    std::vector<JetVar> tvars(low.begin(), low.end());
    // Fluxes may carry first t-derivatives of the low-order variables.
    std::vector<JetVar> xvars = tvars;
    for (auto& v : tvars) {
      JetVar w{v.dep, v.mi.plus(0)};
      if (std::find(xvars.begin(), xvars.end(), w) == xvars.end()) xvars.push_back(w);
    }
    int degree;
    try {
      degree = std::max(1, max_term_degree(f));
    } catch (const SolveError& e) {
      throw BuildError(e.what());
    }
    std::optional<Coeff> s;
    const ScalingAction* act = sys.scalings.empty() ? nullptr : &sys.scalings[0];
    if (act) {
      try {
        s = scaling_weight(f, *act);
      } catch (const VarCalcError&) {
        s.reset();
      }
    }
    // Keep only monomials of the weight a homogeneous solution must have.
    auto pick = [&](const std::vector<JetVar>& vars, int iv) {
      std::vector<Expr> out;
      for (auto& m : monomial_basis(vars, degree, n)) {
        if (s) {
          Coeff w;
          try {
            w = scaling_weight(m, *act);
          } catch (const VarCalcError&) {
            continue;
          }
          if (!(w == *s + act->indep[iv])) continue;
        }
        out.push_back(m);
      }
      return out;
    };
    if (T_basis.empty()) T_basis = pick(tvars, 0);
    if (X_basis.empty())
      for (int i = 1; i < n; ++i) X_basis.push_back(pick(xvars, i));
  }
  if (static_cast<int>(X_basis.size()) != n - 1) throw BuildError("one flux basis per spatial variable is required");
  std::vector<VectorExpr> cols;
  for (auto& b : T_basis) cols.push_back({total_derivative(b, 0)});
  for (int i = 1; i < n; ++i)
    for (auto& b : X_basis[i - 1]) cols.push_back({total_derivative(b, i)});
  SplitRows rows;
  try {
    rows = split_linear(cols, {-f}, sys.space);
  } catch (const SolveError& e) {
    throw BuildError(e.what());
  }
  LinearSystem ls(cols.size());
  for (size_t i = 0; i < rows.rows.size(); ++i) ls.add_row(rows.rows[i], rows.rhs[i]);
  auto x = ls.particular();
  if (!x)
    throw BuildError("ansatz too small: the characteristic equation has no solution over the given bases (" +
                     std::to_string(cols.size()) + " unknowns)");
  ConservedCurrent r;
  r.method = "direct";
  r.multiplier = Q;
  r.trivial_freedom = ls.free_columns().size();
  r.current = Current(n);
  size_t k = 0;
  for (auto& b : T_basis) r.current.comp[0] += b.scaled(Coeff((*x)[k++]));
  for (int i = 1; i < n; ++i)
    for (auto& b : X_basis[i - 1]) r.current.comp[i] += b.scaled(Coeff((*x)[k++]));
  return r;
}

VectorExpr multiplier_from_current(const PdeSystem& sys, const Current& c_in) {
  Current c = restrict_current(sys, c_in);
  VectorExpr Q;
  for (auto& eq : sys.equations) {
    if (eq.lead.mi.order() == 0)
      throw BuildError("equation '" + eq.name + "' has an undifferentiated lead; no subleading derivative exists");
    Expr q;
    for (int i = 0; i < sys.n_indep(); ++i) {
      if (eq.lead.mi[i] == 0) continue;
      MultiIndex K = eq.lead.mi.minus(MultiIndex{}.plus(i));
      q += shifted_euler(c.comp[i], eq.lead.dep, K);
    }
    Q.push_back(q);
  }
  return Q;
}

EquivalenceResult current_equivalence(const PdeSystem& sys, const Current& a, const Current& b,
                                      const std::vector<Expr>& chi_basis) {
  EquivalenceResult r;
  // The multiplier correspondence only means something for conserved currents.
  for (const Current* c : {&a, &b})
    if (verify_conservation(sys, *c).verdict == ZeroVerdict::NonZero)
      throw BuildError("current_equivalence: a current is not conserved");
  r.difference_multiplier = multiplier_from_current(sys, a - b);
  r.verdict = triviality_check(sys, r.difference_multiplier, chi_basis).verdict;
  return r;
}

}  // namespace jetcalc
