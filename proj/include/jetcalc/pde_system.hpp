#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetcalc/text.hpp"

namespace jetcalc {

class SystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// G = lead - rhs unless the file supplies its own G, which must then vanish
// after restriction.
struct Equation {
  std::string name;
  JetVar lead;
  Expr rhs;
  Expr G;
  bool custom_g = false;
};

// One term coeff * D^deriv applied to equation `eq`.
struct IdentityTerm {
  int eq = 0;
  Expr coeff;
  MultiIndex deriv;
};

// A differential identity sum_k coeff_k D^{J_k} G^{eq_k} == 0.
struct Identity {
  std::string name;
  std::vector<IdentityTerm> terms;
};

// t -> l^a t, x^i -> l^{b_i} x^i, u^alpha -> l^{c_alpha} u^alpha.
struct ScalingAction {
  std::string name;
  std::vector<Coeff> indep;  // a, b_1, ..., b_n
  std::vector<Coeff> dep;    // c_alpha
};

struct ValidationReport {
  bool evolution_form = false;
  std::vector<std::string> notes;
};

// Result of substituting lead -> rhs + Ghat^a. Ghat^a is dependent variable
// n_dep + a.
struct Lift {
  Expr restricted;
  struct LinearTerm {
    int eq;
    MultiIndex J;
    Expr coeff;
  };
  std::vector<LinearTerm> linear;
  Expr nonlinear;  // terms of degree >= 2 in Ghat, or Ghat inside a non-polynomial factor
};

class PdeSystem {
public:
  PdeSystem() = default;
  PdeSystem(const PdeSystem& o);
  PdeSystem& operator=(const PdeSystem& o);

  std::string name;
  JetSpace space;
  std::vector<Equation> equations;
  std::vector<Identity> identities;
  std::vector<ScalingAction> scalings;

  int n_indep() const { return space.n_indep(); }
  int n_dep() const { return space.n_dep(); }
  int n_eq() const { return static_cast<int>(equations.size()); }
  std::vector<Expr> G() const;
  // Largest lead order.
  int order() const;

  // Throws SystemError naming the equation and variable on failure.
  ValidationReport validate() const;

  bool is_lead_descendant(const JetVar& v) const;
  Expr restrict(const Expr& e) const;
  std::vector<Expr> restrict(const std::vector<Expr>& v) const;
  Lift lift_off_solution_space(const Expr& e) const;

  // Jet variables strictly below some alternative lead.
  std::set<JetVar> low_order_variables() const;
  // Jet variables G^a can be solved for linearly with no descendants left over.
  std::vector<JetVar> alternative_leads() const;

  // sum coeff * D^J (vec[eq]).
  Expr apply_identity(const Identity& id, const std::vector<Expr>& vec) const;
  // Formal adjoint applied to chi, one component per equation.
  std::vector<Expr> identity_adjoint(const Identity& id, const Expr& chi) const;

  const ScalingAction* find_scaling(const std::string& name) const;
  // A space naming Ghat^a as "G1hat", ... for printing lifts.
  JetSpace lifted_space() const;

private:
  struct Cache {
    std::mutex mu;
    std::map<JetVar, Expr> reduced;
    std::map<JetVar, Expr> lifted;
  };
  const Equation* lead_for(const JetVar& v) const;
  Expr reduce(const JetVar& v, int depth) const;
  Expr restrict_at(const Expr& e, int depth) const;
  Expr lift_var(const JetVar& v, int depth) const;
  Expr lift_expr(const Expr& e, int depth) const;

  mutable std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

}  // namespace jetcalc
