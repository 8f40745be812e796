#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetcalc/linalg.hpp"
#include "jetcalc/varcalc.hpp"
#include "jetcalc/zero.hpp"

namespace jetcalc {

class SolveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Worst verdict over a vector of residuals.
struct VectorVerdict {
  ZeroVerdict verdict = ZeroVerdict::Zero;
  std::vector<ZeroResult> components;
};
VectorVerdict zero_test(const VectorExpr& v);

// (delta_P G)|_E, one entry per equation.
VectorExpr symmetry_residual(const PdeSystem& sys, const VectorExpr& P);
// (delta*_Q G)|_E, one entry per dependent variable.
VectorExpr adjoint_symmetry_residual(const PdeSystem& sys, const VectorExpr& Q);
// E_u(G . Q), not restricted.
VectorExpr multiplier_residual(const PdeSystem& sys, const VectorExpr& Q);
VectorVerdict verify_multiplier(const PdeSystem& sys, const VectorExpr& Q);
// delta_P G + delta*_G P for square systems, not restricted.
VectorExpr variational_symmetry_residual(const PdeSystem& sys, const VectorExpr& P);

struct HelmholtzTypeTerm {
  int dep = 0;  // alpha
  int eq = 0;   // a
  MultiIndex J;
  Expr residual;  // R_{alpha;a,J} + (-1)^|J| E^{(J)}_{u^alpha}(Q_a), restricted
};

struct HelmholtzTypeReport {
  VectorExpr adjoint_residual;
  bool adjoint_symmetry = false;  // adjoint residual structurally zero
  std::vector<HelmholtzTypeTerm> terms;  // nonzero only
  Expr nonlinear;  // part of the lift not linear in G
  bool multiplier = false;
};

HelmholtzTypeReport helmholtz_type_split(const PdeSystem& sys, const VectorExpr& Q);

// D*(chi) for the given identity.
VectorExpr gauge_multiplier(const PdeSystem& sys, const Expr& chi, int identity = 0);

enum class Triviality { Trivial, NonTrivial, Undetermined };
const char* to_string(Triviality t);

struct TrivialityResult {
  Triviality verdict = Triviality::Undetermined;
  VectorExpr restricted;
  // Gauge witness sum_k c_k chi_k per identity when identities are used.
  std::vector<Expr> witness;
};

// Without identities: Q|_E == 0. With identities: Q - sum_j D_j*(chi_j) == 0
// on E for some chi_j in span(chi_basis) (default {1, t, x^i}).
TrivialityResult triviality_check(const PdeSystem& sys, const VectorExpr& Q,
                                  const std::vector<Expr>& chi_basis = {});

enum class Target { Multipliers, Symmetries, AdjointSymmetries, Variational };
const char* to_string(Target t);
Target parse_target(const std::string& s);

struct LinearAnsatz {
  std::vector<VectorExpr> basis;
};

struct SolutionSet {
  size_t unknowns = 0;
  size_t equations = 0;
  size_t rank = 0;
  // Row-reduced basis of the solution span; columns ordered most complex first.
  std::vector<VectorExpr> basis;
};

VectorExpr residual_for(Target target, const PdeSystem& sys, const VectorExpr& candidate);

// Monomials in `vars` of total degree <= degree, times {1, t, x^i}.
std::vector<Expr> monomial_basis(const std::vector<JetVar>& vars, int degree, int n_indep, bool with_indep = true);
// The default ansatz: monomial_basis over the low-order variables up to the
// largest term degree of G, placed in every component.
LinearAnsatz default_ansatz(const PdeSystem& sys, Target target, int degree = -1);
int max_term_degree(const Expr& e);

SolutionSet solve_linear_ansatz(Target target, const PdeSystem& sys, const LinearAnsatz& ansatz);

// Canonical row-reduced span of a list of vectors (used to compare sets).
std::vector<VectorExpr> canonical_span(const std::vector<VectorExpr>& vs);

// Splits a vector of expressions linear in unknowns into rows over monomials.
// Helper shared with the direct current construction.
struct SplitKey {
  size_t component;
  Monomial mono;
};
struct SplitRows {
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<std::string> keys;  // printable monomials for diagnostics
};
// columns[j] is the residual contributed by unknown j; `inhomogeneous` is the
// fixed part moved to the right-hand side.
SplitRows split_linear(const std::vector<VectorExpr>& columns, const VectorExpr& inhomogeneous,
                       const JetSpace& space);

}  // namespace jetcalc
