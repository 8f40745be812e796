#include "jetcalc/detsys.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "jetcalc/calculus.hpp"

namespace jetcalc {

namespace {

ZeroVerdict worse(ZeroVerdict a, ZeroVerdict b) {
  if (a == ZeroVerdict::NonZero || b == ZeroVerdict::NonZero) return ZeroVerdict::NonZero;
  if (a == ZeroVerdict::Undetermined || b == ZeroVerdict::Undetermined) return ZeroVerdict::Undetermined;
  return ZeroVerdict::Zero;
}

Expr dot(const VectorExpr& a, const VectorExpr& b) {
  Expr out;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) out += a[i] * b[i];
  return out;
}

void require_length(const VectorExpr& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    throw SolveError(std::string(what) + " has " + std::to_string(v.size()) + " components, expected " +
                     std::to_string(n));
}

struct KeyLess {
  bool operator()(const std::pair<size_t, Monomial>& a, const std::pair<size_t, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return compare_monomials(a.second, b.second) < 0;
  }
};

// Solves sum_j x_j columns[j] == rhs by splitting over monomials, with
// coefficients in Q(params). A solution is generic in the parameters.
std::optional<std::vector<Coeff>> solve_over_params(const std::vector<VectorExpr>& columns, const VectorExpr& rhs) {
  const size_t n = columns.size();
  std::map<std::pair<size_t, Monomial>, std::vector<Coeff>, KeyLess> rows;
  auto add = [&](size_t comp, const Term& t, size_t col) {
    for (auto& f : t.mono)
      if (f.base.kind() == BaseKind::Func || f.base.kind() == BaseKind::Compound)
        throw SolveError("cannot split over opaque functions or non-monomial denominators");
    auto& row = rows[{comp, t.mono}];
    if (row.empty()) row.assign(n + 1, Coeff());
    row[col] += t.coeff;
  };
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < columns[j].size(); ++k)
      for (auto& t : columns[j][k].terms()) add(k, t, j);
  for (size_t k = 0; k < rhs.size(); ++k)
    for (auto& t : rhs[k].terms()) add(k, t, n);

  std::vector<std::vector<Coeff>> m;
  for (auto& [key, row] : rows) m.push_back(row);
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Coeff inv = m[r][c].inverse();
    for (auto& e : m[r]) e *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Coeff f = m[i][c];
      for (size_t k = c; k <= n; ++k) m[i][k] = m[i][k] - f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (size_t i = r; i < m.size(); ++i)
    if (!m[i][n].is_zero()) return std::nullopt;
  std::vector<Coeff> x(n);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][n];
  return x;
}

void require_bound_params(const PdeSystem& sys) {
  if (!sys.space.params.empty())
    throw SolveError("free parameter '" + sys.space.params[0] + "' must be bound numerically for solving (--param " +
                     sys.space.params[0] + "=...)");
}

int indep_degree(const Monomial& m) {
  int d = 0;
  for (auto& f : m)
    if (f.base.kind() == BaseKind::Indep && f.exp.is_constant())
      d += static_cast<int>(f.exp.constant().get_num().get_si());
  return d;
}

int jet_order(const Monomial& m) {
  int o = -1;
  for (auto& f : m)
    if (f.base.kind() == BaseKind::Jet) o = std::max(o, f.base.jet().mi.order());
  return o;
}

Rational jet_degree(const Monomial& m) {
  Rational d = 0;
  for (auto& f : m)
    if (f.base.kind() == BaseKind::Jet && f.exp.is_constant()) d += f.exp.constant();
  return d;
}

// True when a should come before b: more explicit t/x, then higher order,
// then higher degree.
bool more_complex(const std::pair<size_t, Monomial>& a, const std::pair<size_t, Monomial>& b) {
  if (a.first != b.first) return a.first < b.first;
  int ia = indep_degree(a.second), ib = indep_degree(b.second);
  if (ia != ib) return ia > ib;
  int oa = jet_order(a.second), ob = jet_order(b.second);
  if (oa != ob) return oa > ob;
  Rational da = jet_degree(a.second), db = jet_degree(b.second);
  if (da != db) return da > db;
  return compare_monomials(a.second, b.second) > 0;
}

}  // namespace

VectorVerdict zero_test(const VectorExpr& v) {
  VectorVerdict r;
  for (auto& e : v) {
    r.components.push_back(zero_test(e));
    r.verdict = worse(r.verdict, r.components.back().verdict);
  }
  return r;
}

VectorExpr symmetry_residual(const PdeSystem& sys, const VectorExpr& P) {
  require_length(P, sys.n_dep(), "symmetry characteristic");
  VectorExpr out;
  for (auto& g : sys.G()) out.push_back(sys.restrict(frechet(g, P)));
  return out;
}

VectorExpr adjoint_symmetry_residual(const PdeSystem& sys, const VectorExpr& Q) {
  require_length(Q, sys.n_eq(), "multiplier");
  VectorExpr out(static_cast<size_t>(sys.n_dep()));
  auto G = sys.G();
  for (int a = 0; a < sys.n_eq(); ++a) {
    auto adj = frechet_adjoint(G[a], Q[a], sys.n_dep());
    for (int al = 0; al < sys.n_dep(); ++al) out[al] += adj[al];
  }
  return sys.restrict(out);
}

VectorExpr multiplier_residual(const PdeSystem& sys, const VectorExpr& Q) {
  require_length(Q, sys.n_eq(), "multiplier");
  return euler(dot(sys.G(), Q), sys.n_dep());
}

VectorVerdict verify_multiplier(const PdeSystem& sys, const VectorExpr& Q) {
  return zero_test(multiplier_residual(sys, Q));
}

VectorExpr variational_symmetry_residual(const PdeSystem& sys, const VectorExpr& P) {
  if (sys.n_eq() != sys.n_dep()) throw SolveError("variational symmetries need as many equations as unknowns");
  require_length(P, sys.n_dep(), "symmetry characteristic");
  auto G = sys.G();
  VectorExpr out;
  for (int al = 0; al < sys.n_dep(); ++al) out.push_back(frechet(G[al], P));
  for (int a = 0; a < sys.n_eq(); ++a) {
    auto adj = frechet_adjoint(P[a], G[a], sys.n_dep());
    for (int al = 0; al < sys.n_dep(); ++al) out[al] += adj[al];
  }
  return out;
}

HelmholtzTypeReport helmholtz_type_split(const PdeSystem& sys, const VectorExpr& Q) {
  require_length(Q, sys.n_eq(), "multiplier");
  HelmholtzTypeReport r;
  r.adjoint_residual = adjoint_symmetry_residual(sys, Q);
  r.adjoint_symmetry = zero_test(r.adjoint_residual).verdict == ZeroVerdict::Zero;
  auto G = sys.G();
  using Key = std::tuple<int, int, MultiIndex>;
  std::map<Key, Expr> acc;
  for (int al = 0; al < sys.n_dep(); ++al) {
    Expr e;
    for (int a = 0; a < sys.n_eq(); ++a) e += frechet_adjoint(G[a], Q[a], sys.n_dep())[al];
    Lift lift = sys.lift_off_solution_space(e);
    r.nonlinear += lift.nonlinear;
    for (auto& lt : lift.linear) acc[Key{al, lt.eq, lt.J}] += sys.restrict(lt.coeff);
    for (int a = 0; a < sys.n_eq(); ++a) {
      int ord = max_order(Q[a]);
      if (ord < 0) continue;
      for (auto& J : multi_indices_upto(ord, sys.n_indep())) {
        Expr h = sys.restrict(higher_euler(Q[a], al, J));
        if (h.is_zero()) continue;
        if (J.order() % 2) h = -h;
        acc[Key{al, a, J}] += h;
      }
    }
  }
  for (auto& [k, v] : acc) {
    if (zero_test(v).verdict == ZeroVerdict::Zero) continue;
    r.terms.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
  }
  r.multiplier = r.adjoint_symmetry && r.terms.empty() && r.nonlinear.is_zero();
  return r;
}

VectorExpr gauge_multiplier(const PdeSystem& sys, const Expr& chi, int identity) {
  if (sys.identities.empty()) throw SolveError("the system declares no differential identity");
  if (identity < 0 || identity >= static_cast<int>(sys.identities.size()))
    throw SolveError("identity index out of range");
  return sys.identity_adjoint(sys.identities[identity], chi);
}

const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial:
      return "trivial";
    case Triviality::NonTrivial:
      return "non-trivial";
    case Triviality::Undetermined:
      return "undetermined";
  }
  return "?";
}

TrivialityResult triviality_check(const PdeSystem& sys, const VectorExpr& Q, const std::vector<Expr>& chi_basis) {
  require_length(Q, sys.n_eq(), "multiplier");
  TrivialityResult r;
  r.restricted = sys.restrict(Q);
  auto v = zero_test(r.restricted);
  if (v.verdict == ZeroVerdict::Zero) {
    r.verdict = Triviality::Trivial;
    r.witness.assign(sys.identities.size(), Expr());
    return r;
  }
  if (sys.identities.empty()) {
    r.verdict = v.verdict == ZeroVerdict::NonZero ? Triviality::NonTrivial : Triviality::Undetermined;
    return r;
  }
  std::vector<Expr> chis = chi_basis;
  if (chis.empty()) {
    chis.push_back(Expr(1L));
    for (int i = 0; i < sys.n_indep(); ++i) chis.push_back(Expr::indep(i));
  }
  std::vector<VectorExpr> cols;
  for (auto& id : sys.identities)
    for (auto& chi : chis) cols.push_back(sys.restrict(sys.identity_adjoint(id, chi)));
  try {
    auto x = solve_over_params(cols, r.restricted);
    if (!x) {
      r.verdict = Triviality::NonTrivial;
      return r;
    }
    r.verdict = Triviality::Trivial;
    size_t k = 0;
    for (size_t j = 0; j < sys.identities.size(); ++j) {
      Expr w;
      for (auto& chi : chis) w += chi.scaled((*x)[k++]);
      r.witness.push_back(w);
    }
  } catch (const SolveError&) {
    r.verdict = Triviality::Undetermined;
  }
  return r;
}

const char* to_string(Target t) {
  switch (t) {
    case Target::Multipliers:
      return "multipliers";
    case Target::Symmetries:
      return "symmetries";
    case Target::AdjointSymmetries:
      return "adjoint-symmetries";
    case Target::Variational:
      return "variational";
  }
  return "?";
}

Target parse_target(const std::string& s) {
  if (s == "multipliers") return Target::Multipliers;
  if (s == "symmetries") return Target::Symmetries;
  if (s == "adjoint-symmetries") return Target::AdjointSymmetries;
  if (s == "variational") return Target::Variational;
  throw SolveError("unknown target '" + s + "'");
}

VectorExpr residual_for(Target target, const PdeSystem& sys, const VectorExpr& c) {
  switch (target) {
    case Target::Multipliers:
      // Not restricted: restricting E(GQ) would only test for adjoint-symmetries.
      return multiplier_residual(sys, c);
    case Target::Symmetries:
      return symmetry_residual(sys, c);
    case Target::AdjointSymmetries:
      return adjoint_symmetry_residual(sys, c);
    case Target::Variational:
      return variational_symmetry_residual(sys, c);
  }
  return {};
}

int max_term_degree(const Expr& e) {
  int best = 0;
  for (auto& t : e.terms()) {
    Rational d = 0;
    for (auto& f : t.mono) {
      if (f.base.kind() != BaseKind::Jet) continue;
      if (!f.exp.is_constant()) throw SolveError("term degree depends on a free parameter; bind it for solving");
      d += f.exp.constant();
    }
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), d.get_num_mpz_t(), d.get_den_mpz_t());
    best = std::max(best, static_cast<int>(c.get_si()));
  }
  return best;
}

std::vector<Expr> monomial_basis(const std::vector<JetVar>& vars, int degree, int n_indep, bool with_indep) {
  std::vector<Expr> monos;
  std::function<void(size_t, int, Expr)> rec = [&](size_t i, int left, Expr acc) {
    if (i == vars.size()) {
      monos.push_back(acc);
      return;
    }
    Expr cur = acc;
    for (int k = 0; k <= left; ++k) {
      rec(i + 1, left - k, cur);
      cur = cur * Expr::jet(vars[i]);
    }
  };
  rec(0, degree, Expr(1L));
  std::vector<Expr> out;
  for (auto& m : monos) out.push_back(m);
  if (with_indep)
    for (int i = 0; i < n_indep; ++i)
      for (auto& m : monos) out.push_back(Expr::indep(i) * m);
  return out;
}

LinearAnsatz default_ansatz(const PdeSystem& sys, Target target, int degree) {
  require_bound_params(sys);
  if (degree < 0)
    for (auto& g : sys.G()) degree = std::max(degree, max_term_degree(g));
  auto low = sys.low_order_variables();
  std::vector<JetVar> vars(low.begin(), low.end());
  auto monos = monomial_basis(vars, degree, sys.n_indep());
  int comps = (target == Target::Multipliers || target == Target::AdjointSymmetries) ? sys.n_eq() : sys.n_dep();
  LinearAnsatz a;
  for (int k = 0; k < comps; ++k)
    for (auto& m : monos) {
      VectorExpr v(static_cast<size_t>(comps));
      v[k] = m;
      a.basis.push_back(v);
    }
  return a;
}

SplitRows split_linear(const std::vector<VectorExpr>& columns, const VectorExpr& inhomogeneous,
                       const JetSpace& space) {
  std::map<std::pair<size_t, Monomial>, size_t, KeyLess> index;
  SplitRows out;
  auto row_for = [&](size_t comp, const Monomial& m) -> size_t {
    auto [it, fresh] = index.emplace(std::make_pair(comp, m), out.rows.size());
    if (fresh) {
      out.rows.emplace_back();
      out.rhs.emplace_back(0);
      out.keys.push_back("[" + std::to_string(comp) + "] " + to_string(monomial_expr(m), space));
    }
    return it->second;
  };
  auto check = [&](const Term& t) {
    if (!t.coeff.is_rational())
      throw SolveError("coefficient depends on a free parameter; bind parameters numerically for solving");
    for (auto& f : t.mono)
      if (f.base.kind() == BaseKind::Func || f.base.kind() == BaseKind::Compound)
        throw SolveError("cannot split over opaque functions or non-monomial denominators");
  };
  for (size_t j = 0; j < columns.size(); ++j)
    for (size_t k = 0; k < columns[j].size(); ++k)
      for (auto& t : columns[j][k].terms()) {
        check(t);
        out.rows[row_for(k, t.mono)].push_back({j, t.coeff.rational()});
      }
  for (size_t k = 0; k < inhomogeneous.size(); ++k)
    for (auto& t : inhomogeneous[k].terms()) {
      check(t);
      out.rhs[row_for(k, t.mono)] -= t.coeff.rational();
    }
  return out;
}

std::vector<VectorExpr> canonical_span(const std::vector<VectorExpr>& vs) {
  if (vs.empty()) return {};
  size_t comps = vs[0].size();
  std::vector<std::pair<size_t, Monomial>> keys;
  std::map<std::pair<size_t, Monomial>, size_t, KeyLess> seen;
  for (auto& v : vs)
    for (size_t k = 0; k < v.size(); ++k)
      for (auto& t : v[k].terms())
        if (seen.emplace(std::make_pair(k, t.mono), 0).second) keys.push_back({k, t.mono});
  std::sort(keys.begin(), keys.end(), more_complex);
  for (size_t i = 0; i < keys.size(); ++i) seen[keys[i]] = i;
  std::vector<std::vector<Rational>> rows;
  for (auto& v : vs) {
    std::vector<Rational> row(keys.size());
    for (size_t k = 0; k < v.size(); ++k)
      for (auto& t : v[k].terms()) {
        if (!t.coeff.is_rational()) throw SolveError("canonical span needs numeric coefficients");
        row[seen[{k, t.mono}]] = t.coeff.rational();
      }
    rows.push_back(std::move(row));
  }
  std::vector<VectorExpr> out;
  for (auto& row : rref(std::move(rows))) {
    VectorExpr v(comps);
    for (size_t i = 0; i < keys.size(); ++i)
      if (sgn(row[i]) != 0) v[keys[i].first] += monomial_expr(keys[i].second, Coeff(row[i]));
    out.push_back(std::move(v));
  }
  return out;
}

SolutionSet solve_linear_ansatz(Target target, const PdeSystem& sys, const LinearAnsatz& ansatz) {
  if (ansatz.basis.empty()) throw SolveError("empty ansatz basis");
  require_bound_params(sys);
  for (auto& b : ansatz.basis)
    for (auto& e : b)
      for (auto& v : jet_vars(e))
        if (sys.is_lead_descendant(v))
          throw SolveError("ansatz basis contains " + sys.space.jet_name(v) + ", a lead or one of its derivatives");
  std::vector<VectorExpr> cols;
  for (auto& b : ansatz.basis) cols.push_back(residual_for(target, sys, b));
  auto rows = split_linear(cols, {}, sys.space);
  LinearSystem ls(cols.size());
  for (auto& r : rows.rows) ls.add_row(r);
  SolutionSet s;
  s.unknowns = cols.size();
  s.equations = rows.rows.size();
  s.rank = ls.rank();
  std::vector<VectorExpr> sols;
  for (auto& x : ls.nullspace()) {
    VectorExpr v(ansatz.basis[0].size());
    for (size_t i = 0; i < x.size(); ++i) {
      if (sgn(x[i]) == 0) continue;
      for (size_t k = 0; k < v.size(); ++k) v[k] += ansatz.basis[i][k].scaled(Coeff(x[i]));
    }
    sols.push_back(v);
  }
  s.basis = canonical_span(sols);
  return s;
}

}  // namespace jetcalc
