#include "jetcalc/varcalc.hpp"

#include <algorithm>
#include <functional>

#include "jetcalc/calculus.hpp"
#include "jetcalc/zero.hpp"

namespace jetcalc {

namespace {

// Homotopy parameter; slot indices this high never occur in rule values.
constexpr int kLambdaSlot = 1000;

Expr lambda() { return Expr::slot(kLambdaSlot); }

std::vector<int> index_sequence(const MultiIndex& J) {
  std::vector<int> seq;
  for (int i = 0; i < kMaxIndep; ++i)
    for (int k = 0; k < J[i]; ++k) seq.push_back(i);
  return seq;
}

Rational binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational multi_binom(const MultiIndex& K, const MultiIndex& J) {
  Rational r = 1;
  for (int i = 0; i < kMaxIndep; ++i) r *= binom(K[i], J[i]);
  return r;
}

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

// int_0^1 (.) dl, term by term over powers of the homotopy parameter.
Expr integrate_lambda(const Expr& e) {
  std::vector<Term> out;
  Base lam = Base::slot(kLambdaSlot);
  for (auto& t : e.terms()) {
    Affine ex(0);
    Monomial m;
    for (auto& f : t.mono) {
      if (f.base == lam) {
        ex = f.exp;
        continue;
      }
      if (f.base.kind() == BaseKind::Func || f.base.kind() == BaseKind::Compound) {
        bool inside = false;
        visit_factors(monomial_expr({f}), [&](const Factor& g) { inside = inside || g.base == lam; });
        if (inside)
          throw VarCalcError("homotopy integrand is not polynomial in the homotopy parameter; try another base point");
      }
      m.push_back(f);
    }
    Affine e1 = ex + Affine(1);
    if (e1.is_zero()) throw VarCalcError("singular homotopy exponent -1; shift the base point u0");
    Coeff c;
    try {
      c = t.coeff * Coeff::from_affine(e1).inverse();
    } catch (const std::domain_error&) {
      throw VarCalcError("singular homotopy exponent; shift the base point u0");
    }
    out.push_back(Term{std::move(m), c});
  }
  return Expr::from_terms(std::move(out));
}

// Antiderivative in independent variable iv of an expression free of jet variables.
Expr integrate_indep(const Expr& e, int iv) {
  std::vector<Term> out;
  Base x = Base::indep(iv);
  for (auto& t : e.terms()) {
    Affine ex(0);
    Monomial m;
    for (auto& f : t.mono) {
      if (f.base == x) {
        ex = f.exp;
        continue;
      }
      if (f.base.kind() != BaseKind::Indep) {
        bool dep = false;
        visit_factors(monomial_expr({f}), [&](const Factor& g) { dep = dep || g.base == x; });
        if (dep || f.base.kind() == BaseKind::Jet)
          throw VarCalcError("the base-point residual has no closed-form antiderivative");
      }
      m.push_back(f);
    }
    Affine e1 = ex + Affine(1);
    if (e1.is_zero()) throw VarCalcError("the base-point residual needs a logarithm; shift the base point u0");
    m.push_back({x, e1});
    std::sort(m.begin(), m.end(), [](const Factor& a, const Factor& b) { return a.base.compare(b.base) < 0; });
    out.push_back(Term{std::move(m), t.coeff * Coeff::from_affine(e1).inverse()});
  }
  return Expr::from_terms(std::move(out));
}

}  // namespace

Current operator+(const Current& a, const Current& b) {
  Current c(a.size());
  for (int i = 0; i < a.size(); ++i) c.comp[i] = a.comp[i] + b.comp.at(i);
  return c;
}

Current operator-(const Current& a, const Current& b) {
  Current c(a.size());
  for (int i = 0; i < a.size(); ++i) c.comp[i] = a.comp[i] - b.comp.at(i);
  return c;
}

Current Current::scaled(const Coeff& c) const {
  Current out(size());
  for (int i = 0; i < size(); ++i) out.comp[i] = comp[i].scaled(c);
  return out;
}

Expr divergence(const Current& c) {
  Expr out;
  for (int i = 0; i < c.size(); ++i) out += total_derivative(c.comp[i], i);
  return out;
}

std::vector<MultiIndex> multi_indices_upto(int k, int n) {
  std::vector<MultiIndex> out;
  MultiIndex m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      m.c[i] = static_cast<uint8_t>(c);
      rec(i + 1, left - c);
    }
    m.c[i] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a > b;
  });
  return out;
}

Expr frechet(const Expr& f, const VectorExpr& v) {
  Expr out;
  for (auto& w : jet_vars(f)) {
    if (w.dep >= static_cast<int>(v.size()) || v[w.dep].is_zero()) continue;
    out += total_derivative(v[w.dep], w.mi) * partial(f, w);
  }
  return out;
}

VectorExpr frechet_adjoint(const Expr& f, const Expr& w, int n_dep) {
  VectorExpr out(static_cast<size_t>(n_dep));
  for (auto& v : jet_vars(f)) {
    if (v.dep >= n_dep) continue;
    Expr d = total_derivative(w * partial(f, v), v.mi);
    if (v.mi.order() % 2) d = -d;
    out[v.dep] += d;
  }
  return out;
}

Current adjoint_current(const Expr& f, const VectorExpr& v, const Expr& w, int n_indep) {
  Current psi(n_indep);
  for (auto& var : jet_vars(f)) {
    if (var.dep >= static_cast<int>(v.size()) || var.mi.order() == 0) continue;
    const Expr& B = v[var.dep];
    if (B.is_zero()) continue;
    Expr A = w * partial(f, var);
    if (A.is_zero()) continue;
    auto seq = index_sequence(var.mi);
    size_t k = seq.size();
    // prefix[r] = D_{i1..ir} A, suffix[r] = D_{i_{r+1}..i_k} B
    std::vector<Expr> prefix(k), suffix(k + 1);
    prefix[0] = A;
    for (size_t r = 1; r < k; ++r) prefix[r] = total_derivative(prefix[r - 1], seq[r - 1]);
    suffix[k] = B;
    for (size_t r = k; r-- > 1;) suffix[r] = total_derivative(suffix[r + 1], seq[r]);
    for (size_t r = 1; r <= k; ++r) {
      Expr term = prefix[r - 1] * suffix[r];
      if (r % 2 == 0) term = -term;
      psi.comp[seq[r - 1]] += term;
    }
  }
  return psi;
}

VectorExpr euler(const Expr& f, int n_dep) { return frechet_adjoint(f, Expr(1L), n_dep); }

Expr euler_component(const Expr& f, int dep) {
  Expr out;
  for (auto& v : jet_vars(f)) {
    if (v.dep != dep) continue;
    Expr d = total_derivative(partial(f, v), v.mi);
    if (v.mi.order() % 2) d = -d;
    out += d;
  }
  return out;
}

Expr higher_euler(const Expr& f, int dep, const MultiIndex& J) {
  Expr out;
  for (auto& v : jet_vars(f)) {
    if (v.dep != dep || !v.mi.covers(J)) continue;
    MultiIndex L = v.mi.minus(J);
    Expr d = total_derivative(partial(f, v), L).scaled(Coeff(multi_binom(v.mi, J)));
    if (L.order() % 2) d = -d;
    out += d;
  }
  return out;
}

std::map<MultiIndex, Expr> higher_euler_tensor(const Expr& f, int dep, int l, int n_indep) {
  std::map<MultiIndex, Expr> out;
  for (auto& J : multi_indices_upto(l, n_indep)) {
    if (J.order() != l) continue;
    Rational w = 1;
    for (int i = 0; i < n_indep; ++i) w *= factorial(J[i]);
    w /= factorial(l);
    Expr e = higher_euler(f, dep, J).scaled(Coeff(w));
    if (!e.is_zero()) out.emplace(J, e);
  }
  return out;
}

Current euler_current(const Expr& f, const VectorExpr& v, int n_indep) {
  return adjoint_current(f, v, Expr(1L), n_indep);
}

namespace {

// f at u = u0 with all derivatives zero. A vanishing base under a symbolic
// exponent is taken as zero, the same positivity the lambda integral needs.
Expr at_base_point(const Expr& f, const VectorExpr& u0) {
  LeafMap to_base = [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet) return std::nullopt;
    if (b.jet().mi.order() == 0) return u0[b.jet().dep];
    return Expr();
  };
  std::vector<Term> kept;
  for (auto& t : f.terms()) {
    bool vanishes = false;
    for (auto& fac : t.mono) {
      if (fac.base.kind() != BaseKind::Jet || fac.exp.is_constant()) continue;
      auto& v = fac.base.jet();
      if (v.mi.order() > 0 || u0[v.dep].is_zero()) vanishes = true;
    }
    if (!vanishes) kept.push_back(t);
  }
  return substitute(Expr::from_terms(std::move(kept)), to_base);
}

}  // namespace

Current divergence_antiderivative(const Expr& f, const JetSpace& space, const VectorExpr& u0_in) {
  int m = space.n_dep();
  int n = space.n_indep();
  VectorExpr u0 = u0_in;
  u0.resize(static_cast<size_t>(m));
  for (auto& c : u0)
    if (!c.constant_value()) throw VarCalcError("the base point must be constant");
  for (auto& e : euler(f, m)) {
    auto z = zero_test(e);
    if (z.verdict == ZeroVerdict::NonZero)
      throw VarCalcError("expression is not a total divergence: its Euler image is " + to_string(z.cleared, space));
    if (z.verdict == ZeroVerdict::Undetermined)
      throw VarCalcError("cannot confirm that the Euler image vanishes: " + to_string(z.cleared, space));
  }
  VectorExpr V;
  for (int a = 0; a < m; ++a) V.push_back(Expr::jet(m + a, MultiIndex{}));
  Current ups = euler_current(f, V, n);
  Expr lam = lambda();
  LeafMap on_curve = [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet) return std::nullopt;
    auto& v = b.jet();
    if (v.dep < m) {
      Expr u = Expr::jet(v);
      if (v.mi.order() == 0) return u0[v.dep] + lam * (u - u0[v.dep]);
      return lam * u;
    }
    Expr u = Expr::jet(v.dep - m, v.mi);
    if (v.mi.order() == 0) return u - u0[v.dep - m];
    return u;
  };
  Current F(n);
  for (int i = 0; i < n; ++i) {
    try {
      F.comp[i] = integrate_lambda(substitute(ups.comp[i], on_curve));
    } catch (const std::domain_error& e) {
      throw VarCalcError(std::string("homotopy curve leaves the domain: ") + e.what());
    }
  }
  Expr f0;
  try {
    f0 = at_base_point(f, u0);
  } catch (const std::domain_error& e) {
    throw VarCalcError(std::string("expression is singular at the base point: ") + e.what());
  }
  if (!f0.is_zero()) {
    int iv = n > 1 ? 1 : 0;
    F.comp[iv] += integrate_indep(f0, iv);
  }
  return F;
}

HelmholtzReport helmholtz_check(const PdeSystem& sys) {
  HelmholtzReport r;
  r.square = sys.n_eq() == sys.n_dep();
  auto G = sys.G();
  for (auto& g : G) r.order = std::max(r.order, max_order(g));
  r.odd_order = r.order % 2 == 1;
  if (!r.square) return r;
  auto Js = multi_indices_upto(r.order, sys.n_indep());
  for (int a = 0; a < sys.n_eq(); ++a)
    for (int alpha = 0; alpha < sys.n_dep(); ++alpha)
      for (auto& J : Js) {
        Expr lhs = partial(G[a], JetVar{alpha, J});
        Expr rhs = higher_euler(G[alpha], a, J);
        if (J.order() % 2) rhs = -rhs;
        auto z = zero_test(lhs - rhs);
        if (z.verdict != ZeroVerdict::Zero) r.residuals.push_back({a, alpha, J, lhs - rhs});
      }
  r.variational = r.residuals.empty();
  return r;
}

Expr lagrangian_from_system(const PdeSystem& sys) {
  if (sys.n_eq() != sys.n_dep()) throw VarCalcError("the number of equations differs from the number of unknowns");
  Expr lam = lambda();
  Expr integrand;
  auto G = sys.G();
  for (int a = 0; a < sys.n_dep(); ++a) {
    Expr scaled = substitute(G[a], [&](const Base& b) -> std::optional<Expr> {
      if (b.kind() != BaseKind::Jet) return std::nullopt;
      return lam * Expr::jet(b.jet());
    });
    integrand += Expr::jet(a, MultiIndex{}) * scaled;
  }
  return integrate_lambda(integrand);
}

Coeff scaling_weight(const Expr& f, const ScalingAction& action) {
  std::optional<Coeff> s;
  for (auto& t : f.terms()) {
    Coeff w(0L);
    for (auto& fac : t.mono) {
      Coeff bw;
      switch (fac.base.kind()) {
        case BaseKind::Jet: {
          auto& v = fac.base.jet();
          if (v.dep >= static_cast<int>(action.dep.size()))
            throw VarCalcError("scaling action has no weight for dependent variable " + std::to_string(v.dep));
          bw = action.dep[v.dep];
          for (int i = 0; i < static_cast<int>(action.indep.size()); ++i)
            if (v.mi[i]) bw = bw - action.indep[i] * Coeff(static_cast<long>(v.mi[i]));
          break;
        }
        case BaseKind::Indep:
          bw = action.indep.at(static_cast<size_t>(fac.base.index()));
          break;
        case BaseKind::Compound:
          bw = scaling_weight(fac.base.compound(), action);
          break;
        default:
          throw VarCalcError("opaque functions have no scaling weight");
      }
      w += (fac.exp.is_constant() ? Coeff(fac.exp.constant()) : Coeff::from_affine(fac.exp)) * bw;
    }
    if (!s) s = w;
    else if (!(*s == w)) throw VarCalcError("expression is not homogeneous under the scaling action");
  }
  return s ? *s : Coeff(0L);
}

ScalingResult scaling_identity(const Expr& f, const ScalingAction& action, int n_indep) {
  if (static_cast<int>(action.indep.size()) != n_indep)
    throw VarCalcError("scaling action does not match the independent variables");
  ScalingResult r;
  r.s = scaling_weight(f, action);
  r.omega = r.s;
  for (auto& w : action.indep) r.omega += w;
  for (int a = 0; a < static_cast<int>(action.dep.size()); ++a) {
    Expr p = Expr::jet(a, MultiIndex{}).scaled(action.dep[a]);
    for (int i = 0; i < n_indep; ++i) p -= (Expr::indep(i) * Expr::jet(a, MultiIndex{}.plus(i))).scaled(action.indep[i]);
    r.P.push_back(p);
  }
  Current ups = euler_current(f, r.P, n_indep);
  r.F = Current(n_indep);
  for (int i = 0; i < n_indep; ++i) r.F.comp[i] = (f * Expr::indep(i)).scaled(action.indep[i]) + ups.comp[i];
  return r;
}

}  // namespace jetcalc
