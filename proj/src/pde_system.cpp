#include "jetcalc/pde_system.hpp"

#include <algorithm>
#include <functional>

#include "jetcalc/calculus.hpp"
#include "jetcalc/zero.hpp"

namespace jetcalc {

namespace {

constexpr int kMaxDepth = 256;

bool strictly_below(const MultiIndex& k, const MultiIndex& l) { return l.covers(k) && !(k == l); }

}  // namespace

PdeSystem::PdeSystem(const PdeSystem& o)
    : name(o.name), space(o.space), equations(o.equations), identities(o.identities), scalings(o.scalings) {}

PdeSystem& PdeSystem::operator=(const PdeSystem& o) {
  if (this == &o) return *this;
  name = o.name;
  space = o.space;
  equations = o.equations;
  identities = o.identities;
  scalings = o.scalings;
  cache_ = std::make_unique<Cache>();
  return *this;
}

std::vector<Expr> PdeSystem::G() const {
  std::vector<Expr> out;
  for (auto& e : equations) out.push_back(e.G);
  return out;
}

int PdeSystem::order() const {
  int n = 0;
  for (auto& e : equations) n = std::max(n, e.lead.mi.order());
  return n;
}

const Equation* PdeSystem::lead_for(const JetVar& v) const {
  for (auto& e : equations)
    if (e.lead.dep == v.dep && v.mi.covers(e.lead.mi)) return &e;
  return nullptr;
}

bool PdeSystem::is_lead_descendant(const JetVar& v) const { return lead_for(v) != nullptr; }

ValidationReport PdeSystem::validate() const {
  ValidationReport r;
  for (size_t a = 0; a < equations.size(); ++a)
    for (size_t b = 0; b < equations.size(); ++b) {
      if (a == b) continue;
      auto& la = equations[a].lead;
      auto& lb = equations[b].lead;
      if (la.dep == lb.dep && la.mi.covers(lb.mi))
        throw SystemError("equation '" + equations[a].name + "': lead " + space.jet_name(la) +
                          " is a derivative of the lead of equation '" + equations[b].name + "'");
    }
  for (auto& eq : equations)
    for (auto& v : jet_vars(eq.rhs))
      if (is_lead_descendant(v))
        throw SystemError("equation '" + eq.name + "': right-hand side contains " + space.jet_name(v) +
                          ", which is a lead or a derivative of one");
  for (auto& eq : equations) {
    if (!eq.custom_g) continue;
    auto z = zero_test(restrict(eq.G));
    if (z.verdict != ZeroVerdict::Zero)
      throw SystemError("equation '" + eq.name + "': G does not vanish when the lead is replaced by the rhs");
  }
  auto g = G();
  for (auto& id : identities) {
    auto z = zero_test(apply_identity(id, g));
    if (z.verdict == ZeroVerdict::NonZero)
      throw SystemError("identity '" + id.name + "' does not annihilate G: residual " +
                        to_string(z.cleared, space));
    if (z.verdict == ZeroVerdict::Undetermined)
      r.notes.push_back("identity '" + id.name + "' is undetermined by the structural zero test");
  }
  std::set<int> deps;
  r.evolution_form = true;
  for (auto& eq : equations) {
    bool pure_t = eq.lead.mi[0] == eq.lead.mi.order() && eq.lead.mi[0] > 0;
    if (!pure_t || !deps.insert(eq.lead.dep).second) r.evolution_form = false;
  }
  return r;
}

// ---------------------------------------------------------------- restriction

Expr PdeSystem::reduce(const JetVar& v, int depth) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->reduced.find(v);
    if (it != cache_->reduced.end()) return it->second;
  }
  if (depth > kMaxDepth)
    throw SystemError("restriction did not terminate at " + space.jet_name(v) + "; the system is not in solved form");
  const Equation* eq = lead_for(v);
  Expr out;
  if (v == eq->lead) {
    out = restrict_at(eq->rhs, depth + 1);
  } else {
    int iv = 0;
    while (v.mi[iv] <= eq->lead.mi[iv]) ++iv;
    JetVar lower{v.dep, v.mi.minus(MultiIndex{}.plus(iv))};
    out = restrict_at(total_derivative(reduce(lower, depth + 1), iv), depth + 1);
  }
  std::lock_guard lock(cache_->mu);
  cache_->reduced.emplace(v, out);
  return out;
}

Expr PdeSystem::restrict_at(const Expr& e, int depth) const {
  return substitute(e, [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet || b.jet().dep >= n_dep() || !is_lead_descendant(b.jet())) return std::nullopt;
    return reduce(b.jet(), depth);
  });
}

Expr PdeSystem::restrict(const Expr& e) const { return restrict_at(e, 0); }

std::vector<Expr> PdeSystem::restrict(const std::vector<Expr>& v) const {
  std::vector<Expr> out;
  for (auto& e : v) out.push_back(restrict(e));
  return out;
}

// ---------------------------------------------------------------- lift

Expr PdeSystem::lift_var(const JetVar& v, int depth) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->lifted.find(v);
    if (it != cache_->lifted.end()) return it->second;
  }
  if (depth > kMaxDepth) throw SystemError("lift did not terminate at " + space.jet_name(v));
  const Equation* eq = lead_for(v);
  Expr out;
  if (v == eq->lead) {
    int a = static_cast<int>(eq - equations.data());
    out = lift_expr(eq->rhs, depth + 1) + Expr::jet(n_dep() + a, MultiIndex{});
  } else {
    int iv = 0;
    while (v.mi[iv] <= eq->lead.mi[iv]) ++iv;
    JetVar lower{v.dep, v.mi.minus(MultiIndex{}.plus(iv))};
    out = lift_expr(total_derivative(lift_var(lower, depth + 1), iv), depth + 1);
  }
  std::lock_guard lock(cache_->mu);
  cache_->lifted.emplace(v, out);
  return out;
}

Expr PdeSystem::lift_expr(const Expr& e, int depth) const {
  return substitute(e, [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet || b.jet().dep >= n_dep() || !is_lead_descendant(b.jet())) return std::nullopt;
    return lift_var(b.jet(), depth);
  });
}

Lift PdeSystem::lift_off_solution_space(const Expr& e) const {
  Expr lifted = lift_expr(e, 0);
  std::vector<Term> rest, nonlin;
  Lift out;
  for (auto& t : lifted.terms()) {
    int degree = 0;
    bool hidden = false;
    const Factor* hat = nullptr;
    for (auto& f : t.mono) {
      if (f.base.kind() == BaseKind::Jet && f.base.jet().dep >= n_dep()) {
        hat = &f;
        auto k = f.exp.as_long();
        if (k && *k > 0) degree += static_cast<int>(*k);
        else hidden = true;
      } else if (f.base.kind() == BaseKind::Func || f.base.kind() == BaseKind::Compound) {
        Expr inner = f.base.kind() == BaseKind::Func ? Expr() : f.base.compound();
        if (f.base.kind() == BaseKind::Func)
          for (auto& a : f.base.func().args) inner += a;
        for (int a = 0; a < n_eq(); ++a)
          if (depends_on_dep(inner, n_dep() + a)) hidden = true;
      }
    }
    if (hidden || degree >= 2) {
      nonlin.push_back(t);
    } else if (degree == 0) {
      rest.push_back(t);
    } else {
      Monomial m;
      for (auto& f : t.mono)
        if (&f != hat) m.push_back(f);
      out.linear.push_back({hat->base.jet().dep - n_dep(), hat->base.jet().mi, monomial_expr(std::move(m), t.coeff)});
    }
  }
  out.restricted = Expr::from_terms(std::move(rest));
  out.nonlinear = Expr::from_terms(std::move(nonlin));
  // Merge entries sharing (eq, J).
  std::vector<Lift::LinearTerm> merged;
  for (auto& lt : out.linear) {
    bool found = false;
    for (auto& m : merged)
      if (m.eq == lt.eq && m.J == lt.J) {
        m.coeff += lt.coeff;
        found = true;
      }
    if (!found) merged.push_back(lt);
  }
  std::erase_if(merged, [](const Lift::LinearTerm& m) { return m.coeff.is_zero(); });
  out.linear = std::move(merged);
  return out;
}

JetSpace PdeSystem::lifted_space() const {
  JetSpace sp = space;
  for (int a = 0; a < n_eq(); ++a) sp.dep.push_back("G" + std::to_string(a + 1) + "hat");
  return sp;
}

// ---------------------------------------------------------------- low order

std::vector<JetVar> PdeSystem::alternative_leads() const {
  std::vector<JetVar> out;
  for (auto& eq : equations) {
    for (auto& v : jet_vars(eq.G)) {
      Expr coeff;
      std::vector<Term> rest;
      bool linear = true;
      for (auto& t : eq.G.terms()) {
        const Factor* hit = nullptr;
        for (auto& f : t.mono)
          if (f.base.kind() == BaseKind::Jet && f.base.jet() == v) hit = &f;
        if (!hit) {
          rest.push_back(t);
          continue;
        }
        if (!(hit->exp == Affine(1))) {
          linear = false;
          break;
        }
        Monomial m;
        for (auto& f : t.mono)
          if (&f != hit) m.push_back(f);
        coeff += monomial_expr(std::move(m), t.coeff);
      }
      if (!linear || coeff.is_zero()) continue;
      Expr others = Expr::from_terms(std::move(rest)) + coeff;
      bool clean = true;
      for (auto& w : jet_vars(others))
        if (w.dep == v.dep && w.mi.covers(v.mi)) clean = false;
      if (clean && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

std::set<JetVar> PdeSystem::low_order_variables() const {
  std::set<JetVar> out;
  for (auto& l : alternative_leads()) {
    MultiIndex k;
    // Enumerate every multi-index below l.
    std::function<void(int)> rec = [&](int i) {
      if (i == kMaxIndep) {
        if (strictly_below(k, l.mi)) out.insert(JetVar{l.dep, k});
        return;
      }
      for (int c = 0; c <= l.mi[i]; ++c) {
        k.c[i] = static_cast<uint8_t>(c);
        rec(i + 1);
      }
      k.c[i] = 0;
    };
    rec(0);
  }
  return out;
}

// ---------------------------------------------------------------- identities

Expr PdeSystem::apply_identity(const Identity& id, const std::vector<Expr>& vec) const {
  Expr out;
  for (auto& t : id.terms) out += t.coeff * total_derivative(vec.at(static_cast<size_t>(t.eq)), t.deriv);
  return out;
}

std::vector<Expr> PdeSystem::identity_adjoint(const Identity& id, const Expr& chi) const {
  std::vector<Expr> out(equations.size());
  for (auto& t : id.terms) {
    Expr v = total_derivative(t.coeff * chi, t.deriv);
    if (t.deriv.order() % 2) v = -v;
    out[static_cast<size_t>(t.eq)] += v;
  }
  return out;
}

const ScalingAction* PdeSystem::find_scaling(const std::string& n) const {
  for (auto& s : scalings)
    if (s.name == n) return &s;
  return nullptr;
}

}  // namespace jetcalc
