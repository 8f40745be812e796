#include "jetcalc/calculus.hpp"

#include <stdexcept>

namespace jetcalc {

namespace {

// Derivative of one base as an expression; `dbase` encapsulates which
// derivation is applied.
using BaseDerivative = std::function<Expr(const Base&)>;

Expr differentiate(const Expr& e, const BaseDerivative& dbase) {
  std::vector<Term> out;
  for (auto& t : e.terms()) {
    for (size_t i = 0; i < t.mono.size(); ++i) {
      const Factor& f = t.mono[i];
      Expr d = dbase(f.base);
      if (d.is_zero()) continue;
      Coeff c = t.coeff;
      if (f.exp.is_constant()) c = c * Coeff(f.exp.constant());
      else c = c * Coeff::from_affine(f.exp);
      Monomial rest = t.mono;
      Affine ne = f.exp - Affine(1);
      if (ne.is_zero()) rest.erase(rest.begin() + static_cast<long>(i));
      else rest[i].exp = ne;
      for (auto& dt : d.terms()) out.push_back(Term{multiply_monomials(rest, dt.mono), c * dt.coeff});
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr func_derivative(const FuncNode& node, const std::function<Expr(const Expr&)>& darg) {
  Expr out;
  for (size_t s = 0; s < node.args.size(); ++s) {
    Expr da = darg(node.args[s]);
    if (da.is_zero()) continue;
    auto counts = node.counts;
    ++counts[s];
    out += make_func(node.decl, counts, node.args) * da;
  }
  return out;
}

}  // namespace

Expr make_func(const std::shared_ptr<const FunctionDecl>& decl, std::vector<int> counts,
               std::vector<Expr> args) {
  if (static_cast<int>(args.size()) != decl->arity())
    throw std::invalid_argument("function " + decl->name + " expects " + std::to_string(decl->arity()) +
                                " arguments");
  if (counts.empty()) counts.assign(args.size(), 0);
  for (auto& rule : decl->rules) {
    bool applies = true;
    for (size_t s = 0; s < counts.size(); ++s)
      if (counts[s] < rule.counts[s]) applies = false;
    if (!applies) continue;
    Expr v = rule.value;
    for (size_t s = 0; s < counts.size(); ++s)
      for (int k = rule.counts[s]; k < counts[s]; ++k) v = partial(v, Base::slot(static_cast<int>(s)));
    return substitute(v, [&](const Base& b) -> std::optional<Expr> {
      if (b.kind() == BaseKind::Slot) return args.at(static_cast<size_t>(b.index()));
      return std::nullopt;
    });
  }
  auto node = std::make_shared<FuncNode>();
  node->decl = decl;
  node->counts = std::move(counts);
  node->args = std::move(args);
  return base_power(Base::func(std::move(node)), Affine(1));
}

Expr total_derivative(const Expr& e, int iv) {
  if (iv < 0 || iv >= kMaxIndep) throw std::out_of_range("independent variable index out of range");
  BaseDerivative d = [&](const Base& b) -> Expr {
    switch (b.kind()) {
      case BaseKind::Jet:
        return Expr::jet(b.jet().dep, b.jet().mi.plus(iv));
      case BaseKind::Indep:
        return b.index() == iv ? Expr(1L) : Expr();
      case BaseKind::Slot:
        return Expr();
      case BaseKind::Func:
        return func_derivative(b.func(), [&](const Expr& a) { return total_derivative(a, iv); });
      case BaseKind::Compound:
        return total_derivative(b.compound(), iv);
    }
    return Expr();
  };
  return differentiate(e, d);
}

Expr total_derivative(const Expr& e, const MultiIndex& J) {
  Expr out = e;
  for (int i = 0; i < kMaxIndep; ++i)
    for (int k = 0; k < J[i]; ++k) out = total_derivative(out, i);
  return out;
}

Expr partial(const Expr& e, const Base& v) {
  BaseDerivative d = [&](const Base& b) -> Expr {
    switch (b.kind()) {
      case BaseKind::Jet:
      case BaseKind::Indep:
      case BaseKind::Slot:
        return b.compare(v) == 0 ? Expr(1L) : Expr();
      case BaseKind::Func:
        return func_derivative(b.func(), [&](const Expr& a) { return partial(a, v); });
      case BaseKind::Compound:
        return partial(b.compound(), v);
    }
    return Expr();
  };
  return differentiate(e, d);
}

Expr partial_param(const Expr& e, int param) {
  std::vector<Term> out;
  visit_factors(e, [&](const Factor& f) {
    for (auto& [i, c] : f.exp.linear())
      if (i == param) throw std::domain_error("parameter occurs in an exponent; derivative not representable");
  });
  for (auto& t : e.terms()) {
    Coeff dc = t.coeff.derivative(param);
    if (!dc.is_zero()) out.push_back(Term{t.mono, dc});
  }
  Expr coeff_part = Expr::from_terms(std::move(out));
  // Parameters inside function arguments or compound bases.
  BaseDerivative d = [&](const Base& b) -> Expr {
    switch (b.kind()) {
      case BaseKind::Func:
        return func_derivative(b.func(), [&](const Expr& a) { return partial_param(a, param); });
      case BaseKind::Compound:
        return partial_param(b.compound(), param);
      default:
        return Expr();
    }
  };
  return coeff_part + differentiate(e, d);
}

Expr substitute(const Expr& e, const LeafMap& f) {
  std::vector<Term> out;
  for (auto& t : e.terms()) {
    Monomial kept;
    Expr changed(1L);
    bool any = false;
    for (auto& fac : t.mono) {
      std::optional<Expr> r;
      switch (fac.base.kind()) {
        case BaseKind::Jet:
        case BaseKind::Indep:
        case BaseKind::Slot:
          r = f(fac.base);
          break;
        case BaseKind::Func: {
          auto& node = fac.base.func();
          std::vector<Expr> args;
          bool diff = false;
          for (auto& a : node.args) {
            args.push_back(substitute(a, f));
            if (!(args.back() == a)) diff = true;
          }
          if (diff) r = make_func(node.decl, node.counts, std::move(args));
          break;
        }
        case BaseKind::Compound: {
          Expr inner = substitute(fac.base.compound(), f);
          if (!(inner == fac.base.compound())) r = inner;
          break;
        }
      }
      if (r) {
        any = true;
        changed = changed * r->pow(fac.exp);
      } else {
        kept.push_back(fac);
      }
    }
    if (!any) {
      out.push_back(t);
      continue;
    }
    Expr prod = monomial_expr(std::move(kept), t.coeff) * changed;
    for (auto& pt : prod.terms()) out.push_back(pt);
  }
  return Expr::from_terms(std::move(out));
}

Expr substitute(const Expr& e, const std::map<JetVar, Expr>& bindings) {
  if (bindings.empty()) return e;
  return substitute(e, [&](const Base& b) -> std::optional<Expr> {
    if (b.kind() != BaseKind::Jet) return std::nullopt;
    auto it = bindings.find(b.jet());
    if (it == bindings.end()) return std::nullopt;
    return it->second;
  });
}

Expr bind_params(const Expr& e, std::span<const std::optional<Rational>> values) {
  std::vector<Term> out;
  for (auto& t : e.terms()) {
    Expr prod(t.coeff.bind(values));
    Monomial kept;
    for (auto& f : t.mono) {
      Affine ne = f.exp.bind(values);
      Base b = f.base;
      if (b.kind() == BaseKind::Func) {
        auto& node = b.func();
        std::vector<Expr> args;
        for (auto& a : node.args) args.push_back(bind_params(a, values));
        prod = prod * make_func(node.decl, node.counts, std::move(args)).pow(ne);
      } else if (b.kind() == BaseKind::Compound) {
        prod = prod * bind_params(b.compound(), values).pow(ne);
      } else if (!ne.is_zero()) {
        kept.push_back({b, ne});
      }
    }
    prod = prod * monomial_expr(std::move(kept));
    for (auto& pt : prod.terms()) out.push_back(pt);
  }
  return Expr::from_terms(std::move(out));
}

void visit_factors(const Expr& e, const std::function<void(const Factor&)>& f) {
  for (auto& t : e.terms())
    for (auto& fac : t.mono) {
      f(fac);
      if (fac.base.kind() == BaseKind::Func)
        for (auto& a : fac.base.func().args) visit_factors(a, f);
      else if (fac.base.kind() == BaseKind::Compound)
        visit_factors(fac.base.compound(), f);
    }
}

std::set<JetVar> jet_vars(const Expr& e) {
  std::set<JetVar> out;
  visit_factors(e, [&](const Factor& f) {
    if (f.base.kind() == BaseKind::Jet) out.insert(f.base.jet());
  });
  return out;
}

int max_order(const Expr& e) {
  int n = -1;
  visit_factors(e, [&](const Factor& f) {
    if (f.base.kind() == BaseKind::Jet) n = std::max(n, f.base.jet().mi.order());
  });
  return n;
}

bool has_opaque(const Expr& e) {
  bool found = false;
  visit_factors(e, [&](const Factor& f) {
    if (f.base.kind() == BaseKind::Func) found = true;
  });
  return found;
}

bool has_compound(const Expr& e) {
  bool found = false;
  visit_factors(e, [&](const Factor& f) {
    if (f.base.kind() == BaseKind::Compound) found = true;
  });
  return found;
}

bool depends_on_dep(const Expr& e, int dep) {
  bool found = false;
  visit_factors(e, [&](const Factor& f) {
    if (f.base.kind() == BaseKind::Jet && f.base.jet().dep == dep) found = true;
  });
  return found;
}

}  // namespace jetcalc
