#include "jetcalc/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetcalc {

int JetVar::compare(const JetVar& o) const {
  int a = mi.order(), b = o.mi.order();
  if (a != b) return a < b ? -1 : 1;
  if (dep != o.dep) return dep < o.dep ? -1 : 1;
  // t-heavy multi-indices first at equal order.
  if (mi != o.mi) return mi > o.mi ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- Base

Base Base::jet(const JetVar& v) {
  Base b;
  b.kind_ = BaseKind::Jet;
  b.jet_ = v;
  return b;
}

Base Base::indep(int i) {
  Base b;
  b.kind_ = BaseKind::Indep;
  b.index_ = i;
  return b;
}

Base Base::slot(int i) {
  Base b;
  b.kind_ = BaseKind::Slot;
  b.index_ = i;
  return b;
}

Base Base::func(std::shared_ptr<const FuncNode> node) {
  Base b;
  b.kind_ = BaseKind::Func;
  b.func_ = std::move(node);
  return b;
}

Base Base::compound(const Expr& e) {
  Base b;
  b.kind_ = BaseKind::Compound;
  b.compound_ = e;
  return b;
}

int Base::compare(const Base& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
  switch (kind_) {
    case BaseKind::Jet:
      return jet_.compare(o.jet_);
    case BaseKind::Indep:
    case BaseKind::Slot:
      return index_ == o.index_ ? 0 : (index_ < o.index_ ? -1 : 1);
    case BaseKind::Func:
      if (func_ == o.func_) return 0;
      return func_->compare(*o.func_);
    case BaseKind::Compound:
      return compound_.compare(o.compound_);
  }
  return 0;
}

int FuncNode::compare(const FuncNode& o) const {
  if (decl != o.decl) {
    if (int c = decl->name.compare(o.decl->name)) return c < 0 ? -1 : 1;
  }
  if (counts != o.counts) return counts < o.counts ? -1 : 1;
  if (args.size() != o.args.size()) return args.size() < o.args.size() ? -1 : 1;
  for (size_t i = 0; i < args.size(); ++i)
    if (int c = args[i].compare(o.args[i])) return c;
  return 0;
}

// ---------------------------------------------------------------- Monomial

int compare_monomials(const Monomial& a, const Monomial& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = a[i].base.compare(b[i].base)) return c;
    if (int c = a[i].exp.compare(b[i].exp)) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = (i == a.size()) ? 1 : (j == b.size()) ? -1 : a[i].base.compare(b[j].base);
    if (c < 0) out.push_back(a[i++]);
    else if (c > 0) out.push_back(b[j++]);
    else {
      Affine e = a[i].exp + b[j].exp;
      if (!e.is_zero()) out.push_back({a[i].base, e});
      ++i;
      ++j;
    }
  }
  return out;
}

// ---------------------------------------------------------------- Expr

namespace {

const std::shared_ptr<const std::vector<Term>>& empty_terms() {
  static const auto empty = std::make_shared<const std::vector<Term>>();
  return empty;
}

}  // namespace

Expr::Expr() : terms_(empty_terms()) {}

Expr::Expr(long v) : Expr(Coeff(v)) {}

Expr::Expr(const Rational& r) : Expr(Coeff(r)) {}

Expr::Expr(const Coeff& c) : terms_(empty_terms()) {
  if (!c.is_zero()) terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{{}, c}});
}

Expr Expr::jet(const JetVar& v) { return monomial_expr({Factor{Base::jet(v), Affine(1)}}); }

Expr Expr::indep(int i) { return monomial_expr({Factor{Base::indep(i), Affine(1)}}); }

Expr Expr::slot(int i) { return monomial_expr({Factor{Base::slot(i), Affine(1)}}); }

size_t Expr::size() const { return terms_->size(); }

bool Expr::is_zero() const { return terms_->empty(); }

std::optional<Coeff> Expr::constant_value() const {
  if (terms_->empty()) return Coeff();
  if (terms_->size() == 1 && (*terms_)[0].mono.empty()) return (*terms_)[0].coeff;
  return std::nullopt;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::vector<Term> work;
  work.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    // Compound factors with exponent >= 1 are expanded down to an exponent
    // in [0, 1) so that equal values share one representation.
    auto it = std::find_if(t.mono.begin(), t.mono.end(), [](const Factor& f) {
      return f.base.kind() == BaseKind::Compound && f.exp.is_constant() &&
             (f.exp.is_nonneg_integer() || f.exp.constant() > 1);
    });
    if (it == t.mono.end()) {
      work.push_back(std::move(t));
      continue;
    }
    Expr inner = it->base.compound();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), it->exp.constant().get_num_mpz_t(), it->exp.constant().get_den_mpz_t());
    long k = fl.get_si();
    Affine frac = it->exp - Affine(k);
    Monomial rest;
    for (auto f = t.mono.begin(); f != t.mono.end(); ++f) {
      if (f != it) rest.push_back(*f);
      else if (!frac.is_zero()) rest.push_back({f->base, frac});
    }
    Expr prod = monomial_expr(std::move(rest), t.coeff) * inner.pow(Affine(k));
    for (auto& pt : prod.terms()) work.push_back(pt);
  }
  std::sort(work.begin(), work.end(),
            [](const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) < 0; });
  std::vector<Term> out;
  out.reserve(work.size());
  for (auto& t : work) {
    if (!out.empty() && compare_monomials(out.back().mono, t.mono) == 0) {
      out.back().coeff = out.back().coeff + t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  Expr e;
  if (!out.empty()) e.terms_ = std::make_shared<const std::vector<Term>>(std::move(out));
  return e;
}

Expr monomial_expr(Monomial m, const Coeff& c) {
  std::vector<Term> t;
  t.push_back(Term{std::move(m), c});
  return Expr::from_terms(std::move(t));
}

Expr Expr::operator-() const { return scaled(Coeff(-1L)); }

Expr Expr::scaled(const Coeff& c) const {
  if (c.is_zero() || is_zero()) return Expr();
  if (c.is_one()) return *this;
  std::vector<Term> t = *terms_;
  for (auto& x : t) x.coeff = x.coeff * c;
  // Q(params) has no zero divisors, so no term vanishes.
  Expr e;
  e.terms_ = std::make_shared<const std::vector<Term>>(std::move(t));
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Merge two sorted lists.
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto& ta = a.terms();
  auto& tb = b.terms();
  size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    int c = (i == ta.size()) ? 1 : (j == tb.size()) ? -1 : compare_monomials(ta[i].mono, tb[j].mono);
    if (c < 0) out.push_back(ta[i++]);
    else if (c > 0) out.push_back(tb[j++]);
    else {
      Coeff s = ta[i].coeff + tb[j].coeff;
      if (!s.is_zero()) out.push_back(Term{ta[i].mono, s});
      ++i;
      ++j;
    }
  }
  Expr e;
  if (!out.empty()) e.terms_ = std::make_shared<const std::vector<Term>>(std::move(out));
  return e;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (auto c = a.constant_value()) return b.scaled(*c);
  if (auto c = b.constant_value()) return a.scaled(*c);
  std::vector<Term> t;
  t.reserve(a.size() * b.size());
  for (auto& x : a.terms())
    for (auto& y : b.terms()) t.push_back(Term{multiply_monomials(x.mono, y.mono), x.coeff * y.coeff});
  return Expr::from_terms(std::move(t));
}

Expr base_power(const Base& b, const Affine& e) {
  if (e.is_zero()) return Expr(1L);
  return monomial_expr({Factor{b, e}});
}

namespace {

// Product of two exponents, when it stays affine.
std::optional<Affine> exp_product(const Affine& a, const Affine& b) {
  if (a.is_constant()) return b * a.constant();
  if (b.is_constant()) return a * b.constant();
  return std::nullopt;
}

std::optional<Coeff> coeff_power(const Coeff& c, const Affine& e) {
  if (auto k = e.as_long()) return c.pow(*k);
  if (c.is_one()) return c;
  if (!c.is_rational() || !e.is_constant()) return std::nullopt;
  auto r = rational_power(c.rational(), e.constant());
  if (!r) return std::nullopt;
  return Coeff(*r);
}

}  // namespace

Expr Expr::pow(const Affine& e) const {
  if (e.is_zero()) return Expr(1L);
  if (is_zero()) {
    if (e.is_constant() && sgn(e.constant()) > 0) return Expr();
    throw std::domain_error("zero raised to a non-positive power");
  }
  if (auto k = e.as_long(); k && *k > 0) {
    Expr out(1L), base = *this;
    long n = *k;
    while (n) {
      if (n & 1) out = out * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return out;
  }
  if (size() == 1) {
    const Term& t = terms()[0];
    auto c = coeff_power(t.coeff, e);
    bool ok = static_cast<bool>(c);
    Monomial m;
    for (auto& f : t.mono) {
      auto pe = exp_product(f.exp, e);
      if (!pe) {
        ok = false;
        break;
      }
      if (!pe->is_zero()) m.push_back({f.base, *pe});
    }
    if (ok) return monomial_expr(std::move(m), *c);
  }
  // Compound base; pull out the leading coefficient where exact.
  Coeff lead = terms()[0].coeff;
  Expr inner = *this;
  Coeff outer(1L);
  if (!lead.is_one()) {
    if (auto c = coeff_power(lead, e)) {
      inner = scaled(lead.inverse());
      outer = *c;
    }
  }
  if (inner.size() == 1 && inner.terms()[0].mono.empty())
    throw std::domain_error("constant raised to an irrational power");
  return monomial_expr({Factor{Base::compound(inner), e}}, outer);
}

int Expr::compare(const Expr& o) const {
  if (terms_ == o.terms_) return 0;
  auto& a = terms();
  auto& b = o.terms();
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = compare_monomials(a[i].mono, b[i].mono)) return c;
    if (int c = a[i].coeff.compare(b[i].coeff)) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace jetcalc
