#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetcalc/coeff.hpp"

namespace jetcalc {

constexpr int kMaxIndep = 6;

// Derivative counts over (t, x^1, ..., x^n).
struct MultiIndex {
  std::array<uint8_t, kMaxIndep> c{};

  int order() const {
    int s = 0;
    for (auto v : c) s += v;
    return s;
  }
  int operator[](int i) const { return c[i]; }
  MultiIndex plus(int i, int k = 1) const {
    MultiIndex m = *this;
    m.c[i] = static_cast<uint8_t>(m.c[i] + k);
    return m;
  }
  // Componentwise >=.
  bool covers(const MultiIndex& o) const {
    for (int i = 0; i < kMaxIndep; ++i)
      if (c[i] < o.c[i]) return false;
    return true;
  }
  MultiIndex minus(const MultiIndex& o) const {
    MultiIndex m;
    for (int i = 0; i < kMaxIndep; ++i) m.c[i] = static_cast<uint8_t>(c[i] - o.c[i]);
    return m;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

struct JetVar {
  int dep = 0;
  MultiIndex mi;

  int compare(const JetVar& o) const;
  friend bool operator==(const JetVar&, const JetVar&) = default;
  friend bool operator<(const JetVar& a, const JetVar& b) { return a.compare(b) < 0; }
};

struct Term;

// Canonical generalized polynomial. Immutable; copies share storage.
class Expr {
public:
  Expr();
  Expr(long v);
  Expr(const Rational& r);
  Expr(const Coeff& c);

  static Expr jet(const JetVar& v);
  static Expr jet(int dep, const MultiIndex& mi) { return jet(JetVar{dep, mi}); }
  static Expr indep(int i);
  static Expr slot(int i);
  // Normalizes: expands compound factors with non-negative integer
  // exponents, sorts, merges like terms and drops zeros.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return *terms_; }
  size_t size() const;
  bool is_zero() const;
  std::optional<Coeff> constant_value() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr scaled(const Coeff& c) const;

  // Throws std::domain_error when the power is not representable.
  Expr pow(const Affine& e) const;

  int compare(const Expr& o) const;
  friend bool operator==(const Expr& a, const Expr& b) { return a.compare(b) == 0; }
  friend bool operator<(const Expr& a, const Expr& b) { return a.compare(b) < 0; }

private:
  std::shared_ptr<const std::vector<Term>> terms_;
};

struct FunctionDecl;

// f^{(counts)}(args) for an opaque function.
struct FuncNode {
  std::shared_ptr<const FunctionDecl> decl;
  std::vector<int> counts;
  std::vector<Expr> args;

  int compare(const FuncNode& o) const;
};

enum class BaseKind : uint8_t { Jet = 0, Indep = 1, Func = 2, Compound = 3, Slot = 4 };

class Base {
public:
  static Base jet(const JetVar& v);
  static Base indep(int i);
  static Base slot(int i);
  static Base func(std::shared_ptr<const FuncNode> node);
  static Base compound(const Expr& e);

  BaseKind kind() const { return kind_; }
  const JetVar& jet() const { return jet_; }
  int index() const { return index_; }
  const FuncNode& func() const { return *func_; }
  const std::shared_ptr<const FuncNode>& func_ptr() const { return func_; }
  const Expr& compound() const { return compound_; }

  int compare(const Base& o) const;
  friend bool operator==(const Base& a, const Base& b) { return a.compare(b) == 0; }

private:
  BaseKind kind_ = BaseKind::Indep;
  JetVar jet_;
  int index_ = 0;
  std::shared_ptr<const FuncNode> func_;
  Expr compound_;
};

struct Factor {
  Base base;
  Affine exp;
};

using Monomial = std::vector<Factor>;  // sorted by base, no zero exponents

int compare_monomials(const Monomial& a, const Monomial& b);
Monomial multiply_monomials(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Coeff coeff;
};

// An opaque function declaration. Rules rewrite f^{(k)} for k >= rule.counts
// to derivatives of rule.value, which is written over Slot bases.
struct FunctionRule {
  std::vector<int> counts;
  Expr value;
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> arg_names;
  std::vector<FunctionRule> rules;
  int arity() const { return static_cast<int>(arg_names.size()); }
};

Expr monomial_expr(Monomial m, const Coeff& c = Coeff(1L));
Expr base_power(const Base& b, const Affine& e);

}  // namespace jetcalc
